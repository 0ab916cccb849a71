use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    adj: Vec<Vec<usize>>,
}

impl FiniteGraph {
    pub fn new(n: usize) -> Self {
        FiniteGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = FiniteGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adjacent(u, v) {
            return;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbours(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.len()];
        d[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if d[y] == u32::MAX {
                    d[y] = d[x] + 1;
                    q.push_back(y);
                }
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// Connected components of the graph with the edges in `removed` deleted; returns a component
    /// index per vertex and the component count.
    pub fn components_without(&self, removed: &dyn Fn(usize, usize) -> bool) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if comp[y] == usize::MAX && !removed(x, y) {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Parses the `.graph` format: vertex count, then one `u v` edge per line (0-based).
    pub fn parse(text: &str) -> Result<FiniteGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Parse { line: 1, col: 1, msg: "missing vertex count".into() })?;
        let n: usize = first.parse().map_err(|_| Error::Parse { line, col: 1, msg: format!("bad vertex count `{first}`") })?;
        let mut g = FiniteGraph::new(n);
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::Parse { line, col: 1, msg: format!("expected `u v`, found `{l}`") });
            }
            let mut ends = [0usize; 2];
            for (k, t) in toks.iter().enumerate() {
                let col = l.find(t).unwrap_or(0) + 1;
                ends[k] = t.parse().map_err(|_| Error::Parse { line, col, msg: format!("bad vertex `{t}`") })?;
                if ends[k] >= n {
                    return Err(Error::Parse { line, col, msg: format!("vertex {} out of range", ends[k]) });
                }
            }
            if ends[0] == ends[1] {
                return Err(Error::Parse { line, col: 1, msg: "self-loop".into() });
            }
            g.add_edge(ends[0], ends[1]);
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Induced subgraph on `verts`, renumbered by position.
    pub fn induced(&self, verts: &[usize]) -> FiniteGraph {
        let mut idx = vec![usize::MAX; self.len()];
        for (i, &v) in verts.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = FiniteGraph::new(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if idx[w] != usize::MAX {
                    g.add_edge(i, idx[w]);
                }
            }
        }
        g
    }
}

/// All-pairs distances, stored as `u16` with `u16::MAX` for unreachable pairs.
#[derive(Debug, Clone)]
pub struct Distances {
    n: usize,
    d: Vec<u16>,
}

impl Distances {
    pub fn new(g: &FiniteGraph) -> Self {
        let n = g.len();
        let mut d = vec![u16::MAX; n * n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            let row = &mut d[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                let dx = row[x];
                for &y in g.neighbours(x) {
                    if row[y] == u16::MAX {
                        row[y] = dx + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
        Distances { n, d }
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v] as u32
    }

    pub fn row(&self, u: usize) -> &[u16] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Vertices of the interval `I(u, v)`.
    pub fn interval(&self, u: usize, v: usize) -> Vec<usize> {
        let duv = self.get(u, v);
        let (ru, rv) = (self.row(u), self.row(v));
        (0..self.n).filter(|&x| ru[x] as u32 + rv[x] as u32 == duv).collect()
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().map(|&x| x as u32).max().unwrap_or(0)
    }
}

/// Families of small graphs used as fixtures and examples.
pub mod families {
    use super::FiniteGraph;

    pub fn cycle(n: usize) -> FiniteGraph {
        FiniteGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn path(n: usize) -> FiniteGraph {
        FiniteGraph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> FiniteGraph {
        let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        FiniteGraph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> FiniteGraph {
        let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
        FiniteGraph::from_edges(a + b, &edges)
    }

    /// Hypercube of dimension `d`.
    pub fn cube(d: usize) -> FiniteGraph {
        let n = 1 << d;
        let edges: Vec<_> = (0..n).flat_map(|x| (0..d).map(move |i| (x, x ^ (1 << i)))).filter(|&(x, y)| x < y).collect();
        FiniteGraph::from_edges(n, &edges)
    }

    /// Three 4-cycles sharing a central vertex pairwise along spokes: the cube minus a vertex.
    pub fn wheel_of_squares() -> FiniteGraph {
        // 0 = centre, 1..=3 spokes, 4 = between 1 and 2, 5 = between 2 and 3, 6 = between 3 and 1.
        FiniteGraph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6), (1, 6)])
    }

    /// A 4-cycle with a triangle glued on one edge.
    pub fn house() -> FiniteGraph {
        FiniteGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)])
    }

    /// Cartesian product.
    pub fn product(a: &FiniteGraph, b: &FiniteGraph) -> FiniteGraph {
        let (na, nb) = (a.len(), b.len());
        let mut g = FiniteGraph::new(na * nb);
        for x in 0..na {
            for y in 0..nb {
                for &x2 in a.neighbours(x) {
                    g.add_edge(x * nb + y, x2 * nb + y);
                }
                for &y2 in b.neighbours(y) {
                    g.add_edge(x * nb + y, x * nb + y2);
                }
            }
        }
        g
    }

    /// Hamming graph: product of complete graphs.
    pub fn hamming(sizes: &[usize]) -> FiniteGraph {
        sizes.iter().fold(complete(1), |acc, &k| product(&acc, &complete(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let g = FiniteGraph::parse("# hexagon\n6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
        assert_eq!(g, families::cycle(6));
        assert_eq!(FiniteGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors_are_located() {
        let err = FiniteGraph::parse("3\n0 1\n1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 3, .. }));
    }

    #[test]
    fn distances_and_intervals() {
        let d = Distances::new(&families::cycle(6));
        assert_eq!(d.get(0, 3), 3);
        assert_eq!(d.interval(0, 2), vec![0, 1, 2]);
        assert_eq!(d.interval(0, 3).len(), 6);
    }

    #[test]
    fn hamming_graph_sizes() {
        let g = families::hamming(&[2, 3]);
        assert_eq!(g.len(), 6);
        assert_eq!(g.edge_count(), 9);
    }
}
