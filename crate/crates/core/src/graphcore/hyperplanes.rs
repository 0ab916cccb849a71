use std::collections::HashMap;

use super::cliques::CliqueGraph;
use super::graph::FiniteGraph;
use crate::error::{Error, Result};

/// Fixed-size bitset over vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn meets(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// A parallelism class of cliques.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub cliques: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    /// Components of the graph once the hyperplane's edges are removed.
    pub sectors: Vec<Vec<usize>>,
}

/// Cliques, parallelism classes, sectors and transversality of a paraclique graph.
#[derive(Debug, Clone)]
pub struct HyperplaneStructure {
    pub cg: CliqueGraph,
    pub hyperplanes: Vec<Hyperplane>,
    clique_hyp: Vec<usize>,
    sector_of: Vec<Vec<u32>>,
    sector_bits: Vec<Vec<Bits>>,
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let next = uf[y];
        uf[y] = r;
        y = next;
    }
    r
}

/// Parallelism pairs, or a triple witnessing non-transitivity.
fn parallel_classes(cg: &CliqueGraph) -> std::result::Result<Vec<Vec<usize>>, (usize, usize, usize)> {
    let k = cg.cliques.len();
    let mut par: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut by_size: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in cg.cliques.iter().enumerate() {
        by_size.entry(c.len()).or_default().push(i);
    }
    for group in by_size.values() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                if cg.parallel(i, j) && cg.parallel(j, i) {
                    par[i].push(j);
                    par[j].push(i);
                }
            }
        }
    }
    for p in par.iter_mut() {
        p.sort_unstable();
    }
    for a in 0..k {
        for &b in &par[a] {
            for &c in &par[b] {
                if c != a && par[a].binary_search(&c).is_err() {
                    return Err((a, b, c));
                }
            }
        }
    }
    let mut uf: Vec<usize> = (0..k).collect();
    for a in 0..k {
        for &b in &par[a] {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in 0..k {
        let r = find(&mut uf, a);
        classes.entry(r).or_default().push(a);
    }
    let mut out: Vec<Vec<usize>> = classes.into_values().collect();
    out.sort();
    Ok(out)
}

impl HyperplaneStructure {
    pub fn new(cg: CliqueGraph) -> Result<Self> {
        if let Some((x, c)) = cg.first_ungated() {
            return Err(Error::NotCliqueGated { vertex: x, clique: cg.cliques[c].clone() });
        }
        let classes = parallel_classes(&cg).map_err(|(a, b, c)| Error::NonTransitive {
            a: cg.cliques[a].clone(),
            b: cg.cliques[b].clone(),
            c: cg.cliques[c].clone(),
        })?;
        let n = cg.len();
        let mut clique_hyp = vec![usize::MAX; cg.cliques.len()];
        let mut hyperplanes = Vec::new();
        let mut sector_of = Vec::new();
        let mut sector_bits = Vec::new();
        let classes = classes.into_iter().filter(|class| cg.cliques[class[0]].len() >= 2);
        for (h, class) in classes.enumerate() {
            let mut edges = Vec::new();
            for &c in &class {
                clique_hyp[c] = h;
                let verts = &cg.cliques[c];
                for (i, &u) in verts.iter().enumerate() {
                    for &v in &verts[i + 1..] {
                        edges.push((u, v));
                    }
                }
            }
            edges.sort_unstable();
            let in_class = |u: usize, v: usize| edges.binary_search(&(u.min(v), u.max(v))).is_ok();
            let (comp, count) = cg.graph.components_without(&in_class);
            let mut sectors = vec![Vec::new(); count];
            let mut bits = vec![Bits::new(n); count];
            for (v, &s) in comp.iter().enumerate() {
                sectors[s].push(v);
                bits[s].set(v);
            }
            sector_of.push(comp.iter().map(|&s| s as u32).collect());
            sector_bits.push(bits);
            hyperplanes.push(Hyperplane { cliques: class, edges, sectors });
        }
        Ok(HyperplaneStructure { cg, hyperplanes, clique_hyp, sector_of, sector_bits })
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.cg.graph
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.cg.dist.get(u, v)
    }

    pub fn hyperplane_of_clique(&self, c: usize) -> usize {
        self.clique_hyp[c]
    }

    pub fn hyperplane_of_edge(&self, u: usize, v: usize) -> usize {
        self.clique_hyp[self.cg.clique_of_edge(u, v)]
    }

    pub fn sector_of(&self, h: usize, v: usize) -> usize {
        self.sector_of[h][v] as usize
    }

    pub fn sector_bits(&self, h: usize, s: usize) -> &Bits {
        &self.sector_bits[h][s]
    }

    pub fn separates(&self, h: usize, u: usize, v: usize) -> bool {
        self.sector_of[h][u] != self.sector_of[h][v]
    }

    pub fn separating(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&h| self.separates(h, u, v)).collect()
    }

    /// Every sector of one meets every sector of the other.
    pub fn transverse(&self, a: usize, b: usize) -> bool {
        a != b && self.sector_bits[a].iter().all(|s| self.sector_bits[b].iter().all(|t| s.meets(t)))
    }

    /// Vertices lying on an edge of the hyperplane.
    pub fn carrier(&self, h: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.hyperplanes[h].edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The sector of `a` containing the whole carrier of `b`, if `b`'s carrier lies in one sector of `a`.
    pub fn side_of(&self, a: usize, b: usize) -> Option<usize> {
        let carrier = self.carrier(b);
        let s = self.sector_of(a, carrier[0]);
        carrier.iter().all(|&v| self.sector_of(a, v) == s).then_some(s)
    }

    /// `a` separates `b` and `c`: their carriers lie in distinct sectors of `a`.
    pub fn separates_hyperplanes(&self, a: usize, b: usize, c: usize) -> bool {
        match (self.side_of(a, b), self.side_of(a, c)) {
            (Some(x), Some(y)) => x != y,
            _ => false,
        }
    }

    /// Number of sectors of each hyperplane equals the size of its cliques.
    pub fn sectors_match_clique_sizes(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.sectors.len() == self.cg.cliques[h.cliques[0]].len())
    }
}

/// Hyperplanes of a paraclique graph; fails if cliques are not gated or parallelism is not transitive.
pub fn compute_hyperplanes(g: FiniteGraph) -> Result<HyperplaneStructure> {
    HyperplaneStructure::new(CliqueGraph::new(g)?)
}

#[cfg(test)]
mod tests {
    use super::super::graph::families;
    use super::*;

    #[test]
    fn square_has_two_transverse_hyperplanes() {
        let hs = compute_hyperplanes(families::cycle(4)).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.transverse(0, 1));
    }

    #[test]
    fn hexagon_hyperplanes_are_opposite_edge_pairs_and_cross() {
        let hs = compute_hyperplanes(families::cycle(6)).unwrap();
        assert_eq!(hs.len(), 3);
        for h in &hs.hyperplanes {
            let (a, b) = (h.edges[0], h.edges[1]);
            assert_eq!(hs.distance(a.0, b.0).max(hs.distance(a.0, b.1)), 3);
        }
        // Each sector is a path of three vertices, so every sector of one meets every sector of another.
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(hs.transverse(a, b), a != b);
            }
        }
        assert!(hs.sectors_match_clique_sizes());
    }

    #[test]
    fn octagon_hyperplanes_cross_pairwise_and_long_paths_have_none() {
        let hs = compute_hyperplanes(families::cycle(8)).unwrap();
        assert_eq!(hs.len(), 4);
        assert!(hs.transverse(0, 1));
        let path = compute_hyperplanes(families::path(5)).unwrap();
        assert_eq!(path.len(), 4);
        assert!((0..4).all(|a| (0..4).all(|b| !path.transverse(a, b))));
        assert!(path.separates_hyperplanes(1, 0, 2));
        assert!(!path.separates_hyperplanes(2, 0, 1));
    }

    #[test]
    fn single_vertex_has_no_hyperplanes() {
        let hs = compute_hyperplanes(FiniteGraph::new(1)).unwrap();
        assert!(hs.is_empty());
    }

    #[test]
    fn k23_is_not_transitive() {
        let err = compute_hyperplanes(families::complete_bipartite(2, 3)).unwrap_err();
        let Error::NonTransitive { a, b, c } = err else { panic!("expected a non-transitivity witness") };
        let hs = CliqueGraph::new(families::complete_bipartite(2, 3)).unwrap();
        let idx = |x: &Vec<usize>| hs.cliques.iter().position(|c| c == x).unwrap();
        assert!(hs.parallel(idx(&a), idx(&b)) && hs.parallel(idx(&b), idx(&c)) && !hs.parallel(idx(&a), idx(&c)));
    }

    #[test]
    fn hamming_graph_hyperplanes_have_clique_many_sectors() {
        let hs = compute_hyperplanes(families::hamming(&[3, 2])).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.sectors_match_clique_sizes());
        assert!(hs.transverse(0, 1));
    }
}
