use std::collections::HashMap;

use super::graph::{Distances, FiniteGraph};
use crate::error::{Error, Result};

/// Largest graph the structural computations accept.
pub const MAX_VERTICES: usize = 5000;

/// A connected graph with its distance table and maximal cliques.
#[derive(Debug, Clone)]
pub struct CliqueGraph {
    pub graph: FiniteGraph,
    pub dist: Distances,
    /// Maximal cliques, each sorted. A single-vertex graph has the one clique `[0]`.
    pub cliques: Vec<Vec<usize>>,
    edge_clique: HashMap<(usize, usize), usize>,
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn bron_kerbosch(g: &FiniteGraph, r: &mut Vec<usize>, p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| sorted_intersection(&p, g.neighbours(u)).len())
        .unwrap();
    let candidates: Vec<usize> = p.iter().copied().filter(|v| !g.adjacent(pivot, *v)).collect();
    let mut p = p;
    for v in candidates {
        r.push(v);
        bron_kerbosch(g, r, sorted_intersection(&p, g.neighbours(v)), sorted_intersection(&x, g.neighbours(v)), out);
        r.pop();
        p.retain(|&w| w != v);
        let pos = x.binary_search(&v).unwrap_or_else(|e| e);
        x.insert(pos, v);
    }
}

impl CliqueGraph {
    pub fn new(graph: FiniteGraph) -> Result<Self> {
        if graph.len() > MAX_VERTICES {
            return Err(Error::Resource { what: "graph size".into(), bound: MAX_VERTICES });
        }
        if graph.is_empty() || !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let dist = Distances::new(&graph);
        let mut cliques = Vec::new();
        if graph.len() == 1 {
            cliques.push(vec![0]);
        } else {
            bron_kerbosch(&graph, &mut Vec::new(), (0..graph.len()).collect(), Vec::new(), &mut cliques);
        }
        cliques.sort();
        let mut edge_clique = HashMap::new();
        for (i, c) in cliques.iter().enumerate() {
            for (a, &u) in c.iter().enumerate() {
                for &v in &c[a + 1..] {
                    edge_clique.entry((u, v)).or_insert(i);
                }
            }
        }
        Ok(CliqueGraph { graph, dist, cliques, edge_clique })
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// The (first) maximal clique containing an edge.
    pub fn clique_of_edge(&self, u: usize, v: usize) -> usize {
        self.edge_clique[&(u.min(v), u.max(v))]
    }

    /// Unique vertex of clique `c` nearest to `x`, if there is one.
    pub fn gate(&self, x: usize, c: usize) -> Option<usize> {
        let row = self.dist.row(x);
        let mut best = u16::MAX;
        let mut arg = None;
        let mut tie = false;
        for &y in &self.cliques[c] {
            let d = row[y];
            if d < best {
                best = d;
                arg = Some(y);
                tie = false;
            } else if d == best {
                tie = true;
            }
        }
        if tie {
            None
        } else {
            arg
        }
    }

    /// First `(vertex, clique)` pair without a gate.
    pub fn first_ungated(&self) -> Option<(usize, usize)> {
        (0..self.cliques.len()).find_map(|c| (0..self.len()).find(|&x| self.gate(x, c).is_none()).map(|x| (x, c)))
    }

    /// `C1 ∥ C2`: the gate map from `C1` to `C2` is a bijection.
    pub fn parallel(&self, c1: usize, c2: usize) -> bool {
        let (a, b) = (&self.cliques[c1], &self.cliques[c2]);
        if a.len() != b.len() {
            return false;
        }
        let mut images: Vec<usize> = Vec::with_capacity(a.len());
        for &x in a {
            match self.gate(x, c2) {
                Some(y) if !images.contains(&y) => images.push(y),
                _ => return false,
            }
        }
        true
    }
}

/// Maximal cliques and gates; fails with a witness when some clique is not gated.
pub fn compute_cliques_and_gates(g: FiniteGraph) -> Result<CliqueGraph> {
    let cg = CliqueGraph::new(g)?;
    if let Some((x, c)) = cg.first_ungated() {
        return Err(Error::NotCliqueGated { vertex: x, clique: cg.cliques[c].clone() });
    }
    Ok(cg)
}
