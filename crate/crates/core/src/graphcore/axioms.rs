use std::collections::HashMap;

use serde::Serialize;

use super::cliques::CliqueGraph;
use super::graph::FiniteGraph;
use super::hyperplanes::HyperplaneStructure;
use crate::error::{Error, Result};

/// Outcome of one local condition, with the first counterexample found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub counterexample: Option<Vec<usize>>,
}

impl Condition {
    fn from(cx: Option<Vec<usize>>) -> Self {
        Condition { holds: cx.is_none(), counterexample: cx }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub vertices: usize,
    pub edges: usize,
    pub clique_gated: Condition,
    pub parallelism_transitive: Condition,
    /// Adjacent `x, y` equidistant from `o` have a common neighbour closer to `o`.
    pub triangle: Condition,
    /// No induced `K4` minus an edge.
    pub no_k4_minus: Condition,
    /// `x, y` one step below a common neighbour `z` (seen from `o`) have a common neighbour two steps below `z`.
    pub quadrangle: Condition,
    /// No induced `K_{3,2}`.
    pub no_k32: Condition,
    /// Same hypothesis as the quadrangle condition, concluded by a convex even cycle through `x z y`
    /// whose vertex opposite `z` lies in `I(o,x) ∩ I(o,y)`.
    pub cycle: Condition,
    /// Two convex even cycles share at most one edge.
    pub even_cycle_intersection: Condition,
    pub paraclique: bool,
    pub mediangle: bool,
    pub quasimedian: bool,
}

/// Checks the local conditions defining paraclique, mediangle and quasi-median graphs.
pub fn check_axioms(g: &FiniteGraph) -> Result<AxiomReport> {
    let cg = CliqueGraph::new(g.clone())?;
    let ungated = cg.first_ungated();
    let clique_gated = Condition::from(ungated.map(|(x, c)| {
        let mut v = vec![x];
        v.extend(&cg.cliques[c]);
        v
    }));
    let parallelism_transitive = if clique_gated.holds {
        match HyperplaneStructure::new(cg.clone()) {
            Ok(_) => Condition::from(None),
            Err(Error::NonTransitive { a, b, c }) => Condition::from(Some([a, b, c].concat())),
            Err(e) => return Err(e),
        }
    } else {
        Condition { holds: false, counterexample: None }
    };
    let mut cycles = CycleCache::default();
    let triangle = Condition::from(triangle_violation(&cg));
    let no_k4_minus = Condition::from(k4_minus(&cg));
    let quadrangle = Condition::from(quadrangle_violation(&cg));
    let no_k32 = Condition::from(k32(&cg));
    let cycle = Condition::from(cycle_violation(&cg, &mut cycles));
    let even_cycle_intersection = Condition::from(cycle_overlap(&cg, &mut cycles));
    let paraclique = clique_gated.holds && parallelism_transitive.holds;
    let mediangle = triangle.holds && no_k4_minus.holds && cycle.holds && even_cycle_intersection.holds;
    let quasimedian = triangle.holds && no_k4_minus.holds && quadrangle.holds && no_k32.holds;
    Ok(AxiomReport {
        vertices: g.len(),
        edges: g.edge_count(),
        clique_gated,
        parallelism_transitive,
        triangle,
        no_k4_minus,
        quadrangle,
        no_k32,
        cycle,
        even_cycle_intersection,
        paraclique,
        mediangle,
        quasimedian,
    })
}

fn common_neighbours(g: &FiniteGraph, x: usize, y: usize) -> Vec<usize> {
    g.neighbours(x).iter().copied().filter(|&z| g.adjacent(y, z)).collect()
}

fn triangle_violation(cg: &CliqueGraph) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for o in 0..g.len() {
        let d = cg.dist.row(o);
        for (x, y) in g.edges() {
            if d[x] != d[y] || d[x] == 0 {
                continue;
            }
            if !common_neighbours(g, x, y).iter().any(|&z| d[z] + 1 == d[x]) {
                return Some(vec![o, x, y]);
            }
        }
    }
    None
}

fn k4_minus(cg: &CliqueGraph) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for (x, y) in g.edges() {
        let common = common_neighbours(g, x, y);
        for (i, &z) in common.iter().enumerate() {
            for &w in &common[i + 1..] {
                if !g.adjacent(z, w) {
                    return Some(vec![x, y, z, w]);
                }
            }
        }
    }
    None
}

/// Calls `f(o, x, y, z)` for every `z` and pair of distinct neighbours `x, y` of `z` one step closer to `o`.
fn for_each_quadrangle_hypothesis(cg: &CliqueGraph, mut f: impl FnMut(usize, usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for o in 0..g.len() {
        let d = cg.dist.row(o);
        for z in 0..g.len() {
            let lower: Vec<usize> = g.neighbours(z).iter().copied().filter(|&x| d[x] + 1 == d[z]).collect();
            for (i, &x) in lower.iter().enumerate() {
                for &y in &lower[i + 1..] {
                    if !f(o, x, y, z) {
                        return Some(vec![o, x, y, z]);
                    }
                }
            }
        }
    }
    None
}

fn quadrangle_violation(cg: &CliqueGraph) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for_each_quadrangle_hypothesis(cg, |o, x, y, _z| {
        let d = cg.dist.row(o);
        common_neighbours(g, x, y).iter().any(|&w| d[w] + 1 == d[x])
    })
}

fn k32(cg: &CliqueGraph) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for x in 0..g.len() {
        for y in (x + 1)..g.len() {
            if cg.dist.get(x, y) != 2 {
                continue;
            }
            let common = common_neighbours(g, x, y);
            for (i, &a) in common.iter().enumerate() {
                for (j, &b) in common.iter().enumerate().skip(i + 1) {
                    if g.adjacent(a, b) {
                        continue;
                    }
                    for &c in &common[j + 1..] {
                        if !g.adjacent(a, c) && !g.adjacent(b, c) {
                            return Some(vec![x, y, a, b, c]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Memo of which antipodal pairs span a convex even cycle.
#[derive(Default)]
struct CycleCache {
    spans: HashMap<(usize, usize), Option<Vec<usize>>>,
}

impl CycleCache {
    /// Vertex set of `I(z, w)` if it is a convex cycle of length `2·d(z, w)`.
    fn convex_cycle(&mut self, cg: &CliqueGraph, z: usize, w: usize) -> Option<Vec<usize>> {
        let key = (z.min(w), z.max(w));
        if let Some(c) = self.spans.get(&key) {
            return c.clone();
        }
        let c = convex_cycle_between(cg, z, w);
        self.spans.insert(key, c.clone());
        c
    }
}

fn convex_cycle_between(cg: &CliqueGraph, z: usize, w: usize) -> Option<Vec<usize>> {
    let g = &cg.graph;
    let k = cg.dist.get(z, w);
    if k < 2 {
        return None;
    }
    let towards = g.neighbours(z).iter().filter(|&&x| cg.dist.get(x, w) + 1 == k).count();
    if towards != 2 {
        return None;
    }
    let interval = cg.dist.interval(z, w);
    if interval.len() != 2 * k as usize {
        return None;
    }
    let inside = |v: usize| interval.binary_search(&v).is_ok();
    if interval.iter().any(|&v| g.neighbours(v).iter().filter(|&&u| inside(u)).count() != 2) {
        return None;
    }
    // 2k vertices of degree 2 in a connected interval form a single cycle; check convexity.
    for (i, &a) in interval.iter().enumerate() {
        for &b in &interval[i + 1..] {
            let dab = cg.dist.get(a, b);
            let (ra, rb) = (cg.dist.row(a), cg.dist.row(b));
            if (0..g.len()).any(|v| ra[v] as u32 + rb[v] as u32 == dab && !inside(v)) {
                return None;
            }
        }
    }
    Some(interval)
}

fn cycle_violation(cg: &CliqueGraph, cache: &mut CycleCache) -> Option<Vec<usize>> {
    let g = &cg.graph;
    for_each_quadrangle_hypothesis(cg, |o, x, y, z| {
        if g.adjacent(x, y) {
            return true;
        }
        let d = cg.dist.row(o);
        let dz = d[z] as u32;
        (0..g.len()).any(|w| {
            let k = cg.dist.get(z, w);
            k >= 2
                && d[w] as u32 + k == dz
                && cg.dist.get(x, w) + 1 == k
                && cg.dist.get(y, w) + 1 == k
                && cache.convex_cycle(cg, z, w).is_some()
        })
    })
}

fn cycle_overlap(cg: &CliqueGraph, cache: &mut CycleCache) -> Option<Vec<usize>> {
    let g = &cg.graph;
    let n = g.len();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for z in 0..n {
        for w in (z + 1)..n {
            if let Some(c) = cache.convex_cycle(cg, z, w) {
                cycles.push(c);
            }
        }
    }
    cycles.sort();
    cycles.dedup();
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for (a, &u) in c.iter().enumerate() {
            for &v in &c[a + 1..] {
                if g.adjacent(u, v) {
                    by_edge.entry((u, v)).or_default().push(i);
                }
            }
        }
    }
    let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
    let mut keys: Vec<_> = by_edge.keys().copied().collect();
    keys.sort_unstable();
    for e in keys {
        let list = &by_edge[&e];
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                let count = shared.entry((i, j)).or_insert(0);
                *count += 1;
                if *count == 2 {
                    let mut cx = cycles[i].clone();
                    cx.push(usize::MAX);
                    cx.extend(&cycles[j]);
                    return Some(cx);
                }
            }
        }
    }
    None
}
