//! Periagroup presentations: a finite graph with edge labels and a group at every vertex.
//!
//! Relations are `⟨a,b⟩^λ = ⟨b,a⟩^λ` for every edge `{u,v}` with label `λ` and every pair of
//! non-trivial `a ∈ G_u`, `b ∈ G_v`. A label above 2 forces both vertex groups to have order 2.

mod group;
mod parse;

use std::collections::BTreeSet;

use serde::Serialize;

pub use group::{Acylhyp, VertexGroup, VertexGroupSpec};
pub use parse::{parse_presentation, parse_raw, RawPresentation, ValidationEntry, ValidationReport};

use crate::error::{Error, Result};

pub type VertexSet = BTreeSet<usize>;

/// Simple graph with edge labels in `{2, 3, …}`; a missing edge means the vertex groups are free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    labels: Vec<Vec<Option<u32>>>,
}

impl LabelledGraph {
    pub fn new(n: usize) -> Self {
        LabelledGraph { labels: vec![vec![None; n]; n] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn set_label(&mut self, u: usize, v: usize, label: u32) {
        self.labels[u][v] = Some(label);
        self.labels[v][u] = Some(label);
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        self.labels[u][v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.labels[u][v].is_some()
    }

    /// Adjacent through an edge labelled 2.
    pub fn commute(&self, u: usize, v: usize) -> bool {
        self.labels[u][v] == Some(2)
    }

    pub fn link(&self, u: usize) -> VertexSet {
        (0..self.len()).filter(|&v| self.adjacent(u, v)).collect()
    }

    pub fn star(&self, u: usize) -> VertexSet {
        let mut s = self.link(u);
        s.insert(u);
        s
    }

    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.len();
        (0..n)
            .flat_map(|u| ((u + 1)..n).filter_map(move |v| self.labels[u][v].map(|l| (u, v, l))))
            .collect()
    }

    pub fn is_complete_on(&self, set: &VertexSet) -> bool {
        set.iter().all(|&u| set.iter().all(|&v| u == v || self.adjacent(u, v)))
    }
}

/// A validated periagroup presentation.
#[derive(Debug, Clone)]
pub struct PeriagroupPresentation {
    names: Vec<String>,
    groups: Vec<VertexGroup>,
    graph: LabelledGraph,
}

impl PeriagroupPresentation {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn group(&self, v: usize) -> &VertexGroup {
        &self.groups[v]
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn label(&self, u: usize, v: usize) -> Option<u32> {
        self.graph.label(u, v)
    }

    pub fn vertices(&self) -> VertexSet {
        (0..self.len()).collect()
    }

    pub fn has_opaque(&self) -> bool {
        self.groups.iter().any(|g| g.spec.is_opaque())
    }

    /// Every label is 2.
    pub fn is_graph_product(&self) -> bool {
        self.graph.edges().iter().all(|&(_, _, l)| l == 2)
    }

    /// Every vertex group has order 2.
    pub fn is_coxeter(&self) -> bool {
        self.groups.iter().all(|g| g.spec.is_z2())
    }

    /// The presentation induced on `subset`, with vertices renumbered in increasing order.
    pub fn restrict(&self, subset: &VertexSet) -> PeriagroupPresentation {
        let idx: Vec<usize> = subset.iter().copied().collect();
        let mut graph = LabelledGraph::new(idx.len());
        for (i, &u) in idx.iter().enumerate() {
            for (j, &v) in idx.iter().enumerate() {
                if let Some(l) = self.graph.label(u, v) {
                    graph.set_label(i, j, l);
                }
            }
        }
        PeriagroupPresentation {
            names: idx.iter().map(|&u| self.names[u].clone()).collect(),
            groups: idx.iter().map(|&u| self.groups[u].clone()).collect(),
            graph,
        }
    }

    /// Text in the `.peria` format that parses back to an equal presentation.
    pub fn to_peria(&self) -> String {
        let mut out = String::new();
        for (v, g) in self.groups.iter().enumerate() {
            let body = match &g.spec {
                VertexGroupSpec::Table(t) => {
                    let cells: Vec<String> = t.iter().flatten().map(|x| x.to_string()).collect();
                    format!("table {} {}", t.len(), cells.join(" "))
                }
                other => other.describe(),
            };
            out.push_str(&format!("vertex {} {}\n", self.names[v], body));
        }
        for (u, v, l) in self.graph.edges() {
            out.push_str(&format!("edge {} {} {}\n", self.names[u], self.names[v], l));
        }
        for (v, g) in self.groups.iter().enumerate() {
            for s in &g.gens {
                out.push_str(&format!("gen {} {}\n", self.names[v], s));
            }
        }
        out
    }
}

/// Programmatic construction of presentations.
#[derive(Debug, Default, Clone)]
pub struct PresentationBuilder {
    vertices: Vec<(String, VertexGroupSpec, Option<Vec<i64>>)>,
    edges: Vec<(String, String, u32)>,
}

impl PresentationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str, spec: VertexGroupSpec) -> Self {
        self.vertices.push((name.into(), spec, None));
        self
    }

    pub fn vertex_with_gens(mut self, name: &str, spec: VertexGroupSpec, gens: Vec<i64>) -> Self {
        self.vertices.push((name.into(), spec, Some(gens)));
        self
    }

    pub fn edge(mut self, u: &str, v: &str, label: u32) -> Self {
        self.edges.push((u.into(), v.into(), label));
        self
    }

    pub fn build(self) -> Result<PeriagroupPresentation> {
        let mut names: Vec<String> = Vec::new();
        let mut groups = Vec::new();
        for (name, spec, gens) in self.vertices {
            if names.contains(&name) {
                return Err(Error::InvalidGroup { vertex: name, msg: "declared twice".into() });
            }
            groups.push(VertexGroup::new(&name, spec, gens)?);
            names.push(name);
        }
        let find = |n: &str| names.iter().position(|m| m == n).ok_or_else(|| Error::UnknownVertex(n.into()));
        let mut graph = LabelledGraph::new(names.len());
        for (u, v, l) in &self.edges {
            let (a, b) = (find(u)?, find(v)?);
            if a == b || *l < 2 {
                return Err(Error::Precondition(format!("edge {u} {v} {l} is not a valid labelled edge")));
            }
            check_compatible(&names, &groups, a, b, *l)?;
            graph.set_label(a, b, *l);
        }
        Ok(PeriagroupPresentation { names, groups, graph })
    }
}

pub(crate) fn check_compatible(names: &[String], groups: &[VertexGroup], u: usize, v: usize, l: u32) -> Result<()> {
    let big = |g: &VertexGroup| g.spec.order_or_max() >= 3;
    if l > 2 && (big(&groups[u]) || big(&groups[v])) {
        return Err(Error::Compatibility { u: names[u].clone(), v: names[v].clone(), label: l });
    }
    Ok(())
}

/// Factors of a `∗₂`-join: components of the graph whose edges are the pairs *not* joined by a
/// label-2 edge. Sorted by least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Star2Decomposition {
    pub factors: Vec<Vec<usize>>,
}

pub fn star2_decomposition(graph: &LabelledGraph, subset: &VertexSet) -> Star2Decomposition {
    let verts: Vec<usize> = subset.iter().copied().collect();
    let mut seen = VertexSet::new();
    let mut factors = Vec::new();
    for &start in &verts {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for &y in &verts {
                if !seen.contains(&y) && !graph.commute(x, y) {
                    seen.insert(y);
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        factors.push(comp);
    }
    factors.sort_by_key(|f| f[0]);
    Star2Decomposition { factors }
}

/// Split of a vertex set into a graph-product part `Ψᶜ` and a Coxeter part `Ψ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GpCoxSplit {
    /// `Ψᶜ`: every edge touching it has label 2.
    pub gp: VertexSet,
    /// `Ψ`: every vertex group has order 2.
    pub cox: VertexSet,
}

/// Maximal graph-product convention: `Ψ` is the set of order-2 vertices incident to an edge with
/// label above 2, enlarged by `force_cox`.
pub fn gp_cox_decomposition(p: &PeriagroupPresentation, subset: &VertexSet, force_cox: &VertexSet) -> Result<GpCoxSplit> {
    let g = p.graph();
    let mut cox = VertexSet::new();
    for &u in subset {
        if subset.iter().any(|&v| g.label(u, v).is_some_and(|l| l > 2)) {
            cox.insert(u);
        }
    }
    for &u in force_cox {
        if !subset.contains(&u) {
            continue;
        }
        if !p.group(u).spec.is_z2() {
            return Err(Error::Precondition(format!("vertex `{}` cannot be put in the Coxeter part: its group is not of order 2", p.name(u))));
        }
        cox.insert(u);
    }
    let gp: VertexSet = subset.difference(&cox).copied().collect();
    Ok(GpCoxSplit { gp, cox })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> PeriagroupPresentation {
        parse_presentation(include_str!("../../corpus/ex-periagroup.peria")).unwrap()
    }

    #[test]
    fn example_is_irreducible_with_coxeter_part_v1_v2() {
        let p = example();
        let all = p.vertices();
        assert_eq!(star2_decomposition(p.graph(), &all).factors, vec![vec![0, 1, 2, 3]]);
        let split = gp_cox_decomposition(&p, &all, &VertexSet::new()).unwrap();
        assert_eq!(split.cox, VertexSet::from([0, 1]));
        assert_eq!(split.gp, VertexSet::from([2, 3]));
    }

    #[test]
    fn square_of_commuting_involutions_splits_in_two() {
        let p = PresentationBuilder::new()
            .vertex("a", VertexGroupSpec::Cyclic(2))
            .vertex("b", VertexGroupSpec::Cyclic(2))
            .vertex("c", VertexGroupSpec::Cyclic(2))
            .vertex("d", VertexGroupSpec::Cyclic(2))
            .edge("a", "b", 2)
            .edge("b", "c", 2)
            .edge("c", "d", 2)
            .edge("d", "a", 2)
            .build()
            .unwrap();
        let d = star2_decomposition(p.graph(), &p.vertices());
        assert_eq!(d.factors, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn large_labels_need_order_two_groups() {
        let err = PresentationBuilder::new()
            .vertex("a", VertexGroupSpec::Cyclic(3))
            .vertex("b", VertexGroupSpec::Cyclic(2))
            .edge("a", "b", 3)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Compatibility { label: 3, .. }));
    }

    #[test]
    fn force_cox_rejects_large_groups() {
        let p = example();
        let all = p.vertices();
        assert!(gp_cox_decomposition(&p, &all, &VertexSet::from([2])).is_err());
    }

    #[test]
    fn peria_text_round_trips() {
        let p = example();
        let q = parse_presentation(&p.to_peria()).unwrap();
        assert_eq!(p.names(), q.names());
        assert_eq!(p.graph(), q.graph());
    }
}
