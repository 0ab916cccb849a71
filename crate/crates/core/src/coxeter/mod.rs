//! Coxeter diagrams: irreducible components and their spherical / affine / other type, decided
//! both by matching the standard diagram families and by the signature of the Gram form.

pub mod gram;
pub mod table;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{PeriagroupPresentation, VertexSet};

pub use gram::{gram_signature, GramSignature, GramVerdict};
pub use table::classify_irreducible;

/// An edge label `m(u,v) ≥ 3` or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    M(u32),
    Inf,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::M(m) => write!(f, "{m}"),
            Label::Inf => write!(f, "inf"),
        }
    }
}

/// A Coxeter diagram on `0..n`; pairs without a stored label commute (`m = 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterDiagram {
    pub n: usize,
    pub labels: BTreeMap<(usize, usize), Label>,
}

impl CoxeterDiagram {
    pub fn new(n: usize) -> Self {
        CoxeterDiagram { n, labels: BTreeMap::new() }
    }

    /// Sets `m(u,v)`; a finite label of 2 removes the edge.
    pub fn set(&mut self, u: usize, v: usize, label: Label) {
        assert!(u != v && u < self.n && v < self.n);
        let key = (u.min(v), u.max(v));
        match label {
            Label::M(m) if m <= 2 => {
                self.labels.remove(&key);
            }
            l => {
                self.labels.insert(key, l);
            }
        }
    }

    pub fn with(mut self, u: usize, v: usize, label: Label) -> Self {
        self.set(u, v, label);
        self
    }

    pub fn label(&self, u: usize, v: usize) -> Option<Label> {
        self.labels.get(&(u.min(v), u.max(v))).copied()
    }

    /// `m(u,v)` as a number, with `None` for `∞`.
    pub fn m(&self, u: usize, v: usize) -> Option<u32> {
        if u == v {
            return Some(1);
        }
        match self.label(u, v) {
            None => Some(2),
            Some(Label::M(m)) => Some(m),
            Some(Label::Inf) => None,
        }
    }

    pub fn neighbours(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| v != u && self.label(u, v).is_some()).collect()
    }

    /// Sub-diagram on `verts`, renumbered by position.
    pub fn induced(&self, verts: &[usize]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if let Some(l) = self.label(u, v) {
                    d.set(i, j, l);
                }
            }
        }
        d
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::new(self.n);
        for (&(u, v), &l) in &self.labels {
            d.set(perm[u], perm[v], l);
        }
        d
    }

    /// Parses `coxeter <n>` followed by `m <u> <v> <label|inf>` lines.
    pub fn parse(text: &str) -> Result<CoxeterDiagram> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, head) = lines.next().ok_or(Error::Parse { line: 1, col: 1, msg: "missing `coxeter <n>` header".into() })?;
        let n = match head.split_whitespace().collect::<Vec<_>>()[..] {
            ["coxeter", n] => n.parse().map_err(|_| Error::Parse { line, col: 9, msg: format!("bad rank `{n}`") })?,
            _ => return Err(Error::Parse { line, col: 1, msg: "expected `coxeter <n>`".into() }),
        };
        let mut d = CoxeterDiagram::new(n);
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let col = |t: &str| l.find(t).unwrap_or(0) + 1;
            if toks.len() != 4 || toks[0] != "m" {
                return Err(Error::Parse { line, col: 1, msg: format!("expected `m <u> <v> <label>`, found `{l}`") });
            }
            let mut ends = [0usize; 2];
            for k in 0..2 {
                let t = toks[k + 1];
                ends[k] = t.parse().map_err(|_| Error::Parse { line, col: col(t), msg: format!("bad vertex `{t}`") })?;
                if ends[k] >= n {
                    return Err(Error::Parse { line, col: col(t), msg: format!("vertex {} out of range", ends[k]) });
                }
            }
            if ends[0] == ends[1] {
                return Err(Error::Parse { line, col: col(toks[1]), msg: "self-loop".into() });
            }
            let label = match toks[3] {
                "inf" | "∞" => Label::Inf,
                t => match t.parse::<u32>() {
                    Ok(m) if m >= 2 => Label::M(m),
                    _ => return Err(Error::Parse { line, col: l.rfind(t).unwrap() + 1, msg: format!("bad label `{t}`") }),
                },
            };
            d.set(ends[0], ends[1], label);
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("coxeter {}\n", self.n);
        for (&(u, v), l) in &self.labels {
            s.push_str(&format!("m {u} {v} {l}\n"));
        }
        s
    }

    /// Coxeter diagram of the all-`ℤ₂` part `subset` of a presentation: a label `m > 2` is kept,
    /// label 2 commutes, and a missing edge of `Γ` becomes `∞`.
    pub fn from_presentation(p: &PeriagroupPresentation, subset: &VertexSet) -> Result<(CoxeterDiagram, Vec<usize>)> {
        let verts: Vec<usize> = subset.iter().copied().collect();
        if let Some(&v) = verts.iter().find(|&&v| !p.group(v).spec.is_z2()) {
            return Err(Error::Precondition(format!("vertex `{}` does not carry ℤ₂", p.name(v))));
        }
        let mut d = CoxeterDiagram::new(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                match p.label(u, v) {
                    None => d.set(i, j, Label::Inf),
                    Some(m) => d.set(i, j, Label::M(m)),
                }
            }
        }
        Ok((d, verts))
    }
}

/// Connected components of the graph of pairs with `m ≥ 3` (including `∞`), each sorted, ordered by least vertex.
pub fn irreducible_components(d: &CoxeterDiagram) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; d.n];
    let mut out = Vec::new();
    for s in 0..d.n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = out.len();
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for y in d.neighbours(x) {
                if comp[y] == usize::MAX {
                    comp[y] = out.len();
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Type of an irreducible Coxeter group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum IrreducibleCoxeterType {
    Spherical { family: String, rank: usize },
    Affine { family: String, rank: usize, infinite_dihedral: bool },
    Other,
}

impl IrreducibleCoxeterType {
    pub fn is_spherical(&self) -> bool {
        matches!(self, IrreducibleCoxeterType::Spherical { .. })
    }

    pub fn is_affine(&self) -> bool {
        matches!(self, IrreducibleCoxeterType::Affine { .. })
    }

    pub fn is_infinite_dihedral(&self) -> bool {
        matches!(self, IrreducibleCoxeterType::Affine { infinite_dihedral: true, .. })
    }

    pub fn name(&self) -> String {
        match self {
            IrreducibleCoxeterType::Spherical { family, .. } | IrreducibleCoxeterType::Affine { family, .. } => family.clone(),
            IrreducibleCoxeterType::Other => "other".into(),
        }
    }
}

/// One irreducible component with both verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentClassification {
    pub vertices: Vec<usize>,
    #[serde(rename = "type")]
    pub kind: IrreducibleCoxeterType,
    pub gram: Option<GramSignature>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoxeterClassification {
    pub components: Vec<ComponentClassification>,
}

impl CoxeterClassification {
    pub fn is_spherical(&self) -> bool {
        self.components.iter().all(|c| c.kind.is_spherical())
    }
}

/// Whether the table type and the Gram signature agree.
pub fn verdicts_agree(kind: &IrreducibleCoxeterType, gram: &GramSignature) -> bool {
    match kind {
        IrreducibleCoxeterType::Spherical { .. } => gram.verdict == GramVerdict::PositiveDefinite,
        IrreducibleCoxeterType::Affine { .. } => gram.verdict == GramVerdict::SemidefiniteCorank1,
        IrreducibleCoxeterType::Other => {
            !matches!(gram.verdict, GramVerdict::PositiveDefinite | GramVerdict::SemidefiniteCorank1)
        }
    }
}

/// Classifies every irreducible component by table; the Gram oracle is run when `with_gram` is set.
pub fn classify(d: &CoxeterDiagram, with_gram: bool) -> Result<CoxeterClassification> {
    let mut components = Vec::new();
    for verts in irreducible_components(d) {
        let sub = d.induced(&verts);
        let kind = classify_irreducible(&sub);
        let gram = if with_gram { Some(gram_signature(&sub)?) } else { None };
        let agree = gram.as_ref().map(|g| verdicts_agree(&kind, g));
        components.push(ComponentClassification { vertices: verts, kind, gram, agree });
    }
    Ok(CoxeterClassification { components })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        assert_eq!(irreducible_components(&CoxeterDiagram::new(2)), vec![vec![0], vec![1]]);
        let i25 = CoxeterDiagram::new(2).with(0, 1, Label::M(5));
        assert_eq!(irreducible_components(&i25).len(), 1);
        let d = CoxeterDiagram::new(6)
            .with(0, 1, Label::M(3))
            .with(1, 2, Label::M(3))
            .with(3, 4, Label::M(3))
            .with(4, 5, Label::M(3))
            .with(3, 5, Label::M(3));
        assert_eq!(irreducible_components(&d), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let d = CoxeterDiagram::parse("coxeter 3\nm 0 1 3\nm 1 2 inf\nm 0 2 2\n").unwrap();
        assert_eq!(d.labels.len(), 2);
        assert_eq!(CoxeterDiagram::parse(&d.to_text()).unwrap(), d);
        assert!(matches!(CoxeterDiagram::parse("coxeter 2\nm 0 1 1\n"), Err(Error::Parse { line: 2, col: 7, .. })));
        assert!(matches!(CoxeterDiagram::parse("coxeter 2\nm 0 4 3\n"), Err(Error::Parse { line: 2, col: 5, .. })));
    }

    #[test]
    fn missing_periagroup_edges_become_infinity() {
        let p = crate::presentation::parse_presentation(
            "vertex a cyclic 2\nvertex b cyclic 2\nvertex c cyclic 2\nedge a b 5\nedge b c 2\n",
        )
        .unwrap();
        let (d, _) = CoxeterDiagram::from_presentation(&p, &p.vertices()).unwrap();
        assert_eq!(d.label(0, 1), Some(Label::M(5)));
        assert_eq!(d.label(1, 2), None);
        assert_eq!(d.label(0, 2), Some(Label::Inf));
    }
}
