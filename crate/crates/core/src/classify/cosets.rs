use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{group_order, names};
use crate::error::{Error, Result};
use crate::presentation::{gp_cox_decomposition, star2_decomposition, PeriagroupPresentation, VertexSet};
use crate::words::{CanonicalForm, Syllable, Word, Words};

/// Largest Coxeter group enumerated element by element.
pub const MAX_COXETER_ORDER: u128 = 5000;

/// Bound on `|C(Ψ)|·|⟨Λ₁⟩|` when certifying that no disjoint coset exists.
const MAX_PAIR_CHECKS: usize = 1_000_000;

fn check_coxeter_part(p: &PeriagroupPresentation, psi: &VertexSet) -> Result<()> {
    if let Some(&v) = psi.iter().find(|&&v| v >= p.len() || !p.group(v).spec.is_z2()) {
        let name = if v < p.len() { p.name(v).to_string() } else { format!("#{v}") };
        return Err(Error::Precondition(format!("vertex `{name}` is not an involution of the presentation")));
    }
    Ok(())
}

/// Every element of `C(Ψ)` as a canonical form over `p`, or `None` when the group is infinite.
pub fn coxeter_elements(p: &PeriagroupPresentation, psi: &VertexSet) -> Result<Option<Vec<CanonicalForm>>> {
    check_coxeter_part(p, psi)?;
    let Some(order) = group_order(&p.restrict(psi))? else { return Ok(None) };
    if order > MAX_COXETER_ORDER {
        return Err(Error::Resource { what: "elements of the Coxeter part".into(), bound: MAX_COXETER_ORDER as usize });
    }
    let words = Words::new(p);
    let mut seen = HashSet::from([CanonicalForm::identity()]);
    let mut out = vec![CanonicalForm::identity()];
    let mut i = 0;
    while i < out.len() {
        for &v in psi {
            let mut w = out[i].word().0.clone();
            w.push(Syllable::new(v, 1));
            let y = words.canonical_form(&Word(w))?;
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    debug_assert_eq!(out.len() as u128, order);
    Ok(Some(out))
}

fn within(e: &CanonicalForm, set: &VertexSet) -> bool {
    e.word().support().is_subset(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointCosets {
    /// Some `g ∈ C(Ψ)` has `g⟨Λ₁⟩ ∩ ⟨Λ₂⟩ = ∅`.
    pub exists: bool,
    /// The `∗₂`-factor contained in neither `Λ₁` nor `Λ₂`.
    pub factor: Option<Vec<String>>,
    pub witness: Option<String>,
    /// Outcome of the enumeration, when it was run.
    pub verified: Option<bool>,
    /// Elements of `C(Ψ)` enumerated.
    pub checked: usize,
}

/// Shortest path from `from` to `to` in the graph of pairs not joined by a label-2 edge.
fn opposite_path(p: &PeriagroupPresentation, factor: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut prev: HashMap<usize, usize> = HashMap::from([(from, from)]);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &y in factor {
            if y != x && !p.graph().commute(x, y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Whether some coset `g⟨Λ₁⟩` with `g ∈ C(Ψ)` misses `⟨Λ₂⟩`, with a witness built along the opposite graph.
pub fn disjoint_coset_exists(
    p: &PeriagroupPresentation,
    psi: &VertexSet,
    l1: &VertexSet,
    l2: &VertexSet,
) -> Result<DisjointCosets> {
    check_coxeter_part(p, psi)?;
    if !l1.is_subset(psi) || !l2.is_subset(psi) {
        return Err(Error::Precondition("Λ₁ and Λ₂ must lie in Ψ".into()));
    }
    let words = Words::new(p);
    let factors = star2_decomposition(p.graph(), psi).factors;
    let found = factors.iter().find(|f| f.iter().any(|v| !l1.contains(v)) && f.iter().any(|v| !l2.contains(v)));
    let g = found.map(|f| {
        let m1: Vec<usize> = f.iter().copied().filter(|v| !l1.contains(v)).collect();
        let m2: Vec<usize> = f.iter().copied().filter(|v| !l2.contains(v)).collect();
        let same = f.iter().all(|v| l1.contains(v) == l2.contains(v));
        let letters = if same {
            vec![m1[0]]
        } else {
            let a1 = m1[0];
            let a2 = *m2.iter().find(|&&a| a != a1).unwrap();
            opposite_path(p, f, a2, a1)
        };
        Word(letters.into_iter().map(|v| Syllable::new(v, 1)).collect())
    });
    let mut out = DisjointCosets {
        exists: found.is_some(),
        factor: found.map(|f| names(p, f.iter().copied())),
        witness: g.as_ref().map(|w| words.format_word(w)),
        verified: None,
        checked: 0,
    };
    let elems = match coxeter_elements(p, psi) {
        Ok(Some(e)) => e,
        Ok(None) | Err(Error::Resource { .. }) => return Ok(out),
        Err(e) => return Err(e),
    };
    out.checked = elems.len();
    let h1: Vec<&CanonicalForm> = elems.iter().filter(|e| within(e, l1)).collect();
    let misses = |g: &Word| -> Result<bool> {
        for h in &h1 {
            if within(&words.multiply(g, h.word())?, l2) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    out.verified = match &g {
        Some(g) => Some(misses(g)?),
        None if elems.len() * h1.len() <= MAX_PAIR_CHECKS => {
            let mut none = true;
            for e in &elems {
                if misses(e.word())? {
                    none = false;
                    break;
                }
            }
            Some(none)
        }
        None => None,
    };
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentraliserReport {
    pub psi: Vec<String>,
    pub psi_c: Vec<String>,
    /// `link(Ψᶜ)`: vertices adjacent to every vertex of `Ψᶜ`.
    pub link_psi_c: Vec<String>,
    /// Union of the `∗₂`-factors of `Ψ` inside `link(Ψᶜ)`.
    pub lambda: Vec<String>,
    pub finite: bool,
}

fn common_link(p: &PeriagroupPresentation, set: &VertexSet) -> VertexSet {
    let mut link = p.vertices();
    for &u in set {
        link = link.intersection(&p.graph().link(u)).copied().collect();
    }
    link
}

/// Vertex set generating the centraliser of the rotation subgroup inside `C(Ψ)`.
pub fn centraliser_of_rot(p: &PeriagroupPresentation, force_cox: &VertexSet) -> Result<CentraliserReport> {
    let split = gp_cox_decomposition(p, &p.vertices(), force_cox)?;
    let link = common_link(p, &split.gp);
    let lambda: VertexSet = star2_decomposition(p.graph(), &split.cox)
        .factors
        .into_iter()
        .filter(|f| f.iter().all(|v| link.contains(v)))
        .flatten()
        .collect();
    let finite = group_order(&p.restrict(&lambda))?.is_some();
    Ok(CentraliserReport {
        psi: names(p, split.cox.iter().copied()),
        psi_c: names(p, split.gp.iter().copied()),
        link_psi_c: names(p, link),
        lambda: names(p, lambda),
        finite,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub vertex: String,
    pub link_in_psi: Vec<String>,
    /// `[C(Ψ) : ⟨link(u) ∩ Ψ⟩]`, `None` when infinite.
    pub size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartitePair {
    pub u: String,
    pub v: String,
    /// Every `∗₂`-factor of `Ψ` lies in `link(u)` or `link(v)`.
    pub complete: bool,
    /// The same question answered on the reconstructed graph.
    pub enumerated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub psi: Vec<String>,
    pub fibers: Vec<Fiber>,
    pub pairs: Vec<BipartitePair>,
    pub omega_vertices: Option<usize>,
    pub omega_edges: Option<usize>,
    pub omega_is_join: Option<bool>,
}

/// Coset id of each element in `elems` for the subgroup of elements supported in `sub`.
fn coset_ids(words: &Words, elems: &[CanonicalForm], sub: &VertexSet) -> Result<(Vec<usize>, usize)> {
    let index: HashMap<&CanonicalForm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let h: Vec<&CanonicalForm> = elems.iter().filter(|e| within(e, sub)).collect();
    let mut ids = vec![usize::MAX; elems.len()];
    let mut count = 0;
    for i in 0..elems.len() {
        if ids[i] != usize::MAX {
            continue;
        }
        for x in &h {
            ids[index[&words.multiply(elems[i].word(), x.word())?]] = count;
        }
        count += 1;
    }
    Ok((ids, count))
}

/// A graph with at least two vertices is a join iff its complement is disconnected.
fn is_join(n: usize, adj: &[HashSet<usize>]) -> bool {
    if n < 2 {
        return false;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            if !seen[y] && y != x && !adj[x].contains(&y) {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached < n
}

/// Fiber sizes of the labelling map `Ω → Ψᶜ`, with `Ω` rebuilt from cosets when `C(Ψ)` is finite.
pub fn omega_fibers(p: &PeriagroupPresentation, force_cox: &VertexSet) -> Result<OmegaReport> {
    let split = gp_cox_decomposition(p, &p.vertices(), force_cox)?;
    let psi = split.cox;
    let gp: Vec<usize> = split.gp.iter().copied().collect();
    let words = Words::new(p);
    let elems = coxeter_elements(p, &psi)?;
    let order = elems.as_ref().map(|e| e.len() as u64);
    let link_in = |u: usize| -> VertexSet { p.graph().link(u).intersection(&psi).copied().collect() };
    let mut fibers = Vec::new();
    let mut cosets = Vec::new();
    for &u in &gp {
        let l = link_in(u);
        let size = match &elems {
            Some(e) => {
                let (ids, count) = coset_ids(&words, e, &l)?;
                debug_assert_eq!(Some(count as u64), order.zip(group_order(&p.restrict(&l))?).map(|(a, b)| a / b as u64));
                cosets.push(ids);
                Some(count as u64)
            }
            None => None,
        };
        fibers.push(Fiber { vertex: p.name(u).into(), link_in_psi: names(p, l), size });
    }
    let mut pairs = Vec::new();
    let mut offsets = vec![0usize];
    for f in &fibers {
        offsets.push(offsets.last().unwrap() + f.size.unwrap_or(0) as usize);
    }
    let total = *offsets.last().unwrap();
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); if elems.is_some() { total } else { 0 }];
    for (i, &u) in gp.iter().enumerate() {
        for (j, &v) in gp.iter().enumerate().skip(i + 1) {
            if !p.graph().adjacent(u, v) {
                continue;
            }
            let complete = !disjoint_coset_exists(p, &psi, &link_in(u), &link_in(v))?.exists;
            let enumerated = elems.as_ref().map(|e| {
                let mut met = HashSet::new();
                for x in 0..e.len() {
                    let (a, b) = (cosets[i][x], cosets[j][x]);
                    met.insert((a, b));
                    adj[offsets[i] + a].insert(offsets[j] + b);
                    adj[offsets[j] + b].insert(offsets[i] + a);
                }
                met.len() as u64 == fibers[i].size.unwrap() * fibers[j].size.unwrap()
            });
            pairs.push(BipartitePair { u: p.name(u).into(), v: p.name(v).into(), complete, enumerated });
        }
    }
    let (omega_vertices, omega_edges, omega_is_join) = match elems {
        Some(_) => (Some(total), Some(adj.iter().map(HashSet::len).sum::<usize>() / 2), Some(is_join(total, &adj))),
        None => (None, None, None),
    };
    Ok(OmegaReport { psi: names(p, psi), fibers, pairs, omega_vertices, omega_edges, omega_is_join })
}

#[cfg(test)]
mod tests {
    use super::super::tests::corpus;
    use super::*;
    use crate::presentation::{PresentationBuilder, VertexGroupSpec};

    fn set(p: &PeriagroupPresentation, names: &[&str]) -> VertexSet {
        names.iter().map(|n| p.index_of(n).unwrap()).collect()
    }

    #[test]
    fn i2_3_has_disjoint_cosets() {
        let p = corpus("i2-3");
        let all = p.vertices();
        let r = disjoint_coset_exists(&p, &all, &set(&p, &["s"]), &set(&p, &["t"])).unwrap();
        assert!(r.exists);
        assert_eq!(r.verified, Some(true));
        assert_eq!(r.checked, 6);
        assert!(!disjoint_coset_exists(&p, &all, &all, &set(&p, &["t"])).unwrap().exists);
    }

    #[test]
    fn commuting_pair_has_none() {
        let p = PresentationBuilder::new()
            .vertex("s", VertexGroupSpec::Cyclic(2))
            .vertex("t", VertexGroupSpec::Cyclic(2))
            .edge("s", "t", 2)
            .build()
            .unwrap();
        let r = disjoint_coset_exists(&p, &p.vertices(), &set(&p, &["s"]), &set(&p, &["t"])).unwrap();
        assert!(!r.exists);
        assert_eq!(r.checked, 4);
        assert_eq!(r.verified, Some(true));
    }

    #[test]
    fn witness_follows_the_opposite_graph() {
        let p = corpus("affine-a2");
        let names = p.names().to_vec();
        let (a, b) = (&names[0][..], &names[1][..]);
        let r = disjoint_coset_exists(&p, &p.vertices(), &set(&p, &[a]), &set(&p, &[b])).unwrap();
        assert!(r.exists);
        assert!(r.witness.is_some());
        assert_eq!(r.verified, None);
    }

    #[test]
    fn enumerates_dihedral_groups() {
        let p = corpus("i2-5");
        assert_eq!(coxeter_elements(&p, &p.vertices()).unwrap().unwrap().len(), 10);
        assert!(coxeter_elements(&corpus("dinf"), &corpus("dinf").vertices()).unwrap().is_none());
    }

    #[test]
    fn centraliser_examples() {
        let ex = corpus("ex-periagroup");
        let r = centraliser_of_rot(&ex, &VertexSet::new()).unwrap();
        assert_eq!(r.psi, vec!["v1", "v2"]);
        assert!(r.lambda.is_empty());
        let star = PresentationBuilder::new()
            .vertex("s", VertexGroupSpec::Cyclic(2))
            .vertex("a", VertexGroupSpec::CyclicInfinite)
            .vertex("b", VertexGroupSpec::CyclicInfinite)
            .edge("s", "a", 2)
            .edge("s", "b", 2)
            .build()
            .unwrap();
        let s = set(&star, &["s"]);
        let r = centraliser_of_rot(&star, &s).unwrap();
        assert_eq!(r.lambda, vec!["s"]);
        assert!(r.finite);
        let r = centraliser_of_rot(&corpus("raag-path"), &VertexSet::new()).unwrap();
        assert!(r.psi.is_empty() && r.lambda.is_empty());
    }

    #[test]
    fn fiber_of_an_order_two_subgroup_in_i2_3() {
        let p = corpus("dyer-triangle");
        let r = omega_fibers(&p, &VertexSet::new()).unwrap();
        assert_eq!(r.psi, vec!["s", "t"]);
        assert_eq!(r.fibers.len(), 1);
        assert_eq!(r.fibers[0].size, Some(3));
        assert_eq!(r.omega_vertices, Some(3));
        assert_eq!(r.omega_is_join, Some(false));
    }

    #[test]
    fn empty_coxeter_part_gives_unit_fibers() {
        let p = corpus("c4-racg");
        let r = omega_fibers(&p, &VertexSet::new()).unwrap();
        assert!(r.psi.is_empty());
        assert!(r.fibers.iter().all(|f| f.size == Some(1)));
        assert_eq!(r.omega_edges, Some(4));
        assert_eq!(r.omega_is_join, Some(true));
    }

    #[test]
    fn factor_in_one_link_gives_complete_bipartite_fibers() {
        let p = PresentationBuilder::new()
            .vertex("s", VertexGroupSpec::Cyclic(2))
            .vertex("t", VertexGroupSpec::Cyclic(2))
            .vertex("u", VertexGroupSpec::Cyclic(3))
            .vertex("v", VertexGroupSpec::Cyclic(3))
            .edge("s", "t", 3)
            .edge("u", "s", 2)
            .edge("u", "t", 2)
            .edge("u", "v", 2)
            .build()
            .unwrap();
        let r = omega_fibers(&p, &VertexSet::new()).unwrap();
        assert_eq!(r.fibers.iter().map(|f| f.size).collect::<Vec<_>>(), vec![Some(1), Some(6)]);
        assert_eq!(r.pairs.len(), 1);
        assert!(r.pairs[0].complete);
        assert_eq!(r.pairs[0].enumerated, Some(true));
    }

    #[test]
    fn example_fibers_and_bipartite_rule_agree() {
        let p = corpus("ex-periagroup");
        let r = omega_fibers(&p, &VertexSet::new()).unwrap();
        assert_eq!(r.fibers.iter().map(|f| f.size).collect::<Vec<_>>(), vec![Some(5), Some(10)]);
        for pair in &r.pairs {
            assert_eq!(Some(pair.complete), pair.enumerated);
        }
        assert_eq!(r.omega_is_join, Some(false));
    }
}
