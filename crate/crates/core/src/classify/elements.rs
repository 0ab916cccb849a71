use std::collections::HashMap;

use super::{group_order, names, ClassificationReport, Verdict};
use crate::error::{Error, Result};
use crate::presentation::{PeriagroupPresentation, VertexGroupSpec, VertexSet};
use crate::words::{Word, Words};

/// Largest graph for which large joins are searched exhaustively.
pub const MAX_JOIN_VERTICES: usize = 20;

/// Disjoint `Λ₁, Λ₂` joined by label-2 edges, both generating infinite subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeJoin {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl LargeJoin {
    pub fn describe(&self, p: &PeriagroupPresentation) -> String {
        format!("large join {{{}}} ∗ {{{}}}", names(p, self.a.iter().copied()).join(", "), names(p, self.b.iter().copied()).join(", "))
    }
}

fn to_set(mask: u32) -> VertexSet {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

struct Infinite<'p> {
    p: &'p PeriagroupPresentation,
    commute: Vec<u32>,
    adjacent: Vec<u32>,
    infinite_vertices: u32,
    memo: HashMap<u32, bool>,
}

impl Infinite<'_> {
    fn check(&mut self, mask: u32) -> Result<bool> {
        if mask & self.infinite_vertices != 0 {
            return Ok(true);
        }
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if mask & !self.adjacent[u] & !(1 << u) != 0 {
                return Ok(true);
            }
        }
        let all_commute = (0..32).filter(|&u| mask >> u & 1 == 1).all(|u| mask & !self.commute[u] & !(1 << u) == 0);
        if all_commute {
            return Ok(false);
        }
        if let Some(&b) = self.memo.get(&mask) {
            return Ok(b);
        }
        let b = group_order(&self.p.restrict(&to_set(mask)))?.is_none();
        self.memo.insert(mask, b);
        Ok(b)
    }
}

/// A large join containing `lambda`, searched over all `Λ₁` with `Λ₂` the common label-2 neighbours of `Λ₁`.
pub fn large_join_containing(p: &PeriagroupPresentation, lambda: &VertexSet) -> Result<Option<LargeJoin>> {
    let n = p.len();
    if n > MAX_JOIN_VERTICES {
        return Err(Error::Resource { what: "vertices for the large-join search".into(), bound: MAX_JOIN_VERTICES });
    }
    let g = p.graph();
    let mask_of = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&v| f(v)).fold(0u32, |m, v| m | 1 << v);
    let mut inf = Infinite {
        p,
        commute: (0..n).map(|u| mask_of(&|v| g.commute(u, v))).collect(),
        adjacent: (0..n).map(|u| mask_of(&|v| g.adjacent(u, v))).collect(),
        infinite_vertices: mask_of(&|v| !p.group(v).spec.is_finite()),
        memo: HashMap::new(),
    };
    let target = lambda.iter().fold(0u32, |m, &v| m | 1 << v);
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for a in 1..=full {
        let mut b = full & !a;
        let mut rest = a;
        while rest != 0 && b != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            b &= inf.commute[u];
        }
        if b == 0 || target & !(a | b) != 0 {
            continue;
        }
        if inf.check(a)? && inf.check(b)? {
            return Ok(Some(LargeJoin { a: to_set(a), b: to_set(b) }));
        }
    }
    Ok(None)
}

enum ElementCase {
    Trivial,
    FiniteOrder,
    InLargeJoin(LargeJoin),
    Generic,
    /// Complete support with one infinite vertex whose link is a clique of finite groups.
    SplitOver(usize),
}

fn element_case(p: &PeriagroupPresentation, g: &Word) -> Result<(ElementCase, VertexSet, String)> {
    if !p.is_graph_product() {
        return Err(Error::Precondition("element classification needs every edge label to be 2".into()));
    }
    let words = Words::new(p);
    words.check(g)?;
    let cr = words.cyclic_reduce_and_support(g)?;
    let lambda = cr.support.clone();
    let rep = words.format_word(&cr.representative);
    if lambda.is_empty() {
        return Ok((ElementCase::Trivial, lambda, rep));
    }
    let complete = p.graph().is_complete_on(&lambda);
    if complete && lambda.iter().all(|&v| p.group(v).spec.is_finite()) {
        return Ok((ElementCase::FiniteOrder, lambda, rep));
    }
    if let Some(j) = large_join_containing(p, &lambda)? {
        return Ok((ElementCase::InLargeJoin(j), lambda, rep));
    }
    if !complete {
        return Ok((ElementCase::Generic, lambda, rep));
    }
    let u = *lambda.iter().find(|&&v| !p.group(v).spec.is_finite()).unwrap();
    Ok((ElementCase::SplitOver(u), lambda, rep))
}

fn element_report(p: &PeriagroupPresentation, g: &Word, question: &str) -> Result<ClassificationReport> {
    let (case, lambda, rep) = element_case(p, g)?;
    let mut r = match case {
        ElementCase::Trivial => ClassificationReport::new(question, Verdict::No, "trivial element"),
        ElementCase::FiniteOrder => {
            ClassificationReport::new(question, Verdict::No, "finite order: essential support is a clique of finite groups")
        }
        ElementCase::InLargeJoin(j) => {
            let mut r = ClassificationReport::new(
                question,
                Verdict::No,
                "essential support contained in a large join (converse by product obstruction)",
            );
            r.witnesses.push(j.describe(p));
            r
        }
        ElementCase::Generic => {
            ClassificationReport::new(question, Verdict::Yes, "essential support neither complete nor contained in a large join")
        }
        ElementCase::SplitOver(u) => match p.group(u).spec {
            VertexGroupSpec::CyclicInfinite => ClassificationReport::new(
                question,
                Verdict::Yes,
                format!("a power lies in the infinite cyclic group of `{}`, whose link is a clique of finite groups", p.name(u)),
            ),
            _ => ClassificationReport::new(question, Verdict::Unknown, format!("depends on the group of `{}`", p.name(u))),
        },
    };
    r.witnesses.push(format!("essential support {{{}}}", names(p, lambda).join(", ")));
    r.witnesses.push(format!("cyclic representative {rep}"));
    Ok(r)
}

/// Contracting status of an element of a graph product in the word metric of `⋃ S_G`.
pub fn element_contracting_gp(p: &PeriagroupPresentation, g: &Word) -> Result<ClassificationReport> {
    element_report(p, g, "contracting element")
}

/// Morse status of an element of a graph product.
pub fn element_morse_gp(p: &PeriagroupPresentation, g: &Word) -> Result<ClassificationReport> {
    element_report(p, g, "Morse element")
}

#[cfg(test)]
mod tests {
    use super::super::tests::corpus;
    use super::*;
    use crate::presentation::PresentationBuilder;

    fn verdict(p: &PeriagroupPresentation, w: &str, f: fn(&PeriagroupPresentation, &Word) -> Result<ClassificationReport>) -> Verdict {
        let g = Words::new(p).parse_word(w).unwrap();
        f(p, &g).unwrap().verdict
    }

    #[test]
    fn pentagon_coxeter_element_is_contracting() {
        let p = corpus("pentagon-racg");
        let all: Vec<&str> = p.names().iter().map(String::as_str).collect();
        assert_eq!(verdict(&p, &all.join(" "), element_contracting_gp), Verdict::Yes);
    }

    #[test]
    fn c4_element_lies_in_a_large_join() {
        let p = corpus("c4-racg");
        let r = element_contracting_gp(&p, &Words::new(&p).parse_word("a b c d").unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.witnesses[0].starts_with("large join"));
    }

    #[test]
    fn finite_support_is_not_contracting() {
        let p = corpus("c4-racg");
        assert_eq!(verdict(&p, "a", element_contracting_gp), Verdict::No);
        assert_eq!(verdict(&p, "a b", element_morse_gp), Verdict::No);
    }

    #[test]
    fn morse_examples() {
        let f2 = corpus("free2");
        assert_eq!(verdict(&f2, "a b", element_morse_gp), Verdict::Yes);
        assert_eq!(verdict(&f2, "a^3", element_morse_gp), Verdict::Yes);
        let z2 = PresentationBuilder::new()
            .vertex("a", VertexGroupSpec::CyclicInfinite)
            .vertex("b", VertexGroupSpec::CyclicInfinite)
            .edge("a", "b", 2)
            .build()
            .unwrap();
        assert_eq!(verdict(&z2, "a b", element_morse_gp), Verdict::No);
        let u = corpus("z");
        assert_eq!(verdict(&u, "t^3", element_morse_gp), Verdict::Yes);
    }

    #[test]
    fn infinite_vertex_with_infinite_link_is_not_morse() {
        let p = corpus("z-times-z2");
        assert_eq!(verdict(&p, "a", element_morse_gp), Verdict::Yes);
        let raag = corpus("raag-path");
        assert_eq!(verdict(&raag, "b", element_morse_gp), Verdict::No);
    }

    #[test]
    fn rejects_non_graph_products() {
        let p = corpus("i2-5");
        assert!(element_contracting_gp(&p, &Word::empty()).is_err());
    }

    #[test]
    fn large_joins() {
        let p = corpus("raag-path");
        assert!(large_join_containing(&p, &p.vertices()).unwrap().is_some());
        let q = corpus("pentagon-racg");
        assert!(large_join_containing(&q, &q.vertices()).unwrap().is_none());
    }
}
