//! Group-level and element-level decision procedures.
//!
//! Every procedure starts from the `∗₂`-decomposition: the periagroup is the direct product of the
//! subgroups generated by its `∗₂`-factors, so most questions reduce to a single infinite factor.

mod cosets;
mod elements;

use serde::Serialize;

pub use cosets::{
    centraliser_of_rot, coxeter_elements, disjoint_coset_exists, omega_fibers, CentraliserReport, DisjointCosets, Fiber,
    OmegaReport, MAX_COXETER_ORDER,
};
pub use elements::{element_contracting_gp, element_morse_gp, large_join_containing, LargeJoin, MAX_JOIN_VERTICES};

use crate::coxeter::{classify as classify_coxeter, CoxeterDiagram, IrreducibleCoxeterType};
use crate::error::Result;
use crate::presentation::{gp_cox_decomposition, star2_decomposition, Acylhyp, PeriagroupPresentation, VertexGroupSpec, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

impl From<Acylhyp> for Verdict {
    fn from(a: Acylhyp) -> Self {
        match a {
            Acylhyp::Yes => Verdict::Yes,
            Acylhyp::No => Verdict::No,
            Acylhyp::Unknown => Verdict::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorVerdict {
    pub vertices: Vec<String>,
    pub finite: bool,
    pub rule: String,
}

/// A verdict together with the single rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub question: String,
    pub verdict: Verdict,
    pub rule: String,
    pub factors: Vec<FactorVerdict>,
    pub witnesses: Vec<String>,
}

impl ClassificationReport {
    fn new(question: &str, verdict: Verdict, rule: impl Into<String>) -> Self {
        ClassificationReport { question: question.into(), verdict, rule: rule.into(), factors: Vec::new(), witnesses: Vec::new() }
    }
}

fn names(p: &PeriagroupPresentation, verts: impl IntoIterator<Item = usize>) -> Vec<String> {
    verts.into_iter().map(|v| p.name(v).to_string()).collect()
}

/// Finiteness of one `∗₂`-irreducible factor.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FactorFiniteness {
    order: Option<u128>,
    rule: String,
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Order of an irreducible spherical Coxeter group.
pub fn spherical_order(kind: &IrreducibleCoxeterType) -> Option<u128> {
    let IrreducibleCoxeterType::Spherical { family, rank } = kind else { return None };
    let n = *rank as u128;
    let order = match family.chars().next()? {
        'A' => factorial(n + 1),
        'B' => (1u128 << n) * factorial(n),
        'D' => (1u128 << (n - 1)) * factorial(n),
        'E' => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        'F' => 1152,
        'G' => 12,
        'H' => {
            if n == 3 {
                120
            } else {
                14_400
            }
        }
        'I' => 2 * family.trim_start_matches("I2(").trim_end_matches(')').parse::<u128>().ok()?,
        _ => return None,
    };
    Some(order)
}

fn factor_finiteness(p: &PeriagroupPresentation, factor: &[usize]) -> Result<FactorFiniteness> {
    if let [v] = factor {
        let g = p.group(*v);
        return Ok(match g.spec.order() {
            Some(k) => FactorFiniteness { order: Some(k as u128), rule: format!("single vertex with a group of order {k}") },
            None if g.spec.is_opaque() => FactorFiniteness { order: None, rule: "single opaque vertex, declared infinite".into() },
            None => FactorFiniteness { order: None, rule: "single infinite cyclic vertex".into() },
        });
    }
    if factor.iter().all(|&v| p.group(v).spec.is_z2()) {
        let set: VertexSet = factor.iter().copied().collect();
        let (d, _) = CoxeterDiagram::from_presentation(p, &set)?;
        let c = classify_coxeter(&d, false)?;
        let kind = &c.components[0].kind;
        return Ok(match spherical_order(kind) {
            Some(k) => FactorFiniteness { order: Some(k), rule: format!("spherical Coxeter factor of type {}", kind.name()) },
            None => FactorFiniteness { order: None, rule: format!("non-spherical Coxeter factor ({})", kind.name()) },
        });
    }
    // Some vertex has order ≥ 3; it fails to commute with some other vertex of the factor, and the
    // two generate a free product of non-trivial groups, not both of order 2.
    let big = *factor.iter().find(|&&v| !p.group(v).spec.is_z2()).unwrap();
    let other = *factor.iter().find(|&&w| w != big && !p.graph().commute(big, w)).unwrap();
    Ok(FactorFiniteness {
        order: None,
        rule: format!("free product ⟨{}⟩ ∗ ⟨{}⟩ inside the factor", p.name(big), p.name(other)),
    })
}

struct Factors {
    list: Vec<Vec<usize>>,
    finiteness: Vec<FactorFiniteness>,
}

impl Factors {
    fn of(p: &PeriagroupPresentation) -> Result<Self> {
        let list = star2_decomposition(p.graph(), &p.vertices()).factors;
        let finiteness = list.iter().map(|f| factor_finiteness(p, f)).collect::<Result<_>>()?;
        Ok(Factors { list, finiteness })
    }

    fn infinite(&self) -> Vec<usize> {
        (0..self.list.len()).filter(|&i| self.finiteness[i].order.is_none()).collect()
    }

    fn verdicts(&self, p: &PeriagroupPresentation) -> Vec<FactorVerdict> {
        self.list
            .iter()
            .zip(&self.finiteness)
            .map(|(f, fin)| FactorVerdict { vertices: names(p, f.iter().copied()), finite: fin.order.is_some(), rule: fin.rule.clone() })
            .collect()
    }
}

/// Order of the group, when finite.
pub fn group_order(p: &PeriagroupPresentation) -> Result<Option<u128>> {
    let f = Factors::of(p)?;
    Ok(f.finiteness.iter().try_fold(1u128, |acc, x| x.order.and_then(|o| acc.checked_mul(o))))
}

/// Finite iff every `∗₂`-factor is finite.
pub fn is_finite(p: &PeriagroupPresentation) -> Result<ClassificationReport> {
    let f = Factors::of(p)?;
    let inf = f.infinite();
    let mut r = if let Some(&i) = inf.first() {
        let mut r = ClassificationReport::new("finite", Verdict::No, "an infinite ∗₂-factor");
        r.witnesses.push(format!("factor {{{}}}: {}", names(p, f.list[i].iter().copied()).join(", "), f.finiteness[i].rule));
        r
    } else {
        let mut r = ClassificationReport::new("finite", Verdict::Yes, "every ∗₂-factor is finite");
        if let Some(order) = group_order(p)? {
            r.witnesses.push(format!("order {order}"));
        }
        r
    };
    r.factors = f.verdicts(p);
    Ok(r)
}

/// The single infinite factor, or a finished report.
enum InfinitePart {
    Done(ClassificationReport),
    Factor(Vec<usize>, Vec<FactorVerdict>),
}

fn infinite_part(p: &PeriagroupPresentation, question: &str) -> Result<InfinitePart> {
    let f = Factors::of(p)?;
    let inf = f.infinite();
    let factors = f.verdicts(p);
    match inf.len() {
        0 => {
            let mut r = ClassificationReport::new(question, Verdict::No, "the group is finite");
            r.factors = factors;
            Ok(InfinitePart::Done(r))
        }
        1 => Ok(InfinitePart::Factor(f.list[inf[0]].clone(), factors)),
        _ => {
            let mut r = ClassificationReport::new(question, Verdict::No, "product of two infinite groups");
            for &i in &inf[..2] {
                r.witnesses.push(format!("infinite factor {{{}}}", names(p, f.list[i].iter().copied()).join(", ")));
            }
            r.factors = factors;
            Ok(InfinitePart::Done(r))
        }
    }
}

fn coxeter_type(p: &PeriagroupPresentation, factor: &[usize]) -> Result<IrreducibleCoxeterType> {
    let set: VertexSet = factor.iter().copied().collect();
    let (d, _) = CoxeterDiagram::from_presentation(p, &set)?;
    Ok(classify_coxeter(&d, false)?.components.remove(0).kind)
}

/// Whether the group has a contracting element for the word metric of `⋃ S_G`.
pub fn contracting_exists(p: &PeriagroupPresentation) -> Result<ClassificationReport> {
    const Q: &str = "contracting element exists";
    let (factor, factors) = match infinite_part(p, Q)? {
        InfinitePart::Done(r) => return Ok(r),
        InfinitePart::Factor(f, fv) => (f, fv),
    };
    let set: VertexSet = factor.iter().copied().collect();
    let split = gp_cox_decomposition(p, &set, &VertexSet::new())?;
    let mut r = if split.gp.is_empty() {
        let kind = coxeter_type(p, &factor)?;
        let yes = matches!(kind, IrreducibleCoxeterType::Other) || kind.is_infinite_dihedral();
        let mut r = ClassificationReport::new(
            Q,
            Verdict::from_bool(yes),
            if yes { "Coxeter factor that is infinite dihedral or neither spherical nor affine" } else { "affine Coxeter factor" },
        );
        r.witnesses.push(format!("Coxeter type {}", kind.name()));
        r
    } else if split.cox.is_empty() {
        if let [v] = factor[..] {
            match p.group(v).spec {
                VertexGroupSpec::CyclicInfinite => ClassificationReport::new(Q, Verdict::Yes, "infinite cyclic group"),
                _ => ClassificationReport::new(Q, Verdict::Unknown, format!("opaque vertex `{}`: contracting elements not declared", p.name(v))),
            }
        } else {
            match large_join_containing(p, &set)? {
                Some(j) => {
                    let mut r = ClassificationReport::new(Q, Verdict::No, "graph-product factor contained in a large join");
                    r.witnesses.push(j.describe(p));
                    r
                }
                None => ClassificationReport::new(Q, Verdict::Yes, "graph-product factor neither complete nor contained in a large join"),
            }
        }
    } else {
        let mut r = ClassificationReport::new(Q, Verdict::Yes, "irreducible factor with both graph-product and Coxeter vertices");
        r.witnesses.push(format!("GP part {{{}}}, Coxeter part {{{}}}", names(p, split.gp).join(", "), names(p, split.cox).join(", ")));
        r
    };
    r.factors = factors;
    Ok(r)
}

/// Acylindrical hyperbolicity from the `∗₂`-decomposition.
pub fn acylindrically_hyperbolic(p: &PeriagroupPresentation) -> Result<ClassificationReport> {
    const Q: &str = "acylindrically hyperbolic";
    let (factor, factors) = match infinite_part(p, Q)? {
        InfinitePart::Done(r) => return Ok(r),
        InfinitePart::Factor(f, fv) => (f, fv),
    };
    let all_two = factor.iter().all(|&u| factor.iter().all(|&v| p.label(u, v).is_none_or(|l| l == 2)));
    let has_z2 = factor.iter().any(|&v| p.group(v).spec.is_z2());
    let has_big = factor.iter().any(|&v| !p.group(v).spec.is_z2());
    let mut r = if let [v] = factor[..] {
        match p.group(v).spec {
            VertexGroupSpec::Opaque(a) => ClassificationReport::new(Q, a.into(), format!("declared flag of opaque vertex `{}`", p.name(v))),
            _ => ClassificationReport::new(Q, Verdict::No, "virtually cyclic factor"),
        }
    } else if has_z2 && has_big {
        ClassificationReport::new(Q, Verdict::Yes, "factor mixes an order-2 vertex with a vertex of order at least 3")
    } else if all_two && !(factor.len() == 2 && !has_big) {
        ClassificationReport::new(Q, Verdict::Yes, "graph-product factor with at least two vertices, not ℤ₂ ∗ ℤ₂")
    } else if !has_big {
        let kind = coxeter_type(p, &factor)?;
        let yes = matches!(kind, IrreducibleCoxeterType::Other);
        let mut r = ClassificationReport::new(
            Q,
            Verdict::from_bool(yes),
            if yes { "Coxeter factor neither spherical nor affine" } else { "affine Coxeter factor" },
        );
        r.witnesses.push(format!("Coxeter type {}", kind.name()));
        r
    } else {
        ClassificationReport::new(Q, Verdict::No, "no applicable case")
    };
    r.factors = factors;
    Ok(r)
}

/// Virtually abelian iff every `∗₂`-factor is finite, infinite cyclic or an affine Coxeter group.
pub fn virtually_abelian(p: &PeriagroupPresentation) -> Result<ClassificationReport> {
    const Q: &str = "virtually abelian";
    let f = Factors::of(p)?;
    let mut unknown = None;
    for i in f.infinite() {
        let factor = &f.list[i];
        let desc = names(p, factor.iter().copied()).join(", ");
        if let [v] = factor[..] {
            if p.group(v).spec.is_opaque() {
                unknown.get_or_insert(format!("opaque vertex `{}`", p.name(v)));
            }
            continue;
        }
        let no = |rule: String| {
            let mut r = ClassificationReport::new(Q, Verdict::No, rule);
            r.factors = f.verdicts(p);
            Ok(r)
        };
        if factor.iter().all(|&v| p.group(v).spec.is_z2()) {
            let kind = coxeter_type(p, factor)?;
            if matches!(kind, IrreducibleCoxeterType::Other) {
                return no(format!("Coxeter factor {{{desc}}} of type {} is neither spherical nor affine", kind.name()));
            }
        } else {
            return no(format!("factor {{{desc}}} contains a free product of two groups, one of order at least 3"));
        }
    }
    let mut r = match unknown {
        Some(v) => ClassificationReport::new(Q, Verdict::Unknown, format!("depends on the group of {v}")),
        None => ClassificationReport::new(Q, Verdict::Yes, "every ∗₂-factor is finite, infinite cyclic or affine Coxeter"),
    };
    r.factors = f.verdicts(p);
    Ok(r)
}
