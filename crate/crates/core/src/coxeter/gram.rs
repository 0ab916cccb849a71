use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::CoxeterDiagram;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramVerdict {
    PositiveDefinite,
    SemidefiniteCorank1,
    /// Positive semidefinite with a kernel of dimension at least two.
    SemidefiniteDegenerate,
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GramSignature {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    pub verdict: GramVerdict,
    /// `true` when decided in exact arithmetic.
    pub exact: bool,
}

impl GramSignature {
    fn from_counts(positive: usize, zero: usize, negative: usize, exact: bool) -> Self {
        let verdict = match (zero, negative) {
            (_, n) if n > 0 => GramVerdict::Indefinite,
            (0, _) => GramVerdict::PositiveDefinite,
            (1, _) => GramVerdict::SemidefiniteCorank1,
            _ => GramVerdict::SemidefiniteDegenerate,
        };
        GramSignature { positive, zero, negative, verdict, exact }
    }
}

/// Element of `ℤ[√2, √3, √5]`: coefficient `k` multiplies `√d` where `d` is the product of the primes
/// `2, 3, 5` selected by the bits of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Surd([i128; 8]);

const PRIMES: [i128; 3] = [2, 3, 5];

fn radicand(mask: usize) -> i128 {
    (0..3).filter(|b| mask >> b & 1 == 1).map(|b| PRIMES[b]).product()
}

impl Surd {
    fn int(k: i128) -> Self {
        let mut s = Surd::default();
        s.0[0] = k;
        s
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn add(&self, o: &Surd) -> Result<Surd> {
        let mut r = Surd::default();
        for i in 0..8 {
            r.0[i] = self.0[i].checked_add(o.0[i]).ok_or_else(overflow)?;
        }
        Ok(r)
    }

    fn neg(&self) -> Surd {
        Surd(self.0.map(|c| -c))
    }

    fn mul(&self, o: &Surd) -> Result<Surd> {
        let mut r = Surd::default();
        for a in (0..8).filter(|&a| self.0[a] != 0) {
            for b in (0..8).filter(|&b| o.0[b] != 0) {
                let term = self.0[a]
                    .checked_mul(o.0[b])
                    .and_then(|t| t.checked_mul(radicand(a & b)))
                    .ok_or_else(overflow)?;
                r.0[a ^ b] = r.0[a ^ b].checked_add(term).ok_or_else(overflow)?;
            }
        }
        Ok(r)
    }

    /// Sign of the real number, certified by a floating-point bound and, failing that, by rational
    /// interval refinement of the square roots.
    fn sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        let (mut value, mut scale) = (0.0f64, 0.0f64);
        for (k, &c) in self.0.iter().enumerate() {
            let t = c as f64 * (radicand(k) as f64).sqrt();
            value += t;
            scale += t.abs();
        }
        if value.abs() > scale * 1e-12 {
            return Ok(if value > 0.0 { Ordering::Greater } else { Ordering::Less });
        }
        let mut bits = 64u32;
        while bits <= 8192 {
            let one = BigInt::from(1) << bits;
            let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
            for (k, &c) in self.0.iter().enumerate().filter(|(_, &c)| c != 0) {
                // floor(√d · 2^bits) ≤ √d · 2^bits < floor + 1; exact when d = 1.
                let root = (BigInt::from(radicand(k)) * &one * &one).sqrt();
                let upper = if k == 0 { root.clone() } else { &root + 1 };
                let c = BigInt::from(c);
                if c.is_positive() {
                    lo += &c * &root;
                    hi += &c * &upper;
                } else {
                    lo += &c * &upper;
                    hi += &c * &root;
                }
            }
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
        Err(Error::PrecisionExhausted("sign of a surd not resolved at 8192 bits".into()))
    }
}

fn overflow() -> Error {
    Error::PrecisionExhausted("integer overflow in exact Gram arithmetic".into())
}

/// `-4·cos(π/m)` in `ℤ[√2, √3, √5]`, for the labels where it lies there.
fn minus_four_cos(m: Option<u32>) -> Option<Surd> {
    let mut s = Surd::default();
    match m {
        None => s.0[0] = -4,
        Some(2) => {}
        Some(3) => s.0[0] = -2,
        Some(4) => s.0[0b001] = -2,
        Some(5) => {
            s.0[0] = -1;
            s.0[0b100] = -1;
        }
        Some(6) => s.0[0b010] = -2,
        _ => return None,
    }
    Some(s)
}

/// Coefficients of `det(λI − A)`, highest degree first, by Berkowitz's division-free recursion.
fn char_poly(a: &[Vec<Surd>]) -> Result<Vec<Surd>> {
    let n = a.len();
    let mut p = vec![Surd::int(1)];
    for r in 0..n {
        let mut t = vec![Surd::int(1), a[r][r].neg()];
        let mut v: Vec<Surd> = (0..r).map(|i| a[i][r]).collect();
        for _ in 0..r {
            let mut dot = Surd::default();
            for j in 0..r {
                dot = dot.add(&a[r][j].mul(&v[j])?)?;
            }
            t.push(dot.neg());
            let mut next = vec![Surd::default(); r];
            for (i, slot) in next.iter_mut().enumerate() {
                for j in 0..r {
                    *slot = slot.add(&a[i][j].mul(&v[j])?)?;
                }
            }
            v = next;
        }
        let mut q = vec![Surd::default(); r + 2];
        for (i, slot) in q.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                *slot = slot.add(&t[i - j].mul(&p[j])?)?;
            }
        }
        p = q;
    }
    Ok(p)
}

/// Signature of the Gram form `B(u,v) = −cos(π/m(u,v))`.
pub fn gram_signature(d: &CoxeterDiagram) -> Result<GramSignature> {
    let n = d.n;
    let mut exact = Vec::with_capacity(n);
    for u in 0..n {
        let mut row = Vec::with_capacity(n);
        for v in 0..n {
            let entry = if u == v { Some(Surd::int(4)) } else { minus_four_cos(d.m(u, v)) };
            match entry {
                Some(s) => row.push(s),
                None => return numeric_signature(d),
            }
        }
        exact.push(row);
    }
    let poly = match char_poly(&exact) {
        Ok(p) => p,
        Err(_) => return numeric_signature(d),
    };
    let signs: Vec<Ordering> = poly.iter().map(Surd::sign).collect::<Result<_>>()?;
    let zero = signs.iter().rev().take_while(|&&s| s == Ordering::Equal).count();
    let nonzero: Vec<Ordering> = signs.into_iter().filter(|&s| s != Ordering::Equal).collect();
    // The form is symmetric, so all roots are real and Descartes' rule counts positive roots exactly.
    let positive = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(GramSignature::from_counts(positive, zero, n - zero - positive, true))
}

/// Floating-point fallback for labels outside `{2,…,6,∞}`: Jacobi eigenvalues with a backward-error margin.
fn numeric_signature(d: &CoxeterDiagram) -> Result<GramSignature> {
    let n = d.n;
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, row) in a.iter_mut().enumerate() {
        for (v, x) in row.iter_mut().enumerate() {
            *x = match d.m(u, v) {
                None => -1.0,
                Some(m) => -(std::f64::consts::PI / m as f64).cos(),
            };
        }
    }
    let eig = jacobi_eigenvalues(a);
    let margin = 1e-9 * n.max(1) as f64;
    if eig.iter().any(|&l| l.abs() <= margin) {
        return Err(Error::PrecisionExhausted(format!(
            "an eigenvalue of the Gram form is within {margin:e} of zero and the labels leave exact arithmetic"
        )));
    }
    let positive = eig.iter().filter(|&&l| l > 0.0).count();
    Ok(GramSignature::from_counts(positive, 0, n - positive, false))
}

fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

#[cfg(test)]
mod tests {
    use super::super::Label;
    use super::*;

    #[test]
    fn a2_is_positive_definite() {
        let d = CoxeterDiagram::new(2).with(0, 1, Label::M(3));
        let g = gram_signature(&d).unwrap();
        assert_eq!(g.verdict, GramVerdict::PositiveDefinite);
        assert!(g.exact);
    }

    #[test]
    fn infinite_dihedral_is_corank_one() {
        let d = CoxeterDiagram::new(2).with(0, 1, Label::Inf);
        assert_eq!(gram_signature(&d).unwrap().verdict, GramVerdict::SemidefiniteCorank1);
    }

    #[test]
    fn triangle_of_infinities_is_indefinite() {
        let d = CoxeterDiagram::new(3).with(0, 1, Label::Inf).with(1, 2, Label::Inf).with(0, 2, Label::Inf);
        let g = gram_signature(&d).unwrap();
        assert_eq!((g.positive, g.zero, g.negative), (2, 0, 1));
    }

    #[test]
    fn h4_and_affine_g2_need_surds() {
        let h4 = CoxeterDiagram::new(4).with(0, 1, Label::M(5)).with(1, 2, Label::M(3)).with(2, 3, Label::M(3));
        assert_eq!(gram_signature(&h4).unwrap().verdict, GramVerdict::PositiveDefinite);
        let g2 = CoxeterDiagram::new(3).with(0, 1, Label::M(6)).with(1, 2, Label::M(3));
        assert_eq!(gram_signature(&g2).unwrap().verdict, GramVerdict::SemidefiniteCorank1);
        let c2 = CoxeterDiagram::new(3).with(0, 1, Label::M(4)).with(1, 2, Label::M(4));
        assert_eq!(gram_signature(&c2).unwrap().verdict, GramVerdict::SemidefiniteCorank1);
    }

    #[test]
    fn large_dihedral_labels_use_the_numeric_path() {
        let d = CoxeterDiagram::new(2).with(0, 1, Label::M(7));
        let g = gram_signature(&d).unwrap();
        assert_eq!(g.verdict, GramVerdict::PositiveDefinite);
        assert!(!g.exact);
    }

    #[test]
    fn surd_signs_near_cancellation() {
        // 99√2 − 140 > 0 and 41√2 − 58 < 0 (Pell-style near misses).
        let mut a = Surd::int(-140);
        a.0[1] = 99;
        assert_eq!(a.sign().unwrap(), Ordering::Greater);
        let mut b = Surd::int(-58);
        b.0[1] = 41;
        assert_eq!(b.sign().unwrap(), Ordering::Less);
        let mut c = Surd::int(-665857);
        c.0[1] = 470832;
        assert_eq!(c.sign().unwrap(), Ordering::Less);
    }
}
