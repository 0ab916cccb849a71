//! Spherical and conjugacy growth.
//!
//! Lengths are measured in the S metric throughout: the generating set is the union of the
//! declared generating sets of the vertex groups, closed under inverses.

mod conjugacy;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

pub use conjugacy::{conjugacy_growth, saturation, ConjugacyClassTable, ConjugacyGrowth, ConjugacyMethod};

use crate::cayley::{explore_ball, generators, BallOptions, GenMode};
use crate::classify::{contracting_exists, virtually_abelian, ClassificationReport, Verdict};
use crate::error::{Error, Result};
use crate::presentation::{star2_decomposition, PeriagroupPresentation};
use crate::words::{CanonicalForm, Word, Words};

/// Truncated power series `c(0) + c(1)z + … + c(N)z^N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    pub coefficients: Vec<u64>,
}

impl GrowthSeries {
    pub fn new(coefficients: Vec<u64>) -> Self {
        GrowthSeries { coefficients }
    }

    /// The largest exponent kept.
    pub fn truncation(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> u64 {
        self.coefficients.get(n).copied().unwrap_or(0)
    }

    pub fn truncate(&self, n: usize) -> GrowthSeries {
        GrowthSeries::new(self.coefficients.iter().copied().take(n + 1).collect())
    }

    /// Parses comma-separated coefficients.
    pub fn parse(text: &str) -> Result<Self> {
        let coefficients = text
            .trim()
            .split(',')
            .enumerate()
            .map(|(i, t)| {
                t.trim().parse::<u64>().map_err(|_| Error::Parse { line: 1, col: i + 1, msg: format!("bad coefficient `{}`", t.trim()) })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GrowthSeries { coefficients })
    }
}

impl fmt::Display for GrowthSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Sphere sizes `s(0..=n)` of the Cayley graph in the given mode.
pub fn spherical_growth(p: &PeriagroupPresentation, n: usize, mode: GenMode) -> Result<GrowthSeries> {
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(n, mode))?;
    Ok(GrowthSeries::new(ball.sphere_sizes()))
}

/// Coefficient convolution, truncated to the shorter series.
pub fn series_product(a: &GrowthSeries, b: &GrowthSeries) -> GrowthSeries {
    let n = a.coefficients.len().min(b.coefficients.len());
    GrowthSeries::new((0..n).map(|k| (0..=k).map(|i| a.get(i) * b.get(k - i)).sum()).collect())
}

/// Sphere sizes in the S metric, stopping at the last sphere completed within `max_vertices`.
pub fn sphere_sizes_within(p: &PeriagroupPresentation, max_radius: usize, max_vertices: usize) -> Result<GrowthSeries> {
    let words = Words::new(p);
    let (gens, _) = generators(p, GenMode::S, None)?;
    let mut seen = HashSet::from([CanonicalForm::identity()]);
    let mut frontier = vec![CanonicalForm::identity()];
    let mut sizes = vec![1u64];
    while sizes.len() <= max_radius && !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for &s in &gens {
                let mut w = x.word().0.clone();
                w.push(s);
                let y = words.canonical_form(&Word(w))?;
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
            if seen.len() > max_vertices {
                return Ok(GrowthSeries::new(sizes));
            }
        }
        sizes.push(next.len() as u64);
        frontier = next;
    }
    Ok(GrowthSeries::new(sizes))
}

/// Growth rate bracket from the last complete sphere: root `s(n)^{1/n}` and ratio `s(n)/s(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    pub radius: usize,
    pub root: f64,
    pub ratio: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn rate_estimate(s: &GrowthSeries) -> Option<RateEstimate> {
    let n = s.truncation();
    if n < 2 || s.get(n) == 0 || s.get(n - 1) == 0 {
        return None;
    }
    let root = (s.get(n) as f64).powf(1.0 / n as f64);
    let ratio = s.get(n) as f64 / s.get(n - 1) as f64;
    Some(RateEstimate { radius: n, root, ratio, lower: root.min(ratio).max(1.0), upper: root.max(ratio).max(1.0) })
}

/// Rates at or below `1 + INAPPLICABLE_EPS` are treated as subexponential.
pub const INAPPLICABLE_EPS: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticDiagnostic {
    pub alpha: f64,
    pub applicable: bool,
    /// `(n, c(n)·n/αⁿ)` over the window.
    pub ratios: Vec<(usize, f64)>,
    pub min: f64,
    pub max: f64,
    /// `max / min`, infinite when some ratio vanishes.
    pub band: f64,
}

/// Ratios `c(n)·n/αⁿ` for `lo ≤ n ≤ hi`.
pub fn asymptotic_diagnostic(c: &GrowthSeries, alpha: f64, lo: usize, hi: usize) -> AsymptoticDiagnostic {
    let hi = hi.min(c.truncation());
    let ratios: Vec<(usize, f64)> = (lo..=hi).map(|n| (n, c.get(n) as f64 * n as f64 / alpha.powi(n as i32))).collect();
    let min = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let max = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    let band = if min > 0.0 { max / min } else { f64::INFINITY };
    AsymptoticDiagnostic { alpha, applicable: alpha > 1.0 + INAPPLICABLE_EPS, ratios, min, max, band }
}

/// Margin by which the largest growth-rate bracket must clear the others.
pub const RATE_MARGIN: f64 = 0.05;
const RATE_MAX_RADIUS: usize = 14;
const RATE_MAX_VERTICES: usize = 200_000;

/// Transcendence of the conjugacy growth series, read off the classifiers.
pub fn transcendence_verdict(p: &PeriagroupPresentation) -> Result<ClassificationReport> {
    const Q: &str = "transcendental conjugacy growth series";
    let report = |v: Verdict, rule: String, witnesses: Vec<String>| ClassificationReport {
        question: Q.into(),
        verdict: v,
        rule,
        factors: Vec::new(),
        witnesses,
    };
    let va = virtually_abelian(p)?;
    if va.verdict == Verdict::Yes {
        return Ok(report(Verdict::No, "rational: the group is virtually abelian".into(), vec![va.rule]));
    }
    let c = contracting_exists(p)?;
    if va.verdict == Verdict::No && c.verdict == Verdict::Yes {
        return Ok(report(Verdict::Yes, "contracting element in a non-elementary group".into(), vec![va.rule, c.rule]));
    }
    if p.has_opaque() {
        return Ok(report(Verdict::Unknown, "open: growth rates of opaque vertex groups are not available".into(), vec![c.rule]));
    }
    let factors: Vec<Vec<usize>> = star2_decomposition(p.graph(), &p.vertices())
        .factors
        .into_iter()
        .filter(|f| crate::classify::group_order(&p.restrict(&f.iter().copied().collect())).map(|o| o.is_none()).unwrap_or(true))
        .collect();
    if factors.len() >= 2 {
        let mut rates = Vec::new();
        for f in &factors {
            let q = p.restrict(&f.iter().copied().collect());
            let s = sphere_sizes_within(&q, RATE_MAX_RADIUS, RATE_MAX_VERTICES)?;
            rates.push((q, rate_estimate(&s)));
        }
        let desc: Vec<String> = factors
            .iter()
            .zip(&rates)
            .map(|(f, (_, r))| {
                let names: Vec<&str> = f.iter().map(|&v| p.name(v)).collect();
                match r {
                    Some(r) => format!("factor {{{}}}: rate in [{:.4}, {:.4}] at radius {}", names.join(", "), r.lower, r.upper, r.radius),
                    None => format!("factor {{{}}}: no rate estimate", names.join(", ")),
                }
            })
            .collect();
        if rates.iter().all(|(_, r)| r.is_some()) {
            let top = (0..rates.len()).max_by(|&i, &j| rates[i].1.unwrap().lower.total_cmp(&rates[j].1.unwrap().lower)).unwrap();
            let lower = rates[top].1.unwrap().lower;
            let separated = rates.iter().enumerate().all(|(i, (_, r))| i == top || r.unwrap().upper + RATE_MARGIN < lower);
            if separated {
                let q = &rates[top].0;
                if contracting_exists(q)?.verdict == Verdict::Yes && virtually_abelian(q)?.verdict == Verdict::No {
                    return Ok(report(
                        Verdict::Yes,
                        "direct product whose strictly fastest-growing factor has a contracting element".into(),
                        desc,
                    ));
                }
            }
        }
        return Ok(report(Verdict::Unknown, "open: no factor has a strictly larger growth rate with a contracting element".into(), desc));
    }
    Ok(report(Verdict::Unknown, "open: no applicable rule".into(), vec![c.rule]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn corpus(name: &str) -> PeriagroupPresentation {
        let text = std::fs::read_to_string(format!("{}/corpus/{name}.peria", env!("CARGO_MANIFEST_DIR"))).unwrap();
        parse_presentation(&text).unwrap()
    }

    fn zn(n: usize) -> PeriagroupPresentation {
        let mut text = String::new();
        for i in 0..n {
            text += &format!("vertex a{i} cyclic inf\n");
            for j in 0..i {
                text += &format!("edge a{j} a{i} 2\n");
            }
        }
        parse_presentation(&text).unwrap()
    }

    #[test]
    fn spherical_examples() {
        assert_eq!(spherical_growth(&corpus("dinf"), 4, GenMode::S).unwrap().coefficients, vec![1, 2, 2, 2, 2]);
        assert_eq!(spherical_growth(&zn(2), 3, GenMode::S).unwrap().coefficients, vec![1, 4, 8, 12]);
        assert_eq!(spherical_growth(&corpus("i2-5"), 6, GenMode::S).unwrap().coefficients, vec![1, 2, 2, 2, 2, 1, 0]);
    }

    #[test]
    fn conjugacy_examples() {
        let s3 = conjugacy_growth(&corpus("i2-3"), 4, ConjugacyMethod::Saturation { slack: 2 }).unwrap();
        assert_eq!(s3.series.coefficients, vec![1, 1, 1, 0, 0]);
        assert_eq!(s3.stable, Some(true));
        let z = conjugacy_growth(&corpus("z"), 6, ConjugacyMethod::Saturation { slack: 1 }).unwrap();
        assert_eq!(z.series.coefficients, vec![1, 2, 2, 2, 2, 2, 2]);
        let f2 = conjugacy_growth(&corpus("free2"), 5, ConjugacyMethod::ExactGp).unwrap();
        assert_eq!(f2.series.get(1), 4);
        assert_eq!(f2.cross_checked, Some(true));
    }

    /// Cyclic words in F2 up to rotation, counted by brute force over reduced words.
    fn f2_necklaces(n: usize) -> u64 {
        let letters = [1i8, -1, 2, -2];
        let mut words: Vec<Vec<i8>> = vec![vec![]];
        for _ in 0..n {
            let mut longer = Vec::new();
            for w in &words {
                for &l in &letters {
                    if w.last() != Some(&-l) {
                        longer.push([w.clone(), vec![l]].concat());
                    }
                }
            }
            words = longer;
        }
        let mut classes = HashSet::new();
        for w in words {
            if n > 0 && w[0] == -w[n - 1] {
                continue;
            }
            let rot = (0..n.max(1)).map(|k| [&w[k.min(n)..], &w[..k.min(n)]].concat()).min().unwrap();
            classes.insert(rot);
        }
        classes.len() as u64
    }

    #[test]
    fn free_group_matches_necklace_count() {
        let f2 = conjugacy_growth(&corpus("free2"), 6, ConjugacyMethod::ExactGp).unwrap();
        for n in 0..=6 {
            assert_eq!(f2.series.get(n), f2_necklaces(n), "n = {n}");
        }
    }

    #[test]
    fn products_and_units() {
        let z = GrowthSeries::new(vec![1, 2, 2, 2, 2]);
        assert_eq!(series_product(&z, &z).coefficients, vec![1, 4, 8, 12, 16]);
        let unit = GrowthSeries::new(vec![1, 0, 0, 0, 0]);
        assert_eq!(series_product(&z, &unit), z);
        let z2z3 = parse_presentation("vertex a cyclic 2\nvertex b cyclic 3\nedge a b 2\n").unwrap();
        let direct = conjugacy_growth(&z2z3, 4, ConjugacyMethod::Saturation { slack: 2 }).unwrap().series;
        let a = conjugacy_growth(&parse_presentation("vertex a cyclic 2\n").unwrap(), 4, ConjugacyMethod::ExactGp).unwrap().series;
        let b = conjugacy_growth(&parse_presentation("vertex b cyclic 3\n").unwrap(), 4, ConjugacyMethod::ExactGp).unwrap().series;
        assert_eq!(series_product(&a, &b), direct);
    }

    #[test]
    fn series_text_round_trip() {
        let s = GrowthSeries::parse("1, 2,2 ,2").unwrap();
        assert_eq!(s.to_string(), "1,2,2,2");
        assert!(GrowthSeries::parse("1,x").is_err());
    }

    #[test]
    fn asymptotics() {
        let z = GrowthSeries::new(vec![1, 2, 2, 2, 2, 2]);
        assert!(!asymptotic_diagnostic(&z, 1.0, 1, 5).applicable);
        let finite = GrowthSeries::new(vec![1, 1, 1, 0, 0, 0, 0]);
        let d = asymptotic_diagnostic(&finite, 2.0, 3, 6);
        assert_eq!(d.max, 0.0);
    }

    #[test]
    fn transcendence_examples() {
        assert_eq!(transcendence_verdict(&corpus("pentagon-racg")).unwrap().verdict, Verdict::Yes);
        assert_eq!(transcendence_verdict(&zn(3)).unwrap().verdict, Verdict::No);
        assert_eq!(transcendence_verdict(&corpus("z-times-z2")).unwrap().verdict, Verdict::No);
        assert_eq!(transcendence_verdict(&corpus("f2-times-f2")).unwrap().verdict, Verdict::Unknown);
        let z_times_f2 = parse_presentation(
            "vertex t cyclic inf\nvertex a cyclic inf\nvertex b cyclic inf\nedge t a 2\nedge t b 2\n",
        )
        .unwrap();
        assert_eq!(transcendence_verdict(&z_times_f2).unwrap().verdict, Verdict::Yes);
    }
}
