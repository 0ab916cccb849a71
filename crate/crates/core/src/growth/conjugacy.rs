use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::GrowthSeries;
use crate::cayley::{explore_ball, generators, BallOptions, GenMode, DEFAULT_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::presentation::{PeriagroupPresentation, VertexGroupSpec};
use crate::words::{Word, Words};

/// Ball size above which the exact method skips its saturation cross-check.
const CROSS_CHECK_MAX_VERTICES: usize = 400_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum ConjugacyMethod {
    /// Graph products of cyclic groups: closure of cyclically reduced words under cyclic
    /// permutation and commutation.
    ExactGp,
    /// Union–find over a ball of radius `N + slack`.
    Saturation { slack: usize },
}

impl ConjugacyMethod {
    pub fn tag(&self) -> String {
        match self {
            ConjugacyMethod::ExactGp => "exact-gp".into(),
            ConjugacyMethod::Saturation { slack } => format!("saturation({slack})"),
        }
    }
}

impl FromStr for ConjugacyMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-gp" | "exact" => Ok(ConjugacyMethod::ExactGp),
            "saturation" => Ok(ConjugacyMethod::Saturation { slack: 2 }),
            _ => Err(Error::Precondition(format!("unknown method `{s}` (expected exact-gp or saturation)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClassTable {
    pub method: String,
    /// Minimal-length representatives, indexed by length.
    pub representatives: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyGrowth {
    pub series: GrowthSeries,
    pub table: ConjugacyClassTable,
    /// Saturation: whether slack + 1 reproduces the counts.
    pub stable: Option<bool>,
    /// Exact method: whether saturation at slack 2 gives the same counts.
    pub cross_checked: Option<bool>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            y = std::mem::replace(&mut self.0[y], r);
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Conjugacy classes met by the S-ball of radius `n + slack`, merged along `x ~ s⁻¹xs` inside the ball.
pub fn saturation(p: &PeriagroupPresentation, n: usize, slack: usize, max_vertices: usize) -> Result<(GrowthSeries, Vec<Vec<String>>)> {
    let words = Words::new(p);
    let opts = BallOptions { max_vertices, ..BallOptions::new(n + slack, GenMode::S) };
    let ball = explore_ball(p, &Word::empty(), opts)?;
    let (gens, _) = generators(p, GenMode::S, None)?;
    let links: Vec<Vec<usize>> = (0..ball.len())
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for &s in &gens {
                let s = Word(vec![s]);
                let w = words.inverse_word(&s).concat(ball.elements[x].word()).concat(&s);
                if let Some(y) = ball.find(&words, &w)? {
                    out.push(y);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut uf = UnionFind((0..ball.len()).collect());
    for (x, ys) in links.iter().enumerate() {
        for &y in ys {
            uf.union(x, y);
        }
    }
    // Ids are in breadth-first order, so the root of each class is one of its shortest elements.
    let mut reps = vec![Vec::new(); n + 1];
    for x in 0..ball.len() {
        let d = ball.dist[x] as usize;
        if uf.find(x) == x && d <= n {
            reps[d].push(words.format_word(ball.elements[x].word()));
        }
    }
    Ok((GrowthSeries::new(reps.iter().map(|r| r.len() as u64).collect()), reps))
}

fn exact_gp(p: &PeriagroupPresentation, n: usize) -> Result<(GrowthSeries, Vec<Vec<String>>)> {
    let cyclic = (0..p.len()).all(|v| matches!(p.group(v).spec, VertexGroupSpec::Cyclic(_) | VertexGroupSpec::CyclicInfinite));
    if !p.is_graph_product() || !cyclic {
        return Err(Error::Precondition("exact-gp needs a graph product of cyclic groups".into()));
    }
    let words = Words::new(p);
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(n, GenMode::S))?;
    let keys: Vec<(Word, u64)> = ball
        .elements
        .par_iter()
        .map(|e| {
            let rep = words.cyclic_reduce_and_support(e.word())?.representative;
            let len = words.word_length_s(&rep)?;
            Ok((rep, len))
        })
        .collect::<Result<_>>()?;
    let classes: BTreeMap<&Word, u64> = keys.iter().map(|(w, l)| (w, *l)).collect();
    let mut reps = vec![Vec::new(); n + 1];
    let mut shortest: HashMap<&Word, usize> = HashMap::new();
    for (x, (w, l)) in keys.iter().enumerate() {
        if ball.dist[x] as u64 == *l {
            shortest.entry(w).or_insert(x);
        }
    }
    for (w, l) in classes {
        if l as usize <= n {
            let x = shortest[w];
            reps[l as usize].push(words.format_word(ball.elements[x].word()));
        }
    }
    Ok((GrowthSeries::new(reps.iter().map(|r| r.len() as u64).collect()), reps))
}

/// Conjugacy growth `c(0..=n)` in the S metric.
pub fn conjugacy_growth(p: &PeriagroupPresentation, n: usize, method: ConjugacyMethod) -> Result<ConjugacyGrowth> {
    let (series, representatives, stable, cross_checked) = match method {
        ConjugacyMethod::Saturation { slack } => {
            let (s, reps) = saturation(p, n, slack, DEFAULT_MAX_VERTICES)?;
            let (again, _) = saturation(p, n, slack + 1, DEFAULT_MAX_VERTICES)?;
            let stable = again == s;
            (s, reps, Some(stable), None)
        }
        ConjugacyMethod::ExactGp => {
            let (s, reps) = exact_gp(p, n)?;
            let check = match saturation(p, n, 2, CROSS_CHECK_MAX_VERTICES) {
                Ok((sat, _)) => Some(sat == s),
                Err(Error::Resource { .. }) => None,
                Err(e) => return Err(e),
            };
            (s, reps, None, check)
        }
    };
    Ok(ConjugacyGrowth { series, table: ConjugacyClassTable { method: method.tag(), representatives }, stable, cross_checked })
}
