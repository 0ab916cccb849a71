//! Vertex groups: finite cyclic, infinite cyclic, finite multiplication tables and opaque groups.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Acylhyp {
    Yes,
    No,
    Unknown,
}

/// Declared shape of a vertex group. Elements are encoded as `i64` with 0 the identity:
/// exponents mod `m` for `Cyclic`, integer exponents for `CyclicInfinite`, row indices for `Table`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroupSpec {
    Cyclic(u32),
    CyclicInfinite,
    Table(Vec<Vec<usize>>),
    Opaque(Acylhyp),
}

impl VertexGroupSpec {
    pub fn order(&self) -> Option<usize> {
        match self {
            VertexGroupSpec::Cyclic(m) => Some(*m as usize),
            VertexGroupSpec::Table(t) => Some(t.len()),
            _ => None,
        }
    }

    /// Order with infinite groups reported as `usize::MAX`.
    pub fn order_or_max(&self) -> usize {
        self.order().unwrap_or(usize::MAX)
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_z2(&self) -> bool {
        self.order() == Some(2)
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, VertexGroupSpec::Opaque(_))
    }

    pub fn describe(&self) -> String {
        match self {
            VertexGroupSpec::Cyclic(m) => format!("cyclic {m}"),
            VertexGroupSpec::CyclicInfinite => "cyclic inf".into(),
            VertexGroupSpec::Table(t) => format!("table {}", t.len()),
            VertexGroupSpec::Opaque(a) => format!("opaque acylhyp={}", acyl_str(*a)),
        }
    }
}

pub(crate) fn acyl_str(a: Acylhyp) -> &'static str {
    match a {
        Acylhyp::Yes => "yes",
        Acylhyp::No => "no",
        Acylhyp::Unknown => "unknown",
    }
}

/// A validated vertex group together with its generating set `S_G`.
#[derive(Debug, Clone)]
pub struct VertexGroup {
    pub spec: VertexGroupSpec,
    /// Declared generators (without inverses).
    pub gens: Vec<i64>,
    inverse: Vec<usize>,
    /// Word length over `S ∪ S⁻¹` of every element (finite groups only).
    slen: Vec<u32>,
}

impl VertexGroup {
    /// Builds a vertex group; `gens = None` selects the default generating set.
    pub(crate) fn new(name: &str, spec: VertexGroupSpec, gens: Option<Vec<i64>>) -> Result<Self> {
        let invalid = |msg: String| Error::InvalidGroup { vertex: name.to_string(), msg };
        match &spec {
            VertexGroupSpec::Cyclic(m) if *m < 2 => {
                return Err(invalid(format!("cyclic order {m} is below 2")))
            }
            VertexGroupSpec::Table(t) => check_table(t, gens.as_deref()).map_err(invalid)?,
            VertexGroupSpec::Opaque(_) if gens.is_some() => {
                return Err(invalid("opaque groups take no generators".into()))
            }
            _ => {}
        }
        let mut g = VertexGroup { spec, gens: Vec::new(), inverse: Vec::new(), slen: Vec::new() };
        if let VertexGroupSpec::Table(t) = &g.spec {
            g.inverse = (0..t.len()).map(|a| (0..t.len()).find(|&b| t[a][b] == 0).unwrap()).collect();
        }
        let gens = match gens {
            Some(gs) => {
                let mut out = Vec::new();
                for e in gs {
                    let e = g.normalize(e).ok_or(Error::InvalidElement { vertex: name.into(), elem: e })?;
                    if e == 0 {
                        return Err(Error::InvalidElement { vertex: name.into(), elem: 0 });
                    }
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
                out
            }
            None => match &g.spec {
                VertexGroupSpec::Cyclic(_) | VertexGroupSpec::CyclicInfinite => vec![1],
                VertexGroupSpec::Table(t) => (1..t.len() as i64).collect(),
                VertexGroupSpec::Opaque(_) => Vec::new(),
            },
        };
        g.gens = gens;
        match &g.spec {
            VertexGroupSpec::CyclicInfinite => {
                if g.gens.iter().fold(0i64, |a, &b| gcd(a, b.abs())) != 1 {
                    return Err(Error::NotGenerating(name.into()));
                }
            }
            VertexGroupSpec::Cyclic(_) | VertexGroupSpec::Table(_) => {
                let n = g.spec.order().unwrap();
                let mut dist = vec![u32::MAX; n];
                dist[0] = 0;
                let mut queue = VecDeque::from([0i64]);
                let steps = g.symmetric_gens();
                while let Some(x) = queue.pop_front() {
                    for &s in &steps {
                        let y = g.mul(x, s);
                        if dist[y as usize] == u32::MAX {
                            dist[y as usize] = dist[x as usize] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                if dist.contains(&u32::MAX) {
                    return Err(Error::NotGenerating(name.into()));
                }
                g.slen = dist;
            }
            VertexGroupSpec::Opaque(_) => {}
        }
        Ok(g)
    }

    pub fn order(&self) -> Option<usize> {
        self.spec.order()
    }

    pub fn is_finite(&self) -> bool {
        self.spec.is_finite()
    }

    /// Canonical encoding of an element, or `None` if it is out of range.
    pub fn normalize(&self, e: i64) -> Option<i64> {
        match &self.spec {
            VertexGroupSpec::Cyclic(m) => Some(e.rem_euclid(*m as i64)),
            VertexGroupSpec::CyclicInfinite => Some(e),
            VertexGroupSpec::Table(t) => (e >= 0 && (e as usize) < t.len()).then_some(e),
            VertexGroupSpec::Opaque(_) => None,
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match &self.spec {
            VertexGroupSpec::Cyclic(m) => (a + b).rem_euclid(*m as i64),
            VertexGroupSpec::CyclicInfinite => a + b,
            VertexGroupSpec::Table(t) => t[a as usize][b as usize] as i64,
            VertexGroupSpec::Opaque(_) => unreachable!("opaque groups have no elements"),
        }
    }

    pub fn inv(&self, a: i64) -> i64 {
        match &self.spec {
            VertexGroupSpec::Cyclic(m) => (-a).rem_euclid(*m as i64),
            VertexGroupSpec::CyclicInfinite => -a,
            VertexGroupSpec::Table(_) => self.inverse[a as usize] as i64,
            VertexGroupSpec::Opaque(_) => unreachable!("opaque groups have no elements"),
        }
    }

    /// All non-identity elements of a finite group.
    pub fn nontrivial_elements(&self) -> Vec<i64> {
        match self.order() {
            Some(n) => (1..n as i64).collect(),
            None => Vec::new(),
        }
    }

    /// `S ∪ S⁻¹`, deduplicated, in a fixed order.
    pub fn symmetric_gens(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for &s in &self.gens {
            for t in [s, self.inv(s)] {
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Word length of `e` over `S ∪ S⁻¹`.
    pub fn s_length(&self, e: i64) -> u64 {
        match &self.spec {
            VertexGroupSpec::Cyclic(_) | VertexGroupSpec::Table(_) => self.slen[e as usize] as u64,
            VertexGroupSpec::CyclicInfinite => integer_length(e, &self.gens),
            VertexGroupSpec::Opaque(_) => unreachable!("opaque groups have no elements"),
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Fewest summands `±s` (s in `gens`) adding up to `e`.
fn integer_length(e: i64, gens: &[i64]) -> u64 {
    if gens == [1] {
        return e.unsigned_abs();
    }
    let m = gens.iter().map(|g| g.abs()).max().unwrap();
    let lo = e.min(0) - m;
    let hi = e.max(0) + m;
    let mut dist: HashMap<i64, u64> = HashMap::from([(0, 0)]);
    let mut queue = VecDeque::from([0i64]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if x == e {
            return d;
        }
        for &g in gens {
            for y in [x + g, x - g] {
                if (lo..=hi).contains(&y) && !dist.contains_key(&y) {
                    dist.insert(y, d + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    unreachable!("generators with gcd 1 reach every integer")
}

/// Checks that a table is a group table with identity 0; returns a description of the first defect.
pub(crate) fn check_table(t: &[Vec<usize>], gens: Option<&[i64]>) -> std::result::Result<(), String> {
    for_each_table_check(t, gens, |res| res)
}

/// Runs the table checks in order, handing each result to `sink`; stops at the first `Err` the sink returns.
pub(crate) fn for_each_table_check(
    t: &[Vec<usize>],
    gens: Option<&[i64]>,
    mut sink: impl FnMut(std::result::Result<(), String>) -> std::result::Result<(), String>,
) -> std::result::Result<(), String> {
    let k = t.len();
    let shape = if k == 0 {
        Err("empty table".to_string())
    } else if let Some((i, row)) = t.iter().enumerate().find(|(_, r)| r.len() != k) {
        Err(format!("row {i} has {} entries, expected {k}", row.len()))
    } else if let Some((i, j)) = cells(k).find(|&(i, j)| t[i][j] >= k) {
        Err(format!("entry ({i},{j}) = {} is out of range", t[i][j]))
    } else {
        Ok(())
    };
    let bad_shape = shape.is_err();
    sink(shape)?;
    if bad_shape {
        return Ok(());
    }
    let identity = match (0..k).find(|&a| t[0][a] != a || t[a][0] != a) {
        Some(a) => Err(format!("0 is not an identity: 0·{a} = {}, {a}·0 = {}", t[0][a], t[a][0])),
        None => Ok(()),
    };
    sink(identity)?;
    let inverses = match (0..k).find(|&a| !(0..k).any(|b| t[a][b] == 0 && t[b][a] == 0)) {
        Some(a) => Err(format!("element {a} has no inverse")),
        None => Ok(()),
    };
    sink(inverses)?;
    sink(check_associativity(t, gens))
}

fn cells(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (0..k).map(move |j| (i, j)))
}

/// Full triple check up to 64 elements. Larger tables use Light's test: `(ag)c = a(gc)` for every
/// generator `g` suffices once the generators are known to generate.
fn check_associativity(t: &[Vec<usize>], gens: Option<&[i64]>) -> std::result::Result<(), String> {
    let k = t.len();
    let middles: Vec<usize> = match gens {
        Some(gs) if k > 64 => gs.iter().filter(|&&g| g >= 0 && (g as usize) < k).map(|&g| g as usize).collect(),
        _ => (0..k).collect(),
    };
    for a in 0..k {
        for &b in &middles {
            let ab = t[a][b];
            for c in 0..k {
                if t[ab][c] != t[a][t[b][c]] {
                    return Err(format!("not associative at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<usize>> {
        (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect()
    }

    #[test]
    fn cyclic_lengths_are_symmetric() {
        let g = VertexGroup::new("x", VertexGroupSpec::Cyclic(3), None).unwrap();
        assert_eq!(g.s_length(1), 1);
        assert_eq!(g.s_length(2), 1);
        let g6 = VertexGroup::new("t", VertexGroupSpec::Cyclic(6), None).unwrap();
        assert_eq!((0..6).map(|e| g6.s_length(e)).collect::<Vec<_>>(), vec![0, 1, 2, 3, 2, 1]);
    }

    #[test]
    fn integer_lengths_with_custom_generators() {
        assert_eq!(integer_length(7, &[2, 3]), 3);
        assert_eq!(integer_length(-1, &[2, 3]), 2);
        assert_eq!(integer_length(-5, &[1]), 5);
    }

    #[test]
    fn table_defects_are_named() {
        assert!(check_table(&z3_table(), None).is_ok());
        let mut t = z3_table();
        t[1][1] = 1;
        assert!(check_table(&t, None).is_err());
        let no_inverse = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(check_table(&no_inverse, None), Err("element 1 has no inverse".into()));
    }

    #[test]
    fn non_generating_sets_are_rejected() {
        let err = VertexGroup::new("x", VertexGroupSpec::Cyclic(6), Some(vec![2])).unwrap_err();
        assert_eq!(err, Error::NotGenerating("x".into()));
        let err = VertexGroup::new("z", VertexGroupSpec::CyclicInfinite, Some(vec![2, 4])).unwrap_err();
        assert_eq!(err, Error::NotGenerating("z".into()));
    }

    #[test]
    fn table_inverses() {
        let g = VertexGroup::new("x", VertexGroupSpec::Table(z3_table()), None).unwrap();
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.mul(2, 2), 1);
    }
}
