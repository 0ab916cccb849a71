use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{explore_ball, BallOptions, ExploredBall, GenMode};
use crate::error::{Error, Result};
use crate::graphcore::{well_separated_check, HyperplaneStructure};
use crate::presentation::PeriagroupPresentation;
use crate::words::{CanonicalForm, Word, Words};

/// Default number of sampled centres per sphere in [`contraction_profile`].
pub const DEFAULT_SAMPLE_CAP: usize = 64;

const MAX_POWER: i64 = 10_000;

fn length(words: &Words, mode: GenMode, w: &Word) -> Result<u64> {
    match mode {
        GenMode::Full => Ok(words.graphically_reduce(w)?.len() as u64),
        GenMode::S => words.word_length_s(w),
    }
}

/// The powers `gᵏ`, `k ≠ 0`, of length at most `limit`; fails on finite order.
fn orbit(words: &Words, g: &Word, limit: u64, mode: GenMode) -> Result<Vec<(i64, CanonicalForm)>> {
    let mut out = Vec::new();
    for (sign, step) in [(1i64, g.clone()), (-1, words.inverse_word(g))] {
        let mut x = CanonicalForm::identity();
        let mut misses = 0;
        for k in 1..=MAX_POWER {
            x = words.multiply(x.word(), &step)?;
            if x.is_identity() {
                return Err(Error::BoundedOrbit);
            }
            if length(words, mode, x.word())? <= limit {
                out.push((sign * k, x.clone()));
                misses = 0;
            } else {
                misses += 1;
                if misses >= 3 {
                    break;
                }
            }
            if k == MAX_POWER {
                return Err(Error::Resource { what: "powers of the element".into(), bound: MAX_POWER as usize });
            }
        }
    }
    out.sort_by_key(|&(k, _)| k);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionRow {
    pub center: String,
    pub center_length: u64,
    /// Radius of the ball around the centre that misses the orbit.
    pub ball_radius: u64,
    pub projection_diameter: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionProfile {
    pub radius: usize,
    pub orbit_points: usize,
    pub rows: Vec<ContractionRow>,
    /// `(r, largest diameter over centres of length ≤ r)`.
    pub per_radius: Vec<(usize, u64)>,
    pub max_diameter: u64,
}

/// Nearest-point projections onto the orbit `⟨g⟩·1` of balls that miss it, in the S metric.
pub fn contraction_profile(
    p: &PeriagroupPresentation,
    g: &Word,
    radius: usize,
    sample_cap: usize,
    seed: u64,
) -> Result<ContractionProfile> {
    let words = Words::new(p);
    words.check(g)?;
    if words.canonical_form(g)?.is_identity() {
        return Err(Error::BoundedOrbit);
    }
    let mut points: Vec<Word> = vec![Word::empty()];
    points.extend(orbit(&words, g, 4 * radius as u64, GenMode::S)?.into_iter().map(|(_, x)| x.into_word()));
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(radius, GenMode::S))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers = Vec::new();
    for r in 1..=radius as u32 {
        let sphere: Vec<usize> = (0..ball.len()).filter(|&i| ball.dist[i] == r).collect();
        if sphere.len() <= sample_cap {
            centers.extend(sphere);
        } else {
            let mut pick: Vec<usize> = sphere.choose_multiple(&mut rng, sample_cap).copied().collect();
            pick.sort_unstable();
            centers.extend(pick);
        }
    }
    let rows: Vec<Option<ContractionRow>> =
        centers.par_iter().map(|&c| profile_row(&words, &ball, &points, c)).collect::<Result<_>>()?;
    let rows: Vec<ContractionRow> = rows.into_iter().flatten().collect();
    let per_radius = (1..=radius)
        .map(|r| (r, rows.iter().filter(|row| row.center_length <= r as u64).map(|row| row.projection_diameter).max().unwrap_or(0)))
        .collect();
    let max_diameter = rows.iter().map(|r| r.projection_diameter).max().unwrap_or(0);
    Ok(ContractionProfile { radius, orbit_points: points.len(), rows, per_radius, max_diameter })
}

fn profile_row(words: &Words, ball: &ExploredBall, points: &[Word], c: usize) -> Result<Option<ContractionRow>> {
    let cw = ball.elements[c].word();
    let to_orbit = |y: &Word| -> Result<Vec<u64>> { points.iter().map(|o| words.distance_s(y, o)).collect() };
    let dc = to_orbit(cw)?;
    let d = *dc.iter().min().unwrap();
    if d == 0 {
        return Ok(None);
    }
    let mut projection = vec![false; points.len()];
    for (i, w) in ball.elements.iter().enumerate() {
        if u64::from(ball.dist[i]) + 1 > d {
            continue;
        }
        let y = words.multiply(cw, w.word())?.into_word();
        let dy = if i == 0 { dc.clone() } else { to_orbit(&y)? };
        let m = *dy.iter().min().unwrap();
        for (k, &v) in dy.iter().enumerate() {
            projection[k] |= v == m;
        }
    }
    let proj: Vec<usize> = (0..points.len()).filter(|&k| projection[k]).collect();
    let mut diameter = 0;
    for (a, &i) in proj.iter().enumerate() {
        for &j in &proj[a + 1..] {
            diameter = diameter.max(words.distance_s(&points[i], &points[j])?);
        }
    }
    Ok(Some(ContractionRow {
        center: words.format_word(cw),
        center_length: u64::from(ball.dist[c]),
        ball_radius: d - 1,
        projection_diameter: diameter,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewerWitness {
    pub radius: usize,
    pub mode: GenMode,
    pub n: i64,
    /// An edge of `J`, as two words.
    pub edge: (String, String),
    pub hyperplane: usize,
    pub image: usize,
    /// Ball sizes of the sector `S` of `J` and of `gⁿS ⊊ S`.
    pub sector_sizes: (usize, usize),
    /// Well-separation of `J` and `gⁿJ` in the ball.
    pub l: u64,
    /// The same quantity in the ball of radius one more.
    pub l_next: Option<u64>,
    /// `l` did not change at radius one more.
    pub well_separated: bool,
    /// Nested pairs found in the ball.
    pub nested_pairs: usize,
}

struct Nested {
    n: i64,
    j: usize,
    image: usize,
    edge: (usize, usize),
    sizes: (usize, usize),
}

/// Searches for `J` and `n ≤ radius` with `gⁿ` mapping a sector of `J` strictly inside itself.
///
/// Full-mode balls are used when every vertex group is finite, S-mode balls otherwise.
pub fn skewer_witness(p: &PeriagroupPresentation, g: &Word, radius: usize) -> Result<Option<SkewerWitness>> {
    let words = Words::new(p);
    words.check(g)?;
    let mode = if (0..p.len()).all(|v| p.group(v).is_finite()) { GenMode::Full } else { GenMode::S };
    if words.canonical_form(g)?.is_identity() {
        return Ok(None);
    }
    match orbit(&words, g, 2 * radius as u64 + 2, mode) {
        Err(Error::BoundedOrbit) => return Ok(None),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(radius, mode))?;
    let hs = ball.hyperplanes()?;
    let mut found = Vec::new();
    for n in 1..=radius as i64 {
        let gn = words.canonical_form(&Word(std::iter::repeat_n(g.0.iter().copied(), n as usize).flatten().collect()))?;
        for (j, hyp) in hs.hyperplanes.iter().enumerate() {
            if let Some(w) = nested_for(&words, &ball, &hs, gn.word(), j, &hyp.edges)? {
                found.push(Nested { n, ..w });
            }
        }
    }
    let nested_pairs = found.len();
    if found.is_empty() {
        return Ok(None);
    }
    let next = explore_ball(p, &Word::empty(), BallOptions::new(radius + 1, mode))?;
    let hs_next = next.hyperplanes()?;
    let unit = vec![1u64; hs.len()];
    let unit_next = vec![1u64; hs_next.len()];
    let mut best: Option<SkewerWitness> = None;
    for w in found {
        let Some(l) = well_separated_check(&hs, w.j, w.image, &unit)?.l else { continue };
        let lift = |h: usize| -> usize {
            let (a, b) = hs.hyperplanes[h].edges[0];
            hs_next.hyperplane_of_edge(next.id_of(&ball.elements[a]).unwrap(), next.id_of(&ball.elements[b]).unwrap())
        };
        let l_next = well_separated_check(&hs_next, lift(w.j), lift(w.image), &unit_next)?.l;
        let cand = SkewerWitness {
            radius,
            mode,
            n: w.n,
            edge: (words.format_word(ball.elements[w.edge.0].word()), words.format_word(ball.elements[w.edge.1].word())),
            hyperplane: w.j,
            image: w.image,
            sector_sizes: w.sizes,
            l,
            l_next,
            well_separated: l_next == Some(l),
            nested_pairs,
        };
        let key = |s: &SkewerWitness| (!s.well_separated, s.l, s.n, s.hyperplane);
        if best.as_ref().is_none_or(|b| key(&cand) < key(b)) {
            best = Some(cand);
        }
    }
    Ok(best)
}

fn nested_for(
    words: &Words,
    ball: &ExploredBall,
    hs: &HyperplaneStructure,
    gn: &Word,
    j: usize,
    edges: &[(usize, usize)],
) -> Result<Option<Nested>> {
    for &(x, y) in edges {
        let tx = ball.find(words, &gn.concat(ball.elements[x].word()))?;
        let ty = ball.find(words, &gn.concat(ball.elements[y].word()))?;
        let (Some(tx), Some(ty)) = (tx, ty) else { continue };
        let image = hs.hyperplane_of_edge(tx, ty);
        if image == j {
            return Ok(None);
        }
        for (s, t) in [(x, tx), (y, ty)] {
            let outer = hs.sector_bits(j, hs.sector_of(j, s));
            let inner = hs.sector_bits(image, hs.sector_of(image, t));
            if inner.subset_of(outer) && inner.count() < outer.count() {
                return Ok(Some(Nested { n: 0, j, image, edge: (x, y), sizes: (outer.count(), inner.count()) }));
            }
        }
        return Ok(None);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn corpus(name: &str) -> PeriagroupPresentation {
        let text = std::fs::read_to_string(format!("{}/corpus/{name}.peria", env!("CARGO_MANIFEST_DIR"))).unwrap();
        parse_presentation(&text).unwrap()
    }

    #[test]
    fn identity_has_a_bounded_orbit() {
        let p = corpus("free2");
        assert!(matches!(contraction_profile(&p, &Word::empty(), 3, 8, 1), Err(Error::BoundedOrbit)));
        let q = corpus("i2-5");
        let w = Words::new(&q);
        let g = w.parse_word("s t").unwrap();
        assert!(matches!(contraction_profile(&q, &g, 3, 8, 1), Err(Error::BoundedOrbit)));
    }

    #[test]
    fn free_group_projections_are_small() {
        let p = corpus("free2");
        let w = Words::new(&p);
        let prof = contraction_profile(&p, &w.parse_word("a b").unwrap(), 4, 32, 7).unwrap();
        assert!(prof.max_diameter <= 2);
        assert!(!prof.rows.is_empty());
    }

    #[test]
    fn abelian_projections_grow() {
        let p = crate::presentation::PresentationBuilder::new()
            .vertex("a", crate::presentation::VertexGroupSpec::CyclicInfinite)
            .vertex("b", crate::presentation::VertexGroupSpec::CyclicInfinite)
            .edge("a", "b", 2)
            .build()
            .unwrap();
        let w = Words::new(&p);
        let prof = contraction_profile(&p, &w.parse_word("a b").unwrap(), 4, 64, 7).unwrap();
        for &(r, d) in &prof.per_radius {
            assert!(d + 1 >= r as u64, "radius {r}: {d}");
        }
    }

    #[test]
    fn dinf_is_skewered_by_a_translation() {
        let p = corpus("dinf");
        let w = Words::new(&p);
        let s = skewer_witness(&p, &w.parse_word("x1 x2").unwrap(), 4).unwrap().unwrap();
        assert_eq!(s.n, 1);
        assert_eq!(s.l, 0);
        assert!(s.well_separated);
    }

    #[test]
    fn finite_order_has_no_witness() {
        let p = corpus("dinf");
        let w = Words::new(&p);
        assert!(skewer_witness(&p, &w.parse_word("x1").unwrap(), 4).unwrap().is_none());
    }
}
