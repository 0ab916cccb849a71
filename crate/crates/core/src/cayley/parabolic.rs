use serde::Serialize;

use super::ExploredBall;
use crate::error::{Error, Result};
use crate::graphcore::HyperplaneStructure;
use crate::presentation::VertexSet;
use crate::words::{CanonicalForm, Word, Words};

/// A coset `g⟨Λ⟩` of a standard parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParabolicCoset {
    pub representative: CanonicalForm,
    pub subgraph: VertexSet,
}

impl ParabolicCoset {
    pub fn new(words: &Words, g: &Word, subgraph: VertexSet) -> Result<Self> {
        Ok(ParabolicCoset { representative: words.canonical_form(g)?, subgraph })
    }

    pub fn height(&self) -> usize {
        self.subgraph.len()
    }

    /// `x ∈ g⟨Λ⟩` iff every reduced word of `g⁻¹x` is supported in `Λ`.
    pub fn contains(&self, words: &Words, x: &Word) -> Result<bool> {
        let h = words.canonical_form(&words.inverse_word(self.representative.word()).concat(x))?;
        Ok(h.word().support().is_subset(&self.subgraph))
    }
}

/// A certified gate: no coset element outside the ball can be as close to `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub vertex: usize,
    pub distance: u64,
    pub radius: usize,
}

fn members(words: &Words, ball: &ExploredBall, coset: &ParabolicCoset) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, e) in ball.elements.iter().enumerate() {
        if coset.contains(words, e.word())? {
            out.push(i);
        }
    }
    if out.is_empty() {
        return Err(Error::Precondition("the coset does not meet the ball".into()));
    }
    Ok(out)
}

fn gate_among(words: &Words, ball: &ExploredBall, x: usize, cands: &[usize]) -> Result<Gate> {
    let d: Vec<u64> = cands.iter().map(|&y| ball.distance(words, x, y)).collect::<Result<_>>()?;
    let m = *d.iter().min().expect("non-empty candidate list");
    let best: Vec<usize> = cands.iter().zip(&d).filter(|&(_, &dy)| dy == m).map(|(&y, _)| y).collect();
    if m + u64::from(ball.dist[x]) > ball.radius as u64 {
        return Err(Error::GateUncertified);
    }
    if best.len() != 1 {
        return Err(Error::Verification(format!("{} nearest points of the coset, expected a gate", best.len())));
    }
    let g = best[0];
    for (&y, &dy) in cands.iter().zip(&d) {
        if dy != m + ball.distance(words, g, y)? {
            return Err(Error::Verification(format!("vertex {y} is not reached through the gate {g}")));
        }
    }
    Ok(Gate { vertex: g, distance: m, radius: ball.radius })
}

/// The gate of the ball vertex `x` on a parabolic coset.
pub fn parabolic_gate(words: &Words, ball: &ExploredBall, x: usize, coset: &ParabolicCoset) -> Result<Gate> {
    let cands = members(words, ball, coset)?;
    gate_among(words, ball, x, &cands)
}

/// Projection of one coset onto another inside a ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetProjection {
    pub vertices: Vec<usize>,
    /// Γ-vertices labelling the ball edges inside the projection.
    pub labels: VertexSet,
    /// Source vertices whose gate could not be certified at this radius.
    pub uncertified: usize,
}

pub fn coset_projection(
    words: &Words,
    ball: &ExploredBall,
    source: &ParabolicCoset,
    target: &ParabolicCoset,
) -> Result<CosetProjection> {
    let src = members(words, ball, source)?;
    let dst = members(words, ball, target)?;
    let mut vertices = Vec::new();
    let mut uncertified = 0;
    for &x in &src {
        match gate_among(words, ball, x, &dst) {
            Ok(g) => vertices.push(g.vertex),
            Err(Error::GateUncertified) => uncertified += 1,
            Err(e) => return Err(e),
        }
    }
    vertices.sort_unstable();
    vertices.dedup();
    let mut labels = VertexSet::new();
    for &x in &vertices {
        for &(y, s) in &ball.adjacency[x] {
            if vertices.binary_search(&y).is_ok() {
                labels.insert(s.vertex);
            }
        }
    }
    Ok(CosetProjection { vertices, labels, uncertified })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneType {
    pub labels: VertexSet,
    /// A single label whose incident Γ-edges are all labelled 2.
    pub right: bool,
    /// For a right hyperplane labelled `u`: whether the carrier lies in one coset of `⟨star(u)⟩`.
    pub carrier_in_star_coset: Option<bool>,
}

pub fn hyperplane_type_and_label(
    words: &Words,
    ball: &ExploredBall,
    hs: &HyperplaneStructure,
    j: usize,
) -> Result<HyperplaneType> {
    if j >= hs.len() {
        return Err(Error::Precondition(format!("hyperplane {j} is not in the ball ({} hyperplanes)", hs.len())));
    }
    let p = words.presentation();
    let labels: VertexSet = hs.hyperplanes[j]
        .edges
        .iter()
        .filter_map(|&(u, v)| ball.edge_label(u, v).map(|s| s.vertex))
        .collect();
    let right = labels.len() == 1 && {
        let u = *labels.first().unwrap();
        p.graph().link(u).iter().all(|&v| p.graph().commute(u, v))
    };
    let carrier_in_star_coset = if right {
        let star = p.graph().star(*labels.first().unwrap());
        let carrier = hs.carrier(j);
        let base = words.inverse_word(ball.elements[carrier[0]].word());
        let mut ok = true;
        for &z in &carrier {
            let h = words.canonical_form(&base.concat(ball.elements[z].word()))?;
            ok &= h.word().support().is_subset(&star);
        }
        Some(ok)
    } else {
        None
    };
    Ok(HyperplaneType { labels, right, carrier_in_star_coset })
}

#[cfg(test)]
mod tests {
    use super::super::{explore_ball, BallOptions, GenMode};
    use super::*;
    use crate::presentation::{parse_presentation, PeriagroupPresentation};

    fn corpus(name: &str) -> PeriagroupPresentation {
        let text = std::fs::read_to_string(format!("{}/corpus/{name}.peria", env!("CARGO_MANIFEST_DIR"))).unwrap();
        parse_presentation(&text).unwrap()
    }

    fn ball(p: &PeriagroupPresentation, r: usize) -> ExploredBall {
        explore_ball(p, &Word::empty(), BallOptions::new(r, GenMode::Full)).unwrap()
    }

    #[test]
    fn dinf_gate_is_the_nearer_endpoint() {
        let p = corpus("dinf");
        let w = Words::new(&p);
        let b = ball(&p, 6);
        let x = b.find(&w, &w.parse_word("x1 x2 x1").unwrap()).unwrap().unwrap();
        let coset = ParabolicCoset::new(&w, &Word::empty(), VertexSet::from([1])).unwrap();
        let g = parabolic_gate(&w, &b, x, &coset).unwrap();
        assert_eq!(g.vertex, 0);
        assert_eq!(g.distance, 3);
        let inside = b.find(&w, &w.parse_word("x2").unwrap()).unwrap().unwrap();
        assert_eq!(parabolic_gate(&w, &b, inside, &coset).unwrap().vertex, inside);
    }

    #[test]
    fn c4_gate_onto_c_at_identity() {
        let p = corpus("c4-racg");
        let w = Words::new(&p);
        let b = ball(&p, 4);
        let x = b.find(&w, &w.parse_word("a b").unwrap()).unwrap().unwrap();
        let c = p.index_of("c").unwrap();
        let coset = ParabolicCoset::new(&w, &Word::empty(), VertexSet::from([c])).unwrap();
        assert_eq!(parabolic_gate(&w, &b, x, &coset).unwrap().vertex, 0);
    }

    #[test]
    fn gates_near_the_boundary_are_not_certified() {
        let p = corpus("dinf");
        let w = Words::new(&p);
        let b = ball(&p, 3);
        let x = b.find(&w, &w.parse_word("x1 x2 x1").unwrap()).unwrap().unwrap();
        let far = ParabolicCoset::new(&w, &w.parse_word("x2 x1 x2").unwrap(), VertexSet::from([0])).unwrap();
        assert!(matches!(parabolic_gate(&w, &b, x, &far), Err(Error::GateUncertified)));
    }

    #[test]
    fn projection_of_parabolics_is_their_intersection() {
        let p = corpus("c4-racg");
        let w = Words::new(&p);
        let b = ball(&p, 4);
        let ix = |n: &str| p.index_of(n).unwrap();
        let (a, bb, c) = (ix("a"), ix("b"), ix("c"));
        let src = ParabolicCoset::new(&w, &Word::empty(), VertexSet::from([a, bb])).unwrap();
        let dst = ParabolicCoset::new(&w, &Word::empty(), VertexSet::from([bb, c])).unwrap();
        let proj = coset_projection(&w, &b, &src, &dst).unwrap();
        assert_eq!(proj.uncertified, 0);
        assert_eq!(proj.labels, VertexSet::from([bb]));
        assert_eq!(proj.vertices.len(), 2);
    }

    #[test]
    fn graph_product_hyperplanes_are_right() {
        let p = corpus("c4-racg");
        let w = Words::new(&p);
        let b = ball(&p, 3);
        let hs = b.hyperplanes().unwrap();
        for j in 0..hs.len() {
            let t = hyperplane_type_and_label(&w, &b, &hs, j).unwrap();
            assert!(t.right);
            assert_eq!(t.labels.len(), 1);
            assert_eq!(t.carrier_in_star_coset, Some(true));
        }
    }

    #[test]
    fn dihedral_hyperplanes_are_not_right() {
        let p = corpus("i2-5");
        let w = Words::new(&p);
        let b = ball(&p, 5);
        let hs = b.hyperplanes().unwrap();
        assert!(!hs.is_empty());
        for j in 0..hs.len() {
            assert!(!hyperplane_type_and_label(&w, &b, &hs, j).unwrap().right);
        }
    }

    #[test]
    fn v3_hyperplanes_of_the_example_are_right() {
        let p = corpus("ex-periagroup-z6");
        let w = Words::new(&p);
        let b = ball(&p, 2);
        let hs = b.hyperplanes().unwrap();
        let v3 = p.index_of("v3").unwrap();
        let x = b.find(&w, &w.parse_word("v3").unwrap()).unwrap().unwrap();
        let j = hs.hyperplane_of_edge(0, x);
        let t = hyperplane_type_and_label(&w, &b, &hs, j).unwrap();
        assert_eq!(t.labels, VertexSet::from([v3]));
        assert!(t.right);
        assert_eq!(t.carrier_in_star_coset, Some(true));
    }
}
