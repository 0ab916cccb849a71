//! Finite-radius exploration of the Cayley graphs of a periagroup.
//!
//! In full mode every non-trivial element of every vertex group is a generator, so cliques are
//! cosets of vertex groups and ball distances are syllable lengths. In S mode only the declared
//! generators and their inverses are used.

mod diagnostics;
mod parabolic;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

pub use diagnostics::{contraction_profile, skewer_witness, ContractionProfile, ContractionRow, SkewerWitness, DEFAULT_SAMPLE_CAP};
pub use parabolic::{coset_projection, hyperplane_type_and_label, parabolic_gate, CosetProjection, Gate, HyperplaneType, ParabolicCoset};

use crate::error::{Error, Result};
use crate::graphcore::{compute_hyperplanes, FiniteGraph, HyperplaneStructure};
use crate::presentation::{PeriagroupPresentation, VertexGroupSpec};
use crate::words::{CanonicalForm, Syllable, Word, Words};

/// Default cap on the number of ball vertices.
pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GenMode {
    /// All non-trivial vertex-group elements.
    Full,
    /// The declared generators of each vertex group and their inverses.
    S,
}

impl std::str::FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(GenMode::Full),
            "S" | "s" => Ok(GenMode::S),
            _ => Err(Error::Precondition(format!("unknown generator mode `{s}` (expected full or S)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallOptions {
    pub radius: usize,
    pub mode: GenMode,
    /// In full mode, replaces an infinite cyclic vertex group by the exponents `±1..=cap`.
    pub exponent_cap: Option<i64>,
    pub max_vertices: usize,
}

impl BallOptions {
    pub fn new(radius: usize, mode: GenMode) -> Self {
        BallOptions { radius, mode, exponent_cap: None, max_vertices: DEFAULT_MAX_VERTICES }
    }
}

/// A ball of the Cayley graph, with vertices interned by canonical form.
#[derive(Debug, Clone)]
pub struct ExploredBall {
    pub center: CanonicalForm,
    pub radius: usize,
    pub mode: GenMode,
    /// Set when an infinite vertex group was truncated to a segment of exponents.
    pub capped: bool,
    pub elements: Vec<CanonicalForm>,
    pub dist: Vec<u32>,
    /// `(y, s)` with `x·s = y` for every neighbour `y` of `x` inside the ball.
    pub adjacency: Vec<Vec<(usize, Syllable)>>,
    index: HashMap<CanonicalForm, usize>,
}

/// The generating set of a Cayley graph, sorted.
pub fn generators(p: &PeriagroupPresentation, mode: GenMode, exponent_cap: Option<i64>) -> Result<(Vec<Syllable>, bool)> {
    let mut gens = Vec::new();
    let mut capped = false;
    for v in 0..p.len() {
        let g = p.group(v);
        let elems = match (&g.spec, mode) {
            (VertexGroupSpec::Opaque(_), _) => return Err(Error::OpaqueVertex(p.name(v).into())),
            (_, GenMode::S) => g.symmetric_gens(),
            (VertexGroupSpec::CyclicInfinite, GenMode::Full) => {
                let cap = exponent_cap.ok_or_else(|| Error::InfiniteClique(p.name(v).into()))?;
                capped = true;
                (1..=cap).flat_map(|k| [k, -k]).collect()
            }
            (_, GenMode::Full) => g.nontrivial_elements(),
        };
        gens.extend(elems.into_iter().map(|e| Syllable::new(v, e)));
    }
    gens.sort_unstable();
    gens.dedup();
    Ok((gens, capped))
}

/// Breadth-first exploration of the ball of the given radius around `center`.
pub fn explore_ball(p: &PeriagroupPresentation, center: &Word, opts: BallOptions) -> Result<ExploredBall> {
    let words = Words::new(p);
    words.check(center)?;
    let (gens, capped) = generators(p, opts.mode, opts.exponent_cap)?;
    let c = words.canonical_form(center)?;
    let mut elements = vec![c.clone()];
    let mut dist = vec![0u32];
    let mut index = HashMap::from([(c.clone(), 0usize)]);
    let mut adjacency: Vec<Vec<(usize, Syllable)>> = vec![Vec::new()];
    let mut frontier = vec![0usize];
    let mut depth = 0;
    while !frontier.is_empty() {
        let products: Vec<Vec<(Syllable, CanonicalForm)>> = frontier
            .par_iter()
            .map(|&x| {
                gens.iter()
                    .map(|&s| {
                        let mut w = elements[x].word().0.clone();
                        w.push(s);
                        Ok((s, words.canonical_form(&Word(w))?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut next = Vec::new();
        for (&x, prods) in frontier.iter().zip(products) {
            for (s, y) in prods {
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None if depth < opts.radius => {
                        if elements.len() >= opts.max_vertices {
                            return Err(Error::Resource { what: "ball vertices".into(), bound: opts.max_vertices });
                        }
                        let id = elements.len();
                        index.insert(y.clone(), id);
                        elements.push(y);
                        dist.push(depth as u32 + 1);
                        adjacency.push(Vec::new());
                        next.push(id);
                        id
                    }
                    None => continue,
                };
                if id != x && !adjacency[x].iter().any(|&(t, _)| t == id) {
                    adjacency[x].push((id, s));
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    for row in adjacency.iter_mut() {
        row.sort_unstable();
    }
    Ok(ExploredBall { center: c, radius: opts.radius, mode: opts.mode, capped, elements, dist, adjacency, index })
}

impl ExploredBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id_of(&self, x: &CanonicalForm) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Intern id of the element represented by `w`, if it lies in the ball.
    pub fn find(&self, words: &Words, w: &Word) -> Result<Option<usize>> {
        Ok(self.id_of(&words.canonical_form(w)?))
    }

    pub fn graph(&self) -> FiniteGraph {
        let mut g = FiniteGraph::new(self.len());
        for (x, row) in self.adjacency.iter().enumerate() {
            for &(y, _) in row {
                if x < y {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// The generator labelling the edge `x → y`.
    pub fn edge_label(&self, x: usize, y: usize) -> Option<Syllable> {
        self.adjacency[x].iter().find(|&&(t, _)| t == y).map(|&(_, s)| s)
    }

    /// Hyperplanes of the ball's graph; unavailable when a vertex group was truncated.
    pub fn hyperplanes(&self) -> Result<HyperplaneStructure> {
        if self.capped {
            return Err(Error::InfiniteClique("truncated vertex group in a full-mode ball".into()));
        }
        compute_hyperplanes(self.graph())
    }

    /// Exact distance between two ball vertices in the Cayley graph of this mode.
    pub fn distance(&self, words: &Words, x: usize, y: usize) -> Result<u64> {
        let (a, b) = (self.elements[x].word(), self.elements[y].word());
        match self.mode {
            GenMode::Full => Ok(words.distance(a, b)? as u64),
            GenMode::S => words.distance_s(a, b),
        }
    }

    /// Tab-separated table `id<TAB>distance<TAB>word`.
    pub fn vertex_table(&self, p: &PeriagroupPresentation) -> String {
        let words = Words::new(p);
        let mut out = String::from("id\tdistance\tword\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "{i}\t{}\t{}", self.dist[i], words.format_word(e.word()));
        }
        out
    }

    /// Per-distance vertex counts.
    pub fn sphere_sizes(&self) -> Vec<u64> {
        let mut s = vec![0u64; self.radius + 1];
        for &d in &self.dist {
            s[d as usize] += 1;
        }
        s
    }
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
    fn dinf_ball_is_a_path() {
        let p = corpus("dinf");
        let b = explore_ball(&p, &Word::empty(), BallOptions::new(3, GenMode::Full)).unwrap();
        assert_eq!(b.len(), 7);
        let g = b.graph();
        assert_eq!(g.edge_count(), 6);
        assert_eq!((0..7).filter(|&v| g.neighbours(v).len() == 1).count(), 2);
    }

    #[test]
    fn i2_5_saturates_at_ten() {
        let p = corpus("i2-5");
        let b = explore_ball(&p, &Word::empty(), BallOptions::new(5, GenMode::Full)).unwrap();
        assert_eq!(b.len(), 10);
        assert_eq!(b.sphere_sizes(), vec![1, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn z6_s_ball_of_radius_two() {
        let p = corpus("z6");
        let b = explore_ball(&p, &Word::empty(), BallOptions::new(2, GenMode::S)).unwrap();
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn full_mode_rejects_infinite_groups_without_a_cap() {
        let p = corpus("z");
        assert!(matches!(explore_ball(&p, &Word::empty(), BallOptions::new(2, GenMode::Full)), Err(Error::InfiniteClique(_))));
        let opts = BallOptions { exponent_cap: Some(2), ..BallOptions::new(2, GenMode::Full) };
        let b = explore_ball(&p, &Word::empty(), opts).unwrap();
        assert!(b.capped);
        assert!(b.hyperplanes().is_err());
    }

    #[test]
    fn distances_match_word_lengths() {
        for name in ["dinf", "i2-5", "c4-racg", "pentagon-racg", "ex-periagroup-z6"] {
            let p = corpus(name);
            let words = Words::new(&p);
            let full = explore_ball(&p, &Word::empty(), BallOptions::new(3, GenMode::Full)).unwrap();
            for (e, &d) in full.elements.iter().zip(&full.dist) {
                assert_eq!(e.len() as u32, d, "{name}");
            }
            let s = explore_ball(&p, &Word::empty(), BallOptions::new(3, GenMode::S)).unwrap();
            for (e, &d) in s.elements.iter().zip(&s.dist) {
                assert_eq!(words.word_length_s(e.word()).unwrap(), d as u64, "{name}");
            }
        }
    }

    #[test]
    fn vertex_table_lists_every_vertex() {
        let p = corpus("dinf");
        let b = explore_ball(&p, &Word::empty(), BallOptions::new(1, GenMode::Full)).unwrap();
        let t = b.vertex_table(&p);
        assert_eq!(t.lines().count(), 4);
        assert!(t.contains("0\t0\t1"));
    }
}
