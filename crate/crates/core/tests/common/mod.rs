//! Corpus loading, random presentations and the invariant checks shared by the acceptance and
//! property suites. Every check returns `Err` with a description of the first violation.

#![allow(dead_code)]

use std::sync::OnceLock;

use peria::cayley::{explore_ball, BallOptions, GenMode};
use peria::graphcore::{compute_hyperplanes, families, CliqueGraph, Distances, FiniteGraph, HyperplaneStructure};
use peria::growth::{conjugacy_growth, saturation, spherical_growth, ConjugacyMethod};
use peria::presentation::{parse_presentation, PeriagroupPresentation, PresentationBuilder, VertexGroupSpec};
use peria::words::{Word, Words};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2026;

pub fn corpus_text(file: &str) -> String {
    let path = format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn corpus(name: &str) -> PeriagroupPresentation {
    parse_presentation(&corpus_text(&format!("{name}.peria"))).unwrap()
}

pub fn corpus_graph(name: &str) -> FiniteGraph {
    FiniteGraph::parse(&corpus_text(&format!("{name}.graph"))).unwrap()
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

/// A graph product of cyclic groups on `orders.len()` vertices; `None` is `ℤ`. Bit `k` of `mask`
/// joins the `k`-th pair in lexicographic order.
pub fn graph_product(orders: &[Option<u32>], mask: u32) -> PeriagroupPresentation {
    let mut b = PresentationBuilder::new();
    for (i, o) in orders.iter().enumerate() {
        let spec = match o {
            Some(m) => VertexGroupSpec::Cyclic(*m),
            None => VertexGroupSpec::CyclicInfinite,
        };
        b = b.vertex(&format!("v{i}"), spec);
    }
    let mut k = 0;
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            if mask >> k & 1 == 1 {
                b = b.edge(&format!("v{i}"), &format!("v{j}"), 2);
            }
            k += 1;
        }
    }
    b.build().unwrap()
}

/// Graph products of finite cyclic groups with 2 to 4 vertices.
pub fn finite_gp() -> impl Strategy<Value = (Vec<Option<u32>>, u32)> {
    (prop::collection::vec((2u32..=4).prop_map(Some), 2..=4), 0u32..64)
}

/// Graph products of cyclic groups, `ℤ` allowed, with 2 or 3 vertices.
pub fn cyclic_gp() -> impl Strategy<Value = (Vec<Option<u32>>, u32)> {
    (prop::collection::vec(prop_oneof![(2u32..=4).prop_map(Some), Just(None)], 2..=3), 0u32..8)
}

/// Paraclique graphs: graph families and full Cayley graphs of finite periagroups.
pub fn paraclique_pool() -> &'static [(String, HyperplaneStructure)] {
    static POOL: OnceLock<Vec<(String, HyperplaneStructure)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut graphs: Vec<(String, FiniteGraph)> = vec![
            ("Q3".into(), families::cube(3)),
            ("Q4".into(), families::cube(4)),
            ("H(3,2)".into(), families::hamming(&[3, 2])),
            ("H(3,3,2)".into(), families::hamming(&[3, 3, 2])),
            ("C6".into(), families::cycle(6)),
            ("C8".into(), families::cycle(8)),
            ("C10".into(), families::cycle(10)),
            ("wheel".into(), families::wheel_of_squares()),
            ("C6xP3".into(), families::product(&families::cycle(6), &families::path(3))),
            ("C6xK3".into(), families::product(&families::cycle(6), &families::complete(3))),
            ("P5".into(), families::path(5)),
        ];
        for name in ["i2-3", "i2-5", "z6"] {
            let p = corpus(name);
            let ball = explore_ball(&p, &Word::empty(), BallOptions::new(64, GenMode::Full)).unwrap();
            graphs.push((format!("Cay({name})"), ball.graph()));
        }
        for (name, text) in [
            ("Cay(A3)", "vertex a cyclic 2\nvertex b cyclic 2\nvertex c cyclic 2\nedge a b 3\nedge b c 3\nedge a c 2\n"),
            ("Cay(B3)", "vertex a cyclic 2\nvertex b cyclic 2\nvertex c cyclic 2\nedge a b 4\nedge b c 3\nedge a c 2\n"),
            ("Cay(Z3xZ4)", "vertex a cyclic 3\nvertex b cyclic 4\nedge a b 2\n"),
            ("Cay(B2 x Z3)", "vertex a cyclic 2\nvertex b cyclic 2\nvertex c cyclic 3\nedge a b 4\nedge b c 2\nedge a c 2\n"),
        ] {
            let p = parse_presentation(text).unwrap();
            let ball = explore_ball(&p, &Word::empty(), BallOptions::new(64, GenMode::Full)).unwrap();
            graphs.push((name.into(), ball.graph()));
        }
        graphs.into_iter().map(|(n, g)| (n, compute_hyperplanes(g).unwrap())).collect()
    })
}

/// A random walk (or, with `geodesic`, a random geodesic) in pool graph `idx`: the path is a
/// geodesic exactly when it crosses each hyperplane at most once, and the distance between its
/// endpoints is the number of separating hyperplanes.
pub fn check_crossing_law(idx: usize, seed: u64, geodesic: bool) -> Result<(), String> {
    let pool = paraclique_pool();
    let (name, hs) = &pool[idx % pool.len()];
    let g = hs.graph();
    let dist = Distances::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.len();
    let x = rng.gen_range(0..n);
    let mut path = vec![x];
    if geodesic {
        let y = rng.gen_range(0..n);
        let mut cur = x;
        while cur != y {
            let closer: Vec<usize> = g.neighbours(cur).iter().copied().filter(|&u| dist.get(u, y) < dist.get(cur, y)).collect();
            cur = closer[rng.gen_range(0..closer.len())];
            path.push(cur);
        }
    } else {
        let len = rng.gen_range(1..=2 * dist.diameter() as usize + 2);
        for _ in 0..len {
            let nb = g.neighbours(*path.last().unwrap());
            path.push(nb[rng.gen_range(0..nb.len())]);
        }
    }
    let (a, b) = (path[0], *path.last().unwrap());
    let is_geodesic = path.len() - 1 == dist.get(a, b) as usize;
    let mut crossings = vec![0usize; hs.len()];
    for w in path.windows(2) {
        crossings[hs.hyperplane_of_edge(w[0], w[1])] += 1;
    }
    let at_most_once = crossings.iter().all(|&c| c <= 1);
    if is_geodesic != at_most_once {
        return Err(format!("{name}: path {path:?} geodesic={is_geodesic} crosses-at-most-once={at_most_once}"));
    }
    let sep = hs.separating(a, b).len();
    if sep != dist.get(a, b) as usize {
        return Err(format!("{name}: d({a},{b}) = {} but {sep} separating hyperplanes", dist.get(a, b)));
    }
    Ok(())
}

fn single_syllable_vertex(words: &Words, x: &Word, y: &Word) -> Result<Option<usize>, String> {
    let q = words.multiply(&words.inverse_word(x), y).map_err(|e| e.to_string())?;
    Ok(match q.word().syllables() {
        [s] => Some(s.vertex),
        _ => None,
    })
}

/// In the full-mode ball of radius `r`, every maximal clique through a vertex at distance `< r`
/// is a coset `h⟨u⟩`, and every such coset is a maximal clique.
pub fn check_clique_coset_law(p: &PeriagroupPresentation, r: usize) -> Result<(), String> {
    let words = Words::new(p);
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(r, GenMode::Full)).map_err(|e| e.to_string())?;
    let cg = CliqueGraph::new(ball.graph()).map_err(|e| e.to_string())?;
    let interior = |v: usize| (ball.dist[v] as usize) < r;
    for c in &cg.cliques {
        if !c.iter().any(|&v| interior(v)) {
            continue;
        }
        let x = ball.elements[c[0]].word();
        let mut vertex = None;
        for &y in &c[1..] {
            match single_syllable_vertex(&words, x, ball.elements[y].word())? {
                Some(u) if vertex.is_none() || vertex == Some(u) => vertex = Some(u),
                _ => return Err(format!("clique {c:?} is not contained in a vertex-group coset")),
            }
        }
        let u = vertex.ok_or_else(|| format!("clique {c:?} is a single vertex"))?;
        if Some(c.len()) != p.group(u).order() {
            return Err(format!("clique {c:?} has {} vertices, vertex group {} has order {:?}", c.len(), p.name(u), p.group(u).order()));
        }
    }
    let cliques: std::collections::HashSet<Vec<usize>> = cg.cliques.iter().cloned().collect();
    for h in (0..ball.len()).filter(|&h| interior(h)) {
        for u in 0..p.len() {
            let mut coset: Vec<usize> = vec![h];
            for e in p.group(u).nontrivial_elements() {
                let w = ball.elements[h].word().concat(&Word(vec![peria::words::Syllable::new(u, e)]));
                coset.push(ball.find(&words, &w).map_err(|e| e.to_string())?.ok_or("coset leaves the ball")?);
            }
            coset.sort_unstable();
            if !cliques.contains(&coset) {
                return Err(format!("coset of {} at {} is not a maximal clique", p.name(u), words.format_word(ball.elements[h].word())));
            }
        }
    }
    Ok(())
}

/// In the full-mode ball of radius `r`, the edges of a hyperplane carry generators of one vertex,
/// and transverse hyperplanes carry distinct adjacent vertices.
pub fn check_label_law(p: &PeriagroupPresentation, r: usize) -> Result<(), String> {
    let ball = explore_ball(p, &Word::empty(), BallOptions::new(r, GenMode::Full)).map_err(|e| e.to_string())?;
    let hs = ball.hyperplanes().map_err(|e| e.to_string())?;
    let mut labels = Vec::with_capacity(hs.len());
    for (j, h) in hs.hyperplanes.iter().enumerate() {
        let mut vs: Vec<usize> = h.edges.iter().map(|&(a, b)| ball.edge_label(a, b).unwrap().vertex).collect();
        vs.dedup();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != 1 {
            return Err(format!("hyperplane {j} carries vertices {vs:?}"));
        }
        labels.push(vs[0]);
    }
    for a in 0..hs.len() {
        for b in a + 1..hs.len() {
            if hs.transverse(a, b) && !(labels[a] != labels[b] && p.graph().adjacent(labels[a], labels[b])) {
                return Err(format!("transverse hyperplanes {a}, {b} labelled {} and {}", p.name(labels[a]), p.name(labels[b])));
            }
        }
    }
    Ok(())
}

/// Enlarging the saturation ball only merges classes: counts at slack `s + 1` never exceed those
/// at slack `s`, and none drops below the exact count.
pub fn check_saturation_monotone(p: &PeriagroupPresentation, n: usize, slack: usize) -> Result<(), String> {
    let cap = 2_000_000;
    let (a, _) = saturation(p, n, slack, cap).map_err(|e| e.to_string())?;
    let (b, _) = saturation(p, n, slack + 1, cap).map_err(|e| e.to_string())?;
    let exact = conjugacy_growth(p, n, ConjugacyMethod::ExactGp).map_err(|e| e.to_string())?.series;
    for k in 0..=n {
        if !(exact.get(k) <= b.get(k) && b.get(k) <= a.get(k)) {
            return Err(format!("n={n} slack={slack}: exact {exact}, slack+1 {b}, slack {a}"));
        }
    }
    Ok(())
}

/// `c(k) ≤ s(k)` in the S metric.
pub fn check_conjugacy_below_spherical(p: &PeriagroupPresentation, n: usize) -> Result<(), String> {
    let c = conjugacy_growth(p, n, ConjugacyMethod::ExactGp).map_err(|e| e.to_string())?.series;
    let s = spherical_growth(p, n, GenMode::S).map_err(|e| e.to_string())?;
    for k in 0..=n {
        if c.get(k) > s.get(k) {
            return Err(format!("c({k}) = {} > s({k}) = {}", c.get(k), s.get(k)));
        }
    }
    Ok(())
}
