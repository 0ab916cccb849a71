use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::cliques::CliqueGraph;
use super::graph::{Distances, FiniteGraph};
use super::hyperplanes::{compute_hyperplanes, Bits, HyperplaneStructure};
use crate::error::{Error, Result};

/// Default cap on the number of orientations explored by [`quasi_cubulate`].
pub const DEFAULT_ORIENTATION_BOUND: usize = 200_000;

/// Coordinates of an isometric embedding into a product of complete graphs.
#[derive(Debug, Clone, Serialize)]
pub struct HammingEmbedding {
    pub base: usize,
    /// Size of each factor (the number of sectors of the corresponding hyperplane).
    pub factors: Vec<usize>,
    /// `coords[v][h]` is the vertex of `h`'s representative clique that `v` projects to, as an index into the clique.
    pub coords: Vec<Vec<usize>>,
}

/// Embeds a paraclique graph in a Hamming graph via projections onto one clique per hyperplane.
pub fn hamming_embedding(g: &FiniteGraph) -> Result<HammingEmbedding> {
    let hs = compute_hyperplanes(g.clone())?;
    hamming_embedding_of(&hs)
}

pub fn hamming_embedding_of(hs: &HyperplaneStructure) -> Result<HammingEmbedding> {
    let cg = &hs.cg;
    let n = cg.len();
    let reps: Vec<usize> = hs.hyperplanes.iter().map(|h| h.cliques[0]).collect();
    let mut coords = vec![Vec::with_capacity(reps.len()); n];
    for (v, row) in coords.iter_mut().enumerate() {
        for &c in &reps {
            let gate = cg.gate(v, c).ok_or_else(|| Error::NotCliqueGated { vertex: v, clique: cg.cliques[c].clone() })?;
            row.push(cg.cliques[c].binary_search(&gate).expect("gate lies in the clique"));
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            let hamming = coords[u].iter().zip(&coords[v]).filter(|(a, b)| a != b).count() as u32;
            if hamming != cg.dist.get(u, v) {
                return Err(Error::Verification(format!("embedding distorts the pair ({u}, {v})")));
            }
        }
    }
    let factors = reps.iter().map(|&c| cg.cliques[c].len()).collect();
    Ok(HammingEmbedding { base: 0, factors, coords })
}

/// A finite set `0..n` with a family of partitions into sectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionSpace {
    pub ground: usize,
    /// Each partition is a list of sectors, each a sorted list of points.
    pub partitions: Vec<Vec<Vec<usize>>>,
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl PartitionSpace {
    pub fn new(ground: usize, mut partitions: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        for p in partitions.iter_mut() {
            for s in p.iter_mut() {
                s.sort_unstable();
            }
            p.sort();
        }
        let ps = PartitionSpace { ground, partitions };
        ps.validate()?;
        Ok(ps)
    }

    /// The partitions cut out by the hyperplanes of a paraclique graph.
    pub fn from_hyperplanes(hs: &HyperplaneStructure) -> Self {
        let partitions = hs.hyperplanes.iter().map(|h| h.sectors.clone()).collect();
        PartitionSpace::new(hs.cg.len(), partitions).expect("hyperplane sectors form a space with partitions")
    }

    /// Parses the `.parts` format: ground-set size, then one partition per line with `|` between sectors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Parse { line: 1, col: 1, msg: "missing ground-set size".into() })?;
        let ground: usize = first.parse().map_err(|_| Error::Parse { line, col: 1, msg: format!("bad ground-set size `{first}`") })?;
        let mut partitions = Vec::new();
        for (line, l) in lines {
            let mut p = Vec::new();
            let mut col = 1;
            for part in l.split('|') {
                let mut sector = Vec::new();
                for tok in part.split_whitespace() {
                    let at = col + part.find(tok).unwrap_or(0);
                    let x: usize = tok.parse().map_err(|_| Error::Parse { line, col: at, msg: format!("bad point `{tok}`") })?;
                    if x >= ground {
                        return Err(Error::Parse { line, col: at, msg: format!("point {x} out of range") });
                    }
                    sector.push(x);
                }
                col += part.len() + 1;
                p.push(sector);
            }
            partitions.push(p);
        }
        PartitionSpace::new(ground, partitions)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.ground);
        for p in &self.partitions {
            let parts: Vec<String> =
                p.iter().map(|sec| sec.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
            s.push_str(&parts.join(" | "));
            s.push('\n');
        }
        s
    }

    /// Checks that every partition covers the ground set with at least two nonempty disjoint sectors,
    /// and that comparable sectors come from nested partitions.
    pub fn validate(&self) -> Result<()> {
        for (i, p) in self.partitions.iter().enumerate() {
            if p.len() < 2 {
                return Err(Error::InvalidPartitions(format!("partition {i} has fewer than two sectors")));
            }
            if p.iter().any(Vec::is_empty) {
                return Err(Error::InvalidPartitions(format!("partition {i} has an empty sector")));
            }
            let mut seen = vec![false; self.ground];
            for &x in p.iter().flatten() {
                if x >= self.ground || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartitions(format!("partition {i} repeats or misplaces point {x}")));
                }
            }
            if let Some(x) = seen.iter().position(|&s| !s) {
                return Err(Error::InvalidPartitions(format!("partition {i} does not cover point {x}")));
            }
        }
        for i in 0..self.partitions.len() {
            for j in 0..self.partitions.len() {
                if i == j {
                    continue;
                }
                let comparable = self.partitions[i].iter().any(|a| self.partitions[j].iter().any(|b| subset(a, b)));
                if comparable && !self.nested(i, j) {
                    return Err(Error::InvalidPartitions(format!(
                        "partitions {i} and {j} have comparable sectors but are not nested"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sectors `A ∈ P`, `B ∈ Q` with every other sector of `Q` inside `A` and every other sector of `P` inside `B`.
    pub fn nested(&self, i: usize, j: usize) -> bool {
        let (p, q) = (&self.partitions[i], &self.partitions[j]);
        p.iter().enumerate().any(|(ai, a)| {
            q.iter().enumerate().any(|(bi, b)| {
                q.iter().enumerate().all(|(di, d)| di == bi || subset(d, a))
                    && p.iter().enumerate().all(|(di, d)| di == ai || subset(d, b))
            })
        })
    }

    /// No sector of one is contained in a sector of the other.
    pub fn transverse(&self, i: usize, j: usize) -> bool {
        let (p, q) = (&self.partitions[i], &self.partitions[j]);
        p.iter().all(|a| q.iter().all(|b| !subset(a, b) && !subset(b, a)))
    }

    pub fn principal(&self, x: usize) -> Vec<u16> {
        self.partitions.iter().map(|p| p.iter().position(|s| s.binary_search(&x).is_ok()).unwrap() as u16).collect()
    }
}

/// The quasi-cubulation with its orientations.
#[derive(Debug, Clone)]
pub struct QuasiCubulation {
    pub graph: FiniteGraph,
    /// `orientations[v][i]` is the sector of partition `i` chosen by vertex `v`.
    pub orientations: Vec<Vec<u16>>,
    /// Vertex of each principal orientation.
    pub principal: Vec<usize>,
    /// Hyperplane of the graph corresponding to each partition.
    pub hyperplane_of_partition: Vec<usize>,
}

/// Builds the component of the orientation graph containing the principal orientations and
/// verifies the distance formula and the hyperplane correspondence.
pub fn quasi_cubulate(ps: &PartitionSpace, bound: usize) -> Result<QuasiCubulation> {
    ps.validate()?;
    let bits: Vec<Vec<Bits>> = ps
        .partitions
        .iter()
        .map(|p| {
            p.iter()
                .map(|s| {
                    let mut b = Bits::new(ps.ground);
                    s.iter().for_each(|&x| b.set(x));
                    b
                })
                .collect()
        })
        .collect();
    let k = ps.partitions.len();
    let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
    let mut orientations: Vec<Vec<u16>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut principal = Vec::with_capacity(ps.ground);
    for x in 0..ps.ground {
        let o = ps.principal(x);
        let id = *index.entry(o.clone()).or_insert_with(|| {
            orientations.push(o.clone());
            queue.push_back(orientations.len() - 1);
            orientations.len() - 1
        });
        principal.push(id);
    }
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        let o = orientations[v].clone();
        for i in 0..k {
            for s in 0..ps.partitions[i].len() as u16 {
                if s == o[i] {
                    continue;
                }
                let fits = (0..k).all(|j| j == i || bits[i][s as usize].meets(&bits[j][o[j] as usize]));
                if !fits {
                    continue;
                }
                let mut w = o.clone();
                w[i] = s;
                let id = match index.get(&w) {
                    Some(&id) => id,
                    None => {
                        if orientations.len() >= bound {
                            return Err(Error::Resource { what: "orientations".into(), bound });
                        }
                        orientations.push(w.clone());
                        index.insert(w, orientations.len() - 1);
                        queue.push_back(orientations.len() - 1);
                        orientations.len() - 1
                    }
                };
                if v < id {
                    edges.push((v, id));
                }
            }
        }
    }
    let graph = FiniteGraph::from_edges(orientations.len(), &edges);
    let dist = Distances::new(&graph);
    for u in 0..orientations.len() {
        for v in (u + 1)..orientations.len() {
            let differ = orientations[u].iter().zip(&orientations[v]).filter(|(a, b)| a != b).count() as u32;
            if differ != dist.get(u, v) {
                return Err(Error::Verification(format!("orientations {u} and {v} are at the wrong distance")));
            }
        }
    }
    let hs = compute_hyperplanes(graph.clone())?;
    let mut hyperplane_of_partition = vec![usize::MAX; k];
    for (h, hyp) in hs.hyperplanes.iter().enumerate() {
        let (a, b) = hyp.edges[0];
        let i = (0..k).find(|&i| orientations[a][i] != orientations[b][i]).expect("adjacent orientations differ");
        let uniform = hyp.edges.iter().all(|&(a, b)| orientations[a][i] != orientations[b][i]);
        if !uniform || hyperplane_of_partition[i] != usize::MAX {
            return Err(Error::Verification(format!("hyperplane {h} does not match a single partition")));
        }
        hyperplane_of_partition[i] = h;
    }
    if hs.len() != k || hyperplane_of_partition.contains(&usize::MAX) {
        return Err(Error::Verification("hyperplanes and partitions are not in bijection".into()));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if ps.transverse(i, j) != hs.transverse(hyperplane_of_partition[i], hyperplane_of_partition[j]) {
                return Err(Error::Verification(format!("transversality of partitions {i} and {j} is not preserved")));
            }
        }
    }
    Ok(QuasiCubulation { graph, orientations, principal, hyperplane_of_partition })
}

/// Outcome of the structural checks on a quasi-median closure.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureChecks {
    pub isometric: bool,
    pub cliques_preserved: bool,
    pub cliques_parallel_to_source: bool,
    pub parallelism_preserved: bool,
    pub transversality_preserved: bool,
    pub closure_quasimedian: bool,
}

impl ClosureChecks {
    pub fn all(&self) -> bool {
        self.isometric
            && self.cliques_preserved
            && self.cliques_parallel_to_source
            && self.parallelism_preserved
            && self.transversality_preserved
            && self.closure_quasimedian
    }
}

#[derive(Debug, Clone)]
pub struct QmClosure {
    pub graph: FiniteGraph,
    /// Image of each source vertex.
    pub embedding: Vec<usize>,
    pub checks: ClosureChecks,
}

/// Quasi-median closure of a paraclique graph, with its embedding and the structural checks.
pub fn qm_closure(g: &FiniteGraph) -> Result<QmClosure> {
    let hs = compute_hyperplanes(g.clone())?;
    let ps = PartitionSpace::from_hyperplanes(&hs);
    let qc = quasi_cubulate(&ps, DEFAULT_ORIENTATION_BOUND)?;
    let m = CliqueGraph::new(qc.graph.clone())?;
    let mhs = HyperplaneStructure::new(m.clone())?;
    let emb = qc.principal.clone();
    let n = g.len();

    let isometric = (0..n).all(|u| (0..n).all(|v| hs.distance(u, v) == m.dist.get(emb[u], emb[v])));

    let mut image_clique = Vec::with_capacity(hs.cg.cliques.len());
    for c in &hs.cg.cliques {
        let mut img: Vec<usize> = c.iter().map(|&v| emb[v]).collect();
        img.sort_unstable();
        image_clique.push(m.cliques.binary_search(&img).ok());
    }
    let cliques_preserved = image_clique.iter().all(Option::is_some);

    let covered: Vec<bool> = {
        let mut covered = vec![false; mhs.len()];
        for c in image_clique.iter().flatten() {
            if let Some(h) = (m.cliques[*c].len() >= 2).then(|| mhs.hyperplane_of_clique(*c)) {
                covered[h] = true;
            }
        }
        covered
    };
    let cliques_parallel_to_source = covered.iter().all(|&c| c);

    let edge_cliques: Vec<usize> = (0..hs.cg.cliques.len()).filter(|&c| hs.cg.cliques[c].len() >= 2).collect();
    let parallelism_preserved = cliques_preserved
        && edge_cliques.iter().all(|&a| {
            edge_cliques.iter().all(|&b| {
                let in_x = hs.hyperplane_of_clique(a) == hs.hyperplane_of_clique(b);
                let (ia, ib) = (image_clique[a].unwrap(), image_clique[b].unwrap());
                in_x == (mhs.hyperplane_of_clique(ia) == mhs.hyperplane_of_clique(ib))
            })
        });

    let transversality_preserved = (0..hs.len()).all(|a| {
        (0..hs.len()).all(|b| hs.transverse(a, b) == mhs.transverse(qc.hyperplane_of_partition[a], qc.hyperplane_of_partition[b]))
    });

    let closure_quasimedian = super::axioms::check_axioms(&qc.graph)?.quasimedian;

    Ok(QmClosure {
        graph: qc.graph,
        embedding: emb,
        checks: ClosureChecks {
            isometric,
            cliques_preserved,
            cliques_parallel_to_source,
            parallelism_preserved,
            transversality_preserved,
            closure_quasimedian,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::super::axioms::check_axioms;
    use super::super::graph::families;
    use super::*;

    #[test]
    fn hexagon_embeds_in_a_cube() {
        let e = hamming_embedding(&families::cycle(6)).unwrap();
        assert_eq!(e.factors, vec![2, 2, 2]);
    }

    #[test]
    fn wheel_embeds_in_binary_factors() {
        let e = hamming_embedding(&families::wheel_of_squares()).unwrap();
        assert!(e.factors.iter().all(|&f| f == 2));
    }

    #[test]
    fn single_three_sector_partition_gives_a_triangle() {
        let ps = PartitionSpace::parse("3\n0 | 1 | 2\n").unwrap();
        let qc = quasi_cubulate(&ps, 100).unwrap();
        assert_eq!(qc.graph, families::complete(3));
    }

    #[test]
    fn nested_pair_gives_a_path() {
        let ps = PartitionSpace::parse("3\n0 | 1 2\n0 1 | 2\n").unwrap();
        assert!(ps.nested(0, 1));
        let qc = quasi_cubulate(&ps, 100).unwrap();
        assert_eq!(qc.graph.len(), 3);
        assert_eq!(qc.graph.edge_count(), 2);
    }

    #[test]
    fn square_partitions_rebuild_the_square() {
        let hs = compute_hyperplanes(families::cycle(4)).unwrap();
        let qc = quasi_cubulate(&PartitionSpace::from_hyperplanes(&hs), 100).unwrap();
        assert_eq!(qc.graph.len(), 4);
        assert_eq!(qc.graph.edge_count(), 4);
    }

    #[test]
    fn invalid_partition_spaces_are_rejected() {
        assert!(matches!(PartitionSpace::parse("3\n0 1 2\n"), Err(Error::InvalidPartitions(_))));
        assert!(matches!(PartitionSpace::parse("3\n0 | 1\n"), Err(Error::InvalidPartitions(_))));
        // {1} is a sector of both, but no sector of either absorbs the rest of the other.
        assert!(PartitionSpace::parse("4\n0 | 1 | 2 3\n0 2 | 1 | 3\n").is_err());
        assert!(matches!(PartitionSpace::parse("2\n0 | 5\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn closures_of_hexagon_and_wheel_are_cubes() {
        for g in [families::cycle(6), families::wheel_of_squares()] {
            let qm = qm_closure(&g).unwrap();
            assert!(qm.checks.all(), "{:?}", qm.checks);
            assert_eq!(qm.graph.len(), 8);
        }
    }

    #[test]
    fn closure_of_a_quasi_median_graph_is_itself() {
        for g in [families::cycle(4), families::hamming(&[3, 2])] {
            let qm = qm_closure(&g).unwrap();
            assert_eq!(qm.graph.len(), g.len());
            assert_eq!(qm.graph.edge_count(), g.edge_count());
            assert!(check_axioms(&qm.graph).unwrap().quasimedian);
        }
    }
}
