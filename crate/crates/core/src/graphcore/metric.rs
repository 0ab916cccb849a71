use rand::Rng;
use serde::Serialize;

use super::hyperplanes::HyperplaneStructure;
use crate::error::{Error, Result};

/// A metric on each maximal clique, indexed like `CliqueGraph::cliques`; rows follow the clique's sorted vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueMetrics {
    pub cliques: Vec<Vec<Vec<u64>>>,
}

impl CliqueMetrics {
    /// Distance 1 between distinct vertices of every clique.
    pub fn discrete(hs: &HyperplaneStructure) -> Self {
        let cliques = hs
            .cg
            .cliques
            .iter()
            .map(|c| (0..c.len()).map(|i| (0..c.len()).map(|j| u64::from(i != j)).collect()).collect())
            .collect();
        CliqueMetrics { cliques }
    }

    /// Transports one metric per hyperplane, given on its sector indices, to every clique of that hyperplane.
    pub fn from_sector_metrics(hs: &HyperplaneStructure, per_hyperplane: &[Vec<Vec<u64>>]) -> Self {
        let mut m = CliqueMetrics::discrete(hs);
        for (h, hyp) in hs.hyperplanes.iter().enumerate() {
            for &c in &hyp.cliques {
                let verts = &hs.cg.cliques[c];
                let sec: Vec<usize> = verts.iter().map(|&v| hs.sector_of(h, v)).collect();
                m.cliques[c] =
                    (0..verts.len()).map(|i| (0..verts.len()).map(|j| per_hyperplane[h][sec[i]][sec[j]]).collect()).collect();
            }
        }
        m
    }

    /// A coherent system with integer weights in `1..=max_weight`, made metric by shortest-path closure.
    pub fn random_coherent<R: Rng>(hs: &HyperplaneStructure, rng: &mut R, max_weight: u64) -> Self {
        let per: Vec<Vec<Vec<u64>>> = hs.hyperplanes.iter().map(|h| random_metric(h.sectors.len(), rng, max_weight)).collect();
        CliqueMetrics::from_sector_metrics(hs, &per)
    }

    /// Checks the metric axioms on every clique and that gate maps between parallel cliques are isometries.
    pub fn check(&self, hs: &HyperplaneStructure) -> Result<()> {
        let cliques = &hs.cg.cliques;
        for (c, m) in self.cliques.iter().enumerate() {
            let k = cliques[c].len();
            let ok = m.len() == k
                && m.iter().all(|r| r.len() == k)
                && (0..k).all(|i| {
                    m[i][i] == 0
                        && (0..k).all(|j| {
                            m[i][j] == m[j][i] && (i == j || m[i][j] > 0) && (0..k).all(|l| m[i][l] <= m[i][j] + m[j][l])
                        })
                });
            if !ok {
                return Err(Error::Precondition(format!("clique {:?} does not carry a metric", cliques[c])));
            }
        }
        for hyp in &hs.hyperplanes {
            for (a, &c1) in hyp.cliques.iter().enumerate() {
                for &c2 in &hyp.cliques[a + 1..] {
                    let proj: Vec<usize> = cliques[c1]
                        .iter()
                        .map(|&x| {
                            let g = hs.cg.gate(x, c2).expect("paraclique graphs are clique-gated");
                            cliques[c2].binary_search(&g).unwrap()
                        })
                        .collect();
                    let k = proj.len();
                    let isometry = (0..k).all(|i| (0..k).all(|j| self.cliques[c1][i][j] == self.cliques[c2][proj[i]][proj[j]]));
                    if !isometry {
                        return Err(Error::Incoherent(cliques[c1].clone(), cliques[c2].clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Distance between two vertices of clique `c`.
    pub fn within(&self, hs: &HyperplaneStructure, c: usize, u: usize, v: usize) -> u64 {
        let verts = &hs.cg.cliques[c];
        self.cliques[c][verts.binary_search(&u).unwrap()][verts.binary_search(&v).unwrap()]
    }

    /// Diameter of a member clique of hyperplane `h`.
    pub fn thickness(&self, hs: &HyperplaneStructure, h: usize) -> u64 {
        let c = hs.hyperplanes[h].cliques[0];
        self.cliques[c].iter().flatten().copied().max().unwrap_or(0)
    }
}

fn random_metric<R: Rng>(k: usize, rng: &mut R, max_weight: u64) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0; k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let w = rng.gen_range(1..=max_weight);
            m[i][j] = w;
            m[j][i] = w;
        }
    }
    for l in 0..k {
        for i in 0..k {
            for j in 0..k {
                m[i][j] = m[i][j].min(m[i][l] + m[l][j]);
            }
        }
    }
    m
}

/// δ-distance with both the geodesic and hyperplane evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaDistance {
    pub value: u64,
    pub min_over_geodesics: u64,
    pub max_over_geodesics: u64,
    pub hyperplane_sum: u64,
}

/// Sum of clique distances along a geodesic from `x` to `y`, checked to be the same for every
/// geodesic and to equal the sum over separating hyperplanes.
pub fn delta_distance(hs: &HyperplaneStructure, cm: &CliqueMetrics, x: usize, y: usize) -> Result<DeltaDistance> {
    cm.check(hs)?;
    let d = delta_unchecked(hs, cm, x, y);
    if d.min_over_geodesics != d.max_over_geodesics || d.min_over_geodesics != d.hyperplane_sum {
        return Err(Error::Verification(format!("δ({x}, {y}) depends on the evaluation: {d:?}")));
    }
    Ok(d)
}

/// The three evaluations of δ without the coherence precondition or the agreement check.
pub fn delta_unchecked(hs: &HyperplaneStructure, cm: &CliqueMetrics, x: usize, y: usize) -> DeltaDistance {
    let g = hs.graph();
    let dist = &hs.cg.dist;
    let mut order = dist.interval(x, y);
    order.sort_by_key(|&v| dist.get(x, v));
    let n = g.len();
    let mut lo = vec![u64::MAX; n];
    let mut hi = vec![0u64; n];
    lo[x] = 0;
    for &v in &order {
        if v == x {
            continue;
        }
        for &u in g.neighbours(v) {
            if dist.get(x, u) + 1 == dist.get(x, v) && dist.get(u, y) == dist.get(v, y) + 1 {
                let w = cm.within(hs, hs.cg.clique_of_edge(u, v), u, v);
                lo[v] = lo[v].min(lo[u] + w);
                hi[v] = hi[v].max(hi[u] + w);
            }
        }
    }
    let hyperplane_sum = hs
        .separating(x, y)
        .into_iter()
        .map(|h| {
            let c = hs.hyperplanes[h].cliques[0];
            let gx = hs.cg.gate(x, c).unwrap();
            let gy = hs.cg.gate(y, c).unwrap();
            cm.within(hs, c, gx, gy)
        })
        .sum();
    DeltaDistance { value: lo[y], min_over_geodesics: lo[y], max_over_geodesics: hi[y], hyperplane_sum }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::super::graph::families;
    use super::super::hyperplanes::compute_hyperplanes;
    use super::*;

    #[test]
    fn discrete_metric_gives_graph_distance() {
        let hs = compute_hyperplanes(families::cycle(6)).unwrap();
        let cm = CliqueMetrics::discrete(&hs);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(delta_distance(&hs, &cm, x, y).unwrap().value, hs.distance(x, y) as u64);
            }
        }
    }

    #[test]
    fn weighting_one_hexagon_hyperplane() {
        let hs = compute_hyperplanes(families::cycle(6)).unwrap();
        let h = hs.hyperplane_of_edge(0, 1);
        let per: Vec<_> =
            (0..hs.len()).map(|i| if i == h { vec![vec![0, 3], vec![3, 0]] } else { vec![vec![0, 1], vec![1, 0]] }).collect();
        let cm = CliqueMetrics::from_sector_metrics(&hs, &per);
        assert_eq!(delta_distance(&hs, &cm, 0, 3).unwrap().value, 5);
        assert_eq!(delta_distance(&hs, &cm, 1, 2).unwrap().value, 1);
        assert_eq!(delta_distance(&hs, &cm, 0, 1).unwrap().value, 3);
        assert_eq!(cm.thickness(&hs, h), 3);
    }

    #[test]
    fn incoherent_metrics_are_rejected() {
        let hs = compute_hyperplanes(families::cycle(4)).unwrap();
        let mut cm = CliqueMetrics::discrete(&hs);
        cm.cliques[0] = vec![vec![0, 2], vec![2, 0]];
        assert!(matches!(delta_distance(&hs, &cm, 0, 2), Err(Error::Incoherent(..))));
    }

    #[test]
    fn random_coherent_metrics_on_a_hamming_graph() {
        let hs = compute_hyperplanes(families::hamming(&[3, 3])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cm = CliqueMetrics::random_coherent(&hs, &mut rng, 5);
        for x in 0..9 {
            for y in 0..9 {
                delta_distance(&hs, &cm, x, y).unwrap();
            }
        }
    }
}
