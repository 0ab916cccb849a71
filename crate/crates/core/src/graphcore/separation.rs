use serde::Serialize;

use super::hyperplanes::HyperplaneStructure;
use crate::error::{Error, Result};

/// Cap on branch-and-bound nodes in [`well_separated_check`].
pub const DEFAULT_NODE_BOUND: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WellSeparation {
    pub transverse: bool,
    /// Largest total thickness of a family transverse to both with no facing triple; `None` when the pair is transverse.
    pub l: Option<u64>,
    /// A family realising `l`.
    pub family: Vec<usize>,
    /// Hyperplanes transverse to both.
    pub candidates: usize,
}

/// Three pairwise non-transverse hyperplanes, none of which separates the other two.
pub fn facing_triple(hs: &HyperplaneStructure, a: usize, b: usize, c: usize) -> bool {
    !hs.transverse(a, b)
        && !hs.transverse(a, c)
        && !hs.transverse(b, c)
        && !hs.separates_hyperplanes(a, b, c)
        && !hs.separates_hyperplanes(b, a, c)
        && !hs.separates_hyperplanes(c, a, b)
}

/// Maximum total thickness of a family of hyperplanes transverse to both `j` and `k` without a facing triple.
pub fn well_separated_check(hs: &HyperplaneStructure, j: usize, k: usize, weights: &[u64]) -> Result<WellSeparation> {
    well_separated_bounded(hs, j, k, weights, DEFAULT_NODE_BOUND)
}

pub fn well_separated_bounded(
    hs: &HyperplaneStructure,
    j: usize,
    k: usize,
    weights: &[u64],
    bound: usize,
) -> Result<WellSeparation> {
    if j == k {
        return Err(Error::Precondition("the two hyperplanes must differ".into()));
    }
    if hs.transverse(j, k) {
        return Ok(WellSeparation { transverse: true, l: None, family: Vec::new(), candidates: 0 });
    }
    let mut cand: Vec<usize> = (0..hs.len()).filter(|&h| h != j && h != k && hs.transverse(h, j) && hs.transverse(h, k)).collect();
    cand.sort_by_key(|&h| std::cmp::Reverse(weights[h]));
    let m = cand.len();
    let mut facing = vec![Vec::new(); m * m];
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                if facing_triple(hs, cand[a], cand[b], cand[c]) {
                    facing[a * m + b].push(c);
                    facing[a * m + c].push(b);
                    facing[b * m + c].push(a);
                }
            }
        }
    }
    let suffix: Vec<u64> = {
        let mut s = vec![0; m + 1];
        for i in (0..m).rev() {
            s[i] = s[i + 1] + weights[cand[i]];
        }
        s
    };
    let mut search = Search { m, weights: cand.iter().map(|&h| weights[h]).collect(), facing, suffix, best: 0, best_set: Vec::new(), nodes: 0, bound };
    search.run(0, &mut Vec::new(), 0)?;
    let mut family: Vec<usize> = search.best_set.iter().map(|&i| cand[i]).collect();
    family.sort_unstable();
    Ok(WellSeparation { transverse: false, l: Some(search.best), family, candidates: m })
}

struct Search {
    m: usize,
    weights: Vec<u64>,
    /// `facing[a*m+b]` lists the `c` forming a facing triple with `a, b`.
    facing: Vec<Vec<usize>>,
    suffix: Vec<u64>,
    best: u64,
    best_set: Vec<usize>,
    nodes: usize,
    bound: usize,
}

impl Search {
    fn run(&mut self, i: usize, chosen: &mut Vec<usize>, total: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.bound {
            return Err(Error::Resource { what: "well-separation search nodes".into(), bound: self.bound });
        }
        if total > self.best || (total == self.best && self.best_set.is_empty() && !chosen.is_empty()) {
            self.best = total;
            self.best_set = chosen.clone();
        }
        if i == self.m || total + self.suffix[i] <= self.best {
            return Ok(());
        }
        let blocked = chosen
            .iter()
            .enumerate()
            .any(|(x, &a)| chosen[x + 1..].iter().any(|&b| self.facing[a * self.m + b].contains(&i)));
        if !blocked {
            chosen.push(i);
            self.run(i + 1, chosen, total + self.weights[i])?;
            chosen.pop();
        }
        self.run(i + 1, chosen, total)
    }
}

#[cfg(test)]
mod tests {
    use super::super::graph::families;
    use super::super::hyperplanes::compute_hyperplanes;
    use super::*;

    fn unit(hs: &HyperplaneStructure) -> Vec<u64> {
        vec![1; hs.len()]
    }

    #[test]
    fn square_hyperplanes_are_transverse() {
        let hs = compute_hyperplanes(families::cycle(4)).unwrap();
        let r = well_separated_check(&hs, 0, 1, &unit(&hs)).unwrap();
        assert!(r.transverse && r.l.is_none());
    }

    #[test]
    fn parallel_cube_hyperplanes_see_both_other_directions() {
        // In Q3 each direction is a single hyperplane, so use the 3×1×1 grid (path(3) × Q2).
        let g = families::product(&families::path(3), &families::cycle(4));
        let hs = compute_hyperplanes(g).unwrap();
        let a = hs.hyperplane_of_edge(0, 4);
        let b = hs.hyperplane_of_edge(4, 8);
        let r = well_separated_check(&hs, a, b, &unit(&hs)).unwrap();
        assert!(!r.transverse);
        assert_eq!(r.l, Some(2));
        assert_eq!(r.candidates, 2);
    }

    #[test]
    fn a_path_has_nothing_crossing() {
        let hs = compute_hyperplanes(families::path(4)).unwrap();
        let r = well_separated_check(&hs, 0, 2, &unit(&hs)).unwrap();
        assert_eq!(r.l, Some(0));
        assert!(r.family.is_empty());
    }

    #[test]
    fn facing_triples_are_excluded() {
        // A star with three spokes, crossed by a line: the spokes face each other.
        // Star K_{1,3} × path(4): hyperplanes of the path factor are crossed by the three spoke hyperplanes.
        let g = families::product(&families::complete_bipartite(1, 3), &families::path(4));
        let hs = compute_hyperplanes(g).unwrap();
        let a = hs.hyperplane_of_edge(0, 1);
        let b = hs.hyperplane_of_edge(2, 3);
        let spokes: Vec<usize> = (1..4).map(|s| hs.hyperplane_of_edge(0, 4 * s)).collect();
        assert!(facing_triple(&hs, spokes[0], spokes[1], spokes[2]));
        let r = well_separated_check(&hs, a, b, &unit(&hs)).unwrap();
        assert_eq!(r.candidates, 3);
        assert_eq!(r.l, Some(2));
    }
}
