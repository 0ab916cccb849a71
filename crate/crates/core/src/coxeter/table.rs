use super::{CoxeterDiagram, IrreducibleCoxeterType, Label};

fn spherical(family: impl Into<String>, rank: usize) -> IrreducibleCoxeterType {
    IrreducibleCoxeterType::Spherical { family: family.into(), rank }
}

fn affine(family: impl Into<String>, rank: usize) -> IrreducibleCoxeterType {
    IrreducibleCoxeterType::Affine { family: family.into(), rank, infinite_dihedral: false }
}

/// Matches an irreducible diagram against the spherical and affine families.
pub fn classify_irreducible(d: &CoxeterDiagram) -> IrreducibleCoxeterType {
    let n = d.n;
    match n {
        0 => return spherical("A0", 0),
        1 => return spherical("A1", 1),
        2 => {
            return match d.label(0, 1) {
                Some(Label::Inf) => IrreducibleCoxeterType::Affine { family: "Ã1".into(), rank: 1, infinite_dihedral: true },
                Some(Label::M(3)) => spherical("A2", 2),
                Some(Label::M(4)) => spherical("B2", 2),
                Some(Label::M(6)) => spherical("G2", 2),
                Some(Label::M(m)) => spherical(format!("I2({m})"), 2),
                None => IrreducibleCoxeterType::Other,
            }
        }
        _ => {}
    }
    if d.labels.values().any(|&l| l == Label::Inf) {
        return IrreducibleCoxeterType::Other;
    }
    let degree: Vec<usize> = (0..n).map(|u| d.neighbours(u).len()).collect();
    let edges = d.labels.len();
    if edges == n {
        let is_cycle = degree.iter().all(|&k| k == 2);
        let all_three = d.labels.values().all(|&l| l == Label::M(3));
        return if is_cycle && all_three { affine(format!("Ã{}", n - 1), n - 1) } else { IrreducibleCoxeterType::Other };
    }
    if edges != n - 1 {
        return IrreducibleCoxeterType::Other;
    }
    let branch: Vec<usize> = (0..n).filter(|&u| degree[u] >= 3).collect();
    match branch.len() {
        0 => classify_path(d),
        1 => classify_star(d, branch[0]),
        2 => classify_double_branch(d, &branch),
        _ => IrreducibleCoxeterType::Other,
    }
}

/// Labels along a leg starting at `from` and moving away from `prev`.
fn leg(d: &CoxeterDiagram, prev: usize, from: usize) -> Vec<u32> {
    let mut out = vec![label_value(d, prev, from)];
    let (mut p, mut x) = (prev, from);
    loop {
        let next: Vec<usize> = d.neighbours(x).into_iter().filter(|&y| y != p).collect();
        if next.len() != 1 {
            return out;
        }
        out.push(label_value(d, x, next[0]));
        p = x;
        x = next[0];
    }
}

fn label_value(d: &CoxeterDiagram, u: usize, v: usize) -> u32 {
    match d.label(u, v) {
        Some(Label::M(m)) => m,
        _ => unreachable!("path edges carry finite labels here"),
    }
}

fn classify_path(d: &CoxeterDiagram) -> IrreducibleCoxeterType {
    let n = d.n;
    let end = (0..n).find(|&u| d.neighbours(u).len() == 1).expect("a path has an end");
    let first = d.neighbours(end)[0];
    let seq = leg(d, end, first);
    let rev: Vec<u32> = seq.iter().rev().copied().collect();
    let big: Vec<usize> = seq.iter().enumerate().filter(|(_, &m)| m != 3).map(|(i, _)| i).collect();
    let oriented = |f: &dyn Fn(&[u32]) -> bool| f(&seq) || f(&rev);
    if big.is_empty() {
        return spherical(format!("A{n}"), n);
    }
    let is = |pattern: &[u32]| oriented(&|s: &[u32]| s == pattern);
    let end_only = |m: u32| oriented(&|s: &[u32]| s[0] == m && s[1..].iter().all(|&x| x == 3));
    if big.len() == 1 {
        if end_only(4) {
            return spherical(format!("B{n}"), n);
        }
        if is(&[3, 4, 3]) {
            return spherical("F4", 4);
        }
        if is(&[5, 3]) {
            return spherical("H3", 3);
        }
        if is(&[5, 3, 3]) {
            return spherical("H4", 4);
        }
        if is(&[3, 3, 4, 3]) {
            return affine("F̃4", 4);
        }
        if is(&[6, 3]) {
            return affine("G̃2", 2);
        }
        return IrreducibleCoxeterType::Other;
    }
    if big.len() == 2 && seq[0] == 4 && seq[n - 2] == 4 && seq[1..n - 2].iter().all(|&x| x == 3) {
        return affine(format!("C̃{}", n - 1), n - 1);
    }
    IrreducibleCoxeterType::Other
}

fn classify_star(d: &CoxeterDiagram, c: usize) -> IrreducibleCoxeterType {
    let n = d.n;
    let mut legs: Vec<Vec<u32>> = d.neighbours(c).into_iter().map(|x| leg(d, c, x)).collect();
    legs.sort_by_key(|l| (l.len(), l.clone()));
    let plain = |l: &Vec<u32>| l.iter().all(|&m| m == 3);
    let lens: Vec<usize> = legs.iter().map(Vec::len).collect();
    if legs.len() == 4 {
        return if lens == [1, 1, 1, 1] && legs.iter().all(plain) { affine("D̃4", 4) } else { IrreducibleCoxeterType::Other };
    }
    if legs.len() != 3 {
        return IrreducibleCoxeterType::Other;
    }
    if legs.iter().all(plain) {
        return match lens[..] {
            [1, 1, _] => spherical(format!("D{n}"), n),
            [1, 2, 2] => spherical("E6", 6),
            [1, 2, 3] => spherical("E7", 7),
            [1, 2, 4] => spherical("E8", 8),
            [2, 2, 2] => affine("Ẽ6", 6),
            [1, 3, 3] => affine("Ẽ7", 7),
            [1, 2, 5] => affine("Ẽ8", 8),
            _ => IrreducibleCoxeterType::Other,
        };
    }
    // B̃: legs (1, 1, k) with only the outermost edge of one leg labelled 4.
    if lens[0] == 1 && lens[1] == 1 && plain(&legs[0]) && plain(&legs[1]) {
        let long = &legs[2];
        let k = long.len();
        if long[k - 1] == 4 && long[..k - 1].iter().all(|&m| m == 3) {
            return affine(format!("B̃{}", n - 1), n - 1);
        }
    }
    IrreducibleCoxeterType::Other
}

fn classify_double_branch(d: &CoxeterDiagram, branch: &[usize]) -> IrreducibleCoxeterType {
    let n = d.n;
    if d.labels.values().any(|&l| l != Label::M(3)) {
        return IrreducibleCoxeterType::Other;
    }
    for &b in branch {
        let nb = d.neighbours(b);
        let leaves = nb.iter().filter(|&&x| d.neighbours(x).len() == 1).count();
        if nb.len() != 3 || leaves != 2 {
            return IrreducibleCoxeterType::Other;
        }
    }
    affine(format!("D̃{}", n - 1), n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(labels: &[u32]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::new(labels.len() + 1);
        for (i, &m) in labels.iter().enumerate() {
            d.set(i, i + 1, Label::M(m));
        }
        d
    }

    #[test]
    fn rank_two() {
        assert!(classify_irreducible(&path(&[7])).is_spherical());
        let dinf = CoxeterDiagram::new(2).with(0, 1, Label::Inf);
        assert!(classify_irreducible(&dinf).is_infinite_dihedral());
    }

    #[test]
    fn triangle_of_threes_is_affine_a2() {
        let d = path(&[3, 3]).with(0, 2, Label::M(3));
        assert_eq!(classify_irreducible(&d), affine("Ã2", 2));
    }

    #[test]
    fn paths() {
        assert_eq!(classify_irreducible(&path(&[3, 3, 3])).name(), "A4");
        assert_eq!(classify_irreducible(&path(&[3, 3, 4])).name(), "B4");
        assert_eq!(classify_irreducible(&path(&[4, 3, 3])).name(), "B4");
        assert_eq!(classify_irreducible(&path(&[3, 4, 3])).name(), "F4");
        assert_eq!(classify_irreducible(&path(&[3, 5])).name(), "H3");
        assert_eq!(classify_irreducible(&path(&[3, 3, 5])).name(), "H4");
        assert_eq!(classify_irreducible(&path(&[4, 4])).name(), "C̃2");
        assert_eq!(classify_irreducible(&path(&[4, 3, 3, 4])).name(), "C̃4");
        assert_eq!(classify_irreducible(&path(&[3, 6])).name(), "G̃2");
        assert_eq!(classify_irreducible(&path(&[3, 4, 3, 3])).name(), "F̃4");
        assert_eq!(classify_irreducible(&path(&[5, 5])), IrreducibleCoxeterType::Other);
        assert_eq!(classify_irreducible(&path(&[3, 5, 3])), IrreducibleCoxeterType::Other);
    }

    #[test]
    fn branched() {
        let mut d4 = CoxeterDiagram::new(4);
        for x in 1..4 {
            d4.set(0, x, Label::M(3));
        }
        assert_eq!(classify_irreducible(&d4).name(), "D4");
        assert_eq!(classify_irreducible(&d4.clone().with(0, 3, Label::M(4))).name(), "B̃3");
        let mut d5 = CoxeterDiagram::new(5);
        for x in 1..5 {
            d5.set(0, x, Label::M(3));
        }
        assert_eq!(classify_irreducible(&d5).name(), "D̃4");
        let mut d6 = CoxeterDiagram::new(6);
        for (u, v) in [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)] {
            d6.set(u, v, Label::M(3));
        }
        assert_eq!(classify_irreducible(&d6).name(), "D̃5");
    }

    #[test]
    fn infinity_in_rank_three_is_other() {
        let d = path(&[3, 3]).with(0, 1, Label::Inf);
        assert_eq!(classify_irreducible(&d), IrreducibleCoxeterType::Other);
    }
}
