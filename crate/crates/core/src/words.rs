//! Words over the vertex groups, graphical reduction and canonical forms.
//!
//! A word is a sequence of syllables, each a non-trivial element of one vertex group. Three moves
//! act on words: deleting a trivial syllable, fusing two adjacent syllables from the same vertex
//! group, and replacing an alternating window `⟨a,b⟩^λ` by `⟨b,a⟩^λ` along an edge of label `λ`.
//! A word is graphically reduced when no sequence of moves shortens it. Reduced words of one element
//! differ only by dihedral moves, so the least word of that move-class is a canonical form.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{PeriagroupPresentation, VertexGroupSpec, VertexSet};

/// Default cap on the size of a dihedral move-class.
pub const DEFAULT_CLASS_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub vertex: usize,
    pub elem: i64,
}

impl Syllable {
    pub fn new(vertex: usize, elem: i64) -> Self {
        Syllable { vertex, elem }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(pub Vec<Syllable>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn support(&self) -> VertexSet {
        self.0.iter().map(|s| s.vertex).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// The least graphically reduced word of a group element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm(Word);

impl CanonicalForm {
    pub fn identity() -> Self {
        CanonicalForm(Word::empty())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// Number of syllables, which is the distance to the identity in the full-generator Cayley graph.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

/// Result of cyclic reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicReduction {
    /// Least word among the cyclic permutations and dihedral moves of a cyclically reduced conjugate.
    pub representative: Word,
    /// Its support, the essential support of the original element.
    pub support: VertexSet,
}

enum Explored {
    Shorter(Vec<Syllable>),
    Class(Vec<Vec<Syllable>>),
}

/// Word operations for one presentation.
#[derive(Debug, Clone, Copy)]
pub struct Words<'p> {
    p: &'p PeriagroupPresentation,
    bound: usize,
}

impl<'p> Words<'p> {
    pub fn new(p: &'p PeriagroupPresentation) -> Self {
        Words { p, bound: DEFAULT_CLASS_BOUND }
    }

    pub fn with_bound(p: &'p PeriagroupPresentation, bound: usize) -> Self {
        Words { p, bound }
    }

    pub fn presentation(&self) -> &'p PeriagroupPresentation {
        self.p
    }

    /// Rejects syllables on opaque vertices or with out-of-range elements.
    pub fn check(&self, w: &Word) -> Result<()> {
        for s in &w.0 {
            if s.vertex >= self.p.len() {
                return Err(Error::Precondition(format!("vertex index {} out of range", s.vertex)));
            }
            let g = self.p.group(s.vertex);
            if g.spec.is_opaque() {
                return Err(Error::OpaqueVertex(self.p.name(s.vertex).into()));
            }
            if g.normalize(s.elem) != Some(s.elem) {
                return Err(Error::InvalidElement { vertex: self.p.name(s.vertex).into(), elem: s.elem });
            }
        }
        Ok(())
    }

    /// Deletes trivial syllables and fuses adjacent syllables of one vertex group.
    fn free_reduce(&self, syls: impl IntoIterator<Item = Syllable>) -> Vec<Syllable> {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syls {
            if s.elem == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.vertex == s.vertex => {
                    let e = self.p.group(s.vertex).mul(last.elem, s.elem);
                    if e == 0 {
                        out.pop();
                    } else {
                        last.elem = e;
                    }
                }
                _ => out.push(s),
            }
        }
        out
    }

    /// Words obtained from `w` by one dihedral move.
    fn dihedral_neighbours(&self, w: &[Syllable], out: &mut Vec<Vec<Syllable>>) {
        let n = w.len();
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let Some(lambda) = self.p.label(a.vertex, b.vertex) else { continue };
            let lambda = lambda as usize;
            if i + lambda > n {
                continue;
            }
            let alternating = (0..lambda).all(|j| w[i + j] == if j % 2 == 0 { a } else { b });
            if !alternating {
                continue;
            }
            let mut x = w.to_vec();
            for j in 0..lambda {
                x[i + j] = if j % 2 == 0 { b } else { a };
            }
            out.push(x);
        }
    }

    /// Breadth-first search of the move-class of a fused word. Stops as soon as some word in the
    /// class admits a fusion (or, in cyclic mode, a fusion of its two ends).
    fn explore(&self, start: Vec<Syllable>, cyclic: bool) -> Result<Explored> {
        let mut seen: HashSet<Vec<Syllable>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut order = Vec::new();
        let mut next = Vec::new();
        while let Some(w) = queue.pop_front() {
            let n = w.len();
            if w.windows(2).any(|p| p[0].vertex == p[1].vertex) {
                return Ok(Explored::Shorter(self.free_reduce(w)));
            }
            if cyclic && n >= 2 && w[0].vertex == w[n - 1].vertex {
                let g = self.p.group(w[0].vertex);
                let mut x: Vec<Syllable> = w[1..n - 1].to_vec();
                x.push(Syllable::new(w[0].vertex, g.mul(w[n - 1].elem, w[0].elem)));
                return Ok(Explored::Shorter(self.free_reduce(x)));
            }
            next.clear();
            self.dihedral_neighbours(&w, &mut next);
            if cyclic && n >= 2 {
                let mut left = w[1..].to_vec();
                left.push(w[0]);
                next.push(left);
                let mut right = vec![w[n - 1]];
                right.extend_from_slice(&w[..n - 1]);
                next.push(right);
            }
            for x in next.drain(..) {
                if seen.insert(x.clone()) {
                    if seen.len() > self.bound {
                        return Err(Error::Resource { what: "dihedral move-class".into(), bound: self.bound });
                    }
                    queue.push_back(x);
                }
            }
            order.push(w);
        }
        Ok(Explored::Class(order))
    }

    fn reduce_to_class(&self, w: &Word, cyclic: bool) -> Result<Vec<Vec<Syllable>>> {
        self.check(w)?;
        let mut cur = self.free_reduce(w.0.iter().copied());
        loop {
            match self.explore(cur, cyclic)? {
                Explored::Shorter(x) => cur = x,
                Explored::Class(class) => return Ok(class),
            }
        }
    }

    /// A graphically reduced word representing the same element.
    pub fn graphically_reduce(&self, w: &Word) -> Result<Word> {
        let class = self.reduce_to_class(w, false)?;
        Ok(Word(class.into_iter().next().unwrap_or_default()))
    }

    pub fn is_graphically_reduced(&self, w: &Word) -> Result<bool> {
        Ok(w.0.iter().all(|s| s.elem != 0) && self.graphically_reduce(w)?.len() == w.len())
    }

    /// All graphically reduced words of the element, i.e. the dihedral move-class of a reduced word.
    pub fn move_class(&self, w: &Word) -> Result<Vec<Word>> {
        let mut class: Vec<Word> = self.reduce_to_class(w, false)?.into_iter().map(Word).collect();
        class.sort();
        Ok(class)
    }

    pub fn canonical_form(&self, w: &Word) -> Result<CanonicalForm> {
        let class = self.reduce_to_class(w, false)?;
        Ok(CanonicalForm(Word(class.into_iter().min().unwrap_or_default())))
    }

    pub fn multiply(&self, a: &Word, b: &Word) -> Result<CanonicalForm> {
        self.canonical_form(&a.concat(b))
    }

    pub fn inverse_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|s| Syllable::new(s.vertex, self.p.group(s.vertex).inv(s.elem))).collect())
    }

    pub fn invert(&self, w: &Word) -> Result<CanonicalForm> {
        self.check(w)?;
        self.canonical_form(&self.inverse_word(w))
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool> {
        Ok(self.canonical_form(a)? == self.canonical_form(b)?)
    }

    /// Distance to the identity in the Cayley graph over the union of the `S_G ∪ S_G⁻¹`.
    pub fn word_length_s(&self, w: &Word) -> Result<u64> {
        let r = self.graphically_reduce(w)?;
        Ok(r.0.iter().map(|s| self.p.group(s.vertex).s_length(s.elem)).sum())
    }

    /// Syllable length of `a⁻¹ b`.
    pub fn distance(&self, a: &Word, b: &Word) -> Result<usize> {
        Ok(self.graphically_reduce(&self.inverse_word(a).concat(b))?.len())
    }

    /// S-length of `a⁻¹ b`.
    pub fn distance_s(&self, a: &Word, b: &Word) -> Result<u64> {
        self.word_length_s(&self.inverse_word(a).concat(b))
    }

    pub fn cyclic_reduce_and_support(&self, w: &Word) -> Result<CyclicReduction> {
        let class = self.reduce_to_class(w, true)?;
        let rep = Word(class.into_iter().min().unwrap_or_default());
        let support = rep.support();
        Ok(CyclicReduction { representative: rep, support })
    }

    /// Parses `name`, `name^k` and `name:idx` tokens separated by whitespace; `1` is the identity.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut col = 1;
        for tok in text.split_whitespace() {
            let pos = text[col - 1..].find(tok).map(|i| i + col).unwrap_or(col);
            col = pos + tok.len();
            if tok == "1" {
                continue;
            }
            let err = |msg: String| Error::Parse { line: 1, col: pos, msg };
            let (name, elem) = if let Some((n, idx)) = tok.split_once(':') {
                let e: i64 = idx.parse().map_err(|_| err(format!("bad element index in `{tok}`")))?;
                (n, e)
            } else if let Some((n, k)) = tok.split_once('^') {
                let e: i64 = k.parse().map_err(|_| err(format!("bad exponent in `{tok}`")))?;
                (n, e)
            } else {
                (tok, 1)
            };
            let v = self.p.index_of(name).map_err(|_| err(format!("unknown vertex `{name}`")))?;
            let g = self.p.group(v);
            let elem = match &g.spec {
                VertexGroupSpec::Opaque(_) => return Err(Error::OpaqueVertex(name.into())),
                VertexGroupSpec::Table(_) if !tok.contains(':') => {
                    return Err(err(format!("table vertex `{name}` needs an element index `{name}:i`")))
                }
                _ => g.normalize(elem).ok_or_else(|| err(format!("element out of range in `{tok}`")))?,
            };
            out.push(Syllable::new(v, elem));
        }
        Ok(Word(out))
    }

    pub fn format_word(&self, w: &Word) -> String {
        WordDisplay { p: self.p, w }.to_string()
    }
}

/// Displays a word with vertex names.
pub struct WordDisplay<'a> {
    pub p: &'a PeriagroupPresentation,
    pub w: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.w.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.p.name(s.vertex);
            match self.p.group(s.vertex).spec {
                VertexGroupSpec::Table(_) => write!(f, "{name}:{}", s.elem)?,
                _ if s.elem == 1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{}", s.elem)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn load(text: &str) -> PeriagroupPresentation {
        parse_presentation(text).unwrap()
    }

    const DINF: &str = include_str!("../corpus/dinf.peria");
    const EXAMPLE: &str = include_str!("../corpus/ex-periagroup-z6.peria");

    #[test]
    fn involution_squares_cancel() {
        let p = load(DINF);
        let w = Words::new(&p);
        let r = w.graphically_reduce(&w.parse_word("x1 x2 x1 x1").unwrap()).unwrap();
        assert_eq!(w.format_word(&r), "x1 x2");
    }

    #[test]
    fn dihedral_window_keeps_length_and_has_two_spellings() {
        let p = load(EXAMPLE);
        let w = Words::new(&p);
        let x = w.parse_word("v1 v2 v1 v2 v1").unwrap();
        assert_eq!(w.graphically_reduce(&x).unwrap().len(), 5);
        let class = w.move_class(&x).unwrap();
        let shown: Vec<String> = class.iter().map(|c| w.format_word(c)).collect();
        assert_eq!(shown, vec!["v1 v2 v1 v2 v1", "v2 v1 v2 v1 v2"]);
        let y = w.parse_word("v2 v1 v2 v1 v2").unwrap();
        assert_eq!(w.canonical_form(&x).unwrap(), w.canonical_form(&y).unwrap());
    }

    #[test]
    fn long_alternation_shortens() {
        let p = load(EXAMPLE);
        let w = Words::new(&p);
        let x = w.parse_word("v1 v2 v1 v2 v1 v2").unwrap();
        assert_eq!(w.graphically_reduce(&x).unwrap().len(), 4);
    }

    #[test]
    fn commuting_cyclic_syllables_fuse_across() {
        let p = load(EXAMPLE);
        let w = Words::new(&p);
        let c = w.canonical_form(&w.parse_word("v3 v2 v3").unwrap()).unwrap();
        assert_eq!(w.format_word(c.word()), "v2 v3^2");
    }

    #[test]
    fn inverse_of_order_three_generator() {
        let p = load(EXAMPLE);
        let w = Words::new(&p);
        let c = w.invert(&w.parse_word("v3").unwrap()).unwrap();
        assert_eq!(w.format_word(c.word()), "v3^2");
    }

    #[test]
    fn s_length_uses_inverses() {
        let p = load(EXAMPLE);
        let w = Words::new(&p);
        assert_eq!(w.word_length_s(&w.parse_word("v3^2").unwrap()).unwrap(), 1);
        assert_eq!(w.word_length_s(&w.parse_word("v4^3 v1").unwrap()).unwrap(), 4);
    }

    #[test]
    fn cyclic_reduction_examples() {
        let p = load(include_str!("../corpus/i2-3.peria"));
        let w = Words::new(&p);
        let r = w.cyclic_reduce_and_support(&w.parse_word("s t s").unwrap()).unwrap();
        assert_eq!(r.representative.len(), 1);
        let raag = load(include_str!("../corpus/free2.peria"));
        let w = Words::new(&raag);
        let r = w.cyclic_reduce_and_support(&w.parse_word("a b a^-1").unwrap()).unwrap();
        assert_eq!(w.format_word(&r.representative), "b");
        assert_eq!(r.support, VertexSet::from([1]));
    }

    #[test]
    fn cyclic_reduction_inside_commuting_pair() {
        let p = load(include_str!("../corpus/ex-periagroup-z6.peria"));
        let w = Words::new(&p);
        let r = w.cyclic_reduce_and_support(&w.parse_word("v2 v3 v2").unwrap()).unwrap();
        assert_eq!(w.format_word(&r.representative), "v3");
        assert_eq!(r.support, VertexSet::from([2]));
    }

    #[test]
    fn opaque_vertices_are_rejected() {
        let p = load(include_str!("../corpus/ex-periagroup.peria"));
        let w = Words::new(&p);
        assert_eq!(w.parse_word("v4").unwrap_err(), Error::OpaqueVertex("v4".into()));
    }

    #[test]
    fn class_bound_is_enforced() {
        let p = load(include_str!("../corpus/f2-times-f2.peria"));
        let w = Words::with_bound(&p, 10);
        let x = w.parse_word("a c b d a c b d").unwrap();
        assert!(matches!(w.canonical_form(&x), Err(Error::Resource { .. })));
    }

    #[test]
    fn table_words_parse_and_multiply() {
        let p = load(include_str!("../corpus/s3-table.peria"));
        let w = Words::new(&p);
        let x = w.parse_word("g:3 g:3").unwrap();
        assert!(w.canonical_form(&x).unwrap().is_identity());
        assert!(w.parse_word("g").is_err());
    }
}
