//! Canonical forms, equality and lengths in the infinite dihedral group and in a Dyer group.

use peria::presentation::parse_presentation;
use peria::words::Words;

fn main() -> peria::Result<()> {
    let dinf = parse_presentation(include_str!("../corpus/dinf.peria"))?;
    let words = Words::new(&dinf);
    for text in ["x1 x2 x1 x1", "x1 x2 x2 x1", "x2 x1 x2 x1 x2"] {
        let w = words.parse_word(text)?;
        let c = words.canonical_form(&w)?;
        println!("{text:>16}  ->  {}", words.format_word(c.word()));
    }

    let dyer = parse_presentation(include_str!("../corpus/dyer-triangle.peria"))?;
    let words = Words::new(&dyer);
    let a = words.parse_word("s t s u")?;
    let b = words.parse_word("t s t u")?;
    println!("s t s u == t s t u: {}", words.equal(&a, &b)?);
    let w = words.parse_word("u^3 s t u^2")?;
    println!("S-length of u^3 s t u^2: {}", words.word_length_s(&w)?);
    let red = words.cyclic_reduce_and_support(&w)?;
    println!("cyclic representative {}, essential support size {}", words.format_word(&red.representative), red.support.len());
    Ok(())
}
