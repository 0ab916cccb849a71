//! Contracting and Morse verdicts for individual elements of graph products.

use peria::classify::{element_contracting_gp, element_morse_gp};
use peria::presentation::parse_presentation;
use peria::words::Words;

fn main() -> peria::Result<()> {
    for (file, text, elements) in [
        ("raag-path", include_str!("../corpus/raag-path.peria"), vec!["a", "a c", "a b c", "b"]),
        ("c4-racg", include_str!("../corpus/c4-racg.peria"), vec!["a b", "a b c d"]),
        ("pentagon", include_str!("../corpus/pentagon-racg.peria"), vec!["a c", "a c e", "a b c d e"]),
    ] {
        let p = parse_presentation(text)?;
        let words = Words::new(&p);
        for e in elements {
            let g = words.parse_word(e)?;
            let c = element_contracting_gp(&p, &g)?;
            let m = element_morse_gp(&p, &g)?;
            println!("{file:<10} {e:<8} contracting {:<8} morse {:<8} {}", c.verdict.as_str(), m.verdict.as_str(), c.rule);
        }
    }
    Ok(())
}
