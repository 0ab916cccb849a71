//! Table classification of Coxeter diagrams, checked against the Gram signature.

use peria::coxeter::{classify, CoxeterDiagram};

fn main() -> peria::Result<()> {
    for (name, text) in [
        ("A3", include_str!("../corpus/a3.cox")),
        ("D4", include_str!("../corpus/d4.cox")),
        ("affine C2", include_str!("../corpus/affine-c2.cox")),
        ("(3,3,4) triangle", "coxeter 3\nm 0 1 3\nm 1 2 3\nm 0 2 4\n"),
    ] {
        let d = CoxeterDiagram::parse(text)?;
        for c in classify(&d, true)?.components {
            let gram = c.gram.map(|g| format!("{:?}", g.verdict)).unwrap_or_default();
            println!("{name:<18} {:<12} gram {gram:<20} agree {:?}", c.kind.name(), c.agree);
        }
    }
    Ok(())
}
