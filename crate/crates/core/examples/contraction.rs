//! Projection diameters and skewering witnesses for `ab` in Z*Z and in Z×Z.

use peria::cayley::{contraction_profile, skewer_witness, DEFAULT_SAMPLE_CAP};
use peria::presentation::parse_presentation;
use peria::words::Words;

fn main() -> peria::Result<()> {
    for (name, text) in [("Z*Z", include_str!("../corpus/free2.peria")), ("ZxZ", include_str!("../corpus/z2.peria"))] {
        let p = parse_presentation(text)?;
        let g = Words::new(&p).parse_word("a b")?;
        let prof = contraction_profile(&p, &g, 5, DEFAULT_SAMPLE_CAP, 0)?;
        println!("{name}: projection diameters by radius {:?}", prof.per_radius);
        match skewer_witness(&p, &g, 4)? {
            Some(w) => println!("  skewer: g^{} on hyperplane {}, L = {}, well-separated {}", w.n, w.hyperplane, w.l, w.well_separated),
            None => println!("  no skewer witness"),
        }
    }
    Ok(())
}
