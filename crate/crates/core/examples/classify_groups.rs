//! Finiteness, contracting elements, acylindrical hyperbolicity and virtual abelianness of corpus groups.

use peria::classify::{acylindrically_hyperbolic, contracting_exists, is_finite, virtually_abelian};
use peria::presentation::parse_presentation;

fn main() -> peria::Result<()> {
    let corpus = [
        ("D∞", include_str!("../corpus/dinf.peria")),
        ("pentagon RACG", include_str!("../corpus/pentagon-racg.peria")),
        ("C4 RACG", include_str!("../corpus/c4-racg.peria")),
        ("RAAG on a path", include_str!("../corpus/raag-path.peria")),
        ("affine A2", include_str!("../corpus/affine-a2.peria")),
        ("mixed periagroup", include_str!("../corpus/ex-periagroup.peria")),
        ("Z2 * Z3", include_str!("../corpus/z2-free-z3.peria")),
    ];
    println!("{:<18} {:>7} {:>12} {:>8} {:>9}", "group", "finite", "contracting", "acylhyp", "virt.ab.");
    for (name, text) in corpus {
        let p = parse_presentation(text)?;
        println!(
            "{name:<18} {:>7} {:>12} {:>8} {:>9}",
            is_finite(&p)?.verdict.as_str(),
            contracting_exists(&p)?.verdict.as_str(),
            acylindrically_hyperbolic(&p)?.verdict.as_str(),
            virtually_abelian(&p)?.verdict.as_str(),
        );
    }
    let p = parse_presentation(include_str!("../corpus/pentagon-racg.peria"))?;
    let r = acylindrically_hyperbolic(&p)?;
    println!("\npentagon RACG: {} ({})", r.verdict.as_str(), r.rule);
    Ok(())
}
