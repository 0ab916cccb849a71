//! Spherical and conjugacy growth series, rate estimates and the transcendence verdict.

use peria::cayley::GenMode;
use peria::growth::{asymptotic_diagnostic, conjugacy_growth, rate_estimate, spherical_growth, transcendence_verdict, ConjugacyMethod};
use peria::presentation::parse_presentation;

fn main() -> peria::Result<()> {
    let f2 = parse_presentation(include_str!("../corpus/free2.peria"))?;
    let s = spherical_growth(&f2, 8, GenMode::S)?;
    let c = conjugacy_growth(&f2, 8, ConjugacyMethod::ExactGp)?;
    println!("F2 spheres     {s}");
    println!("F2 conjugacy   {} (saturation agrees: {:?})", c.series, c.cross_checked);
    let diag = asymptotic_diagnostic(&c.series, 3.0, 3, 8);
    println!("c(n)·n/3^n in [{:.3}, {:.3}]", diag.min, diag.max);
    if let Some(rate) = rate_estimate(&s) {
        println!("growth rate in [{:.3}, {:.3}]", rate.lower, rate.upper);
    }

    let z2 = parse_presentation(include_str!("../corpus/z2.peria"))?;
    let c = conjugacy_growth(&z2, 8, ConjugacyMethod::Saturation { slack: 2 })?;
    println!("Z^2 conjugacy  {} (stable: {:?})", c.series, c.stable);

    for (name, text) in [
        ("pentagon RACG", include_str!("../corpus/pentagon-racg.peria")),
        ("Z^2", include_str!("../corpus/z2.peria")),
        ("F2 x F2", include_str!("../corpus/f2-times-f2.peria")),
    ] {
        let r = transcendence_verdict(&parse_presentation(text)?)?;
        println!("{name:<14} transcendental: {} ({})", r.verdict.as_str(), r.rule);
    }
    Ok(())
}
