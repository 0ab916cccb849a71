//! Disjoint parabolic cosets, the centraliser of the rotation subgroup and the fibers of Ω.

use std::collections::BTreeSet;

use peria::classify::{centraliser_of_rot, disjoint_coset_exists, omega_fibers};
use peria::presentation::parse_presentation;

fn main() -> peria::Result<()> {
    let i23 = parse_presentation(include_str!("../corpus/i2-3.peria"))?;
    let (s, t) = (i23.index_of("s")?, i23.index_of("t")?);
    let r = disjoint_coset_exists(&i23, &BTreeSet::from([s, t]), &BTreeSet::from([s]), &BTreeSet::from([t]))?;
    println!("I2(3): g<s> missing <t>: {} witness {:?} verified {:?}", r.exists, r.witness, r.verified);

    let none = BTreeSet::new();
    for (name, text) in [("dyer triangle", include_str!("../corpus/dyer-triangle.peria")), ("mixed periagroup", include_str!("../corpus/ex-periagroup-z6.peria"))] {
        let p = parse_presentation(text)?;
        let c = centraliser_of_rot(&p, &none)?;
        println!("{name}: Ψ = {:?}, Λ = {:?}, finite {}", c.psi, c.lambda, c.finite);
        let o = omega_fibers(&p, &none)?;
        for f in &o.fibers {
            println!("  fiber over {}: {:?}", f.vertex, f.size);
        }
        println!("  Ω: {:?} vertices, {:?} edges, join {:?}", o.omega_vertices, o.omega_edges, o.omega_is_join);
    }
    Ok(())
}
