//! Paraclique, mediangle and quasi-median recognition on small graphs.

use peria::graphcore::{check_axioms, families, FiniteGraph};

fn main() -> peria::Result<()> {
    let graphs: [(&str, FiniteGraph); 6] = [
        ("6-cycle", families::cycle(6)),
        ("wheel of three squares", families::wheel_of_squares()),
        ("house", families::house()),
        ("K2,3", families::complete_bipartite(2, 3)),
        ("3-cube", families::cube(3)),
        ("Hamming H(3,2)", families::hamming(&[3, 2])),
    ];
    println!("{:<24} {:>10} {:>10} {:>12}", "graph", "paraclique", "mediangle", "quasi-median");
    for (name, g) in &graphs {
        let r = check_axioms(g)?;
        println!("{name:<24} {:>10} {:>10} {:>12}", r.paraclique, r.mediangle, r.quasimedian);
        if let Some(cx) = &r.clique_gated.counterexample {
            println!("    ungated: {cx:?}");
        }
    }
    Ok(())
}
