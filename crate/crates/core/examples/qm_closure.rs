//! Quasi-median closure of the 6-cycle and of the wheel graph.

use peria::graphcore::{families, qm_closure};

fn main() -> peria::Result<()> {
    for (name, g) in [("6-cycle", families::cycle(6)), ("wheel", families::wheel_of_squares())] {
        let c = qm_closure(&g)?;
        println!("{name}: {} vertices -> {} vertices, {} edges", g.len(), c.graph.len(), c.graph.edge_count());
        println!("  embedding {:?}", c.embedding);
        println!("  checks {:?}", c.checks);
    }
    Ok(())
}
