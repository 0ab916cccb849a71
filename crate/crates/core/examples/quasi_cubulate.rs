//! Quasi-cubulation of spaces with partitions.

use peria::graphcore::{quasi_cubulate, PartitionSpace, DEFAULT_ORIENTATION_BOUND};

fn main() -> peria::Result<()> {
    for text in [include_str!("../corpus/triangle.parts"), include_str!("../corpus/square.parts"), "4\n0 1 | 2 3\n0 | 1 2 3\n"] {
        let ps = PartitionSpace::parse(text)?;
        let qc = quasi_cubulate(&ps, DEFAULT_ORIENTATION_BOUND)?;
        println!("{} partitions of {} points:", ps.partitions.len(), ps.ground);
        print!("{}", qc.graph.to_text());
        println!("  principal vertices {:?}", qc.principal);
    }
    Ok(())
}
