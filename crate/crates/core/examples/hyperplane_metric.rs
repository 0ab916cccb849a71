//! Weighted clique metrics: δ along geodesics against the sum over separating hyperplanes.

use peria::graphcore::{compute_hyperplanes, delta_distance, families, CliqueMetrics};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> peria::Result<()> {
    let hs = compute_hyperplanes(families::product(&families::cycle(6), &families::complete(3)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cm = CliqueMetrics::random_coherent(&hs, &mut rng, 5);
    for (x, y) in [(0, 10), (1, 16), (4, 13)] {
        let d = delta_distance(&hs, &cm, x, y)?;
        println!("d({x},{y}) = {}, δ = {} (hyperplane sum {})", hs.distance(x, y), d.value, d.hyperplane_sum);
    }
    Ok(())
}
