//! Balls in Cayley graphs: sphere sizes in both generating modes and the hyperplanes of a finite group.

use peria::cayley::{explore_ball, BallOptions, GenMode};
use peria::presentation::parse_presentation;
use peria::words::Word;

fn main() -> peria::Result<()> {
    let p = parse_presentation(include_str!("../corpus/ex-periagroup-z6.peria"))?;
    for mode in [GenMode::Full, GenMode::S] {
        let ball = explore_ball(&p, &Word::empty(), BallOptions::new(5, mode))?;
        println!("mixed periagroup, {mode:?}: spheres {:?}", ball.sphere_sizes());
    }

    let i25 = parse_presentation(include_str!("../corpus/i2-5.peria"))?;
    let ball = explore_ball(&i25, &Word::empty(), BallOptions::new(10, GenMode::Full))?;
    let hs = ball.hyperplanes()?;
    println!("I2(5): {} elements, {} hyperplanes", ball.len(), hs.len());
    print!("{}", ball.vertex_table(&i25));
    Ok(())
}
