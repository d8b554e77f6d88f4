//! Where the differences `T[x, y] - [x, y]` sit in the J-adic filtration.
//! Exploratory only: a finite sample at a fixed truncation.

use alexinv::mapclass::{kg1_probe, separating_twist};
use alexinv::{FreeWord, Result};

pub fn run_example() -> Result<()> {
    let g = 2;
    let twists = vec![separating_twist(g, 1)?];
    let mut pairs = Vec::new();
    for i in 1..=2 * g {
        for j in i + 1..=2 * g {
            pairs.push((FreeWord::generator(g, i)?, FreeWord::generator(g, j)?));
        }
    }
    let report = kg1_probe(g, &twists, &pairs, 3, 5)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    assert!(report.valuations.iter().filter_map(|v| v.valuation).all(|v| v >= 2));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
