//! Tabulated highest weight vectors: verify them under the raising
//! operators, then push them into `A` and measure their J-adic valuation.

use alexinv::fox::{a_valuation, vanishes_in_a};
use alexinv::symrep::{grading_map, table1_vectors, verify_highest_weight};
use alexinv::Result;

pub fn run_example() -> Result<()> {
    for g in 2..=3 {
        for n in 1..=2 {
            println!("g={g} n={n}");
            for row in table1_vectors(g, n)? {
                let hw = verify_highest_weight(&row.vector, &row.weight)?;
                let image = grading_map(&row.vector)?;
                let val = if vanishes_in_a(&image) {
                    "zero in A".to_string()
                } else if g == 2 {
                    let v = a_valuation(&image, n + 1, n + 3)?.value;
                    if v > n { format!("in J^{}A", v) } else { format!("valuation {v}") }
                } else {
                    "valuation skipped".to_string()
                };
                println!("  {:<42} weight {:<8} highest: {hw:<5} {val}", row.label, row.weight.to_string());
                assert!(hw);
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
