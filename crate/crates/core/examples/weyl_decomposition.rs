//! Summands of `Sym^n H (x) Lambda^2 H` and the dimension identity.

use alexinv::symrep::decomposition_check;
use alexinv::Result;

pub fn run_example() -> Result<()> {
    for g in 2..=4 {
        for n in 1..=4 {
            let r = decomposition_check(g, n)?;
            let parts: Vec<String> = r
                .summands
                .iter()
                .map(|s| {
                    let mult = if s.multiplicity == 1 { String::new() } else { format!("{}", s.multiplicity) };
                    format!("{mult}V({})[{}]", s.label, s.dim)
                })
                .collect();
            println!("g={g} n={n}: {} = {} (ambient {})", parts.join(" + "), r.total, r.ambient_dim);
            assert!(r.pass);
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
