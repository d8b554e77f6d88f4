//! Johnson filtration depth of separating twists, and `tau_2` on the
//! generators.

use alexinv::magnus::{johnson_depth, johnson_tau, magnus_expand};
use alexinv::mapclass::separating_twist;
use alexinv::{EndoImages, Result};

pub fn run_example() -> Result<()> {
    let k = 5;
    for g in 2..=4 {
        for h in 1..g {
            let t = separating_twist(g, h)?;
            let depth = johnson_depth(t.endo(), k)?;
            println!("g={g} {}: depth {depth}", t.name());
            assert_eq!(depth, 2);
        }
    }
    println!("identity: depth {} (cap k - 1)", johnson_depth(&EndoImages::identity(2), k)?);

    let t = separating_twist(2, 1)?;
    println!("mu(T_c(a1)) = {}", magnus_expand(t.endo().image(1), 4)?);
    let tau = johnson_tau(t.endo(), 2, 4)?;
    for (i, c) in tau.components.iter().enumerate() {
        println!("tau_2(T_c)(x{}) = {c}", i + 1);
    }
    assert!(johnson_tau(t.endo(), 1, 4)?.is_zero());
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
