//! The separating twist `T_c` on one handle: its effect on `[a1, a2]` in `A`
//! and the valuation of `w = (a1 - 1)(a2 - 1)[a1, b1]`.

use alexinv::checks::lemma_vector;
use alexinv::fox::{a_valuation, equivalent_mod_theta, is_multiple_of_theta};
use alexinv::mapclass::{separating_twist, twist_difference};
use alexinv::{FreeWord, Result};

pub fn run_example() -> Result<()> {
    let g = 2;
    let t = separating_twist(g, 1)?;
    for i in 1..=2 * g {
        println!("{}: x{i} -> {}", t.name(), t.endo().image(i));
    }
    let d = twist_difference(t.endo(), &FreeWord::a(g, 1)?, &FreeWord::a(g, 2)?)?;
    let w = lemma_vector(g)?;
    println!("class(T_c[a1,a2]) - class([a1,a2]) = {d}");
    println!("(a1 - 1)(a2 - 1)[a1,b1]             = {w}");
    assert!(equivalent_mod_theta(&d, &w));

    assert!(is_multiple_of_theta(&w).is_none());
    let r = a_valuation(&w, 3, 5)?;
    println!("w is nonzero; a_valuation = {} (searched up to 3, truncation {}, stable at {})", r.value, r.truncation, r.truncation + 1);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
