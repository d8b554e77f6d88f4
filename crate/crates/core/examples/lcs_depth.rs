//! Magnus expansions and lower central series depth of words, in the free
//! group and in the surface group.

use alexinv::magnus::{free_lcs_depth, magnus_expand, surface_lcs_depth};
use alexinv::{FreeWord, Result};

pub fn run_example() -> Result<()> {
    let g = 2;
    let k = 5;
    let words = [
        ("a1", FreeWord::parse(g, "a1")?),
        ("[a1,b1]", FreeWord::parse(g, "a1 b1 a1^-1 b1^-1")?),
        ("[[a1,b1],a1]", FreeWord::commutator(&FreeWord::parse(g, "a1 b1 a1^-1 b1^-1")?, &FreeWord::a(g, 1)?)?),
        ("relator", FreeWord::relator(g)),
    ];
    println!("mu([a1,b1]) = {}", magnus_expand(&words[1].1, 4)?);
    for (name, w) in &words {
        println!(
            "{name:<14} free depth {}  surface depth {}",
            free_lcs_depth(w, k)?,
            surface_lcs_depth(w, k)?
        );
    }
    assert_eq!(surface_lcs_depth(&words[3].1, k)?, k);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
