//! Dimensions of `J^n A / J^{n+1} A` from the truncated filtration, next to
//! the Weyl dimension of `V(n l1 + l2)`.

use alexinv::fox::graded_dimension;
use alexinv::symrep::weyl_dim;
use alexinv::{DominantWeight, Result};

pub fn run_example() -> Result<()> {
    println!("{:>3} {:>3} {:>6} {:>10} {:>12}", "g", "n", "trunc", "dim gr_n A", "dim V(nl1+l2)");
    for (g, n) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)] {
        let report = graded_dimension(g, n, n + 2)?;
        let weight = DominantWeight::combo(g, n as u32, 2)?;
        let weyl = weyl_dim(&weight);
        println!("{g:>3} {n:>3} {:>6} {:>10} {:>12}", report.truncation, report.value, weyl);
        assert_eq!(weyl, report.value.into());
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
