//! Ranks of the lower central series quotients of the surface group,
//! against the count coming from the Poincare series `1 / (1 - 2g t + t^2)`.

use alexinv::checks::lie_dims_generating_function;
use alexinv::magnus::graded_lie_dims;
use alexinv::Result;

pub fn run_example() -> Result<()> {
    for g in 2..=3 {
        let dims = graded_lie_dims(g, 6, 6)?;
        let oracle = lie_dims_generating_function(g, 6);
        println!("g={g}");
        for n in 1..6 {
            println!(
                "  n={n}: free {:>5}  ideal {:>5}  quotient {:>5}  series {:>5}",
                dims.free_dims[n - 1],
                dims.ideal_dims[n - 1],
                dims.dims[n - 1],
                oracle[n - 1]
            );
            assert_eq!(oracle[n - 1], dims.dims[n - 1].into());
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
