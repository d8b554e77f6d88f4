//! Fox derivatives of the surface relator and of a commutator, and the
//! fundamental formula `sum_j D_j(w) (x_j - 1) = phi(w) - 1`.

use alexinv::fox::{alexander_class, fox_derivative, fox_vector, theta};
use alexinv::{FreeWord, LaurentPoly, Result};

pub fn run_example() -> Result<()> {
    let g = 2;
    let relator = FreeWord::relator(g);
    println!("relator: {relator}");
    let row = fox_vector(&relator);
    println!("Fox derivatives: {row}");
    assert_eq!(row, theta(g));

    let w = FreeWord::parse(g, "a1 b2^-1 a1 a2^2 b1")?;
    let mut sum = LaurentPoly::zero(g);
    for j in 1..=2 * g {
        let x_minus_1 = &LaurentPoly::var(g, j) - &LaurentPoly::one(g);
        sum = &sum + &(&fox_derivative(j, &w) * &x_minus_1);
    }
    let rhs = &LaurentPoly::group_element(g, &w.abelianize()) - &LaurentPoly::one(g);
    println!("w = {w}");
    println!("  sum_j D_j(w)(x_j - 1) = {sum}");
    println!("  phi(w) - 1            = {rhs}");
    assert_eq!(sum, rhs);

    let c = FreeWord::commutator(&FreeWord::a(g, 1)?, &FreeWord::b(g, 1)?)?;
    println!("class of [a1, b1] in A: {}", alexander_class(&c)?);
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
