//! Smith normal form of a small integer matrix, with the unimodular factors.

use abelian_tv::intlinalg::{kernel_basis, smith_normal_form, solve_integer, to_bigints, IntMatrix};

fn main() -> abelian_tv::error::Result<()> {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3)?;
    let snf = smith_normal_form(&a);
    println!("A = {a:?}");
    println!("invariant factors: {:?}", snf.invariant_factors());
    println!("rank: {}", snf.rank);

    // U A V = D with U, V unimodular
    let d = snf.u.mul(&a)?.mul(&snf.v)?;
    assert_eq!(d, snf.diagonal_matrix());
    println!("U A V = {d:?}");

    println!("kernel basis: {:?}", kernel_basis(&a));
    let b = to_bigints(&[2, 6, -2]);
    match solve_integer(&a, &b)? {
        Some(x) => println!("A x = {b:?} has integer solution {x:?}"),
        None => println!("A x = {b:?} has no integer solution"),
    }
    Ok(())
}
