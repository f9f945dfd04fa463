//! Exact arithmetic with sums of roots of unity.

use abelian_tv::cyclotomic::PhaseSum;

fn main() -> abelian_tv::error::Result<()> {
    // the fifth roots of unity sum to zero
    let roots: PhaseSum = (0..5)
        .map(|k| PhaseSum::root_of_unity(k, 5))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    println!("sum of fifth roots of unity: {roots}  zero: {}", roots.is_zero());

    // quadratic Gauss sum over Z/7: its square is -7
    let g: PhaseSum = (0..7)
        .map(|k| PhaseSum::root_of_unity(k * k, 7))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum();
    let square = &g * &g;
    println!("g = {g}");
    println!("g^2 = {square} = {:?}", square.to_rational().map(|q| q.to_string()));
    println!("g ~ {}", g.render_float());

    // e(1/4) + e(3/4) cancels even though no term matches another
    let i = PhaseSum::root_of_unity(1, 4)?;
    println!("i + conj(i) = {}", &i + &i.conj());
    Ok(())
}
