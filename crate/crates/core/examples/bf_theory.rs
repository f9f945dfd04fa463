//! Closed-form BF partition functions and expectation values.

use abelian_tv::bf::{bf_expectation, bf_partition, reciprocity_factor, BfObservable};
use abelian_tv::complex::{lens, rp3, Cycle};
use abelian_tv::homology::homology_h1;

fn main() -> abelian_tv::error::Result<()> {
    for c in [rp3(), lens(3)?, lens(4)?] {
        let h = homology_h1(&c)?;
        let lf = h.linking_form()?;
        let values: Vec<String> = (1..=6)
            .map(|n| bf_partition(&lf, n).map(|z| z.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{:<8} Z_BF(N=1..6) = {}", c.name, values.join(", "));
    }

    let c = rp3();
    let h = homology_h1(&c)?;
    let lf = h.linking_form()?;
    let z1 = Cycle::primal(&[1, 0, 0, 1]);
    let z2 = Cycle::dual(&[0, 0, 1, 0]);
    println!();
    for n in 1..=6 {
        let obs = BfObservable::new(z1.clone(), z2.clone(), n)?;
        println!(
            "N={n}  <<z1,z2>>_BF = {:<24} factor = {}",
            bf_expectation(&h, &lf, &obs)?.to_string(),
            reciprocity_factor(&h, n)
        );
    }
    Ok(())
}
