//! First homology, torsion generators and the linking form.

use abelian_tv::complex::{lens, rp3, s1xs2, s3, Cycle};
use abelian_tv::homology::homology_h1;

fn main() -> abelian_tv::error::Result<()> {
    for c in [s3(), s1xs2(), rp3(), lens(3)?, lens(4)?, lens(5)?] {
        let h = homology_h1(&c)?;
        let lf = h.linking_form()?;
        let form: Vec<Vec<String>> = lf
            .form
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        println!("{:<8} {}  linking form {:?}", c.name, h.summary(), form);
    }

    let c = rp3();
    let h = homology_h1(&c)?;
    let z1 = Cycle::primal(&[1, 0, 0, 1]);
    let bounding = h.bounding_data(&z1)?;
    println!("\nrp3: {} z1 bounds {:?}", bounding.order, bounding.sigma);
    for z2 in [Cycle::dual(&[0, 0, 1, 1]), Cycle::dual(&[0, 0, 1, 0])] {
        println!(
            "lk({z1}, {z2}) = {}  class of z2: {}",
            h.linking_number(&z1, &z2)?,
            h.class_of(&z2)?
        );
    }
    Ok(())
}
