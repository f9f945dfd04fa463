//! The builtin decompositions: validation, duality, subdivision and the
//! JSON file format.

use abelian_tv::complex::{builtin, CellComplex};

fn main() -> abelian_tv::error::Result<()> {
    for (name, p) in [("s3", None), ("s1xs2", None), ("rp3", None), ("lens", Some(5))] {
        let c = builtin(name, p)?;
        let counts = c.counts;
        println!(
            "{:<8} P={} F={} E={} V={}  euler={}",
            c.name,
            counts.polyhedra,
            counts.faces,
            counts.edges,
            counts.vertices,
            counts.euler_characteristic()
        );
        let report = c.validate();
        assert!(report.is_valid());
        let dual = c.dualize()?;
        assert_eq!(dual.dualize()?, c);
    }

    let c = builtin("s1xs2", None)?;
    println!("\n{}", c.validate());

    let finer = c.subdivide_edge(0)?;
    println!("after subdividing edge 0: {:?}", finer.counts);

    let text = finer.to_json()?;
    let back = CellComplex::from_json(&text)?;
    assert_eq!(back, finer);

    // a broken complex is reported check by check
    let mut broken = c.clone();
    broken.boundary2.set(0, 0, 1.into());
    println!("{}", broken.validate());
    Ok(())
}
