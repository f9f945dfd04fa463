//! The TV expectation value by each summation strategy, spanning-tree gauge
//! fixing, and the covariant gauge count.

use abelian_tv::complex::{rp3, s1xs2, Cycle, Side};
use abelian_tv::tv::{
    covariant_gauge_partition, required_terms, spanning_tree, tv_expectation_detailed, Gauging,
    Labeling, Strategy, TvConfig, DEFAULT_BUDGET,
};

fn main() -> abelian_tv::error::Result<()> {
    let c = s1xs2();
    let z1 = Cycle::primal(&[1, 1, 1, 0, 0]);
    let z2 = Cycle::dual(&[1, -1, 1, 1]);
    let n = 3;
    for s in Strategy::ALL {
        let out = tv_expectation_detailed(&c, n, &z1, &z2, &TvConfig::new(s))?;
        println!(
            "{:<12} {:<16} labelings={:<6} terms={:<6} (planned {})",
            s.name(),
            out.value.to_string(),
            out.labelings,
            out.terms,
            required_terms(&c, n, s)
        );
    }

    // gauge transformations leave holonomies and the differential alone
    let l = Labeling::new(Side::Primal, n, &[1, 2, 0, 1, 2])?;
    let mu = Gauging::new(Side::Primal, n, &[2, 0, 1])?;
    let moved = l.gauge_transform(&mu, &c)?;
    assert_eq!(moved.holonomy(&z1)?, l.holonomy(&z1)?);
    assert_eq!(moved.differential(&c)?, l.differential(&c)?);

    let tree = spanning_tree(&c)?;
    let (fixed, _) = tree.gauge_fix(&l, &c)?;
    println!("\ntree edges {:?}: {:?} -> {:?}", tree.edge_indices(), l.values, fixed.values);

    println!();
    for n in 1..=6 {
        println!("{}\n", covariant_gauge_partition(&rp3(), n, DEFAULT_BUDGET)?);
    }
    Ok(())
}
