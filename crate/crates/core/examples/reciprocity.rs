//! TV against BF for a pair of cycles, as a table and as JSON.

use abelian_tv::complex::{s1xs2, Cycle};
use abelian_tv::reciprocity::reciprocity_check;
use abelian_tv::tv::{Strategy, TvConfig};

fn main() -> abelian_tv::error::Result<()> {
    let c = s1xs2();
    let z1 = Cycle::primal(&[1, 1, 1, 0, 0]);
    let z2 = Cycle::dual(&[1, -1, 1, 1]);
    let report = reciprocity_check(&c, 4, &z1, &z2, &TvConfig::new(Strategy::Tree))?;
    println!("{}", report.table());
    assert!(report.is_equal());
    println!("{}", serde_json::to_string_pretty(&report.to_json(false)).unwrap());

    // a free cycle that does not vanish mod N kills both sides
    let z1 = Cycle::primal(&[0, 0, 0, 1, 0]);
    let zero = Cycle::dual(&[0, 0, 0, 0]);
    let report = reciprocity_check(&c, 4, &z1, &zero, &TvConfig::default())?;
    println!("\nfree cycle: vanishing={} TV={} BF={}", report.vanishing, report.lhs, report.bf);
    Ok(())
}
