//! Counting closed labelings, and the decomposition of the solution set of
//! `d l + z2 = 0 mod N`.

use abelian_tv::complex::{rp3, s1xs2, s3, Cycle, Side};
use abelian_tv::reciprocity::lemma_check;
use abelian_tv::tv::{closed_labeling_count, DEFAULT_BUDGET};

fn main() -> abelian_tv::error::Result<()> {
    for c in [s3(), s1xs2(), rp3()] {
        for n in [2, 3, 4] {
            let k = closed_labeling_count(&c, n, true, DEFAULT_BUDGET)?;
            println!("{:<6} {k}", c.name);
        }
    }
    println!();
    let c = rp3();
    for z2 in [Cycle::zero(Side::Dual, 4), Cycle::dual(&[0, 0, 1, 0])] {
        for n in [2, 3] {
            println!("rp3 z2={z2}: {}", lemma_check(&c, n, &z2, DEFAULT_BUDGET)?);
        }
    }
    Ok(())
}
