//! Closed-form `Z_N` BF expectation values.
//!
//! The value of `<<gamma1, gamma2>>` is assembled from homology data alone:
//! free classes enter through a mod-`N` delta, the trivial and torsion parts
//! through their linking number, and the torsion group through a Gauss sum
//! over the mixed linking form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{Cycle, Side};
use crate::cyclotomic::{Phase, PhaseSum};
use crate::error::{Error, Result};
use crate::homology::{frac_part, ClassCoordinates, HomologyProfile, LinkingData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfObservable {
    /// Primal cycle.
    pub gamma1: Cycle,
    /// Dual cycle.
    pub gamma2: Cycle,
    pub level: u64,
}

impl BfObservable {
    pub fn new(gamma1: Cycle, gamma2: Cycle, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
        }
        if gamma1.side != Side::Primal {
            return Err(Error::SideMismatch {
                expected: Side::Primal,
                found: gamma1.side,
            });
        }
        if gamma2.side != Side::Dual {
            return Err(Error::SideMismatch {
                expected: Side::Dual,
                found: gamma2.side,
            });
        }
        Ok(Self {
            gamma1,
            gamma2,
            level,
        })
    }
}

/// `true` iff every free coordinate vanishes mod `n`.
pub fn free_delta(coords: &ClassCoordinates, n: u64) -> bool {
    let n = BigInt::from(n);
    coords.free.iter().all(|f| (f % &n).is_zero())
}

/// `N^{b1} / (p_1 ... p_n)`.
pub fn reciprocity_factor(profile: &HomologyProfile, n: u64) -> BigRational {
    BigRational::new(
        num_traits::pow(BigInt::from(n), profile.b1()),
        BigInt::from(profile.torsion_order()),
    )
}

pub(crate) fn to_phase(x: &BigRational) -> Result<Phase> {
    let f = frac_part(x);
    match (f.numer().to_i64(), f.denom().to_i64()) {
        (Some(a), Some(b)) => Ok(Phase::new(a, b)),
        _ => Err(Error::InvalidParameter(format!("phase {x} does not fit in 64 bits"))),
    }
}

fn level_check(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
    }
    Ok(BigRational::from_integer(BigInt::from(n)))
}

/// `sum_{k1, k2} e(-N Q(k1, k2))` with `k1` running over primal and `k2`
/// over dual torsion classes.
pub fn bf_partition(linking: &LinkingData, n: u64) -> Result<PhaseSum> {
    let nn = level_check(n)?;
    let elems = linking.group_elements();
    let mut acc = PhaseSum::zero();
    for k1 in &elems {
        for k2 in &elems {
            let q = linking.pairing(k1, k2);
            acc = acc + PhaseSum::term(BigRational::one(), to_phase(&-(q * &nn))?);
        }
    }
    Ok(acc)
}

/// `<<gamma1, gamma2>>` in the normalisation where `<<0, 0>> = Z_BF`.
pub fn bf_expectation(
    profile: &HomologyProfile,
    linking: &LinkingData,
    obs: &BfObservable,
) -> Result<PhaseSum> {
    let nn = level_check(obs.level)?;
    let c1 = profile.class_of(&obs.gamma1)?;
    let c2 = profile.class_of(&obs.gamma2)?;
    if !free_delta(&c1, obs.level) || !free_delta(&c2, obs.level) {
        return Ok(PhaseSum::zero());
    }
    let g1 = profile.primal.without_free_part(&obs.gamma1)?;
    let g2 = profile.dual.without_free_part(&obs.gamma2)?;
    let lk = profile.linking_number(&g1, &g2)?;
    let prefactor = PhaseSum::term(BigRational::one(), to_phase(&-(lk / &nn))?);

    let elems = linking.group_elements();
    let mut gauss = PhaseSum::zero();
    for u in &elems {
        let a = linking.pairing(&c1.torsion, u);
        for v in &elems {
            let x = &nn * linking.pairing(v, u) + &a + linking.pairing(v, &c2.torsion);
            gauss = gauss + PhaseSum::term(BigRational::one(), to_phase(&-x)?);
        }
    }
    Ok(prefactor * gauss)
}
