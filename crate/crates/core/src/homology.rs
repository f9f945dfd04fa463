//! First homology, class coordinates and linking data.
//!
//! `H_1` is computed on both the primal and the dual decomposition. Cycles
//! of the primal side are paired with cycles of the dual side through the
//! intersection pairing `S_a . e^b = delta_ab`, so the linking form is
//! realised as a pairing between primal and dual torsion classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::complex::{CellComplex, Cycle, Side};
use crate::error::{Error, Result};
use crate::intlinalg::{dot, smith_normal_form, solve_integer, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coordinate {
    Trivial,
    Torsion(usize),
    Free(usize),
}

/// `H_1` of one side, with the change of basis needed to read off classes.
#[derive(Clone, Debug)]
pub struct SideHomology {
    side: Side,
    torsion: Vec<u64>,
    free_generators: Vec<Cycle>,
    torsion_generators: Vec<Cycle>,
    /// Rows give the coordinates of a cycle in the generator basis.
    transform: IntMatrix,
    kinds: Vec<Coordinate>,
    cycle_boundary: IntMatrix,
    surface_boundary: IntMatrix,
}

impl SideHomology {
    fn compute(c: &CellComplex, side: Side) -> Result<Self> {
        let lower = c.cycle_boundary(side);
        let upper = c.surface_boundary(side);
        let len = c.cycle_len(side);

        // cycles Z = ker(lower) with basis K = V[:, r..], coordinates V_inv[r.., :]
        let snf = smith_normal_form(&lower);
        let r = snf.rank;
        let k = len - r;
        let mut basis = IntMatrix::zeros(len, k);
        let mut coords = IntMatrix::zeros(k, len);
        for j in 0..k {
            for i in 0..len {
                basis.set(i, j, snf.v.get(i, r + j).clone());
                coords.set(j, i, snf.v_inv.get(r + j, i).clone());
            }
        }

        // boundaries in cycle coordinates, then diagonalise
        let relations = coords.mul(&upper)?;
        let rel = smith_normal_form(&relations);
        let generators = basis.mul(&rel.u_inv)?;
        let transform = rel.u.mul(&coords)?;

        let mut kinds = Vec::with_capacity(k);
        let mut torsion = Vec::new();
        let mut torsion_generators = Vec::new();
        let mut free_generators = Vec::new();
        for i in 0..k {
            let d = rel.diagonal.get(i).filter(|_| i < rel.rank);
            match d {
                Some(d) if d.is_one() => kinds.push(Coordinate::Trivial),
                Some(d) => {
                    let p = d.to_u64().ok_or_else(|| {
                        Error::InvalidParameter(format!("torsion order {d} exceeds 64 bits"))
                    })?;
                    kinds.push(Coordinate::Torsion(torsion.len()));
                    torsion.push(p);
                    torsion_generators.push(Cycle::new(side, generators.column(i)));
                }
                None => {
                    kinds.push(Coordinate::Free(free_generators.len()));
                    free_generators.push(Cycle::new(side, generators.column(i)));
                }
            }
        }
        Ok(Self {
            side,
            torsion,
            free_generators,
            torsion_generators,
            transform,
            kinds,
            cycle_boundary: lower,
            surface_boundary: upper,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn b1(&self) -> usize {
        self.free_generators.len()
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_generators(&self) -> &[Cycle] {
        &self.free_generators
    }

    pub fn torsion_generators(&self) -> &[Cycle] {
        &self.torsion_generators
    }

    fn check(&self, z: &Cycle) -> Result<()> {
        if z.side != self.side {
            return Err(Error::SideMismatch {
                expected: self.side,
                found: z.side,
            });
        }
        if z.len() != self.cycle_boundary.cols() {
            return Err(Error::NotACycle {
                side: z.side,
                reason: format!(
                    "{} components, expected {}",
                    z.len(),
                    self.cycle_boundary.cols()
                ),
            });
        }
        let b = self.cycle_boundary.mul_vec(&z.components)?;
        if let Some(i) = b.iter().position(|x| !x.is_zero()) {
            return Err(Error::NotACycle {
                side: z.side,
                reason: format!("boundary has coefficient {} on cell {i}", b[i]),
            });
        }
        Ok(())
    }

    pub fn class_of(&self, z: &Cycle) -> Result<ClassCoordinates> {
        self.check(z)?;
        let raw = self.transform.mul_vec(&z.components)?;
        let mut free = vec![BigInt::zero(); self.free_generators.len()];
        let mut torsion = vec![0u64; self.torsion.len()];
        for (x, kind) in raw.into_iter().zip(&self.kinds) {
            match *kind {
                Coordinate::Trivial => {}
                Coordinate::Free(i) => free[i] = x,
                Coordinate::Torsion(i) => {
                    let p = BigInt::from(self.torsion[i]);
                    torsion[i] = x.mod_floor(&p).to_u64().expect("reduced below p");
                }
            }
        }
        Ok(ClassCoordinates { free, torsion })
    }

    /// `z` minus its free part, expressed through the free generators. The
    /// result has the same torsion coordinates and zero free coordinates.
    pub fn without_free_part(&self, z: &Cycle) -> Result<Cycle> {
        let coords = self.class_of(z)?;
        let mut out = z.clone();
        for (f, g) in coords.free.iter().zip(&self.free_generators) {
            if !f.is_zero() {
                out = out.plus(&g.scaled(&-f))?;
            }
        }
        Ok(out)
    }

    /// Torsion class from coordinates: `sum_i t_i g_i`.
    pub fn torsion_representative(&self, coords: &[u64]) -> Cycle {
        let len = self.cycle_boundary.cols();
        let mut z = Cycle::zero(self.side, len);
        for (t, g) in coords.iter().zip(&self.torsion_generators) {
            if *t != 0 {
                z = z.plus(&g.scaled(&BigInt::from(*t))).expect("same side and length");
            }
        }
        z
    }

    pub fn bounding_data(&self, z: &Cycle) -> Result<BoundingData> {
        let coords = self.class_of(z)?;
        if coords.free.iter().any(|f| !f.is_zero()) {
            return Err(Error::FreePart {
                free: coords.free.iter().map(|f| f.to_string()).collect(),
            });
        }
        let order = coords.order(&self.torsion);
        let target: Vec<BigInt> = z.components.iter().map(|x| x * order).collect();
        let sigma = solve_integer(&self.surface_boundary, &target)?.ok_or_else(|| {
            Error::InvalidComplex {
                name: String::new(),
                reason: format!("{order} * {z} has zero class but does not bound"),
            }
        })?;
        Ok(BoundingData { order, sigma })
    }
}

/// Coordinates of a homology class in the generator basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassCoordinates {
    pub free: Vec<BigInt>,
    /// `i`-th entry in `[0, p_i)`.
    pub torsion: Vec<u64>,
}

impl ClassCoordinates {
    pub fn is_trivial(&self) -> bool {
        self.free.iter().all(|f| f.is_zero()) && self.torsion.iter().all(|&t| t == 0)
    }

    /// Order of the torsion part: `lcm_i p_i / gcd(p_i, t_i)`.
    pub fn order(&self, torsion: &[u64]) -> u64 {
        self.torsion
            .iter()
            .zip(torsion)
            .fold(1u64, |acc, (&t, &p)| acc.lcm(&(p / p.gcd(&t))))
    }
}

impl fmt::Display for ClassCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(|x| x.to_string()).collect();
        let tors: Vec<String> = self.torsion.iter().map(|x| x.to_string()).collect();
        write!(f, "free=({}) torsion=({})", free.join(","), tors.join(","))
    }
}

/// `order * z = boundary(sigma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingData {
    pub order: u64,
    pub sigma: Vec<BigInt>,
}

/// `H_1` of a complex and of its dual.
#[derive(Clone, Debug)]
pub struct HomologyProfile {
    pub name: String,
    pub primal: SideHomology,
    pub dual: SideHomology,
}

pub fn homology_h1(c: &CellComplex) -> Result<HomologyProfile> {
    c.ensure_valid()?;
    let primal = SideHomology::compute(c, Side::Primal)?;
    let dual = SideHomology::compute(c, Side::Dual)?;
    if primal.b1() != dual.b1() || primal.torsion != dual.torsion {
        return Err(Error::InvalidComplex {
            name: c.name.clone(),
            reason: format!(
                "primal H1 (b1={}, torsion={:?}) differs from dual H1 (b1={}, torsion={:?})",
                primal.b1(),
                primal.torsion,
                dual.b1(),
                dual.torsion
            ),
        });
    }
    Ok(HomologyProfile {
        name: c.name.clone(),
        primal,
        dual,
    })
}

impl HomologyProfile {
    pub fn b1(&self) -> usize {
        self.primal.b1()
    }

    pub fn torsion(&self) -> &[u64] {
        self.primal.torsion()
    }

    /// `|T_1| = p_1 ... p_n`.
    pub fn torsion_order(&self) -> u64 {
        self.torsion().iter().product()
    }

    pub fn side(&self, side: Side) -> &SideHomology {
        match side {
            Side::Primal => &self.primal,
            Side::Dual => &self.dual,
        }
    }

    pub fn free_generators(&self) -> &[Cycle] {
        self.primal.free_generators()
    }

    pub fn torsion_generators_primal(&self) -> &[Cycle] {
        self.primal.torsion_generators()
    }

    pub fn torsion_generators_dual(&self) -> &[Cycle] {
        self.dual.torsion_generators()
    }

    pub fn class_of(&self, z: &Cycle) -> Result<ClassCoordinates> {
        self.side(z.side).class_of(z)
    }

    pub fn bounding_data(&self, z: &Cycle) -> Result<BoundingData> {
        self.side(z.side).bounding_data(z)
    }

    /// `(sigma . z2) / p` where `p z1 = boundary(sigma)`; not reduced mod 1.
    pub fn linking_number(&self, z1: &Cycle, z2: &Cycle) -> Result<BigRational> {
        if z1.side != Side::Primal {
            return Err(Error::SideMismatch {
                expected: Side::Primal,
                found: z1.side,
            });
        }
        self.dual.check(z2)?;
        let b = self.primal.bounding_data(z1)?;
        Ok(BigRational::new(
            dot(&b.sigma, &z2.components),
            BigInt::from(b.order),
        ))
    }

    pub fn linking_form(&self) -> Result<LinkingData> {
        let torsion = self.torsion().to_vec();
        let mut form = Vec::with_capacity(torsion.len());
        for g in self.torsion_generators_primal() {
            let mut row = Vec::with_capacity(torsion.len());
            for h in self.torsion_generators_dual() {
                row.push(frac_part(&self.linking_number(g, h)?));
            }
            form.push(row);
        }
        Ok(LinkingData { torsion, form })
    }

    pub fn summary(&self) -> String {
        format!("b1={} torsion={:?}", self.b1(), self.torsion())
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// The torsion linking pairing between primal and dual torsion classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    pub torsion: Vec<u64>,
    /// `form[i][j] = Q(g_i, h_j) mod 1` for primal generator `g_i` and
    /// dual generator `h_j`.
    pub form: Vec<Vec<BigRational>>,
}

impl LinkingData {
    /// `Q(x, y) mod 1` for primal torsion coordinates `x` and dual ones `y`.
    pub fn pairing(&self, primal: &[u64], dual: &[u64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &x) in primal.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in dual.iter().enumerate() {
                if y != 0 {
                    acc += &self.form[i][j] * BigRational::from_integer(BigInt::from(x * y));
                }
            }
        }
        frac_part(&acc)
    }

    /// Every element of `Z_p1 x ... x Z_pn`, in mixed-radix order.
    pub fn group_elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &p in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..p).map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// No nonzero class pairs trivially with every class of the other side.
    pub fn is_nondegenerate(&self) -> bool {
        let elems = self.group_elements();
        let zero = vec![0u64; self.torsion.len()];
        let left = elems
            .iter()
            .filter(|x| **x != zero)
            .all(|x| elems.iter().any(|y| !self.pairing(x, y).is_zero()));
        let right = elems
            .iter()
            .filter(|y| **y != zero)
            .all(|y| elems.iter().any(|x| !self.pairing(x, y).is_zero()));
        left && right
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{lens, rp3, s1xs2, s3};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn betti_and_torsion() {
        let h = homology_h1(&s3()).unwrap();
        assert_eq!((h.b1(), h.torsion().to_vec()), (0, vec![]));
        let h = homology_h1(&s1xs2()).unwrap();
        assert_eq!((h.b1(), h.torsion().to_vec()), (1, vec![]));
        let h = homology_h1(&rp3()).unwrap();
        assert_eq!((h.b1(), h.torsion().to_vec()), (0, vec![2]));
        let h = homology_h1(&lens(5).unwrap()).unwrap();
        assert_eq!((h.b1(), h.torsion().to_vec()), (0, vec![5]));
        assert_eq!(h.summary(), "b1=0 torsion=[5]");
    }

    #[test]
    fn classes() {
        let h = homology_h1(&s3()).unwrap();
        assert!(h.class_of(&Cycle::primal(&[1, 0])).unwrap().is_trivial());

        let h = homology_h1(&rp3()).unwrap();
        let c = h.class_of(&Cycle::primal(&[1, 0, 0, 1])).unwrap();
        assert_eq!(c.torsion, vec![1]);

        let h = homology_h1(&s1xs2()).unwrap();
        let c = h.class_of(&Cycle::primal(&[0, 0, 0, 1, 0])).unwrap();
        assert_eq!(c.free.len(), 1);
        assert!(c.free[0] == BigInt::one() || c.free[0] == -BigInt::one());
        assert!(matches!(
            h.class_of(&Cycle::primal(&[1, 0, 0, 0, 0])),
            Err(Error::NotACycle { .. })
        ));
    }

    #[test]
    fn bounding() {
        let h = homology_h1(&rp3()).unwrap();
        let b = h.bounding_data(&Cycle::primal(&[1, 0, 0, 1])).unwrap();
        assert_eq!(b.order, 2);
        assert_eq!(b.sigma, crate::intlinalg::to_bigints(&[1, 0, 1, 1]));

        let h = homology_h1(&s1xs2()).unwrap();
        let b = h.bounding_data(&Cycle::primal(&[1, 1, 1, 0, 0])).unwrap();
        assert_eq!(b.order, 1);
        assert_eq!(b.sigma, crate::intlinalg::to_bigints(&[0, 0, 1, 0]));
        assert!(matches!(
            h.bounding_data(&Cycle::primal(&[0, 0, 0, 1, 0])),
            Err(Error::FreePart { .. })
        ));
    }

    #[test]
    fn linking_numbers() {
        let h = homology_h1(&s3()).unwrap();
        let lk = h
            .linking_number(&Cycle::primal(&[1, 0]), &Cycle::dual(&[0, 1, 0]))
            .unwrap();
        assert_eq!(lk, r(1, 1));

        let h = homology_h1(&rp3()).unwrap();
        let z1 = Cycle::primal(&[1, 0, 0, 1]);
        assert_eq!(h.linking_number(&z1, &Cycle::dual(&[0, 0, 1, 0])).unwrap(), r(1, 2));
        assert_eq!(h.linking_number(&z1, &Cycle::dual(&[0, 0, 1, 1])).unwrap(), r(1, 1));
        assert!(matches!(
            h.linking_number(&Cycle::dual(&[0, 0, 1, 0]), &Cycle::dual(&[0, 0, 1, 0])),
            Err(Error::SideMismatch { .. })
        ));
    }

    #[test]
    fn linking_forms() {
        let lf = homology_h1(&s3()).unwrap().linking_form().unwrap();
        assert!(lf.form.is_empty());
        assert!(lf.is_nondegenerate());

        let lf = homology_h1(&rp3()).unwrap().linking_form().unwrap();
        assert_eq!(lf.form, vec![vec![r(1, 2)]]);

        let lf = homology_h1(&lens(3).unwrap()).unwrap().linking_form().unwrap();
        let q = &lf.form[0][0];
        assert_eq!(q.denom(), &BigInt::from(3));
        assert!(lf.is_nondegenerate());
    }

    #[test]
    fn free_part_removal() {
        let h = homology_h1(&s1xs2()).unwrap();
        let z = Cycle::primal(&[1, 1, 1, 3, 0]);
        let t = h.primal.without_free_part(&z).unwrap();
        assert!(h.class_of(&t).unwrap().is_trivial());
    }
}
