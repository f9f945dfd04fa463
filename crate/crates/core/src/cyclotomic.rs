//! Exact finite sums of roots of unity with rational coefficients.
//!
//! A [`PhaseSum`] is a formal combination `sum_q c_q e(2 pi i q)` with phases
//! `q` in `[0, 1)`. Two sums are compared by lifting both to a common
//! denominator `n` and reducing modulo the `n`-th cyclotomic polynomial, so
//! equality is decided in the cyclotomic field with no rounding at all.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A phase `a/b` in `[0, 1)`, standing for `e(2 pi i a/b)`.
pub type Phase = Ratio<i64>;

#[derive(Clone, Default)]
pub struct PhaseSum {
    terms: BTreeMap<Phase, BigRational>,
}

fn reduce_phase(q: Phase) -> Phase {
    let den = *q.denom();
    Phase::new(q.numer().mod_floor(&den), den)
}

impl PhaseSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(k: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(k.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::term(r, Phase::zero())
    }

    /// `coeff * e(2 pi i phase)`; the phase is reduced mod 1.
    pub fn term(coeff: BigRational, phase: Phase) -> Self {
        let mut s = Self::zero();
        s.add_term(reduce_phase(phase), coeff);
        s
    }

    /// `e(2 pi i k/n)`.
    pub fn root_of_unity(k: i64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("root of unity of order 0".to_string()));
        }
        let n = i64::try_from(n)
            .map_err(|_| Error::InvalidParameter(format!("root order {n} too large")))?;
        Ok(Self::term(BigRational::one(), Phase::new(k, n)))
    }

    /// `sum_k counts[k] e(2 pi i k/n)`, scaled by `scale`.
    pub fn from_histogram(counts: &[u128], scale: &BigRational) -> Self {
        let n = counts.len() as i64;
        let mut s = Self::zero();
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                s.add_term(
                    reduce_phase(Phase::new(k as i64, n)),
                    BigRational::from_integer(BigInt::from(c)) * scale,
                );
            }
        }
        s
    }

    fn add_term(&mut self, phase: Phase, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(phase).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&phase);
        }
    }

    /// Stored terms in phase order. This is the raw representation; use
    /// [`PhaseSum::canonical`] for a normal form.
    pub fn terms(&self) -> impl Iterator<Item = (&Phase, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(q, c)| (*q, c * r)).collect(),
        }
    }

    /// Complex conjugate: every phase negated.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under `e(q) -> e(k q)`. This is a field automorphism when `k`
    /// is coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let mut s = Self::zero();
        for (q, c) in &self.terms {
            s.add_term(reduce_phase(*q * k), c.clone());
        }
        s
    }

    /// Least common multiple of the phase denominators (1 for rationals).
    pub fn conductor_bound(&self) -> i64 {
        self.terms.keys().fold(1, |acc, q| acc.lcm(q.denom()))
    }

    /// Decides `self == 0` in the cyclotomic field.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let n = self.conductor_bound();
        cyclotomic_remainder(&self.lift(n), n as usize)
            .iter()
            .all(|c| c.is_zero())
    }

    pub fn equals_exact(&self, other: &PhaseSum) -> bool {
        (self - other).is_zero()
    }

    /// Coefficient vector over the `n`-th roots of unity; `n` must be a
    /// multiple of every phase denominator.
    fn lift(&self, n: i64) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n as usize];
        for (q, c) in &self.terms {
            let idx = (q.numer() * (n / q.denom())) as usize;
            v[idx] += c;
        }
        v
    }

    /// Floating-point value `(re, im)`. Computed from the canonical form to
    /// avoid cancellation; accurate to well below `1e-12` for the magnitudes
    /// arising here. `precision` (at most 15 digits) is used to round away
    /// noise below `10^-precision`.
    pub fn evaluate(&self, precision: u32) -> (f64, f64) {
        let canon = self.canonical();
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (q, c) in &canon.terms {
            let angle = 2.0 * std::f64::consts::PI * q.to_f64().unwrap_or(0.0);
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * angle.cos();
            im += c * angle.sin();
        }
        let eps = 10f64.powi(-(precision.min(15) as i32));
        let snap = |x: f64| if x.abs() < eps * 0.1 { 0.0 } else { x };
        (snap(re), snap(im))
    }

    /// Normal form: terms over the `m`-th roots of unity with `m` the exact
    /// conductor, written sparsely. Equal field elements give identical
    /// canonical forms.
    pub fn canonical(&self) -> PhaseSum {
        if self.is_zero() {
            return Self::zero();
        }
        let mut n = self.conductor_bound();
        let ambient = n;
        'shrink: loop {
            for q in prime_factors(n) {
                let m = n / q;
                let fixed = (1..ambient)
                    .filter(|k| k.gcd(&ambient) == 1 && (k - 1) % m == 0)
                    .all(|k| self.galois(k).equals_exact(self));
                if fixed {
                    n = m;
                    continue 'shrink;
                }
            }
            break;
        }
        let coords = coordinates_in_subfield(self, ambient, n);
        let mut dense: Vec<BigRational> = vec![BigRational::zero(); n as usize];
        for (j, c) in coords.into_iter().enumerate() {
            dense[j] = c;
        }
        sparsify(&mut dense, n);
        let mut s = Self::zero();
        for (j, c) in dense.into_iter().enumerate() {
            s.add_term(Phase::new(j as i64, n), c);
        }
        s
    }

    /// Canonical terms as `(phase_num, phase_den, coeff_num, coeff_den)`.
    pub fn exact_terms(&self) -> Vec<(i64, i64, BigInt, BigInt)> {
        self.canonical()
            .terms
            .into_iter()
            .map(|(q, c)| (*q.numer(), *q.denom(), c.numer().clone(), c.denom().clone()))
            .collect()
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        let canon = self.canonical();
        match canon.terms.len() {
            0 => Some(BigRational::zero()),
            1 => canon.terms.get(&Phase::zero()).cloned(),
            _ => None,
        }
    }

    /// `x + yi` with 12 significant digits.
    /// [`PhaseSum::evaluate`] rounded to 12 significant digits.
    pub fn evaluate_rounded(&self) -> (f64, f64) {
        let (re, im) = self.evaluate(12);
        let round = |x: f64| sig12(x).parse().unwrap_or(x);
        (round(re), round(im))
    }

    pub fn render_float(&self) -> String {
        let (re, im) = self.evaluate(12);
        let sign = if im < 0.0 { '-' } else { '+' };
        format!("{} {} {}i", sig12(re), sign, sig12(im.abs()))
    }
}

fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).clamp(0, 20) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Display for PhaseSum {
    /// Canonical text form `c_1·e(2πi·a_1/b_1) + ...`, sorted by phase.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let canon = self.canonical();
        if canon.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, c)) in canon.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if q.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}·")?;
                }
                write!(f, "e(2πi·{}/{})", q.numer(), q.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseSum({self})")
    }
}

impl PartialEq for PhaseSum {
    fn eq(&self, other: &Self) -> bool {
        self.equals_exact(other)
    }
}

impl Eq for PhaseSum {}

impl Add for &PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: &PhaseSum) -> PhaseSum {
        let mut s = self.clone();
        for (q, c) in &rhs.terms {
            s.add_term(*q, c.clone());
        }
        s
    }
}

impl Add for PhaseSum {
    type Output = PhaseSum;
    fn add(self, rhs: PhaseSum) -> PhaseSum {
        &self + &rhs
    }
}

impl Neg for &PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        PhaseSum {
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
        }
    }
}

impl Neg for PhaseSum {
    type Output = PhaseSum;
    fn neg(self) -> PhaseSum {
        -&self
    }
}

impl Sub for &PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: &PhaseSum) -> PhaseSum {
        self + &(-rhs)
    }
}

impl Sub for PhaseSum {
    type Output = PhaseSum;
    fn sub(self, rhs: PhaseSum) -> PhaseSum {
        &self - &rhs
    }
}

impl Mul for &PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: &PhaseSum) -> PhaseSum {
        let mut s = PhaseSum::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                s.add_term(reduce_phase(p + q), a * b);
            }
        }
        s
    }
}

impl Mul for PhaseSum {
    type Output = PhaseSum;
    fn mul(self, rhs: PhaseSum) -> PhaseSum {
        &self * &rhs
    }
}

impl std::iter::Sum for PhaseSum {
    fn sum<I: Iterator<Item = PhaseSum>>(iter: I) -> Self {
        iter.fold(PhaseSum::zero(), |acc, x| &acc + &x)
    }
}

fn prime_factors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn euler_phi(n: i64) -> i64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// `Phi_n` as integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    // x^n - 1 = prod_{d | n} Phi_d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        num = exact_divide(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().expect("cache lock").insert(n, num.clone());
    num
}

/// Quotient of `a` by the monic polynomial `b`, assuming exact division.
fn exact_divide(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bj;
        }
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// Remainder of `sum_k v[k] x^k` modulo `Phi_n`: `phi(n)` coefficients.
fn cyclotomic_remainder(v: &[BigRational], n: usize) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut r = v.to_vec();
    for i in (deg..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, pj) in phi.iter().enumerate() {
            if !pj.is_zero() {
                r[i - deg + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
    }
    r.truncate(deg);
    r.resize(deg, BigRational::zero());
    r
}

/// Coordinates of `alpha` (known to lie in `Q(zeta_m)`) in the power basis
/// `zeta_m^0 .. zeta_m^(phi(m)-1)`, found by solving a rational linear system
/// inside `Q(zeta_n)`.
fn coordinates_in_subfield(alpha: &PhaseSum, n: i64, m: i64) -> Vec<BigRational> {
    let target = cyclotomic_remainder(&alpha.lift(n), n as usize);
    let rows = target.len();
    let cols = euler_phi(m) as usize;
    let step = (n / m) as usize;
    // augmented matrix [basis images | target]
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); cols + 1]; rows];
    for j in 0..cols {
        let mut e = vec![BigRational::zero(); n as usize];
        e[(j * step) % n as usize] = BigRational::one();
        for (i, x) in cyclotomic_remainder(&e, n as usize).into_iter().enumerate() {
            a[i][j] = x;
        }
    }
    for (i, t) in target.into_iter().enumerate() {
        a[i][cols] = t;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = vec![BigRational::zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = a[row][cols].clone();
    }
    out
}

/// Greedily uses the relations `sum_t zeta^(r + t m/q) = 0` (q prime, q | m)
/// to shrink the support of a coefficient vector over the `m`-th roots.
fn sparsify(v: &mut [BigRational], m: i64) {
    let m = m as usize;
    let primes = prime_factors(m as i64);
    loop {
        let mut improved = false;
        for &q in &primes {
            let q = q as usize;
            let stride = m / q;
            for r in 0..stride {
                let idx: Vec<usize> = (0..q).map(|t| r + t * stride).collect();
                let current = idx.iter().filter(|&&i| !v[i].is_zero()).count();
                let mut candidates: Vec<BigRational> = idx
                    .iter()
                    .map(|&i| v[i].clone())
                    .filter(|c| !c.is_zero())
                    .collect();
                candidates.sort();
                candidates.dedup();
                let mut best: Option<(usize, BigRational)> = None;
                for c in candidates {
                    let after = idx.iter().filter(|&&i| v[i] != c).count();
                    if after < current && best.as_ref().is_none_or(|(b, _)| after < *b) {
                        best = Some((after, c));
                    }
                }
                if let Some((_, c)) = best {
                    for &i in &idx {
                        v[i] -= &c;
                    }
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}
