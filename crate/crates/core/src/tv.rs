//! Abelian Turaev-Viro state sums.
//!
//! Four evaluation strategies are provided and must agree exactly:
//!
//! * `brute` sums over all labelings `l` of the edges and `m` of the faces;
//! * `constrained` performs the sum over `m` analytically, leaving a mod-`N`
//!   delta on `dl + z2`;
//! * `tree` additionally fixes the gauge by setting `l` to zero on a
//!   spanning tree of the 1-skeleton;
//! * `closed` evaluates the BF closed form through the reciprocity factor.
//!
//! Enumerations walk labelings in mixed-radix order. Each odometer step adds
//! `1 mod N` to a run of digits, so the differential and holonomy are updated
//! incrementally instead of being recomputed.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bf::{bf_expectation, reciprocity_factor, BfObservable};
use crate::complex::{CellComplex, Cycle, Side};
use crate::cyclotomic::PhaseSum;
use crate::error::{Error, Result};
use crate::homology::homology_h1;

/// Default cap on the number of enumerated terms.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    Brute,
    Constrained,
    #[default]
    Tree,
    Closed,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Brute,
        Strategy::Constrained,
        Strategy::Tree,
        Strategy::Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Brute => "brute",
            Strategy::Constrained => "constrained",
            Strategy::Tree => "tree",
            Strategy::Closed => "closed",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown strategy `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TvConfig {
    pub strategy: Strategy,
    pub budget: u128,
}

impl Default for TvConfig {
    fn default() -> Self {
        Self {
            strategy: Strategy::Tree,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl TvConfig {
    pub fn new(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

/// A `Z_N` cochain, reduced to `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    pub side: Side,
    pub level: u64,
    pub values: Vec<u64>,
}

/// 1-cochain: on edges (primal) or on faces, i.e. dual edges (dual).
pub type Labeling = Cochain;
/// 0-cochain: on vertices (primal) or on 3-cells, i.e. dual vertices (dual).
pub type Gauging = Cochain;

fn reduce(x: &BigInt, n: u64) -> u64 {
    x.mod_floor(&BigInt::from(n)).to_u64().expect("reduced below N")
}

impl Cochain {
    pub fn new(side: Side, level: u64, values: &[i64]) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
        }
        let n = level as i128;
        Ok(Self {
            side,
            level,
            values: values
                .iter()
                .map(|&x| (x as i128).rem_euclid(n) as u64)
                .collect(),
        })
    }

    fn from_big(side: Side, level: u64, values: &[BigInt]) -> Self {
        Self {
            side,
            level,
            values: values.iter().map(|x| reduce(x, level)).collect(),
        }
    }

    fn as_big(&self) -> Vec<BigInt> {
        self.values.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Coboundary of a 1-cochain: `dl = boundary2^T l` on faces for a primal
    /// labeling, `d*m = boundary2 m` on edges for a dual one.
    pub fn differential(&self, c: &CellComplex) -> Result<Cochain> {
        let m = match self.side {
            Side::Primal => c.boundary2.transpose(),
            Side::Dual => c.boundary2.clone(),
        };
        Ok(Self::from_big(self.side, self.level, &m.mul_vec(&self.as_big())?))
    }

    /// Coboundary of a 0-cochain: `boundary1^T mu` for a primal gauging,
    /// `boundary3 chi` for a dual one.
    pub fn gauge_differential(&self, c: &CellComplex) -> Result<Cochain> {
        let m = match self.side {
            Side::Primal => c.boundary1.transpose(),
            Side::Dual => c.boundary3.clone(),
        };
        Ok(Self::from_big(self.side, self.level, &m.mul_vec(&self.as_big())?))
    }

    /// `l + d mu`.
    pub fn gauge_transform(&self, gauging: &Gauging, c: &CellComplex) -> Result<Labeling> {
        let d = gauging.gauge_differential(c)?;
        if d.side != self.side || d.level != self.level || d.values.len() != self.values.len() {
            return Err(Error::DimensionMismatch(
                "gauging does not match the labeling".to_string(),
            ));
        }
        Ok(Self {
            side: self.side,
            level: self.level,
            values: self
                .values
                .iter()
                .zip(&d.values)
                .map(|(a, b)| (a + b) % self.level)
                .collect(),
        })
    }

    /// Holonomy `l . z mod N` along a cycle of the same side.
    pub fn holonomy(&self, z: &Cycle) -> Result<u64> {
        if z.side != self.side {
            return Err(Error::SideMismatch {
                expected: self.side,
                found: z.side,
            });
        }
        if z.len() != self.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "cycle of length {} against cochain of length {}",
                z.len(),
                self.values.len()
            )));
        }
        let s: BigInt = self
            .values
            .iter()
            .zip(&z.components)
            .map(|(&a, b)| BigInt::from(a) * b)
            .sum();
        Ok(reduce(&s, self.level))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub edge: usize,
    /// Endpoint reached first.
    pub parent: usize,
    pub child: usize,
    /// Coefficients of `parent` and `child` in the boundary of the edge.
    pub parent_sign: i8,
    pub child_sign: i8,
}

/// Oriented spanning tree of the 1-skeleton, in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub root: usize,
    pub edges: Vec<TreeEdge>,
}

impl SpanningTree {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_indices(&self) -> Vec<usize> {
        self.edges.iter().map(|t| t.edge).collect()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.iter().any(|t| t.edge == edge)
    }

    /// The gauging `mu` with `mu(root) = 0` such that `l + d mu` vanishes on
    /// every tree edge, together with that gauge-fixed labeling.
    pub fn gauge_fix(&self, l: &Labeling, c: &CellComplex) -> Result<(Labeling, Gauging)> {
        if l.side != Side::Primal {
            return Err(Error::SideMismatch {
                expected: Side::Primal,
                found: l.side,
            });
        }
        let n = l.level;
        let mut mu = vec![0u64; c.counts.vertices];
        for t in &self.edges {
            // 0 = l_e + parent_sign mu(parent) + child_sign mu(child)
            let signed = |x: u64, s: i8| if s > 0 { x % n } else { (n - x % n) % n };
            let rest = (l.values[t.edge] + signed(mu[t.parent], t.parent_sign)) % n;
            mu[t.child] = signed((n - rest) % n, t.child_sign);
        }
        let g = Gauging {
            side: Side::Primal,
            level: n,
            values: mu,
        };
        Ok((l.gauge_transform(&g, c)?, g))
    }
}

/// Breadth-first spanning tree from vertex 0. Neighbours are scanned in
/// increasing edge order. Only edges whose boundary has exactly two `±1`
/// entries are used.
pub fn spanning_tree(c: &CellComplex) -> Result<SpanningTree> {
    let v = c.counts.vertices;
    let e = c.counts.edges;
    let ends: Vec<Option<[(usize, i8); 2]>> =
        (0..e).map(|j| incidences(&c.boundary1.column(j))).collect();
    let mut seen = vec![false; v];
    let mut edges = Vec::with_capacity(v.saturating_sub(1));
    let mut queue = VecDeque::new();
    if v > 0 {
        seen[0] = true;
        queue.push_back(0);
    }
    while let Some(x) = queue.pop_front() {
        for (j, end) in ends.iter().enumerate() {
            let Some([a, b]) = *end else { continue };
            let (here, (other, child_sign)) = if a.0 == x {
                (a, b)
            } else if b.0 == x {
                (b, a)
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                edges.push(TreeEdge {
                    edge: j,
                    parent: x,
                    child: other,
                    parent_sign: here.1,
                    child_sign,
                });
                queue.push_back(other);
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Disconnected(missing));
    }
    Ok(SpanningTree { root: 0, edges })
}

fn incidences(column: &[BigInt]) -> Option<[(usize, i8); 2]> {
    let nonzero: Vec<(usize, i8)> = column
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| Some((i, i8::try_from(x.to_i64()?).ok()?)))
        .collect::<Option<_>>()?;
    match nonzero.as_slice() {
        &[a, b] if a.1.abs() == 1 && b.1.abs() == 1 => Some([a, b]),
        _ => None,
    }
}

/// `n^k`, saturating.
pub fn power(n: u64, k: usize) -> u128 {
    let k = u32::try_from(k).unwrap_or(u32::MAX);
    (n as u128).checked_pow(k).unwrap_or(u128::MAX)
}

/// Number of terms the strategy enumerates: `N^{E+F}`, `N^E`, `N^{E-V+1}`,
/// or the size of the torsion Gauss sum for `closed`.
pub fn required_terms(c: &CellComplex, n: u64, strategy: Strategy) -> u128 {
    let e = c.counts.edges;
    match strategy {
        Strategy::Brute => power(n, e + c.counts.faces),
        Strategy::Constrained => power(n, e),
        Strategy::Tree => power(n, (e + 1).saturating_sub(c.counts.vertices)),
        Strategy::Closed => 1,
    }
}

fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// A value together with the amount of work spent on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TvOutcome {
    pub value: PhaseSum,
    pub strategy: Strategy,
    /// Edge labelings visited.
    pub labelings: u128,
    /// Summand evaluations, including the inner face sum for `brute`.
    pub terms: u128,
}

/// `B2^T` reduced mod `N`, stored column by column (one column per edge).
fn differential_columns(c: &CellComplex, n: u64) -> Vec<Vec<u64>> {
    (0..c.counts.edges)
        .map(|j| c.boundary2.row(j).iter().map(|x| reduce(x, n)).collect())
        .collect()
}

struct Odometer {
    digits: Vec<u64>,
    n: u64,
}

impl Odometer {
    fn new(len: usize, n: u64) -> Self {
        Self {
            digits: vec![0; len],
            n,
        }
    }

    /// Advances by one; calls `bump(i)` for each digit that moved by
    /// `+1 mod N`. Returns `false` after wrapping back to all zeros.
    fn step(&mut self, mut bump: impl FnMut(usize)) -> bool {
        for i in 0..self.digits.len() {
            bump(i);
            self.digits[i] += 1;
            if self.digits[i] < self.n {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

struct Prepared {
    n: u64,
    /// columns of `d` restricted to the summed edges
    cols: Vec<Vec<u64>>,
    /// `z1` on the summed edges, mod N
    z1: Vec<u64>,
    /// `z2` mod N
    z2: Vec<u64>,
}

impl Prepared {
    fn new(c: &CellComplex, n: u64, z1: &Cycle, z2: &Cycle, skip: &[usize]) -> Self {
        let all = differential_columns(c, n);
        let mut cols = Vec::new();
        let mut zz1 = Vec::new();
        for (j, col) in all.into_iter().enumerate() {
            if !skip.contains(&j) {
                cols.push(col);
                zz1.push(reduce(&z1.components[j], n));
            }
        }
        Self {
            n,
            cols,
            z1: zz1,
            z2: z2.components.iter().map(|x| reduce(x, n)).collect(),
        }
    }

    /// Histogram of `l . z1` over labelings with `dl + z2 = 0 mod N`.
    fn constrained(&self) -> (Vec<u128>, u128) {
        let n = self.n;
        let mut hist = vec![0u128; n as usize];
        let mut s = self.z2.clone();
        let mut nonzero = s.iter().filter(|&&x| x != 0).count();
        let mut phase = 0u64;
        let mut odo = Odometer::new(self.cols.len(), n);
        let mut visited = 0u128;
        loop {
            visited += 1;
            if nonzero == 0 {
                hist[phase as usize] += 1;
            }
            let more = odo.step(|i| {
                phase = (phase + self.z1[i]) % n;
                for (a, &d) in self.cols[i].iter().enumerate() {
                    if d != 0 {
                        let before = s[a];
                        let after = (before + d) % n;
                        s[a] = after;
                        match (before == 0, after == 0) {
                            (true, false) => nonzero += 1,
                            (false, true) => nonzero -= 1,
                            _ => {}
                        }
                    }
                }
            });
            if !more {
                break;
            }
        }
        (hist, visited)
    }

    /// Histogram of `m . (dl + z2) + l . z1` over all pairs `(l, m)`.
    fn brute(&self) -> (Vec<u128>, u128, u128) {
        let n = self.n;
        let f = self.z2.len();
        let mut hist = vec![0u128; n as usize];
        let mut s = self.z2.clone();
        let mut phase = 0u64;
        let mut outer = Odometer::new(self.cols.len(), n);
        let (mut labelings, mut terms) = (0u128, 0u128);
        loop {
            labelings += 1;
            let mut inner = Odometer::new(f, n);
            let mut mphase = 0u64;
            loop {
                terms += 1;
                hist[((mphase + phase) % n) as usize] += 1;
                if !inner.step(|a| mphase = (mphase + s[a]) % n) {
                    break;
                }
            }
            let more = outer.step(|i| {
                phase = (phase + self.z1[i]) % n;
                for (a, &d) in self.cols[i].iter().enumerate() {
                    s[a] = (s[a] + d) % n;
                }
            });
            if !more {
                break;
            }
        }
        (hist, labelings, terms)
    }
}

fn check_inputs(c: &CellComplex, n: u64, z1: &Cycle, z2: &Cycle) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
    }
    c.ensure_valid()?;
    if z1.side != Side::Primal {
        return Err(Error::SideMismatch {
            expected: Side::Primal,
            found: z1.side,
        });
    }
    if z2.side != Side::Dual {
        return Err(Error::SideMismatch {
            expected: Side::Dual,
            found: z2.side,
        });
    }
    c.check_cycle(z1)?;
    c.check_cycle(z2)
}

fn inverse_power(n: u64, k: usize) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(n), k))
}

/// `<<z1, z2>>` together with work counters.
pub fn tv_expectation_detailed(
    c: &CellComplex,
    n: u64,
    z1: &Cycle,
    z2: &Cycle,
    config: &TvConfig,
) -> Result<TvOutcome> {
    check_inputs(c, n, z1, z2)?;
    let strategy = config.strategy;
    check_budget(required_terms(c, n, strategy), config.budget)?;
    let v = c.counts.vertices;
    let (value, labelings, terms) = match strategy {
        Strategy::Brute => {
            let (hist, labelings, terms) = Prepared::new(c, n, z1, z2, &[]).brute();
            let scale = inverse_power(n, c.counts.faces + v - 1);
            (PhaseSum::from_histogram(&hist, &scale), labelings, terms)
        }
        Strategy::Constrained => {
            let (hist, visited) = Prepared::new(c, n, z1, z2, &[]).constrained();
            let scale = inverse_power(n, v - 1);
            (PhaseSum::from_histogram(&hist, &scale), visited, visited)
        }
        Strategy::Tree => {
            let tree = spanning_tree(c)?.edge_indices();
            let (hist, visited) = Prepared::new(c, n, z1, z2, &tree).constrained();
            (PhaseSum::from_histogram(&hist, &BigRational::one()), visited, visited)
        }
        Strategy::Closed => {
            let profile = homology_h1(c)?;
            let linking = profile.linking_form()?;
            let obs = BfObservable::new(z1.clone(), z2.clone(), n)?;
            let bf = bf_expectation(&profile, &linking, &obs)?;
            let work = linking.group_elements().len() as u128;
            (bf.scale(&reciprocity_factor(&profile, n)), 0, work * work)
        }
    };
    Ok(TvOutcome {
        value,
        strategy,
        labelings,
        terms,
    })
}

/// `<<z1, z2>>_TV` for a primal cycle `z1` and a dual cycle `z2`.
pub fn tv_expectation(
    c: &CellComplex,
    n: u64,
    z1: &Cycle,
    z2: &Cycle,
    config: &TvConfig,
) -> Result<PhaseSum> {
    Ok(tv_expectation_detailed(c, n, z1, z2, config)?.value)
}

/// `Upsilon_N`.
pub fn tv_partition(c: &CellComplex, n: u64, config: &TvConfig) -> Result<PhaseSum> {
    let z1 = Cycle::zero(Side::Primal, c.counts.edges);
    let z2 = Cycle::zero(Side::Dual, c.counts.faces);
    tv_expectation(c, n, &z1, &z2, config)
}

/// Result of the covariant gauge evaluation on a two-3-cell complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantReport {
    pub level: u64,
    /// `sum_a eps_a^2` for the first column `eps` of `boundary3`.
    pub norm: u64,
    /// `gcd(N, n)`.
    pub k: u64,
    /// Dual labelings with `d* m = 0` and `boundary3^T m = 0` mod N.
    pub raw_count: u128,
    pub value: PhaseSum,
    pub tv: PhaseSum,
    pub matches: bool,
    /// `value / tv` when both are rational and `tv != 0`.
    pub ratio: Option<BigRational>,
}

impl fmt::Display for CovariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N = {}, n = {}, k = gcd(N, n) = {}", self.level, self.norm, self.k)?;
        writeln!(f, "gauge-fixed labelings = {}", self.raw_count)?;
        writeln!(f, "covariant = {}", self.value)?;
        writeln!(f, "tv = {}", self.tv)?;
        match &self.ratio {
            Some(r) if !self.matches => write!(f, "mismatch, ratio {r}"),
            _ if self.matches => write!(f, "match"),
            _ => write!(f, "mismatch"),
        }
    }
}

/// Covariant gauge evaluation of `Upsilon_N`, only defined when `P = 2`.
pub fn covariant_gauge_partition(c: &CellComplex, n: u64, budget: u128) -> Result<CovariantReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
    }
    c.ensure_valid()?;
    if c.counts.polyhedra != 2 {
        return Err(Error::NotHeegaard(c.counts.polyhedra));
    }
    let f = c.counts.faces;
    check_budget(power(n, f), budget)?;
    let eps = c.boundary3.column(0);
    let norm: BigInt = eps.iter().map(|x| x * x).sum();
    let norm = norm.to_u64().ok_or_else(|| {
        Error::InvalidParameter("boundary3 entries too large".to_string())
    })?;
    let k = n.gcd(&norm);

    // constraint rows: d* = boundary2 (E x F) and boundary3^T (P x F)
    let stacked: Vec<Vec<u64>> = (0..f)
        .map(|a| {
            let mut col: Vec<u64> = (0..c.counts.edges)
                .map(|i| reduce(c.boundary2.get(i, a), n))
                .collect();
            col.extend((0..c.counts.polyhedra).map(|mu| reduce(c.boundary3.get(a, mu), n)));
            col
        })
        .collect();
    let zero_z2 = vec![0u64; c.counts.edges + c.counts.polyhedra];
    let prep = Prepared {
        n,
        cols: stacked,
        z1: vec![0; f],
        z2: zero_z2,
    };
    let (hist, _) = prep.constrained();
    let raw_count = hist[0];
    let value = PhaseSum::from_rational(BigRational::new(BigInt::from(raw_count), BigInt::from(k)));

    let tv = tv_partition(c, n, &TvConfig::new(Strategy::Tree).with_budget(budget))?;
    let matches = value == tv;
    let ratio = match (value.to_rational(), tv.to_rational()) {
        (Some(a), Some(b)) if !num_traits::Zero::is_zero(&b) => Some(a / b),
        _ => None,
    };
    Ok(CovariantReport {
        level: n,
        norm,
        k,
        raw_count,
        value,
        tv,
        matches,
        ratio,
    })
}

/// Size of `Ker d / N Z^E` and, optionally, the direct count of labelings
/// with `dl = 0 mod N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCount {
    pub level: u64,
    pub b1: usize,
    pub vertices: usize,
    /// `N^{b1 + V - 1}`.
    pub formula: u128,
    /// `prod_i gcd(N, p_i)`: extra mod-N solutions contributed by torsion.
    pub torsion_correction: u128,
    pub enumerated: Option<u128>,
}

impl KernelCount {
    pub fn matches_formula(&self) -> Option<bool> {
        self.enumerated.map(|e| e == self.formula)
    }

    pub fn matches_corrected(&self) -> Option<bool> {
        self.enumerated
            .map(|e| Some(e) == self.formula.checked_mul(self.torsion_correction))
    }
}

impl fmt::Display for KernelCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N^(b1+V-1) = {}^({}+{}-1) = {}",
            self.level, self.b1, self.vertices, self.formula
        )?;
        if let Some(e) = self.enumerated {
            write!(
                f,
                "\nenumerated #{{l : dl = 0 mod N}} = {e}\nprod gcd(N, p_i) = {}\nformula {}; formula * prod gcd(N, p_i) {}",
                self.torsion_correction,
                if e == self.formula { "matches" } else { "differs" },
                if Some(true) == self.matches_corrected() { "matches" } else { "differs" },
            )?;
        }
        Ok(())
    }
}

/// `N^{b1+V-1}`; with `verify`, also enumerates `{l : dl = 0 mod N}`.
pub fn closed_labeling_count(
    c: &CellComplex,
    n: u64,
    verify: bool,
    budget: u128,
) -> Result<KernelCount> {
    if n == 0 {
        return Err(Error::InvalidParameter("level N must be >= 1".to_string()));
    }
    let profile = homology_h1(c)?;
    let v = c.counts.vertices;
    let formula = power(n, profile.b1() + v - 1);
    let torsion_correction = profile
        .torsion()
        .iter()
        .map(|&p| n.gcd(&p) as u128)
        .product();
    let enumerated = if verify {
        check_budget(power(n, c.counts.edges), budget)?;
        let z1 = Cycle::zero(Side::Primal, c.counts.edges);
        let z2 = Cycle::zero(Side::Dual, c.counts.faces);
        let (hist, _) = Prepared::new(c, n, &z1, &z2, &[]).constrained();
        Some(hist[0])
    } else {
        None
    };
    Ok(KernelCount {
        level: n,
        b1: profile.b1(),
        vertices: v,
        formula,
        torsion_correction,
        enumerated,
    })
}

/// Number of edge labelings each strategy sums over.
pub fn summed_labelings(c: &CellComplex, n: u64, strategy: Strategy) -> u128 {
    match strategy {
        Strategy::Brute | Strategy::Constrained => power(n, c.counts.edges),
        Strategy::Tree => required_terms(c, n, Strategy::Tree),
        Strategy::Closed => 0,
    }
}
