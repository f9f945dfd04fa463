//! Exact integer matrix algebra.
//!
//! Everything here works over arbitrary-precision integers: Smith normal
//! form with tracked unimodular transforms, integer linear solving, and
//! kernel/image lattice bases. Homology computations sit directly on top of
//! these routines.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have `cols` entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix from a list of rows; an empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    cols
                )));
            }
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows as machine integers, or `None` if some entry does not fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                self.data[target * self.cols + j] += q * s;
            }
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                self.data[i * self.cols + target] += q * s;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
            if i + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal.
///
/// The inverses of both transforms are tracked alongside them, so
/// `A = U_inv * D * V_inv` without any further inversion.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// `min(rows, cols)` entries: the nonzero invariant factors in
    /// divisibility order, then zeros.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The diagonal matrix `D` with the input's shape.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.rows());
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    /// Nonzero invariant factors `d_1 | d_2 | ... | d_r`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank]
    }
}

/// Smith normal form by gcd elimination, always pivoting on the entry of
/// least absolute value. Deterministic: equal inputs give equal transforms.
pub fn smith_normal_form(matrix: &IntMatrix) -> SmithDecomposition {
    let m = matrix.rows();
    let n = matrix.cols();
    let mut a = matrix.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                break;
            };
            if pi != t {
                a.swap_rows(pi, t);
                u.swap_rows(pi, t);
                u_inv.swap_cols(pi, t);
            }
            if pj != t {
                a.swap_cols(pj, t);
                v.swap_cols(pj, t);
                v_inv.swap_rows(pj, t);
            }

            let mut dirty = false;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -(a.get(i, t) / a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                u_inv.add_col_multiple(t, i, &-&q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -(a.get(t, j) / a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                v_inv.add_row_multiple(t, j, &-&q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }

            // Enforce d_t | every remaining entry.
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_zero() {
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }

    let diagonal = (0..m.min(n)).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition {
        u,
        u_inv,
        v,
        v_inv,
        diagonal,
        rank,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Basis of the integer kernel `{x : A x = 0}`, in lower echelon form
/// (see [`lower_echelon`]).
pub fn kernel_basis(matrix: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(matrix);
    let raw: Vec<Vec<BigInt>> = (snf.rank..matrix.cols()).map(|j| snf.v.column(j)).collect();
    lower_echelon(&raw)
}

/// Basis of the image lattice `A Z^n`: the first `rank` columns of `A V`.
pub fn image_basis(matrix: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(matrix);
    let av = matrix.mul(&snf.v).expect("V is cols x cols");
    (0..snf.rank).map(|j| av.column(j)).collect()
}

/// Solves `A x = b` over the integers.
///
/// Returns `Ok(None)` when `b` is not in the image lattice. When solutions
/// exist the returned one is reduced modulo the kernel lattice: for each
/// kernel echelon vector with last nonzero coordinate `k` at value `p`, the
/// solution's coordinate `k` lies in `[0, p)`.
pub fn solve_integer(matrix: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != matrix.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {}x{} system",
            b.len(),
            matrix.rows(),
            matrix.cols()
        )));
    }
    let snf = smith_normal_form(matrix);
    let ub = snf.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); matrix.cols()];
    for (i, w) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = w.div_rem(&snf.diagonal[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !w.is_zero() {
            return Ok(None);
        }
    }
    let x = snf.v.mul_vec(&y)?;
    let kernel: Vec<Vec<BigInt>> = (snf.rank..matrix.cols()).map(|j| snf.v.column(j)).collect();
    Ok(Some(reduce_by_lower_echelon(x, &lower_echelon(&kernel))))
}

/// Hermite-style echelon form of the lattice spanned by `vectors`, with
/// pivots at the *last* nonzero coordinate of each vector.
///
/// Pivots are positive and every other basis vector's entry in a pivot
/// column lies in `[0, pivot)`. Vectors are ordered by decreasing pivot index.
pub fn lower_echelon(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let reversed: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    hermite_rows(reversed)
        .into_iter()
        .map(|v| v.into_iter().rev().collect())
        .collect()
}

fn reduce_by_lower_echelon(x: Vec<BigInt>, echelon: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut x = x;
    for row in echelon {
        let Some(p) = row.iter().rposition(|c| !c.is_zero()) else {
            continue;
        };
        let q = x[p].div_floor(&row[p]);
        if !q.is_zero() {
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
    }
    x
}

/// Row Hermite normal form (pivot = first nonzero entry), zero rows dropped.
fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let Some(width) = rows.first().map(|r| r.len()) else {
        return rows;
    };
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = &rows[i][c] / &rows[r][c];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            let pivot_row = rows[r].clone();
            for i in 0..r {
                let q = rows[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Membership and canonical coset keys for the image lattice of a matrix.
#[derive(Clone, Debug)]
pub struct ImageLattice {
    snf: SmithDecomposition,
}

impl ImageLattice {
    pub fn new(matrix: &IntMatrix) -> Self {
        Self {
            snf: smith_normal_form(matrix),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.snf.u.rows()
    }

    /// Canonical representative data of `v` modulo the lattice: two vectors
    /// have equal keys iff their difference lies in the lattice.
    pub fn coset_key(&self, v: &[BigInt]) -> Vec<BigInt> {
        let w = self.snf.u.mul_vec(v).expect("ambient dimension");
        w.into_iter()
            .enumerate()
            .map(|(i, x)| {
                if i < self.snf.rank {
                    x.mod_floor(&self.snf.diagonal[i])
                } else {
                    x
                }
            })
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coset_key(v).iter().all(|x| x.is_zero())
    }
}
