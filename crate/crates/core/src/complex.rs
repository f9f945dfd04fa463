//! Cellular decompositions of closed oriented 3-manifolds.
//!
//! A [`CellComplex`] stores the three integer boundary matrices of a
//! decomposition `(P, F, E, V)`. Column `k` of `boundary_d` is the boundary of
//! the `k`-th `d`-cell in the basis of `(d-1)`-cells. The dual decomposition
//! is obtained by transposition and reversal of the cell counts, so every
//! operation on the dual side is expressed through the same three matrices.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{kernel_basis, smith_normal_form, IntMatrix};

/// Which of the two dual decompositions a chain lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Primal => Side::Dual,
            Side::Dual => Side::Primal,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Primal => write!(f, "primal"),
            Side::Dual => write!(f, "dual"),
        }
    }
}

/// Cell counts `(P, F, E, V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellCounts {
    #[serde(rename = "P")]
    pub polyhedra: usize,
    #[serde(rename = "F")]
    pub faces: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    #[serde(rename = "V")]
    pub vertices: usize,
}

impl CellCounts {
    pub fn new(polyhedra: usize, faces: usize, edges: usize, vertices: usize) -> Self {
        Self {
            polyhedra,
            faces,
            edges,
            vertices,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.polyhedra as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellComplex {
    pub name: String,
    pub counts: CellCounts,
    /// `F x P`
    pub boundary3: IntMatrix,
    /// `E x F`
    pub boundary2: IntMatrix,
    /// `V x E`
    pub boundary1: IntMatrix,
}

/// An integer 1-cycle, either on the primal decomposition (indexed by edges)
/// or on the dual one (indexed by dual edges, i.e. primal faces).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub side: Side,
    pub components: Vec<BigInt>,
}

impl Cycle {
    pub fn new(side: Side, components: Vec<BigInt>) -> Self {
        Self { side, components }
    }

    pub fn primal(components: &[i64]) -> Self {
        Self::new(Side::Primal, components.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dual(components: &[i64]) -> Self {
        Self::new(Side::Dual, components.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(side: Side, len: usize) -> Self {
        Self::new(side, vec![BigInt::zero(); len])
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|x| x.is_zero())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self::new(self.side, self.components.iter().map(|x| x * k).collect())
    }

    /// Component-wise sum; both cycles must live on the same side and have
    /// equal length.
    pub fn plus(&self, other: &Cycle) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch {
                expected: self.side,
                found: other.side,
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "adding cycles of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self::new(
            self.side,
            self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|x| x.to_string()).collect();
        write!(f, "{}[{}]", self.side, parts.join(","))
    }
}

/// One structural check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn into_result(self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(f) => Err(Error::InvalidComplex {
                name: self.name.clone(),
                reason: format!("{}: {}", f.check, f.detail),
            }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            writeln!(f, "{:<12} {:<4} {}", c.check, mark, c.detail)?;
        }
        Ok(())
    }
}

pub const CHECK_SHAPES: &str = "shapes";
pub const CHECK_D1D2: &str = "d1*d2=0";
pub const CHECK_D2D3: &str = "d2*d3=0";
pub const CHECK_EULER: &str = "euler";
pub const CHECK_H0: &str = "H0=Z";
pub const CHECK_H3: &str = "H3=Z";

impl CellComplex {
    /// Assembles a complex without validating it; see [`CellComplex::validate`].
    pub fn from_parts(
        name: impl Into<String>,
        boundary3: IntMatrix,
        boundary2: IntMatrix,
        boundary1: IntMatrix,
    ) -> Self {
        let counts = CellCounts::new(
            boundary3.cols(),
            boundary3.rows(),
            boundary1.cols(),
            boundary1.rows(),
        );
        Self {
            name: name.into(),
            counts,
            boundary3,
            boundary2,
            boundary1,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let CellCounts {
            polyhedra: p,
            faces: f,
            edges: e,
            vertices: v,
        } = self.counts;
        let mut checks = Vec::new();

        let shapes = [
            ("boundary3", &self.boundary3, f, p),
            ("boundary2", &self.boundary2, e, f),
            ("boundary1", &self.boundary1, v, e),
        ];
        let bad_shape = shapes
            .iter()
            .find(|(_, m, r, c)| m.rows() != *r || m.cols() != *c)
            .map(|(n, m, r, c)| format!("{n} is {}x{}, expected {r}x{c}", m.rows(), m.cols()));
        checks.push(CheckResult {
            check: CHECK_SHAPES,
            passed: bad_shape.is_none(),
            detail: bad_shape.unwrap_or_else(|| format!("P={p} F={f} E={e} V={v}")),
        });
        if !checks[0].passed {
            return ValidationReport {
                name: self.name.clone(),
                checks,
            };
        }

        for (label, lhs, rhs, lname, rname) in [
            (CHECK_D1D2, &self.boundary1, &self.boundary2, "boundary1", "boundary2"),
            (CHECK_D2D3, &self.boundary2, &self.boundary3, "boundary2", "boundary3"),
        ] {
            let prod = lhs.mul(rhs).expect("shapes checked");
            let offending = (0..prod.rows())
                .flat_map(|i| (0..prod.cols()).map(move |j| (i, j)))
                .find(|&(i, j)| !prod.get(i, j).is_zero());
            checks.push(CheckResult {
                check: label,
                passed: offending.is_none(),
                detail: match offending {
                    None => "ok".to_string(),
                    Some((i, j)) => format!(
                        "({lname}*{rname})[{i}][{j}] = {} (row {i}, column {j})",
                        prod.get(i, j)
                    ),
                },
            });
        }

        let chi = self.counts.euler_characteristic();
        checks.push(CheckResult {
            check: CHECK_EULER,
            passed: chi == 0,
            detail: format!("V-E+F-P = {v}-{e}+{f}-{p} = {chi}"),
        });

        let rank1 = smith_normal_form(&self.boundary1).rank;
        let h0_ok = v >= 1 && rank1 == v - 1;
        checks.push(CheckResult {
            check: CHECK_H0,
            passed: h0_ok,
            detail: format!("rank(boundary1) = {rank1}, V-1 = {}", v as i64 - 1),
        });

        let rank3 = smith_normal_form(&self.boundary3).rank;
        let h3 = if p >= 1 && rank3 == p - 1 {
            let k = kernel_basis(&self.boundary3);
            if k.len() == 1 && k[0].iter().all(|x| x.abs().is_one()) {
                Ok(())
            } else {
                Err("fundamental class has coefficients other than +-1".to_string())
            }
        } else {
            Err(format!("rank(boundary3) = {rank3}, P-1 = {}", p as i64 - 1))
        };
        checks.push(CheckResult {
            check: CHECK_H3,
            passed: h3.is_ok(),
            detail: h3.err().unwrap_or_else(|| "fundamental class found".to_string()),
        });

        ValidationReport {
            name: self.name.clone(),
            checks,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().into_result()
    }

    /// The dual decomposition: counts reversed, boundaries transposed and
    /// shifted (`d3* = d1^T`, `d2* = d2^T`, `d1* = d3^T`).
    pub fn dualize(&self) -> Result<CellComplex> {
        self.ensure_valid()?;
        Ok(self.dual_unchecked())
    }

    pub(crate) fn dual_unchecked(&self) -> CellComplex {
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        CellComplex::from_parts(
            name,
            self.boundary1.transpose(),
            self.boundary2.transpose(),
            self.boundary3.transpose(),
        )
    }

    /// Fundamental class as a 3-chain, normalised so that its first nonzero
    /// coefficient is `+1`.
    pub fn fundamental_class(&self) -> Option<Vec<BigInt>> {
        let k = kernel_basis(&self.boundary3);
        let mut gen = match k.as_slice() {
            [g] => g.clone(),
            _ => return None,
        };
        if gen.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            gen.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        Some(gen)
    }

    /// Length of a 1-chain on the given side (`E` or `F`).
    pub fn cycle_len(&self, side: Side) -> usize {
        match side {
            Side::Primal => self.counts.edges,
            Side::Dual => self.counts.faces,
        }
    }

    /// Boundary map on 1-chains of the given side (`V x E` or `P x F`).
    pub fn cycle_boundary(&self, side: Side) -> IntMatrix {
        match side {
            Side::Primal => self.boundary1.clone(),
            Side::Dual => self.boundary3.transpose(),
        }
    }

    /// Boundary map from 2-chains to 1-chains of the given side
    /// (`E x F` or `F x E`).
    pub fn surface_boundary(&self, side: Side) -> IntMatrix {
        match side {
            Side::Primal => self.boundary2.clone(),
            Side::Dual => self.boundary2.transpose(),
        }
    }

    /// Checks that `z` is a 1-cycle of the decomposition on its side.
    pub fn check_cycle(&self, z: &Cycle) -> Result<()> {
        let len = self.cycle_len(z.side);
        if z.len() != len {
            return Err(Error::NotACycle {
                side: z.side,
                reason: format!("{} components, expected {len}", z.len()),
            });
        }
        let b = self.cycle_boundary(z.side).mul_vec(&z.components)?;
        if let Some(i) = b.iter().position(|x| !x.is_zero()) {
            return Err(Error::NotACycle {
                side: z.side,
                reason: format!("boundary has coefficient {} on cell {i}", b[i]),
            });
        }
        Ok(())
    }

    fn cells_in_dim(&self, dim: usize) -> Result<usize> {
        let CellCounts {
            polyhedra,
            faces,
            edges,
            vertices,
        } = self.counts;
        [vertices, edges, faces, polyhedra]
            .get(dim)
            .copied()
            .ok_or_else(|| Error::InvalidParameter(format!("cell dimension {dim} not in 0..=3")))
    }

    /// Renumbers the `dim`-cells so that old cell `i` becomes cell `perm[i]`.
    pub fn permute_cells(&self, dim: usize, perm: &[usize]) -> Result<CellComplex> {
        let count = self.cells_in_dim(dim)?;
        let mut seen = vec![false; count];
        if perm.len() != count || !perm.iter().all(|&p| p < count && !std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation of 0..{count}"
            )));
        }
        let rows = |m: &IntMatrix| {
            let mut out = IntMatrix::zeros(m.rows(), m.cols());
            for (i, &target) in perm.iter().enumerate() {
                for j in 0..m.cols() {
                    out.set(target, j, m.get(i, j).clone());
                }
            }
            out
        };
        let cols = |m: &IntMatrix| rows(&m.transpose()).transpose();
        let mut c = self.clone();
        match dim {
            0 => c.boundary1 = rows(&self.boundary1),
            1 => {
                c.boundary1 = cols(&self.boundary1);
                c.boundary2 = rows(&self.boundary2);
            }
            2 => {
                c.boundary2 = cols(&self.boundary2);
                c.boundary3 = rows(&self.boundary3);
            }
            _ => c.boundary3 = cols(&self.boundary3),
        }
        Ok(c)
    }

    /// Reverses the orientation of one `dim`-cell.
    pub fn reorient_cell(&self, dim: usize, cell: usize) -> Result<CellComplex> {
        let count = self.cells_in_dim(dim)?;
        if cell >= count {
            return Err(Error::InvalidParameter(format!(
                "cell {cell} out of range 0..{count}"
            )));
        }
        let negate_row = |m: &mut IntMatrix| {
            for j in 0..m.cols() {
                let x = -m.get(cell, j).clone();
                m.set(cell, j, x);
            }
        };
        let negate_col = |m: &mut IntMatrix| {
            for i in 0..m.rows() {
                let x = -m.get(i, cell).clone();
                m.set(i, cell, x);
            }
        };
        let mut c = self.clone();
        match dim {
            0 => negate_row(&mut c.boundary1),
            1 => {
                negate_col(&mut c.boundary1);
                negate_row(&mut c.boundary2);
            }
            2 => {
                negate_col(&mut c.boundary2);
                negate_row(&mut c.boundary3);
            }
            _ => negate_col(&mut c.boundary3),
        }
        Ok(c)
    }

    /// Splits edge `edge` in two by inserting a new vertex. The new edge is
    /// appended last and inherits the face incidences of `edge`; the new
    /// vertex is appended last.
    pub fn subdivide_edge(&self, edge: usize) -> Result<CellComplex> {
        let CellCounts {
            faces: f,
            edges: e,
            vertices: v,
            ..
        } = self.counts;
        if edge >= e {
            return Err(Error::InvalidParameter(format!("edge {edge} out of range 0..{e}")));
        }
        let col = self.boundary1.column(edge);
        let (_, target) = edge_endpoints(&col).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "edge {edge} does not join two distinct vertices with coefficients -1/+1"
            ))
        })?;

        let mut b1 = IntMatrix::zeros(v + 1, e + 1);
        for i in 0..v {
            for j in 0..e {
                b1.set(i, j, self.boundary1.get(i, j).clone());
            }
        }
        // edge: source -> new vertex; new edge: new vertex -> target
        b1.set(target, edge, BigInt::zero());
        b1.set(v, edge, BigInt::one());
        b1.set(v, e, -BigInt::one());
        b1.set(target, e, BigInt::one());

        let mut b2 = IntMatrix::zeros(e + 1, f);
        for i in 0..e {
            for j in 0..f {
                b2.set(i, j, self.boundary2.get(i, j).clone());
            }
        }
        for j in 0..f {
            b2.set(e, j, self.boundary2.get(edge, j).clone());
        }
        Ok(CellComplex::from_parts(
            self.name.clone(),
            self.boundary3.clone(),
            b2,
            b1,
        ))
    }

    pub fn to_file_format(&self) -> Result<ComplexFile> {
        let rows = |m: &IntMatrix, what: &str| -> Result<Vec<Vec<i64>>> {
            m.to_i64_rows().ok_or_else(|| {
                Error::InvalidParameter(format!("{what} has entries outside the 64-bit range"))
            })
        };
        Ok(ComplexFile {
            name: self.name.clone(),
            counts: self.counts,
            boundary3: rows(&self.boundary3, "boundary3")?,
            boundary2: rows(&self.boundary2, "boundary2")?,
            boundary1: rows(&self.boundary1, "boundary1")?,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = self.to_file_format()?;
        Ok(serde_json::to_string_pretty(&file).expect("plain data serialises"))
    }

    /// Parses a complex from its JSON text, checking shapes but not the
    /// structural axioms.
    pub fn parse_json(text: &str) -> Result<CellComplex> {
        let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.into_complex()
    }

    /// Parses and validates a complex from its JSON text.
    pub fn from_json(text: &str) -> Result<CellComplex> {
        let c = Self::parse_json(text)?;
        c.ensure_valid()?;
        Ok(c)
    }

    pub fn read_unchecked(path: impl AsRef<Path>) -> Result<CellComplex> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse_json(&text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<CellComplex> {
        let c = Self::read_unchecked(path)?;
        c.ensure_valid()?;
        Ok(c)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// `(source, target)` of an edge whose boundary column is `target - source`.
pub(crate) fn edge_endpoints(column: &[BigInt]) -> Option<(usize, usize)> {
    let nonzero: Vec<usize> = (0..column.len()).filter(|&i| !column[i].is_zero()).collect();
    match nonzero.as_slice() {
        [a, b] => {
            let (x, y) = (column[*a].to_i64()?, column[*b].to_i64()?);
            match (x, y) {
                (-1, 1) => Some((*a, *b)),
                (1, -1) => Some((*b, *a)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// On-disk JSON representation of a [`CellComplex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    pub counts: CellCounts,
    pub boundary3: Vec<Vec<i64>>,
    pub boundary2: Vec<Vec<i64>>,
    pub boundary1: Vec<Vec<i64>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<CellComplex> {
        let c = self.counts;
        let build = |rows: &[Vec<i64>], r: usize, k: usize, field: &str| -> Result<IntMatrix> {
            if rows.len() != r {
                return Err(Error::InvalidComplex {
                    name: self.name.clone(),
                    reason: format!("field `{field}` has {} rows, expected {r}", rows.len()),
                });
            }
            IntMatrix::from_rows(rows, k).map_err(|e| Error::InvalidComplex {
                name: self.name.clone(),
                reason: format!("field `{field}`: {e}"),
            })
        };
        let b3 = build(&self.boundary3, c.faces, c.polyhedra, "boundary3")?;
        let b2 = build(&self.boundary2, c.edges, c.faces, "boundary2")?;
        let b1 = build(&self.boundary1, c.vertices, c.edges, "boundary1")?;
        Ok(CellComplex {
            name: self.name,
            counts: c,
            boundary3: b3,
            boundary2: b2,
            boundary1: b1,
        })
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["s3", "s1xs2", "rp3", "lens"];

/// Builtin genus-one decompositions. `param` is the lens order and is only
/// read for `lens`.
pub fn builtin(name: &str, param: Option<u64>) -> Result<CellComplex> {
    match name {
        "s3" => Ok(s3()),
        "s1xs2" => Ok(s1xs2()),
        "rp3" => Ok(rp3()),
        "lens" => {
            let p = param.ok_or_else(|| {
                Error::InvalidParameter("lens needs an order p >= 2".to_string())
            })?;
            lens(p)
        }
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// Assemble a builtin from the printed `d_(1)` (rows = faces, columns = edges).
fn from_face_rows(
    name: &str,
    face_rows: &[Vec<i64>],
    edges: usize,
    boundary1_rows: &[Vec<i64>],
    boundary3_rows: &[Vec<i64>],
) -> CellComplex {
    let d1 = IntMatrix::from_rows(face_rows, edges).expect("builtin data");
    let b1 = IntMatrix::from_rows(boundary1_rows, edges).expect("builtin data");
    let b3 = IntMatrix::from_rows(boundary3_rows, 2).expect("builtin data");
    CellComplex::from_parts(name, b3, d1.transpose(), b1)
}

/// Boundary of the two 3-cells of a Heegaard-type complex whose first two
/// faces make up the splitting surface.
fn heegaard_boundary3(faces: usize) -> Vec<Vec<i64>> {
    (0..faces)
        .map(|a| if a < 2 { vec![1, -1] } else { vec![0, 0] })
        .collect()
}

/// S^3: one vertex, two loops, each bounding a meridian disk.
pub fn s3() -> CellComplex {
    from_face_rows(
        "s3",
        &[vec![0, 0], vec![1, 0], vec![0, 1]],
        2,
        &[vec![0, 0]],
        &[vec![1, -1], vec![0, 0], vec![0, 0]],
    )
}

/// S^1 x S^2: the identity gluing of two solid tori.
pub fn s1xs2() -> CellComplex {
    from_face_rows(
        "s1xs2",
        &[
            vec![0, 0, 0, 1, -1],
            vec![0, 0, 0, -1, 1],
            vec![1, 1, 1, 0, 0],
            vec![1, 1, 1, 0, 0],
        ],
        5,
        // e1: x1->x2, e2: x2->x3, e3: x3->x1; e4, e5 are loops
        &[
            vec![-1, 0, 1, 0, 0],
            vec![1, -1, 0, 0, 0],
            vec![0, 1, -1, 0, 0],
        ],
        &heegaard_boundary3(4),
    )
}

pub fn rp3() -> CellComplex {
    let mut c = lens(2).expect("p = 2 is valid");
    c.name = "rp3".to_string();
    c
}

/// Orientation sign of a builtin against the usual tabulated expectation
/// values. With sign `-1` the tabulated values are the complex conjugates of
/// the ones computed here: reversing the orientation flips every dual cell
/// and so sends `z2` to `-z2`.
pub fn orientation_sign(name: &str) -> Option<i8> {
    match name {
        "s3" | "s1xs2" => Some(-1),
        "rp3" | "lens" => Some(1),
        _ => None,
    }
}

/// Lens space L(p, 1): the RP^3 diagram with the meridian of the second
/// solid torus glued along a curve winding `p` times.
pub fn lens(p: u64) -> Result<CellComplex> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("lens order must be >= 2, got {p}")));
    }
    let p = i64::try_from(p)
        .map_err(|_| Error::InvalidParameter(format!("lens order {p} too large")))?;
    let up = (p + 1) / 2;
    let down = p / 2;
    let surface = vec![up, -down, -up, down];
    Ok(from_face_rows(
        &format!("lens({p})"),
        &[
            surface.clone(),
            surface.iter().map(|x| -x).collect(),
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
        ],
        4,
        &[vec![-1, 1, -1, 1], vec![1, -1, 1, -1]],
        &heegaard_boundary3(4),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_builtins() -> Vec<CellComplex> {
        vec![s3(), s1xs2(), rp3(), lens(3).unwrap(), lens(4).unwrap(), lens(5).unwrap()]
    }

    #[test]
    fn builtins_are_valid() {
        for c in all_builtins() {
            let r = c.validate();
            assert!(r.is_valid(), "{}:\n{}", c.name, r);
        }
    }

    #[test]
    fn builtin_counts() {
        assert_eq!(s3().counts, CellCounts::new(2, 3, 2, 1));
        assert_eq!(s1xs2().counts, CellCounts::new(2, 4, 5, 3));
        assert_eq!(rp3().counts, CellCounts::new(2, 4, 4, 2));
    }

    #[test]
    fn builtin_boundary2_is_transposed_print() {
        let d1 = IntMatrix::from_rows(
            &[vec![1, -1, -1, 1], vec![-1, 1, 1, -1], vec![1, 1, 0, 0], vec![0, 0, 1, 1]],
            4,
        )
        .unwrap();
        assert_eq!(rp3().boundary2, d1.transpose());
        let d1 = IntMatrix::from_rows(&[vec![0, 0], vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(s3().boundary2, d1.transpose());
    }

    #[test]
    fn lens_two_is_rp3() {
        let l2 = lens(2).unwrap();
        let r = rp3();
        assert_eq!(
            (l2.boundary1, l2.boundary2, l2.boundary3),
            (r.boundary1, r.boundary2, r.boundary3)
        );
    }

    #[test]
    fn builtin_errors() {
        assert!(matches!(builtin("t3", None), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(builtin("lens", Some(1)), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin("lens", None), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn flipped_entry_breaks_boundary_square() {
        let mut c = s1xs2();
        let x = c.boundary2.get(0, 2).clone();
        c.boundary2.set(0, 2, -x);
        let r = c.validate();
        assert!(!r.check(CHECK_D1D2).unwrap().passed);
        assert!(!r.is_valid());
    }

    #[test]
    fn euler_failure() {
        let c = CellComplex::from_parts(
            "bad",
            IntMatrix::zeros(1, 1),
            IntMatrix::zeros(1, 1),
            IntMatrix::zeros(2, 1),
        );
        let r = c.validate();
        assert!(!r.check(CHECK_EULER).unwrap().passed);
    }

    #[test]
    fn dual_counts_and_involution() {
        let d = s3().dualize().unwrap();
        assert_eq!(d.counts, CellCounts::new(1, 2, 3, 2));
        assert!(d.validate().is_valid());
        for c in all_builtins() {
            assert_eq!(c.dualize().unwrap().dualize().unwrap(), c);
        }
    }

    #[test]
    fn fundamental_class_normalised() {
        assert_eq!(
            s3().fundamental_class().unwrap(),
            vec![BigInt::one(), BigInt::one()]
        );
    }

    #[test]
    fn cycle_checks() {
        let c = rp3();
        assert!(c.check_cycle(&Cycle::primal(&[1, 0, 0, 1])).is_ok());
        assert!(matches!(
            c.check_cycle(&Cycle::primal(&[1, 0, 0, 0])),
            Err(Error::NotACycle { .. })
        ));
        assert!(c.check_cycle(&Cycle::dual(&[0, 0, 1, 0])).is_ok());
        assert!(c.check_cycle(&Cycle::dual(&[1, 0, 0, 0])).is_err());
        assert!(c.check_cycle(&Cycle::dual(&[0, 0, 1])).is_err());
    }

    #[test]
    fn json_round_trip() {
        for c in all_builtins() {
            let back = CellComplex::from_json(&c.to_json().unwrap()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn json_rejects_floats_and_unknown_fields() {
        let text = s3().to_json().unwrap().replacen("[\n      0,", "[\n      0.5,", 1);
        assert!(matches!(CellComplex::from_json(&text), Err(Error::Parse { .. })));
        let text = s3().to_json().unwrap().replacen("{", "{\"extra\": 1,", 1);
        assert!(matches!(CellComplex::from_json(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_reports_boundary_square_entry() {
        let mut c = s1xs2();
        c.boundary2.set(0, 2, BigInt::from(-1));
        let err = CellComplex::from_json(&c.to_json().unwrap()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("d1*d2=0") && msg.contains("[0][2]"), "{msg}");
    }

    #[test]
    fn subdivision_stays_valid() {
        let c = s1xs2().subdivide_edge(0).unwrap();
        assert_eq!(c.counts, CellCounts::new(2, 4, 6, 4));
        assert!(c.validate().is_valid());
        assert!(s3().subdivide_edge(0).is_err(), "loops cannot be subdivided");
    }

    #[test]
    fn permutation_and_reorientation() {
        let c = rp3();
        let p = c.permute_cells(1, &[2, 0, 1, 3]).unwrap();
        assert!(p.validate().is_valid());
        assert_eq!(p.boundary1.column(2), c.boundary1.column(0));
        assert_eq!(p.boundary2.row(0), c.boundary2.row(1));
        assert_eq!(p.permute_cells(1, &[1, 2, 0, 3]).unwrap(), c);
        assert!(c.permute_cells(1, &[0, 0, 1, 2]).is_err());
        assert!(c.permute_cells(4, &[]).is_err());

        for dim in 0..4 {
            let r = c.reorient_cell(dim, 0).unwrap();
            assert!(r.validate().is_valid());
            assert_ne!(r, c);
            assert_eq!(r.reorient_cell(dim, 0).unwrap(), c);
        }
        assert!(c.reorient_cell(3, 5).is_err());
    }
}
