use std::fmt;
use std::str::FromStr;

use num::Zero;

use super::SubspacePoint;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::poly::poly_determinant;
use crate::linalg::{self, Matrix, Poly};
use crate::rational::{self, Rational};

/// A `k × n` matrix of polynomials in one parameter: a curve in `Gr(k, n)`
/// away from the finitely many parameters where its rank drops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialPath {
    parameter: String,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LimitPoint {
    Finite(Rational),
    Infinity,
}

impl FromStr for LimitPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(LimitPoint::Infinity),
            other => rational::parse(other).map(LimitPoint::Finite),
        }
    }
}

impl fmt::Display for LimitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitPoint::Finite(r) => f.write_str(&rational::format(r)),
            LimitPoint::Infinity => f.write_str("inf"),
        }
    }
}

impl PolynomialPath {
    /// Row-major entries; rejected when every maximal minor vanishes
    /// identically.
    pub fn new(parameter: impl Into<String>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        if rows > cols {
            return Err(Error::RankDeficient { expected: rows, got: cols });
        }
        let path = PolynomialPath { parameter: parameter.into(), rows, cols, entries };
        if path.pluecker_polys().iter().all(Poly::is_zero) {
            return Err(Error::RankDeficient { expected: rows, got: path.generic_rank() });
        }
        Ok(path)
    }

    /// Path with no rank check; used for deliberately degenerate inputs.
    pub fn new_unchecked(parameter: impl Into<String>, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(PolynomialPath { parameter: parameter.into(), rows, cols, entries })
    }

    pub fn constant(m: &Matrix) -> Result<Self> {
        Self::new("t", m.rows(), m.cols(), m.flat().iter().cloned().map(Poly::constant).collect())
    }

    /// `base + t·direction`.
    pub fn linear(base: &Matrix, direction: &Matrix) -> Result<Self> {
        if base.rows() != direction.rows() || base.cols() != direction.cols() {
            return Err(Error::input("base and direction must have the same shape"));
        }
        let entries =
            base.flat().iter().zip(direction.flat()).map(|(a, b)| Poly::new(vec![a.clone(), b.clone()])).collect();
        Self::new("t", base.rows(), base.cols(), entries)
    }

    /// Rows `exp(tN)·X_i·exp(−tN)` for the realizations `X_i` of `rows`,
    /// expressed in the coordinates of `l`.
    pub fn adjoint_orbit(l: &LieAlgebra, rows: &[Vec<Rational>], nil: &Matrix) -> Result<Self> {
        let m = l.require_realization()?;
        if nil.rows() != m || !nil.is_nilpotent() {
            return Err(Error::precondition(
                "conjugating generator must be a nilpotent matrix of the realization size",
            ));
        }
        // powers N^i / i! and (−N)^j / j!
        let mut pos = vec![Matrix::identity(m)];
        let mut neg = vec![Matrix::identity(m)];
        let minus = nil.scale(&rational::int(-1));
        while !pos.last().unwrap().is_zero() {
            let i = rational::int(pos.len() as i64);
            pos.push(pos.last().unwrap().mul(nil).scale(&i.recip()));
            neg.push(neg.last().unwrap().mul(&minus).scale(&i.recip()));
        }
        pos.pop();
        neg.pop();
        let n = l.dim();
        let top = 2 * (pos.len() - 1);
        let mut entries = vec![Poly::zero(); rows.len() * n];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            let x = l.realize(row);
            let mut coeffs: Vec<Vec<Rational>> = vec![vec![Rational::zero(); top + 1]; n];
            for (i, p) in pos.iter().enumerate() {
                for (j, q) in neg.iter().enumerate() {
                    let term = p.mul(&x).mul(q);
                    if term.is_zero() {
                        continue;
                    }
                    let c = l.coordinates_of(&term).ok_or_else(|| Error::input("conjugate leaves the algebra"))?;
                    for (col, v) in c.into_iter().enumerate() {
                        coeffs[col][i + j] += v;
                    }
                }
            }
            for (col, cs) in coeffs.into_iter().enumerate() {
                entries[r * n + col] = Poly::new(cs);
            }
        }
        Self::new("t", rows.len(), n, entries)
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, t: &Rational) -> Matrix {
        Matrix::from_flat(self.rows, self.cols, self.entries.iter().map(|p| p.eval(t)).collect())
    }

    /// Rank of the path matrix over ℚ(t), read off the Plücker polynomials
    /// of every row subset size.
    pub fn generic_rank(&self) -> usize {
        (1..=self.rows)
            .rev()
            .find(|&r| {
                linalg::combinations(self.rows, r)
                    .iter()
                    .any(|rs| linalg::combinations(self.cols, r).iter().any(|cs| !self.minor(rs, cs).is_zero()))
            })
            .unwrap_or(0)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let m: Vec<Vec<Poly>> =
            rows.iter().map(|&i| cols.iter().map(|&j| self.entry(i, j).clone()).collect()).collect();
        poly_determinant(&m)
    }

    /// Maximal minors in lexicographic column order.
    pub fn pluecker_polys(&self) -> Vec<Poly> {
        let all_rows: Vec<usize> = (0..self.rows).collect();
        linalg::combinations(self.cols, self.rows).iter().map(|cs| self.minor(&all_rows, cs)).collect()
    }

    /// Whether the evaluated matrix has full rank `k` at `t`.
    pub fn is_regular_at(&self, t: &Rational) -> bool {
        self.eval(t).rank() == self.rows
    }

    /// Point of the curve at a regular parameter.
    pub fn point_at(&self, t: &Rational) -> Result<SubspacePoint> {
        SubspacePoint::canonicalize(&self.eval(t)).map_err(|_| Error::DegenerateParameter {
            parameter: rational::format(t),
            reason: format!("path matrix drops below rank {}", self.rows),
        })
    }

    /// Applies a linear map of the ambient coordinates to every row
    /// (`row ↦ m · row`).
    pub fn map_rows(&self, m: &Matrix) -> Result<Self> {
        if m.cols() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: m.cols() });
        }
        let mut entries = vec![Poly::zero(); self.rows * m.rows()];
        for i in 0..self.rows {
            for a in 0..m.rows() {
                let mut acc = Poly::zero();
                for j in 0..self.cols {
                    if !m[(a, j)].is_zero() {
                        acc = acc.add(&self.entry(i, j).scale(&m[(a, j)]));
                    }
                }
                entries[i * m.rows() + a] = acc;
            }
        }
        Self::new(self.parameter.clone(), self.rows, m.rows(), entries)
    }
}

/// Exact limit of the curve at a finite parameter or at infinity.
///
/// The Plücker polynomials are divided by their gcd, so at a finite point
/// they do not all vanish; at infinity the coefficients of the common top
/// degree are taken (equivalently, substitute `t = 1/s` and set `s = 0`).
pub fn limit_of_path(path: &PolynomialPath, at: &LimitPoint) -> Result<SubspacePoint> {
    let polys = path.pluecker_polys();
    if polys.iter().all(Poly::is_zero) {
        return Err(Error::RankDeficient { expected: path.rows(), got: path.generic_rank() });
    }
    let g = polys.iter().fold(Poly::zero(), |acc, p| acc.gcd(p));
    let reduced: Vec<Poly> = polys.iter().map(|p| p.exact_div(&g).expect("gcd divides")).collect();
    let coords: Vec<Rational> = match at {
        LimitPoint::Finite(t) => reduced.iter().map(|p| p.eval(t)).collect(),
        LimitPoint::Infinity => {
            let top = reduced.iter().filter_map(Poly::degree).max().unwrap_or(0);
            reduced.iter().map(|p| p.coeff(top)).collect()
        }
    };
    debug_assert!(coords.iter().any(|c| !c.is_zero()));
    if path.rows() == 0 {
        return SubspacePoint::canonicalize(&Matrix::zeros(0, path.cols()));
    }
    SubspacePoint::from_pluecker(path.cols(), path.rows(), &coords)
}

impl PolynomialPath {
    pub fn limit(&self, at: &LimitPoint) -> Result<SubspacePoint> {
        limit_of_path(self, at)
    }
}
