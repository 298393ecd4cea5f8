//! Points and curves of the Grassmannian `Gr(k, n)`.
//!
//! Plücker coordinates are the maximal minors of the echelon basis, indexed
//! by `k`-subsets of columns in lexicographic order and normalized so the
//! first nonzero coordinate is 1.

mod equations;
mod path;

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};

pub use equations::{lambda_equations, PolynomialSystem};
pub use path::{limit_of_path, LimitPoint, PolynomialPath};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspacePoint {
    ambient_dim: usize,
    basis: Matrix,
    pluecker: Vec<Rational>,
}

impl SubspacePoint {
    /// Canonical point spanned by the rows of `m`, which must be independent.
    pub fn canonicalize(m: &Matrix) -> Result<Self> {
        let (basis, _) = m.rref();
        if basis.rows() != m.rows() {
            return Err(Error::RankDeficient { expected: m.rows(), got: basis.rows() });
        }
        Ok(Self::from_rref(basis, m.cols()))
    }

    pub fn from_rows(rows: &[Vec<Rational>], n: usize) -> Result<Self> {
        Self::canonicalize(&Matrix::from_rows_with_cols(rows.to_vec(), n)?)
    }

    pub(crate) fn from_rref(basis: Matrix, n: usize) -> Self {
        let pluecker = minors(&basis);
        SubspacePoint { ambient_dim: n, basis, pluecker }
    }

    /// Inverse of [`SubspacePoint::pluecker`]; rejects vectors that are not
    /// decomposable.
    pub fn from_pluecker(n: usize, k: usize, coords: &[Rational]) -> Result<Self> {
        let subsets = linalg::combinations(n, k);
        if coords.len() != subsets.len() {
            return Err(Error::DimensionMismatch { expected: subsets.len(), got: coords.len() });
        }
        let first = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::input("the zero vector is not a Plücker point"))?;
        let index = subset_index(n, k);
        let pivots = &subsets[first];
        let lead = &coords[first];
        let mut rows = Vec::with_capacity(k);
        for a in 0..k {
            let row: Vec<Rational> = (0..n)
                .map(|j| {
                    let mut list = pivots.clone();
                    list[a] = j;
                    signed_coordinate(&list, &index, coords) / lead
                })
                .collect();
            rows.push(row);
        }
        let point = Self::from_rows(&rows, n)?;
        if point.pluecker != normalize(coords) {
            return Err(Error::input("coordinates violate the Plücker relations"));
        }
        Ok(point)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn k(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn pluecker(&self) -> &[Rational] {
        &self.pluecker
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        linalg::in_span(&self.basis, v)
    }

    /// Whether every bracket of basis rows stays in the span.
    pub fn is_lie_subalgebra(&self, l: &LieAlgebra) -> Result<bool> {
        if l.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: l.dim(), got: self.ambient_dim });
        }
        let rows = self.rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if !self.contains(&l.bracket_unchecked(&rows[i], &rows[j])) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_subalgebra(&self, l: &std::sync::Arc<LieAlgebra>) -> Result<Subalgebra> {
        if l.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: l.dim(), got: self.ambient_dim });
        }
        Subalgebra::span(l.clone(), &self.rows())
    }
}

impl fmt::Debug for SubspacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| crate::rational::format_vec(r)).collect();
        write!(f, "SubspacePoint(n={}, rows={rows:?})", self.ambient_dim)
    }
}

/// All maximal minors in lexicographic column order, normalized.
fn minors(basis: &Matrix) -> Vec<Rational> {
    let k = basis.rows();
    let raw: Vec<Rational> = linalg::combinations(basis.cols(), k)
        .iter()
        .map(|cols| if k == 0 { Rational::one() } else { basis.select_columns(cols).determinant() })
        .collect();
    normalize(&raw)
}

pub(crate) fn normalize(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|c| c * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub(crate) fn subset_index(n: usize, k: usize) -> HashMap<Vec<usize>, usize> {
    linalg::combinations(n, k).into_iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Sign and sorted-subset index of an index list, or `None` on repeats.
pub(crate) fn signed_slot(list: &[usize], index: &HashMap<Vec<usize>, usize>) -> Option<(bool, usize)> {
    let mut sorted = list.to_vec();
    let mut negative = false;
    // bubble sort tracks the permutation sign
    for i in 0..sorted.len() {
        for j in 0..sorted.len().saturating_sub(1 + i) {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((negative, index[&sorted]))
}

fn signed_coordinate(list: &[usize], index: &HashMap<Vec<usize>, usize>, coords: &[Rational]) -> Rational {
    match signed_slot(list, index) {
        None => Rational::zero(),
        Some((neg, i)) => {
            if neg {
                -coords[i].clone()
            } else {
                coords[i].clone()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtins::sl;
    use crate::rational::{frac, int};

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn canonical_forms() {
        // (h+e, e) -> (h, e)
        let p = SubspacePoint::from_rows(&[v(&[1, 1, 0]), v(&[0, 1, 0])], 3).unwrap();
        assert_eq!(p.rows(), vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let q = SubspacePoint::from_rows(&[v(&[2, 0, 0])], 3).unwrap();
        assert_eq!(q.rows(), vec![v(&[1, 0, 0])]);
        assert!(matches!(
            SubspacePoint::from_rows(&[v(&[1, 0, 0]), v(&[2, 0, 0])], 3),
            Err(Error::RankDeficient { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn pluecker_of_e_wedge_f() {
        // columns (h, e, f): minors on {h,e}, {h,f}, {e,f} of rows e, f
        let p = SubspacePoint::from_rows(&[v(&[0, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        assert_eq!(p.pluecker(), &v(&[0, 0, 1])[..]);
        let r = SubspacePoint::from_rows(&[v(&[1, 2, 0]), v(&[0, 1, 3])], 3).unwrap();
        // minors of [[1,2,0],[0,1,3]]: 1, 3, 6
        assert_eq!(r.pluecker(), &v(&[1, 3, 6])[..]);
    }

    #[test]
    fn pluecker_roundtrip() {
        let p = SubspacePoint::from_rows(&[v(&[0, 1, 2, -1]), v(&[3, 0, 1, 1])], 4).unwrap();
        let q = SubspacePoint::from_pluecker(4, 2, &p.pluecker().iter().map(|c| c * frac(-5, 3)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(p, q);
        // e12 + e34 is not decomposable
        assert!(SubspacePoint::from_pluecker(4, 2, &v(&[1, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn subalgebra_membership() {
        let sl2 = sl(2).unwrap();
        let borel = SubspacePoint::from_rows(&[v(&[1, 0, 0]), v(&[0, 1, 0])], 3).unwrap();
        let ef = SubspacePoint::from_rows(&[v(&[0, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        assert!(borel.is_lie_subalgebra(&sl2).unwrap());
        assert!(!ef.is_lie_subalgebra(&sl2).unwrap());
        let line = SubspacePoint::from_rows(&[v(&[3, -1, 7])], 3).unwrap();
        assert!(line.is_lie_subalgebra(&sl2).unwrap());
    }

    #[test]
    fn zero_dimensional_point() {
        let p = SubspacePoint::canonicalize(&Matrix::zeros(0, 3)).unwrap();
        assert_eq!(p.k(), 0);
        assert_eq!(p.pluecker(), &[int(1)][..]);
    }
}
