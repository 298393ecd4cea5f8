//! Built-in algebras (`sl(n)`, `gl(n)`) and standard subalgebras.
//!
//! Basis of `sl(n)`: the diagonal elements `h_i = E_ii - E_(i+1)(i+1)`, then
//! `E_ij` for `i < j` in lexicographic order, then `E_ij` for `i > j`.
//! For `n = 2` this is `(h, e, f)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::Matrix;
use crate::rational::Rational;

pub fn sl(n: usize) -> Result<Arc<LieAlgebra>> {
    if !(2..=4).contains(&n) {
        return Err(Error::unsupported(format!("built-in sl(n) is provided for 2 <= n <= 4, got {n}")));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n - 1 {
        names.push(if n == 2 { "h".to_string() } else { format!("h{}", i + 1) });
        mats.push(Matrix::unit(n, i, i).sub(&Matrix::unit(n, i + 1, i + 1)));
    }
    for (upper, label) in [(true, "e"), (false, "f")] {
        for i in 0..n {
            for j in 0..n {
                if (upper && i < j) || (!upper && i > j) {
                    names.push(if n == 2 { label.to_string() } else { format!("E{}{}", i + 1, j + 1) });
                    mats.push(Matrix::unit(n, i, j));
                }
            }
        }
    }
    LieAlgebra::from_matrices(format!("sl{n}"), names, mats).map(Arc::new)
}

pub fn gl(n: usize) -> Result<Arc<LieAlgebra>> {
    if !(1..=4).contains(&n) {
        return Err(Error::unsupported(format!("built-in gl(n) is provided for 1 <= n <= 4, got {n}")));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(format!("E{}{}", i + 1, j + 1));
            mats.push(Matrix::unit(n, i, j));
        }
    }
    LieAlgebra::from_matrices(format!("gl{n}"), names, mats).map(Arc::new)
}

/// Resolve names like `sl3` or `gl2`.
pub fn by_name(name: &str) -> Result<Arc<LieAlgebra>> {
    let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::input(format!("unknown built-in algebra {name:?}")));
    if let Some(rest) = name.strip_prefix("sl") {
        sl(parse(rest)?)
    } else if let Some(rest) = name.strip_prefix("gl") {
        gl(parse(rest)?)
    } else {
        Err(Error::input(format!("unknown built-in algebra {name:?}")))
    }
}

/// Coordinates of a matrix in the algebra's realization.
pub fn element(alg: &LieAlgebra, m: &Matrix) -> Result<Vec<Rational>> {
    alg.coordinates_of(m).ok_or_else(|| Error::input(format!("matrix {m} is not in {}", alg.name())))
}

/// Span of the given matrices as a subalgebra.
pub fn span_of_matrices(alg: &Arc<LieAlgebra>, mats: &[Matrix]) -> Result<Subalgebra> {
    let rows = mats.iter().map(|m| element(alg, m)).collect::<Result<Vec<_>>>()?;
    Subalgebra::span(alg.clone(), &rows)
}

fn matrix_size(alg: &LieAlgebra) -> Result<usize> {
    alg.require_realization()
}

/// Traceless diagonal matrices inside the algebra's realization.
pub fn diagonal_torus(alg: &Arc<LieAlgebra>) -> Result<Subalgebra> {
    let m = matrix_size(alg)?;
    let mats: Vec<Matrix> = (0..m - 1).map(|i| Matrix::unit(m, i, i).sub(&Matrix::unit(m, i + 1, i + 1))).collect();
    span_of_matrices(alg, &mats)
}

/// Upper-triangular traceless matrices.
pub fn borel(alg: &Arc<LieAlgebra>) -> Result<Subalgebra> {
    let m = matrix_size(alg)?;
    let mut mats: Vec<Matrix> = (0..m - 1).map(|i| Matrix::unit(m, i, i).sub(&Matrix::unit(m, i + 1, i + 1))).collect();
    for i in 0..m {
        for j in i + 1..m {
            mats.push(Matrix::unit(m, i, j));
        }
    }
    span_of_matrices(alg, &mats)
}

/// Strictly upper-triangular matrices; the Heisenberg algebra for `m = 3`.
pub fn upper_nilradical(alg: &Arc<LieAlgebra>) -> Result<Subalgebra> {
    let m = matrix_size(alg)?;
    let mut mats = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            mats.push(Matrix::unit(m, i, j));
        }
    }
    span_of_matrices(alg, &mats)
}

pub fn heisenberg_sl3(sl3: &Arc<LieAlgebra>) -> Result<Subalgebra> {
    if sl3.realization_size() != Some(3) {
        return Err(Error::input("the Heisenberg subalgebra is defined inside 3x3 matrices"));
    }
    upper_nilradical(sl3)
}

/// `sl2` in the top-left `2 × 2` block.
pub fn top_left_sl2(alg: &Arc<LieAlgebra>) -> Result<Subalgebra> {
    let m = matrix_size(alg)?;
    if m < 2 {
        return Err(Error::input("need matrices of size at least 2"));
    }
    let mats = vec![Matrix::unit(m, 0, 0).sub(&Matrix::unit(m, 1, 1)), Matrix::unit(m, 0, 1), Matrix::unit(m, 1, 0)];
    span_of_matrices(alg, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn sl2_basis_and_brackets() {
        let sl2 = sl(2).unwrap();
        assert_eq!(sl2.basis_names(), &["h", "e", "f"]);
        let (h, e, f) = (vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]);
        assert_eq!(sl2.bracket(&h, &e).unwrap(), vec![int(0), int(2), int(0)]);
        assert_eq!(sl2.bracket(&e, &f).unwrap(), h);
        assert_eq!(sl2.bracket(&h, &f).unwrap(), vec![int(0), int(0), int(-2)]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(sl(3).unwrap().dim(), 8);
        assert_eq!(sl(4).unwrap().dim(), 15);
        assert_eq!(gl(3).unwrap().dim(), 9);
        assert_eq!(by_name("gl2").unwrap().dim(), 4);
        assert!(by_name("so3").is_err());
        assert!(sl(5).unwrap_err().is_unsupported());
    }

    #[test]
    fn standard_subalgebras() {
        let sl3 = sl(3).unwrap();
        assert_eq!(diagonal_torus(&sl3).unwrap().dim(), 2);
        assert_eq!(borel(&sl3).unwrap().dim(), 5);
        assert_eq!(heisenberg_sl3(&sl3).unwrap().dim(), 3);
        assert_eq!(top_left_sl2(&sl3).unwrap().dim(), 3);
    }
}
