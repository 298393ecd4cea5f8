use std::sync::OnceLock;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// One stored bracket `[e_i, e_j] = Σ c_k e_k` with `i < j`.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

/// Finite-dimensional Lie algebra over ℚ given by structure constants on a
/// named basis, optionally with a faithful matrix realization.
#[derive(Debug)]
pub struct LieAlgebra {
    name: String,
    basis_names: Vec<String>,
    // table[i * n + j] = coordinates of [e_i, e_j]
    table: Vec<Vec<Rational>>,
    realization: Option<Realization>,
    killing: OnceLock<Matrix>,
}

#[derive(Debug)]
struct Realization {
    size: usize,
    matrices: Vec<Matrix>,
    // flattened realizations as rows, reduced: solves for coordinates
    flat_rref: Matrix,
    flat_rows: Matrix,
}

impl LieAlgebra {
    /// Builds an algebra from the `i < j` brackets, checking antisymmetry
    /// conventions, the Jacobi identity on every basis triple and, when a
    /// realization is given, that commutators match the brackets.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Vec<BracketEntry>,
        matrices: Option<Vec<Matrix>>,
    ) -> Result<Self> {
        let n = basis_names.len();
        if n == 0 {
            return Err(Error::input("a Lie algebra needs a nonempty basis"));
        }
        let mut table = vec![vec![Rational::zero(); n]; n * n];
        let mut seen = vec![false; n * n];
        for (i, j, terms) in brackets {
            if i >= j || j >= n {
                return Err(Error::InvalidStructure(format!("bracket index pair ({i}, {j}) must satisfy i < j < {n}")));
            }
            if std::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::InvalidStructure(format!("bracket ({i}, {j}) given twice")));
            }
            for (k, c) in terms {
                if k >= n {
                    return Err(Error::InvalidStructure(format!("coefficient index {k} out of range")));
                }
                table[i * n + j][k] += &c;
                table[j * n + i][k] -= c;
            }
        }
        let realization = matrices.map(|m| Realization::new(m, n)).transpose()?;
        let alg = LieAlgebra { name: name.into(), basis_names, table, realization, killing: OnceLock::new() };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(Error::InvalidStructure(format!("Jacobi identity fails on basis triple ({i}, {j}, {k})")));
        }
        if let Some(r) = &alg.realization {
            for i in 0..n {
                for j in i + 1..n {
                    let comm = r.matrices[i].commutator(&r.matrices[j]);
                    if comm != alg.realize(&alg.table[i * n + j]) {
                        return Err(Error::InvalidStructure(format!(
                            "matrix commutator of basis pair ({i}, {j}) disagrees with the bracket"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Structure constants read off a linearly independent family of
    /// matrices closed under the commutator.
    pub fn from_matrices(name: impl Into<String>, basis_names: Vec<String>, matrices: Vec<Matrix>) -> Result<Self> {
        let n = matrices.len();
        if basis_names.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: basis_names.len() });
        }
        let real = Realization::new(matrices.clone(), n)?;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let comm = matrices[i].commutator(&matrices[j]);
                let coords = real
                    .coordinates(&comm)
                    .ok_or_else(|| Error::NotClosed(format!("commutator of basis pair ({i}, {j}) leaves the span")))?;
                let terms: Vec<(usize, Rational)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    brackets.push((i, j, terms));
                }
            }
        }
        Self::new(name, basis_names, brackets, Some(matrices))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.dim() + j]
    }

    /// The stored `i < j` brackets with nonzero coefficients.
    pub fn bracket_entries(&self) -> Vec<BracketEntry> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<(usize, Rational)> = self
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push((i, j, terms));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i * n + j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in the basis: column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = num::One::one();
            let col = self.bracket_unchecked(x, &e);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_gram(&self) -> &Matrix {
        self.killing.get_or_init(|| {
            let n = self.dim();
            let ads: Vec<Matrix> = (0..n).map(|i| self.ad(&unit(n, i))).collect();
            let mut g = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let mut v = Rational::zero();
                    for r in 0..n {
                        for m in 0..n {
                            let (a, b) = (&ads[i][(r, m)], &ads[j][(m, r)]);
                            if !a.is_zero() && !b.is_zero() {
                                v += a * b;
                            }
                        }
                    }
                    g[(i, j)] = v.clone();
                    g[(j, i)] = v;
                }
            }
            g
        })
    }

    pub fn killing_form(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(linalg::dot(x, &self.killing_gram().mul_vec(y)))
    }

    pub fn killing_nondegenerate(&self) -> bool {
        !self.killing_gram().determinant().is_zero()
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        // [[e_a, e_b], e_c] from the table alone
        let nested = |a: usize, b: usize, c: usize, acc: &mut Vec<Rational>| {
            for (m, v) in self.table[a * n + b].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (k, w) in self.table[m * n + c].iter().enumerate() {
                    if !w.is_zero() {
                        acc[k] += v * w;
                    }
                }
            }
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![Rational::zero(); n];
                    nested(i, j, k, &mut acc);
                    nested(j, k, i, &mut acc);
                    nested(k, i, j, &mut acc);
                    if !linalg::is_zero_vec(&acc) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn has_realization(&self) -> bool {
        self.realization.is_some()
    }

    /// Size `m` of the realizing `m × m` matrices.
    pub fn realization_size(&self) -> Option<usize> {
        self.realization.as_ref().map(|r| r.size)
    }

    pub fn basis_matrices(&self) -> Option<&[Matrix]> {
        self.realization.as_ref().map(|r| r.matrices.as_slice())
    }

    pub(crate) fn require_realization(&self) -> Result<usize> {
        self.realization_size()
            .ok_or_else(|| Error::precondition(format!("algebra {} has no matrix realization", self.name)))
    }

    /// Matrix of an element; panics without a realization.
    pub fn realize(&self, x: &[Rational]) -> Matrix {
        let r = self.realization.as_ref().expect("algebra has no matrix realization");
        let mut acc = Matrix::zeros(r.size, r.size);
        for (c, m) in x.iter().zip(&r.matrices) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Coordinates of a matrix in the realization, if it lies in the span.
    pub fn coordinates_of(&self, m: &Matrix) -> Option<Vec<Rational>> {
        self.realization.as_ref()?.coordinates(m)
    }

    fn check_len(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }
}

impl Realization {
    fn new(matrices: Vec<Matrix>, n: usize) -> Result<Self> {
        if matrices.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: matrices.len() });
        }
        let size = matrices[0].rows();
        if matrices.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::input("realization matrices must be square of one size"));
        }
        let flat_rows = Matrix::from_rows(matrices.iter().map(|m| m.flat().to_vec()).collect())?;
        let flat_rref = flat_rows.rref().0;
        if flat_rref.rows() != n {
            return Err(Error::InvalidStructure("realization matrices are linearly dependent".into()));
        }
        Ok(Realization { size, matrices, flat_rref, flat_rows })
    }

    fn coordinates(&self, m: &Matrix) -> Option<Vec<Rational>> {
        if m.rows() != self.size || m.cols() != self.size {
            return None;
        }
        if !linalg::in_span(&self.flat_rref, m.flat()) {
            return None;
        }
        self.flat_rows.solve_left(m.flat())
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = num::One::one();
    v
}
