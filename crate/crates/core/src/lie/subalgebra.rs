use std::fmt;
use std::sync::Arc;

use num::Zero;

use super::algebra::{unit, LieAlgebra};
use crate::error::{Error, Result};
use crate::grassmann::SubspacePoint;
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// A bracket-closed subspace of an ambient algebra, stored by its reduced
/// row-echelon basis (coordinates of the basis vectors as rows).
#[derive(Clone)]
pub struct Subalgebra {
    ambient: Arc<LieAlgebra>,
    basis: Matrix,
}

/// Derived and lower central series, each ending at its first repeated term.
#[derive(Clone, Debug)]
pub struct RadicalSeries {
    pub derived: Vec<Subalgebra>,
    pub lower_central: Vec<Subalgebra>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

impl Subalgebra {
    /// The span of `rows`; rejected unless it is closed under the bracket.
    pub fn span(ambient: Arc<LieAlgebra>, rows: &[Vec<Rational>]) -> Result<Self> {
        let n = ambient.dim();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        let basis = linalg::span(rows, n);
        let sub = Subalgebra { ambient, basis };
        if let Some((i, j)) = sub.closure_violation() {
            return Err(Error::NotClosed(format!("bracket of basis rows {i} and {j} leaves the span")));
        }
        Ok(sub)
    }

    /// The smallest subalgebra containing `rows`.
    pub fn generated_by(ambient: Arc<LieAlgebra>, rows: &[Vec<Rational>]) -> Result<Self> {
        let n = ambient.dim();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        Ok(Self::closure_of(ambient, linalg::span(rows, n)))
    }

    pub(crate) fn closure_of(ambient: Arc<LieAlgebra>, mut basis: Matrix) -> Self {
        loop {
            let rows = basis.row_vecs();
            let mut extra = Vec::new();
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    let b = ambient.bracket_unchecked(&rows[i], &rows[j]);
                    if !linalg::in_span(&basis, &b) {
                        extra.push(b);
                    }
                }
            }
            if extra.is_empty() {
                return Subalgebra { ambient, basis };
            }
            basis = linalg::sum(&basis, &Matrix::from_rows_with_cols(extra, ambient.dim()).expect("uniform"));
        }
    }

    pub fn full(ambient: Arc<LieAlgebra>) -> Self {
        let n = ambient.dim();
        Subalgebra { ambient, basis: Matrix::identity(n) }
    }

    pub fn zero(ambient: Arc<LieAlgebra>) -> Self {
        let n = ambient.dim();
        Subalgebra { ambient, basis: Matrix::zeros(0, n) }
    }

    fn closure_violation(&self) -> Option<(usize, usize)> {
        let rows = self.basis.row_vecs();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let b = self.ambient.bracket_unchecked(&rows[i], &rows[j]);
                if !linalg::in_span(&self.basis, &b) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ambient(&self) -> &Arc<LieAlgebra> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient.dim() && linalg::in_span(&self.basis, v)
    }

    pub fn contains_subalgebra(&self, other: &Subalgebra) -> bool {
        other.basis_rows().iter().all(|r| self.contains(r))
    }

    pub fn intersection(&self, other: &Subalgebra) -> Subalgebra {
        let basis = linalg::intersect(&self.basis, &other.basis, self.ambient.dim());
        Subalgebra { ambient: self.ambient.clone(), basis }
    }

    /// Span of all `[a, b]` with `a` in `self`, `b` in `other`.
    pub fn bracket_span(&self, other: &Subalgebra) -> Subalgebra {
        let mut rows = Vec::new();
        for a in self.basis_rows() {
            for b in other.basis_rows() {
                let c = self.ambient.bracket_unchecked(&a, &b);
                if !linalg::is_zero_vec(&c) {
                    rows.push(c);
                }
            }
        }
        Self::closure_of(self.ambient.clone(), linalg::span(&rows, self.ambient.dim()))
    }

    pub fn derived(&self) -> Subalgebra {
        self.bracket_span(self)
    }

    pub fn is_ideal_in(&self, parent: &Subalgebra) -> bool {
        parent
            .basis_rows()
            .iter()
            .all(|x| self.basis_rows().iter().all(|y| self.contains(&self.ambient.bracket_unchecked(x, y))))
    }

    pub fn radical_series(&self) -> RadicalSeries {
        let derived = series(self.clone(), |s| s.derived());
        let lower_central = series(self.clone(), |s| s.bracket_span(self));
        let is_solvable = derived.last().is_some_and(|s| s.dim() == 0);
        let is_nilpotent = lower_central.last().is_some_and(|s| s.dim() == 0);
        RadicalSeries { derived, lower_central, is_solvable, is_nilpotent }
    }

    pub fn is_solvable(&self) -> bool {
        let mut s = self.clone();
        loop {
            if s.dim() == 0 {
                return true;
            }
            let d = s.derived();
            if d.dim() == s.dim() {
                return false;
            }
            s = d;
        }
    }

    /// Intrinsic structure constants in the echelon basis; basis vectors are
    /// named `b0, b1, …` and realized by their ambient matrices when the
    /// ambient algebra has a realization.
    pub fn as_lie_algebra(&self) -> Result<LieAlgebra> {
        let rows = self.basis_rows();
        let k = rows.len();
        if k == 0 {
            return Err(Error::input("the zero subalgebra has no intrinsic structure"));
        }
        let mut brackets = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let b = self.ambient.bracket_unchecked(&rows[i], &rows[j]);
                let coords = linalg::coordinates_in(&self.basis, &b).expect("closed subalgebra");
                let terms: Vec<(usize, Rational)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !terms.is_empty() {
                    brackets.push((i, j, terms));
                }
            }
        }
        let names = (0..k).map(|i| format!("b{i}")).collect();
        let mats = self.ambient.has_realization().then(|| rows.iter().map(|r| self.ambient.realize(r)).collect());
        LieAlgebra::new(format!("{}-sub{k}", self.ambient.name()), names, brackets, mats)
    }

    /// Ambient coordinates of a vector given in the echelon basis.
    pub fn lift(&self, coords: &[Rational]) -> Vec<Rational> {
        Matrix::vec_mul(coords, &self.basis)
    }

    /// Coordinates in the echelon basis, if `v` lies in the subalgebra.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        linalg::coordinates_in(&self.basis, v)
    }

    /// Solvable radical, computed intrinsically as the Killing-orthogonal of
    /// the derived algebra.
    pub fn solvable_radical(&self) -> Subalgebra {
        if self.dim() == 0 {
            return self.clone();
        }
        let intrinsic = self.as_lie_algebra().expect("nonzero subalgebra");
        let k = self.dim();
        let derived = Subalgebra::full(Arc::new(intrinsic)).derived();
        let gram = derived.ambient().killing_gram().clone();
        let m = derived.basis().mul(&gram);
        let rad: Vec<Vec<Rational>> = m.kernel().into_iter().map(|c| self.lift(&c)).collect();
        let basis = linalg::span(&rad, self.ambient.dim());
        debug_assert!(basis.rows() <= k);
        Subalgebra { ambient: self.ambient.clone(), basis }
    }

    /// Kernel of the ambient Killing form restricted to `self`.  For an
    /// algebraic solvable subalgebra of a semisimple algebra this is the
    /// unipotent radical.
    pub fn unipotent_radical_via_killing(&self) -> Result<Subalgebra> {
        if !self.ambient.killing_nondegenerate() {
            return Err(Error::precondition(format!(
                "Killing form of {} is degenerate; the ambient algebra must be semisimple",
                self.ambient.name()
            )));
        }
        Ok(self.form_kernel(self.ambient.killing_gram()))
    }

    fn form_kernel(&self, gram: &Matrix) -> Subalgebra {
        let restricted = self.basis.mul(gram).mul(&self.basis.transpose());
        let rows: Vec<Vec<Rational>> = restricted.kernel().into_iter().map(|c| self.lift(&c)).collect();
        Subalgebra { ambient: self.ambient.clone(), basis: linalg::span(&rows, self.ambient.dim()) }
    }

    /// Gram matrix of the trace form `tr(XY)` of the matrix realization.
    fn trace_gram(&self) -> Result<Matrix> {
        self.ambient.require_realization()?;
        let n = self.ambient.dim();
        let mats: Vec<Matrix> = (0..n).map(|i| self.ambient.realize(&unit(n, i))).collect();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = mats[i].mul(&mats[j]).trace();
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        Ok(g)
    }

    /// Dimension of a maximal torus of a solvable subalgebra.
    ///
    /// Inside a semisimple ambient this is the codimension of the Killing
    /// kernel.  Otherwise the trace form of the realization is used: on a
    /// solvable matrix algebra in triangular form it pairs diagonals by the
    /// standard dot product, which is definite over ℚ, so its kernel is the
    /// set of nilpotent elements.
    pub fn rank_of_solvable(&self) -> Result<usize> {
        if !self.is_solvable() {
            return Err(Error::precondition("rank is defined here only for solvable subalgebras"));
        }
        Ok(self.dim() - self.nilpotent_kernel()?.dim())
    }

    /// The kernel behind [`Subalgebra::rank_of_solvable`]: Killing kernel in
    /// a semisimple ambient, trace-form kernel otherwise.
    pub(crate) fn nilpotent_kernel(&self) -> Result<Subalgebra> {
        if self.ambient.killing_nondegenerate() {
            Ok(self.form_kernel(self.ambient.killing_gram()))
        } else {
            Ok(self.form_kernel(&self.trace_gram()?))
        }
    }

    /// Realizations of the basis rows.
    pub fn matrices(&self) -> Result<Vec<Matrix>> {
        self.ambient.require_realization()?;
        Ok(self.basis_rows().iter().map(|r| self.ambient.realize(r)).collect())
    }

    pub fn point(&self) -> SubspacePoint {
        SubspacePoint::from_rref(self.basis.clone(), self.ambient.dim())
    }

    /// Image under `x ↦ g x g⁻¹` in the realization.
    pub fn conjugate(&self, g: &Matrix) -> Result<Subalgebra> {
        let ginv = g.inverse().ok_or_else(|| Error::input("conjugating matrix is singular"))?;
        let rows = self
            .matrices()?
            .iter()
            .map(|m| {
                let c = g.mul(m).mul(&ginv);
                self.ambient.coordinates_of(&c).ok_or_else(|| Error::input("conjugate leaves the ambient algebra"))
            })
            .collect::<Result<Vec<_>>>()?;
        Subalgebra::span(self.ambient.clone(), &rows)
    }
}

fn series(start: Subalgebra, step: impl Fn(&Subalgebra) -> Subalgebra) -> Vec<Subalgebra> {
    let mut out = vec![start];
    loop {
        let last = out.last().unwrap();
        let next = step(last);
        if next.dim() == last.dim() {
            return out;
        }
        let done = next.dim() == 0;
        out.push(next);
        if done {
            return out;
        }
    }
}

impl PartialEq for Subalgebra {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient.name() == other.ambient.name())
            && self.basis == other.basis
    }
}

impl Eq for Subalgebra {}

impl fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subalgebra").field("ambient", &self.ambient.name()).field("basis", &self.basis).finish()
    }
}
