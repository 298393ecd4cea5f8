//! Integration of algebraic subalgebras to parametrized matrix groups.
//!
//! A group is stored as an ordered product of factors, each a rational map
//! from a parameter box into the realization: unipotent one-parameter
//! subgroups `exp(t·N)`, integral-weight tori `s ↦ P·diag(s^w)·P⁻¹`, and,
//! for Levi factors, an `SL2` presented as `exp(a·e)·τ(b)·exp(c·f)`.  The
//! factor order is fixed: unipotent factors (outermost layer of the lower
//! central series first), then tori, then the semisimple factor.

mod membership;

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use membership::{group_axiom_sample_check, group_axiom_sample_check_with, GroupCheckReport};

use crate::algebraicity::{algebraic_hull, WeightVector};
use crate::error::{Error, Result};
use crate::grassmann::SubspacePoint;
use crate::lie::jordan::{jordan_decompose, rational_spectrum};
use crate::lie::levi::find_sl2_triple;
use crate::lie::{levi_semisimple_class, LieAlgebra, SemisimpleClass, Subalgebra};
use crate::linalg::{self, lattice, Matrix};
use crate::rational::{self, Rational};

const TORUS_SEED: u64 = 0x7a11;

/// `exp(t·n)` for nilpotent `n`, as the terminating exponential series.
pub fn exp_nilpotent(n: &Matrix, t: &Rational) -> Result<Matrix> {
    if !n.is_square() {
        return Err(Error::input("exponential needs a square matrix"));
    }
    if !n.is_nilpotent() {
        return Err(Error::precondition(format!("matrix {n} is not nilpotent")));
    }
    let x = n.scale(t);
    let mut acc = Matrix::identity(n.rows());
    let mut term = Matrix::identity(n.rows());
    for k in 1..=n.rows() {
        term = term.mul(&x).scale(&rational::frac(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `log(u)` for unipotent `u`; `None` when `u − I` is not nilpotent.
pub fn log_unipotent(u: &Matrix) -> Option<Matrix> {
    let m = u.rows();
    let x = u.sub(&Matrix::identity(m));
    if !x.is_nilpotent() {
        return None;
    }
    let mut acc = Matrix::zeros(m, m);
    let mut power = Matrix::identity(m);
    for k in 1..=m {
        power = power.mul(&x);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = acc.add(&power.scale(&rational::frac(sign, k as i64)));
    }
    Some(acc)
}

/// `diag(t^w₁, …, t^w_m)`.
pub fn one_param_torus(w: &WeightVector, t: &Rational) -> Result<Matrix> {
    torus_element(w.weights(), &Matrix::identity(w.size()), t)
}

fn torus_element(weights: &[i64], basis: &Matrix, t: &Rational) -> Result<Matrix> {
    if t.is_zero() {
        return Err(Error::input("torus parameter must be nonzero"));
    }
    let d = Matrix::diagonal(&weights.iter().map(|&w| rational::pow(t, w)).collect::<Vec<_>>());
    if basis.rows() == weights.len() && *basis == Matrix::identity(weights.len()) {
        return Ok(d);
    }
    let inv = basis.inverse().ok_or_else(|| Error::input("torus eigenbasis is singular"))?;
    Ok(basis.mul(&d).mul(&inv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFactor {
    /// `t ↦ exp(t·generator)`.
    Unipotent { generator: Matrix },
    /// `s ↦ basis·diag(s^w)·basis⁻¹` with `s ≠ 0`.
    Torus { weights: WeightVector, basis: Matrix },
    /// `(a, b, c) ↦ exp(a·e)·τ(b)·exp(c·f)` where `τ(b)` acts by `b^μ` on
    /// the eigenvectors of `h` (columns of `h_basis`, eigenvalues `μ`).
    Sl2 { e: Matrix, h: Matrix, f: Matrix, h_basis: Matrix, h_weights: Vec<i64> },
    /// The whole special linear group, as the big cell `L·D·U`.
    SpecialLinear { size: usize },
}

impl GroupFactor {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupFactor::Unipotent { .. } => "unipotent",
            GroupFactor::Torus { .. } => "torus",
            GroupFactor::Sl2 { .. } => "catalog-semisimple",
            GroupFactor::SpecialLinear { .. } => "ambient-group",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GroupFactor::Unipotent { .. } | GroupFactor::Torus { .. } => 1,
            GroupFactor::Sl2 { .. } => 3,
            GroupFactor::SpecialLinear { size } => size * size - 1,
        }
    }

    /// Which parameters must be nonzero.
    fn nonzero_slots(&self) -> Vec<bool> {
        match self {
            GroupFactor::Unipotent { .. } => vec![false],
            GroupFactor::Torus { .. } => vec![true],
            GroupFactor::Sl2 { .. } => vec![false, true, false],
            GroupFactor::SpecialLinear { size } => {
                let off = size * (size - 1) / 2;
                let mut v = vec![false; off];
                v.extend(std::iter::repeat_n(true, size - 1));
                v.extend(std::iter::repeat_n(false, off));
                v
            }
        }
    }

    pub fn identity_parameters(&self) -> Vec<Rational> {
        self.nonzero_slots().into_iter().map(|nz| if nz { rational::one() } else { rational::zero() }).collect()
    }

    pub fn evaluate(&self, p: &[Rational]) -> Result<Matrix> {
        if p.len() != self.arity() {
            return Err(Error::DimensionMismatch { expected: self.arity(), got: p.len() });
        }
        match self {
            GroupFactor::Unipotent { generator } => exp_nilpotent(generator, &p[0]),
            GroupFactor::Torus { weights, basis } => torus_element(weights.weights(), basis, &p[0]),
            GroupFactor::Sl2 { e, f, h_basis, h_weights, .. } => {
                let torus = torus_element(h_weights, h_basis, &p[1])?;
                Ok(exp_nilpotent(e, &p[0])?.mul(&torus).mul(&exp_nilpotent(f, &p[2])?))
            }
            GroupFactor::SpecialLinear { size } => big_cell(*size, p),
        }
    }

    /// Derivatives at the identity parameters.
    pub fn tangent(&self) -> Vec<Matrix> {
        match self {
            GroupFactor::Unipotent { generator } => vec![generator.clone()],
            GroupFactor::Torus { weights, basis } => {
                let inv = basis.inverse().expect("torus eigenbasis is invertible");
                vec![basis.mul(&weights.diag()).mul(&inv)]
            }
            GroupFactor::Sl2 { e, h, f, .. } => vec![e.clone(), h.clone(), f.clone()],
            GroupFactor::SpecialLinear { size } => traceless_basis(*size),
        }
    }
}

fn big_cell(m: usize, p: &[Rational]) -> Result<Matrix> {
    let off = m * (m - 1) / 2;
    let mut lower = Matrix::identity(m);
    let mut upper = Matrix::identity(m);
    let mut it = p[..off].iter();
    for i in 0..m {
        for j in 0..i {
            lower[(i, j)] = it.next().expect("arity checked").clone();
        }
    }
    let mut it = p[off + m - 1..].iter();
    for i in 0..m {
        for j in i + 1..m {
            upper[(i, j)] = it.next().expect("arity checked").clone();
        }
    }
    let s = &p[off..off + m - 1];
    if s.iter().any(Zero::is_zero) {
        return Err(Error::input("torus parameters must be nonzero"));
    }
    let mut d = vec![Rational::one(); m];
    for (i, si) in s.iter().enumerate() {
        d[i] = &d[i] * si;
        d[i + 1] = &d[i + 1] / si;
    }
    Ok(lower.mul(&Matrix::diagonal(&d)).mul(&upper))
}

fn traceless_basis(m: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(m * m - 1);
    for i in 0..m {
        for j in 0..m {
            if i != j {
                out.push(Matrix::unit(m, i, j));
            }
        }
    }
    for i in 0..m - 1 {
        out.push(Matrix::unit(m, i, i).sub(&Matrix::unit(m, i + 1, i + 1)));
    }
    out
}

/// A matrix group given as the image of an ordered product of factors.
#[derive(Clone, Debug)]
pub struct ParametrizedGroup {
    ambient: Arc<LieAlgebra>,
    size: usize,
    factors: Vec<GroupFactor>,
}

impl ParametrizedGroup {
    pub fn new(ambient: Arc<LieAlgebra>, factors: Vec<GroupFactor>) -> Result<Self> {
        let size = ambient.require_realization()?;
        for f in &factors {
            let ok = match f {
                GroupFactor::Unipotent { generator } => generator.rows() == size && generator.is_nilpotent(),
                GroupFactor::Torus { weights, basis } => {
                    weights.size() == size && basis.rows() == size && basis.inverse().is_some()
                }
                GroupFactor::Sl2 { e, h, f, h_basis, h_weights } => {
                    e.rows() == size
                        && h.rows() == size
                        && f.rows() == size
                        && h_weights.len() == size
                        && h_basis.inverse().is_some()
                }
                GroupFactor::SpecialLinear { size: s } => *s == size,
            };
            if !ok {
                return Err(Error::input(format!("malformed {} factor for {size}x{size} matrices", f.kind())));
            }
        }
        Ok(ParametrizedGroup { ambient, size, factors })
    }

    pub fn ambient(&self) -> &Arc<LieAlgebra> {
        &self.ambient
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[GroupFactor] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.iter().map(GroupFactor::arity).sum()
    }

    pub fn unipotent_generators(&self) -> Vec<&Matrix> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                GroupFactor::Unipotent { generator } => Some(generator),
                _ => None,
            })
            .collect()
    }

    pub fn torus_weights(&self) -> Vec<&WeightVector> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                GroupFactor::Torus { weights, .. } => Some(weights),
                _ => None,
            })
            .collect()
    }

    pub fn semisimple_factor(&self) -> Option<&GroupFactor> {
        self.factors.iter().find(|f| matches!(f, GroupFactor::Sl2 { .. } | GroupFactor::SpecialLinear { .. }))
    }

    pub fn identity_parameters(&self) -> Vec<Rational> {
        self.factors.iter().flat_map(GroupFactor::identity_parameters).collect()
    }

    pub fn evaluate(&self, params: &[Rational]) -> Result<Matrix> {
        if params.len() != self.arity() {
            return Err(Error::DimensionMismatch { expected: self.arity(), got: params.len() });
        }
        let mut acc = Matrix::identity(self.size);
        let mut offset = 0;
        for f in &self.factors {
            let k = f.arity();
            acc = acc.mul(&f.evaluate(&params[offset..offset + k])?);
            offset += k;
        }
        Ok(acc)
    }

    /// Pseudorandom parameters: numerators in `−6..=6` (nonzero where
    /// required), denominators in `1..=4`.
    pub fn sample_parameters(&self, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        self.factors
            .iter()
            .flat_map(GroupFactor::nonzero_slots)
            .map(|nonzero| {
                let mut n: i64 = rng.gen_range(-6..=6);
                if nonzero && n == 0 {
                    n = 1;
                }
                rational::frac(n, rng.gen_range(1..=4))
            })
            .collect()
    }

    /// Seeded parameters, one stream per seed.
    pub fn sample_parameters_seeded(&self, seed: u64) -> Vec<Rational> {
        self.sample_parameters(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Exact membership in the image, by re-solving the parametrization.
    pub fn contains(&self, g: &Matrix) -> Result<bool> {
        Ok(membership::MembershipTest::build(self)?.contains(g).is_ok())
    }

    /// Replaces the weights of the `index`-th torus factor verbatim, with no
    /// normalization or compatibility check.  Used to build negative
    /// controls for [`group_axiom_sample_check`].
    pub fn with_torus_weights_unchecked(&self, index: usize, weights: Vec<i64>) -> Result<Self> {
        let mut out = self.clone();
        let slot = out
            .factors
            .iter_mut()
            .filter_map(|f| match f {
                GroupFactor::Torus { weights, .. } => Some(weights),
                _ => None,
            })
            .nth(index)
            .ok_or_else(|| Error::input(format!("group has no torus factor {index}")))?;
        if weights.len() != slot.size() {
            return Err(Error::DimensionMismatch { expected: slot.size(), got: weights.len() });
        }
        *slot = WeightVector::raw(weights);
        Ok(out)
    }
}

impl fmt::Display for ParametrizedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                GroupFactor::Torus { weights, .. } => format!("torus{weights}"),
                other => other.kind().to_string(),
            })
            .collect();
        write!(f, "group in GL{} of {}: {}", self.size, self.ambient.name(), kinds.join(" * "))
    }
}

/// Integrates a solvable algebraic subalgebra to `U·T` with `U` the
/// unipotent radical and `T` a maximal torus with integral weights.
pub fn integrate_solvable(h: &Subalgebra) -> Result<ParametrizedGroup> {
    if !h.is_solvable() {
        return Err(Error::precondition("integrate_solvable needs a solvable subalgebra"));
    }
    let ambient = h.ambient().clone();
    ambient.require_realization()?;
    require_algebraic(h)?;
    ParametrizedGroup::new(ambient, solvable_factors(h)?)
}

fn require_algebraic(h: &Subalgebra) -> Result<()> {
    let hull = algebraic_hull(h)?;
    if hull.is_algebraic {
        Ok(())
    } else {
        Err(Error::NotIntegrable { witness: hull.witness.unwrap_or_else(|| "hull is strictly larger".into()) })
    }
}

fn solvable_factors(h: &Subalgebra) -> Result<Vec<GroupFactor>> {
    let ambient = h.ambient();
    let m = ambient.require_realization()?;
    let u = h.nilpotent_kernel()?;
    let mut factors: Vec<GroupFactor> =
        malcev_basis(&u).iter().map(|g| GroupFactor::Unipotent { generator: ambient.realize(g) }).collect();
    let torus = maximal_torus(h, h.dim() - u.dim())?;
    if !torus.is_empty() {
        let (basis, diagonals) = common_eigenbasis(&torus, m)?;
        for y in lattice::saturate(&diagonals, m) {
            let w = lattice::to_i64(&y).ok_or_else(|| Error::unsupported("torus weight exceeds 64 bits"))?;
            factors.push(GroupFactor::Torus { weights: WeightVector::new(&w)?, basis: basis.clone() });
        }
    }
    Ok(factors)
}

/// Basis of a nilpotent algebra adapted to its lower central series, outer
/// layer first, so every tail spans an ideal.
fn malcev_basis(u: &Subalgebra) -> Vec<Vec<Rational>> {
    let n = u.ambient().dim();
    let series = u.radical_series().lower_central;
    let mut out = Vec::new();
    for w in series.windows(2) {
        let mut acc = w[1].basis().clone();
        for row in w[0].basis_rows() {
            if !linalg::in_span(&acc, &row) {
                acc = linalg::sum(&acc, &linalg::span(std::slice::from_ref(&row), n));
                out.push(row);
            }
        }
    }
    if let Some(last) = series.last() {
        out.extend(last.basis_rows());
    }
    out
}

/// A maximal torus of an algebraic solvable `h`: the semisimple parts of
/// the echelon basis when they already span a commuting family of the
/// right dimension, otherwise the semisimple parts of a Cartan subalgebra
/// (the Fitting null component of a generic `ad x`).
fn maximal_torus(h: &Subalgebra, rank: usize) -> Result<Vec<Matrix>> {
    if rank == 0 {
        return Ok(Vec::new());
    }
    let ambient = h.ambient();
    let mut direct = Vec::new();
    for x in h.matrices()? {
        let s = jordan_decompose(&x)?.semisimple;
        if let Some(c) = ambient.coordinates_of(&s) {
            direct.push(c);
        }
    }
    let span = linalg::span(&direct, ambient.dim());
    let mats: Vec<Matrix> = span.row_vecs().iter().map(|r| ambient.realize(r)).collect();
    let commuting = mats.iter().all(|a| mats.iter().all(|b| a.commutator(b).is_zero()));
    if span.rows() == rank && commuting && span.row_vecs().iter().all(|r| h.contains(r)) {
        return Ok(mats);
    }
    let intrinsic = h.as_lie_algebra()?;
    let k = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(TORUS_SEED);
    let cartan = (0..8)
        .map(|_| {
            let x: Vec<Rational> = (0..k).map(|_| rational::int(rng.gen_range(-97..=97))).collect();
            intrinsic.ad(&x).pow(k).kernel()
        })
        .min_by_key(Vec::len)
        .expect("nonempty range");
    let mut parts = Vec::with_capacity(cartan.len());
    for c in &cartan {
        let s = jordan_decompose(&ambient.realize(&h.lift(c)))?.semisimple;
        parts.push(
            ambient
                .coordinates_of(&s)
                .ok_or_else(|| Error::precondition("semisimple part of a Cartan element leaves the ambient algebra"))?,
        );
    }
    let span = linalg::span(&parts, ambient.dim());
    if span.rows() != rank {
        return Err(Error::precondition(format!(
            "semisimple parts of a Cartan subalgebra span dimension {}, expected rank {rank}",
            span.rows()
        )));
    }
    Ok(span.row_vecs().iter().map(|r| ambient.realize(r)).collect())
}

/// Joint eigenspaces of commuting semisimple matrices with rational spectra,
/// as `(eigenvalue tuple, rref basis)`.
pub(crate) fn joint_eigenspaces(mats: &[Matrix], m: usize) -> Result<Vec<(Vec<Rational>, Matrix)>> {
    let mut spaces = vec![(Vec::new(), Matrix::identity(m))];
    for d in mats {
        let mut next = Vec::new();
        for lambda in rational_spectrum(d)? {
            let eigen = linalg::span(&d.sub(&Matrix::identity(m).scale(&lambda)).kernel(), m);
            for (tuple, space) in &spaces {
                let meet = linalg::intersect(space, &eigen, m);
                if meet.rows() > 0 {
                    let mut t: Vec<Rational> = tuple.clone();
                    t.push(lambda.clone());
                    next.push((t, meet));
                }
            }
        }
        spaces = next;
    }
    let total: usize = spaces.iter().map(|(_, s)| s.rows()).sum();
    if total != m {
        return Err(Error::precondition("torus matrices are not simultaneously diagonalizable"));
    }
    Ok(spaces)
}

/// Common eigenbasis (as columns, ordered by leading index) and the
/// diagonals of each input matrix in that basis.
fn common_eigenbasis(mats: &[Matrix], m: usize) -> Result<(Matrix, Vec<Vec<Rational>>)> {
    let mut columns: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::with_capacity(m);
    for (tuple, space) in joint_eigenspaces(mats, m)? {
        for v in space.row_vecs() {
            let lead = v.iter().position(|c| !c.is_zero()).expect("nonzero basis vector");
            columns.push((lead, v, tuple.clone()));
        }
    }
    columns.sort_by_key(|c| c.0);
    let basis = Matrix::from_rows(columns.iter().map(|c| c.1.clone()).collect())?.transpose();
    let diagonals = (0..mats.len()).map(|i| columns.iter().map(|c| c.2[i].clone()).collect()).collect();
    Ok((basis, diagonals))
}

/// Integrates an algebraic subalgebra: solvable ones directly, `A1` Levi
/// factors through an `sl2`-triple, and the full `sl_m` as the ambient group.
pub fn integrate_algebraic(h: &Subalgebra) -> Result<ParametrizedGroup> {
    let ambient = h.ambient().clone();
    let m = ambient.require_realization()?;
    let levi = levi_semisimple_class(h)?;
    if levi.class == SemisimpleClass::Zero {
        return integrate_solvable(h);
    }
    require_algebraic(h)?;
    if spans_traceless(h, m)? {
        return ParametrizedGroup::new(ambient, vec![GroupFactor::SpecialLinear { size: m }]);
    }
    if levi.class != SemisimpleClass::A1 {
        return Err(Error::unsupported(format!("only A1 Levi factors integrate explicitly, found {}", levi.class)));
    }
    let complement = levi
        .complement
        .as_ref()
        .ok_or_else(|| Error::unsupported("Levi class found without an explicit complement"))?;
    let [e, hh, f] = match levi.triple.clone() {
        Some(t) => t,
        None => find_sl2_triple(complement, &Subalgebra::zero(ambient.clone()))
            .ok_or_else(|| Error::unsupported("no sl2-triple found in the Levi complement"))?,
    };
    let hm = ambient.realize(&hh);
    let (h_basis, diag) = common_eigenbasis(std::slice::from_ref(&hm), m)?;
    let h_weights = diag[0]
        .iter()
        .map(|c| if c.is_integer() { num::ToPrimitive::to_i64(&c.to_integer()) } else { None })
        .collect::<Option<Vec<i64>>>()
        .ok_or_else(|| Error::unsupported("semisimple element of the triple has non-integral eigenvalues"))?;
    let mut factors = if levi.radical.dim() > 0 { solvable_factors(&levi.radical)? } else { Vec::new() };
    factors.push(GroupFactor::Sl2 { e: ambient.realize(&e), h: hm, f: ambient.realize(&f), h_basis, h_weights });
    ParametrizedGroup::new(ambient, factors)
}

fn spans_traceless(h: &Subalgebra, m: usize) -> Result<bool> {
    if h.dim() != m * m - 1 {
        return Ok(false);
    }
    Ok(h.matrices()?.iter().all(|x| x.trace().is_zero()))
}

/// Span of the derivatives of all factors at the identity parameters.
pub fn tangent_space_at_identity(g: &ParametrizedGroup) -> Result<SubspacePoint> {
    let n = g.ambient.dim();
    let mut rows = Vec::new();
    for f in &g.factors {
        for t in f.tangent() {
            rows.push(g.ambient.coordinates_of(&t).ok_or_else(|| {
                Error::precondition(format!("tangent of a {} factor leaves {}", f.kind(), g.ambient.name()))
            })?);
        }
    }
    let span = linalg::span(&rows, n);
    SubspacePoint::canonicalize(&span)
}
