//! One-parameter families of subalgebras along polynomial paths in the
//! Grassmannian, and the semicontinuity scans run over them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::grassmann::{limit_of_path, LimitPoint, PolynomialPath, SubspacePoint};
use crate::lie::{levi_semisimple_class, LieAlgebra, SemisimpleClass, Subalgebra};
use crate::linalg::{self, Matrix, Poly};
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct SubalgebraFamily {
    path: PolynomialPath,
    ambient: Arc<LieAlgebra>,
    samples: Vec<Rational>,
    limits: Vec<LimitPoint>,
}

impl SubalgebraFamily {
    /// Checks that every sample is a regular parameter whose fiber is a
    /// subalgebra, and that every requested limit is a subalgebra.
    pub fn new(
        path: PolynomialPath,
        ambient: Arc<LieAlgebra>,
        samples: Vec<Rational>,
        limits: Vec<LimitPoint>,
    ) -> Result<Self> {
        if path.cols() != ambient.dim() {
            return Err(Error::DimensionMismatch { expected: ambient.dim(), got: path.cols() });
        }
        if samples.is_empty() {
            return Err(Error::input("a family needs at least one sample parameter"));
        }
        let family = SubalgebraFamily { path, ambient, samples, limits };
        for t in &family.samples {
            family.evaluate(t)?;
        }
        for at in &family.limits {
            family.limit_fiber(at)?;
        }
        Ok(family)
    }

    pub fn path(&self) -> &PolynomialPath {
        &self.path
    }

    pub fn ambient(&self) -> &Arc<LieAlgebra> {
        &self.ambient
    }

    pub fn samples(&self) -> &[Rational] {
        &self.samples
    }

    pub fn limits(&self) -> &[LimitPoint] {
        &self.limits
    }

    pub fn k(&self) -> usize {
        self.path.rows()
    }

    /// The fiber at a regular parameter.
    pub fn evaluate(&self, t: &Rational) -> Result<Subalgebra> {
        let p = self.path.point_at(t)?;
        p.to_subalgebra(&self.ambient).map_err(|e| match e {
            Error::NotClosed(msg) => Error::NotClosed(format!("fiber at t = {}: {msg}", rational::format(t))),
            other => other,
        })
    }

    /// The Grassmannian limit fiber.
    pub fn limit_fiber(&self, at: &LimitPoint) -> Result<Subalgebra> {
        let p = limit_of_path(&self.path, at)?;
        p.to_subalgebra(&self.ambient).map_err(|e| match e {
            Error::NotClosed(msg) => Error::NotClosed(format!("limit at {at}: {msg}")),
            other => other,
        })
    }

    /// Family conjugated by `g` in the realization.
    pub fn conjugate(&self, g: &Matrix) -> Result<Self> {
        let ad = adjoint_matrix(&self.ambient, g)?;
        Self::new(self.path.map_rows(&ad)?, self.ambient.clone(), self.samples.clone(), self.limits.clone())
    }
}

pub fn evaluate_family(f: &SubalgebraFamily, t: &Rational) -> Result<Subalgebra> {
    f.evaluate(t)
}

/// Matrix of `x ↦ g x g⁻¹` on coordinates (column `j` is the image of `e_j`).
pub fn adjoint_matrix(l: &LieAlgebra, g: &Matrix) -> Result<Matrix> {
    l.require_realization()?;
    let g_inv = g.inverse().ok_or_else(|| Error::input("conjugating matrix is singular"))?;
    let n = l.dim();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let img = g.mul(&l.realize(&crate::lie::algebra::unit(n, j))).mul(&g_inv);
        let c = l.coordinates_of(&img).ok_or_else(|| Error::input("conjugation leaves the algebra"))?;
        for (i, v) in c.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantValue {
    Int(usize),
    Class(SemisimpleClass),
}

impl InvariantValue {
    /// Order used by the verdicts; values of different kinds never compare.
    pub fn leq(&self, other: &InvariantValue) -> bool {
        match (self, other) {
            (InvariantValue::Int(a), InvariantValue::Int(b)) => a <= b,
            (InvariantValue::Class(a), InvariantValue::Class(b)) => a.leq(*b),
            _ => false,
        }
    }
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantValue::Int(v) => write!(f, "{v}"),
            InvariantValue::Class(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicontinuityReport {
    pub invariant: String,
    pub sample_values: Vec<(Rational, InvariantValue)>,
    pub limit_values: Vec<(LimitPoint, InvariantValue)>,
    /// Value taken at the majority of samples.
    pub generic: InvariantValue,
    /// Every limit value and every non-generic sample value is `≤ generic`.
    pub verdict: bool,
}

impl SemicontinuityReport {
    pub fn assemble(
        invariant: impl Into<String>,
        sample_values: Vec<(Rational, InvariantValue)>,
        limit_values: Vec<(LimitPoint, InvariantValue)>,
    ) -> Result<Self> {
        let mut counts: BTreeMap<&InvariantValue, usize> = BTreeMap::new();
        for (_, v) in &sample_values {
            *counts.entry(v).or_default() += 1;
        }
        let best = counts.values().copied().max().ok_or_else(|| Error::input("no sample values"))?;
        let leaders: Vec<&InvariantValue> = counts.iter().filter(|(_, c)| **c == best).map(|(v, _)| *v).collect();
        if leaders.len() > 1 {
            let shown: Vec<String> = leaders.iter().map(|v| v.to_string()).collect();
            return Err(Error::IllPosed(format!(
                "no majority value among samples: {} each occur {best} times",
                shown.join(", ")
            )));
        }
        let generic = leaders[0].clone();
        let verdict =
            sample_values.iter().map(|(_, v)| v).chain(limit_values.iter().map(|(_, v)| v)).all(|v| v.leq(&generic));
        Ok(SemicontinuityReport { invariant: invariant.into(), sample_values, limit_values, generic, verdict })
    }
}

fn scan<F>(f: &SubalgebraFamily, name: &str, mode: Execution, value: F) -> Result<SemicontinuityReport>
where
    F: Fn(&Subalgebra, &str) -> Result<InvariantValue> + Sync + Send,
{
    let samples = exec::map(mode, f.samples(), |t| {
        let fiber = f.evaluate(t)?;
        value(&fiber, &format!("t = {}", rational::format(t))).map(|v| (t.clone(), v))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let limits = exec::map(mode, f.limits(), |at| {
        let fiber = f.limit_fiber(at)?;
        value(&fiber, &format!("limit {at}")).map(|v| (at.clone(), v))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    SemicontinuityReport::assemble(name, samples, limits)
}

pub fn rank_scan(f: &SubalgebraFamily) -> Result<SemicontinuityReport> {
    rank_scan_with(f, Execution::default())
}

pub fn rank_scan_with(f: &SubalgebraFamily, mode: Execution) -> Result<SemicontinuityReport> {
    scan(f, "rank", mode, |fiber, at| {
        if !fiber.is_solvable() {
            return Err(Error::precondition(format!("fiber at {at} is not solvable")));
        }
        fiber.rank_of_solvable().map(InvariantValue::Int)
    })
}

pub fn semisimple_class_scan(f: &SubalgebraFamily) -> Result<SemicontinuityReport> {
    semisimple_class_scan_with(f, Execution::default())
}

pub fn semisimple_class_scan_with(f: &SubalgebraFamily, mode: Execution) -> Result<SemicontinuityReport> {
    scan(f, "semisimple_class", mode, |fiber, _| levi_semisimple_class(fiber).map(|d| InvariantValue::Class(d.class)))
}

/// The family of intersections `h_t ∩ u` as a polynomial path.
///
/// Exact intersections are computed at every sample and limit; their
/// dimension must be constant.  A path is then interpolated from vectors
/// `b(t) = Σ_e b_e t^e` with `b_e ∈ u` and degree at most the input path's
/// degree, enforced to lie in `h_t` at enough nodes to make the condition
/// polynomial vanish, and verified at held-out nodes.
pub fn unipotent_radical_family(f: &SubalgebraFamily, u: &Subalgebra) -> Result<SubalgebraFamily> {
    if u.ambient().dim() != f.ambient().dim() {
        return Err(Error::DimensionMismatch { expected: f.ambient().dim(), got: u.ambient().dim() });
    }
    if !u.radical_series().is_nilpotent {
        return Err(Error::precondition("the intersecting subalgebra must be nilpotent"));
    }
    let mut dims: Vec<(String, usize)> = Vec::new();
    let mut exact: Vec<(Rational, Subalgebra)> = Vec::new();
    for t in f.samples() {
        let fiber = f.evaluate(t)?;
        if !fiber.is_solvable() {
            return Err(Error::precondition(format!("fiber at t = {} is not solvable", rational::format(t))));
        }
        let i = fiber.intersection(u);
        dims.push((rational::format(t), i.dim()));
        exact.push((t.clone(), i));
    }
    for at in f.limits() {
        let i = f.limit_fiber(at)?.intersection(u);
        dims.push((format!("limit {at}"), i.dim()));
    }
    let d = dims[0].1;
    if dims.iter().any(|(_, x)| *x != d) {
        let shown: Vec<String> = dims.iter().map(|(p, x)| format!("{p}: {x}")).collect();
        return Err(Error::NonFlatIntersection(format!("intersection dimension jumps ({})", shown.join(", "))));
    }
    let path = interpolate_intersection(f, u, d)?;
    for (t, i) in &exact {
        let p = path.point_at(t).map_err(|_| {
            Error::InterpolationFailed(format!("interpolated path degenerates at sample {}", rational::format(t)))
        })?;
        if p != i.point() {
            return Err(Error::InterpolationFailed(format!("mismatch at sample {}", rational::format(t))));
        }
    }
    SubalgebraFamily::new(path, f.ambient().clone(), f.samples().to_vec(), f.limits().to_vec())
}

fn interpolate_intersection(f: &SubalgebraFamily, u: &Subalgebra, d: usize) -> Result<PolynomialPath> {
    let n = f.ambient().dim();
    if d == 0 {
        return PolynomialPath::new(f.path().parameter(), 0, n, Vec::new());
    }
    let deg = f.path().max_degree();
    let k = f.k();
    let du = u.dim();
    let unknowns = (deg + 1) * du;
    let needed = deg + k * deg + 2;
    let nodes = regular_nodes(f, needed + 3);
    let (fit, held_out) = nodes.split_at(needed);
    let u_rows = u.basis_rows();
    // unknown (e, a) is the coefficient of t^e on u_rows[a]
    let mut equations: Vec<Vec<Rational>> = Vec::new();
    for t in fit {
        let fiber = f.path().eval(t).rref().0;
        let columns: Vec<Vec<Rational>> = (0..unknowns)
            .map(|idx| {
                let (e, a) = (idx / du, idx % du);
                let scaled = linalg::scale_vec(&u_rows[a], &rational::pow(t, e as i64));
                linalg::reduce(&fiber, &scaled)
            })
            .collect();
        for row in 0..n {
            equations.push(columns.iter().map(|c| c[row].clone()).collect());
        }
    }
    let solutions = Matrix::from_rows_with_cols(equations, unknowns)?.kernel();
    let vector_poly = |sol: &[Rational]| -> Vec<Poly> {
        (0..n)
            .map(|col| {
                Poly::new(
                    (0..=deg).map(|e| (0..du).map(|a| &sol[e * du + a] * &u_rows[a][col]).sum::<Rational>()).collect(),
                )
            })
            .collect()
    };
    // greedy choice of generically independent solutions
    let probe = held_out.last().cloned().unwrap_or_else(|| rational::int(1));
    let mut chosen: Vec<Vec<Poly>> = Vec::new();
    let mut probe_rows: Vec<Vec<Rational>> = Vec::new();
    for sol in &solutions {
        let polys = vector_poly(sol);
        let at: Vec<Rational> = polys.iter().map(|p| p.eval(&probe)).collect();
        let mut trial = probe_rows.clone();
        trial.push(at);
        if linalg::span(&trial, n).rows() == trial.len() {
            probe_rows = trial;
            chosen.push(polys);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(Error::InterpolationFailed(format!(
            "only {} of {d} independent polynomial vectors of degree <= {deg} found",
            chosen.len()
        )));
    }
    let path = PolynomialPath::new(f.path().parameter(), d, n, chosen.into_iter().flatten().collect())?;
    for t in held_out {
        let expected = f.path().point_at(t)?.to_subalgebra(f.ambient())?.intersection(u).point();
        if path.point_at(t).ok() != Some(expected) {
            return Err(Error::InterpolationFailed(format!("held-out node {} disagrees", rational::format(t))));
        }
    }
    Ok(path)
}

/// Sample parameters followed by further integers, all regular for the path.
fn regular_nodes(f: &SubalgebraFamily, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    let candidates = f.samples().iter().cloned().chain((1i64..).flat_map(|i| [rational::int(i), rational::int(-i)]));
    for t in candidates {
        if out.len() == count {
            break;
        }
        if !out.contains(&t) && f.path().is_regular_at(&t) {
            out.push(t);
        }
    }
    out
}

/// Fiber dimensions of a raw path: evaluation at samples and finite points,
/// and the row-wise leading coefficients at infinity.  No limit is taken.
pub fn raw_fiber_dimensions(path: &PolynomialPath, samples: &[Rational], limits: &[LimitPoint]) -> Vec<usize> {
    let mut dims: Vec<usize> = samples.iter().map(|t| path.eval(t).rank()).collect();
    for at in limits {
        dims.push(match at {
            LimitPoint::Finite(t) => path.eval(t).rank(),
            LimitPoint::Infinity => {
                let mut m = Matrix::zeros(path.rows(), path.cols());
                for i in 0..path.rows() {
                    let top = (0..path.cols()).filter_map(|j| path.entry(i, j).degree()).max().unwrap_or(0);
                    for j in 0..path.cols() {
                        m[(i, j)] = path.entry(i, j).coeff(top);
                    }
                }
                m.rank()
            }
        });
    }
    dims
}

/// True iff the fiber dimension is constant (and equal to the row count) at
/// every sample and limit point, evaluated without limit handling.
pub fn flatness_proxy_raw(path: &PolynomialPath, samples: &[Rational], limits: &[LimitPoint]) -> bool {
    raw_fiber_dimensions(path, samples, limits).iter().all(|&d| d == path.rows())
}

/// Fiber dimensions of a validated family, limits taken in the Grassmannian.
pub fn flatness_proxy(f: &SubalgebraFamily) -> bool {
    let k = f.k();
    f.samples().iter().all(|t| f.path().point_at(t).is_ok_and(|p| p.k() == k))
        && f.limits().iter().all(|at| limit_of_path(f.path(), at).is_ok_and(|p: SubspacePoint| p.k() == k))
}
