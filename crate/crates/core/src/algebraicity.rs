//! Algebraicity of subalgebras: Jordan parts, replicas, algebraic hulls,
//! torus directions and orbit dimensions.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::Zero;

use crate::error::{Error, Result};
use crate::grassmann::SubspacePoint;
use crate::lie::jordan::{self, jordan_decompose};
use crate::lie::{LieAlgebra, Subalgebra};
use crate::linalg::{self, lattice, Matrix};
use crate::rational::{self, Rational};

/// Basis of the replica space of a semisimple matrix with rational spectrum:
/// matrices diagonal in an eigenbasis of `s` whose eigenvalue tuples satisfy
/// every integer relation among the eigenvalues of `s`.
pub fn replica_span_of_semisimple(s: &Matrix) -> Result<Vec<Matrix>> {
    if !s.is_square() {
        return Err(Error::input("replicas need a square matrix"));
    }
    if !jordan::is_semisimple(s) {
        return Err(Error::precondition(format!("matrix {s} is not semisimple")));
    }
    let m = s.rows();
    let spectrum = jordan::rational_spectrum(s)?;
    // eigenbasis as columns of p, eigenvalue per column
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut values: Vec<Rational> = Vec::with_capacity(m);
    for lambda in &spectrum {
        let shifted = s.sub(&Matrix::identity(m).scale(lambda));
        for v in shifted.kernel() {
            columns.push(v);
            values.push(lambda.clone());
        }
    }
    let p = Matrix::from_rows(columns)?.transpose();
    let p_inv = p.inverse().expect("eigenvectors of a semisimple matrix form a basis");
    // integer relations c with Σ c_i λ_i = 0
    let den = rational::common_denominator(&values);
    let row: Vec<BigInt> = values.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
    let relations = lattice::integer_kernel(&[row], m);
    let relation_matrix = Matrix::from_rows_with_cols(
        relations.iter().map(|r| r.iter().map(|c| Rational::from_integer(c.clone())).collect()).collect(),
        m,
    )?;
    let tuples = if relations.is_empty() {
        (0..m).map(|i| crate::lie::algebra::unit(m, i)).collect()
    } else {
        relation_matrix.kernel()
    };
    Ok(tuples.iter().map(|mu| p.mul(&Matrix::diagonal(mu)).mul(&p_inv)).collect())
}

#[derive(Clone, Debug)]
pub struct HullResult {
    pub hull: Subalgebra,
    pub is_algebraic: bool,
    /// First element whose Jordan parts or replicas escaped the input.
    pub witness: Option<String>,
}

/// Smallest subalgebra containing `h` that contains the Jordan parts and
/// replicas of each of its elements.
pub fn algebraic_hull(h: &Subalgebra) -> Result<HullResult> {
    hull_from_generators(h.ambient(), &h.basis_rows())
}

/// Same fixed point, with the first saturation round processing the
/// generators in the order given.
pub fn hull_from_generators(ambient: &Arc<LieAlgebra>, generators: &[Vec<Rational>]) -> Result<HullResult> {
    ambient.require_realization()?;
    let input = Subalgebra::generated_by(ambient.clone(), generators)?;
    let mut current = input.clone();
    let mut pending: Vec<Vec<Rational>> = generators.to_vec();
    let mut witness = None;
    loop {
        let mut extra = Vec::new();
        for x in &pending {
            for (kind, y) in saturation_elements(ambient, x)? {
                if !current.contains(&y) && !extra.iter().any(|e: &Vec<Rational>| e == &y) {
                    if witness.is_none() && !input.contains(&y) {
                        witness = Some(format!(
                            "{kind} of {} is {}, outside the input",
                            describe(ambient, x),
                            describe(ambient, &y)
                        ));
                    }
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        let mut rows = current.basis_rows();
        rows.extend(extra);
        current = Subalgebra::generated_by(ambient.clone(), &rows)?;
        pending = current.basis_rows();
    }
    let is_algebraic = current == input;
    Ok(HullResult { hull: current, is_algebraic, witness: if is_algebraic { None } else { witness } })
}

fn saturation_elements(ambient: &LieAlgebra, x: &[Rational]) -> Result<Vec<(&'static str, Vec<Rational>)>> {
    let xm = ambient.realize(x);
    let j = jordan_decompose(&xm)?;
    let coords = |m: &Matrix, what: &str| {
        ambient.coordinates_of(m).ok_or_else(|| {
            Error::precondition(format!(
                "{what} of {} leaves the ambient algebra {}",
                describe(ambient, x),
                ambient.name()
            ))
        })
    };
    let mut out = vec![
        ("semisimple part", coords(&j.semisimple, "semisimple part")?),
        ("nilpotent part", coords(&j.nilpotent, "nilpotent part")?),
    ];
    let replicas = replica_span_of_semisimple(&j.semisimple).map_err(|e| match e {
        Error::Unsupported(msg) => Error::unsupported(format!("element {}: {msg}", describe(ambient, x))),
        other => other,
    })?;
    for r in replicas {
        out.push(("replica", coords(&r, "replica")?));
    }
    Ok(out)
}

fn describe(l: &LieAlgebra, x: &[Rational]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(l.basis_names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, name)| if c == &rational::one() { name.clone() } else { format!("{}*{name}", rational::format(c)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Integral cocharacter direction of a diagonal torus, stored primitive with
/// the first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector {
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(weights: &[i64]) -> Result<Self> {
        let q: Vec<Rational> = weights.iter().map(|&w| rational::int(w)).collect();
        Self::from_rationals(&q)
    }

    /// Scales a nonzero rational direction to primitive integral form.
    pub fn from_rationals(v: &[Rational]) -> Result<Self> {
        let p = rational::primitive_integer_vector(v).ok_or_else(|| Error::input("zero torus direction"))?;
        let weights = lattice::to_i64(&p).ok_or_else(|| Error::unsupported("torus weight exceeds 64 bits"))?;
        Ok(WeightVector { weights })
    }

    /// Keeps the given integers as they are (possibly non-primitive).
    pub(crate) fn raw(weights: Vec<i64>) -> Self {
        WeightVector { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn diag(&self) -> Matrix {
        Matrix::diagonal(&self.weights.iter().map(|&w| rational::int(w)).collect::<Vec<_>>())
    }

    pub fn is_primitive(&self) -> bool {
        use num::Integer;
        let g = self.weights.iter().fold(0i64, |acc, w| acc.gcd(w));
        g == 1 && self.weights.iter().find(|w| **w != 0).is_some_and(|w| *w > 0)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Normalizes an integral direction; every nonzero integral direction is
/// the tangent of a one-parameter subgroup and hence algebraic.
pub fn torus_direction_is_algebraic(w: &[i64]) -> Result<(WeightVector, bool)> {
    Ok((WeightVector::new(w)?, true))
}

/// Gram matrix of the ambient Killing form on the given diagonal directions.
pub fn torus_killing_gram(a: &[WeightVector], ambient: &LieAlgebra) -> Result<Matrix> {
    let m = ambient.require_realization()?;
    let coords = a
        .iter()
        .map(|w| {
            if w.size() != m {
                return Err(Error::DimensionMismatch { expected: m, got: w.size() });
            }
            ambient
                .coordinates_of(&w.diag())
                .ok_or_else(|| Error::input(format!("diag{w} is not in {}", ambient.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = Matrix::zeros(a.len(), a.len());
    for i in 0..a.len() {
        for j in 0..a.len() {
            g[(i, j)] = ambient.killing_form(&coords[i], &coords[j])?;
        }
    }
    Ok(g)
}

pub fn torus_killing_regular(a: &[WeightVector], ambient: &LieAlgebra) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::input("no torus directions given"));
    }
    Ok(!torus_killing_gram(a, ambient)?.determinant().is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineOrbit {
    Semisimple,
    Nilpotent,
}

impl LineOrbit {
    pub fn label(self) -> &'static str {
        match self {
            LineOrbit::Semisimple => "semisimple",
            LineOrbit::Nilpotent => "nilpotent",
        }
    }
}

/// Orbit type of a line in `sl2`: for `x = (a b; c −a)`, `det x = −a² − bc`
/// vanishes exactly on nilpotent elements.
pub fn classify_line_sl2(p: &SubspacePoint, sl2: &LieAlgebra) -> Result<LineOrbit> {
    if sl2.dim() != 3 || sl2.realization_size() != Some(2) {
        return Err(Error::input(format!("{} is not sl2 realized by 2x2 matrices", sl2.name())));
    }
    if p.ambient_dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: p.ambient_dim() });
    }
    if p.k() != 1 {
        return Err(Error::input(format!("expected a line, got a subspace of dimension {}", p.k())));
    }
    let x = sl2.realize(&p.rows()[0]);
    if x.trace() != rational::zero() {
        return Err(Error::input("element is not traceless"));
    }
    Ok(if x.determinant().is_zero() { LineOrbit::Nilpotent } else { LineOrbit::Semisimple })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitDimensions {
    /// `dim [g, x]`: the orbit of `x` in the algebra.
    pub affine: usize,
    /// `dim([g, x] + ℚx) − 1`: the orbit of the line `[x]`.
    pub projective: usize,
}

/// Orbit dimensions from the rank of `y ↦ [y, x]`.
///
/// For the regular nilpotent `E12 + E23` of `sl3` the centralizer has
/// dimension 2, so the affine orbit has dimension 6; since `x ∈ [g, x]`
/// the projective orbit has dimension 5.  The value 6 sometimes quoted
/// for the projective orbit is the affine one.
pub fn orbit_dimensions(x: &[Rational], l: &LieAlgebra) -> Result<OrbitDimensions> {
    if x.len() != l.dim() {
        return Err(Error::DimensionMismatch { expected: l.dim(), got: x.len() });
    }
    if linalg::is_zero_vec(x) {
        return Err(Error::input("orbit of the zero element"));
    }
    let ad = l.ad(x);
    let affine = ad.rank();
    let mut rows = ad.transpose().row_vecs();
    rows.push(x.to_vec());
    let projective = linalg::span(&rows, l.dim()).rows() - 1;
    Ok(OrbitDimensions { affine, projective })
}

pub fn orbit_dimension_projective(x: &[Rational], l: &LieAlgebra) -> Result<usize> {
    orbit_dimensions(x, l).map(|d| d.projective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtins::{self, gl, sl};
    use crate::rational::int;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn replicas_over_q_are_one_dimensional() {
        let s = Matrix::diagonal(&v(&[1, 1, -2]));
        let r = replica_span_of_semisimple(&s).unwrap();
        assert_eq!(r.len(), 1);
        let ratio = &r[0][(0, 0)] / &s[(0, 0)];
        assert_eq!(r[0], s.scale(&ratio));
        assert_eq!(replica_span_of_semisimple(&Matrix::diagonal(&v(&[1, 0, -1]))).unwrap().len(), 1);
        assert!(replica_span_of_semisimple(&Matrix::zeros(3, 3)).unwrap().is_empty());
        // x^2 - 2
        let irr = Matrix::from_i64(&[&[0, 1], &[2, 0]]);
        assert!(replica_span_of_semisimple(&irr).unwrap_err().is_unsupported());
    }

    #[test]
    fn hull_splits_a_non_algebraic_line() {
        let gl3 = gl(3).unwrap();
        let x = Matrix::diagonal(&v(&[1, 1, -2])).add(&Matrix::unit(3, 0, 1));
        let line = builtins::span_of_matrices(&gl3, &[x]).unwrap();
        let r = algebraic_hull(&line).unwrap();
        assert!(!r.is_algebraic);
        assert!(r.witness.is_some());
        let expected =
            builtins::span_of_matrices(&gl3, &[Matrix::diagonal(&v(&[1, 1, -2])), Matrix::unit(3, 0, 1)]).unwrap();
        assert_eq!(r.hull, expected);
    }

    #[test]
    fn hull_fixes_algebraic_examples() {
        let sl2 = sl(2).unwrap();
        for rows in [vec![v(&[0, 1, 0])], vec![v(&[1, 0, 0])], vec![v(&[1, 0, 0]), v(&[0, 1, 0])]] {
            let h = Subalgebra::span(sl2.clone(), &rows).unwrap();
            let r = algebraic_hull(&h).unwrap();
            assert!(r.is_algebraic, "{rows:?}");
            assert_eq!(r.hull, h);
        }
        assert!(algebraic_hull(&Subalgebra::full(sl2)).unwrap().is_algebraic);
        let sl3 = sl(3).unwrap();
        assert!(algebraic_hull(&builtins::diagonal_torus(&sl3).unwrap()).unwrap().is_algebraic);
    }

    #[test]
    fn irrational_line_is_unsupported() {
        let sl2 = sl(2).unwrap();
        // e + 2f has eigenvalues ±√2
        let h = Subalgebra::span(sl2, &[v(&[0, 1, 2])]).unwrap();
        assert!(algebraic_hull(&h).unwrap_err().is_unsupported());
    }

    #[test]
    fn torus_directions() {
        let (w, ok) = torus_direction_is_algebraic(&[2, 2, -4]).unwrap();
        assert!(ok);
        assert_eq!(w.weights(), &[1, 1, -2]);
        assert_eq!(WeightVector::new(&[-3, 6]).unwrap().weights(), &[1, -2]);
        assert!(WeightVector::new(&[0, 0]).is_err());
        let sl3 = sl(3).unwrap();
        let g = torus_killing_gram(std::slice::from_ref(&w), &sl3).unwrap();
        assert_eq!(g[(0, 0)], int(36));
        let full = [WeightVector::new(&[1, -1, 0]).unwrap(), WeightVector::new(&[0, 1, -1]).unwrap()];
        assert!(torus_killing_regular(&full, &sl3).unwrap());
    }

    #[test]
    fn sl2_lines() {
        let sl2 = sl(2).unwrap();
        let line = |x: &[i64]| SubspacePoint::from_rows(&[v(x)], 3).unwrap();
        assert_eq!(classify_line_sl2(&line(&[0, 1, 0]), &sl2).unwrap(), LineOrbit::Nilpotent);
        assert_eq!(classify_line_sl2(&line(&[1, 0, 0]), &sl2).unwrap(), LineOrbit::Semisimple);
        assert_eq!(classify_line_sl2(&line(&[1, 1, 0]), &sl2).unwrap(), LineOrbit::Semisimple);
    }

    #[test]
    fn orbit_dimensions_in_sl3() {
        let sl3 = sl(3).unwrap();
        let e13 = builtins::element(&sl3, &Matrix::unit(3, 0, 2)).unwrap();
        assert_eq!(orbit_dimension_projective(&e13, &sl3).unwrap(), 3);
        let reg = builtins::element(&sl3, &Matrix::unit(3, 0, 1).add(&Matrix::unit(3, 1, 2))).unwrap();
        assert_eq!(orbit_dimensions(&reg, &sl3).unwrap(), OrbitDimensions { affine: 6, projective: 5 });
        let sl2 = sl(2).unwrap();
        assert_eq!(orbit_dimension_projective(&v(&[1, 0, 0]), &sl2).unwrap(), 2);
        assert!(orbit_dimension_projective(&v(&[0, 0, 0]), &sl2).is_err());
    }
}
