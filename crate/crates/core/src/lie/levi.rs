//! Levi classes from a fixed catalog `{0, A1, A1+A1, A2}`.
//!
//! A class is recognized by the fingerprint `(dim, rank)` of `h / rad(h)`,
//! where the rank is the smallest nullity of `ad x` over generic `x`.  The
//! injection order records `A1+A1` and `A2` as non-comparable even though
//! both have rank 2.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};

/// Largest ambient dimension accepted by the Levi computation.
pub const CATALOG_AMBIENT_BOUND: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemisimpleClass {
    Zero,
    A1,
    A1xA1,
    A2,
}

impl SemisimpleClass {
    pub const ALL: [SemisimpleClass; 4] =
        [SemisimpleClass::Zero, SemisimpleClass::A1, SemisimpleClass::A1xA1, SemisimpleClass::A2];

    pub fn label(self) -> &'static str {
        match self {
            SemisimpleClass::Zero => "0",
            SemisimpleClass::A1 => "A1",
            SemisimpleClass::A1xA1 => "A1+A1",
            SemisimpleClass::A2 => "A2",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SemisimpleClass::Zero => 0,
            SemisimpleClass::A1 => 3,
            SemisimpleClass::A1xA1 => 6,
            SemisimpleClass::A2 => 8,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            SemisimpleClass::Zero => 0,
            SemisimpleClass::A1 => 1,
            SemisimpleClass::A1xA1 | SemisimpleClass::A2 => 2,
        }
    }

    pub fn from_fingerprint(dim: usize, rank: usize) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.dim() == dim && c.rank() == rank)
    }

    /// Catalog injection table: does `self` embed into `other`?
    pub fn leq(self, other: SemisimpleClass) -> bool {
        use SemisimpleClass::*;
        matches!((self, other), (Zero, _) | (A1, A1) | (A1, A1xA1) | (A1, A2) | (A1xA1, A1xA1) | (A2, A2))
    }
}

impl FromStr for SemisimpleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.label() == s.trim())
            .ok_or_else(|| Error::input(format!("unknown semisimple class label {s:?}")))
    }
}

impl fmt::Display for SemisimpleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn semisimple_class_leq(a: &str, b: &str) -> Result<bool> {
    Ok(a.parse::<SemisimpleClass>()?.leq(b.parse()?))
}

/// Levi class of a subalgebra and, when the catalog search finds one, an
/// explicit semisimple complement to the solvable radical.
#[derive(Clone, Debug)]
pub struct LeviDecomposition {
    pub class: SemisimpleClass,
    pub radical: Subalgebra,
    pub complement: Option<Subalgebra>,
    /// `(e, h, f)` in ambient coordinates when the complement is an
    /// `sl2`-triple span.
    pub triple: Option<[Vec<Rational>; 3]>,
}

pub fn levi_semisimple_class(h: &Subalgebra) -> Result<LeviDecomposition> {
    let ambient = h.ambient();
    if ambient.dim() > CATALOG_AMBIENT_BOUND {
        return Err(Error::unsupported(format!(
            "Levi catalog handles ambient dimension at most {CATALOG_AMBIENT_BOUND}, got {}",
            ambient.dim()
        )));
    }
    let radical = h.solvable_radical();
    if radical.dim() == h.dim() {
        let zero = Subalgebra::zero(ambient.clone());
        return Ok(LeviDecomposition { class: SemisimpleClass::Zero, radical, complement: Some(zero), triple: None });
    }
    let quotient = quotient_algebra(h, &radical)?;
    let rank = generic_rank(&quotient);
    let class = SemisimpleClass::from_fingerprint(quotient.dim(), rank).ok_or_else(|| {
        Error::unsupported(format!(
            "semisimple quotient of dimension {} and rank {rank} is outside the catalog",
            quotient.dim()
        ))
    })?;
    if radical.dim() == 0 {
        return Ok(LeviDecomposition { class, radical, complement: Some(h.clone()), triple: None });
    }
    let derived = h.derived();
    if derived.dim() == class.dim() && derived.intersection(&radical).dim() == 0 {
        return Ok(LeviDecomposition { class, radical, complement: Some(derived), triple: None });
    }
    if class == SemisimpleClass::A1 {
        if let Some(triple) = find_sl2_triple(h, &radical) {
            let complement = Subalgebra::span(ambient.clone(), &triple)?;
            return Ok(LeviDecomposition { class, radical, complement: Some(complement), triple: Some(triple) });
        }
    }
    Ok(LeviDecomposition { class, radical, complement: None, triple: None })
}

/// Structure constants of `h / r` on the rows of `h` that stay independent
/// modulo `r`.
fn quotient_algebra(h: &Subalgebra, r: &Subalgebra) -> Result<LieAlgebra> {
    let n = h.ambient().dim();
    let mut reps: Vec<Vec<Rational>> = Vec::new();
    let mut acc = r.basis().clone();
    for row in h.basis_rows() {
        if !linalg::in_span(&acc, &row) {
            acc = linalg::sum(&acc, &Matrix::from_rows_with_cols(vec![row.clone()], n)?);
            reps.push(row);
        }
    }
    // coordinates modulo r: solve against [reps; r]
    let stacked = Matrix::from_rows_with_cols(reps.clone(), n)?.vstack(r.basis());
    let q = reps.len();
    let mut brackets = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            let b = h.ambient().bracket_unchecked(&reps[i], &reps[j]);
            let c = stacked.solve_left(&b).expect("bracket stays in h");
            let terms: Vec<(usize, Rational)> =
                c.into_iter().take(q).enumerate().filter(|(_, x)| !x.is_zero()).collect();
            if !terms.is_empty() {
                brackets.push((i, j, terms));
            }
        }
    }
    LieAlgebra::new("quotient", (0..q).map(|i| format!("q{i}")).collect(), brackets, None)
}

/// Minimal nullity of `ad x` over seeded pseudorandom `x`.
fn generic_rank(l: &LieAlgebra) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e71);
    let n = l.dim();
    (0..8)
        .map(|_| {
            let x: Vec<Rational> = (0..n).map(|_| rational::int(rng.gen_range(-97..=97))).collect();
            n - l.ad(&x).rank()
        })
        .min()
        .unwrap_or(0)
}

/// Solves for an `sl2`-triple through a candidate nilpotent `e`: first
/// `h ∈ [e, L]` with `[h, e] = 2e`, then `f` with `[e, f] = h`, `[h, f] = −2f`.
pub(crate) fn find_sl2_triple(l: &Subalgebra, radical: &Subalgebra) -> Option<[Vec<Rational>; 3]> {
    let alg = l.ambient();
    let rows = l.basis_rows();
    let mut candidates = rows.clone();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            candidates.push(alg.bracket_unchecked(&rows[i], &rows[j]));
            candidates.push(linalg::add_vec(&rows[i], &rows[j]));
            candidates.push(linalg::sub_vec(&rows[i], &rows[j]));
        }
    }
    candidates.into_iter().filter(|e| !radical.contains(e) && is_ad_nilpotent(l, e)).find_map(|e| triple_through(l, &e))
}

fn is_ad_nilpotent(l: &Subalgebra, x: &[Rational]) -> bool {
    let ad = restricted_ad(l, x);
    ad.is_nilpotent()
}

/// Matrix of `ad x` on `l` in its echelon basis.
fn restricted_ad(l: &Subalgebra, x: &[Rational]) -> Matrix {
    let rows = l.basis_rows();
    let k = rows.len();
    let mut m = Matrix::zeros(k, k);
    for (j, r) in rows.iter().enumerate() {
        let c = l.coordinates(&l.ambient().bracket_unchecked(x, r)).expect("closed");
        for (i, v) in c.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

fn triple_through(l: &Subalgebra, e: &[Rational]) -> Option<[Vec<Rational>; 3]> {
    let alg = l.ambient();
    let k = l.dim();
    let two = rational::int(2);
    let e_c = l.coordinates(e)?;
    let ad_e = restricted_ad(l, e);
    // h = ad_e z, [h, e] = -ad_e h = 2e  =>  ad_e^2 z = -2e
    let h_z = ad_e.mul(&ad_e).solve(&linalg::scale_vec(&e_c, &(-two.clone())))?;
    let h_c = ad_e.mul_vec(&h_z);
    if linalg::is_zero_vec(&h_c) {
        return None;
    }
    let ad_h = restricted_ad(l, &l.lift(&h_c));
    // [e, f] = h and [h, f] + 2f = 0
    let mut system = Matrix::zeros(2 * k, k);
    let mut rhs = vec![Rational::zero(); 2 * k];
    for i in 0..k {
        for j in 0..k {
            system[(i, j)] = ad_e[(i, j)].clone();
            let diag = if i == j { two.clone() } else { Rational::zero() };
            system[(k + i, j)] = &ad_h[(i, j)] + diag;
        }
        rhs[i] = h_c[i].clone();
    }
    let f_c = system.solve(&rhs)?;
    let (e, h, f) = (e.to_vec(), l.lift(&h_c), l.lift(&f_c));
    debug_assert_eq!(alg.bracket_unchecked(&h, &e), linalg::scale_vec(&e, &two));
    Some([e, h, f])
}

/// Convenience for callers holding an algebra rather than a subalgebra.
pub fn levi_of_algebra(l: &Arc<LieAlgebra>) -> Result<LeviDecomposition> {
    levi_semisimple_class(&Subalgebra::full(l.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtins::{self, sl};
    use SemisimpleClass::*;

    #[test]
    fn order_is_a_partial_order() {
        for a in SemisimpleClass::ALL {
            assert!(a.leq(a));
            for b in SemisimpleClass::ALL {
                if a != b && a.leq(b) {
                    assert!(!b.leq(a));
                }
                for c in SemisimpleClass::ALL {
                    if a.leq(b) && b.leq(c) {
                        assert!(a.leq(c));
                    }
                }
            }
        }
        assert!(!A1xA1.leq(A2) && !A2.leq(A1xA1));
        assert!(semisimple_class_leq("0", "A2").unwrap());
        assert!(!semisimple_class_leq("A2", "A1").unwrap());
        assert!(semisimple_class_leq("B2", "A2").is_err());
    }

    #[test]
    fn classes_of_standard_algebras() {
        let sl2 = sl(2).unwrap();
        assert_eq!(levi_of_algebra(&sl2).unwrap().class, A1);
        let sl3 = sl(3).unwrap();
        assert_eq!(levi_of_algebra(&sl3).unwrap().class, A2);
        let borel = builtins::borel(&sl2).unwrap();
        assert_eq!(levi_semisimple_class(&borel).unwrap().class, Zero);
        let top = builtins::top_left_sl2(&sl3).unwrap();
        let d = levi_semisimple_class(&top).unwrap();
        assert_eq!(d.class, A1);
        assert_eq!(d.complement.unwrap(), top);
    }

    #[test]
    fn block_diagonal_sl2_pair_in_sl4() {
        let sl4 = sl(4).unwrap();
        let mut mats = Vec::new();
        for off in [0, 2] {
            mats.push(Matrix::unit(4, off, off).sub(&Matrix::unit(4, off + 1, off + 1)));
            mats.push(Matrix::unit(4, off, off + 1));
            mats.push(Matrix::unit(4, off + 1, off));
        }
        let h = builtins::span_of_matrices(&sl4, &mats).unwrap();
        assert_eq!(levi_semisimple_class(&h).unwrap().class, A1xA1);
    }

    #[test]
    fn gl3_levi_factor_is_derived_algebra() {
        let gl3 = builtins::gl(3).unwrap();
        let d = levi_of_algebra(&gl3).unwrap();
        assert_eq!(d.class, A2);
        assert_eq!(d.radical.dim(), 1);
        assert_eq!(d.complement.unwrap().dim(), 8);
    }

    #[test]
    fn parabolic_gets_a_triple() {
        // top-left sl2 plus the column E13, E23: sl2 ⋉ Q^2
        let sl3 = sl(3).unwrap();
        let mats = vec![
            Matrix::unit(3, 0, 0).sub(&Matrix::unit(3, 1, 1)),
            Matrix::unit(3, 0, 1),
            Matrix::unit(3, 1, 0),
            Matrix::unit(3, 0, 2),
            Matrix::unit(3, 1, 2),
        ];
        let h = builtins::span_of_matrices(&sl3, &mats).unwrap();
        let d = levi_semisimple_class(&h).unwrap();
        assert_eq!(d.class, A1);
        assert_eq!(d.radical.dim(), 2);
        let [e, hh, f] = d.triple.expect("triple found");
        assert_eq!(sl3.bracket(&e, &f).unwrap(), hh);
        assert_eq!(d.complement.unwrap().dim(), 3);
    }
}
