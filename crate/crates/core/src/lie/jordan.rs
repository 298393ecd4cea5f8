use crate::error::{Error, Result};
use crate::linalg::{Matrix, Poly};

/// Additive Jordan decomposition `x = s + n` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple: Matrix,
    pub nilpotent: Matrix,
}

/// Splits `x` into commuting semisimple and nilpotent parts.
///
/// With `p` the square-free part of the characteristic polynomial, the
/// Newton iteration `s ← s − p(s)·p′(s)⁻¹` starting at `x` converges in
/// finitely many steps to the semisimple part; every iterate is a
/// polynomial in `x`.
pub fn jordan_decompose(x: &Matrix) -> Result<JordanPair> {
    if !x.is_square() {
        return Err(Error::input(format!("Jordan decomposition needs a square matrix, got {}x{}", x.rows(), x.cols())));
    }
    let p = x.char_poly().squarefree_part();
    let dp = p.derivative();
    let mut s = x.clone();
    loop {
        let ps = s.eval_poly(&p);
        if ps.is_zero() {
            break;
        }
        let inv = s.eval_poly(&dp).inverse().expect("p' is invertible at every Newton iterate");
        s = s.sub(&ps.mul(&inv));
    }
    let nilpotent = x.sub(&s);
    Ok(JordanPair { semisimple: s, nilpotent })
}

/// True when the minimal polynomial of `x` is square-free over ℚ.
pub fn is_semisimple(x: &Matrix) -> bool {
    x.is_square() && x.eval_poly(&x.char_poly().squarefree_part()).is_zero()
}

/// Distinct eigenvalues when they are all rational, ascending.
pub fn rational_spectrum(x: &Matrix) -> Result<Vec<crate::Rational>> {
    let p: Poly = x.char_poly().squarefree_part();
    let roots = p.rational_roots()?;
    if Some(roots.len()) != p.degree() {
        return Err(Error::unsupported(format!("matrix {x} has irrational eigenvalues")));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_shifted_torus_element() {
        let x = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]]);
        let j = jordan_decompose(&x).unwrap();
        assert_eq!(j.semisimple, Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -2]]));
        assert_eq!(j.nilpotent, Matrix::unit(3, 0, 1));
    }

    #[test]
    fn pure_cases() {
        let n = Matrix::unit(3, 0, 1);
        let j = jordan_decompose(&n).unwrap();
        assert!(j.semisimple.is_zero());
        assert_eq!(j.nilpotent, n);
        let d = Matrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let j = jordan_decompose(&d).unwrap();
        assert_eq!(j.semisimple, d);
        assert!(j.nilpotent.is_zero());
    }

    #[test]
    fn irreducible_quadratic_block() {
        // rotation block plus a nilpotent coupling: semisimple part is not diagonalizable over Q
        let x = Matrix::from_i64(&[&[0, -1, 1, 0], &[1, 0, 0, 1], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        let j = jordan_decompose(&x).unwrap();
        assert!(j.nilpotent.is_nilpotent());
        assert!(is_semisimple(&j.semisimple));
        assert_eq!(j.semisimple.commutator(&j.nilpotent), Matrix::zeros(4, 4));
        assert!(!j.nilpotent.is_zero());
        assert!(rational_spectrum(&x).unwrap_err().is_unsupported());
    }

    #[test]
    fn rejects_non_square() {
        assert!(jordan_decompose(&Matrix::zeros(2, 3)).is_err());
    }
}
