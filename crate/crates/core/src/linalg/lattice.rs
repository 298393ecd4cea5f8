//! Integer lattices: Hermite normal form, integer kernels and saturation.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, Zero};

use super::matrix::Matrix;
use crate::rational::{self, Rational};

/// Row Hermite normal form; zero rows dropped, pivots positive, entries
/// above each pivot reduced into `[0, pivot)`.
pub fn row_hnf(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        while let Some(p) = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs()) {
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot_row = a[r].clone();
        for row in a.iter_mut().take(r) {
            let q = row[c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

fn augmented_transpose(a: &[Vec<BigInt>], q: usize) -> Vec<Vec<BigInt>> {
    let p = a.len();
    (0..q)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..p).map(|i| a[i][j].clone()).collect();
            row.extend((0..q).map(|k| BigInt::from((k == j) as i64)));
            row
        })
        .collect()
}

/// Z-basis (in Hermite normal form) of `{x ∈ Z^q : A x = 0}` for `A` of size `p × q`.
pub fn integer_kernel(a: &[Vec<BigInt>], q: usize) -> Vec<Vec<BigInt>> {
    let p = a.len();
    let h = row_hnf(&augmented_transpose(a, q), p + q);
    let kernel: Vec<Vec<BigInt>> =
        h.into_iter().filter(|row| row[..p].iter().all(Zero::is_zero)).map(|row| row[p..].to_vec()).collect();
    row_hnf(&kernel, q)
}

/// Some integer `x` with `A x = b`, if one exists.
pub fn solve_integer(a: &[Vec<BigInt>], q: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let p = a.len();
    assert_eq!(b.len(), p);
    let h = row_hnf(&augmented_transpose(a, q), p + q);
    let mut residual = b.to_vec();
    let mut x = vec![BigInt::zero(); q];
    for row in h.iter().filter(|row| row[..p].iter().any(|v| !v.is_zero())) {
        let c = row[..p].iter().position(|v| !v.is_zero()).unwrap();
        let (y, rem) = residual[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for (r, v) in residual.iter_mut().zip(&row[..p]) {
            *r -= &y * v;
        }
        for (xi, u) in x.iter_mut().zip(&row[p..]) {
            *xi += &y * u;
        }
    }
    residual.iter().all(Zero::is_zero).then_some(x)
}

/// Z-basis (Hermite normal form) of `Z^m ∩ span_Q(vectors)`.
pub fn saturate(vectors: &[Vec<Rational>], m: usize) -> Vec<Vec<BigInt>> {
    let span = Matrix::from_rows_with_cols(vectors.to_vec(), m).expect("uniform length").rref().0;
    if span.rows() == 0 {
        return Vec::new();
    }
    let complement: Vec<Vec<BigInt>> =
        span.kernel().iter().map(|w| rational::primitive_integer_vector(w).expect("nonzero kernel vector")).collect();
    if complement.is_empty() {
        let ident: Vec<Vec<BigInt>> = (0..m).map(|i| (0..m).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        return row_hnf(&ident, m);
    }
    integer_kernel(&complement, m)
}

pub fn to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    use num::ToPrimitive;
    v.iter().map(ToPrimitive::to_i64).collect()
}

pub fn from_i64(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn b(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| from_i64(r)).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let h1 = row_hnf(&b(&[&[2, 4], &[1, 3]]), 2);
        let h2 = row_hnf(&b(&[&[1, 3], &[3, 7]]), 2);
        assert_eq!(h1, h2);
        assert_eq!(h1, b(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn kernel_of_sum_functional() {
        let k = integer_kernel(&b(&[&[1, 1, 1]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(v.iter().sum::<BigInt>().is_zero());
        }
    }

    #[test]
    fn saturation_adds_missing_half() {
        // span{(1,1,-2), (1,-1,0)}: the lattice contains (1,0,-1) = half the sum
        let s = saturate(&[vec![int(1), int(1), int(-2)], vec![int(1), int(-1), int(0)]], 3);
        assert_eq!(s.len(), 2);
        let target = from_i64(&[1, 0, -1]);
        let a: Vec<Vec<BigInt>> = (0..3).map(|j| s.iter().map(|r| r[j].clone()).collect()).collect();
        assert!(solve_integer(&a, 2, &target).is_some());
    }

    #[test]
    fn integer_solve_detects_divisibility() {
        let a = b(&[&[2]]);
        assert!(solve_integer(&a, 1, &from_i64(&[3])).is_none());
        assert_eq!(solve_integer(&a, 1, &from_i64(&[4])).unwrap(), from_i64(&[2]));
    }
}
