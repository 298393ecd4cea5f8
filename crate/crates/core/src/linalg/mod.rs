//! Exact linear algebra over ℚ: matrices, polynomials and integer lattices.

pub mod lattice;
pub mod matrix;
pub mod mpoly;
pub mod poly;

use num::Zero;

pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use poly::Poly;

use crate::rational::Rational;

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Canonical basis (reduced echelon rows) of the span of `rows` in `Q^n`.
pub fn span(rows: &[Vec<Rational>], n: usize) -> Matrix {
    Matrix::from_rows_with_cols(rows.to_vec(), n).expect("uniform row length").rref().0
}

fn pivots_of(rref: &Matrix) -> Vec<usize> {
    (0..rref.rows()).map(|i| rref.row(i).iter().position(|x| !x.is_zero()).expect("nonzero rref row")).collect()
}

/// Remainder of `v` after eliminating the pivot entries of an rref basis.
pub fn reduce(rref: &Matrix, v: &[Rational]) -> Vec<Rational> {
    let mut r = v.to_vec();
    for (i, p) in pivots_of(rref).into_iter().enumerate() {
        if r[p].is_zero() {
            continue;
        }
        let c = r[p].clone();
        for (x, y) in r.iter_mut().zip(rref.row(i)) {
            *x -= &c * y;
        }
    }
    r
}

pub fn in_span(rref: &Matrix, v: &[Rational]) -> bool {
    is_zero_vec(&reduce(rref, v))
}

/// Coordinates of `v` in an rref basis (reads the pivot entries), or `None`
/// when `v` is outside the span.
pub fn coordinates_in(rref: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    in_span(rref, v).then(|| pivots_of(rref).into_iter().map(|p| v[p].clone()).collect())
}

/// Canonical basis of the intersection of two row spaces in `Q^n`.
pub fn intersect(a: &Matrix, b: &Matrix, n: usize) -> Matrix {
    if a.rows() == 0 || b.rows() == 0 {
        return Matrix::zeros(0, n);
    }
    // c·A = d·B  <=>  (c, -d) in the left kernel of [A; B]
    let stacked = a.vstack(b);
    let rows: Vec<Vec<Rational>> =
        stacked.left_kernel().into_iter().map(|k| Matrix::vec_mul(&k[..a.rows()], a)).collect();
    span(&rows, n)
}

/// Sum of two row spaces.
pub fn sum(a: &Matrix, b: &Matrix) -> Matrix {
    a.vstack(b).rref().0
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn lex_combinations() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn intersection_of_planes() {
        let a = span(&[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]], 3);
        let b = span(&[vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]], 3);
        let i = intersect(&a, &b, 3);
        assert_eq!(i.row_vecs(), vec![vec![int(0), int(1), int(0)]]);
        assert_eq!(coordinates_in(&a, &[int(2), int(3), int(0)]), Some(vec![int(2), int(3)]));
        assert_eq!(coordinates_in(&a, &[int(0), int(0), int(1)]), None);
    }
}
