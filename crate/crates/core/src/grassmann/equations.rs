use num::Zero;

use super::{signed_slot, subset_index, SubspacePoint};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{self, MPoly};
use crate::rational::{self, Rational};

/// Polynomials in the Plücker coordinates cutting out the variety of
/// `k`-dimensional subalgebras inside `Gr(k, n)`.
///
/// The closure conditions say `[v_A, v_B] ∧ ω = 0`, where `ω` is the Plücker
/// vector and `v_A = Σ_j p(A, j) e_j` runs over the contractions of `ω` by
/// `(k−1)`-subsets `A`; these span the subspace whenever `ω` is decomposable.
#[derive(Clone, Debug)]
pub struct PolynomialSystem {
    pub n: usize,
    pub k: usize,
    pub pluecker_relations: Vec<MPoly>,
    pub closure_conditions: Vec<MPoly>,
}

impl PolynomialSystem {
    pub fn num_vars(&self) -> usize {
        linalg::combinations(self.n, self.k).len()
    }

    pub fn vanishes_at(&self, p: &SubspacePoint) -> bool {
        if p.ambient_dim() != self.n || p.k() != self.k {
            return false;
        }
        self.pluecker_relations.iter().chain(&self.closure_conditions).all(|f| f.eval(p.pluecker()).is_zero())
    }

    pub fn len(&self) -> usize {
        self.pluecker_relations.len() + self.closure_conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn lambda_equations(l: &LieAlgebra, k: usize) -> Result<PolynomialSystem> {
    let n = l.dim();
    if k == 0 || k > n {
        return Err(Error::input(format!("subspace dimension must satisfy 1 <= k <= {n}, got {k}")));
    }
    let index = subset_index(n, k);
    let nvars = index.len();
    let lower = linalg::combinations(n, k - 1);
    let upper = if k < n { linalg::combinations(n, k + 1) } else { Vec::new() };

    let slot = |list: &[usize]| signed_slot(list, &index);
    let sign = |neg: bool| if neg { rational::int(-1) } else { rational::one() };

    let mut pluecker_relations = Vec::new();
    for a in &lower {
        for b in &upper {
            let mut f = MPoly::zero(nvars);
            for (pos, &bl) in b.iter().enumerate() {
                let mut first = a.clone();
                first.push(bl);
                let rest: Vec<usize> = b.iter().copied().filter(|&x| x != bl).collect();
                if let (Some((n1, i1)), Some((n2, i2))) = (slot(&first), slot(&rest)) {
                    let s = sign(n1 ^ n2 ^ (pos % 2 == 1));
                    f.add_term(&[i1, i2], &s);
                }
            }
            if !f.is_zero() {
                pluecker_relations.push(f.normalized());
            }
        }
    }
    dedup(&mut pluecker_relations);

    // structure constants grouped by output coordinate
    let mut by_output: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            for (c, v) in l.basis_bracket(i, j).iter().enumerate() {
                if !v.is_zero() {
                    by_output[c].push((i, j, v.clone()));
                }
            }
        }
    }

    let mut closure_conditions = Vec::new();
    for (ai, a) in lower.iter().enumerate() {
        for b in &lower[ai + 1..] {
            for c in &upper {
                let mut f = MPoly::zero(nvars);
                for (pos, &cl) in c.iter().enumerate() {
                    let rest: Vec<usize> = c.iter().copied().filter(|&x| x != cl).collect();
                    let Some((n3, i3)) = slot(&rest) else { continue };
                    for (i, j, coef) in &by_output[cl] {
                        let mut la = a.clone();
                        la.push(*i);
                        let mut lb = b.clone();
                        lb.push(*j);
                        if let (Some((n1, i1)), Some((n2, i2))) = (slot(&la), slot(&lb)) {
                            let s = sign(n1 ^ n2 ^ n3 ^ (pos % 2 == 1));
                            f.add_term(&[i1, i2, i3], &(s * coef));
                        }
                    }
                }
                if !f.is_zero() {
                    closure_conditions.push(f.normalized());
                }
            }
        }
    }
    dedup(&mut closure_conditions);

    Ok(PolynomialSystem { n, k, pluecker_relations, closure_conditions })
}

fn dedup(polys: &mut Vec<MPoly>) {
    let mut seen = std::collections::HashSet::new();
    polys.retain(|p| seen.insert(p.to_string()));
}
