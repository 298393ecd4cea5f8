//! Exact membership in parametrized groups and the sampled group-axiom check.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{joint_eigenspaces, log_unipotent, torus_element, GroupFactor, ParametrizedGroup};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg::{self, lattice, Matrix};
use crate::rational::{self, Rational};

/// Outcome of [`group_axiom_sample_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheckReport {
    pub trials: usize,
    pub seed: u64,
    /// Number of membership checks performed before stopping.
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

pub(crate) enum MembershipTest {
    Solvable(SolvableTest),
    Sl2 {
        fixed: Vec<Vec<Rational>>,
        plane: Matrix,
    },
    SpecialLinear,
    /// The factors admit no basis in which the tori are diagonal and the
    /// unipotent generators strictly upper triangular.
    Broken(String),
}

pub(crate) struct SolvableTest {
    flag: Matrix,
    flag_inv: Matrix,
    tori: Vec<(Vec<i64>, Matrix)>,
    /// `exponents[k][j]`: weight of torus factor `k` on flag column `j`.
    exponents: Vec<Vec<i64>>,
    unipotent: Matrix,
}

impl MembershipTest {
    pub(crate) fn build(g: &ParametrizedGroup) -> Result<Self> {
        let m = g.size();
        let has = |p: fn(&GroupFactor) -> bool| g.factors().iter().any(p);
        if has(|f| matches!(f, GroupFactor::SpecialLinear { .. })) {
            if g.factors().len() != 1 {
                return Err(Error::unsupported("membership for the ambient group times other factors"));
            }
            return Ok(MembershipTest::SpecialLinear);
        }
        if has(|f| matches!(f, GroupFactor::Sl2 { .. })) {
            let [GroupFactor::Sl2 { e, h, f, .. }] = g.factors() else {
                return Err(Error::unsupported("membership for an SL2 factor times a radical"));
            };
            return standard_sl2(e, h, f, m);
        }
        Ok(build_solvable(g))
    }

    /// `Ok(())` for members, otherwise the reason for rejection.
    pub(crate) fn contains(&self, x: &Matrix) -> std::result::Result<(), String> {
        match self {
            MembershipTest::SpecialLinear => {
                if x.determinant().is_one() {
                    Ok(())
                } else {
                    Err(format!("determinant {} is not 1", rational::format(&x.determinant())))
                }
            }
            MembershipTest::Sl2 { fixed, plane } => {
                if fixed.iter().any(|k| &x.mul_vec(k) != k) {
                    return Err("moves a vector of the trivial summand".into());
                }
                if plane.row_vecs().iter().any(|w| !linalg::in_span(plane, &x.mul_vec(w))) {
                    return Err("does not preserve the standard plane".into());
                }
                if !x.determinant().is_one() {
                    return Err("determinant is not 1".into());
                }
                Ok(())
            }
            MembershipTest::Solvable(t) => t.contains(x),
            MembershipTest::Broken(reason) => Err(reason.clone()),
        }
    }
}

fn standard_sl2(e: &Matrix, h: &Matrix, f: &Matrix, m: usize) -> Result<MembershipTest> {
    let unsupported =
        || Error::unsupported("SL2 membership is implemented for the standard representation plus trivial summands");
    let id = Matrix::identity(m);
    let plus = h.sub(&id).kernel();
    let minus = h.add(&id).kernel();
    let fixed = e.vstack(h).vstack(f).kernel();
    if plus.len() != 1 || minus.len() != 1 || fixed.len() + 2 != m {
        return Err(unsupported());
    }
    let plane = linalg::span(&[plus[0].clone(), minus[0].clone()], m);
    let mut all = fixed.clone();
    all.extend(plane.row_vecs());
    if linalg::span(&all, m).rows() != m {
        return Err(unsupported());
    }
    Ok(MembershipTest::Sl2 { fixed, plane })
}

fn build_solvable(g: &ParametrizedGroup) -> MembershipTest {
    let m = g.size();
    let gens: Vec<Matrix> = g.unipotent_generators().into_iter().cloned().collect();
    let tori: Vec<(Vec<i64>, Matrix)> = g
        .factors()
        .iter()
        .filter_map(|f| match f {
            GroupFactor::Torus { weights, basis } => Some((weights.weights().to_vec(), basis.clone())),
            _ => None,
        })
        .collect();
    let directions: Vec<Matrix> = tori
        .iter()
        .map(|(w, p)| {
            let d = Matrix::diagonal(&w.iter().map(|&x| rational::int(x)).collect::<Vec<_>>());
            p.mul(&d).mul(&p.inverse().expect("checked at construction"))
        })
        .collect();
    let spaces = match joint_eigenspaces(&directions, m) {
        Ok(s) => s,
        Err(e) => return MembershipTest::Broken(e.to_string()),
    };
    // greedy flag: each new vector is a torus eigenvector mapped into the
    // previous span by every unipotent generator
    let mut chosen: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::with_capacity(m);
    while chosen.len() < m {
        let rows: Vec<Vec<Rational>> = chosen.iter().map(|c| c.0.clone()).collect();
        let s = linalg::span(&rows, m);
        let ann = s.kernel();
        let constraints: Vec<Vec<Rational>> =
            ann.iter().flat_map(|a| gens.iter().map(move |n| Matrix::vec_mul(a, n))).collect();
        let allowed = if constraints.is_empty() {
            Matrix::identity(m)
        } else {
            linalg::span(&Matrix::from_rows_with_cols(constraints, m).expect("uniform rows").kernel(), m)
        };
        let next = spaces.iter().find_map(|(tuple, eigen)| {
            linalg::intersect(eigen, &allowed, m)
                .row_vecs()
                .into_iter()
                .find(|v| !linalg::in_span(&s, v))
                .map(|v| (v, tuple.clone()))
        });
        match next {
            Some(c) => chosen.push(c),
            None => {
                return MembershipTest::Broken(
                    "no torus eigenvector extends the flag of the unipotent generators".into(),
                )
            }
        }
    }
    let flag = Matrix::from_rows(chosen.iter().map(|c| c.0.clone()).collect()).expect("m rows").transpose();
    let flag_inv = flag.inverse().expect("flag vectors are independent");
    let mut exponents = vec![Vec::with_capacity(m); tori.len()];
    for (_, tuple) in &chosen {
        for (k, lambda) in tuple.iter().enumerate() {
            let Some(e) = lambda.is_integer().then(|| lambda.to_integer().to_i64()).flatten() else {
                return MembershipTest::Broken("torus weight is not integral".into());
            };
            exponents[k].push(e);
        }
    }
    let flat: Vec<Vec<Rational>> = gens.iter().map(|n| n.flat().to_vec()).collect();
    let unipotent = linalg::span(&flat, m * m);
    MembershipTest::Solvable(SolvableTest { flag, flag_inv, tori, exponents, unipotent })
}

impl SolvableTest {
    fn contains(&self, x: &Matrix) -> std::result::Result<(), String> {
        let m = x.rows();
        let y = self.flag_inv.mul(x).mul(&self.flag);
        for i in 0..m {
            for j in 0..i {
                if !y[(i, j)].is_zero() {
                    return Err("not triangular in the adapted basis".into());
                }
            }
        }
        let d: Vec<Rational> = (0..m).map(|j| y[(j, j)].clone()).collect();
        let s = solve_multiplicative(&self.exponents, &d).ok_or("diagonal is not in the image of the torus")?;
        let mut t = Matrix::identity(m);
        for ((w, p), sk) in self.tori.iter().zip(&s) {
            t = t.mul(&torus_element(w, p, sk).map_err(|e| e.to_string())?);
        }
        let u = x.mul(&t.inverse().expect("torus elements are invertible"));
        let log = log_unipotent(&u).ok_or("unipotent part is not unipotent")?;
        if !linalg::in_span(&self.unipotent, log.flat()) {
            return Err("logarithm of the unipotent part leaves the unipotent algebra".into());
        }
        Ok(())
    }
}

/// Nonzero rationals `s` with `Π_k s_k^{e[k][j]} = d_j` for every `j`.
///
/// Valuations are taken over a coprime base of the numerators and
/// denominators, each element reduced to its primitive root, so no integer
/// factorization is needed.
pub(crate) fn solve_multiplicative(exponents: &[Vec<i64>], d: &[Rational]) -> Option<Vec<Rational>> {
    if d.iter().any(Zero::is_zero) {
        return None;
    }
    let q = exponents.len();
    let m = d.len();
    let mut raw: Vec<BigInt> = Vec::new();
    for x in d {
        raw.push(x.numer().abs());
        raw.push(x.denom().clone());
    }
    let base = coprime_base(raw);
    let a: Vec<Vec<BigInt>> = (0..m).map(|j| (0..q).map(|k| BigInt::from(exponents[k][j])).collect()).collect();
    let mut s: Vec<Rational> = vec![Rational::one(); q];
    for b in &base {
        let e: Vec<BigInt> =
            d.iter().map(|x| BigInt::from(valuation(x.numer(), b)) - BigInt::from(valuation(x.denom(), b))).collect();
        let sol = if q == 0 { e.iter().all(Zero::is_zero).then(Vec::new)? } else { lattice::solve_integer(&a, q, &e)? };
        let br = Rational::from_integer(b.clone());
        for (sk, xk) in s.iter_mut().zip(&sol) {
            *sk = &*sk * rational::pow(&br, xk.to_i64()?);
        }
    }
    let negative: Vec<bool> = d.iter().map(Signed::is_negative).collect();
    let mask = (0u32..1 << q).find(|mask| {
        (0..m).all(|j| {
            let parity: i64 = (0..q).filter(|k| mask >> k & 1 == 1).map(|k| exponents[k][j]).sum();
            (parity.rem_euclid(2) == 1) == negative[j]
        })
    })?;
    for (k, sk) in s.iter_mut().enumerate() {
        if mask >> k & 1 == 1 {
            *sk = -sk.clone();
        }
    }
    let ok = (0..m).all(|j| {
        let prod = (0..q).fold(Rational::one(), |acc, k| acc * rational::pow(&s[k], exponents[k][j]));
        prod == d[j]
    });
    ok.then_some(s)
}

fn coprime_base(values: Vec<BigInt>) -> Vec<BigInt> {
    let one = BigInt::one();
    let mut v: Vec<BigInt> = values.into_iter().filter(|x| x > &one).collect();
    v.sort();
    v.dedup();
    'outer: loop {
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let g = v[i].gcd(&v[j]);
                if g > one {
                    let (a, b) = (&v[i] / &g, &v[j] / &g);
                    v.remove(j);
                    v.remove(i);
                    v.extend([a, b, g].into_iter().filter(|x| x > &one));
                    v.sort();
                    v.dedup();
                    continue 'outer;
                }
            }
        }
        return v.into_iter().map(|b| primitive_root(&b)).collect();
    }
}

/// `r` with `b = r^k` for the largest possible `k`.
fn primitive_root(b: &BigInt) -> BigInt {
    for k in (2..=b.bits() as u32).rev() {
        let r = b.nth_root(k);
        if r > BigInt::one() && num::pow(r.clone(), k as usize) == *b {
            return r;
        }
    }
    b.clone()
}

fn valuation(n: &BigInt, b: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % b).is_zero() {
        n /= b;
        k += 1;
    }
    k
}

pub fn group_axiom_sample_check(g: &ParametrizedGroup, trials: usize, seed: u64) -> Result<GroupCheckReport> {
    group_axiom_sample_check_with(g, trials, seed, Execution::default())
}

/// Draws seeded parameter pairs `(p, q)` and checks that `g(p)`, `g(p)⁻¹`
/// and `g(p)·g(q)` all lie in the group.  Trial `i` uses ChaCha stream `i`
/// of `seed`, so the report does not depend on the execution mode.
pub fn group_axiom_sample_check_with(
    g: &ParametrizedGroup,
    trials: usize,
    seed: u64,
    mode: Execution,
) -> Result<GroupCheckReport> {
    let test = MembershipTest::build(g)?;
    let mut report = GroupCheckReport { trials, seed, checks: 1, passed: true, counterexample: None };
    let identity = g.evaluate(&g.identity_parameters())?;
    if identity != Matrix::identity(g.size()) {
        report.passed = false;
        report.counterexample = Some("identity parameters do not evaluate to the identity matrix".into());
        return Ok(report);
    }
    let outcomes = exec::map_range(mode, trials, |i| -> Result<Option<String>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let p = g.sample_parameters(&mut rng);
        let q = g.sample_parameters(&mut rng);
        let x = g.evaluate(&p)?;
        let y = g.evaluate(&q)?;
        let inv = x.inverse().ok_or_else(|| Error::precondition("evaluated element is singular"))?;
        let show = |v: &[Rational]| format!("[{}]", rational::format_vec(v).join(", "));
        for (what, z) in [("g(p)", &x), ("g(p)^-1", &inv), ("g(p)*g(q)", &x.mul(&y))] {
            if let Err(reason) = test.contains(z) {
                return Ok(Some(format!(
                    "trial {i}: {what} is not in the group ({reason}); p = {}, q = {}",
                    show(&p),
                    show(&q)
                )));
            }
        }
        Ok(None)
    });
    for outcome in outcomes {
        let outcome = outcome?;
        match outcome {
            None => report.checks += 3,
            Some(msg) => {
                report.checks += 1;
                report.passed = false;
                report.counterexample = Some(msg);
                break;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integration::{integrate_algebraic, integrate_solvable};
    use crate::lie::builtins::{self, sl};
    use crate::lie::Subalgebra;
    use crate::rational::{frac, int};

    #[test]
    fn multiplicative_solve() {
        // s^2 = 9/4, s^-2 = 4/9
        let s = solve_multiplicative(&[vec![2, -2]], &[frac(9, 4), frac(4, 9)]).unwrap();
        assert_eq!(s[0].clone() * s[0].clone(), frac(9, 4));
        assert!(solve_multiplicative(&[vec![2, -2]], &[int(2), frac(1, 2)]).is_none());
        assert!(solve_multiplicative(&[vec![2, -2]], &[int(-1), int(-1)]).is_none());
        let s = solve_multiplicative(&[vec![1, 0, -1], vec![0, 1, -1]], &[int(-6), frac(1, 10), frac(-5, 3)]).unwrap();
        assert_eq!(s, vec![int(-6), frac(1, 10)]);
        assert_eq!(solve_multiplicative(&[], &[int(1), int(1)]), Some(vec![]));
        assert_eq!(coprime_base(vec![BigInt::from(12), BigInt::from(18)]), vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(coprime_base(vec![BigInt::from(36)]), vec![BigInt::from(6)]);
        assert_eq!(solve_multiplicative(&[vec![2]], &[int(12)]), None);
    }

    #[test]
    fn solvable_groups_pass() {
        let sl2 = sl(2).unwrap();
        let sl3 = sl(3).unwrap();
        for h in
            [builtins::borel(&sl2).unwrap(), builtins::upper_nilradical(&sl2).unwrap(), builtins::borel(&sl3).unwrap()]
        {
            let g = integrate_solvable(&h).unwrap();
            let r = group_axiom_sample_check(&g, 40, 7).unwrap();
            assert!(r.passed, "{h:?}: {:?}", r.counterexample);
            assert_eq!(r.checks, 1 + 3 * 40);
        }
    }

    #[test]
    fn semisimple_groups_pass() {
        let sl2 = sl(2).unwrap();
        let sl3 = sl(3).unwrap();
        for h in [Subalgebra::full(sl2), builtins::top_left_sl2(&sl3).unwrap(), Subalgebra::full(sl3)] {
            let g = integrate_algebraic(&h).unwrap();
            let r = group_axiom_sample_check(&g, 30, 1).unwrap();
            assert!(r.passed, "{:?}", r.counterexample);
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let sl2 = sl(2).unwrap();
        let g = integrate_solvable(&builtins::borel(&sl2).unwrap()).unwrap();
        assert!(!g.contains(&Matrix::from_i64(&[&[1, 0], &[1, 1]])).unwrap());
        assert!(!g.contains(&Matrix::from_i64(&[&[2, 0], &[0, 1]])).unwrap());
        assert!(g.contains(&Matrix::diagonal(&[frac(-2, 3), frac(-3, 2)])).unwrap());
    }

    #[test]
    fn corrupted_weight_fails_with_counterexample() {
        let sl3 = sl(3).unwrap();
        let d = Matrix::diagonal(&[int(2), int(-1), int(-1)]);
        let n = Matrix::unit(3, 0, 1).add(&Matrix::unit(3, 0, 2));
        let h = builtins::span_of_matrices(&sl3, &[d, n]).unwrap();
        let g = integrate_solvable(&h).unwrap();
        assert!(group_axiom_sample_check(&g, 50, 3).unwrap().passed);
        let bad = g.with_torus_weights_unchecked(0, vec![2, -2, 0]).unwrap();
        let r = group_axiom_sample_check(&bad, 50, 3).unwrap();
        assert!(!r.passed);
        let msg = r.counterexample.unwrap();
        assert!(msg.contains("is not in the group"), "{msg}");
    }

    #[test]
    fn report_is_mode_independent() {
        let sl3 = sl(3).unwrap();
        let g = integrate_solvable(&builtins::borel(&sl3).unwrap()).unwrap();
        let a = group_axiom_sample_check_with(&g, 25, 11, Execution::Sequential).unwrap();
        let b = group_axiom_sample_check_with(&g, 25, 11, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
