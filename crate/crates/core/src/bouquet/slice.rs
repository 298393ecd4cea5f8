//! The slice of one-dimensional subalgebras of `sl3` up to a height bound.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{validate_pattern, Bouquet, Component, ComponentKind, GluingPattern, Locus};
use crate::algebraicity::orbit_dimension_projective;
use crate::error::{Error, Result};
use crate::grassmann::{LimitPoint, PolynomialPath, SubspacePoint};
use crate::lie::builtins::{element, sl};
use crate::lie::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::{self, int, Rational};

const CONJUGATOR_SEED: u64 = 0x51ce;
const CONJUGATORS: usize = 3;

/// Primitive `(a, b, c)` with `a + b + c = 0` and entries bounded by
/// `height`, one per class under permutations and global sign, each the
/// lexicographically largest member of its class.
pub fn semisimple_directions(height: u32) -> Vec<[i64; 3]> {
    let h = height as i64;
    let mut out = std::collections::BTreeSet::new();
    for a in -h..=h {
        for b in -h..=h {
            let c = -a - b;
            if c.abs() > h || num::integer::gcd(num::integer::gcd(a, b), c) != 1 {
                continue;
            }
            out.insert(canonical_direction([a, b, c]));
        }
    }
    out.into_iter().rev().collect()
}

fn canonical_direction(v: [i64; 3]) -> [i64; 3] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut best = v;
    for s in [1, -1] {
        for p in PERMS {
            best = best.max([s * v[p[0]], s * v[p[1]], s * v[p[2]]]);
        }
    }
    best
}

/// Conjugation-invariant label of a line of `sl3`: the nilpotency order for
/// nilpotent lines, otherwise `j = c0² / c1³` for the characteristic
/// polynomial `t³ + c1 t + c0`.
pub fn line_signature(l: &LieAlgebra, p: &SubspacePoint) -> Result<String> {
    if l.realization_size() != Some(3) || p.k() != 1 || p.ambient_dim() != l.dim() {
        return Err(Error::input("expected a line in a Lie algebra of 3x3 matrices"));
    }
    let y = l.realize(&p.rows()[0]);
    if y.is_nilpotent() {
        let order = (1..=3).find(|&k| y.pow(k).is_zero()).unwrap_or(3);
        return Ok(format!("nilpotent of order {order}"));
    }
    let cp = y.char_poly();
    if !cp.coeff(2).is_zero() {
        return Err(Error::input("element is not traceless"));
    }
    let (c1, c0) = (cp.coeff(1), cp.coeff(0));
    if c1.is_zero() {
        return Ok("j = inf".into());
    }
    Ok(format!("j = {}", rational::format(&(&c0 * &c0 / rational::pow(&c1, 3)))))
}

fn line(l: &LieAlgebra, m: &Matrix) -> Result<SubspacePoint> {
    SubspacePoint::from_rows(&[element(l, m)?], l.dim())
}

fn conjugators() -> Vec<(Matrix, Matrix)> {
    let mut rng = ChaCha8Rng::seed_from_u64(CONJUGATOR_SEED);
    (0..CONJUGATORS)
        .map(|_| {
            let mut lower = Matrix::identity(3);
            let mut upper = Matrix::identity(3);
            for i in 0..3 {
                for j in 0..i {
                    lower[(i, j)] = int(rng.gen_range(-2..=2));
                    upper[(j, i)] = int(rng.gen_range(-2..=2));
                }
            }
            let g = lower.mul(&upper);
            let inv = g.inverse().expect("unitriangular factors are invertible");
            (g, inv)
        })
        .collect()
}

fn conjugates(l: &LieAlgebra, p: &SubspacePoint, gs: &[(Matrix, Matrix)]) -> Result<Vec<SubspacePoint>> {
    let y = l.realize(&p.rows()[0]);
    gs.iter().map(|(g, inv)| line(l, &g.mul(&y).mul(inv))).collect()
}

fn nilpotent_component(
    l: &LieAlgebra,
    id: &str,
    m: &Matrix,
    order: usize,
    gs: &[(Matrix, Matrix)],
) -> Result<Component> {
    let rep = line(l, m)?;
    let dim = orbit_dimension_projective(&rep.rows()[0], l)?;
    let mut c = Component::new(
        id,
        ComponentKind::NilpotentOrbitClosure,
        rep.clone(),
        line_signature(l, &rep)?,
        dim,
        Locus::Nilpotent { order },
    );
    for q in conjugates(l, &rep, gs)? {
        c.add_sample(q);
    }
    Ok(c)
}

fn unit_sum(pairs: &[(usize, usize)]) -> Matrix {
    pairs.iter().fold(Matrix::zeros(3, 3), |acc, &(i, j)| acc.add(&Matrix::unit(3, i, j)))
}

/// Limits at infinity of `exp(tN)·x·exp(−tN)` for elementary and principal
/// nilpotent `N`; only nilpotent limits are kept.
fn boundary_limits(l: &LieAlgebra, rep: &SubspacePoint) -> Result<Vec<SubspacePoint>> {
    let paths: [&[(usize, usize)]; 8] =
        [&[(0, 1)], &[(0, 2)], &[(1, 2)], &[(1, 0)], &[(2, 0)], &[(2, 1)], &[(0, 1), (1, 2)], &[(1, 0), (2, 1)]];
    let mut out = Vec::new();
    for pairs in paths {
        let path = PolynomialPath::adjoint_orbit(l, &rep.rows(), &unit_sum(pairs))?;
        let limit = path.limit(&LimitPoint::Infinity)?;
        if l.realize(&limit.rows()[0]).is_nilpotent() && !out.contains(&limit) {
            out.push(limit);
        }
    }
    Ok(out)
}

fn semisimple_component(l: &LieAlgebra, dir: [i64; 3], gs: &[(Matrix, Matrix)]) -> Result<Component> {
    let eigenvalues: Vec<Rational> = dir.iter().map(|&e| int(e)).collect();
    let rep = line(l, &Matrix::diagonal(&eigenvalues))?;
    let dim = orbit_dimension_projective(&rep.rows()[0], l)?;
    let id = format!("semisimple({},{},{})", dir[0], dir[1], dir[2]);
    let mut c = Component::new(
        id,
        ComponentKind::SemisimpleOrbitClosure,
        rep.clone(),
        line_signature(l, &rep)?,
        dim,
        Locus::SemisimpleClosure { eigenvalues },
    );
    for q in conjugates(l, &rep, gs)? {
        c.add_sample(q);
    }
    let boundary = boundary_limits(l, &rep)?;
    if boundary.is_empty() {
        return Err(Error::precondition(format!("no nilpotent boundary point found for {}", c.id)));
    }
    for b in boundary {
        for q in conjugates(l, &b, gs)? {
            c.add_sample(q);
        }
        c.add_sample(b);
    }
    Ok(c)
}

/// Components: the minimal and regular nilpotent orbit closures and one
/// semisimple orbit closure per direction of [`semisimple_directions`],
/// glued identically along their common points.
pub fn assemble_sl3_slice(height: u32) -> Result<Bouquet> {
    if height == 0 {
        return Err(Error::input("height must be positive"));
    }
    let l = sl(3)?;
    let gs = conjugators();
    let mut comps = vec![
        nilpotent_component(&l, "nilpotent-minimal", &Matrix::unit(3, 0, 2), 2, &gs)?,
        nilpotent_component(&l, "nilpotent-regular", &unit_sum(&[(0, 1), (1, 2)]), 3, &gs)?,
    ];
    for dir in semisimple_directions(height) {
        comps.push(semisimple_component(&l, dir, &gs)?);
    }

    // every component also samples the points of the others it contains
    let all: Vec<SubspacePoint> = comps.iter().flat_map(|c| c.samples.clone()).collect();
    for c in &mut comps {
        for p in &all {
            if c.locus.contains(&l, p) {
                c.add_sample(p.clone());
            }
        }
    }

    let mut pattern = GluingPattern::new(l.clone());
    let ids: Vec<String> = comps.iter().map(|c| c.id.clone()).collect();
    for c in comps {
        pattern.add_component(c)?;
    }
    for (i, x) in ids.iter().enumerate() {
        for y in &ids[i + 1..] {
            let meets = pattern.component(x).unwrap().samples.iter().any(|p| pattern.in_component(y, p));
            if meets {
                pattern.glue_along_meet(x, y)?;
            }
        }
    }
    let report = validate_pattern(&pattern, 8, 0);
    if !report.passed() {
        return Err(Error::precondition(format!("assembled pattern fails its axioms:\n{report}")));
    }
    Bouquet::new(pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraicity::algebraic_hull;

    fn brute_force_classes(h: i64) -> usize {
        // lines through primitive integral diagonal points, grouped by
        // conjugacy: sorted multisets of ±(a, b, c)
        let mut seen: Vec<Vec<i64>> = Vec::new();
        for a in -h..=h {
            for b in -h..=h {
                let c = -a - b;
                if c.abs() > h || (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let g = [a, b, c].iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
                if g != 1 {
                    continue;
                }
                let mut s = vec![a, b, c];
                s.sort();
                let mut t: Vec<i64> = s.iter().map(|x| -x).collect();
                t.sort();
                let key = s.max(t);
                if !seen.contains(&key) {
                    seen.push(key);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn direction_counts_match_brute_force() {
        assert_eq!(semisimple_directions(1), vec![[1, 0, -1]]);
        assert_eq!(semisimple_directions(2), vec![[2, -1, -1], [1, 0, -1]]);
        for h in 1..=5 {
            assert_eq!(semisimple_directions(h as u32).len(), brute_force_classes(h), "height {h}");
        }
    }

    #[test]
    fn height_one_slice() {
        let b = assemble_sl3_slice(1).unwrap();
        let comps = b.components();
        let ids: Vec<&str> = comps.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["nilpotent-minimal", "nilpotent-regular", "semisimple(1,0,-1)"]);
        let dims: Vec<usize> = comps.iter().map(|c| c.dim).collect();
        assert_eq!(dims, [3, 5, 6]);
        let l = b.pattern().ambient().clone();
        for c in &comps {
            let h = c.representative.to_subalgebra(&l).unwrap();
            assert!(c.representative.is_lie_subalgebra(&l).unwrap());
            assert!(algebraic_hull(&h).unwrap().is_algebraic);
        }
        let s = &comps[2];
        assert!(s.samples.iter().any(|p| l
            .realize(&p.rows()[0])
            .char_poly()
            .coeffs()
            .iter()
            .rev()
            .skip(1)
            .all(|c| c.is_zero())));
    }

    #[test]
    fn shared_boundary_points_share_a_class() {
        let b = assemble_sl3_slice(2).unwrap();
        let l = b.pattern().ambient().clone();
        let e13 = line(&l, &Matrix::unit(3, 0, 2)).unwrap();
        let reps: Vec<_> = ["semisimple(1,0,-1)", "semisimple(2,-1,-1)", "nilpotent-regular", "nilpotent-minimal"]
            .iter()
            .map(|id| b.identify(id, &e13).unwrap())
            .collect();
        assert!(reps.iter().all(|r| *r == reps[0]));
        assert_eq!(reps[0].0, "nilpotent-minimal");
        let regular = line(&l, &unit_sum(&[(0, 1), (1, 2)])).unwrap();
        assert!(b.identify("semisimple(2,-1,-1)", &regular).is_err());
        assert_eq!(
            b.identify("semisimple(1,0,-1)", &regular).unwrap(),
            b.identify("nilpotent-regular", &regular).unwrap()
        );
    }

    #[test]
    fn signatures_are_invariant_on_samples() {
        let b = assemble_sl3_slice(2).unwrap();
        let l = b.pattern().ambient().clone();
        let mut sigs = Vec::new();
        for c in b.components() {
            sigs.push(c.signature.clone());
            for p in &c.samples {
                let sig = line_signature(&l, p).unwrap();
                if c.kind == ComponentKind::SemisimpleOrbitClosure && !sig.starts_with("nilpotent") {
                    assert_eq!(sig, c.signature);
                }
            }
        }
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 4);
    }

    #[test]
    fn gluing_only_along_nilpotent_lines() {
        let b = assemble_sl3_slice(2).unwrap();
        let p = b.pattern();
        let l = p.ambient();
        for ((x, y), _) in p.overlaps() {
            if x == y {
                continue;
            }
            for q in &p.component(x).unwrap().samples {
                if p.in_overlap(x, y, q) {
                    assert!(l.realize(&q.rows()[0]).is_nilpotent(), "{x} / {y}");
                }
            }
        }
    }

    #[test]
    fn family_fibers_land_in_components() {
        use crate::bouquet::locate_family;
        use crate::families::SubalgebraFamily;
        let b = assemble_sl3_slice(1).unwrap();
        let l = b.pattern().ambient().clone();
        let x = element(&l, &Matrix::diagonal(&[int(1), int(0), int(-1)])).unwrap();
        let path = PolynomialPath::adjoint_orbit(&l, &[x], &Matrix::unit(3, 0, 1)).unwrap();
        let samples: Vec<Rational> = (0..4).map(int).collect();
        let f = SubalgebraFamily::new(path, l, samples, vec![LimitPoint::Infinity]).unwrap();
        let located = locate_family(&b, &f).unwrap();
        for (at, ids) in &located[..4] {
            assert_eq!(ids, &["semisimple(1,0,-1)".to_string()], "{at}");
        }
        assert_eq!(located[4].1, ["nilpotent-minimal", "nilpotent-regular", "semisimple(1,0,-1)"]);
    }

    #[test]
    fn zero_height_is_rejected() {
        assert!(assemble_sl3_slice(0).is_err());
    }
}
