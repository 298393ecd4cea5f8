use std::sync::Arc;

use liemod::algebraicity::{algebraic_hull, hull_from_generators};
use liemod::bouquet::{assemble_sl3_slice, locate_family, validate_pattern};
use liemod::exec::Execution;
use liemod::families::{flatness_proxy, rank_scan_with, semisimple_class_scan_with, InvariantValue, SubalgebraFamily};
use liemod::grassmann::{LimitPoint, PolynomialPath, SubspacePoint};
use liemod::integration::{group_axiom_sample_check_with, integrate_algebraic, tangent_space_at_identity};
use liemod::json;
use liemod::lie::builtins::{self, element, sl, span_of_matrices};
use liemod::lie::{levi_semisimple_class, LieAlgebra, SemisimpleClass};
use liemod::linalg::Matrix;
use liemod::rational::{frac, int};
use liemod::{Error, Rational};

fn e3(i: usize, j: usize) -> Matrix {
    Matrix::unit(3, i - 1, j - 1)
}

fn conjugated_sl2(l: &Arc<LieAlgebra>) -> SubalgebraFamily {
    let rows: Vec<Vec<Rational>> = [Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]), e3(1, 2), e3(2, 1)]
        .iter()
        .map(|m| element(l, m).unwrap())
        .collect();
    let path = PolynomialPath::adjoint_orbit(l, &rows, &e3(1, 3)).unwrap();
    let samples = vec![int(-1), frac(1, 3), int(1), int(2)];
    SubalgebraFamily::new(path, l.clone(), samples, vec![LimitPoint::Infinity, LimitPoint::Finite(int(0))]).unwrap()
}

#[test]
fn scans_agree_across_execution_modes() {
    let l = sl(3).unwrap();
    let f = conjugated_sl2(&l);
    let seq = semisimple_class_scan_with(&f, Execution::Sequential).unwrap();
    let par = semisimple_class_scan_with(&f, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.generic, InvariantValue::Class(SemisimpleClass::A1));
    assert!(seq.verdict);

    let borel = builtins::borel(&l).unwrap();
    let path = PolynomialPath::constant(borel.basis()).unwrap();
    let f = SubalgebraFamily::new(path, l.clone(), vec![int(0), int(1)], vec![LimitPoint::Infinity]).unwrap();
    assert_eq!(rank_scan_with(&f, Execution::Sequential).unwrap(), rank_scan_with(&f, Execution::Parallel).unwrap());

    let g = integrate_algebraic(&borel).unwrap();
    let a = group_axiom_sample_check_with(&g, 30, 11, Execution::Sequential).unwrap();
    let b = group_axiom_sample_check_with(&g, 30, 11, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert!(a.passed);
}

#[test]
fn limit_fibers_are_algebraic_and_flat() {
    let l = sl(3).unwrap();
    let f = conjugated_sl2(&l);
    assert!(flatness_proxy(&f));
    let limit = f.limit_fiber(&LimitPoint::Infinity).unwrap();
    assert_eq!(limit.dim(), 3);
    let hull = algebraic_hull(&limit).unwrap();
    assert!(hull.is_algebraic);
    assert_eq!(levi_semisimple_class(&limit).unwrap().class, SemisimpleClass::Zero);
    let g = integrate_algebraic(&limit).unwrap();
    assert_eq!(tangent_space_at_identity(&g).unwrap(), limit.point());
}

#[test]
fn hull_then_integrate() {
    let l = sl(3).unwrap();
    let x = element(&l, &Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]])).unwrap();
    let h = hull_from_generators(&l, &[x]).unwrap();
    assert!(!h.is_algebraic);
    assert_eq!(h.hull.dim(), 2);
    let g = integrate_algebraic(&h.hull).unwrap();
    assert_eq!(tangent_space_at_identity(&g).unwrap(), h.hull.point());
    // the input itself does not integrate
    let line = span_of_matrices(&l, &[Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -2]])]).unwrap();
    assert!(matches!(integrate_algebraic(&line), Err(Error::NotIntegrable { .. })));
}

#[test]
fn bouquet_survives_json_and_locates_families() {
    let b = assemble_sl3_slice(2).unwrap();
    let text = json::to_string(&json::bouquet(&b));
    let back = json::parse_bouquet(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(json::to_string(&json::bouquet(&back)), text);
    assert!(validate_pattern(back.pattern(), 6, 5).passed());

    let l = b.pattern().ambient().clone();
    let x = element(&l, &Matrix::from_i64(&[&[2, 0, 0], &[0, -1, 0], &[0, 0, -1]])).unwrap();
    let path = PolynomialPath::adjoint_orbit(&l, &[x], &e3(1, 2)).unwrap();
    let f = SubalgebraFamily::new(path, l.clone(), vec![int(1), int(5)], vec![LimitPoint::Infinity]).unwrap();
    let located = locate_family(&b, &f).unwrap();
    assert_eq!(located[0].1, ["semisimple(2,-1,-1)"]);
    let limit = &located[2];
    assert_eq!(limit.0, LimitPoint::Infinity);
    // a minimal nilpotent line lies in every orbit closure of the slice
    assert_eq!(limit.1, ["nilpotent-minimal", "nilpotent-regular", "semisimple(1,0,-1)", "semisimple(2,-1,-1)"]);
}

#[test]
fn shapes_are_checked_at_the_boundary() {
    let l = sl(2).unwrap();
    assert!(matches!(SubspacePoint::from_rows(&[vec![int(1), int(0)]], 3), Err(Error::DimensionMismatch { .. })));
    let dependent = vec![vec![int(1), int(0), int(0)], vec![int(2), int(0), int(0)]];
    assert!(matches!(SubspacePoint::from_rows(&dependent, 3), Err(Error::RankDeficient { .. })));
    let path = PolynomialPath::constant(&Matrix::from_i64(&[&[1, 0, 0]])).unwrap();
    assert!(SubalgebraFamily::new(path, l, vec![], vec![]).is_err());
}
