use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use liemod::algebraicity::{hull_from_generators, WeightVector};
use liemod::bouquet::{assemble_sl3_slice, Bouquet};
use liemod::families::InvariantValue;
use liemod::grassmann::SubspacePoint;
use liemod::integration::{exp_nilpotent, one_param_torus};
use liemod::lie::builtins::{gl, sl};
use liemod::lie::{LieAlgebra, SemisimpleClass};
use liemod::linalg::Matrix;
use liemod::rational::{frac, int};
use liemod::{Error, Rational};

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small(), n)
}

fn sl3() -> &'static Arc<LieAlgebra> {
    static L: OnceLock<Arc<LieAlgebra>> = OnceLock::new();
    L.get_or_init(|| sl(3).unwrap())
}

fn gl3() -> &'static Arc<LieAlgebra> {
    static L: OnceLock<Arc<LieAlgebra>> = OnceLock::new();
    L.get_or_init(|| gl(3).unwrap())
}

fn slice() -> &'static Bouquet {
    static B: OnceLock<Bouquet> = OnceLock::new();
    B.get_or_init(|| assemble_sl3_slice(2).unwrap())
}

fn add3(a: &[Rational], b: &[Rational], c: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).zip(c).map(|((x, y), z)| x + y + z).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jacobi_on_random_elements(x in vector(9), y in vector(9), z in vector(9)) {
        let l = gl3();
        let a = l.bracket(&x, &l.bracket(&y, &z).unwrap()).unwrap();
        let b = l.bracket(&y, &l.bracket(&z, &x).unwrap()).unwrap();
        let c = l.bracket(&z, &l.bracket(&x, &y).unwrap()).unwrap();
        prop_assert!(add3(&a, &b, &c).iter().all(|v| *v == int(0)));
    }

    #[test]
    fn killing_form_is_invariant(x in vector(8), y in vector(8), z in vector(8)) {
        let l = sl3();
        let left = l.killing_form(&l.bracket(&x, &y).unwrap(), &z).unwrap();
        let right = l.killing_form(&x, &l.bracket(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l.killing_form(&x, &y).unwrap(), l.killing_form(&y, &x).unwrap());
    }

    #[test]
    fn canonical_points_ignore_row_operations(
        rows in prop::collection::vec(vector(5), 2),
        mix in (small(), small(), small()),
    ) {
        let m = Matrix::from_rows(rows).unwrap();
        let Ok(p) = SubspacePoint::canonicalize(&m) else { return Ok(()) };
        prop_assert_eq!(&SubspacePoint::canonicalize(p.basis()).unwrap(), &p);
        // invertible mixing of the two rows
        let (a, b, c) = mix;
        let g = Matrix::from_rows(vec![vec![int(1), a.clone()], vec![b.clone(), &a * &b + int(1) + &c * &c]]).unwrap();
        prop_assume!(g.determinant() != int(0));
        prop_assert_eq!(SubspacePoint::canonicalize(&g.mul(&m)).unwrap(), p.clone());
        prop_assert_eq!(SubspacePoint::from_pluecker(5, 2, p.pluecker()).unwrap(), p);
    }

    #[test]
    fn hull_is_idempotent_and_contains_its_input(x in vector(8)) {
        prop_assume!(x.iter().any(|v| *v != int(0)));
        let l = sl3();
        match hull_from_generators(l, std::slice::from_ref(&x)) {
            Err(Error::Unsupported(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
            Ok(r) => {
                prop_assert!(r.hull.contains(&x));
                let again = hull_from_generators(l, &r.hull.basis_rows()).unwrap();
                prop_assert!(again.is_algebraic);
                prop_assert_eq!(again.hull.point(), r.hull.point());
            }
        }
    }

    #[test]
    fn exponentials_are_homomorphisms(u in vector(3), s in small(), t in small()) {
        let mut n = Matrix::zeros(3, 3);
        n[(0, 1)] = u[0].clone();
        n[(0, 2)] = u[1].clone();
        n[(1, 2)] = u[2].clone();
        let lhs = exp_nilpotent(&n, &s).unwrap().mul(&exp_nilpotent(&n, &t).unwrap());
        prop_assert_eq!(lhs, exp_nilpotent(&n, &(&s + &t)).unwrap());
    }

    #[test]
    fn tori_are_homomorphisms(w in prop::collection::vec(-3i64..=3, 3), s in small(), t in small()) {
        prop_assume!(s != int(0) && t != int(0));
        let Ok(w) = WeightVector::new(&w) else { return Ok(()) };
        let lhs = one_param_torus(&w, &s).unwrap().mul(&one_param_torus(&w, &t).unwrap());
        prop_assert_eq!(lhs, one_param_torus(&w, &(&s * &t)).unwrap());
    }

    #[test]
    fn identify_is_idempotent(index in any::<prop::sample::Index>()) {
        let b = slice();
        let (id, p) = index.get(b.registered()).clone();
        let rep = b.identify(&id, &p).unwrap();
        prop_assert_eq!(b.identify(&rep.0, &rep.1).unwrap(), rep.clone());
        let class = b.classes().into_iter().find(|c| c.contains(&(id.clone(), p.clone()))).unwrap();
        for (cid, cp) in class {
            prop_assert_eq!(b.identify(&cid, &cp).unwrap(), rep.clone());
        }
    }
}

#[test]
fn class_order_is_a_partial_order() {
    let all = SemisimpleClass::ALL;
    for a in all {
        assert!(a.leq(a));
        assert!(a.leq(SemisimpleClass::A2) || a == SemisimpleClass::A1xA1);
        assert!(SemisimpleClass::Zero.leq(a));
        for b in all {
            if a.leq(b) {
                assert!(a.dim() <= b.dim());
                if b.leq(a) {
                    assert_eq!(a, b);
                }
            }
            for c in all {
                if a.leq(b) && b.leq(c) {
                    assert!(a.leq(c), "{a} <= {b} <= {c}");
                }
            }
            let (va, vb) = (InvariantValue::Class(a), InvariantValue::Class(b));
            assert_eq!(va.leq(&vb), a.leq(b));
            assert!(!va.leq(&InvariantValue::Int(0)));
        }
    }
}
