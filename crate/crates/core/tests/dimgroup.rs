mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use shiftdim::dimgroup::{
    apply_r_delta, apply_rt_g, delta_membership, delta_order_unit, eventual_image, order_unit, ConeMembership,
    DimClass, EssentialMatrix,
};
use shiftdim::linalg::to_rat_vec;
use shiftdim::Error;

use common::{elementary, essential, int_vector};

fn class_strategy() -> impl Strategy<Value = (EssentialMatrix, DimClass, DimClass)> {
    essential(4, 3).prop_flat_map(|a| {
        let n = a.size();
        (Just(a), int_vector(n, -3..=3), 0..=3u32, int_vector(n, -3..=3), 0..=3u32).prop_map(|(a, v, k, w, l)| {
            let x = DimClass::new(&a, v, k).unwrap();
            let y = DimClass::new(&a, w, l).unwrap();
            (a, x, y)
        })
    })
}

/// `[v, k] = [w, l]` iff `(A^t)^(m-k) v = (A^t)^(m-l) w` for some `m`.
fn brute_equal(a: &EssentialMatrix, x: &DimClass, y: &DimClass) -> bool {
    let (k, l) = (x.level(), y.level());
    (k.max(l)..=k.max(l) + 20).any(|m| {
        a.transpose_pow(m - k).mul_vec(x.vector()).unwrap() == a.transpose_pow(m - l).mul_vec(y.vector()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn equality_matches_brute_force((a, x, y) in class_strategy()) {
        prop_assert_eq!(x.equal(&y).unwrap(), brute_equal(&a, &x, &y));
        prop_assert_eq!(x.equal(&y).unwrap(), y.equal(&x).unwrap());
    }

    #[test]
    fn delayed_representatives_are_equal((a, x, _) in class_strategy(), j in 0..4u32) {
        let moved = DimClass::new(&a, a.transpose_pow(j).mul_vec(x.vector()).unwrap(), x.level() + j).unwrap();
        prop_assert!(x.equal(&moved).unwrap());
        prop_assert!(x.delay(j).equal(&x.x_action(-i64::from(j))).unwrap());
    }

    #[test]
    fn group_laws((_a, x, y) in class_strategy()) {
        let sum = x.add(&y).unwrap();
        prop_assert!(sum.equal(&y.add(&x).unwrap()).unwrap());
        prop_assert!(x.add(&x.neg()).unwrap().equal(&DimClass::zero(x.matrix())).unwrap());
        prop_assert!(sum.add(&y.neg()).unwrap().equal(&x).unwrap());
    }

    #[test]
    fn x_action_is_invertible_and_additive((_a, x, y) in class_strategy(), p in -3i64..=3) {
        prop_assert!(x.x_action(p).x_action(-p).equal(&x).unwrap());
        let lhs = x.add(&y).unwrap().x_action(p);
        let rhs = x.x_action(p).add(&y.x_action(p)).unwrap();
        prop_assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn cone_is_preserved_by_x((_a, x, _) in class_strategy()) {
        if let ConeMembership::InCone(_) = x.in_positive_cone(x.default_cone_bound()) {
            for p in [-1i64, 1] {
                let moved = x.x_action(p);
                prop_assert!(matches!(moved.in_positive_cone(moved.default_cone_bound() + 1), ConeMembership::InCone(_)));
            }
        }
    }

    #[test]
    fn units(a in essential(4, 3)) {
        let unit = delta_order_unit(&a);
        prop_assert!(unit.psi().equal(&order_unit(&a)).unwrap());
        prop_assert!(eventual_image(&a).contains(unit.vector()));
        prop_assert!(unit.certificate() <= a.size() as u32);
    }

    #[test]
    fn eventual_image_contains_power_rows(a in essential(4, 3), u in int_vector(4, -3..=3)) {
        let n = a.size();
        let space = eventual_image(&a);
        let v = a.matrix().pow(n as u32).unwrap().vec_mul(&u[..n]).unwrap();
        prop_assert!(space.contains(&to_rat_vec(&v)));
        prop_assert!(space.dimension() <= n);
        prop_assert_eq!(space.dimension(), space.basis().len());
    }

    #[test]
    fn delta_membership_and_psi(a in essential(3, 3), u in int_vector(3, -3..=3), d in 1i64..=4) {
        let n = a.size();
        let v = a.matrix().pow(n as u32).unwrap().vec_mul(&u[..n]).unwrap();
        let scaled: Vec<BigRational> = to_rat_vec(&v).into_iter().map(|x| x / BigRational::from(BigInt::from(d))).collect();
        match delta_membership(&scaled, &a) {
            Ok(elt) => {
                // psi(x d) = x psi(d), and psi(d) has the integral representative v A^l.
                let moved = elt.x_action(1);
                prop_assert!(moved.psi().equal(&elt.psi().x_action(1)).unwrap());
                prop_assert_eq!(elt.psi().level(), elt.certificate());
            }
            Err(Error::NoIntegralityCertificate { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn psi_naturality((a, b, r, _s) in elementary(3, 2), u in int_vector(3, -3..=3), d in 1i64..=3) {
        let n = a.size();
        let v = a.matrix().pow(n as u32).unwrap().vec_mul(&u[..n]).unwrap();
        let scaled: Vec<BigRational> = to_rat_vec(&v).into_iter().map(|x| x / BigRational::from(BigInt::from(d))).collect();
        if let Ok(elt) = delta_membership(&scaled, &a) {
            let left = apply_r_delta(&elt, &r, &b).unwrap().psi();
            let right = apply_rt_g(&elt.psi(), &r, &b).unwrap();
            prop_assert!(left.equal(&right).unwrap());
        }
    }
}

#[test]
fn nonmembers_are_rejected() {
    let a = EssentialMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
    let v = to_rat_vec(&[BigInt::from(1), BigInt::from(0)]);
    assert_eq!(delta_membership(&v, &a).unwrap_err(), Error::NotInEventualImage);
}
