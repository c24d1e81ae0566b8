use g2daha::scalar::{QuadTower, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Sparse elements: a few random basis monomials with small rational coefficients.
fn tower() -> impl Strategy<Value = QuadTower> {
    prop::collection::vec((0usize..16, rational()), 0..4).prop_map(|terms| {
        terms.into_iter().fold(QuadTower::zero(), |acc, (mask, c)| {
            &acc + &QuadTower::basis(mask).scale(&c)
        })
    })
}

proptest! {
    #[test]
    fn addition_is_a_group(a in tower(), b in tower(), c in tower()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &QuadTower::zero(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in tower(), b in tower(), c in tower()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &QuadTower::one(), a);
    }

    #[test]
    fn distributivity(a in tower(), b in tower(), c in tower()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn nonzero_elements_are_invertible(a in tower()) {
        match a.inverse() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn conjugation_is_a_ring_automorphism(a in tower(), b in tower(), k in 0usize..4) {
        prop_assert_eq!((&a * &b).conjugate(k), &a.conjugate(k) * &b.conjugate(k));
        prop_assert_eq!((&a + &b).conjugate(k), &a.conjugate(k) + &b.conjugate(k));
        prop_assert_eq!(a.conjugate(k).conjugate(k), a);
    }

    #[test]
    fn complex_embedding_is_a_homomorphism(a in tower(), b in tower()) {
        let prod = (&a * &b).to_complex();
        let expect = a.to_complex() * b.to_complex();
        prop_assert!((prod - expect).norm() <= 1e-12 * (1.0 + expect.norm()));
        let sum = (&a + &b).to_complex();
        prop_assert!((sum - (a.to_complex() + b.to_complex())).norm() <= 1e-12 * (1.0 + sum.norm()));
    }

    #[test]
    fn rational_square_roots_square_back(r in rational()) {
        let r = &r * &r * Rational::from_integer(5.into());
        let s = QuadTower::sqrt_rational(&r).expect("5·q² has a root in the tower");
        prop_assert_eq!(&s * &s, QuadTower::rational(r));
    }
}
