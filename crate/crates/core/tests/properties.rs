use proptest::prelude::*;
use svir_core::{HalfInt, QuadRat, Scalar, SpecPoint, VarPoly, VarTag};

fn quadrat() -> impl Strategy<Value = QuadRat> {
    (-9i64..=9, 1i64..=5, -5i64..=5, 1i64..=4)
        .prop_map(|(a, b, c, d)| &QuadRat::from_ratio(a, b) + &(&QuadRat::from_ratio(c, d) * &QuadRat::sqrt2()))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((quadrat(), -4i64..=4, 0u32..=3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Scalar::zero(), |acc, (c, q, a)| {
            &acc + &(&(&Scalar::constant(c) * &Scalar::q_power(q)) * &Scalar::alpha().pow(a))
        })
    })
}

fn poly() -> impl Strategy<Value = VarPoly> {
    prop::collection::vec(scalar(), 0..5).prop_map(|cs| VarPoly::from_coeffs(VarTag::T, cs))
}

fn half_int() -> impl Strategy<Value = HalfInt> {
    (-12i64..=12).prop_map(HalfInt::from_twice)
}

fn point() -> impl Strategy<Value = SpecPoint> {
    (quadrat(), quadrat())
        .prop_filter("q0 must be nonzero", |(q, _)| !q.is_zero())
        .prop_map(|(q, a)| SpecPoint::new(q, a).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn quadrat_inverse(a in quadrat()) {
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn specialize_is_a_ring_homomorphism(a in scalar(), b in scalar(), p in point()) {
        let (sa, sb) = (a.specialize(&p).unwrap(), b.specialize(&p).unwrap());
        prop_assert_eq!((&a + &b).specialize(&p).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).specialize(&p).unwrap(), &sa * &sb);
    }

    #[test]
    fn shift_composes(p in poly(), a in half_int(), b in half_int()) {
        prop_assert_eq!(p.shift(a).shift(b), p.shift(a + b));
    }

    #[test]
    fn shift_is_linear_and_keeps_degree(p in poly(), r in poly(), c in scalar(), a in half_int()) {
        prop_assert_eq!((&p + &r).shift(a), &p.shift(a) + &r.shift(a));
        prop_assert_eq!(p.scale(&c).shift(a), p.shift(a).scale(&c));
        prop_assert_eq!(p.shift(a).degree(), p.degree());
    }

    #[test]
    fn mul_linear_commutes_with_shift(p in poly(), a in scalar(), b in scalar(), c in half_int()) {
        let lhs = p.shift(c).mul_linear(&a, &b);
        let rhs = p.mul_linear(&a, &(&b - &(&a * &c.to_scalar()))).shift(c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_linear_raises_degree(p in poly(), a in quadrat(), b in scalar()) {
        prop_assume!(!a.is_zero() && !p.is_zero());
        let out = p.mul_linear(&Scalar::constant(a), &b);
        prop_assert_eq!(out.degree(), p.degree().map(|d| d + 1));
    }
}
