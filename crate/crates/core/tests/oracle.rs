//! Library results checked against the independent reference code in
//! `common`.

mod common;

use common::{OGen, OModule, OVec, Q2};
use proptest::prelude::*;
use svir_core::algebra::{basis, bracket_generators, embed_sigma};
use svir_core::modules::act;
use svir_core::structure::cyclic_span;
use svir_core::{Component, Family, Generator, Kind, ModuleSpec, QuadRat, Scalar, SpecPoint, VarPoly, VarTag, Vector};

const R: Family = Family::Ramond;
const NS: Family = Family::NeveuSchwarz;

fn key(g: Generator) -> (bool, i64) {
    (g.kind() == Kind::G, g.index().twice())
}

fn ogen(g: Generator) -> OGen {
    match (g.kind(), g.family()) {
        (Kind::L, _) => OGen::L(g.index().to_int().unwrap()),
        // Ramond G indices are plain integers in the oracle.
        (Kind::G, Family::Ramond) => OGen::G(g.index().to_int().unwrap()),
        (Kind::G, Family::NeveuSchwarz) => OGen::G(g.index().twice()),
    }
}

#[test]
fn brackets_match_structure_constants() {
    for family in Family::ALL {
        let gens = basis(family, 3);
        for &a in &gens {
            for &b in &gens {
                let lib = common::elem_from_library(&bracket_generators(a, b));
                assert_eq!(lib, common::bracket_basis(key(a), key(b)), "[{a}, {b}]");
            }
        }
    }
}

#[test]
fn oracle_jacobi_vanishes_at_window_3() {
    for family in Family::ALL {
        let keys: Vec<_> = basis(family, 3).into_iter().map(key).collect();
        for &a in &keys {
            for &b in &keys {
                for &c in &keys {
                    assert!(common::jacobi(a, b, c).is_empty(), "{a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

#[test]
fn jacobi_of_l1_l2_l3() {
    assert!(common::jacobi((false, 2), (false, 4), (false, 6)).is_empty());
}

#[test]
fn sigma_of_g_half_squared() {
    let g = Generator::ns_g(1);
    let lhs = embed_sigma(&bracket_generators(g, g)).unwrap();
    let sg = common::elem_from_library(&embed_sigma(&g.to_element()).unwrap());
    assert_eq!(common::elem_from_library(&lhs), common::bracket(&sg, &sg));
    assert_eq!(common::elem_from_library(&lhs), common::basis_elem((false, 4)));
}

fn point(q: QuadRat, a: QuadRat) -> SpecPoint {
    SpecPoint::new(q, a).unwrap()
}

fn oracle_for(spec_family: Family, restricted: bool, p: &SpecPoint) -> OModule {
    let q0 = common::q2_from_library(p.q0());
    let alpha = common::q2_from_library(p.alpha0());
    match (spec_family, restricted) {
        (Family::Ramond, false) => OModule::Ramond { lambda: &q0 * &q0, alpha },
        (Family::Ramond, true) => OModule::Restricted { lambda: &q0 * &q0, alpha },
        _ => OModule::Ns { q0, alpha },
    }
}

#[test]
fn restricted_l1_on_one() {
    // ½·q⁴·(t+2α), read off at several points and compared with ½·L_2 in the oracle.
    let spec = ModuleSpec::symbolic(R).restricted().unwrap();
    let out = act(Generator::l(NS, 1), &Vector::one(R), &spec).unwrap();
    let q4 = Scalar::q_power(4);
    let expected = VarPoly::from_coeffs(VarTag::T, vec![&q4 * &Scalar::alpha(), q4.scale(&QuadRat::from_ratio(1, 2))]);
    assert_eq!(out, Vector::ramond(expected, VarPoly::zero(VarTag::T)).unwrap());
    for p in [point(QuadRat::from_int(2), QuadRat::from_int(3)), point(QuadRat::sqrt2(), QuadRat::from_ratio(-1, 2))] {
        let oracle = oracle_for(R, false, &p).act(OGen::L(2), &OVec::monomial(false, 0));
        let half = Q2::ratio(1, 2);
        let oracle = OVec { even: common::scale(&oracle.even, &half), odd: common::scale(&oracle.odd, &half) };
        assert_eq!(common::from_library(&out.specialize(&p).unwrap()), oracle);
    }
}

#[test]
fn g1_gm1_instance_on_t() {
    let p = point(QuadRat::from_int(3), QuadRat::from_ratio(2, 5));
    let m = oracle_for(R, false, &p);
    let t = OVec::monomial(false, 1);
    let a = m.act(OGen::G(1), &m.act(OGen::G(-1), &t));
    let b = m.act(OGen::G(-1), &m.act(OGen::G(1), &t));
    let sum = OVec { even: common::add(&a.even, &b.even), odd: common::add(&a.odd, &b.odd) };
    let two_t2 = OVec { even: vec![Q2::zero(), Q2::zero(), Q2::int(2)], odd: vec![] };
    assert_eq!(sum, two_t2);
    let spec = ModuleSpec::specialized(R, &p);
    let v = Vector::monomial(R, Component::Even, 1);
    let lib = act(Generator::ramond_g(1), &act(Generator::ramond_g(-1), &v, &spec).unwrap(), &spec).unwrap();
    let lib2 = act(Generator::ramond_g(-1), &act(Generator::ramond_g(1), &v, &spec).unwrap(), &spec).unwrap();
    assert_eq!(common::from_library(&lib.try_add(&lib2).unwrap()), two_t2);
}

#[test]
fn l3_on_one_at_alpha_zero() {
    let spec = ModuleSpec::symbolic(R).with_alpha(Scalar::zero());
    let out = act(Generator::l(R, 3), &Vector::one(R), &spec).unwrap();
    let p = point(QuadRat::from_int(2), QuadRat::zero());
    let oracle = oracle_for(R, false, &p).act(OGen::L(3), &OVec::monomial(false, 0));
    assert_eq!(oracle.even, vec![Q2::zero(), Q2::int(64)]);
    assert_eq!(common::from_library(&out.specialize(&p).unwrap()), oracle);
}

fn reaches_one(family: Family, restricted: bool, alpha: i64, words: usize) -> (bool, bool) {
    let p = point(QuadRat::one(), QuadRat::from_int(alpha));
    let spec = ModuleSpec::specialized(family, &p);
    let spec = if restricted { spec.restricted().unwrap() } else { spec };
    let seed = Vector::monomial(family, Component::Even, 1);
    let lib = cyclic_span(&seed, &spec, 2, words, 8).unwrap().contains_one();
    let (span, _) = common::level_span(&oracle_for(family, restricted, &p), &common::from_library(&seed), 2, words, 8);
    (lib, span.contains(&OVec::monomial(false, 0).coords(8)))
}

#[test]
fn span_examples_agree_with_oracle() {
    assert_eq!(reaches_one(R, false, 1, 4), (true, true));
    assert_eq!(reaches_one(R, true, 1, 6), (true, true));
    assert_eq!(reaches_one(R, false, 0, 8), (false, false));
    assert_eq!(reaches_one(NS, false, 0, 8), (false, false));
}

fn quadrat() -> impl Strategy<Value = QuadRat> {
    (-4i64..=4, 1i64..=3, -2i64..=2)
        .prop_map(|(a, b, c)| &QuadRat::from_ratio(a, b) + &(&QuadRat::from_int(c) * &QuadRat::sqrt2()))
}

fn spec_point() -> impl Strategy<Value = SpecPoint> {
    (quadrat(), quadrat()).prop_filter("q0 != 0", |(q, _)| !q.is_zero()).prop_map(|(q, a)| point(q, a))
}

fn vector(family: Family) -> impl Strategy<Value = Vector> {
    let (e, o) = svir_core::modules::component_vars(family);
    let coeffs = || prop::collection::vec(quadrat().prop_map(Scalar::constant), 0..4);
    (coeffs(), coeffs())
        .prop_map(move |(a, b)| Vector::new(family, VarPoly::from_coeffs(e, a), VarPoly::from_coeffs(o, b)).unwrap())
}

fn generator(ns: bool) -> impl Strategy<Value = Generator> {
    (any::<bool>(), -3i64..=3).prop_map(move |(is_l, k)| match (is_l, ns) {
        (true, false) => Generator::l(R, k),
        (true, true) => Generator::l(NS, k),
        (false, false) => Generator::ramond_g(k),
        (false, true) => Generator::ns_g(2 * k + 1),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ramond_action_matches(p in spec_point(), v in vector(R), g in generator(false)) {
        let spec = ModuleSpec::specialized(R, &p);
        let lib = act(g, &v, &spec).unwrap();
        prop_assert_eq!(common::from_library(&lib), oracle_for(R, false, &p).act(ogen(g), &common::from_library(&v)));
    }

    #[test]
    fn ns_action_matches(p in spec_point(), v in vector(NS), g in generator(true)) {
        let spec = ModuleSpec::specialized(NS, &p);
        let lib = act(g, &v, &spec).unwrap();
        prop_assert_eq!(common::from_library(&lib), oracle_for(NS, false, &p).act(ogen(g), &common::from_library(&v)));
    }

    #[test]
    fn restricted_action_matches(p in spec_point(), v in vector(R), g in generator(true)) {
        let spec = ModuleSpec::specialized(R, &p).restricted().unwrap();
        let lib = act(g, &v, &spec).unwrap();
        prop_assert_eq!(common::from_library(&lib), oracle_for(R, true, &p).act(ogen(g), &common::from_library(&v)));
    }
}
