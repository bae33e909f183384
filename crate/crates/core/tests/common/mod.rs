//! Independent reference computations for the integration tests.
//!
//! Everything here works on dense coefficient vectors over its own ℚ(√2)
//! type at specialized parameters. Polynomial shifts use the binomial
//! expansion, spans use plain Gauss-Jordan elimination, and the action
//! formulas are transcribed separately from the library.

#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// a + b√2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q2 {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Q2 {
    pub fn int(n: i64) -> Q2 {
        Q2::ratio(n, 1)
    }

    pub fn ratio(n: i64, d: i64) -> Q2 {
        Q2 { a: rat(n, d), b: BigRational::zero() }
    }

    pub fn root2() -> Q2 {
        Q2 { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn zero() -> Q2 {
        Q2::int(0)
    }

    pub fn one() -> Q2 {
        Q2::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Q2 {
        // (a − b√2)/(a² − 2b²)
        let n = &self.a * &self.a - rat(2, 1) * &self.b * &self.b;
        assert!(!n.is_zero(), "inverting zero");
        Q2 { a: &self.a / &n, b: -(&self.b / &n) }
    }

    pub fn powi(&self, e: i64) -> Q2 {
        let base = if e < 0 { self.inv() } else { self.clone() };
        (0..e.abs()).fold(Q2::one(), |acc, _| &acc * &base)
    }

    /// Parses `n`, `n/d`, `w`, `-w`, or `n*w`.
    pub fn parse(s: &str) -> Q2 {
        let s = s.trim();
        if let Some(rest) = s.strip_suffix("*w") {
            return &Q2::parse(rest) * &Q2::root2();
        }
        match s {
            "w" => return Q2::root2(),
            "-w" => return -&Q2::root2(),
            _ => {}
        }
        match s.split_once('/') {
            Some((n, d)) => Q2::ratio(n.parse().unwrap(), d.parse().unwrap()),
            None => Q2::int(s.parse().unwrap()),
        }
    }

    /// Text in the library's scalar grammar, for comparisons.
    pub fn to_grammar(&self) -> String {
        let fmt_r = |r: &BigRational| {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => fmt_r(&self.a),
            (true, false) => format!("({})*w", fmt_r(&self.b)),
            (false, false) => format!("{}+({})*w", fmt_r(&self.a), fmt_r(&self.b)),
        }
    }
}

impl<'a> Add<&'a Q2> for &'a Q2 {
    type Output = Q2;
    fn add(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a Q2> for &'a Q2 {
    type Output = Q2;
    fn sub(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a Q2> for &'a Q2 {
    type Output = Q2;
    fn mul(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a * &o.a + rat(2, 1) * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2 { a: -&self.a, b: -&self.b }
    }
}

/// Dense polynomial, lowest degree first.
pub type Poly = Vec<Q2>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Q2::is_zero) {
        p.pop();
    }
    p
}

fn binom(n: usize, k: usize) -> Q2 {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q2 { a: BigRational::from_integer(r), b: BigRational::zero() }
}

/// p(v + c) by the binomial theorem.
pub fn shift(p: &Poly, c: &Q2) -> Poly {
    let mut out = vec![Q2::zero(); p.len()];
    for (k, pk) in p.iter().enumerate() {
        for (j, slot) in out.iter_mut().enumerate().take(k + 1) {
            let term = &(&binom(k, j) * &c.powi((k - j) as i64)) * pk;
            *slot = &*slot + &term;
        }
    }
    trim(out)
}

/// (v + b)·p.
pub fn times_linear(p: &Poly, b: &Q2) -> Poly {
    let mut out = vec![Q2::zero(); p.len() + 1];
    for (k, pk) in p.iter().enumerate() {
        out[k + 1] = &out[k + 1] + pk;
        out[k] = &out[k] + &(b * pk);
    }
    trim(out)
}

pub fn scale(p: &Poly, c: &Q2) -> Poly {
    trim(p.iter().map(|x| x * c).collect())
}

/// (even, odd) coefficient lists. For the Ramond carrier the odd list holds
/// g in x·g(x²); for the Neveu-Schwarz carrier it holds g(y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OVec {
    pub even: Poly,
    pub odd: Poly,
}

impl OVec {
    pub fn monomial(odd: bool, k: usize) -> OVec {
        let mut p = vec![Q2::zero(); k + 1];
        p[k] = Q2::one();
        if odd {
            OVec { even: vec![], odd: p }
        } else {
            OVec { even: p, odd: vec![] }
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.even.len().max(self.odd.len()).checked_sub(1)
    }

    /// Coordinates (even_0, odd_0, even_1, odd_1, …) up to `max_deg`.
    pub fn coords(&self, max_deg: usize) -> Vec<Q2> {
        let mut out = vec![Q2::zero(); 2 * (max_deg + 1)];
        for (k, c) in self.even.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        for (k, c) in self.odd.iter().enumerate() {
            out[2 * k + 1] = c.clone();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OGen {
    L(i64),
    /// G with doubled index.
    G(i64),
}

impl OGen {
    pub fn odd(self) -> bool {
        matches!(self, OGen::G(_))
    }
}

/// Generators of one family with |index| ≤ window.
pub fn generators(ns: bool, window: i64) -> Vec<OGen> {
    let mut out: Vec<OGen> = (-window..=window).map(OGen::L).collect();
    if ns {
        out.extend((-2 * window..=2 * window).filter(|t| t % 2 != 0).map(OGen::G));
    } else {
        out.extend((-window..=window).map(OGen::G));
    }
    out
}

#[derive(Clone, Debug)]
pub enum OModule {
    /// Ω_R(λ0, α0).
    Ramond { lambda: Q2, alpha: Q2 },
    /// Ω_NS(q0², α0).
    Ns { q0: Q2, alpha: Q2 },
    /// Ω_R(λ0, α0) seen as a Neveu-Schwarz module through
    /// L_m ↦ ½L_{2m}, G_r ↦ (√2/2)G_{2r}.
    Restricted { lambda: Q2, alpha: Q2 },
}

impl OModule {
    pub fn ns_generators(&self) -> bool {
        !matches!(self, OModule::Ramond { .. })
    }

    pub fn act(&self, g: OGen, v: &OVec) -> OVec {
        match self {
            OModule::Ramond { lambda, alpha } => ramond(lambda, alpha, g, v),
            OModule::Ns { q0, alpha } => ns(q0, alpha, g, v),
            OModule::Restricted { lambda, alpha } => match g {
                OGen::L(m) => {
                    let w = ramond(lambda, alpha, OGen::L(2 * m), v);
                    OVec { even: scale(&w.even, &Q2::ratio(1, 2)), odd: scale(&w.odd, &Q2::ratio(1, 2)) }
                }
                OGen::G(t) => {
                    let c = &Q2::root2() * &Q2::ratio(1, 2);
                    let w = ramond(lambda, alpha, OGen::G(t), v);
                    OVec { even: scale(&w.even, &c), odd: scale(&w.odd, &c) }
                }
            },
        }
    }
}

pub fn add(p: &Poly, q: &Poly) -> Poly {
    let n = p.len().max(q.len());
    let z = Q2::zero();
    trim((0..n).map(|k| p.get(k).unwrap_or(&z) + q.get(k).unwrap_or(&z)).collect())
}

/// In the Ramond oracle `G(t)` carries the plain integer index `t`.
fn ramond(lambda: &Q2, alpha: &Q2, g: OGen, v: &OVec) -> OVec {
    match g {
        OGen::L(m) => {
            let lm = lambda.powi(m);
            let mq = Q2::int(m);
            let even = times_linear(&shift(&v.even, &mq), &(&mq * alpha));
            let odd = times_linear(&shift(&v.odd, &mq), &(&(&mq * alpha) + &Q2::ratio(m, 2)));
            OVec { even: scale(&even, &lm), odd: scale(&odd, &lm) }
        }
        OGen::G(m) => {
            let lm = lambda.powi(m);
            let mq = Q2::int(m);
            // G_m f = λ^m x f(t+m);  G_m x g = λ^m (t+2mα) g(t+m)
            let odd = shift(&v.even, &mq);
            let even = times_linear(&shift(&v.odd, &mq), &(&Q2::int(2 * m) * alpha));
            OVec { even: scale(&even, &lm), odd: scale(&odd, &lm) }
        }
    }
}

fn ns(q0: &Q2, alpha: &Q2, g: OGen, v: &OVec) -> OVec {
    match g {
        OGen::L(m) => {
            let lm = q0.powi(2 * m);
            let mq = Q2::int(m);
            let even = times_linear(&shift(&v.even, &mq), &(&mq * alpha));
            let odd = times_linear(&shift(&v.odd, &mq), &(&mq * &(alpha + &Q2::ratio(1, 2))));
            OVec { even: scale(&even, &lm), odd: scale(&odd, &lm) }
        }
        OGen::G(t) => {
            let r = Q2::ratio(t, 2);
            // G_r f(x) = λ^{r−½} f(y+r);  G_r g(y) = λ^{r+½} (x+2rα) g(x+r)
            let odd = scale(&shift(&v.even, &r), &q0.powi(t - 1));
            let even = scale(&times_linear(&shift(&v.odd, &r), &(&Q2::int(t) * alpha)), &q0.powi(t + 1));
            OVec { even, odd }
        }
    }
}

/// Gauss-Jordan echelon basis of a row span.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pub rows: Vec<(usize, Vec<Q2>)>,
}

impl Echelon {
    pub fn reduce(&self, v: &[Q2]) -> Vec<Q2> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: &[Q2]) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        let v: Vec<Q2> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&f * r);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[Q2]) -> bool {
        self.reduce(v).iter().all(Q2::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Q2>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![Q2::zero(); ncols];
                x[free] = Q2::one();
                for (p, row) in &self.rows {
                    x[*p] = -&row[free];
                }
                x
            })
            .collect()
    }
}

/// Level-by-level span: level k+1 holds the images of level k under every
/// generator that are new to the span; `levels` rounds, images of degree
/// above `max_deg` dropped.
pub fn level_span(m: &OModule, seed: &OVec, window: i64, levels: usize, max_deg: usize) -> (Echelon, Vec<OVec>) {
    let gens = generators(m.ns_generators(), window);
    let mut span = Echelon::default();
    let mut members = vec![seed.clone()];
    span.insert(&seed.coords(max_deg));
    let mut frontier = vec![seed.clone()];
    for _ in 0..levels {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &gens {
                let w = m.act(*g, v);
                if w.degree().is_none() || w.degree().is_some_and(|d| d > max_deg) {
                    continue;
                }
                if span.insert(&w.coords(max_deg)) {
                    next.push(w.clone());
                    members.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    (span, members)
}

/// Dimension of the space of parity-homogeneous intertwiners between the
/// degree ≤ `max_deg` truncations, plus a basis of each, as matrices
/// `x[u][c]` (image of domain coordinate u, codomain coordinate c).
pub fn intertwiners(a: &OModule, b: &OModule, window: i64, max_deg: usize) -> Vec<Vec<Vec<Q2>>> {
    let n = 2 * (max_deg + 1);
    let gens = generators(a.ns_generators(), window);
    let parity = |coord: usize| coord % 2 == 1;
    let mut out = Vec::new();
    for odd_map in [false, true] {
        // Unknowns: all n×n entries; wrong-parity entries are pinned to 0.
        let idx = |u: usize, c: usize| u * n + c;
        let total = n * n;
        let mut sys = Echelon::default();
        for u in 0..n {
            for c in 0..n {
                if parity(u) ^ odd_map != parity(c) {
                    let mut row = vec![Q2::zero(); total];
                    row[idx(u, c)] = Q2::one();
                    sys.insert(&row);
                }
            }
        }
        for g in &gens {
            let sign = if odd_map && g.odd() { Q2::int(-1) } else { Q2::one() };
            for u in 0..n {
                let eu = OVec::monomial(parity(u), u / 2);
                let gu = a.act(*g, &eu);
                if gu.degree().is_some_and(|d| d > max_deg) {
                    continue;
                }
                let gu = gu.coords(max_deg);
                // Images g·e_c in B, one degree of headroom.
                let gb: Vec<Vec<Q2>> =
                    (0..n).map(|c| b.act(*g, &OVec::monomial(parity(c), c / 2)).coords(max_deg + 1)).collect();
                for target in 0..n + 2 {
                    let mut row = vec![Q2::zero(); total];
                    if target < n {
                        for (u2, coef) in gu.iter().enumerate() {
                            row[idx(u2, target)] = &row[idx(u2, target)] + coef;
                        }
                    }
                    for (c, img) in gb.iter().enumerate() {
                        row[idx(u, c)] = &row[idx(u, c)] - &(&sign * &img[target]);
                    }
                    sys.insert(&row);
                }
            }
        }
        for sol in sys.nullspace(total) {
            out.push((0..n).map(|u| sol[u * n..(u + 1) * n].to_vec()).collect());
        }
    }
    out
}

/// The matrix of Φ: Ω_NS(q0², α) → Ω_R(q0, α) restricted, as `x[u][c]`.
pub fn big_phi_matrix(q0: &Q2, max_deg: usize) -> Vec<Vec<Q2>> {
    let n = 2 * (max_deg + 1);
    let half = Q2::ratio(1, 2);
    let odd_factor = &(q0 * &Q2::root2()) * &half;
    (0..n)
        .map(|u| {
            let k = u / 2;
            let mut row = vec![Q2::zero(); n];
            // x^k ↦ (t/2)^k;  y^k ↦ (q0·√2/2)·x·(t/2)^k
            let c = half.powi(k as i64);
            row[u] = if u % 2 == 0 { c } else { &odd_factor * &c };
            row
        })
        .collect()
}

/// Whether two matrices agree up to one nonzero factor.
pub fn proportional(x: &[Vec<Q2>], y: &[Vec<Q2>]) -> bool {
    let mut ratio: Option<Q2> = None;
    for (rx, ry) in x.iter().zip(y) {
        for (a, b) in rx.iter().zip(ry) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = a * &b.inv();
                    if ratio.as_ref().is_some_and(|r0| *r0 != r) {
                        return false;
                    }
                    ratio = Some(r);
                }
                _ => return false,
            }
        }
    }
    ratio.is_some()
}

pub fn q2_from_library(s: &svir_core::QuadRat) -> Q2 {
    Q2 { a: s.rational_part().clone(), b: s.sqrt2_part().clone() }
}

pub fn library_point(q0: &str, alpha0: &str) -> svir_core::SpecPoint {
    let c = |s: &str| svir_core::parse::parse_constant(s).unwrap();
    svir_core::SpecPoint::new(c(q0), c(alpha0)).unwrap()
}

/// A specialized library vector as oracle coefficients.
pub fn from_library(v: &svir_core::Vector) -> OVec {
    use svir_core::Component;
    let q2 = |c: Component| {
        v.component(c)
            .coeffs()
            .iter()
            .map(|s| q2_from_library(&s.as_constant().expect("specialized coefficient")))
            .collect()
    };
    OVec { even: q2(Component::Even), odd: q2(Component::Odd) }
}

/// Oracle Lie superalgebra element: (is_g, doubled index) → coefficient.
pub type OElem = std::collections::BTreeMap<(bool, i64), Q2>;

fn add_into(acc: &mut OElem, key: (bool, i64), c: Q2) {
    let v = acc.get(&key).map_or(c.clone(), |x| x + &c);
    if v.is_zero() {
        acc.remove(&key);
    } else {
        acc.insert(key, v);
    }
}

/// Structure constants on basis pairs, indices doubled.
pub fn bracket_basis(a: (bool, i64), b: (bool, i64)) -> OElem {
    let mut out = OElem::new();
    let (ta, tb) = (a.1, b.1);
    match (a.0, b.0) {
        // (m − n) L_{m+n}
        (false, false) => add_into(&mut out, (false, ta + tb), Q2::ratio(ta - tb, 2)),
        // (m/2 − r) G_{m+r}
        (false, true) => add_into(&mut out, (true, ta + tb), Q2::ratio(ta - 2 * tb, 4)),
        (true, false) => add_into(&mut out, (true, ta + tb), Q2::ratio(2 * ta - tb, 4)),
        // 2 L_{r+s}
        (true, true) => add_into(&mut out, (false, ta + tb), Q2::int(2)),
    }
    out
}

pub fn bracket(x: &OElem, y: &OElem) -> OElem {
    let mut out = OElem::new();
    for (ka, ca) in x {
        for (kb, cb) in y {
            for (k, c) in bracket_basis(*ka, *kb) {
                add_into(&mut out, k, &(ca * cb) * &c);
            }
        }
    }
    out
}

pub fn basis_elem(key: (bool, i64)) -> OElem {
    OElem::from([(key, Q2::one())])
}

/// The graded Jacobi sum of three homogeneous basis elements.
pub fn jacobi(a: (bool, i64), b: (bool, i64), c: (bool, i64)) -> OElem {
    let sign = |x: bool, y: bool| if x && y { Q2::int(-1) } else { Q2::one() };
    let (ea, eb, ec) = (basis_elem(a), basis_elem(b), basis_elem(c));
    let mut out = OElem::new();
    for (s, outer, inner) in [
        (sign(a.0, c.0), &ea, bracket(&eb, &ec)),
        (sign(b.0, a.0), &eb, bracket(&ec, &ea)),
        (sign(c.0, b.0), &ec, bracket(&ea, &eb)),
    ] {
        for (k, v) in bracket(outer, &inner) {
            add_into(&mut out, k, &s * &v);
        }
    }
    out
}

pub fn elem_from_library(e: &svir_core::AlgebraElement) -> OElem {
    let mut out = OElem::new();
    for (g, c) in e.terms() {
        let key = (g.kind() == svir_core::Kind::G, g.index().twice());
        add_into(&mut out, key, q2_from_library(&c.as_constant().expect("numeric coefficient")));
    }
    out
}
