//! Exact coefficient arithmetic.
//!
//! [`QuadRat`] is an element `a + b·√2` of the quadratic field ℚ(√2), and
//! [`Scalar`] is an element of the ring ℚ(√2)[α][q, q⁻¹], kept in a sparse
//! canonical form: a map from monomials `q^i·α^j` to nonzero coefficients.
//! The module parameter λ is always written through `q` (λ = q² by default),
//! so every power λ^m, λ^(r±½) and √λ that the module actions need is a
//! Laurent monomial in `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::HalfInt;

/// An element `a + b·√2` of ℚ(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadRat {
    a: BigRational,
    b: BigRational,
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRat { a, b }
    }

    pub fn zero() -> Self {
        QuadRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        QuadRat::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QuadRat::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a rational element. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        QuadRat::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(a: BigRational) -> Self {
        QuadRat::new(a, BigRational::zero())
    }

    /// √2.
    pub fn sqrt2() -> Self {
        QuadRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The Galois conjugate `a − b·√2`.
    pub fn conj(&self) -> Self {
        QuadRat::new(self.a.clone(), -&self.b)
    }

    /// The field norm `a² − 2b²`. Nonzero for every nonzero element.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.a * &self.a - two * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadRat::new(&self.a / &n, -&self.b / &n))
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = QuadRat::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Number of nonzero parts (0, 1 or 2); used by the printers to decide
    /// when parentheses are needed.
    pub(crate) fn part_count(&self) -> usize {
        usize::from(!self.a.is_zero()) + usize::from(!self.b.is_zero())
    }
}

impl Default for QuadRat {
    fn default() -> Self {
        QuadRat::zero()
    }
}

impl From<i64> for QuadRat {
    fn from(n: i64) -> Self {
        QuadRat::from_int(n)
    }
}

impl<'a> Add<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let two = BigRational::from_integer(BigInt::from(2));
        QuadRat::new(&self.a * &rhs.a + two * &self.b * &rhs.b, &self.a * &rhs.b + &self.b * &rhs.a)
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat::new(-&self.a, -&self.b)
    }
}

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(QuadRat, Add, add);
forward_owned_binop!(QuadRat, Sub, sub);
forward_owned_binop!(QuadRat, Mul, mul);

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            out.push_str(&fmt_rational(&self.a));
        }
        if !self.b.is_zero() {
            let mag = self.b.abs();
            let body = if mag.is_one() { "w".to_string() } else { format!("{}*w", fmt_rational(&mag)) };
            if self.b.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

/// A monomial `q^q·α^a`. Ordered lexicographically on `(q, a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: i64,
    pub a: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, a: 0 };

    fn mul(self, other: Monomial) -> Monomial {
        Monomial { q: self.q + other.q, a: self.a + other.a }
    }
}

/// An element of ℚ(√2)[α][q, q⁻¹] in sparse normal form (no zero
/// coefficients are ever stored).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: BTreeMap<Monomial, QuadRat>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(QuadRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(QuadRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::constant(QuadRat::from_ratio(num, den))
    }

    pub fn constant(c: QuadRat) -> Self {
        Scalar::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: QuadRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    /// `q^k`.
    pub fn q_power(k: i64) -> Self {
        Scalar::term(Monomial { q: k, a: 0 }, QuadRat::one())
    }

    /// The indeterminate α.
    pub fn alpha() -> Self {
        Scalar::term(Monomial { q: 0, a: 1 }, QuadRat::one())
    }

    /// √2 as a scalar.
    pub fn sqrt2() -> Self {
        Scalar::constant(QuadRat::sqrt2())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(QuadRat::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QuadRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `Some(c)` when the scalar is free of `q` and `α`.
    pub fn as_constant(&self) -> Option<QuadRat> {
        match self.terms.len() {
            0 => Some(QuadRat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// `Some(u)` when the scalar is a unit of the ring, i.e. `c·q^k` with `c ≠ 0`.
    pub fn as_unit(&self) -> Option<Unit> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        (m.a == 0).then(|| Unit { coeff: c.clone(), q_exp: m.q })
    }

    pub fn has_alpha(&self) -> bool {
        self.terms.keys().any(|m| m.a > 0)
    }

    pub fn has_q(&self) -> bool {
        self.terms.keys().any(|m| m.q != 0)
    }

    /// The shared `q` exponent when every term carries the same power of `q`.
    pub fn common_q_exponent(&self) -> Option<i64> {
        let mut exps = self.terms.keys().map(|m| m.q);
        let first = exps.next()?;
        exps.all(|e| e == first).then_some(first)
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i64) -> Scalar {
        let terms = self.terms.iter().map(|(m, c)| (Monomial { q: m.q + k, a: m.a }, c.clone())).collect();
        Scalar { terms }
    }

    pub fn scale(&self, c: &QuadRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        Scalar { terms }
    }

    fn add_term(&mut self, m: Monomial, c: QuadRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `q = q0`, `α = α0`. `None` when `q0 = 0` and a negative
    /// power of `q` occurs.
    pub fn eval(&self, q0: &QuadRat, alpha0: &QuadRat) -> Option<QuadRat> {
        let mut acc = QuadRat::zero();
        for (m, c) in &self.terms {
            let qp = q0.pow(m.q)?;
            let ap = alpha0.pow(i64::from(m.a))?;
            acc = acc + c * &qp * &ap;
        }
        Some(acc)
    }

    /// Substitutes the concrete point `p`; a ring homomorphism.
    pub fn specialize(&self, p: &SpecPoint) -> Result<QuadRat, Error> {
        if p.q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        // q0 is nonzero so every power is defined.
        Ok(self.eval(&p.q0, &p.alpha0).expect("nonzero q0 admits negative powers"))
    }

    /// Number of printed summands; a single summand never needs parentheses.
    pub(crate) fn printed_summands(&self) -> usize {
        self.terms.values().map(QuadRat::part_count).sum()
    }
}

impl From<QuadRat> for Scalar {
    fn from(c: QuadRat) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Scalar { terms }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

forward_owned_binop!(Scalar, Add, add);
forward_owned_binop!(Scalar, Sub, sub);
forward_owned_binop!(Scalar, Mul, mul);

fn fmt_monomial_factors(m: &Monomial, with_w: bool) -> Vec<String> {
    let mut factors = Vec::new();
    if with_w {
        factors.push("w".to_string());
    }
    match m.q {
        0 => {}
        1 => factors.push("q".to_string()),
        k => factors.push(format!("q^{k}")),
    }
    match m.a {
        0 => {}
        1 => factors.push("a".to_string()),
        k => factors.push(format!("a^{k}")),
    }
    factors
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        // Highest monomial first; within a monomial the rational part precedes √2.
        for (m, c) in self.terms.iter().rev() {
            for (coef, with_w) in [(c.rational_part(), false), (c.sqrt2_part(), true)] {
                if coef.is_zero() {
                    continue;
                }
                let mut factors = fmt_monomial_factors(m, with_w);
                let mag = coef.abs();
                if !mag.is_one() || factors.is_empty() {
                    factors.insert(0, fmt_rational(&mag));
                }
                if coef.is_negative() {
                    out.push('-');
                } else if !out.is_empty() {
                    out.push('+');
                }
                out.push_str(&factors.join("*"));
            }
        }
        f.write_str(&out)
    }
}

/// A unit `c·q^k` (with `c ≠ 0`) of the scalar ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    coeff: QuadRat,
    q_exp: i64,
}

impl Unit {
    /// Returns `None` when `coeff` is zero.
    pub fn new(coeff: QuadRat, q_exp: i64) -> Option<Self> {
        (!coeff.is_zero()).then_some(Unit { coeff, q_exp })
    }

    pub fn one() -> Self {
        Unit { coeff: QuadRat::one(), q_exp: 0 }
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Unit { coeff: QuadRat::one(), q_exp: 1 }
    }

    pub fn constant(coeff: QuadRat) -> Option<Self> {
        Unit::new(coeff, 0)
    }

    pub fn coeff(&self) -> &QuadRat {
        &self.coeff
    }

    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }

    pub fn pow(&self, exp: i64) -> Unit {
        Unit { coeff: self.coeff.pow(exp).expect("unit coefficient is nonzero"), q_exp: self.q_exp * exp }
    }

    pub fn inv(&self) -> Unit {
        self.pow(-1)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        Unit { coeff: &self.coeff * &other.coeff, q_exp: self.q_exp + other.q_exp }
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::term(Monomial { q: self.q_exp, a: 0 }, self.coeff.clone())
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_scalar().fmt(f)
    }
}

/// The module parameter λ, together with a chosen square root when one is
/// available in the scalar ring.
///
/// Integer powers only need λ itself; half-integer powers (the twist of a
/// Neveu-Schwarz generator `G_r`, the constants of the Γ isomorphism) need
/// the square root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lambda {
    value: Unit,
    sqrt: Option<Unit>,
}

impl Lambda {
    /// λ = q², √λ = q.
    pub fn symbolic() -> Self {
        Lambda::square_of(Unit::q())
    }

    pub fn one() -> Self {
        Lambda::square_of(Unit::one())
    }

    /// λ = ρ², √λ = ρ.
    pub fn square_of(root: Unit) -> Self {
        Lambda { value: root.pow(2), sqrt: Some(root) }
    }

    /// λ = u with no square root on record.
    pub fn from_unit(value: Unit) -> Self {
        Lambda { value, sqrt: None }
    }

    pub fn value(&self) -> &Unit {
        &self.value
    }

    pub fn sqrt(&self) -> Option<&Unit> {
        self.sqrt.as_ref()
    }

    /// λ^h for an integer or half-integer `h`.
    pub fn pow_unit(&self, h: HalfInt) -> Result<Unit, Error> {
        if h.is_integer() {
            Ok(self.value.pow(h.twice() / 2))
        } else {
            let root = self.sqrt.as_ref().ok_or(Error::HalfPowerUnavailable)?;
            Ok(root.pow(h.twice()))
        }
    }

    pub fn pow(&self, h: HalfInt) -> Result<Scalar, Error> {
        self.pow_unit(h).map(|u| u.to_scalar())
    }

    pub fn is_one(&self) -> bool {
        self.value == Unit::one()
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// A concrete evaluation point `(q0, α0)` with `q0 ≠ 0`; λ0 = q0².
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecPoint {
    q0: QuadRat,
    alpha0: QuadRat,
}

impl SpecPoint {
    pub fn new(q0: QuadRat, alpha0: QuadRat) -> Result<Self, Error> {
        if q0.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(SpecPoint { q0, alpha0 })
    }

    pub fn q0(&self) -> &QuadRat {
        &self.q0
    }

    pub fn alpha0(&self) -> &QuadRat {
        &self.alpha0
    }

    /// λ0 = q0².
    pub fn lambda0(&self) -> QuadRat {
        &self.q0 * &self.q0
    }
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.q0, self.alpha0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Scalar {
        Scalar::sqrt2()
    }

    fn q() -> Scalar {
        Scalar::q_power(1)
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&w() * &w(), Scalar::from_int(2));
    }

    #[test]
    fn laurent_multiplication() {
        let lhs = &(&q() + &Scalar::q_power(-1)) * &q();
        assert_eq!(lhs, &Scalar::q_power(2) + &Scalar::one());
    }

    #[test]
    fn distributivity_cancels_alpha() {
        let q2 = Scalar::q_power(2);
        let lhs = &(&q2 * &(&Scalar::alpha() + &Scalar::from_int(3))) - &(&q2 * &Scalar::alpha());
        assert_eq!(lhs, Scalar::from_int(3) * q2);
    }

    #[test]
    fn specialize_examples() {
        let p = SpecPoint::new(QuadRat::from_int(2), QuadRat::zero()).unwrap();
        assert_eq!(Scalar::q_power(2).specialize(&p).unwrap(), QuadRat::from_int(4));

        let p = SpecPoint::new(QuadRat::one(), QuadRat::from_int(3)).unwrap();
        let s = &Scalar::alpha() + &Scalar::q_power(-1);
        assert_eq!(s.specialize(&p).unwrap(), QuadRat::from_int(4));

        let p = SpecPoint::new(QuadRat::sqrt2(), QuadRat::zero()).unwrap();
        assert_eq!((&w() * &q()).specialize(&p).unwrap(), QuadRat::from_int(2));
    }

    #[test]
    fn zero_q_is_rejected() {
        assert!(matches!(SpecPoint::new(QuadRat::zero(), QuadRat::one()), Err(Error::ZeroQ)));
    }

    #[test]
    fn quadrat_inverse() {
        let x = QuadRat::new(BigRational::from_integer(3.into()), BigRational::new(1.into(), 2.into()));
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(QuadRat::zero().inv().is_none());
    }

    #[test]
    fn q_is_a_unit() {
        for k in -20..=20 {
            assert!((&Scalar::q_power(k) * &Scalar::q_power(-k)).is_one());
        }
    }

    #[test]
    fn lambda_half_powers() {
        let l = Lambda::symbolic();
        assert_eq!(l.pow(HalfInt::from_twice(1)).unwrap(), q());
        assert_eq!(l.pow(HalfInt::from_twice(-4)).unwrap(), Scalar::q_power(-4));
        let bare = Lambda::from_unit(Unit::q());
        assert_eq!(bare.pow(HalfInt::from_int(3)).unwrap(), Scalar::q_power(3));
        assert!(matches!(bare.pow(HalfInt::from_twice(1)), Err(Error::HalfPowerUnavailable)));
    }

    #[test]
    fn display_is_canonical() {
        let s =
            &(&Scalar::q_power(2) * &(&Scalar::alpha() + &Scalar::from_ratio(1, 2))) - &(&w() * &Scalar::q_power(-1));
        assert_eq!(s.to_string(), "q^2*a+1/2*q^2-w*q^-1");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(QuadRat::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!((QuadRat::one() - QuadRat::sqrt2()).to_string(), "1-w");
    }
}
