//! Dense univariate polynomials over [`Scalar`] in a tagged variable.
//!
//! The Ramond carrier uses `t` (standing for x²), the Neveu-Schwarz carrier
//! uses `x` for the even part and `y` for the odd part. Every generator
//! action is a shift `f(v) ↦ f(v + c)` followed by multiplication with a
//! linear factor, so those two operations are the core of this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{QuadRat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarTag {
    /// x² in the Ramond carrier.
    T,
    X,
    Y,
}

impl VarTag {
    pub fn symbol(self) -> char {
        match self {
            VarTag::T => 't',
            VarTag::X => 'x',
            VarTag::Y => 'y',
        }
    }
}

impl fmt::Display for VarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An integer or half-integer, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn to_int(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_quadrat(self) -> QuadRat {
        QuadRat::from_ratio(self.twice, 2)
    }

    pub fn to_scalar(self) -> Scalar {
        Scalar::constant(self.to_quadrat())
    }

    pub fn abs(self) -> HalfInt {
        HalfInt { twice: self.twice.abs() }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice * rhs }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// A polynomial `Σ coeffs[k]·var^k`; the leading coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarPoly {
    var: VarTag,
    coeffs: Vec<Scalar>,
}

impl VarPoly {
    pub fn zero(var: VarTag) -> Self {
        VarPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: VarTag, c: Scalar) -> Self {
        VarPoly::from_coeffs(var, vec![c])
    }

    pub fn one(var: VarTag) -> Self {
        VarPoly::constant(var, Scalar::one())
    }

    /// `c·var^k`.
    pub fn monomial(var: VarTag, k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        VarPoly::from_coeffs(var, coeffs)
    }

    /// `var^k`.
    pub fn var_power(var: VarTag, k: usize) -> Self {
        VarPoly::monomial(var, k, Scalar::one())
    }

    pub fn from_coeffs(var: VarTag, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        VarPoly { var, coeffs }
    }

    pub fn var(&self) -> VarTag {
        self.var
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> VarPoly {
        VarPoly::from_coeffs(self.var, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(v + c)` for a half-integer `c`.
    pub fn shift(&self, c: HalfInt) -> VarPoly {
        if c == HalfInt::ZERO {
            return self.clone();
        }
        self.shift_by(&c.to_scalar())
    }

    /// `p(v + c)` by Horner's scheme.
    pub fn shift_by(&self, c: &Scalar) -> VarPoly {
        let one = Scalar::one();
        let mut acc = VarPoly::zero(self.var);
        for coef in self.coeffs.iter().rev() {
            acc = acc.mul_linear(&one, c);
            acc = &acc + &VarPoly::constant(self.var, coef.clone());
        }
        acc
    }

    /// `(a·v + b)·p`.
    pub fn mul_linear(&self, a: &Scalar, b: &Scalar) -> VarPoly {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = vec![Scalar::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !b.is_zero() {
                out[k] += &(c * b);
            }
            if !a.is_zero() {
                out[k + 1] += &(c * a);
            }
        }
        VarPoly::from_coeffs(self.var, out)
    }

    pub fn retag(&self, to: VarTag) -> VarPoly {
        VarPoly { var: to, coeffs: self.coeffs.clone() }
    }

    /// `p(c·v)`.
    pub fn scale_var(&self, c: &Scalar) -> VarPoly {
        let mut pow = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coef in &self.coeffs {
            out.push(coef * &pow);
            pow = &pow * c;
        }
        VarPoly::from_coeffs(self.var, out)
    }

    /// `v^k·p`.
    pub fn mul_var_power(&self, k: usize) -> VarPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        VarPoly::from_coeffs(self.var, coeffs)
    }

    /// `p / v`, when the constant term vanishes.
    pub fn div_var(&self) -> Option<VarPoly> {
        if !self.constant_term().is_zero() {
            return None;
        }
        Some(VarPoly::from_coeffs(self.var, self.coeffs.iter().skip(1).cloned().collect()))
    }

    /// The common power of `q` shared by every term of every coefficient.
    fn common_q_exponent(&self) -> Option<i64> {
        let mut exps = self.coeffs.iter().filter(|c| !c.is_zero()).map(Scalar::common_q_exponent);
        let first = exps.next()??;
        for e in exps {
            if e? != first {
                return None;
            }
        }
        Some(first)
    }

    fn fmt_terms(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = if k == 0 {
                c.to_string()
            } else {
                let power = if k == 1 { self.var.to_string() } else { format!("{}^{}", self.var, k) };
                if c.is_one() {
                    power
                } else if (-c).is_one() {
                    format!("-{power}")
                } else if c.printed_summands() == 1 {
                    format!("{c}*{power}")
                } else {
                    format!("({c})*{power}")
                }
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl<'a> Add<&'a VarPoly> for &'a VarPoly {
    type Output = VarPoly;
    fn add(self, rhs: &VarPoly) -> VarPoly {
        assert_eq!(self.var, rhs.var, "adding polynomials in different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        VarPoly::from_coeffs(self.var, coeffs)
    }
}

impl<'a> Sub<&'a VarPoly> for &'a VarPoly {
    type Output = VarPoly;
    fn sub(self, rhs: &VarPoly) -> VarPoly {
        assert_eq!(self.var, rhs.var, "subtracting polynomials in different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect();
        VarPoly::from_coeffs(self.var, coeffs)
    }
}

impl<'a> Mul<&'a VarPoly> for &'a VarPoly {
    type Output = VarPoly;
    fn mul(self, rhs: &VarPoly) -> VarPoly {
        assert_eq!(self.var, rhs.var, "multiplying polynomials in different variables");
        if self.is_zero() || rhs.is_zero() {
            return VarPoly::zero(self.var);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        VarPoly::from_coeffs(self.var, coeffs)
    }
}

impl Neg for &VarPoly {
    type Output = VarPoly;
    fn neg(self) -> VarPoly {
        VarPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for VarPoly {
    /// Descending degree, no spaces. A power of `q` common to every term is
    /// pulled out front: `q^2*(x+a)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let summands: usize = self.coeffs.iter().map(Scalar::printed_summands).sum();
        if summands > 1 {
            if let Some(k) = self.common_q_exponent().filter(|&k| k != 0) {
                let inner = VarPoly { var: self.var, coeffs: self.coeffs.iter().map(|c| c.shift_q(-k)).collect() };
                let qk = if k == 1 { "q".to_string() } else { format!("q^{k}") };
                return write!(f, "{qk}*({})", inner.fmt_terms());
            }
        }
        f.write_str(&self.fmt_terms())
    }
}
