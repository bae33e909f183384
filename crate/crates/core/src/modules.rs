//! The module families Ω_R(λ,α) and Ω_NS(λ,α).
//!
//! A Ramond vector `f(x²) + x·g(x²)` is stored as the pair `(f, g)` of
//! polynomials in `t = x²`. A Neveu-Schwarz vector `f(x) + g(y)` is stored
//! as `(f, g)` with `f` in `x` and `g` in `y`. The actions are
//!
//! ```text
//! Ramond, m ∈ ℤ:
//!   L_m f      = λ^m (t + mα) f(t+m)
//!   L_m x f    = λ^m x (t + mα + m/2) f(t+m)
//!   G_m f      = λ^m x f(t+m)
//!   G_m x f    = λ^m (t + 2mα) f(t+m)
//! Neveu-Schwarz, m ∈ ℤ, r ∈ ½+ℤ:
//!   L_m f(x)   = λ^m (x + mα) f(x+m)
//!   L_m g(y)   = λ^m (y + m(α+½)) g(y+m)
//!   G_r f(x)   = λ^(r−½) f(y+r)
//!   G_r g(y)   = λ^(r+½) (x + 2rα) g(x+r)
//! ```

use std::fmt;

use crate::algebra::{self, basis, koszul_sign, AlgebraElement, Family, Generator, Kind, Parity};
use crate::error::{Error, DEGREE_CAP};
use crate::poly::{HalfInt, VarPoly, VarTag};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{Lambda, Scalar, SpecPoint, Unit};

/// A vector of Ω_R or Ω_NS: an even component and an odd component.
///
/// `pi` marks the vector as living in the parity-shifted module Π(M); the
/// data is unchanged, only which component counts as even.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    family: Family,
    even: VarPoly,
    odd: VarPoly,
    pi: bool,
}

/// Variable tags of the (even, odd) components of a family's carrier.
pub fn component_vars(family: Family) -> (VarTag, VarTag) {
    match family {
        Family::Ramond => (VarTag::T, VarTag::T),
        Family::NeveuSchwarz => (VarTag::X, VarTag::Y),
    }
}

impl Vector {
    pub fn new(family: Family, even: VarPoly, odd: VarPoly) -> Result<Self, Error> {
        let (ev, ov) = component_vars(family);
        if even.var() != ev || odd.var() != ov {
            return Err(Error::InvalidArgument(format!(
                "{family} vectors use variables ({ev}, {ov}), got ({}, {})",
                even.var(),
                odd.var()
            )));
        }
        Ok(Vector { family, even, odd, pi: false })
    }

    /// `even(x²) + x·odd(x²)`; both polynomials must be in `t`.
    pub fn ramond(even: VarPoly, odd: VarPoly) -> Result<Self, Error> {
        Vector::new(Family::Ramond, even, odd)
    }

    /// `even(x) + odd(y)`.
    pub fn ns(even: VarPoly, odd: VarPoly) -> Result<Self, Error> {
        Vector::new(Family::NeveuSchwarz, even, odd)
    }

    pub fn zero(family: Family) -> Self {
        let (ev, ov) = component_vars(family);
        Vector { family, even: VarPoly::zero(ev), odd: VarPoly::zero(ov), pi: false }
    }

    /// The even generator `1` (written 1₀̄ for Neveu-Schwarz).
    pub fn one(family: Family) -> Self {
        Vector::monomial(family, Component::Even, 0)
    }

    /// A basis monomial `v^k` in one component.
    pub fn monomial(family: Family, component: Component, k: usize) -> Self {
        let mut v = Vector::zero(family);
        match component {
            Component::Even => v.even = VarPoly::var_power(v.even.var(), k),
            Component::Odd => v.odd = VarPoly::var_power(v.odd.var(), k),
        }
        v
    }

    pub fn from_component(family: Family, component: Component, p: VarPoly) -> Result<Self, Error> {
        let (ev, ov) = component_vars(family);
        match component {
            Component::Even => Vector::new(family, p, VarPoly::zero(ov)),
            Component::Odd => Vector::new(family, VarPoly::zero(ev), p),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn even(&self) -> &VarPoly {
        &self.even
    }

    pub fn odd(&self) -> &VarPoly {
        &self.odd
    }

    pub fn component(&self, c: Component) -> &VarPoly {
        match c {
            Component::Even => &self.even,
            Component::Odd => &self.odd,
        }
    }

    pub fn is_parity_shifted(&self) -> bool {
        self.pi
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Largest degree over both components.
    pub fn degree(&self) -> Option<usize> {
        self.even.degree().max(self.odd.degree())
    }

    /// Parity of a homogeneous vector under its (possibly shifted) labeling.
    pub fn parity(&self) -> Option<Parity> {
        let data = match (self.even.is_zero(), self.odd.is_zero()) {
            (false, true) => Parity::Even,
            (true, false) => Parity::Odd,
            _ => return None,
        };
        Some(if self.pi { data.flip() } else { data })
    }

    /// The functor Π on elements: same data, parities swapped.
    pub fn parity_flip(&self) -> Vector {
        let mut v = self.clone();
        v.pi = !v.pi;
        v
    }

    pub(crate) fn with_pi(mut self, pi: bool) -> Vector {
        self.pi = pi;
        self
    }

    fn check_family(&self, other: &Vector) -> Result<(), Error> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch { expected: self.family, found: other.family });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector, Error> {
        self.check_family(other)?;
        Ok(Vector { family: self.family, even: &self.even + &other.even, odd: &self.odd + &other.odd, pi: self.pi })
    }

    pub fn try_sub(&self, other: &Vector) -> Result<Vector, Error> {
        self.check_family(other)?;
        Ok(Vector { family: self.family, even: &self.even - &other.even, odd: &self.odd - &other.odd, pi: self.pi })
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector { family: self.family, even: self.even.scale(c), odd: self.odd.scale(c), pi: self.pi }
    }

    /// Evaluates every coefficient at `p`.
    pub fn specialize(&self, p: &SpecPoint) -> Result<Vector, Error> {
        let spec_poly = |poly: &VarPoly| -> Result<VarPoly, Error> {
            let coeffs =
                poly.coeffs().iter().map(|c| c.specialize(p).map(Scalar::constant)).collect::<Result<Vec<_>, _>>()?;
            Ok(VarPoly::from_coeffs(poly.var(), coeffs))
        };
        Ok(Vector { family: self.family, even: spec_poly(&self.even)?, odd: spec_poly(&self.odd)?, pi: self.pi })
    }

    fn check_degree(self) -> Result<Vector, Error> {
        match self.degree() {
            Some(d) if d > DEGREE_CAP => Err(Error::DegreeOverflow { degree: d, cap: DEGREE_CAP }),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Under Π the labels follow the shifted parity.
        let (first, second) = if self.pi { (&self.odd, &self.even) } else { (&self.even, &self.odd) };
        let pi = if self.pi { "Pi" } else { "" };
        write!(f, "{pi}[even: {first} | odd: {second}]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Even,
    Odd,
}

impl Component {
    pub const BOTH: [Component; 2] = [Component::Even, Component::Odd];
}

/// All basis monomials of degree ≤ `max_deg`, ordered by degree and then
/// component.
pub fn monomial_basis(family: Family, max_deg: usize) -> Vec<Vector> {
    (0..=max_deg).flat_map(|k| Component::BOTH.map(|c| Vector::monomial(family, c, k))).collect()
}

// Built once per module; the size of a stored λ does not matter.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionVariant {
    Plain,
    /// `a ∘ v = σ_λ(a)·v` for the stored λ.
    Twisted(Lambda),
    /// A Ramond carrier acted on by Neveu-Schwarz generators through σ.
    RestrictedViaSigma,
}

/// How the parameters of a module were chosen.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Params {
    Symbolic,
    Specialized(SpecPoint),
}

/// A concrete module structure: carrier family, parameters and action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    family: Family,
    lambda: Lambda,
    alpha: Scalar,
    variant: ActionVariant,
    pi: bool,
}

impl ModuleSpec {
    /// Ω(λ, α) with λ = q² and α the indeterminate.
    pub fn symbolic(family: Family) -> Self {
        ModuleSpec {
            family,
            lambda: Lambda::symbolic(),
            alpha: Scalar::alpha(),
            variant: ActionVariant::Plain,
            pi: false,
        }
    }

    /// Ω(q0², α0).
    pub fn specialized(family: Family, p: &SpecPoint) -> Self {
        let root = Unit::constant(p.q0().clone()).expect("SpecPoint has q0 != 0");
        ModuleSpec {
            family,
            lambda: Lambda::square_of(root),
            alpha: Scalar::constant(p.alpha0().clone()),
            variant: ActionVariant::Plain,
            pi: false,
        }
    }

    pub fn with_alpha(mut self, alpha: Scalar) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_lambda(mut self, lambda: Lambda) -> Self {
        self.lambda = lambda;
        self
    }

    /// The twisted module M^{σ_λ}.
    pub fn twisted(mut self, lambda: Lambda) -> Self {
        self.variant = ActionVariant::Twisted(lambda);
        self
    }

    /// A Ramond module viewed as a Neveu-Schwarz module through σ.
    pub fn restricted(mut self) -> Result<Self, Error> {
        if self.family != Family::Ramond {
            return Err(Error::FamilyMismatch { expected: Family::Ramond, found: self.family });
        }
        self.variant = ActionVariant::RestrictedViaSigma;
        Ok(self)
    }

    /// Π(M).
    pub fn parity_shifted(mut self) -> Self {
        self.pi = !self.pi;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn variant(&self) -> &ActionVariant {
        &self.variant
    }

    pub fn is_parity_shifted(&self) -> bool {
        self.pi
    }

    /// The family of the generators acting on this module.
    pub fn generator_family(&self) -> Family {
        match self.variant {
            ActionVariant::RestrictedViaSigma => Family::NeveuSchwarz,
            _ => self.family,
        }
    }

    /// True when no indeterminate occurs in any parameter.
    pub fn is_specialized(&self) -> bool {
        let lambda_free = |l: &Lambda| l.value().q_exp() == 0;
        lambda_free(&self.lambda)
            && self.alpha.as_constant().is_some()
            && match &self.variant {
                ActionVariant::Twisted(l) => lambda_free(l),
                _ => true,
            }
    }

    pub fn params(&self) -> Params {
        match (self.lambda.sqrt(), self.alpha.as_constant()) {
            (Some(root), Some(a0)) if root.q_exp() == 0 && self.is_specialized() => {
                Params::Specialized(SpecPoint::new(root.coeff().clone(), a0).expect("unit is nonzero"))
            }
            _ => Params::Symbolic,
        }
    }

    /// The constant vector `1` of the carrier.
    pub fn one(&self) -> Vector {
        Vector::one(self.family).with_pi(self.pi)
    }

    pub fn zero(&self) -> Vector {
        Vector::zero(self.family).with_pi(self.pi)
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Ramond => "Omega_R",
            Family::NeveuSchwarz => "Omega_NS",
        };
        let body = format!("{name}(lambda={}, alpha={})", self.lambda, self.alpha);
        let body = if self.pi { format!("Pi({body})") } else { body };
        match &self.variant {
            ActionVariant::Plain => f.write_str(&body),
            ActionVariant::Twisted(l) => write!(f, "{body}^sigma_{{{l}}}"),
            ActionVariant::RestrictedViaSigma => write!(f, "{body} via sigma"),
        }
    }
}

fn integer_index(g: Generator) -> i64 {
    g.index().to_int().expect("integer index")
}

/// The Ramond action with explicit parameters.
fn ramond_formula(g: Generator, v: &Vector, lambda: &Lambda, alpha: &Scalar) -> Result<Vector, Error> {
    let m = integer_index(g);
    let shift = HalfInt::from_int(m);
    let lm = lambda.pow(shift)?;
    let ms = Scalar::from_int(m);
    let one = Scalar::one();
    let (even, odd) = match g.kind() {
        Kind::L => {
            let b_even = &ms * alpha;
            let b_odd = &b_even + &Scalar::from_ratio(m, 2);
            (
                v.even.shift(shift).mul_linear(&one, &b_even).scale(&lm),
                v.odd.shift(shift).mul_linear(&one, &b_odd).scale(&lm),
            )
        }
        Kind::G => {
            let b = &Scalar::from_int(2 * m) * alpha;
            (v.odd.shift(shift).mul_linear(&one, &b).scale(&lm), v.even.shift(shift).scale(&lm))
        }
    };
    Vector { family: Family::Ramond, even, odd, pi: v.pi }.check_degree()
}

/// The Neveu-Schwarz action with explicit parameters.
fn ns_formula(g: Generator, v: &Vector, lambda: &Lambda, alpha: &Scalar) -> Result<Vector, Error> {
    let one = Scalar::one();
    let idx = g.index();
    let (even, odd) = match g.kind() {
        Kind::L => {
            let m = integer_index(g);
            let lm = lambda.pow(idx)?;
            let ms = Scalar::from_int(m);
            let b_even = &ms * alpha;
            let b_odd = &ms * &(alpha + &Scalar::from_ratio(1, 2));
            (
                v.even.shift(idx).mul_linear(&one, &b_even).scale(&lm),
                v.odd.shift(idx).mul_linear(&one, &b_odd).scale(&lm),
            )
        }
        Kind::G => {
            let half = HalfInt::from_twice(1);
            let to_odd = lambda.pow(idx - half)?;
            let to_even = lambda.pow(idx + half)?;
            // 2r as an integer
            let b = &Scalar::from_int(idx.twice()) * alpha;
            (
                v.odd.shift(idx).retag(VarTag::X).mul_linear(&one, &b).scale(&to_even),
                v.even.shift(idx).retag(VarTag::Y).scale(&to_odd),
            )
        }
    };
    Vector { family: Family::NeveuSchwarz, even, odd, pi: v.pi }.check_degree()
}

fn expect_family(expected: Family, found: Family) -> Result<(), Error> {
    if expected != found {
        return Err(Error::FamilyMismatch { expected, found });
    }
    Ok(())
}

fn plain_action(g: Generator, v: &Vector, spec: &ModuleSpec) -> Result<Vector, Error> {
    match spec.family {
        Family::Ramond => ramond_formula(g, v, &spec.lambda, &spec.alpha),
        Family::NeveuSchwarz => ns_formula(g, v, &spec.lambda, &spec.alpha),
    }
}

/// A Ramond generator acting on a vector of Ω_R through the plain action.
pub fn act_ramond(g: Generator, v: &Vector, spec: &ModuleSpec) -> Result<Vector, Error> {
    expect_family(Family::Ramond, spec.family)?;
    expect_family(Family::Ramond, g.family())?;
    expect_family(Family::Ramond, v.family)?;
    ramond_formula(g, v, &spec.lambda, &spec.alpha)
}

/// A Neveu-Schwarz generator acting on a vector of Ω_NS through the plain action.
pub fn act_ns(g: Generator, v: &Vector, spec: &ModuleSpec) -> Result<Vector, Error> {
    expect_family(Family::NeveuSchwarz, spec.family)?;
    expect_family(Family::NeveuSchwarz, g.family())?;
    expect_family(Family::NeveuSchwarz, v.family)?;
    ns_formula(g, v, &spec.lambda, &spec.alpha)
}

/// `g·v` in the module described by `spec`, honoring its action variant.
pub fn act(g: Generator, v: &Vector, spec: &ModuleSpec) -> Result<Vector, Error> {
    expect_family(spec.generator_family(), g.family())?;
    expect_family(spec.family, v.family)?;
    match &spec.variant {
        ActionVariant::Plain => plain_action(g, v, spec),
        ActionVariant::Twisted(tw) => Ok(plain_action(g, v, spec)?.scale(&tw.pow(g.index())?)),
        ActionVariant::RestrictedViaSigma => {
            let image = algebra::embed_sigma(&g.to_element())?;
            let mut acc = Vector::zero(Family::Ramond).with_pi(v.pi);
            for (h, c) in image.terms() {
                acc = acc.try_add(&ramond_formula(*h, v, &spec.lambda, &spec.alpha)?.scale(c))?;
            }
            Ok(acc)
        }
    }
}

/// Linear extension of [`act`] to algebra elements.
pub fn act_element(a: &AlgebraElement, v: &Vector, spec: &ModuleSpec) -> Result<Vector, Error> {
    expect_family(spec.generator_family(), a.family())?;
    let mut acc = Vector::zero(v.family).with_pi(v.pi);
    for (g, c) in a.terms() {
        acc = acc.try_add(&act(*g, v, spec)?.scale(c))?;
    }
    Ok(acc)
}

/// Both sides of the module axiom for `(a, b)` on `v`:
/// `[a,b]·v` and `a·(b·v) − (−1)^{|a||b|} b·(a·v)`.
pub fn axiom_sides(a: Generator, b: Generator, v: &Vector, spec: &ModuleSpec) -> Result<(Vector, Vector), Error> {
    let lhs = act_element(&algebra::bracket_generators(a, b), v, spec)?;
    let ab = act(a, &act(b, v, spec)?, spec)?;
    let ba = act(b, &act(a, v, spec)?, spec)?;
    let sign = Scalar::from_int(koszul_sign(a.parity(), b.parity()));
    let rhs = ab.try_sub(&ba.scale(&sign))?;
    Ok((lhs, rhs))
}

/// Checks the module axiom on every generator pair with |index| ≤ `window`
/// and every basis monomial of degree ≤ `max_deg`.
pub fn check_module_axioms(spec: &ModuleSpec, window: i64, max_deg: usize) -> VerificationReport {
    let gens = basis(spec.generator_family(), window);
    let monos = monomial_basis(spec.family, max_deg);
    let mut items = Vec::with_capacity(gens.len() * gens.len() * monos.len());
    for &a in &gens {
        for &b in &gens {
            for v in &monos {
                items.push((a, b, v.clone()));
            }
        }
    }
    VerificationReport::new("module-axioms").param("module", spec).window(window).max_deg(max_deg).sweep(
        &items,
        |(a, b, v)| {
            let inputs = format!("[{a}, {b}] on {v}");
            match axiom_sides(*a, *b, v, spec) {
                Ok((lhs, rhs)) => (lhs != rhs).then(|| Witness::new(inputs, &lhs, &rhs)),
                Err(e) => Some(Witness::error(inputs, e)),
            }
        },
    )
}

/// Checks that every generator acts on Ω_R(λ,α) exactly as the twisted
/// action σ_λ does on the Ω_R(1,α) carrier.
pub fn check_twist_identity(family: Family, window: i64, max_deg: usize) -> VerificationReport {
    let direct = ModuleSpec::symbolic(family);
    let twisted = ModuleSpec::symbolic(family).with_lambda(Lambda::one()).twisted(Lambda::symbolic());
    let gens = basis(family, window);
    let monos = monomial_basis(family, max_deg);
    let items: Vec<(Generator, Vector)> =
        gens.iter().flat_map(|g| monos.iter().map(move |v| (*g, v.clone()))).collect();
    VerificationReport::new("twist-identity")
        .param("module", &direct)
        .param("twisted", &twisted)
        .window(window)
        .max_deg(max_deg)
        .sweep(&items, |(g, v)| {
            let inputs = format!("{g} on {v}");
            match (act(*g, v, &direct), act(*g, v, &twisted)) {
                (Ok(lhs), Ok(rhs)) => (lhs != rhs).then(|| Witness::new(inputs, &lhs, &rhs)),
                (Err(e), _) | (_, Err(e)) => Some(Witness::error(inputs, e)),
            }
        })
}
