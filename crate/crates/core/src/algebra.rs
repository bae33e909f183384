//! The centerless super-Virasoro algebras.
//!
//! Both families share the even part spanned by `L_m` (m ∈ ℤ). The odd part
//! is spanned by `G_r` with r ∈ ℤ for the Ramond algebra and r ∈ ½ + ℤ for
//! the Neveu-Schwarz algebra. The super-bracket is
//!
//! ```text
//! [L_m, L_n] = (m − n) L_{m+n}
//! [L_m, G_r] = (m/2 − r) G_{m+r}
//! [G_r, G_s] = 2 L_{r+s}
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::poly::HalfInt;
use crate::report::{VerificationReport, Witness};
use crate::scalar::{Lambda, QuadRat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ramond,
    #[serde(rename = "ns")]
    NeveuSchwarz,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Ramond, Family::NeveuSchwarz];

    /// Whether `twice` is a valid doubled index for an odd generator.
    fn admits_odd_index(self, twice: i64) -> bool {
        match self {
            Family::Ramond => twice % 2 == 0,
            Family::NeveuSchwarz => twice % 2 != 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ramond => "ramond",
            Family::NeveuSchwarz => "ns",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// The Koszul sign (−1)^{|a||b|}.
pub fn koszul_sign(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    L,
    G,
}

/// A basis element `L_m` or `G_r`. Ordered by family, then index, then kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    family: Family,
    index: HalfInt,
    kind: Kind,
}

impl Generator {
    pub fn new(kind: Kind, index: HalfInt, family: Family) -> Result<Self, Error> {
        let ok = match kind {
            Kind::L => index.is_integer(),
            Kind::G => family.admits_odd_index(index.twice()),
        };
        if !ok {
            let name = match kind {
                Kind::L => "L",
                Kind::G => "G",
            };
            return Err(Error::InvalidGenerator(format!("{name}({index}) does not belong to the {family} algebra")));
        }
        Ok(Generator { family, index, kind })
    }

    pub fn l(family: Family, m: i64) -> Self {
        Generator { family, index: HalfInt::from_int(m), kind: Kind::L }
    }

    pub fn g(family: Family, index: HalfInt) -> Result<Self, Error> {
        Generator::new(Kind::G, index, family)
    }

    /// Ramond `G_m`.
    pub fn ramond_g(m: i64) -> Self {
        Generator { family: Family::Ramond, index: HalfInt::from_int(m), kind: Kind::G }
    }

    /// Neveu-Schwarz `G_{twice/2}`; panics when `twice` is even.
    pub fn ns_g(twice: i64) -> Self {
        Generator::g(Family::NeveuSchwarz, HalfInt::from_twice(twice)).expect("odd doubled index")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn index(&self) -> HalfInt {
        self.index
    }

    pub fn parity(&self) -> Parity {
        match self.kind {
            Kind::L => Parity::Even,
            Kind::G => Parity::Odd,
        }
    }

    pub fn to_element(self) -> AlgebraElement {
        AlgebraElement::from_generator(self)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => 'L',
            Kind::G => 'G',
        };
        write!(f, "{k}({})", self.index)
    }
}

/// All generators `L_m`, `G_r` of a family with |index| ≤ `window`, in
/// generator order (index ascending, `L` before `G`).
pub fn basis(family: Family, window: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for twice in -2 * window..=2 * window {
        let index = HalfInt::from_twice(twice);
        if index.is_integer() {
            out.push(Generator::l(family, twice / 2));
        }
        if family.admits_odd_index(twice) {
            out.push(Generator { family, index, kind: Kind::G });
        }
    }
    out
}

/// A finite linear combination of generators of one family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    family: Family,
    terms: BTreeMap<Generator, Scalar>,
}

impl AlgebraElement {
    pub fn zero(family: Family) -> Self {
        AlgebraElement { family, terms: BTreeMap::new() }
    }

    pub fn from_generator(g: Generator) -> Self {
        AlgebraElement::monomial(g, Scalar::one())
    }

    pub fn monomial(g: Generator, c: Scalar) -> Self {
        let mut e = AlgebraElement::zero(g.family);
        e.add_term(g, c);
        e
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    /// The common parity of all terms; `None` for zero or mixed elements.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Generator::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn add_term(&mut self, g: Generator, c: Scalar) {
        assert_eq!(g.family, self.family, "generator family differs from element family");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    fn check_family(&self, other: &AlgebraElement) -> Result<(), Error> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch { expected: self.family, found: other.family });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.check_family(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.family);
        for (g, v) in &self.terms {
            out.add_term(*g, v * c);
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (g, c) in &self.terms {
            let term = if c.is_one() {
                g.to_string()
            } else if (-c).is_one() {
                format!("-{g}")
            } else if c.printed_summands() == 1 {
                format!("{c}*{g}")
            } else {
                format!("({c})*{g}")
            };
            if !out.is_empty() && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

/// The super-bracket of two basis generators of the same family.
pub fn bracket_generators(a: Generator, b: Generator) -> AlgebraElement {
    debug_assert_eq!(a.family, b.family);
    let family = a.family;
    let sum = a.index + b.index;
    match (a.kind, b.kind) {
        (Kind::L, Kind::L) => {
            let c = (a.index - b.index).to_scalar();
            AlgebraElement::monomial(Generator::l(family, sum.to_int().expect("integer")), c)
        }
        (Kind::L, Kind::G) => {
            // m/2 − r = (m − 2r)/2 = (twice(m)/2 − twice(r))/2
            let c = Scalar::from_ratio(a.index.twice() / 2 - b.index.twice(), 2);
            AlgebraElement::monomial(Generator { family, index: sum, kind: Kind::G }, c)
        }
        (Kind::G, Kind::L) => bracket_generators(b, a).neg(),
        (Kind::G, Kind::G) => AlgebraElement::monomial(
            Generator::l(family, sum.to_int().expect("odd indices sum to an integer")),
            Scalar::from_int(2),
        ),
    }
}

/// Bilinear extension of [`bracket_generators`].
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, Error> {
    a.check_family(b)?;
    let mut out = AlgebraElement::zero(a.family);
    for (ga, ca) in &a.terms {
        for (gb, cb) in &b.terms {
            let coeff = ca * cb;
            for (g, c) in bracket_generators(*ga, *gb).terms {
                out.add_term(g, &c * &coeff);
            }
        }
    }
    Ok(out)
}

/// σ_λ: `L_m ↦ λ^m L_m`, `G_r ↦ λ^r G_r`.
pub fn twist(a: &AlgebraElement, lambda: &Lambda) -> Result<AlgebraElement, Error> {
    let mut out = AlgebraElement::zero(a.family);
    for (g, c) in &a.terms {
        out.add_term(*g, c * &lambda.pow(g.index)?);
    }
    Ok(out)
}

/// σ_λ with λ = q², so every generator scales by `q^{2·index}`.
pub fn twist_sigma_lambda(a: &AlgebraElement) -> AlgebraElement {
    twist(a, &Lambda::symbolic()).expect("λ = q² has a square root")
}

/// The embedding σ of the Neveu-Schwarz algebra into the Ramond algebra:
/// `L_m ↦ ½ L_{2m}`, `G_r ↦ (1/√2) G_{2r}`.
pub fn embed_sigma(a: &AlgebraElement) -> Result<AlgebraElement, Error> {
    if a.family != Family::NeveuSchwarz {
        return Err(Error::FamilyMismatch { expected: Family::NeveuSchwarz, found: a.family });
    }
    let half = Scalar::from_ratio(1, 2);
    let inv_sqrt2 = Scalar::constant(&QuadRat::sqrt2() * &QuadRat::from_ratio(1, 2));
    let mut out = AlgebraElement::zero(Family::Ramond);
    for (g, c) in &a.terms {
        let image = Generator { family: Family::Ramond, index: g.index * 2, kind: g.kind };
        let factor = match g.kind {
            Kind::L => &half,
            Kind::G => &inv_sqrt2,
        };
        out.add_term(image, c * factor);
    }
    Ok(out)
}

fn triples(gens: &[Generator]) -> Vec<(Generator, Generator, Generator)> {
    let mut out = Vec::with_capacity(gens.len().pow(3));
    for &a in gens {
        for &b in gens {
            for &c in gens {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn pairs(gens: &[Generator]) -> Vec<(Generator, Generator)> {
    gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).collect()
}

/// The graded Jacobi sum
/// (−1)^{|a||c|}[a,[b,c]] + (−1)^{|b||a|}[b,[c,a]] + (−1)^{|c||b|}[c,[a,b]].
pub fn jacobi_sum(a: Generator, b: Generator, c: Generator) -> AlgebraElement {
    let (pa, pb, pc) = (a.parity(), b.parity(), c.parity());
    let (ea, eb, ec) = (a.to_element(), b.to_element(), c.to_element());
    let term = |x: &AlgebraElement, y: Generator, z: Generator, sign: i64| {
        bracket(x, &bracket_generators(y, z)).expect("same family").scale(&Scalar::from_int(sign))
    };
    let s1 = term(&ea, b, c, koszul_sign(pa, pc));
    let s2 = term(&eb, c, a, koszul_sign(pb, pa));
    let s3 = term(&ec, a, b, koszul_sign(pc, pb));
    s1.try_add(&s2).and_then(|s| s.try_add(&s3)).expect("same family")
}

/// Checks the graded Jacobi identity on all basis triples with
/// |index| ≤ `window`.
pub fn check_super_jacobi(family: Family, window: i64) -> VerificationReport {
    let gens = basis(family, window);
    VerificationReport::new("super-jacobi").param("family", family).window(window).sweep(
        &triples(&gens),
        |&(a, b, c)| {
            let j = jacobi_sum(a, b, c);
            (!j.is_zero()).then(|| Witness::new(format!("({a}, {b}, {c})"), &j, 0))
        },
    )
}

/// Checks [a,b] = −(−1)^{|a||b|}[b,a] on basis pairs.
pub fn check_super_antisymmetry(family: Family, window: i64) -> VerificationReport {
    let gens = basis(family, window);
    VerificationReport::new("super-antisymmetry").param("family", family).window(window).sweep(
        &pairs(&gens),
        |&(a, b)| {
            let lhs = bracket_generators(a, b);
            let rhs = bracket_generators(b, a).scale(&Scalar::from_int(-koszul_sign(a.parity(), b.parity())));
            (lhs != rhs).then(|| Witness::new(format!("({a}, {b})"), &lhs, &rhs))
        },
    )
}

/// Checks σ_λ([a,b]) = [σ_λ a, σ_λ b] on basis pairs.
pub fn check_twist_homomorphism(family: Family, window: i64, lambda: &Lambda) -> VerificationReport {
    let gens = basis(family, window);
    VerificationReport::new("twist-homomorphism").param("family", family).param("lambda", lambda).window(window).sweep(
        &pairs(&gens),
        |&(a, b)| {
            let inputs = format!("({a}, {b})");
            let run = || -> Result<(AlgebraElement, AlgebraElement), Error> {
                let lhs = twist(&bracket_generators(a, b), lambda)?;
                let rhs = bracket(&twist(&a.to_element(), lambda)?, &twist(&b.to_element(), lambda)?)?;
                Ok((lhs, rhs))
            };
            match run() {
                Ok((lhs, rhs)) => (lhs != rhs).then(|| Witness::new(inputs, &lhs, &rhs)),
                Err(e) => Some(Witness::error(inputs, e)),
            }
        },
    )
}

/// Checks σ([a,b]) = [σa, σb] on Neveu-Schwarz basis pairs.
pub fn check_sigma_homomorphism(window: i64) -> VerificationReport {
    let gens = basis(Family::NeveuSchwarz, window);
    VerificationReport::new("sigma-homomorphism").window(window).sweep(&pairs(&gens), |&(a, b)| {
        let lhs = embed_sigma(&bracket_generators(a, b)).expect("NS input");
        let sa = embed_sigma(&a.to_element()).expect("NS input");
        let sb = embed_sigma(&b.to_element()).expect("NS input");
        let rhs = bracket(&sa, &sb).expect("Ramond images");
        (lhs != rhs).then(|| Witness::new(format!("({a}, {b})"), &lhs, &rhs))
    })
}
