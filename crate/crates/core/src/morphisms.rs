//! Module maps: the explicit isomorphisms between the Ω families, checks
//! that a map intertwines two actions, and a degree-bounded search for all
//! intertwiners between two specialized modules.
//!
//! The builtin maps (√λ written as the stored square root ρ of λ):
//!
//! ```text
//! φ: Ξ → Π(Ω_R(λ,½))          t·f ↦ x·f,        x·f ↦ f
//! ψ: Γ → Π(Ω_NS(λ,½))         x·f(x) ↦ (1/(√2 ρ)) f(y),   g(y) ↦ (ρ/√2) g(x)
//! Φ: Ω_NS(λ,α) → Ω_R(ρ,α)     f(x) ↦ f(t/2),    g(y) ↦ (ρ/√2) x·g(t/2)
//! ```
//!
//! where the target of Φ is viewed as a Neveu-Schwarz module through σ.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{basis, koszul_sign, Family, Generator, Parity};
use crate::error::{Error, DEGREE_CAP};
use crate::linalg::RowReducer;
use crate::modules::{act, component_vars, monomial_basis, Component, ModuleSpec, Vector};
use crate::poly::{VarPoly, VarTag};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{Lambda, QuadRat, Scalar, Unit};
use crate::structure::{predicate_basis, SubmodulePredicate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Phi,
    PhiInverse,
    SmallPhi,
    SmallPhiInverse,
    Psi,
    PsiInverse,
    Identity,
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Builtin::Phi => "Phi",
            Builtin::PhiInverse => "Phi^-1",
            Builtin::SmallPhi => "phi",
            Builtin::SmallPhiInverse => "phi^-1",
            Builtin::Psi => "psi",
            Builtin::PsiInverse => "psi^-1",
            Builtin::Identity => "id",
        })
    }
}

/// A degree-bounded map given by the images of the domain basis monomials
/// (ordered as [`monomial_basis`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixMap {
    parity: Parity,
    max_deg: usize,
    columns: Vec<Vector>,
}

impl MatrixMap {
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    /// `entries[i][j]`: coefficient of codomain basis monomial `j` in the
    /// image of domain basis monomial `i`, printed in the scalar grammar.
    pub fn entries(&self) -> Vec<Vec<String>> {
        self.columns
            .iter()
            .map(|img| {
                (0..=self.max_deg)
                    .flat_map(|k| Component::BOTH.map(|c| img.component(c).coeff(k).to_string()))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapRule {
    Builtin(Builtin),
    Matrix(MatrixMap),
}

/// A linear map between two module carriers, defined on the subspace
/// `domain_predicate` of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    domain: ModuleSpec,
    codomain: ModuleSpec,
    domain_predicate: SubmodulePredicate,
    image_predicate: SubmodulePredicate,
    rule: MapRule,
}

fn half() -> Scalar {
    Scalar::from_ratio(1, 2)
}

fn sqrt2_over_2() -> Scalar {
    Scalar::sqrt2().scale(&QuadRat::from_ratio(1, 2))
}

fn root_of(lambda: &Lambda) -> Result<Unit, Error> {
    lambda.sqrt().cloned().ok_or(Error::HalfPowerUnavailable)
}

impl LinearMap {
    fn builtin(domain: ModuleSpec, codomain: ModuleSpec, pred: SubmodulePredicate, b: Builtin) -> Self {
        let image_predicate = SubmodulePredicate::full(codomain.family());
        LinearMap { domain, codomain, domain_predicate: pred, image_predicate, rule: MapRule::Builtin(b) }
    }

    /// φ: Ξ ⊂ Ω_R(λ,0) → Π(Ω_R(λ,½)), with λ taken from `base`.
    pub fn small_phi(base: &ModuleSpec) -> Result<Self, Error> {
        expect_family(Family::Ramond, base.family())?;
        Ok(LinearMap::builtin(
            base.clone().with_alpha(Scalar::zero()),
            base.clone().with_alpha(half()).parity_shifted(),
            SubmodulePredicate::xi(),
            Builtin::SmallPhi,
        ))
    }

    /// ψ: Γ ⊂ Ω_NS(λ,0) → Π(Ω_NS(λ,½)); needs √λ.
    pub fn psi(base: &ModuleSpec) -> Result<Self, Error> {
        expect_family(Family::NeveuSchwarz, base.family())?;
        root_of(base.lambda())?;
        Ok(LinearMap::builtin(
            base.clone().with_alpha(Scalar::zero()),
            base.clone().with_alpha(half()).parity_shifted(),
            SubmodulePredicate::gamma(),
            Builtin::Psi,
        ))
    }

    /// Φ: Ω_NS(λ,α) → Ω_R(√λ,α) with the Ramond side restricted through σ.
    pub fn phi(base: &ModuleSpec) -> Result<Self, Error> {
        expect_family(Family::NeveuSchwarz, base.family())?;
        let root = root_of(base.lambda())?;
        let codomain = ModuleSpec::symbolic(Family::Ramond)
            .with_lambda(Lambda::from_unit(root))
            .with_alpha(base.alpha().clone())
            .restricted()?;
        Ok(LinearMap::builtin(base.clone(), codomain, SubmodulePredicate::full(Family::NeveuSchwarz), Builtin::Phi))
    }

    /// The identity of `spec`.
    pub fn identity(spec: &ModuleSpec) -> Self {
        LinearMap::identity_between(spec, spec).expect("same carrier")
    }

    /// The identity of the underlying space, between two structures on the
    /// same carrier.
    pub fn identity_between(domain: &ModuleSpec, codomain: &ModuleSpec) -> Result<Self, Error> {
        expect_family(domain.family(), codomain.family())?;
        Ok(LinearMap::builtin(
            domain.clone(),
            codomain.clone(),
            SubmodulePredicate::full(domain.family()),
            Builtin::Identity,
        ))
    }

    pub fn domain(&self) -> &ModuleSpec {
        &self.domain
    }

    pub fn codomain(&self) -> &ModuleSpec {
        &self.codomain
    }

    pub fn domain_predicate(&self) -> &SubmodulePredicate {
        &self.domain_predicate
    }

    /// The subspace of the codomain that the map hits bijectively.
    pub fn image_predicate(&self) -> &SubmodulePredicate {
        &self.image_predicate
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    pub fn parity(&self) -> Parity {
        match &self.rule {
            MapRule::Builtin(_) => Parity::Even,
            MapRule::Matrix(m) => m.parity,
        }
    }

    /// The declared inverse of a builtin map.
    pub fn inverse(&self) -> Option<LinearMap> {
        let MapRule::Builtin(b) = self.rule else {
            return None;
        };
        let inv = match b {
            Builtin::Phi => Builtin::PhiInverse,
            Builtin::PhiInverse => Builtin::Phi,
            Builtin::SmallPhi => Builtin::SmallPhiInverse,
            Builtin::SmallPhiInverse => Builtin::SmallPhi,
            Builtin::Psi => Builtin::PsiInverse,
            Builtin::PsiInverse => Builtin::Psi,
            Builtin::Identity => Builtin::Identity,
        };
        Some(LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            domain_predicate: self.image_predicate,
            image_predicate: self.domain_predicate,
            rule: MapRule::Builtin(inv),
        })
    }

    /// Images of the domain basis monomials of degree ≤ `max_deg` that lie
    /// in the domain predicate.
    pub fn images(&self, max_deg: usize) -> Result<Vec<(Vector, Vector)>, Error> {
        labelled_basis(&self.domain_predicate, &self.domain, max_deg)
            .into_iter()
            .map(|v| apply_map(self, &v).map(|img| (v, img)))
            .collect()
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match &self.rule {
            MapRule::Builtin(b) => b.to_string(),
            MapRule::Matrix(m) => format!("matrix[{:?}, degree <= {}]", m.parity, m.max_deg),
        };
        write!(f, "{name}: ")?;
        if self.domain_predicate.name() != crate::structure::PredicateName::FullSpace {
            write!(f, "{} in ", self.domain_predicate)?;
        }
        write!(f, "{} -> {}", self.domain, self.codomain)
    }
}

/// Basis monomials of `p`, labelled for the carrier of `spec` (flipped
/// under Π).
fn labelled_basis(p: &SubmodulePredicate, spec: &ModuleSpec, max_deg: usize) -> Vec<Vector> {
    predicate_basis(p, max_deg)
        .into_iter()
        .map(|v| if spec.is_parity_shifted() { v.parity_flip() } else { v })
        .collect()
}

fn expect_family(expected: Family, found: Family) -> Result<(), Error> {
    if expected != found {
        return Err(Error::FamilyMismatch { expected, found });
    }
    Ok(())
}

fn vector(family: Family, even: VarPoly, odd: VarPoly, pi: bool) -> Vector {
    let v = Vector::new(family, even, odd).expect("variables match the family");
    if pi {
        v.parity_flip()
    } else {
        v
    }
}

/// Applies `m` to `v`.
pub fn apply_map(m: &LinearMap, v: &Vector) -> Result<Vector, Error> {
    expect_family(m.domain.family(), v.family())?;
    let pi = m.codomain.is_parity_shifted();
    let (ev, ov) = component_vars(m.codomain.family());
    let out = match &m.rule {
        MapRule::Builtin(Builtin::Identity) => vector(ev_family(&m.codomain), v.even().clone(), v.odd().clone(), pi),
        MapRule::Builtin(Builtin::SmallPhi) => {
            let f = v
                .even()
                .div_var()
                .ok_or_else(|| Error::NotInSubmodule(format!("{v} has an even constant term, so it is not in Xi")))?;
            vector(Family::Ramond, v.odd().clone(), f, pi)
        }
        MapRule::Builtin(Builtin::SmallPhiInverse) => {
            vector(Family::Ramond, v.odd().mul_var_power(1), v.even().clone(), pi)
        }
        MapRule::Builtin(Builtin::Psi) => {
            let rho = root_of(m.domain.lambda())?.to_scalar();
            let f = v.even().div_var().ok_or_else(|| {
                Error::NotInSubmodule(format!("{v} has an even constant term, so it is not in Gamma"))
            })?;
            // 1/(√2·ρ) = (√2/2)·ρ⁻¹
            let rho_inv = root_of(m.domain.lambda())?.inv().to_scalar();
            let even = v.odd().retag(ev).scale(&(&rho * &sqrt2_over_2()));
            let odd = f.retag(ov).scale(&(&rho_inv * &sqrt2_over_2()));
            vector(Family::NeveuSchwarz, even, odd, pi)
        }
        MapRule::Builtin(Builtin::PsiInverse) => {
            let root = root_of(m.codomain.lambda())?;
            let w = Scalar::sqrt2();
            let even = v.odd().retag(ev).mul_var_power(1).scale(&(&w * &root.to_scalar()));
            let odd = v.even().retag(ov).scale(&(&w * &root.inv().to_scalar()));
            vector(Family::NeveuSchwarz, even, odd, pi)
        }
        MapRule::Builtin(Builtin::Phi) => {
            let rho = root_of(m.domain.lambda())?.to_scalar();
            let even = v.even().retag(VarTag::T).scale_var(&half());
            let odd = v.odd().retag(VarTag::T).scale_var(&half()).scale(&(&rho * &sqrt2_over_2()));
            vector(Family::Ramond, even, odd, pi)
        }
        MapRule::Builtin(Builtin::PhiInverse) => {
            let root = root_of(m.codomain.lambda())?;
            let two = Scalar::from_int(2);
            let even = v.even().retag(ev).scale_var(&two);
            let odd = v.odd().retag(ov).scale_var(&two).scale(&(&Scalar::sqrt2() * &root.inv().to_scalar()));
            vector(Family::NeveuSchwarz, even, odd, pi)
        }
        MapRule::Matrix(mat) => {
            if v.degree().is_some_and(|d| d > mat.max_deg) {
                return Err(Error::DegreeOverflow { degree: v.degree().unwrap_or(0), cap: mat.max_deg });
            }
            let mut acc = m.codomain.zero();
            for (idx, col) in mat.columns.iter().enumerate() {
                let (k, c) = (idx / 2, Component::BOTH[idx % 2]);
                let coef = v.component(c).coeff(k);
                if !coef.is_zero() {
                    acc = acc.try_add(&col.scale(&coef))?;
                }
            }
            acc
        }
    };
    Ok(out)
}

fn ev_family(spec: &ModuleSpec) -> Family {
    spec.family()
}

/// Checks `m(g·v) = (−1)^{|g||m|} g·m(v)` for every generator with
/// |index| ≤ `window` and every domain basis monomial of degree ≤ `max_deg`.
/// Builtin maps are also checked to be bijective on that range through
/// their declared inverses.
pub fn verify_intertwiner(m: &LinearMap, window: i64, max_deg: usize) -> Result<VerificationReport, Error> {
    expect_family(m.domain.generator_family(), m.codomain.generator_family())?;
    let gens = basis(m.domain.generator_family(), window);
    let dom_basis = labelled_basis(&m.domain_predicate, &m.domain, max_deg);
    let bound = match &m.rule {
        MapRule::Matrix(mat) => Some(mat.max_deg),
        MapRule::Builtin(_) => None,
    };
    let items: Vec<(Generator, Vector)> =
        gens.iter().flat_map(|g| dom_basis.iter().map(move |v| (*g, v.clone()))).collect();
    let map_parity = m.parity();
    let mut report = VerificationReport::new("intertwiner").param("map", m).window(window).max_deg(max_deg).sweep(
        &items,
        |(g, v)| {
            let inputs = format!("{g} on {v}");
            let run = || -> Result<Option<(Vector, Vector)>, Error> {
                let gv = act(*g, v, &m.domain)?;
                if bound.is_some_and(|b| gv.degree().is_some_and(|d| d > b)) {
                    return Ok(None);
                }
                let lhs = apply_map(m, &gv)?;
                let sign = Scalar::from_int(koszul_sign(g.parity(), map_parity));
                let rhs = act(*g, &apply_map(m, v)?, &m.codomain)?.scale(&sign);
                Ok(Some((lhs, rhs)))
            };
            match run() {
                Ok(Some((lhs, rhs))) => (lhs != rhs).then(|| Witness::new(inputs, &lhs, &rhs)),
                Ok(None) => None,
                Err(e) => Some(Witness::error(inputs, e)),
            }
        },
    );
    if let Some(inv) = m.inverse() {
        let back = VerificationReport::new("left-inverse").sweep(&dom_basis, |v| {
            let inputs = format!("inverse after map on {v}");
            match apply_map(m, v).and_then(|w| apply_map(&inv, &w)) {
                Ok(round) => (round != *v).then(|| Witness::new(inputs, &round, v)),
                Err(e) => Some(Witness::error(inputs, e)),
            }
        });
        let cod_basis = labelled_basis(&m.image_predicate, &m.codomain, max_deg);
        let forth = VerificationReport::new("right-inverse").sweep(&cod_basis, |w| {
            let inputs = format!("map after inverse on {w}");
            match apply_map(&inv, w).and_then(|v| apply_map(m, &v)) {
                Ok(round) => (round != *w).then(|| Witness::new(inputs, &round, w)),
                Err(e) => Some(Witness::error(inputs, e)),
            }
        });
        report.absorb(&back);
        report.absorb(&forth);
        report = report
            .note(format!("bijective on degree <= {max_deg}: {} round trips checked", back.checked + forth.checked));
    }
    Ok(report)
}

fn coords_up_to(v: &Vector, max_deg: usize) -> Result<Vec<QuadRat>, Error> {
    let mut out = vec![QuadRat::zero(); 2 * (max_deg + 1)];
    for c in Component::BOTH {
        for (k, coef) in v.component(c).coeffs().iter().enumerate() {
            if k > max_deg {
                return Err(Error::DegreeOverflow { degree: k, cap: max_deg });
            }
            out[2 * k + c as usize] = coef
                .as_constant()
                .ok_or_else(|| Error::NotSpecialized(format!("coefficient {coef} is not a number")))?;
        }
    }
    Ok(out)
}

/// Finds a basis of all parity-homogeneous linear maps from the degree ≤
/// `max_deg` part of `a` into the degree ≤ `max_deg` part of `b` that
/// commute with every generator of |index| ≤ `window` wherever both sides
/// are defined. Both modules must be specialized. An empty result means
/// there is no intertwiner at this truncation.
pub fn intertwiner_search(
    a: &ModuleSpec,
    b: &ModuleSpec,
    window: i64,
    max_deg: usize,
) -> Result<Vec<LinearMap>, Error> {
    for spec in [a, b] {
        if !spec.is_specialized() {
            return Err(Error::NotSpecialized(format!("intertwiner search needs concrete parameters, got {spec}")));
        }
    }
    expect_family(a.generator_family(), b.generator_family())?;
    if max_deg >= DEGREE_CAP {
        return Err(Error::DegreeOverflow { degree: max_deg + 1, cap: DEGREE_CAP });
    }
    let gens = basis(a.generator_family(), window);
    let dom: Vec<Vector> = monomial_basis(a.family(), max_deg)
        .into_iter()
        .map(|v| if a.is_parity_shifted() { v.parity_flip() } else { v })
        .collect();
    let cod: Vec<Vector> = monomial_basis(b.family(), max_deg)
        .into_iter()
        .map(|v| if b.is_parity_shifted() { v.parity_flip() } else { v })
        .collect();
    let wide = max_deg + 1;
    let width = 2 * (wide + 1);

    // Generator images, as coordinates: g·u in A (only those staying below
    // the bound are constraints) and g·w in B (one degree of headroom).
    let dom_images: Vec<Vec<Option<Vec<QuadRat>>>> = gens
        .par_iter()
        .map(|g| {
            dom.iter()
                .map(|u| {
                    let gu = act(*g, u, a)?;
                    Ok(match gu.degree() {
                        Some(d) if d > max_deg => None,
                        _ => Some(coords_up_to(&gu, max_deg)?),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<_, _>>()?;
    let cod_images: Vec<Vec<Vec<QuadRat>>> = gens
        .par_iter()
        .map(|g| cod.iter().map(|w| coords_up_to(&act(*g, w, b)?, wide)).collect::<Result<Vec<_>, Error>>())
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    for map_parity in [Parity::Even, Parity::Odd] {
        // Unknown X[u][w] for each domain monomial u and each codomain
        // monomial w whose parity is parity(u) + map_parity.
        let mut unknown = vec![vec![None; cod.len()]; dom.len()];
        let mut n = 0usize;
        for (i, u) in dom.iter().enumerate() {
            let target = u.parity().expect("monomial").plus(map_parity);
            for (j, w) in cod.iter().enumerate() {
                if w.parity() == Some(target) {
                    unknown[i][j] = Some(n);
                    n += 1;
                }
            }
        }
        let rows: Vec<Vec<QuadRat>> = gens
            .par_iter()
            .enumerate()
            .flat_map_iter(|(gi, g)| {
                let sign = QuadRat::from_int(koszul_sign(g.parity(), map_parity));
                let unknown = &unknown;
                let dom_images = &dom_images;
                let cod_images = &cod_images;
                let n_cod = cod.len();
                (0..dom.len()).flat_map(move |i| {
                    let mut rows = Vec::new();
                    let Some(gu) = &dom_images[gi][i] else {
                        return rows;
                    };
                    // X(g·u) − sign·g·X(u), one row per codomain coordinate.
                    for coord in 0..width {
                        let mut row = vec![QuadRat::zero(); n];
                        if coord < n_cod {
                            for (k, c) in gu.iter().enumerate() {
                                if let (false, Some(x)) = (c.is_zero(), unknown[k][coord]) {
                                    row[x] = &row[x] + c;
                                }
                            }
                        }
                        for (j, x) in unknown[i].iter().enumerate() {
                            let Some(x) = x else { continue };
                            let e = &cod_images[gi][j][coord];
                            if !e.is_zero() {
                                row[*x] = &row[*x] - &(&sign * e);
                            }
                        }
                        if row.iter().any(|r| !r.is_zero()) {
                            rows.push(row);
                        }
                    }
                    rows
                })
            })
            .collect();
        let mut reducer = RowReducer::new(n);
        for row in &rows {
            if reducer.rank() == n {
                break;
            }
            reducer.insert(row);
        }
        for sol in reducer.nullspace() {
            let columns = (0..dom.len())
                .map(|i| {
                    let mut img = b.zero();
                    for (j, x) in unknown[i].iter().enumerate() {
                        if let Some(x) = x {
                            if !sol[*x].is_zero() {
                                img = img.try_add(&cod[j].scale(&Scalar::constant(sol[*x].clone())))?;
                            }
                        }
                    }
                    Ok(img)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            out.push(LinearMap {
                domain: a.clone(),
                codomain: b.clone(),
                domain_predicate: SubmodulePredicate::full(a.family()),
                image_predicate: SubmodulePredicate::full(b.family()),
                rule: MapRule::Matrix(MatrixMap { parity: map_parity, max_deg, columns }),
            });
        }
    }
    Ok(out)
}

/// Whether two maps agree up to one nonzero constant factor on the domain
/// basis monomials of degree ≤ `max_deg`.
pub fn proportional(m1: &LinearMap, m2: &LinearMap, max_deg: usize) -> Result<bool, Error> {
    let i1 = m1.images(max_deg)?;
    let i2 = m2.images(max_deg)?;
    if i1.len() != i2.len() {
        return Ok(false);
    }
    let width = max_deg + 1;
    let mut ratio: Option<QuadRat> = None;
    for ((_, a), (_, b)) in i1.iter().zip(&i2) {
        let ca = coords_up_to(a, width)?;
        let cb = coords_up_to(b, width)?;
        for (x, y) in ca.iter().zip(&cb) {
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = x * &y.inv().expect("nonzero");
                    match &ratio {
                        None => ratio = Some(r),
                        Some(r0) if *r0 == r => {}
                        Some(_) => return Ok(false),
                    }
                }
                _ => return Ok(false),
            }
        }
    }
    Ok(ratio.is_some())
}

/// Convenience for components: the variable tags of a family.
pub fn vars(family: Family) -> (VarTag, VarTag) {
    component_vars(family)
}
