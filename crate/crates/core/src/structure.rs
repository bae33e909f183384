//! Submodule structure of Ω_R and Ω_NS.
//!
//! At α = 0 both families have a unique proper submodule: Ξ (Ramond) and Γ
//! (Neveu-Schwarz), consisting of the vectors whose even component has zero
//! constant term. This module checks closure of those subspaces, probes
//! cyclic submodules by breadth-first search at concrete parameters, and
//! checks freeness over the Cartan part.
//!
//! Everything produced by [`cyclic_span`] is finite-truncation evidence: it
//! can show that the constant vector is reachable from a seed, never that a
//! module is simple.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{basis, Family, Generator};
use crate::error::Error;
use crate::linalg::RowReducer;
use crate::modules::{act, monomial_basis, ActionVariant, Component, ModuleSpec, Vector};
use crate::poly::VarPoly;
use crate::report::{Status, VerificationReport, Witness};
use crate::scalar::{QuadRat, Scalar, SpecPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PredicateName {
    Xi,
    Gamma,
    FullSpace,
}

/// A linear subspace of a carrier, described by a membership rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubmodulePredicate {
    name: PredicateName,
    family: Family,
}

impl SubmodulePredicate {
    /// Ξ = x²·C[x²] ⊕ x·C[x²] inside Ω_R(λ,0).
    pub fn xi() -> Self {
        SubmodulePredicate { name: PredicateName::Xi, family: Family::Ramond }
    }

    /// Γ = x·C[x] ⊕ C[y] inside Ω_NS(λ,0).
    pub fn gamma() -> Self {
        SubmodulePredicate { name: PredicateName::Gamma, family: Family::NeveuSchwarz }
    }

    pub fn full(family: Family) -> Self {
        SubmodulePredicate { name: PredicateName::FullSpace, family }
    }

    /// The proper submodule at α = 0 of a family's carrier.
    pub fn proper_for(family: Family) -> Self {
        match family {
            Family::Ramond => SubmodulePredicate::xi(),
            Family::NeveuSchwarz => SubmodulePredicate::gamma(),
        }
    }

    pub fn name(&self) -> PredicateName {
        self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Membership without the family check.
    pub(crate) fn holds(&self, v: &Vector) -> bool {
        match self.name {
            PredicateName::FullSpace => true,
            PredicateName::Xi | PredicateName::Gamma => v.even().constant_term().is_zero(),
        }
    }
}

impl fmt::Display for SubmodulePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            PredicateName::Xi => f.write_str("Xi"),
            PredicateName::Gamma => f.write_str("Gamma"),
            PredicateName::FullSpace => write!(f, "full({})", self.family),
        }
    }
}

pub fn membership(p: &SubmodulePredicate, v: &Vector) -> Result<bool, Error> {
    if p.family != v.family() {
        return Err(Error::FamilyMismatch { expected: p.family, found: v.family() });
    }
    Ok(p.holds(v))
}

/// Basis monomials of degree ≤ `max_deg` that lie in `p`.
pub fn predicate_basis(p: &SubmodulePredicate, max_deg: usize) -> Vec<Vector> {
    monomial_basis(p.family, max_deg).into_iter().filter(|v| p.holds(v)).collect()
}

/// Checks that `p` is stable under every generator with |index| ≤ `window`
/// on basis monomials of degree ≤ `max_deg`, and that every `g·1` lands in
/// `p` (so the quotient by `p` is the trivial one-dimensional module).
pub fn check_closure(
    p: &SubmodulePredicate,
    spec: &ModuleSpec,
    window: i64,
    max_deg: usize,
) -> Result<VerificationReport, Error> {
    if spec.family() != p.family {
        return Err(Error::FamilyMismatch { expected: p.family, found: spec.family() });
    }
    if !spec.alpha().is_zero() {
        return Err(Error::InvalidArgument(format!("closure of {p} needs alpha = 0, got alpha = {}", spec.alpha())));
    }
    let gens = basis(spec.generator_family(), window);
    let monos = predicate_basis(p, max_deg);
    let items: Vec<(Generator, Vector)> =
        gens.iter().flat_map(|g| monos.iter().map(move |v| (*g, v.clone()))).collect();
    let check = |g: &Generator, v: &Vector| -> Option<Witness> {
        let inputs = format!("{g} on {v}");
        match act(*g, v, spec) {
            Ok(out) if p.holds(&out) => None,
            Ok(out) => Some(Witness::new(inputs, out, format!("not in {p}"))),
            Err(e) => Some(Witness::error(inputs, e)),
        }
    };
    let mut report = VerificationReport::new("submodule-closure")
        .param("submodule", p)
        .param("module", spec)
        .window(window)
        .max_deg(max_deg)
        .sweep(&items, |(g, v)| check(g, v));
    let one = spec.one();
    let quotient = VerificationReport::new("trivial-quotient").sweep(&gens, |g| check(g, &one));
    report.absorb(&quotient);
    Ok(report.note(format!("{} generators map {} into {p}", quotient.checked, Vector::one(spec.family()))))
}

fn coord_index(k: usize, c: Component) -> usize {
    2 * k
        + match c {
            Component::Even => 0,
            Component::Odd => 1,
        }
}

/// Coordinates of a vector with constant coefficients, up to degree
/// `max_deg`; `Ok(None)` when the vector has larger degree.
fn to_coords(v: &Vector, max_deg: usize) -> Result<Option<Vec<QuadRat>>, Error> {
    if v.degree().is_some_and(|d| d > max_deg) {
        return Ok(None);
    }
    let mut out = vec![QuadRat::zero(); 2 * (max_deg + 1)];
    for c in Component::BOTH {
        for (k, coef) in v.component(c).coeffs().iter().enumerate() {
            out[coord_index(k, c)] = coef
                .as_constant()
                .ok_or_else(|| Error::NotSpecialized(format!("coefficient {coef} of {v} is not a number")))?;
        }
    }
    Ok(Some(out))
}

fn from_coords(family: Family, coords: &[QuadRat]) -> Vector {
    let (ev, ov) = crate::modules::component_vars(family);
    let component = |c: Component| -> Vec<Scalar> {
        coords.chunks(2).map(|pair| Scalar::constant(pair[coord_index(0, c)].clone())).collect()
    };
    Vector::new(
        family,
        VarPoly::from_coeffs(ev, component(Component::Even)),
        VarPoly::from_coeffs(ov, component(Component::Odd)),
    )
    .expect("tags match the family")
}

/// The span of a set of specialized vectors, truncated at a degree bound.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    family: Family,
    label: String,
    max_deg: usize,
    reducer: RowReducer,
}

impl SpanBasis {
    pub fn new(family: Family, label: impl Into<String>, max_deg: usize) -> Self {
        SpanBasis { family, label: label.into(), max_deg, reducer: RowReducer::new(2 * (max_deg + 1)) }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn max_deg(&self) -> usize {
        self.max_deg
    }

    pub fn dim(&self) -> usize {
        self.reducer.rank()
    }

    /// Adds `v`; `Ok(false)` when it is dependent or exceeds the degree bound.
    pub fn insert(&mut self, v: &Vector) -> Result<bool, Error> {
        Ok(match to_coords(v, self.max_deg)? {
            Some(c) => self.reducer.insert(&c),
            None => false,
        })
    }

    pub fn contains(&self, v: &Vector) -> Result<bool, Error> {
        Ok(match to_coords(v, self.max_deg)? {
            Some(c) => self.reducer.contains(&c),
            None => false,
        })
    }

    /// The reduced rows as vectors.
    pub fn rows(&self) -> Vec<Vector> {
        self.reducer.rows().iter().map(|r| from_coords(self.family, r)).collect()
    }

    pub fn contains_one(&self) -> bool {
        self.contains(&Vector::one(self.family)).expect("constant vector")
    }
}

fn check_span_inputs(seed: &Vector, spec: &ModuleSpec) -> Result<(), Error> {
    if !spec.is_specialized() {
        return Err(Error::NotSpecialized(format!("cyclic span needs concrete parameters, got {spec}")));
    }
    if seed.is_zero() {
        return Err(Error::InvalidArgument("seed vector must be nonzero".into()));
    }
    if seed.family() != spec.family() {
        return Err(Error::FamilyMismatch { expected: spec.family(), found: seed.family() });
    }
    Ok(())
}

/// Breadth-first search over words in the generators with |index| ≤
/// `window`, up to `max_words` letters. Images above `max_deg` are dropped;
/// only images that enlarge the span are expanded further. Generators are
/// tried in generator order (index ascending, `L` before `G`).
pub fn cyclic_span(
    seed: &Vector,
    spec: &ModuleSpec,
    window: i64,
    max_words: usize,
    max_deg: usize,
) -> Result<SpanBasis, Error> {
    check_span_inputs(seed, spec)?;
    let gens = basis(spec.generator_family(), window);
    let mut span = SpanBasis::new(spec.family(), format!("<{seed}> in {spec}"), max_deg);
    let mut queue = VecDeque::new();
    if span.insert(seed)? {
        queue.push_back((seed.clone(), 0usize));
    }
    while let Some((v, len)) = queue.pop_front() {
        if len >= max_words {
            continue;
        }
        for g in &gens {
            let image = act(*g, &v, spec)?;
            if image.is_zero() || image.degree().is_some_and(|d| d > max_deg) {
                continue;
            }
            if span.insert(&image)? {
                queue.push_back((image, len + 1));
            }
        }
    }
    Ok(span)
}

/// Iterates `span ← span + Σ g·span` until nothing new appears below
/// `max_deg`. Terminates because the truncated space is finite-dimensional.
pub fn span_closure(seed: &Vector, spec: &ModuleSpec, window: i64, max_deg: usize) -> Result<SpanBasis, Error> {
    check_span_inputs(seed, spec)?;
    let gens = basis(spec.generator_family(), window);
    let mut span = SpanBasis::new(spec.family(), format!("closure <{seed}> in {spec}"), max_deg);
    span.insert(seed)?;
    loop {
        let mut grew = false;
        for v in span.rows() {
            for g in &gens {
                let image = act(*g, &v, spec)?;
                if !image.is_zero() && span.insert(&image)? {
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(span);
        }
    }
}

/// The fixed list of evaluation points used for simplicity evidence; every
/// point has α0 ≠ 0.
pub fn default_seed_points() -> Vec<SpecPoint> {
    let pts = [
        (QuadRat::from_int(1), QuadRat::from_int(1)),
        (QuadRat::from_int(2), QuadRat::from_ratio(1, 2)),
        (QuadRat::from_ratio(1, 2), QuadRat::from_int(-1)),
        (QuadRat::from_int(3), QuadRat::from_ratio(-2, 3)),
        (QuadRat::sqrt2(), QuadRat::from_int(2)),
    ];
    pts.into_iter().map(|(q, a)| SpecPoint::new(q, a).expect("q0 != 0")).collect()
}

/// Outcome of a span probe. Serialized as the probe JSON record.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub probe: String,
    pub params: String,
    pub window: i64,
    /// `None` for the span-closure variant.
    pub max_words: Option<usize>,
    pub max_deg: usize,
    pub outcome: Status,
    pub witness_rows: Vec<String>,
    pub evidence_only: bool,
    #[serde(skip)]
    pub seeds_checked: usize,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.outcome != Status::Fail
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = match self.max_words {
            Some(n) => format!("max words {n}"),
            None => "closure".to_string(),
        };
        writeln!(
            f,
            "{}: {} ({} seeds, window {}, {words}, degree <= {})",
            self.probe, self.outcome, self.seeds_checked, self.window, self.max_deg
        )?;
        writeln!(f, "  params = {}", self.params)?;
        if self.evidence_only {
            writeln!(f, "  note: finite truncation; this is evidence, not a proof")?;
        }
        for row in &self.witness_rows {
            writeln!(f, "  witness: {row}")?;
        }
        Ok(())
    }
}

/// All basis monomials of degree ≤ `seed_deg`.
pub fn monomial_seeds(family: Family, seed_deg: usize) -> Vec<Vector> {
    monomial_basis(family, seed_deg)
}

/// Simplicity evidence: from every seed the cyclic span must reach the
/// constant vector `1`, which generates the whole module.
pub fn probe_simplicity(
    spec: &ModuleSpec,
    seeds: &[Vector],
    window: i64,
    max_words: usize,
    max_deg: usize,
) -> Result<ProbeReport, Error> {
    simplicity_report(spec, seeds, window, Some(max_words), max_deg, |seed| {
        cyclic_span(seed, spec, window, max_words, max_deg)
    })
}

/// As [`probe_simplicity`], with the span-closure fixpoint in place of the
/// word search. Meant for small degree caps.
pub fn probe_simplicity_closure(
    spec: &ModuleSpec,
    seeds: &[Vector],
    window: i64,
    max_deg: usize,
) -> Result<ProbeReport, Error> {
    simplicity_report(spec, seeds, window, None, max_deg, |seed| span_closure(seed, spec, window, max_deg))
}

fn simplicity_report<F>(
    spec: &ModuleSpec,
    seeds: &[Vector],
    window: i64,
    max_words: Option<usize>,
    max_deg: usize,
    span_of: F,
) -> Result<ProbeReport, Error>
where
    F: Fn(&Vector) -> Result<SpanBasis, Error> + Sync,
{
    let outcomes: Vec<Result<Option<String>, Error>> = seeds
        .par_iter()
        .map(|seed| {
            let span = span_of(seed)?;
            Ok((!span.contains_one()).then(|| format!("seed {seed}: span of dimension {} misses 1", span.dim())))
        })
        .collect();
    let mut witness_rows = Vec::new();
    for o in outcomes {
        if let Some(w) = o? {
            witness_rows.push(w);
        }
    }
    Ok(ProbeReport {
        probe: if max_words.is_some() { "simplicity" } else { "simplicity (span closure)" }.into(),
        params: spec.to_string(),
        window,
        max_words,
        max_deg,
        outcome: if witness_rows.is_empty() { Status::Evidence } else { Status::Fail },
        witness_rows,
        evidence_only: true,
        seeds_checked: seeds.len(),
    })
}

/// At α = 0: the cyclic span of every seed inside `p` must stay inside `p`.
/// Any escaping row is reported.
pub fn probe_submodule_span(
    p: &SubmodulePredicate,
    spec: &ModuleSpec,
    seeds: &[Vector],
    window: i64,
    max_words: usize,
    max_deg: usize,
) -> Result<ProbeReport, Error> {
    let mut witness_rows = Vec::new();
    for seed in seeds {
        if !membership(p, seed)? {
            return Err(Error::NotInSubmodule(format!("seed {seed} is not in {p}")));
        }
        let span = cyclic_span(seed, spec, window, max_words, max_deg)?;
        for row in span.rows() {
            if !p.holds(&row) {
                witness_rows.push(format!("seed {seed}: row {row} is not in {p}"));
            }
        }
    }
    Ok(ProbeReport {
        probe: format!("submodule-span {p}"),
        params: spec.to_string(),
        window,
        max_words: Some(max_words),
        max_deg,
        outcome: if witness_rows.is_empty() { Status::Evidence } else { Status::Fail },
        witness_rows,
        evidence_only: true,
        seeds_checked: seeds.len(),
    })
}

/// Row reduction over the scalar ring using only unit pivots. Returns the
/// index of the first vector that is dependent or cannot be certified.
fn unit_pivot_rank(vectors: &[Vec<Scalar>]) -> Result<(), (usize, &'static str)> {
    let mut rows: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (p, row) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        if v.iter().all(Scalar::is_zero) {
            return Err((i, "linearly dependent on the earlier vectors"));
        }
        let Some((p, unit)) = v.iter().enumerate().find_map(|(k, x)| x.as_unit().map(|u| (k, u))) else {
            return Err((i, "no unit pivot; independence not certified"));
        };
        let inv = unit.inv().to_scalar();
        let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        rows.push((p, v));
    }
    Ok(())
}

/// Freeness over the Cartan part: for Ramond-generated actions the vectors
/// `L_0^k·1`, `G_0·L_0^k·1`; for Neveu-Schwarz-generated actions
/// `L_0^k·1₀̄`, `L_0^k·1₁̄` (k ≤ `max_deg`) must be a basis of the vectors
/// of degree ≤ `max_deg`.
pub fn freeness_check(spec: &ModuleSpec, max_deg: usize) -> Result<VerificationReport, Error> {
    let fam = spec.family();
    let l0 = Generator::l(spec.generator_family(), 0);
    let (starts, second): (Vec<Vector>, &str) = match spec.generator_family() {
        Family::Ramond => {
            let one = Vector::one(fam);
            let g0_one = act(Generator::ramond_g(0), &one, spec)?;
            (vec![one, g0_one], "G_0")
        }
        Family::NeveuSchwarz => (vec![Vector::one(fam), Vector::monomial(fam, Component::Odd, 0)], "1_odd"),
    };
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for (s, start) in starts.iter().enumerate() {
        let mut v = start.clone();
        for k in 0..=max_deg {
            labels.push(if s == 0 { format!("L_0^{k}*1") } else { format!("L_0^{k}*{second}") });
            vectors.push(v.clone());
            v = act(l0, &v, spec)?;
        }
    }
    let mut report =
        VerificationReport::new("freeness").param("module", spec).param("rank", starts.len()).max_deg(max_deg);
    let mut coords = Vec::new();
    let mut witness = None;
    for (v, label) in vectors.iter().zip(&labels) {
        if v.degree().is_some_and(|d| d > max_deg) {
            witness = Some(Witness::new(label.clone(), v, format!("degree above {max_deg}")));
            break;
        }
        let mut row = vec![Scalar::zero(); 2 * (max_deg + 1)];
        for c in Component::BOTH {
            for (k, coef) in v.component(c).coeffs().iter().enumerate() {
                row[coord_index(k, c)] = coef.clone();
            }
        }
        coords.push(row);
    }
    if witness.is_none() {
        witness = unit_pivot_rank(&coords).err().map(|(i, why)| Witness::new(labels[i].clone(), &vectors[i], why));
    }
    report.record(witness);
    report.checked = vectors.len();
    if spec.variant() != &ActionVariant::Plain {
        report = report.note(format!("action variant {:?}", spec.variant()));
    }
    Ok(report)
}
