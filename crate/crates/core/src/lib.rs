//! Exact computations with the centerless super-Virasoro algebras of Ramond
//! and Neveu-Schwarz type and their non-weight modules Ω(λ,α), whose
//! underlying spaces are free of rank one (Ramond) or two (Neveu-Schwarz)
//! over the polynomial ring in the Cartan element.
//!
//! Scalars live in ℚ(√2)[α][q,q⁻¹] with λ = q², so every check runs with
//! zero tolerance.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod morphisms;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod structure;

pub use algebra::{AlgebraElement, Family, Generator, Kind, Parity};
pub use error::{Error, ParseError, DEGREE_CAP};
pub use modules::{act, act_element, ActionVariant, Component, ModuleSpec, Params, Vector};
pub use morphisms::{apply_map, intertwiner_search, verify_intertwiner, LinearMap};
pub use parse::{parse_expression, Expr};
pub use poly::{HalfInt, VarPoly, VarTag};
pub use report::{Status, VerificationReport, Witness};
pub use scalar::{Lambda, QuadRat, Scalar, SpecPoint, Unit};
pub use structure::{SpanBasis, SubmodulePredicate};
