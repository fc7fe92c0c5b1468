//! Exact symbolic computation for a two-parameter quantum Heisenberg
//! algebra: the algebra on generators x, y, z with relations
//! `zx = p^-1 xz`, `zy = p yz`, `yx = q xy + z` over the rational-function
//! field in `p^(1/2)` and `q^(1/2)` adjoined to the Gaussian rationals.
//!
//! The crate provides:
//! - `params`: the exact coefficient field, quantum integers, and
//!   specialization homomorphisms (one-parameter collapse, numeric values,
//!   quotient rings at roots of unity);
//! - `freealg`: free-algebra terms, an expression parser, a quadratic
//!   rewriting engine, and an overlap/confluence checker;
//! - `hpq`: PBW-basis arithmetic, named elements, centrality and normality
//!   checks, morphism verification, and the graded-twist product;
//! - `gwa`: generalized Weyl algebras over polynomial and Laurent base
//!   rings, with the constructions used by the simple quotients;
//! - `localize`: the localization at powers of x and z, Virasoro-type
//!   generators, and inner-automorphism identities;
//! - `reps`: exact Fock representations, numeric truncated oscillator
//!   matrices, and the integer-indexed module with its descent argument;
//! - `report` / `suites`: structured verification records and the named
//!   check suites behind the CLI.

mod engine;
pub mod freealg;
pub mod gwa;
pub mod hpq;
pub mod localize;
pub mod params;
pub mod report;
pub mod reps;
pub mod suites;

pub use freealg::{
    check_overlaps, hpq_rules, Alphabet, FreeElement, Letter, Overlap, RewriteRule,
    RewriteSystem, Word,
};
pub use gwa::{
    aprs_as_gwa, apq_indep_gwa, hpq_as_gwa, tensor_power, Aprs, BaseAuto, BasePoly, BaseRing,
    GWAData, GWAElement, RelationCheck,
};
pub use hpq::{AlgebraMorphism, HpqRing, PBWElement, PowerSide};
pub use localize::{LocalElement, LocalRing, TorusElement};
pub use reps::{
    build_oscillator, verify_oscillator, BModule, BOp, FockOp, FockSpace, FockVector,
    OperatorExpr, OscillatorMatrices, ZModuleVector,
};
pub use params::{
    Coefficient, GaussianRational, LaurentScalar, QuotientRing, Scalar, SpecError, SpecValue,
    Specialization, TScalar, UniPoly,
};
pub use report::{CheckEntry, ReportError, VerificationReport};
pub use suites::{SuiteBounds, SuiteConfig, SuiteName, TwistChoice};
