//! Finite-semigroup laboratory for the Kannappan and Van Vleck type
//! functional equations
//!
//! ```text
//! f(x y z0) + mu(y) f(x tau(y) z0) = 2 f(x) f(y)      (Kannappan)
//! mu(y) f(x tau(y) z0) - f(x y z0) = 2 f(x) f(y)      (Van Vleck)
//! ```
//!
//! together with their "variant" forms (`tau(y)` on the left of `x`) and the
//! d'Alembert mu-equations they reduce to. Semigroups are given by Cayley
//! tables, `tau` is an involutive automorphism or anti-automorphism, `mu` is a
//! multiplicative function with `mu(x tau(x)) = 1`, and `z0` is central.
//!
//! The crate builds the closed-form solutions from multiplicative functions
//! ([`families`]), checks every derived identity ([`lemmas`]), and
//! independently recovers all solutions of an instance by linearizing the
//! equation at each base point ([`oracle`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod character;
pub mod cyclotomic;
pub mod equation;
mod error;
pub mod families;
pub mod function;
pub mod lemmas;
pub mod morphism;
pub mod oracle;
pub mod semigroup;

pub use character::{admissible_mus, enumerate_characters, sign_condition, Character, Sign};
pub use cyclotomic::RootOrZero;
pub use equation::{
    ClassMembership, DalembertClass, Equation, EquationSpec, Family, ResidualReport, Setting,
    TauSide,
};
pub use error::{Error, Result};
pub use families::{ClassifiedSolution, Provenance};
pub use function::ComplexFunction;
pub use lemmas::LemmaCheck;
pub use morphism::{enumerate_involutive_morphisms, InvolutiveMorphism, MorphismKind};
pub use oracle::{Comparison, Completeness, OracleResult, Verdict};
pub use semigroup::{CenterSet, ElementProfile, Semigroup, DEFAULT_ORDER_CAP};

pub use num_complex::Complex64;

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance used when deduplicating solution sets.
pub const DEDUP_TOL: f64 = 1e-7;
