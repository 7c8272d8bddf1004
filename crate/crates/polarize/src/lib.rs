//! Exact tools for divisor-class pullback identities on abelian surfaces
//! with complex multiplication.
//!
//! The crate has three layers:
//!
//! * [`rings`] — exact arithmetic in the cyclotomic orders `Z[i]`, `Z[ζ6]`
//!   and `Z[ζ5]`, with norms and a complete root-of-unity decision.
//! * [`calculus`] — a symbolic calculus for pullback classes `[φ]*D` of a
//!   symmetric divisor modulo theorem-of-the-cube relations and declared
//!   unit invariances, built on exact integer lattice algebra ([`lattice`]).
//!   It decides linear-equivalence identities, produces polarization
//!   scalars, refutation certificates and the root-of-unity criterion for
//!   diagonal preperiodicity.
//! * [`jacobian`] — Cantor's algorithm and CM endomorphism action on
//!   Jacobians of genus-2 curves `y² = f(x)` (`deg f = 5`) over small prime
//!   fields, corroborating the symbolic results at point level.
//!
//! [`parse`] supplies the surface syntax (`"[2+i]*D ~ 5 D"`), and
//! [`scenario`] bundles the built-in verification scenarios behind the
//! `polarize` command-line tool.

pub mod calculus;
pub mod jacobian;
pub mod lattice;
pub mod parse;
pub mod report;
pub mod rings;
pub mod scenario;

pub use calculus::{
    diagonal_preperiodic, CalculusContext, CalculusError, ClassVector, IdentityVerdict,
    RefutationCertificate,
};
pub use jacobian::{curve_validate, CurveError, CurveParams, JacobianContext, MumfordDivisor};
pub use parse::{parse_identity, parse_ring_element, ParseError, ParsedIdentity};
pub use report::Report;
pub use rings::{ring_make, RingElement, RingError, RingKind, RingSpec};
pub use scenario::{
    jacobian_check, run_scenario, verify_file, RunOptions, Scenario, ScenarioName, WorkbenchError,
};
