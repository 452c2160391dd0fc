//! Exact verification and numerical simulation of the Neumann-like family of
//! integrable systems on `T*S^2`.
//!
//! - [`poly`]: exact sparse polynomials over `(X, M, a)` and the abstract `(U, V)` ring
//! - [`e3`]: the e(3) Lie–Poisson bracket, Casimirs, rotation fields, classical checks
//! - [`potentials`]: the `(U_n, V_n)` family, assembled systems, rival-family comparison
//! - [`dynamics`]: adaptive Runge–Kutta integration on the orbit with drift ledger
//! - [`quantum`]: operator checks on the sphere quotient ring
//! - [`report`]: JSON report shapes shared with the CLI

pub mod dynamics;
pub mod e3;
pub mod error;
pub mod par;
pub mod poly;
pub mod potentials;
pub mod quantum;
pub mod report;

pub use error::VerifyError;
