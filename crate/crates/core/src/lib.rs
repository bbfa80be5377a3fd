//! Verification toolkit for reductions of the nonlinear wave equation
//! `□u = F(u)` to two-dimensional equations through the ansatz `u = φ(y, z)`.
//!
//! The crate is layered:
//!
//! * [`symbolic`]: expression trees, parser, derivatives, evaluation and the
//!   symbolic-then-sampled zero test every identity check relies on.
//! * [`matrix`] and [`minkowski`]: metric contractions, the d'Alembertian,
//!   mixed Hessians, principal-minor sums and Cayley–Hamilton residuals.
//! * [`reduction`]: reduction profiles, surface-form verification,
//!   classification and the reduced equation.
//! * [`compat`]: compatibility checks for the canonical systems and the
//!   matrix identities on explicit solutions.
//! * [`frame`], [`catalog`], [`lift`], [`problem`] and [`report`]: explicit
//!   solutions, lift verification, problem files and structured reports.

pub mod catalog;
pub mod compat;
mod error;
pub mod frame;
pub mod lift;
pub mod matrix;
pub mod minkowski;
pub mod problem;
pub mod reduction;
pub mod report;
mod space;
pub mod symbolic;

pub use error::{Error, Result};
pub use space::VariableSpace;
pub use symbolic::{parse, Expr, SamplePlan, Var, ZeroVerdict};
