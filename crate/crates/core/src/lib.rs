//! Exact characters of self-dual vertex operator superalgebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`scalar`] and [`qseries`]: exact truncated `q`-series over ℚ(√2);
//! * [`modchar`]: the named series (fermion characters, vacuum and Verma
//!   characters, `j`, McKay–Thompson series);
//! * [`svoa`]: fitting characters in the `χ_{1/2}` basis, shadows, primaries;
//! * [`feasibility`] and [`bounds`]: integer feasibility with replayable
//!   certificates and the minimal-weight verifiers built on it;
//! * [`monster`]: monster-module bookkeeping at central charge 48.

pub mod bounds;
pub mod error;
pub mod feasibility;
pub mod halfint;
pub mod modchar;
pub mod monster;
pub mod qseries;
pub mod scalar;
pub mod svoa;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use qseries::{PrecisionPolicy, QSeries, Var};
pub use scalar::Scalar;
