//! High-precision evaluation of the q-series functions `g` and `h`, the
//! named families built from them, Jacobi theta functions, and a harness
//! that checks their scaled `q -> 1` asymptotics.
//!
//! Every magnitude is carried in the log domain so that values such as
//! `exp(8e5)` survive intermediate steps. Phases are restricted to quarter
//! turns: each value is a real multiple of `1`, `i`, `-1` or `-i`.

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod numkernel;
pub mod qpochhammer;
pub mod qseries;
pub mod theta;

pub use error::{Error, Result};
pub use numkernel::{LogComplexValue, LogRealValue, Precision, Sign, Tolerance};

