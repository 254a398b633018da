//! Complete families of multiplicative character sums modulo a prime.
//!
//! For an odd prime `p` the crate builds, for every Dirichlet character at
//! once, the Kloosterman-type sum `K(χ)`, Gauss and Jacobi sums and
//! hyper-Kloosterman sums. Each family costs one length `p-1` transform.
//! On top of those it computes moments, L-value weighted moments and
//! equidistribution statistics.
//!
//! Start with the programs in `examples/`. The `charsum` binary wraps the
//! same calls for batch runs.

pub mod arith;
pub mod cli;
pub mod equidist;
pub mod error;
pub mod expsums;
pub mod lvalues;
pub mod moments;
pub mod reduce;
pub mod special;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
