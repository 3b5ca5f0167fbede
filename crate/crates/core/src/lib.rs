//! Exact algebra for K-theoretic Q-functions, their duals, and the
//! β-deformed neutral-fermion Fock calculus behind them.

pub mod dualq;
pub mod error;
pub mod fock;
pub mod gq;
pub mod laurent;
pub mod scalar;
pub mod symfun;

pub use error::{KqError, Result};
pub use scalar::{Beta, BetaScalar, Rational};
