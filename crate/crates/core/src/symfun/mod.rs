//! Partitions and truncated symmetric functions in the power-sum basis.

mod bases;
mod finite;
mod partition;
mod pseries;

pub use bases::{
    exp_z_series, from_deformed_basis, p_beta, p_bracket, q_series, to_deformed_basis, to_deformed_basis_with,
    DeformedBasis, DeformedMonomials,
};
pub use finite::{eval_finite, from_finite, power_sum_monomial_coeff, FinitePoly};
pub use partition::{z_lambda, Partition, StrictPartition};
pub use pseries::PSeries;
