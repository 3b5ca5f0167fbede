//! Truncated iterated Laurent series and the kernel expansions used by the
//! Pfaffian formulas.

mod block;
mod kernels;

pub use block::{Expansion, LaurentBlock, Window};
pub use kernels::{
    dual_two_point_kernel, f_column, f_table, g_column, g_table, two_point_kernel, KernelCoeffTable,
};
