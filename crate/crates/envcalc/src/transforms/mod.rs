//! Conjugation, closed convex hulls, support functions, indicators and
//! infimal convolution.

mod conjugate;
mod hull;
mod support;

pub use conjugate::{conjugate_brute, conjugate_exact, conjugate_llt};
pub use hull::{biconjugate_exact, biconjugate_grid, cl_conv_dual, cl_conv_grid, cl_conv_grid_1d, cl_conv_pl, Hull};
pub use support::{indicator, inf_conv, inf_conv_pl, support_function};
