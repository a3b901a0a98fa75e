//! Convex analysis on desk-scale instances.
//!
//! Functions come in three shapes: exact piecewise-linear convex functions on
//! the line ([`PLConvex1D`] over rationals), extended-real values on finite
//! grids ([`GridFunction`] over `f64`), and suprema of affine pieces
//! ([`MaxAffine`]). On top of these sit conjugation and hulls
//! ([`transforms`]), subdifferential graphs and the Fitzpatrick function
//! ([`operators`]), the upper-envelope family ([`envelopes`]), and a library
//! of executable checks with a counterexample gallery ([`theoremlab`]).

pub mod envelopes;
pub mod error;
pub mod extreal;
pub mod funcrep;
pub mod io;
pub mod operators;
pub mod transforms;
pub mod point;
pub mod theoremlab;

pub use error::{Error, Result};
pub use extreal::{ext_add, ext_inf, ext_sup, Backend, ExtReal, Finite, NegInf, PosInf, Scalar, Q};
pub use funcrep::{Evaluate, GridFunction, MaxAffine, PLConvex1D, Recession, SampledSet, Subdifferentiable};
pub use point::Point;
