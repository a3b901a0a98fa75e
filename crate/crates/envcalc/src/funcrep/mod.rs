//! Function and set representations.

mod epigraph;
mod grid;
mod interval;
mod maxaffine;
mod plconvex;

pub use epigraph::EpigraphSample;
pub use grid::{convex_hull_2d, point_in_polygon, GridFunction, SampledSet};
pub use interval::{Bound, Interval, SubgradientInterval};
pub use maxaffine::{AffinePiece, HalfSpace, MaxAffine};
pub use plconvex::{PLConvex1D, Recession};

use crate::error::Result;
use crate::extreal::{ExtReal, Scalar};
use crate::point::Point;

/// An extended-real-valued function on ℝ^dim.
pub trait Evaluate<S: Scalar> {
    fn dim(&self) -> usize;

    /// Value at `x`; the caller guarantees `x.dim() == self.dim()`.
    fn value(&self, x: &Point<S>) -> ExtReal<S>;

    fn evaluate(&self, x: &Point<S>) -> Result<ExtReal<S>> {
        x.check_dim(self.dim())?;
        Ok(self.value(x))
    }

    /// Never `-inf` and finite somewhere.
    fn is_proper(&self) -> bool;
}

/// Functions whose (ε-)subgradient inequality can be decided exactly over
/// the whole space.
pub trait Subdifferentiable<S: Scalar>: Evaluate<S> {
    /// `f(y) ≥ f(x) + ⟨y−x, x*⟩ − ε` for every `y`. False when `f(x)` is not finite.
    fn eps_subgradient(&self, x: &Point<S>, x_star: &Point<S>, eps: &S) -> bool;

    fn is_subgradient(&self, x: &Point<S>, x_star: &Point<S>) -> bool {
        self.eps_subgradient(x, x_star, &S::zero())
    }

    /// `n` is normal to `dom f` at `x`: `⟨y−x, n⟩ ≤ 0` for every `y ∈ dom f`.
    /// False when `x ∉ dom f`.
    fn is_domain_normal(&self, x: &Point<S>, n: &Point<S>) -> bool;
}

/// Result of [`level_set`] and [`effective_domain`].
#[derive(Clone, Debug, PartialEq)]
pub enum PointSet<S> {
    Interval(Interval<S>),
    Sample(SampledSet<S>),
    Empty,
}

/// `dom f` as an interval (1D piecewise-linear input).
pub fn effective_domain_pl<S: Scalar>(f: &PLConvex1D<S>) -> PointSet<S> {
    PointSet::Interval(f.effective_domain())
}

/// `dom f` as the set of finite-valued grid points.
pub fn effective_domain_grid<S: Scalar>(f: &GridFunction<S>) -> PointSet<S> {
    let s = f.finite_points();
    if s.is_empty() {
        PointSet::Empty
    } else {
        PointSet::Sample(s)
    }
}

/// `{x : f(x) ≤ λ}` for a piecewise-linear function.
pub fn level_set_pl<S: Scalar>(f: &PLConvex1D<S>, lambda: &ExtReal<S>) -> Result<PointSet<S>> {
    Ok(match f.level_set(lambda)? {
        Some(i) => PointSet::Interval(i),
        None => PointSet::Empty,
    })
}

/// `{x : f(x) ≤ λ}` over the listed points of a grid function.
pub fn level_set_grid<S: Scalar>(f: &GridFunction<S>, lambda: &ExtReal<S>) -> Result<PointSet<S>> {
    let s = f.level_set(lambda)?;
    Ok(if s.is_empty() { PointSet::Empty } else { PointSet::Sample(s) })
}
