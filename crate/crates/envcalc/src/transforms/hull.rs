use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Scalar};
use crate::funcrep::{AffinePiece, Evaluate, GridFunction, MaxAffine, PLConvex1D, Recession};
use crate::point::Point;
use crate::transforms::{conjugate_brute, conjugate_exact};

/// A closed convex hull, exact in 1D and dual-sampled in 2D.
#[derive(Clone, Debug, PartialEq)]
pub enum Hull<S> {
    Exact(PLConvex1D<S>),
    Dual(MaxAffine<S>),
}

impl<S: Scalar> Evaluate<S> for Hull<S> {
    fn dim(&self) -> usize {
        match self {
            Hull::Exact(_) => 1,
            Hull::Dual(m) => m.dim(),
        }
    }

    fn value(&self, x: &Point<S>) -> ExtReal<S> {
        match self {
            Hull::Exact(f) => f.eval(x.x()),
            Hull::Dual(m) => m.eval(x),
        }
    }

    fn is_proper(&self) -> bool {
        match self {
            Hull::Exact(_) => true,
            Hull::Dual(m) => m.is_proper(),
        }
    }
}

/// `cl conv f` of a piecewise-linear convex function: its closure.
pub fn cl_conv_pl<S: Scalar>(f: &PLConvex1D<S>) -> PLConvex1D<S> {
    f.closure()
}

/// Lower convex envelope of the finite 1D samples, `+inf` outside their span.
pub fn cl_conv_grid_1d<S: Scalar>(f: &GridFunction<S>) -> Result<PLConvex1D<S>> {
    if !f.is_proper() {
        return Err(Error::improper("hull of an improper grid function"));
    }
    let hull = f.lower_hull_1d()?;
    let (xs, vs): (Vec<S>, Vec<S>) = hull.into_iter().unzip();
    PLConvex1D::new(xs, vs, Recession::Wall, Recession::Wall)
}

/// `f**` over `dual_grid`: one affine minorant `⟨·, y⟩ − f*(y)` per dual point.
pub fn cl_conv_dual<S: Scalar>(f: &GridFunction<S>, dual_grid: &[Point<S>]) -> Result<MaxAffine<S>> {
    let conj = conjugate_brute(f, dual_grid)?;
    let dim = f.dim();
    let pieces: Vec<AffinePiece<S>> = conj
        .points()
        .iter()
        .zip(conj.values())
        .filter_map(|(y, v)| {
            v.finite().map(|v| AffinePiece { anchor: Point::zeros(dim), slope: y.clone(), level: -v.clone() })
        })
        .collect();
    if pieces.is_empty() {
        return Err(Error::ImproperHull);
    }
    MaxAffine::from_pieces(dim, pieces)
}

/// `cl conv f` of a grid function: exact in 1D, dual-sampled in 2D.
pub fn cl_conv_grid<S: Scalar>(f: &GridFunction<S>, dual_grid: Option<&[Point<S>]>) -> Result<Hull<S>> {
    match (f.dim(), dual_grid) {
        (1, _) => Ok(Hull::Exact(cl_conv_grid_1d(f)?)),
        (_, Some(d)) => Ok(Hull::Dual(cl_conv_dual(f, d)?)),
        (_, None) => Err(Error::precondition("a dual grid is required for 2D hulls")),
    }
}

/// `f**` at every listed point of `f`, through `dual_grid`.
pub fn biconjugate_grid<S: Scalar>(f: &GridFunction<S>, dual_grid: &[Point<S>]) -> Result<GridFunction<S>> {
    let conj = conjugate_brute(f, dual_grid)?;
    if !conj.is_proper() {
        return Err(Error::improper("conjugate is improper on the dual grid"));
    }
    conjugate_brute(&conj, f.points())
}

/// `f** = cl f` for piecewise-linear input.
pub fn biconjugate_exact<S: Scalar>(f: &PLConvex1D<S>) -> Result<PLConvex1D<S>> {
    conjugate_exact(&conjugate_exact(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{Finite, PosInf, Q};
    use crate::point::{linspace, points_1d, product_grid};

    #[test]
    fn spike_is_flattened() {
        let f = GridFunction::sample_1d(&[0.0, 0.5, 1.0], |x: &f64| Finite(if *x == 0.5 { 5.0 } else { 0.0 })).unwrap();
        let h = cl_conv_grid_1d(&f).unwrap();
        assert_eq!(h.eval(&0.5), Finite(0.0));
        assert_eq!(h.eval(&1.5), PosInf);
    }

    #[test]
    fn convex_input_is_unchanged() {
        let xs: Vec<Q> = (-4..=4).map(|k| Q::ratio(k, 2)).collect();
        let f = GridFunction::sample_1d(&xs, |x: &Q| Finite(x.clone() * x)).unwrap();
        let h = cl_conv_grid_1d(&f).unwrap();
        for x in &xs {
            assert_eq!(h.eval(x), f.value(&Point::scalar(x.clone())));
        }
        let again = cl_conv_pl(&h);
        assert!(again.same_function(&h));
    }

    #[test]
    fn open_interval_biconjugate_closes_domain() {
        let f = PLConvex1D::<Q>::indicator(Q::from_int(0), Q::from_int(1))
            .unwrap()
            .with_overrides(Some(PosInf), Some(PosInf))
            .unwrap();
        let b = biconjugate_exact(&f).unwrap();
        assert_eq!(b.eval(&Q::from_int(0)), Finite(Q::from_int(0)));
        assert_eq!(b.eval(&Q::from_int(2)), PosInf);
    }

    #[test]
    fn dual_hull_in_2d_matches_convex_samples() {
        let axis = linspace(&-1.0, &1.0, 5);
        let pts = product_grid(&[axis.clone(), axis]);
        let f = GridFunction::sample(2, pts.clone(), |p| Finite(p.0[0].abs() + p.0[1].abs())).unwrap();
        let dual = product_grid(&[linspace(&-1.0, &1.0, 3), linspace(&-1.0, &1.0, 3)]);
        let h = cl_conv_grid(&f, Some(&dual)).unwrap();
        for p in &pts {
            assert!(h.value(p).eq_tol(&f.value(p)));
        }
        assert!(cl_conv_grid(&f, None).is_err());
    }

    #[test]
    fn biconjugate_on_grid_is_below_f() {
        let xs = linspace(&-1.0, &1.0, 21);
        let f = GridFunction::sample_1d(&xs, |x: &f64| Finite((3.0 * x).sin())).unwrap();
        let b = biconjugate_grid(&f, &points_1d(&linspace(&-4.0, &4.0, 81))).unwrap();
        for (p, v) in b.points().iter().zip(b.values()) {
            assert!(v.le_tol(&f.value(p)));
        }
    }
}
