use crate::error::{Error, Result};
use crate::extreal::{ext_add, ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{Evaluate, GridFunction, PLConvex1D, Recession, SampledSet};
use crate::point::Point;

/// `σ_C(x*) = sup_{x ∈ C} ⟨x, x*⟩`.
pub fn support_function<S: Scalar>(c: &SampledSet<S>, x_star: &Point<S>) -> Result<ExtReal<S>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    x_star.check_dim(c.dim())?;
    Ok(Finite(c.points().iter().map(|x| x.dot(x_star)).reduce(S::max_of).unwrap()))
}

/// `ι_C`: zero on the points of `C`.
pub fn indicator<S: Scalar>(c: &SampledSet<S>) -> Result<GridFunction<S>> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut pts = c.points().to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    let n = pts.len();
    GridFunction::new(c.dim(), pts, vec![ExtReal::zero(); n])
}

/// `(f □ g)(x) = inf_a f(a) + g(x − a)` with `a` ranging over `witness_grid`.
pub fn inf_conv<S, F, G>(f: &F, g: &G, x: &Point<S>, witness_grid: &[Point<S>]) -> Result<ExtReal<S>>
where
    S: Scalar,
    F: Evaluate<S>,
    G: Evaluate<S>,
{
    if !f.is_proper() || !g.is_proper() {
        return Err(Error::improper("infimal convolution needs proper functions"));
    }
    x.check_dim(f.dim())?;
    x.check_dim(g.dim())?;
    let mut best = PosInf;
    for a in witness_grid {
        a.check_dim(f.dim())?;
        let v = ext_add(&f.value(a), &g.value(&x.sub(a)));
        if v < best {
            best = v;
        }
    }
    Ok(best)
}

/// `(f □ g)(x)` for piecewise-linear `f` and `g`, exactly. The map
/// `a ↦ f(a) + g(x − a)` is affine between the breakpoints of `f` and the
/// points `x − b` for breakpoints `b` of `g`, so its infimum is a value at one
/// of those points, a one-sided limit at an end of an open piece, or `-inf`
/// along a half-line where it decreases.
pub fn inf_conv_pl<S: Scalar>(f: &PLConvex1D<S>, g: &PLConvex1D<S>, x: &S) -> ExtReal<S> {
    let slope = |r: &Recession<S>| r.slope().cloned();
    let falls_left = matches!((slope(f.left()), slope(g.right())), (Some(lf), Some(rg)) if lf > rg);
    let falls_right = matches!((slope(f.right()), slope(g.left())), (Some(rf), Some(lg)) if rf < lg);
    if falls_left || falls_right {
        return NegInf;
    }
    let h = |a: &S| ext_add(&f.eval(a), &g.eval(&(x.clone() - a)));
    let mut pts: Vec<S> = f.breakpoints().to_vec();
    pts.extend(g.breakpoints().iter().map(|b| x.clone() - b));
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    pts.dedup();
    let one = S::from_int(1);
    let two = S::from_int(2);
    // Limit at `end` of the affine piece through `near` and `far`.
    let limit = |end: &S, near: &S, far: &S| -> Option<S> {
        let (vn, vf) = (h(near).into_finite()?, h(far).into_finite()?);
        let k = (vf - &vn) / (far.clone() - near);
        Some(vn + k * (end.clone() - near))
    };
    let mut best = PosInf;
    let mut offer = |v: ExtReal<S>| {
        if v < best {
            best = v;
        }
    };
    for p in &pts {
        offer(h(p));
    }
    for w in pts.windows(2) {
        let m = (w[0].clone() + &w[1]) / &two;
        let m2 = (m.clone() + &w[1]) / &two;
        for end in [&w[0], &w[1]] {
            if let Some(v) = limit(end, &m, &m2) {
                offer(Finite(v));
            }
        }
    }
    let (first, last) = (&pts[0], &pts[pts.len() - 1]);
    let outward = [
        (first, first.clone() - &one, first.clone() - &two),
        (last, last.clone() + &one, last.clone() + &two),
    ];
    for (end, near, far) in &outward {
        if let Some(v) = limit(end, near, far) {
            offer(Finite(v));
        }
    }
    best
}
