use crate::error::{Error, Result};
use crate::extreal::{Finite, Scalar};
use crate::funcrep::{Evaluate, GridFunction, PLConvex1D, Recession};
use crate::point::Point;

/// `f*(y) = sup_x ⟨x, y⟩ − f(x)` over the finite samples of `f`, at each dual point.
pub fn conjugate_brute<S: Scalar>(f: &GridFunction<S>, dual_grid: &[Point<S>]) -> Result<GridFunction<S>> {
    if !f.is_proper() {
        return Err(Error::improper("conjugate of an improper grid function"));
    }
    if dual_grid.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = f.dim();
    for y in dual_grid {
        y.check_dim(dim)?;
    }
    let idx = f.finite_indices();
    let vals: Vec<S> = idx.iter().map(|&i| f.values()[i].finite().unwrap().clone()).collect();
    let values = if dim == 1 {
        let xs: Vec<S> = idx.iter().map(|&i| f.points()[i].x().clone()).collect();
        dual_grid.iter().map(|y| Finite(sup_1d(&xs, &vals, y.x()))).collect()
    } else {
        let xs: Vec<(S, S)> = idx
            .iter()
            .map(|&i| {
                let p = &f.points()[i].0;
                (p[0].clone(), p[1].clone())
            })
            .collect();
        dual_grid
            .iter()
            .map(|y| {
                let (y0, y1) = (&y.0[0], &y.0[1]);
                let mut best: Option<S> = None;
                for ((a, b), v) in xs.iter().zip(&vals) {
                    let c = a.clone() * y0 + b.clone() * y1 - v;
                    if best.as_ref().map_or(true, |m| c > *m) {
                        best = Some(c);
                    }
                }
                Finite(best.unwrap())
            })
            .collect()
    };
    GridFunction::new(dim, dual_grid.to_vec(), values)
}

fn sup_1d<S: Scalar>(xs: &[S], vals: &[S], y: &S) -> S {
    let mut best = xs[0].clone() * y - &vals[0];
    for (x, v) in xs.iter().zip(vals).skip(1) {
        let c = x.clone() * y - v;
        if c > best {
            best = c;
        }
    }
    best
}

/// Exact conjugate of a piecewise-linear function. Overrides are invisible
/// to conjugation, so the result is `(cl f)*`.
///
/// Breakpoints of `f*` are the slopes of `f` and its slopes are the
/// breakpoints of `f`.
pub fn conjugate_exact<S: Scalar>(f: &PLConvex1D<S>) -> Result<PLConvex1D<S>> {
    let xs = f.breakpoints();
    let vs = f.values();
    let m = xs.len() - 1;
    let mut ys: Vec<S> = Vec::with_capacity(m + 2);
    let mut vals: Vec<S> = Vec::with_capacity(m + 2);
    let mut push = |y: S, v: S| {
        if ys.last() != Some(&y) {
            ys.push(y);
            vals.push(v);
        }
    };
    if let Recession::Slope(s) = f.left() {
        push(s.clone(), xs[0].clone() * s - &vs[0]);
    }
    for (i, s) in f.slopes().iter().enumerate() {
        push(s.clone(), xs[i].clone() * s - &vs[i]);
    }
    if let Recession::Slope(s) = f.right() {
        push(s.clone(), xs[m].clone() * s - &vs[m]);
    }
    let left = match f.left() {
        Recession::Slope(_) => Recession::Wall,
        Recession::Wall => Recession::Slope(xs[0].clone()),
    };
    let right = match f.right() {
        Recession::Slope(_) => Recession::Wall,
        Recession::Wall => Recession::Slope(xs[m].clone()),
    };
    if ys.is_empty() {
        ys.push(S::zero());
        vals.push(-vs[0].clone());
    }
    PLConvex1D::new(ys, vals, left, right)
}

/// Linear-time Legendre transform of convex samples: one merge pass over the
/// sorted dual grid and the sorted chord slopes.
pub fn conjugate_llt<S: Scalar>(xs: &[S], values: &[S], dual_grid: &[S]) -> Result<Vec<S>> {
    if xs.is_empty() || dual_grid.is_empty() {
        return Err(Error::EmptySet);
    }
    if xs.len() != values.len() {
        return Err(Error::invalid("abscissae and values differ in length"));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) || dual_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Unsorted);
    }
    let slopes: Vec<S> =
        (0..xs.len() - 1).map(|i| (values[i + 1].clone() - &values[i]) / (xs[i + 1].clone() - &xs[i])).collect();
    for w in slopes.windows(2) {
        let scale = S::max_of(S::one(), w[0].abs());
        if w[1].clone() + S::tolerance() * scale < w[0] {
            return Err(Error::NotConvex);
        }
    }
    let mut out = Vec::with_capacity(dual_grid.len());
    let mut j = 0;
    for y in dual_grid {
        while j < slopes.len() && slopes[j] < *y {
            j += 1;
        }
        out.push(xs[j].clone() * y - &values[j]);
    }
    Ok(out)
}
