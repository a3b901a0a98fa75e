use crate::error::{Error, Result};
use crate::extreal::{Finite, Scalar};
use crate::funcrep::{PLConvex1D, SampledSet, Subdifferentiable, SubgradientInterval};
use crate::operators::graph::{ExactGraph, GraphCell, OperatorGraph, Provenance};
use crate::point::Point;

/// Interior subgradient representatives listed per breakpoint by default.
pub const DEFAULT_REPRESENTATIVES: usize = 3;

/// `∂f(x)` of a piecewise-linear function; `None` when empty.
pub fn subdiff_exact<S: Scalar>(f: &PLConvex1D<S>, x: &S) -> Option<SubgradientInterval<S>> {
    f.subdifferential(x)
}

/// `x* ∈ ∂f(x)`; false whenever `f(x)` is not finite.
pub fn subdiff_test<S: Scalar, F: Subdifferentiable<S>>(f: &F, x: &Point<S>, x_star: &Point<S>) -> bool {
    f.is_subgradient(x, x_star)
}

/// `x* ∈ ∂_ε f(x)`.
pub fn eps_subdiff_test<S: Scalar, F: Subdifferentiable<S>>(f: &F, x: &Point<S>, x_star: &Point<S>, eps: &S) -> Result<bool> {
    if eps.is_negative() {
        return Err(Error::NegativeEpsilon);
    }
    Ok(f.eps_subgradient(x, x_star, eps))
}

/// Every probe pair `(x, x*)` with `x* ∈ ∂f(x)`, with `f(x)` attached.
pub fn subdiff_graph<S, F>(f: &F, primal: &[Point<S>], dual: &[Point<S>]) -> Result<OperatorGraph<S>>
where
    S: Scalar,
    F: Subdifferentiable<S>,
{
    if primal.is_empty() || dual.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = f.dim();
    let mut pairs = Vec::new();
    let mut values = Vec::new();
    for x in primal {
        x.check_dim(dim)?;
        let fx = match f.value(x) {
            Finite(v) => v,
            _ => continue,
        };
        for y in dual {
            y.check_dim(dim)?;
            if f.is_subgradient(x, y) {
                pairs.push((x.clone(), y.clone()));
                values.push(fx.clone());
            }
        }
    }
    OperatorGraph::with_values(dim, pairs, values, Provenance::Sampled)
}

/// The exact graph of `∂f`: its cell structure, plus listed pairs made of the
/// subgradient interval ends and `reps` interior representatives at every
/// breakpoint, one pair per open segment, and the subgradient interval ends
/// at each primal probe.
pub fn subdiff_graph_exact<S: Scalar>(f: &PLConvex1D<S>, primal_probes: &[S], reps: usize) -> Result<OperatorGraph<S>> {
    let cells = ExactGraph::from_pl(f);
    let mut pairs: Vec<(S, S)> = Vec::new();
    for c in cells.cells() {
        match c {
            GraphCell::Vertical { a, lo, hi, .. } => {
                let iv = SubgradientInterval { lo: lo.clone(), hi: hi.clone() };
                for s in interval_samples(&iv, reps) {
                    pairs.push((a.clone(), s));
                }
            }
            GraphCell::Horizontal { lo, hi, slope, .. } => {
                let a = match (lo, hi) {
                    (Finite(l), Finite(h)) => (l.clone() + h) / S::from_int(2),
                    (Finite(l), _) => l.clone() + S::one(),
                    (_, Finite(h)) => h.clone() - S::one(),
                    _ => S::zero(),
                };
                pairs.push((a, slope.clone()));
            }
        }
    }
    for p in primal_probes {
        if let Some(iv) = f.subdifferential(p) {
            for s in interval_samples(&iv, 0) {
                pairs.push((p.clone(), s));
            }
        }
    }
    pairs.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    pairs.dedup();
    let values: Vec<S> = pairs.iter().map(|(a, _)| f.closure_value(a).into_finite().expect("a lies in dom f")).collect();
    let pairs = pairs.into_iter().map(|(a, s)| (Point::scalar(a), Point::scalar(s))).collect();
    Ok(OperatorGraph::with_values(1, pairs, values, Provenance::Exact)?.with_cells(cells))
}

/// Finite ends plus `reps` interior points; unbounded sides step by one.
fn interval_samples<S: Scalar>(iv: &SubgradientInterval<S>, reps: usize) -> Vec<S> {
    let mut out = iv.finite_ends();
    let k = |i: usize| S::from_int(i as i64);
    match (&iv.lo, &iv.hi) {
        (Finite(l), Finite(h)) => {
            if l < h {
                let step = (h.clone() - l) / k(reps + 1);
                out.extend((1..=reps).map(|i| l.clone() + step.clone() * k(i)));
            }
        }
        (Finite(l), _) => {
            out.extend((1..=reps.max(1)).map(|i| l.clone() + k(i)));
        }
        (_, Finite(h)) => {
            out.extend((1..=reps.max(1)).map(|i| h.clone() - k(i)));
        }
        _ => {
            let half = reps as i64 / 2;
            out.extend((-half..=half).map(S::from_int));
        }
    }
    out
}

/// Dual probes normal to `C` at `x`.
pub fn normal_cone<S: Scalar>(c: &SampledSet<S>, x: &Point<S>, dual: &[Point<S>]) -> Result<Vec<Point<S>>> {
    x.check_dim(c.dim())?;
    if !c.contains(x) {
        return Err(Error::NotInSet);
    }
    Ok(dual.iter().filter(|n| is_normal(c, x, n)).cloned().collect())
}

fn is_normal<S: Scalar>(c: &SampledSet<S>, x: &Point<S>, n: &Point<S>) -> bool {
    c.points().iter().all(|y| y.sub(x).dot(n).le_tol(&S::zero()))
}

/// Sampled graph of `N_C = ∂ι_C` over the points of `C` and the dual probes.
pub fn normal_cone_graph<S: Scalar>(c: &SampledSet<S>, dual: &[Point<S>]) -> Result<OperatorGraph<S>> {
    let mut pairs = Vec::new();
    for x in c.points() {
        for n in dual {
            n.check_dim(c.dim())?;
            if is_normal(c, x, n) {
                pairs.push((x.clone(), n.clone()));
            }
        }
    }
    let values = vec![S::zero(); pairs.len()];
    OperatorGraph::with_values(c.dim(), pairs, values, Provenance::Sampled)
}
