use crate::error::{Error, Result};
use crate::extreal::{Finite, Scalar};
use crate::funcrep::{PLConvex1D, Subdifferentiable};
use crate::operators::{ExactGraph, GraphCell};
use crate::point::Point;

/// A pair of `Graph ∂f` close to a given ε-subgradient pair.
#[derive(Clone, Debug, PartialEq)]
pub struct BrondstedPair<S> {
    pub a: S,
    pub a_star: S,
    /// `(|x − a|·(1 + |x*|))²`.
    pub primal_sq: S,
    /// `(|x* − a*| / (1 + |x*|))²`.
    pub dual_sq: S,
}

impl<S: Scalar> BrondstedPair<S> {
    /// `⟨x − a, a*⟩ ≥ −(ε + √ε)`, decided without square roots.
    pub fn coupling_bound_holds(&self, x: &S, eps: &S) -> bool {
        let t = (x.clone() - &self.a) * &self.a_star + eps;
        !t.is_negative() || t.clone() * &t <= *eps
    }
}

/// Scans the exact graph of `∂f` near `x` for `(a, a*)` with
/// `‖x − a‖ ≤ √ε` and `‖x* − a*‖_* ≤ √ε` in the norm `|u|·(1 + |x*|)` and its
/// dual. `None` means no such pair exists on the graph.
pub fn brondsted_search<S: Scalar>(f: &PLConvex1D<S>, x: &S, x_star: &S, eps: &S) -> Result<Option<BrondstedPair<S>>> {
    if !eps.is_positive() {
        return Err(Error::precondition("epsilon must be positive"));
    }
    if !f.eval(x).is_finite() {
        return Err(Error::precondition("x must lie in dom f"));
    }
    if !f.eps_subgradient(&Point::scalar(x.clone()), &Point::scalar(x_star.clone()), eps) {
        return Err(Error::precondition("x* is not an ε-subgradient at x"));
    }
    let w = S::one() + x_star.abs();
    let w2 = w.clone() * &w;
    let primal_sq = |a: &S| {
        let d = x.clone() - a;
        d.clone() * &d * &w2
    };
    let dual_sq = |s: &S| {
        let d = x_star.clone() - s;
        d.clone() * &d / &w2
    };
    let graph = ExactGraph::from_pl(f);
    // Radius bound: |x − a| ≤ √ε / w ≤ max(ε, 1) / w.
    let r = S::max_of(eps.clone(), S::one()) / &w;
    let window = graph.window(&(x.clone() - &r), &(x.clone() + &r));
    let mut best: Option<BrondstedPair<S>> = None;
    for cell in &graph.cells()[window] {
        let (a, a_star) = match cell {
            GraphCell::Vertical { a, lo, hi, .. } => {
                let iv = crate::funcrep::SubgradientInterval { lo: lo.clone(), hi: hi.clone() };
                (a.clone(), iv.clamp(x_star))
            }
            GraphCell::Horizontal { lo, hi, slope, .. } => match nearest_in_open(lo, hi, x, |a| primal_sq(a) <= *eps) {
                Some(a) => (a, slope.clone()),
                None => continue,
            },
        };
        let cand = BrondstedPair { primal_sq: primal_sq(&a), dual_sq: dual_sq(&a_star), a, a_star };
        if cand.primal_sq > *eps || cand.dual_sq > *eps {
            continue;
        }
        let worse = |b: &BrondstedPair<S>| {
            S::max_of(b.primal_sq.clone(), b.dual_sq.clone()) > S::max_of(cand.primal_sq.clone(), cand.dual_sq.clone())
        };
        if best.as_ref().map_or(true, worse) {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// `x` itself when inside `(lo, hi)`; otherwise a point of the interval
/// approaching the nearer end until `accept` holds.
fn nearest_in_open<S: Scalar>(
    lo: &crate::extreal::ExtReal<S>,
    hi: &crate::extreal::ExtReal<S>,
    x: &S,
    accept: impl Fn(&S) -> bool,
) -> Option<S> {
    let xe = Finite(x.clone());
    if *lo < xe && xe < *hi {
        return Some(x.clone());
    }
    let (end, inward) = if xe <= *lo { (lo.finite()?, S::one()) } else { (hi.finite()?, -S::one()) };
    let mut delta = match (lo, hi) {
        (Finite(l), Finite(h)) => (h.clone() - l) / S::from_int(2),
        _ => S::one(),
    };
    let two = S::from_int(2);
    for _ in 0..128 {
        let a = end.clone() + inward.clone() * &delta;
        if accept(&a) {
            return Some(a);
        }
        delta = delta / &two;
    }
    None
}
