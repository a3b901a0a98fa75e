use crate::error::{Error, Result};
use crate::extreal::{Finite, Scalar};
use crate::funcrep::Subdifferentiable;
use crate::operators::{OperatorGraph, Provenance};
use crate::point::Point;

fn lift<S: Scalar>(x: &Point<S>, t: S) -> Point<S> {
    let mut c = x.0.clone();
    c.push(t);
    Point::new(c)
}

fn split<S: Scalar>(p: &Point<S>) -> (Point<S>, S) {
    let d = p.dim() - 1;
    (Point::new(p.0[..d].to_vec()), p.0[d].clone())
}

/// Sampled `N_{Epi f}`: `((a, f(a)), (a*, −1))` for the pairs of `G`, and
/// `((a, f(a)), (n, 0))` for the given directions `n` normal to `dom f` at
/// the points of `D(G)`.
pub fn epigraph_normal_graph<S, F>(f: &F, g: &OperatorGraph<S>, domain_normals: &[Point<S>]) -> Result<OperatorGraph<S>>
where
    S: Scalar,
    F: Subdifferentiable<S>,
{
    let mut pairs = Vec::new();
    let value = |a: &Point<S>| {
        f.value(a).into_finite().ok_or_else(|| Error::NotSubgradient { a: a.to_string(), a_star: "-".into() })
    };
    for (a, s) in g.pairs() {
        pairs.push((lift(a, value(a)?), lift(s, -S::one())));
    }
    for a in g.domain_points() {
        let fa = value(&a)?;
        for n in domain_normals {
            n.check_dim(g.dim())?;
            if f.is_domain_normal(&a, n) {
                pairs.push((lift(&a, fa.clone()), lift(n, S::zero())));
            }
        }
    }
    OperatorGraph::new(g.dim() + 1, pairs, Provenance::Sampled)
}

/// `(x, v)` satisfies every non-vertical supporting inequality
/// `⟨(x, v) − (a, t), (a*, α)⟩ ≤ 0`, `α ≠ 0`, of the sampled `N_{Epi f}`.
/// Every sample is first checked to be a normal to `Epi f`.
pub fn epi_cup_membership<S, F>(f: &F, normals: &OperatorGraph<S>, x: &Point<S>, v: &S) -> Result<bool>
where
    S: Scalar,
    F: Subdifferentiable<S>,
{
    if normals.dim() != f.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: f.dim() + 1, found: normals.dim() });
    }
    x.check_dim(f.dim())?;
    let point = lift(x, v.clone());
    let mut holds = true;
    for (p, q) in normals.pairs() {
        let (a, t) = split(p);
        let (a_star, alpha) = split(q);
        let fa = match f.value(&a) {
            Finite(fa) => fa,
            _ => return Err(Error::InvalidNormal(format!("{p} is not in the epigraph"))),
        };
        if t < fa.clone() - S::tolerance() {
            return Err(Error::InvalidNormal(format!("{p} is not in the epigraph")));
        }
        let valid = if alpha.is_positive() {
            false
        } else if alpha.is_negative() {
            t.eq_tol(&fa) && f.is_subgradient(&a, &a_star.scale(&(-S::one() / &alpha)))
        } else {
            f.is_domain_normal(&a, &a_star)
        };
        if !valid {
            return Err(Error::InvalidNormal(format!("{q} is not normal to the epigraph at {p}")));
        }
        if !alpha.is_zero() && !point.sub(p).dot(q).le_tol(&S::zero()) {
            holds = false;
        }
    }
    Ok(holds)
}
