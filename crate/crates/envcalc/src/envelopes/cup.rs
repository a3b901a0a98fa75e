use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{AffinePiece, Evaluate, HalfSpace, MaxAffine, Subdifferentiable};
use crate::operators::{GraphCell, OperatorGraph, PairFunctional};
use crate::point::Point;

/// `⟨x − a, a*⟩ + f(a)` as a pair functional.
pub fn cup_functional<S: Scalar>(x: &Point<S>) -> PairFunctional<S> {
    PairFunctional { dual: x.clone(), coupling: -S::one(), value: S::one(), ..PairFunctional::zero(x.dim()) }
}

/// `f^∪` as a max-affine function: one tangent per graph pair, or per cell
/// for exact graphs, where unbounded subgradient intervals become walls.
///
/// Every listed pair is checked against `f`.
pub fn upper_envelope<S, F>(f: &F, g: &OperatorGraph<S>) -> Result<MaxAffine<S>>
where
    S: Scalar,
    F: Subdifferentiable<S>,
{
    let values = graph_values(f, g)?;
    let mut m = MaxAffine::new(g.dim());
    if let Some(cells) = g.cells() {
        for c in cells.cells() {
            match c {
                GraphCell::Vertical { a, value, lo, hi } => {
                    let anchor = Point::scalar(a.clone());
                    for (end, dir) in [(lo, -1), (hi, 1)] {
                        match end {
                            Finite(s) => m.push_piece(AffinePiece {
                                anchor: anchor.clone(),
                                slope: Point::scalar(s.clone()),
                                level: value.clone(),
                            })?,
                            _ => m.push_wall(HalfSpace { anchor: anchor.clone(), normal: Point::scalar(S::from_int(dir)) })?,
                        }
                    }
                    if !lo.is_finite() && !hi.is_finite() {
                        // Both walls pin x = a; keep the level there.
                        m.push_piece(AffinePiece { anchor, slope: Point::scalar(S::zero()), level: value.clone() })?;
                    }
                }
                GraphCell::Horizontal { slope, anchor, anchor_value, .. } => m.push_piece(AffinePiece {
                    anchor: Point::scalar(anchor.clone()),
                    slope: Point::scalar(slope.clone()),
                    level: anchor_value.clone(),
                })?,
            }
        }
        return Ok(m);
    }
    for ((a, s), v) in g.pairs().iter().zip(values) {
        m.push_piece(AffinePiece { anchor: a.clone(), slope: s.clone(), level: v })?;
    }
    Ok(m)
}

/// `f(a)` for every listed pair, after checking `a* ∈ ∂f(a)`.
fn graph_values<S, F>(f: &F, g: &OperatorGraph<S>) -> Result<Vec<S>>
where
    S: Scalar,
    F: Subdifferentiable<S>,
{
    if g.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    g.pairs()
        .iter()
        .map(|(a, s)| {
            if !f.is_subgradient(a, s) {
                return Err(Error::NotSubgradient { a: a.to_string(), a_star: s.to_string() });
            }
            Ok(f.value(a).into_finite().expect("subgradients exist only where f is finite"))
        })
        .collect()
}

/// `f^∪(x)` straight from the graph.
pub fn cup_value<S: Scalar>(g: &OperatorGraph<S>, x: &Point<S>) -> Result<ExtReal<S>> {
    x.check_dim(g.dim())?;
    g.sup_functional(&cup_functional(x), None)
}

/// Dual form `sup_{a* ∈ R(G)} ⟨x, a*⟩ − f*(a*)` over the listed pairs.
pub fn cup_dual_form<S: Scalar>(
    g: &OperatorGraph<S>,
    x: &Point<S>,
    conjugate: impl Fn(&Point<S>) -> ExtReal<S>,
) -> ExtReal<S> {
    let mut best = NegInf;
    for s in g.range_points() {
        let v = -conjugate(&s) + Finite(x.dot(&s));
        if v > best {
            best = v;
        }
    }
    best
}

/// `f^{*∪}(x*) = sup_{a ∈ D(G)} ⟨x*, a⟩ − f(a)`.
pub fn star_cup<S: Scalar>(g: &OperatorGraph<S>, x_star: &Point<S>) -> Result<ExtReal<S>> {
    if g.is_empty() {
        return Err(Error::EmptySet);
    }
    x_star.check_dim(g.dim())?;
    let phi = PairFunctional { primal: x_star.clone(), value: -S::one(), ..PairFunctional::zero(g.dim()) };
    g.sup_functional(&phi, None)
}

/// First form `sup_{(a,a*) ∈ G} ⟨x* − a*, a⟩ + f*(a*)` over the listed pairs.
pub fn star_cup_primal_form<S: Scalar>(
    g: &OperatorGraph<S>,
    x_star: &Point<S>,
    conjugate: impl Fn(&Point<S>) -> ExtReal<S>,
) -> ExtReal<S> {
    let mut best = NegInf;
    for (a, s) in g.pairs() {
        let v = conjugate(s) + Finite(x_star.sub(s).dot(a));
        if v > best {
            best = v;
        }
    }
    best
}

/// `f^{n∪}(x)`: supremum of `⟨x − a₁, a₁*⟩ + ⟨a₁ − a₂, a₂*⟩ + … + f(aₙ)` over
/// all `n`-tuples of listed pairs. The chain is a max-plus product, so the
/// supremum is taken link by link in `O(n·|G|²)` rather than over `|G|ⁿ` tuples.
pub fn n_cup<S: Scalar>(g: &OperatorGraph<S>, n: usize, x: &Point<S>) -> Result<ExtReal<S>> {
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    x.check_dim(g.dim())?;
    let values = g.values().ok_or_else(|| Error::precondition("graph carries no function values"))?;
    let pairs = g.pairs();
    if pairs.is_empty() {
        return Ok(NegInf);
    }
    let max_of = |it: &mut dyn Iterator<Item = S>| it.reduce(S::max_of).expect("nonempty graph");
    // tail[i]: best `⟨a_i − a_j, a_j*⟩ + … + f(a_n)` over the remaining links, starting at pair i.
    let mut tail: Vec<S> = values.to_vec();
    for _ in 1..n {
        tail = pairs
            .iter()
            .map(|(ai, _)| max_of(&mut pairs.iter().zip(&tail).map(|((aj, sj), t)| ai.sub(aj).dot(sj) + t)))
            .collect();
    }
    Ok(Finite(max_of(&mut pairs.iter().zip(&tail).map(|((a, s), t)| x.sub(a).dot(s) + t))))
}

/// `f^⌣(x)`: the `f^∪` supremum over pairs with `f(a) ≤ f(x)`. Where
/// `f(x) = +inf` the level constraint is dropped and the value is `f^∪(x)`.
pub fn smile<S: Scalar, F: Evaluate<S>>(f: &F, g: &OperatorGraph<S>, x: &Point<S>) -> Result<ExtReal<S>> {
    x.check_dim(g.dim())?;
    match f.value(x) {
        PosInf => cup_value(g, x),
        Finite(level) => g.sup_functional(&cup_functional(x), Some(&level)),
        NegInf => Ok(NegInf),
    }
}

/// `f_ε^⌣(x)`: as [`smile`] with the constraint `f(a) ≤ f(x) + ε`.
pub fn smile_eps<S: Scalar, F: Evaluate<S>>(f: &F, g: &OperatorGraph<S>, x: &Point<S>, eps: &S) -> Result<ExtReal<S>> {
    if !eps.is_positive() {
        return Err(Error::precondition("epsilon must be positive"));
    }
    x.check_dim(g.dim())?;
    match f.value(x) {
        PosInf => cup_value(g, x),
        Finite(level) => g.sup_functional(&cup_functional(x), Some(&(level + eps))),
        NegInf => Ok(NegInf),
    }
}
