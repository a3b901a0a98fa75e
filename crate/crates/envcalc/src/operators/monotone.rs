use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, NegInf, Scalar};
use crate::operators::graph::{ExactGraph, GraphCell, OperatorGraph, PairFunctional};
use crate::point::Point;

/// Pairwise `⟨a₁ − a₂, a₁* − a₂*⟩ ≥ 0`, and for exact graphs the ordering of
/// the cells along the primal axis.
pub fn is_monotone<S: Scalar>(g: &OperatorGraph<S>) -> bool {
    let tol = S::tolerance();
    let pairs = g.pairs();
    for (i, (a1, b1)) in pairs.iter().enumerate() {
        for (a2, b2) in &pairs[i + 1..] {
            if a1.sub(a2).dot(&b1.sub(b2)) < -tol.clone() {
                return false;
            }
        }
    }
    g.cells().map_or(true, cells_monotone)
}

fn cells_monotone<S: Scalar>(cells: &ExactGraph<S>) -> bool {
    let mut prev_hi: ExtReal<S> = NegInf;
    for c in cells.cells() {
        let r = c.dual_range();
        if r.lo < prev_hi || r.lo > r.hi {
            return false;
        }
        prev_hi = r.hi;
    }
    true
}

/// `φ_G(x, x*) = sup_{(a,a*) ∈ G} ⟨x − a, a*⟩ + ⟨a, x*⟩`; `-inf` for an empty graph.
pub fn fitzpatrick<S: Scalar>(g: &OperatorGraph<S>, x: &Point<S>, x_star: &Point<S>) -> Result<ExtReal<S>> {
    x.check_dim(g.dim())?;
    x_star.check_dim(g.dim())?;
    let phi = PairFunctional {
        constant: S::zero(),
        primal: x_star.clone(),
        dual: x.clone(),
        coupling: -S::one(),
        value: S::zero(),
    };
    g.sup_functional(&phi, None)
}

/// `(x − a)(x* − a*) ≥ 0` against every pair and every cell, with no slack.
pub fn related_to_graph<S: Scalar>(g: &OperatorGraph<S>, x: &Point<S>, x_star: &Point<S>) -> bool {
    if let Some(cells) = g.cells() {
        return cells.cells().iter().all(|c| related_to_cell(c, x.x(), x_star.x()));
    }
    g.pairs().iter().all(|(a, b)| !x.sub(a).dot(&x_star.sub(b)).is_negative())
}

fn related_to_cell<S: Scalar>(c: &GraphCell<S>, x: &S, x_star: &S) -> bool {
    match c {
        GraphCell::Vertical { a, lo, hi, .. } => {
            if x > a {
                Finite(x_star.clone()) >= *hi
            } else if x < a {
                Finite(x_star.clone()) <= *lo
            } else {
                true
            }
        }
        GraphCell::Horizontal { lo, hi, slope, .. } => {
            if x_star > slope {
                Finite(x.clone()) >= *hi
            } else if x_star < slope {
                Finite(x.clone()) <= *lo
            } else {
                true
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalityStatus {
    MaximalRelative,
    NotMaximal,
}

impl fmt::Display for MaximalityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MaximalityStatus::MaximalRelative => "maximal-relative",
            MaximalityStatus::NotMaximal => "not-maximal",
        })
    }
}

/// Outcome of a maximality search over a finite test set.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityVerdict<S> {
    pub status: MaximalityStatus,
    pub witness: Option<(Point<S>, Point<S>)>,
    pub test_set: String,
}

/// Searches `test_pairs` for a pair outside `G` that is monotonically related
/// to all of `G`.
pub fn is_maximal_relative<S: Scalar>(
    g: &OperatorGraph<S>,
    test_pairs: &[(Point<S>, Point<S>)],
    test_set: &str,
) -> Result<MaximalityVerdict<S>> {
    if !is_monotone(g) {
        return Err(Error::NotMonotone);
    }
    for (x, y) in test_pairs {
        x.check_dim(g.dim())?;
        y.check_dim(g.dim())?;
        if !g.contains(x, y) && related_to_graph(g, x, y) {
            return Ok(MaximalityVerdict {
                status: MaximalityStatus::NotMaximal,
                witness: Some((x.clone(), y.clone())),
                test_set: test_set.to_string(),
            });
        }
    }
    Ok(MaximalityVerdict { status: MaximalityStatus::MaximalRelative, witness: None, test_set: test_set.to_string() })
}

/// Result of [`ni_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct NiReport<S> {
    pub pass: bool,
    /// `min φ_G(x, x*) − ⟨x, x*⟩` over the test pairs.
    pub margin: ExtReal<S>,
    pub worst: Option<(Point<S>, Point<S>)>,
    pub tolerance: S,
}

/// `φ_G(x, x*) ≥ ⟨x, x*⟩` at every test pair, up to the backend tolerance.
pub fn ni_check<S: Scalar>(g: &OperatorGraph<S>, test_pairs: &[(Point<S>, Point<S>)]) -> Result<NiReport<S>> {
    if g.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut margin = ExtReal::PosInf;
    let mut worst = None;
    for (x, y) in test_pairs {
        let m = fitzpatrick(g, x, y)?.plus(&-x.dot(y));
        if m < margin || worst.is_none() {
            margin = m;
            worst = Some((x.clone(), y.clone()));
        }
    }
    let tolerance = S::tolerance();
    let pass = margin >= Finite(-tolerance.clone());
    Ok(NiReport { pass, margin, worst, tolerance })
}
