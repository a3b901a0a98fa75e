use crate::extreal::{Finite, Scalar};
use crate::funcrep::Evaluate;
use crate::point::Point;

/// Finite sample of `Epi f = {(x, t) : f(x) ≤ t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpigraphSample<S> {
    pub pairs: Vec<(Point<S>, S)>,
}

impl<S: Scalar> EpigraphSample<S> {
    /// Pairs `(x, f(x) + h)` for every finite `f(x)` and every height `h ≥ 0`.
    pub fn above<F: Evaluate<S>>(f: &F, points: &[Point<S>], heights: &[S]) -> Self {
        let mut pairs = Vec::new();
        for x in points {
            if let Finite(v) = f.value(x) {
                for h in heights.iter().filter(|h| !h.is_negative()) {
                    pairs.push((x.clone(), v.clone() + h));
                }
            }
        }
        EpigraphSample { pairs }
    }

    pub fn is_valid_for<F: Evaluate<S>>(&self, f: &F) -> bool {
        self.pairs.iter().all(|(x, t)| f.value(x) <= Finite(t.clone()))
    }
}
