use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{Evaluate, PLConvex1D, Recession};
use crate::point::Point;

/// `x ↦ ⟨x − anchor, slope⟩ + level`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePiece<S> {
    pub anchor: Point<S>,
    pub slope: Point<S>,
    pub level: S,
}

impl<S: Scalar> AffinePiece<S> {
    pub fn eval(&self, x: &Point<S>) -> S {
        x.sub(&self.anchor).dot(&self.slope) + &self.level
    }
}

/// Constraint `⟨x − anchor, normal⟩ ≤ 0`; violating it costs `+inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace<S> {
    pub anchor: Point<S>,
    pub normal: Point<S>,
}

impl<S: Scalar> HalfSpace<S> {
    pub fn contains(&self, x: &Point<S>) -> bool {
        x.sub(&self.anchor).dot(&self.normal).le_tol(&S::zero())
    }
}

/// Pointwise supremum of affine pieces, plus an indicator of a polyhedron.
///
/// With no pieces the value is `-inf` wherever the walls allow.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxAffine<S> {
    dim: usize,
    pieces: Vec<AffinePiece<S>>,
    walls: Vec<HalfSpace<S>>,
}

impl<S: Scalar> MaxAffine<S> {
    pub fn new(dim: usize) -> Self {
        MaxAffine { dim, pieces: Vec::new(), walls: Vec::new() }
    }

    pub fn from_pieces(dim: usize, pieces: Vec<AffinePiece<S>>) -> Result<Self> {
        let mut m = Self::new(dim);
        for p in pieces {
            m.push_piece(p)?;
        }
        Ok(m)
    }

    pub fn push_piece(&mut self, piece: AffinePiece<S>) -> Result<()> {
        piece.anchor.check_dim(self.dim)?;
        piece.slope.check_dim(self.dim)?;
        self.pieces.push(piece);
        Ok(())
    }

    pub fn push_wall(&mut self, wall: HalfSpace<S>) -> Result<()> {
        wall.anchor.check_dim(self.dim)?;
        wall.normal.check_dim(self.dim)?;
        self.walls.push(wall);
        Ok(())
    }

    pub fn pieces(&self) -> &[AffinePiece<S>] {
        &self.pieces
    }

    pub fn walls(&self) -> &[HalfSpace<S>] {
        &self.walls
    }

    pub fn in_domain(&self, x: &Point<S>) -> bool {
        self.walls.iter().all(|w| w.contains(x))
    }

    pub fn eval(&self, x: &Point<S>) -> ExtReal<S> {
        if !self.in_domain(x) {
            return PosInf;
        }
        let mut best: Option<S> = None;
        for p in &self.pieces {
            let v = p.eval(x);
            if best.as_ref().map_or(true, |b| v > *b) {
                best = Some(v);
            }
        }
        best.map(Finite).unwrap_or(NegInf)
    }

    /// The same function as a [`PLConvex1D`] (1D only).
    pub fn to_pl_1d(&self) -> Result<PLConvex1D<S>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim });
        }
        if self.pieces.is_empty() {
            return Err(Error::improper("no affine pieces: the value is -inf"));
        }
        let mut lo: Option<S> = None;
        let mut hi: Option<S> = None;
        for w in &self.walls {
            let (a, n) = (w.anchor.x(), w.normal.x());
            if n.is_positive() {
                hi = Some(hi.map_or(a.clone(), |h| S::min_of(h, a.clone())));
            } else if n.is_negative() {
                lo = Some(lo.map_or(a.clone(), |l| S::max_of(l, a.clone())));
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return Err(Error::improper("walls leave an empty domain"));
            }
        }
        let mut lines: Vec<(S, S)> = self
            .pieces
            .iter()
            .map(|p| {
                let k = p.slope.x().clone();
                let c = p.level.clone() - k.clone() * p.anchor.x();
                (k, c)
            })
            .collect();
        lines.sort_by(|a, b| match a.0.partial_cmp(&b.0) {
            Some(Ordering::Equal) | None => a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal),
            Some(o) => o,
        });
        let mut hull: Vec<(S, S)> = Vec::new();
        for line in lines {
            if let Some(last) = hull.last() {
                if last.0 == line.0 {
                    hull.pop();
                }
            }
            while hull.len() >= 2 {
                let (l1, l2) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                let lhs = (l1.1.clone() - &l2.1) * (line.0.clone() - &l2.0);
                let rhs = (l2.1.clone() - &line.1) * (l2.0.clone() - &l1.0);
                if rhs.le_tol(&lhs) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(line);
        }
        let eval = |x: &S| -> S {
            hull.iter()
                .map(|(k, c)| k.clone() * x + c)
                .reduce(S::max_of)
                .expect("nonempty hull")
        };
        let mut xs: Vec<S> = Vec::new();
        if let Some(l) = &lo {
            xs.push(l.clone());
        }
        for w in hull.windows(2) {
            let x = (w[0].1.clone() - &w[1].1) / (w[1].0.clone() - &w[0].0);
            let fresh = xs.last().map_or(true, |p| p.lt_tol(&x));
            if fresh && lo.as_ref().map_or(true, |l| x > *l) && hi.as_ref().map_or(true, |h| x < *h) {
                xs.push(x);
            }
        }
        if let Some(h) = &hi {
            if lo.as_ref() != Some(h) {
                xs.push(h.clone());
            }
        }
        if xs.is_empty() {
            xs.push(S::zero());
        }
        let vs: Vec<S> = xs.iter().map(eval).collect();
        let left = if lo.is_some() { Recession::Wall } else { Recession::Slope(hull[0].0.clone()) };
        let right = if hi.is_some() { Recession::Wall } else { Recession::Slope(hull[hull.len() - 1].0.clone()) };
        PLConvex1D::new(xs, vs, left, right)
    }
}

impl<S: Scalar> Evaluate<S> for MaxAffine<S> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &Point<S>) -> ExtReal<S> {
        self.eval(x)
    }

    fn is_proper(&self) -> bool {
        if self.pieces.is_empty() {
            return false;
        }
        if self.dim == 1 {
            return self.to_pl_1d().is_ok();
        }
        true
    }
}
