use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{convert, Scalar};

/// A point of ℝ^d; d is 1 or 2 everywhere in this crate.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Point<S>(pub Vec<S>);

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point(coords)
    }

    pub fn scalar(x: S) -> Self {
        Point(vec![x])
    }

    pub fn pair(x: S, y: S) -> Self {
        Point(vec![x, y])
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![S::zero(); dim])
    }

    pub fn from_f64s(coords: &[f64]) -> Option<Self> {
        coords.iter().map(|&c| S::from_f64(c)).collect::<Option<Vec<_>>>().map(Point)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    /// First coordinate; the whole point in 1D.
    pub fn x(&self) -> &S {
        &self.0[0]
    }

    pub fn dot(&self, other: &Point<S>) -> S {
        let mut acc = S::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc += a.clone() * b;
        }
        acc
    }

    pub fn sub(&self, other: &Point<S>) -> Point<S> {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b).collect())
    }

    pub fn add(&self, other: &Point<S>) -> Point<S> {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn scale(&self, k: &S) -> Point<S> {
        Point(self.0.iter().map(|a| a.clone() * k).collect())
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64()).collect()
    }

    pub fn convert<T: Scalar>(&self) -> Point<T> {
        Point(self.0.iter().map(convert).collect())
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    /// Coordinate-wise comparison up to the backend tolerance.
    pub fn eq_tol(&self, other: &Point<S>) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.eq_tol(b))
    }

    /// Lexicographic order; points never hold NaN.
    pub fn lex_cmp(&self, other: &Point<S>) -> std::cmp::Ordering {
        self.partial_cmp(other).unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Evenly spaced values `start, …, stop` (`count` of them), computed without drift.
pub fn linspace<S: Scalar>(start: &S, stop: &S, count: usize) -> Vec<S> {
    match count {
        0 => vec![],
        1 => vec![start.clone()],
        _ => {
            let span = stop.clone() - start;
            let steps = S::from_int(count as i64 - 1);
            (0..count)
                .map(|k| {
                    if k + 1 == count {
                        stop.clone()
                    } else {
                        start.clone() + span.clone() * S::from_int(k as i64) / steps.clone()
                    }
                })
                .collect()
        }
    }
}

/// Row-major product grid: the last axis varies fastest.
pub fn product_grid<S: Scalar>(axes: &[Vec<S>]) -> Vec<Point<S>> {
    let mut out = vec![Point(Vec::new())];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for p in &out {
            for v in axis {
                let mut c = p.0.clone();
                c.push(v.clone());
                next.push(Point(c));
            }
        }
        out = next;
    }
    out
}

pub fn points_1d<S: Scalar>(xs: &[S]) -> Vec<Point<S>> {
    xs.iter().cloned().map(Point::scalar).collect()
}
