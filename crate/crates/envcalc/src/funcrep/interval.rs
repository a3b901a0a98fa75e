use std::fmt;

use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Bound<S> {
    Unbounded,
    Closed(S),
    Open(S),
}

impl<S: Scalar> Bound<S> {
    pub fn value(&self) -> Option<&S> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(v) | Bound::Open(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Bound::Closed(_))
    }
}

/// A nonempty interval of ℝ.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<S> {
    pub lo: Bound<S>,
    pub hi: Bound<S>,
}

impl<S: Scalar> Interval<S> {
    pub fn closed(lo: S, hi: S) -> Self {
        Interval { lo: Bound::Closed(lo), hi: Bound::Closed(hi) }
    }

    pub fn open(lo: S, hi: S) -> Self {
        Interval { lo: Bound::Open(lo), hi: Bound::Open(hi) }
    }

    pub fn real_line() -> Self {
        Interval { lo: Bound::Unbounded, hi: Bound::Unbounded }
    }

    pub fn contains(&self, x: &S) -> bool {
        let above = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(l) => x >= l,
            Bound::Open(l) => x > l,
        };
        above
            && match &self.hi {
                Bound::Unbounded => true,
                Bound::Closed(h) => x <= h,
                Bound::Open(h) => x < h,
            }
    }

    pub fn closure(&self) -> Self {
        let close = |b: &Bound<S>| match b {
            Bound::Open(v) => Bound::Closed(v.clone()),
            other => other.clone(),
        };
        Interval { lo: close(&self.lo), hi: close(&self.hi) }
    }

    pub fn lo_ext(&self) -> ExtReal<S> {
        self.lo.value().cloned().map(Finite).unwrap_or(NegInf)
    }

    pub fn hi_ext(&self) -> ExtReal<S> {
        self.hi.value().cloned().map(Finite).unwrap_or(PosInf)
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.value().is_some() && self.hi.value().is_some()
    }
}

impl<S: Scalar> fmt::Display for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lo {
            Bound::Unbounded => f.write_str("(-inf")?,
            Bound::Closed(v) => write!(f, "[{v}")?,
            Bound::Open(v) => write!(f, "({v}")?,
        }
        match &self.hi {
            Bound::Unbounded => f.write_str(", inf)"),
            Bound::Closed(v) => write!(f, ", {v}]"),
            Bound::Open(v) => write!(f, ", {v})"),
        }
    }
}

/// A closed subgradient interval `[lo, hi]`; infinite ends mean unbounded.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgradientInterval<S> {
    pub lo: ExtReal<S>,
    pub hi: ExtReal<S>,
}

impl<S: Scalar> SubgradientInterval<S> {
    pub fn point(s: S) -> Self {
        SubgradientInterval { lo: Finite(s.clone()), hi: Finite(s) }
    }

    pub fn contains(&self, s: &S) -> bool {
        let s = Finite(s.clone());
        self.lo <= s && s <= self.hi
    }

    /// Closest member to `s`.
    pub fn clamp(&self, s: &S) -> S {
        if let Finite(l) = &self.lo {
            if s < l {
                return l.clone();
            }
        }
        if let Finite(h) = &self.hi {
            if s > h {
                return h.clone();
            }
        }
        s.clone()
    }

    /// Finite endpoints, in order.
    pub fn finite_ends(&self) -> Vec<S> {
        let mut out = Vec::new();
        if let Finite(l) = &self.lo {
            out.push(l.clone());
        }
        if let Finite(h) = &self.hi {
            if self.lo != self.hi {
                out.push(h.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for SubgradientInterval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
