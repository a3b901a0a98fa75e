use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::extreal::{convert, ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{Bound, Evaluate, Interval, Subdifferentiable, SubgradientInterval};
use crate::point::Point;

/// Behaviour of a piecewise-linear function beyond its outer breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub enum Recession<S> {
    /// Affine continuation with this slope.
    Slope(S),
    /// The domain stops at the outer breakpoint.
    Wall,
}

impl<S: Scalar> Recession<S> {
    pub fn slope(&self) -> Option<&S> {
        match self {
            Recession::Slope(s) => Some(s),
            Recession::Wall => None,
        }
    }

    fn convert<T: Scalar>(&self) -> Recession<T> {
        match self {
            Recession::Slope(s) => Recession::Slope(convert(s)),
            Recession::Wall => Recession::Wall,
        }
    }
}

/// Piecewise-linear convex function on ℝ.
///
/// Values are interpolated between breakpoints `x_0 < … < x_m` and extended
/// by the recession slopes. When the domain stops at an outer breakpoint the
/// value there may be raised by an override (`+inf` opens that end), which
/// makes the function convex but not lower semicontinuous.
#[derive(Clone, Debug, PartialEq)]
pub struct PLConvex1D<S> {
    xs: Vec<S>,
    vs: Vec<S>,
    slopes: Vec<S>,
    left: Recession<S>,
    right: Recession<S>,
    left_override: Option<ExtReal<S>>,
    right_override: Option<ExtReal<S>>,
}

impl<S: Scalar> PLConvex1D<S> {
    pub fn new(xs: Vec<S>, vs: Vec<S>, left: Recession<S>, right: Recession<S>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::invalid("at least one breakpoint is required"));
        }
        if xs.len() != vs.len() {
            return Err(Error::invalid("breakpoints and values differ in length"));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Unsorted);
        }
        let slopes: Vec<S> = (0..xs.len() - 1)
            .map(|i| (vs[i + 1].clone() - &vs[i]) / (xs[i + 1].clone() - &xs[i]))
            .collect();
        if slopes.windows(2).any(|w| w[1].lt_tol(&w[0])) {
            return Err(Error::NotConvex);
        }
        let first = slopes.first().or(right.slope());
        let last = slopes.last().or(left.slope());
        if let (Some(l), Some(s)) = (left.slope(), first) {
            if s.lt_tol(l) {
                return Err(Error::invalid("left recession slope exceeds the first slope"));
            }
        }
        if let (Some(r), Some(s)) = (right.slope(), last) {
            if r.lt_tol(s) {
                return Err(Error::invalid("right recession slope is below the last slope"));
            }
        }
        Ok(PLConvex1D { xs, vs, slopes, left, right, left_override: None, right_override: None })
    }

    /// Raises the value at walled outer breakpoints.
    pub fn with_overrides(mut self, left: Option<ExtReal<S>>, right: Option<ExtReal<S>>) -> Result<Self> {
        let m = self.xs.len() - 1;
        if (left.is_some() || right.is_some()) && m == 0 {
            return Err(Error::invalid("overrides need at least two breakpoints"));
        }
        for (w, side, v, name) in [
            (&left, &self.left, &self.vs[0], "left"),
            (&right, &self.right, &self.vs[m], "right"),
        ] {
            if let Some(w) = w {
                if *side != Recession::Wall {
                    return Err(Error::invalid(format!("{name} override on an unbounded side")));
                }
                if *w < Finite(v.clone()) {
                    return Err(Error::invalid(format!("{name} override below the interpolated value")));
                }
            }
        }
        self.left_override = left;
        self.right_override = right;
        Ok(self)
    }

    /// `ι_[lo,hi]`.
    pub fn indicator(lo: S, hi: S) -> Result<Self> {
        if lo == hi {
            return Self::new(vec![lo], vec![S::zero()], Recession::Wall, Recession::Wall);
        }
        Self::new(vec![lo, hi], vec![S::zero(), S::zero()], Recession::Wall, Recession::Wall)
    }

    /// `x ↦ slope·x + intercept` on the whole line.
    pub fn affine(slope: S, intercept: S) -> Self {
        Self::new(
            vec![S::zero()],
            vec![intercept],
            Recession::Slope(slope.clone()),
            Recession::Slope(slope),
        )
        .expect("affine function is valid")
    }

    pub fn breakpoints(&self) -> &[S] {
        &self.xs
    }

    pub fn values(&self) -> &[S] {
        &self.vs
    }

    /// Slopes of the interior segments.
    pub fn slopes(&self) -> &[S] {
        &self.slopes
    }

    pub fn left(&self) -> &Recession<S> {
        &self.left
    }

    pub fn right(&self) -> &Recession<S> {
        &self.right
    }

    pub fn left_override(&self) -> Option<&ExtReal<S>> {
        self.left_override.as_ref()
    }

    pub fn right_override(&self) -> Option<&ExtReal<S>> {
        self.right_override.as_ref()
    }

    fn m(&self) -> usize {
        self.xs.len() - 1
    }

    /// Index of `x` among the breakpoints, or the insertion position.
    fn locate(&self, x: &S) -> std::result::Result<usize, usize> {
        let j = self.xs.partition_point(|b| b < x);
        if j < self.xs.len() && self.xs[j] == *x {
            Ok(j)
        } else {
            Err(j)
        }
    }

    fn strict_left(&self) -> bool {
        matches!(&self.left_override, Some(w) if *w > Finite(self.vs[0].clone()))
    }

    fn strict_right(&self) -> bool {
        matches!(&self.right_override, Some(w) if *w > Finite(self.vs[self.m()].clone()))
    }

    /// Value of the closure `cl f`, which ignores overrides.
    pub fn closure_value(&self, x: &S) -> ExtReal<S> {
        let m = self.m();
        if *x < self.xs[0] {
            return match &self.left {
                Recession::Wall => PosInf,
                Recession::Slope(s) => Finite(self.vs[0].clone() + s.clone() * (x.clone() - &self.xs[0])),
            };
        }
        if *x > self.xs[m] {
            return match &self.right {
                Recession::Wall => PosInf,
                Recession::Slope(s) => Finite(self.vs[m].clone() + s.clone() * (x.clone() - &self.xs[m])),
            };
        }
        match self.locate(x) {
            Ok(i) => Finite(self.vs[i].clone()),
            Err(j) => {
                let i = j - 1;
                Finite(self.vs[i].clone() + self.slopes[i].clone() * (x.clone() - &self.xs[i]))
            }
        }
    }

    pub fn eval(&self, x: &S) -> ExtReal<S> {
        let m = self.m();
        if *x == self.xs[0] {
            if let Some(w) = &self.left_override {
                return w.clone();
            }
        }
        if m > 0 && *x == self.xs[m] {
            if let Some(w) = &self.right_override {
                return w.clone();
            }
        }
        self.closure_value(x)
    }

    /// Drops the overrides.
    pub fn closure(&self) -> Self {
        PLConvex1D { left_override: None, right_override: None, ..self.clone() }
    }

    pub fn is_lsc(&self) -> bool {
        self.lsc_defect().is_empty()
    }

    /// Endpoints where an override strictly exceeds the interpolated value.
    pub fn lsc_defect(&self) -> Vec<S> {
        let mut out = Vec::new();
        if self.strict_left() {
            out.push(self.xs[0].clone());
        }
        if self.strict_right() {
            out.push(self.xs[self.m()].clone());
        }
        out
    }

    pub fn effective_domain(&self) -> Interval<S> {
        let m = self.m();
        let lo = match self.left {
            Recession::Slope(_) => Bound::Unbounded,
            Recession::Wall if self.left_override == Some(PosInf) => Bound::Open(self.xs[0].clone()),
            Recession::Wall => Bound::Closed(self.xs[0].clone()),
        };
        let hi = match self.right {
            Recession::Slope(_) => Bound::Unbounded,
            Recession::Wall if self.right_override == Some(PosInf) => Bound::Open(self.xs[m].clone()),
            Recession::Wall => Bound::Closed(self.xs[m].clone()),
        };
        Interval { lo, hi }
    }

    /// `x ↦ f(−x)`, overrides included.
    pub fn mirror(&self) -> Self {
        let neg_rec = |r: &Recession<S>| match r {
            Recession::Slope(s) => Recession::Slope(-s.clone()),
            Recession::Wall => Recession::Wall,
        };
        PLConvex1D {
            xs: self.xs.iter().rev().map(|x| -x.clone()).collect(),
            vs: self.vs.iter().rev().cloned().collect(),
            slopes: self.slopes.iter().rev().map(|s| -s.clone()).collect(),
            left: neg_rec(&self.right),
            right: neg_rec(&self.left),
            left_override: self.right_override.clone(),
            right_override: self.left_override.clone(),
        }
    }

    /// Lower end of `{cl f ≤ λ}`: `None` when empty, `Some(None)` when unbounded.
    fn closure_level_lo(&self, lambda: &S) -> Option<Option<S>> {
        let m = self.m();
        let v0 = &self.vs[0];
        match &self.left {
            Recession::Slope(s) if s.is_positive() || (s.is_zero() && v0 <= lambda) => return Some(None),
            Recession::Slope(s) if v0 <= lambda => {
                return Some(Some(self.xs[0].clone() + (lambda.clone() - v0) / s));
            }
            Recession::Wall if v0 <= lambda => return Some(Some(self.xs[0].clone())),
            _ => {}
        }
        for i in 0..m {
            if self.vs[i + 1] <= *lambda {
                let x = self.xs[i].clone() + (lambda.clone() - &self.vs[i]) / self.slopes[i].clone();
                return Some(Some(x));
            }
        }
        match &self.right {
            Recession::Slope(s) if s.is_negative() => {
                Some(Some(self.xs[m].clone() + (lambda.clone() - &self.vs[m]) / s))
            }
            _ => None,
        }
    }

    /// `{x : f(x) ≤ λ}`, or `None` when empty. `λ` must be finite.
    pub fn level_set(&self, lambda: &ExtReal<S>) -> Result<Option<Interval<S>>> {
        let lambda = lambda.finite().ok_or(Error::NonFiniteLevel)?;
        let Some(lo) = self.closure_level_lo(lambda) else {
            return Ok(None);
        };
        let hi = self.mirror().closure_level_lo(lambda).expect("nonempty level set").map(|x| -x);
        let m = self.m();
        let mut lo = lo.map(Bound::Closed).unwrap_or(Bound::Unbounded);
        let mut hi = hi.map(Bound::Closed).unwrap_or(Bound::Unbounded);
        let above = |w: &Option<ExtReal<S>>| matches!(w, Some(w) if *w > Finite(lambda.clone()));
        if lo == Bound::Closed(self.xs[0].clone()) && above(&self.left_override) {
            lo = Bound::Open(self.xs[0].clone());
        }
        if hi == Bound::Closed(self.xs[m].clone()) && above(&self.right_override) {
            hi = Bound::Open(self.xs[m].clone());
        }
        if let (Some(l), Some(h)) = (lo.value(), hi.value()) {
            let degenerate = l == h && !(lo.is_closed() && hi.is_closed());
            if degenerate || l > h {
                return Ok(None);
            }
        }
        Ok(Some(Interval { lo, hi }))
    }

    /// `∂f(x)`, honouring overrides; `None` when empty.
    pub fn subdifferential(&self, x: &S) -> Option<SubgradientInterval<S>> {
        let m = self.m();
        if *x < self.xs[0] {
            return self.left.slope().cloned().map(SubgradientInterval::point);
        }
        if *x > self.xs[m] {
            return self.right.slope().cloned().map(SubgradientInterval::point);
        }
        match self.locate(x) {
            Ok(i) => {
                if (i == 0 && self.strict_left()) || (i == m && m > 0 && self.strict_right()) {
                    return None;
                }
                Some(SubgradientInterval { lo: self.slope_left_of(i), hi: self.slope_right_of(i) })
            }
            Err(j) => Some(SubgradientInterval::point(self.slopes[j - 1].clone())),
        }
    }

    /// Slope immediately left of breakpoint `i` (`-inf` at a left wall).
    pub fn slope_left_of(&self, i: usize) -> ExtReal<S> {
        if i == 0 {
            self.left.slope().cloned().map(Finite).unwrap_or(NegInf)
        } else {
            Finite(self.slopes[i - 1].clone())
        }
    }

    /// Slope immediately right of breakpoint `i` (`+inf` at a right wall).
    pub fn slope_right_of(&self, i: usize) -> ExtReal<S> {
        if i == self.m() {
            self.right.slope().cloned().map(Finite).unwrap_or(PosInf)
        } else {
            Finite(self.slopes[i].clone())
        }
    }

    /// True when breakpoint `i` carries a nonempty subdifferential.
    pub fn breakpoint_in_subdiff_domain(&self, i: usize) -> bool {
        !((i == 0 && self.strict_left()) || (i == self.m() && self.m() > 0 && self.strict_right()))
    }

    /// `f*(y) = (cl f)*(y)`.
    pub fn conjugate_at(&self, y: &S) -> ExtReal<S> {
        if let Recession::Slope(s) = &self.left {
            if y < s {
                return PosInf;
            }
        }
        if let Recession::Slope(s) = &self.right {
            if y > s {
                return PosInf;
            }
        }
        let mut best: Option<S> = None;
        for (x, v) in self.xs.iter().zip(&self.vs) {
            let c = x.clone() * y - v;
            if best.as_ref().map_or(true, |b| c > *b) {
                best = Some(c);
            }
        }
        Finite(best.expect("nonempty breakpoints"))
    }

    /// `x ↦ f(x) − y·x`.
    pub fn minus_linear(&self, y: &S) -> Self {
        let shift = |r: &Recession<S>| match r {
            Recession::Slope(s) => Recession::Slope(s.clone() - y),
            Recession::Wall => Recession::Wall,
        };
        let m = self.m();
        PLConvex1D {
            xs: self.xs.clone(),
            vs: self.xs.iter().zip(&self.vs).map(|(x, v)| v.clone() - y.clone() * x).collect(),
            slopes: self.slopes.iter().map(|s| s.clone() - y).collect(),
            left: shift(&self.left),
            right: shift(&self.right),
            left_override: self.left_override.as_ref().map(|w| w.plus(&-(y.clone() * &self.xs[0]))),
            right_override: self.right_override.as_ref().map(|w| w.plus(&-(y.clone() * &self.xs[m]))),
        }
    }

    /// `cl f` restricted to `[lo, hi]` (either end may be absent).
    pub fn restrict(&self, lo: Option<&S>, hi: Option<&S>) -> Result<Self> {
        let m = self.m();
        let lo = match (lo, &self.left) {
            (Some(l), Recession::Wall) if *l < self.xs[0] => Some(self.xs[0].clone()),
            (Some(l), _) => Some(l.clone()),
            (None, Recession::Wall) => Some(self.xs[0].clone()),
            (None, _) => None,
        };
        let hi = match (hi, &self.right) {
            (Some(h), Recession::Wall) if *h > self.xs[m] => Some(self.xs[m].clone()),
            (Some(h), _) => Some(h.clone()),
            (None, Recession::Wall) => Some(self.xs[m].clone()),
            (None, _) => None,
        };
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                return Err(Error::EmptySet);
            }
        }
        let mut xs = Vec::new();
        if let Some(l) = &lo {
            xs.push(l.clone());
        }
        for x in &self.xs {
            if lo.as_ref().map_or(true, |l| x > l) && hi.as_ref().map_or(true, |h| x < h) {
                xs.push(x.clone());
            }
        }
        if let Some(h) = &hi {
            if lo.as_ref() != Some(h) {
                xs.push(h.clone());
            }
        }
        if xs.is_empty() {
            xs.push(self.xs[0].clone());
        }
        let vs = xs
            .iter()
            .map(|x| self.closure_value(x).into_finite().ok_or(Error::EmptySet))
            .collect::<Result<Vec<_>>>()?;
        let left = if lo.is_some() { Recession::Wall } else { self.left.clone() };
        let right = if hi.is_some() { Recession::Wall } else { self.right.clone() };
        Self::new(xs, vs, left, right)
    }

    /// Same function, compared by value on a set of points that pins down
    /// both piecewise-linear representations.
    pub fn same_function(&self, other: &Self) -> bool {
        let mut pts: Vec<S> = self.xs.iter().chain(&other.xs).cloned().collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        pts.dedup();
        let mut probes = pts.clone();
        for w in pts.windows(2) {
            probes.push((w[0].clone() + &w[1]) / S::from_int(2));
        }
        let (lo, hi) = (pts[0].clone(), pts[pts.len() - 1].clone());
        for k in [1, 2] {
            probes.push(lo.clone() - S::from_int(k));
            probes.push(hi.clone() + S::from_int(k));
        }
        probes.iter().all(|x| self.eval(x).eq_tol(&other.eval(x)))
    }

    pub fn convert<T: Scalar>(&self) -> PLConvex1D<T> {
        PLConvex1D {
            xs: self.xs.iter().map(convert).collect(),
            vs: self.vs.iter().map(convert).collect(),
            slopes: self.slopes.iter().map(convert).collect(),
            left: self.left.convert(),
            right: self.right.convert(),
            left_override: self.left_override.as_ref().map(convert_ext),
            right_override: self.right_override.as_ref().map(convert_ext),
        }
    }
}

fn convert_ext<A: Scalar, B: Scalar>(v: &ExtReal<A>) -> ExtReal<B> {
    match v {
        Finite(x) => Finite(convert(x)),
        PosInf => PosInf,
        NegInf => NegInf,
    }
}

impl<S: Scalar> Evaluate<S> for PLConvex1D<S> {
    fn dim(&self) -> usize {
        1
    }

    fn value(&self, x: &Point<S>) -> ExtReal<S> {
        self.eval(x.x())
    }

    fn is_proper(&self) -> bool {
        true
    }
}

impl<S: Scalar> Subdifferentiable<S> for PLConvex1D<S> {
    fn eps_subgradient(&self, x: &Point<S>, x_star: &Point<S>, eps: &S) -> bool {
        let Finite(fx) = self.eval(x.x()) else {
            return false;
        };
        let y = x_star.x();
        match self.conjugate_at(y) {
            Finite(fy) => fx + fy - x.x().clone() * y <= *eps,
            _ => false,
        }
    }

    fn is_domain_normal(&self, x: &Point<S>, n: &Point<S>) -> bool {
        let x = x.x();
        let n = n.x();
        let dom = self.effective_domain();
        if !dom.contains(x) {
            return false;
        }
        let at_lo = dom.lo.value() == Some(x);
        let at_hi = dom.hi.value() == Some(x);
        match (at_lo, at_hi) {
            (true, true) => true,
            (true, false) => !n.is_positive(),
            (false, true) => !n.is_negative(),
            (false, false) => n.is_zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::Q;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn qr(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn abs_on_line() -> PLConvex1D<Q> {
        PLConvex1D::new(vec![q(-1), q(0), q(1)], vec![q(1), q(0), q(1)], Recession::Slope(q(-1)), Recession::Slope(q(1)))
            .unwrap()
    }

    #[test]
    fn interpolates_and_extends() {
        let f = abs_on_line();
        assert_eq!(f.eval(&qr(1, 2)), Finite(qr(1, 2)));
        assert_eq!(f.eval(&q(-3)), Finite(q(3)));
        let g = PLConvex1D::new(vec![q(-1), q(0), q(1)], vec![q(1), q(0), q(1)], Recession::Wall, Recession::Wall)
            .unwrap();
        assert_eq!(g.eval(&q(2)), PosInf);
    }

    #[test]
    fn rejects_nonconvex_and_bad_recession() {
        assert_eq!(
            PLConvex1D::new(vec![q(0), q(1), q(2)], vec![q(0), q(5), q(0)], Recession::Wall, Recession::Wall),
            Err(Error::NotConvex)
        );
        assert!(PLConvex1D::new(vec![q(0), q(1)], vec![q(0), q(1)], Recession::Slope(q(2)), Recession::Wall).is_err());
        assert!(PLConvex1D::new(vec![q(1), q(0)], vec![q(0), q(0)], Recession::Wall, Recession::Wall).is_err());
    }

    #[test]
    fn overrides_need_walls_and_raise_values() {
        let f = PLConvex1D::indicator(q(0), q(1)).unwrap();
        assert!(f.clone().with_overrides(Some(Finite(q(-1))), None).is_err());
        let g = f.clone().with_overrides(Some(Finite(q(1))), Some(Finite(q(0)))).unwrap();
        assert_eq!(g.lsc_defect(), vec![q(0)]);
        assert_eq!(g.eval(&q(0)), Finite(q(1)));
        assert!(abs_on_line().with_overrides(Some(Finite(q(2))), None).is_err());
        assert!(f.lsc_defect().is_empty());
    }

    #[test]
    fn domain_openness_follows_overrides() {
        let open = PLConvex1D::indicator(q(0), q(1)).unwrap().with_overrides(Some(PosInf), Some(PosInf)).unwrap();
        let d = open.effective_domain();
        assert_eq!(d, Interval::open(q(0), q(1)));
        assert_eq!(PLConvex1D::indicator(q(0), q(1)).unwrap().effective_domain(), Interval::closed(q(0), q(1)));
    }

    #[test]
    fn level_sets() {
        let f = PLConvex1D::indicator(q(0), q(1)).unwrap();
        assert_eq!(f.level_set(&Finite(q(0))).unwrap(), Some(Interval::closed(q(0), q(1))));
        assert_eq!(f.level_set(&Finite(q(-1))).unwrap(), None);
        assert_eq!(f.level_set(&PosInf), Err(Error::NonFiniteLevel));
        let a = abs_on_line();
        assert_eq!(a.level_set(&Finite(qr(1, 2))).unwrap(), Some(Interval::closed(qr(-1, 2), qr(1, 2))));
        let lin = PLConvex1D::affine(q(1), q(0));
        assert_eq!(
            lin.level_set(&Finite(q(2))).unwrap(),
            Some(Interval { lo: Bound::Unbounded, hi: Bound::Closed(q(2)) })
        );
        let raised = PLConvex1D::new(vec![q(0), q(1)], vec![q(0), q(1)], Recession::Wall, Recession::Wall)
            .unwrap()
            .with_overrides(Some(Finite(q(3))), None)
            .unwrap();
        assert_eq!(raised.level_set(&Finite(q(1))).unwrap(), Some(Interval { lo: Bound::Open(q(0)), hi: Bound::Closed(q(1)) }));
        assert_eq!(raised.level_set(&Finite(q(0))).unwrap(), None);
    }

    #[test]
    fn subdifferential_with_and_without_overrides() {
        let a = abs_on_line();
        assert_eq!(a.subdifferential(&q(0)), Some(SubgradientInterval { lo: Finite(q(-1)), hi: Finite(q(1)) }));
        let bounded = PLConvex1D::new(vec![q(-1), q(0), q(1)], vec![q(1), q(0), q(1)], Recession::Wall, Recession::Wall)
            .unwrap();
        assert_eq!(bounded.subdifferential(&q(1)), Some(SubgradientInterval { lo: Finite(q(1)), hi: PosInf }));
        assert_eq!(bounded.subdifferential(&q(2)), None);
        let raised = bounded.with_overrides(None, Some(Finite(q(2)))).unwrap();
        assert_eq!(raised.subdifferential(&q(1)), None);
        assert_eq!(PLConvex1D::affine(q(0), q(0)).subdifferential(&q(7)), Some(SubgradientInterval::point(q(0))));
    }

    #[test]
    fn conjugate_values() {
        let a = abs_on_line();
        assert_eq!(a.conjugate_at(&qr(1, 2)), Finite(q(0)));
        assert_eq!(a.conjugate_at(&q(2)), PosInf);
        let ind = PLConvex1D::indicator(q(0), q(1)).unwrap();
        assert_eq!(ind.conjugate_at(&q(3)), Finite(q(3)));
        assert_eq!(ind.conjugate_at(&q(-3)), Finite(q(0)));
    }

    #[test]
    fn restriction_and_mirror() {
        let a = abs_on_line();
        let r = a.restrict(Some(&qr(-1, 2)), None).unwrap();
        assert_eq!(r.eval(&q(-1)), PosInf);
        assert_eq!(r.eval(&qr(-1, 2)), Finite(qr(1, 2)));
        assert_eq!(r.eval(&q(5)), Finite(q(5)));
        let m = r.mirror();
        assert_eq!(m.eval(&qr(1, 2)), Finite(qr(1, 2)));
        assert_eq!(m.eval(&q(-5)), Finite(q(5)));
    }

    #[test]
    fn same_function_ignores_redundant_breakpoints() {
        let a = abs_on_line();
        let b = PLConvex1D::new(vec![q(0)], vec![q(0)], Recession::Slope(q(-1)), Recession::Slope(q(1))).unwrap();
        assert!(a.same_function(&b));
        let c = PLConvex1D::new(vec![q(0)], vec![q(0)], Recession::Slope(q(-1)), Recession::Slope(q(2))).unwrap();
        assert!(!a.same_function(&c));
    }

    #[test]
    fn eps_subgradients_follow_fenchel_young_gap() {
        let f = PLConvex1D::new(vec![q(-1), q(0), q(1)], vec![q(1), q(0), q(1)], Recession::Wall, Recession::Wall)
            .unwrap();
        let p = |v: Q| Point::scalar(v);
        assert!(f.eps_subgradient(&p(q(0)), &p(qr(11, 10)), &qr(1, 5)));
        assert!(!f.eps_subgradient(&p(q(0)), &p(q(2)), &qr(1, 2)));
        assert!(f.is_subgradient(&p(q(1)), &p(q(7))));
        assert!(f.is_domain_normal(&p(q(1)), &p(q(3))));
        assert!(!f.is_domain_normal(&p(q(1)), &p(q(-3))));
        assert!(!f.is_domain_normal(&p(qr(1, 2)), &p(q(1))));
    }
}
