use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{Evaluate, Subdifferentiable};
use crate::point::Point;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// Indices of `points` in lexicographic order, or an error on duplicates.
fn sorted_index<S: Scalar>(points: &[Point<S>]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
    if order.windows(2).any(|w| points[w[0]] == points[w[1]]) {
        return Err(Error::invalid("duplicate grid point"));
    }
    Ok(order)
}

/// A finite point set in ℝ^dim.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSet<S> {
    dim: usize,
    points: Vec<Point<S>>,
}

impl<S: Scalar> SampledSet<S> {
    pub fn new(dim: usize, points: Vec<Point<S>>) -> Result<Self> {
        check_dim(dim)?;
        for p in &points {
            p.check_dim(dim)?;
        }
        Ok(SampledSet { dim, points })
    }

    pub fn from_1d(xs: &[S]) -> Self {
        SampledSet { dim: 1, points: xs.iter().cloned().map(Point::scalar).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Membership up to the backend tolerance.
    pub fn contains(&self, x: &Point<S>) -> bool {
        self.points.iter().any(|p| p.eq_tol(x))
    }
}

/// Extended-real values on finitely many points, `+inf` everywhere else.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<S> {
    dim: usize,
    points: Vec<Point<S>>,
    values: Vec<ExtReal<S>>,
    order: Vec<usize>,
}

impl<S: Scalar> GridFunction<S> {
    pub fn new(dim: usize, points: Vec<Point<S>>, values: Vec<ExtReal<S>>) -> Result<Self> {
        check_dim(dim)?;
        if points.len() != values.len() {
            return Err(Error::invalid("points and values differ in length"));
        }
        for p in &points {
            p.check_dim(dim)?;
        }
        let order = sorted_index(&points)?;
        Ok(GridFunction { dim, points, values, order })
    }

    /// Samples `f` at the given 1D abscissae.
    pub fn sample_1d(xs: &[S], f: impl Fn(&S) -> ExtReal<S>) -> Result<Self> {
        let points = xs.iter().cloned().map(Point::scalar).collect();
        let values = xs.iter().map(f).collect();
        Self::new(1, points, values)
    }

    pub fn sample(dim: usize, points: Vec<Point<S>>, f: impl Fn(&Point<S>) -> ExtReal<S>) -> Result<Self> {
        let values = points.iter().map(f).collect();
        Self::new(dim, points, values)
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn values(&self) -> &[ExtReal<S>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, x: &Point<S>) -> Option<usize> {
        let k = self.order.partition_point(|&i| self.points[i].lex_cmp(x) == Ordering::Less);
        (k < self.order.len() && self.points[self.order[k]] == *x).then(|| self.order[k])
    }

    /// Indices of finite-valued points.
    pub fn finite_indices(&self) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.values[i].is_finite()).collect()
    }

    pub fn finite_points(&self) -> SampledSet<S> {
        SampledSet {
            dim: self.dim,
            points: self.finite_indices().into_iter().map(|i| self.points[i].clone()).collect(),
        }
    }

    /// Points with `f ≤ λ`; `λ` must be finite.
    pub fn level_set(&self, lambda: &ExtReal<S>) -> Result<SampledSet<S>> {
        if !lambda.is_finite() {
            return Err(Error::NonFiniteLevel);
        }
        let points = (0..self.points.len())
            .filter(|&i| self.values[i] <= *lambda)
            .map(|i| self.points[i].clone())
            .collect();
        Ok(SampledSet { dim: self.dim, points })
    }

    /// Same points with values replaced by `+inf` outside `keep`.
    pub fn restrict(&self, keep: impl Fn(&Point<S>) -> bool) -> Self {
        let values = self
            .points
            .iter()
            .zip(&self.values)
            .map(|(p, v)| if keep(p) { v.clone() } else { PosInf })
            .collect();
        GridFunction { values, ..self.clone() }
    }

    pub fn map_values(&self, f: impl Fn(&Point<S>, &ExtReal<S>) -> ExtReal<S>) -> Self {
        let values = self.points.iter().zip(&self.values).map(|(p, v)| f(p, v)).collect();
        GridFunction { values, ..self.clone() }
    }

    /// Vertices `(x, f(x))` of the lower convex hull of the finite 1D samples.
    pub fn lower_hull_1d(&self) -> Result<Vec<(S, S)>> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim });
        }
        let mut pts: Vec<(S, S)> = self
            .finite_indices()
            .into_iter()
            .map(|i| (self.points[i].x().clone(), self.values[i].finite().unwrap().clone()))
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        Ok(lower_chain(pts))
    }

    /// True iff every listed point lies on the lower convex envelope of the
    /// finite samples; listed `+inf` points inside their hull count as defects.
    pub fn is_convex_on_grid(&self) -> Result<bool> {
        if !self.is_proper() {
            return Err(Error::improper("grid function has no finite value or takes -inf"));
        }
        if self.dim == 1 {
            let hull = self.lower_hull_1d()?;
            return Ok(self.points.iter().zip(&self.values).all(|(p, v)| {
                let h = eval_chain(&hull, p.x());
                match v {
                    Finite(_) => v.eq_tol(&h),
                    _ => h == PosInf,
                }
            }));
        }
        let finite: Vec<Point<S>> = self.finite_points().points;
        let poly = convex_hull_2d(&finite);
        for (i, p) in self.points.iter().enumerate() {
            match &self.values[i] {
                Finite(_) => {
                    if !self.has_affine_support(i) {
                        return Ok(false);
                    }
                }
                _ => {
                    if point_in_polygon(&poly, p) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Some affine minorant of the samples touches at point `i` (2D grids).
    pub fn has_affine_support(&self, i: usize) -> bool {
        let Finite(fp) = &self.values[i] else {
            return false;
        };
        let p = &self.points[i];
        let big = S::from_int(10_000_000);
        let mut poly = vec![
            Point::pair(-big.clone(), -big.clone()),
            Point::pair(big.clone(), -big.clone()),
            Point::pair(big.clone(), big.clone()),
            Point::pair(-big.clone(), big),
        ];
        // Far samples first: they bound the polygon before the thin
        // constraints from near neighbours are applied.
        let mut order: Vec<usize> = (0..self.points.len()).filter(|&j| j != i && self.values[j].is_finite()).collect();
        order.sort_by(|&j, &k| {
            let (dj, dk) = (self.points[j].sub(p).norm2(), self.points[k].sub(p).norm2());
            dk.partial_cmp(&dj).unwrap_or(Ordering::Equal)
        });
        for j in order {
            let (q, Finite(fq)) = (&self.points[j], &self.values[j]) else { continue };
            let a = q.sub(p);
            let b = fq.clone() - fp + S::tolerance();
            poly = clip_half_plane(&poly, &a, &b);
            if poly.is_empty() {
                return false;
            }
        }
        true
    }
}

/// Lower monotone chain of points sorted by abscissa.
pub(crate) fn lower_chain<S: Scalar>(pts: Vec<(S, S)>) -> Vec<(S, S)> {
    let mut hull: Vec<(S, S)> = Vec::new();
    for p in pts {
        if let Some(last) = hull.last() {
            if last.0 == p.0 {
                if p.1 < last.1 {
                    hull.pop();
                } else {
                    continue;
                }
            }
        }
        while hull.len() >= 2 {
            let (o, a) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = (a.0.clone() - &o.0) * (p.1.clone() - &o.1) - (a.1.clone() - &o.1) * (p.0.clone() - &o.0);
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

/// Piecewise-linear interpolation of a chain; `+inf` outside its span.
pub(crate) fn eval_chain<S: Scalar>(hull: &[(S, S)], x: &S) -> ExtReal<S> {
    if hull.is_empty() || *x < hull[0].0 || *x > hull[hull.len() - 1].0 {
        return PosInf;
    }
    let j = hull.partition_point(|h| h.0 < *x);
    if hull[j].0 == *x {
        return Finite(hull[j].1.clone());
    }
    let (a, b) = (&hull[j - 1], &hull[j]);
    Finite(a.1.clone() + (b.1.clone() - &a.1) * (x.clone() - &a.0) / (b.0.clone() - &a.0))
}

fn clip_half_plane<S: Scalar>(poly: &[Point<S>], a: &Point<S>, b: &S) -> Vec<Point<S>> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for k in 0..n {
        let cur = &poly[k];
        let nxt = &poly[(k + 1) % n];
        let dc = a.dot(cur) - b;
        let dn = a.dot(nxt) - b;
        let cur_in = !dc.is_positive();
        let nxt_in = !dn.is_positive();
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != nxt_in {
            let t = dc.clone() / (dc - dn);
            out.push(cur.add(&nxt.sub(cur).scale(&t)));
        }
    }
    out
}

/// Counter-clockwise convex hull without collinear vertices.
pub fn convex_hull_2d<S: Scalar>(points: &[Point<S>]) -> Vec<Point<S>> {
    let mut pts: Vec<Point<S>> = points.to_vec();
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &Point<S>, a: &Point<S>, b: &Point<S>| {
        (a.0[0].clone() - &o.0[0]) * (b.0[1].clone() - &o.0[1]) - (a.0[1].clone() - &o.0[1]) * (b.0[0].clone() - &o.0[0])
    };
    let mut lower: Vec<Point<S>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point<S>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Membership in a convex polygon from [`convex_hull_2d`], boundary included.
pub fn point_in_polygon<S: Scalar>(poly: &[Point<S>], p: &Point<S>) -> bool {
    let tol = S::tolerance();
    match poly.len() {
        0 => false,
        1 => poly[0].eq_tol(p),
        2 => {
            let d = poly[1].sub(&poly[0]);
            let w = p.sub(&poly[0]);
            let cross = d.0[0].clone() * &w.0[1] - d.0[1].clone() * &w.0[0];
            let t = d.dot(&w);
            cross.abs() <= tol && !t.lt_tol(&S::zero()) && t.le_tol(&d.norm2())
        }
        n => (0..n).all(|k| {
            let a = &poly[k];
            let b = &poly[(k + 1) % n];
            let cross = (b.0[0].clone() - &a.0[0]) * (p.0[1].clone() - &a.0[1])
                - (b.0[1].clone() - &a.0[1]) * (p.0[0].clone() - &a.0[0]);
            !cross.lt_tol(&S::zero())
        }),
    }
}

impl<S: Scalar> Evaluate<S> for GridFunction<S> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &Point<S>) -> ExtReal<S> {
        self.index_of(x).map(|i| self.values[i].clone()).unwrap_or(PosInf)
    }

    fn is_proper(&self) -> bool {
        !self.values.contains(&NegInf) && self.values.iter().any(|v| v.is_finite())
    }
}

impl<S: Scalar> Subdifferentiable<S> for GridFunction<S> {
    fn eps_subgradient(&self, x: &Point<S>, x_star: &Point<S>, eps: &S) -> bool {
        let Finite(fx) = self.value(x) else {
            return false;
        };
        let slack = eps.clone() + S::tolerance();
        self.points.iter().zip(&self.values).all(|(y, fy)| match fy {
            Finite(fy) => fx.clone() + y.sub(x).dot(x_star) <= fy.clone() + &slack,
            _ => true,
        })
    }

    fn is_domain_normal(&self, x: &Point<S>, n: &Point<S>) -> bool {
        if !self.value(x).is_finite() {
            return false;
        }
        self.points
            .iter()
            .zip(&self.values)
            .all(|(y, fy)| !fy.is_finite() || y.sub(x).dot(n).le_tol(&S::zero()))
    }
}
