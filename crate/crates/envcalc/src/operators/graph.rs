use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar};
use crate::funcrep::{PLConvex1D, SubgradientInterval};
use crate::point::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Sampled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exact => "exact",
            Provenance::Sampled => "sampled",
        })
    }
}

/// A piece of the graph of `∂f` for piecewise-linear `f`.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphCell<S> {
    /// `{a} × [lo, hi]` at a breakpoint; `value = f(a)`.
    Vertical { a: S, value: S, lo: ExtReal<S>, hi: ExtReal<S> },
    /// `(lo, hi) × {slope}` on an open segment where `f` is affine through
    /// `(anchor, anchor_value)`.
    Horizontal { lo: ExtReal<S>, hi: ExtReal<S>, slope: S, anchor: S, anchor_value: S },
}

impl<S: Scalar> GraphCell<S> {
    pub fn contains(&self, a: &S, a_star: &S) -> bool {
        match self {
            GraphCell::Vertical { a: b, lo, hi, .. } => {
                a == b && *lo <= Finite(a_star.clone()) && Finite(a_star.clone()) <= *hi
            }
            GraphCell::Horizontal { lo, hi, slope, .. } => {
                a_star == slope && *lo < Finite(a.clone()) && Finite(a.clone()) < *hi
            }
        }
    }

    pub fn primal_lo(&self) -> ExtReal<S> {
        match self {
            GraphCell::Vertical { a, .. } => Finite(a.clone()),
            GraphCell::Horizontal { lo, .. } => lo.clone(),
        }
    }

    pub fn primal_hi(&self) -> ExtReal<S> {
        match self {
            GraphCell::Vertical { a, .. } => Finite(a.clone()),
            GraphCell::Horizontal { hi, .. } => hi.clone(),
        }
    }

    /// Projection onto the dual axis, as a closed interval.
    pub fn dual_range(&self) -> SubgradientInterval<S> {
        match self {
            GraphCell::Vertical { lo, hi, .. } => SubgradientInterval { lo: lo.clone(), hi: hi.clone() },
            GraphCell::Horizontal { slope, .. } => SubgradientInterval::point(slope.clone()),
        }
    }

    /// `f(a)` on this cell's primal range.
    pub fn f_at(&self, a: &S) -> S {
        match self {
            GraphCell::Vertical { value, .. } => value.clone(),
            GraphCell::Horizontal { slope, anchor, anchor_value, .. } => {
                anchor_value.clone() + slope.clone() * (a.clone() - anchor)
            }
        }
    }
}

/// The full graph of `∂f` for a piecewise-linear `f`, as cells ordered along
/// the primal axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactGraph<S> {
    cells: Vec<GraphCell<S>>,
}

impl<S: Scalar> ExactGraph<S> {
    pub fn from_pl(f: &PLConvex1D<S>) -> Self {
        let xs = f.breakpoints();
        let vs = f.values();
        let m = xs.len() - 1;
        let mut cells = Vec::new();
        if let Some(s) = f.left().slope() {
            cells.push(GraphCell::Horizontal {
                lo: NegInf,
                hi: Finite(xs[0].clone()),
                slope: s.clone(),
                anchor: xs[0].clone(),
                anchor_value: vs[0].clone(),
            });
        }
        for i in 0..=m {
            if f.breakpoint_in_subdiff_domain(i) {
                cells.push(GraphCell::Vertical {
                    a: xs[i].clone(),
                    value: vs[i].clone(),
                    lo: f.slope_left_of(i),
                    hi: f.slope_right_of(i),
                });
            }
            if i < m {
                cells.push(GraphCell::Horizontal {
                    lo: Finite(xs[i].clone()),
                    hi: Finite(xs[i + 1].clone()),
                    slope: f.slopes()[i].clone(),
                    anchor: xs[i].clone(),
                    anchor_value: vs[i].clone(),
                });
            }
        }
        if let Some(s) = f.right().slope() {
            cells.push(GraphCell::Horizontal {
                lo: Finite(xs[m].clone()),
                hi: PosInf,
                slope: s.clone(),
                anchor: xs[m].clone(),
                anchor_value: vs[m].clone(),
            });
        }
        ExactGraph { cells }
    }

    pub fn cells(&self) -> &[GraphCell<S>] {
        &self.cells
    }

    pub fn contains(&self, a: &S, a_star: &S) -> bool {
        self.cells.iter().any(|c| c.contains(a, a_star))
    }

    /// `a ∈ D(∂f)`.
    pub fn in_domain(&self, a: &S) -> bool {
        let a = Finite(a.clone());
        self.cells.iter().any(|c| match c {
            GraphCell::Vertical { .. } => c.primal_lo() == a,
            GraphCell::Horizontal { lo, hi, .. } => *lo < a && a < *hi,
        })
    }

    /// `a* ∈ R(∂f)`.
    pub fn in_range(&self, a_star: &S) -> bool {
        self.cells.iter().any(|c| c.dual_range().contains(a_star))
    }

    /// Dual projections of the cells, merged into disjoint closed intervals.
    pub fn range_intervals(&self) -> Vec<SubgradientInterval<S>> {
        let mut parts: Vec<SubgradientInterval<S>> = self.cells.iter().map(|c| c.dual_range()).collect();
        parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap_or(std::cmp::Ordering::Equal));
        let mut out: Vec<SubgradientInterval<S>> = Vec::new();
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        out
    }

    /// Closure of `D(∂f)`: `(inf, sup)` of the primal projections.
    pub fn domain_bounds(&self) -> (ExtReal<S>, ExtReal<S>) {
        match (self.cells.first(), self.cells.last()) {
            (Some(a), Some(b)) => (a.primal_lo(), b.primal_hi()),
            _ => (PosInf, NegInf),
        }
    }

    /// Primal projections merged into disjoint intervals `(lo, hi)`; a
    /// breakpoint between two open segments glues them together.
    pub fn domain_components(&self) -> Vec<(ExtReal<S>, ExtReal<S>)> {
        let mut out: Vec<(ExtReal<S>, ExtReal<S>)> = Vec::new();
        for c in &self.cells {
            let (lo, hi) = (c.primal_lo(), c.primal_hi());
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    last.1 = hi;
                }
                _ => out.push((lo, hi)),
            }
        }
        out
    }

    /// Index range of cells whose primal span meets `[lo, hi]`, found by bisection.
    pub fn window(&self, lo: &S, hi: &S) -> std::ops::Range<usize> {
        let start = self.cells.partition_point(|c| c.primal_hi() < Finite(lo.clone()));
        let end = self.cells.partition_point(|c| c.primal_lo() <= Finite(hi.clone()));
        start..end.max(start)
    }
}

/// `Φ(a, a*) = constant + ⟨primal, a⟩ + ⟨dual, a*⟩ + coupling·⟨a, a*⟩ + value·f(a)`.
///
/// Every envelope in this crate is a supremum of such a functional over graph
/// pairs, possibly restricted to pairs with `f(a) ≤ L`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairFunctional<S> {
    pub constant: S,
    pub primal: Point<S>,
    pub dual: Point<S>,
    pub coupling: S,
    pub value: S,
}

impl<S: Scalar> PairFunctional<S> {
    pub fn zero(dim: usize) -> Self {
        PairFunctional {
            constant: S::zero(),
            primal: Point::zeros(dim),
            dual: Point::zeros(dim),
            coupling: S::zero(),
            value: S::zero(),
        }
    }

    pub fn eval(&self, a: &Point<S>, a_star: &Point<S>, fa: Option<&S>) -> S {
        let mut v = self.constant.clone() + self.primal.dot(a) + self.dual.dot(a_star) + self.coupling.clone() * a.dot(a_star);
        if !self.value.is_zero() {
            v += self.value.clone() * fa.expect("f(a) required");
        }
        v
    }

    fn sup_cell(&self, cell: &GraphCell<S>, level: Option<&S>) -> ExtReal<S> {
        let (ca, cs) = (self.primal.x(), self.dual.x());
        match cell {
            GraphCell::Vertical { a, value, lo, hi } => {
                if level.is_some_and(|l| value > l) {
                    return NegInf;
                }
                let base = self.constant.clone() + ca.clone() * a + self.value.clone() * value;
                let coef = cs.clone() + self.coupling.clone() * a;
                if coef.is_positive() {
                    match hi {
                        Finite(h) => Finite(base + coef * h),
                        _ => PosInf,
                    }
                } else if coef.is_negative() {
                    match lo {
                        Finite(l) => Finite(base + coef * l),
                        _ => PosInf,
                    }
                } else {
                    Finite(base)
                }
            }
            GraphCell::Horizontal { lo, hi, slope, anchor, anchor_value } => {
                let mut jlo = lo.clone();
                let mut jhi = hi.clone();
                if let Some(l) = level {
                    if slope.is_zero() {
                        if anchor_value > l {
                            return NegInf;
                        }
                    } else {
                        let c = Finite(anchor.clone() + (l.clone() - anchor_value) / slope);
                        if slope.is_positive() {
                            if c <= jlo {
                                return NegInf;
                            }
                            if c < jhi {
                                jhi = c;
                            }
                        } else {
                            if c >= jhi {
                                return NegInf;
                            }
                            if c > jlo {
                                jlo = c;
                            }
                        }
                    }
                }
                let k_const = self.constant.clone()
                    + cs.clone() * slope
                    + self.value.clone() * (anchor_value.clone() - slope.clone() * anchor);
                let k = ca.clone() + self.coupling.clone() * slope + self.value.clone() * slope;
                if k.is_positive() {
                    match jhi {
                        Finite(h) => Finite(k_const + k * h),
                        _ => PosInf,
                    }
                } else if k.is_negative() {
                    match jlo {
                        Finite(l) => Finite(k_const + k * l),
                        _ => PosInf,
                    }
                } else {
                    Finite(k_const)
                }
            }
        }
    }
}

/// A finite set of pairs `(a, a*)`, optionally backed by an exact cell
/// structure covering the whole graph.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorGraph<S> {
    dim: usize,
    pairs: Vec<(Point<S>, Point<S>)>,
    values: Option<Vec<S>>,
    provenance: Provenance,
    cells: Option<ExactGraph<S>>,
}

impl<S: Scalar> OperatorGraph<S> {
    pub fn new(dim: usize, pairs: Vec<(Point<S>, Point<S>)>, provenance: Provenance) -> Result<Self> {
        for (a, b) in &pairs {
            a.check_dim(dim)?;
            b.check_dim(dim)?;
        }
        Ok(OperatorGraph { dim, pairs, values: None, provenance, cells: None })
    }

    /// Pairs of a subdifferential, each with `f(a)`.
    pub fn with_values(dim: usize, pairs: Vec<(Point<S>, Point<S>)>, values: Vec<S>, provenance: Provenance) -> Result<Self> {
        if pairs.len() != values.len() {
            return Err(Error::invalid("pairs and values differ in length"));
        }
        let mut g = Self::new(dim, pairs, provenance)?;
        g.values = Some(values);
        Ok(g)
    }

    pub(crate) fn with_cells(mut self, cells: ExactGraph<S>) -> Self {
        self.cells = Some(cells);
        self.provenance = Provenance::Exact;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> &[(Point<S>, Point<S>)] {
        &self.pairs
    }

    pub fn values(&self) -> Option<&[S]> {
        self.values.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn cells(&self) -> Option<&ExactGraph<S>> {
        self.cells.as_ref()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// No pairs and no cells: the graph is empty.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.cells.as_ref().map_or(true, |c| c.cells().is_empty())
    }

    /// The listed pairs only, without the cell structure.
    pub fn sampled_view(&self) -> Self {
        OperatorGraph { cells: None, ..self.clone() }
    }

    /// Keeps the pairs selected by `keep` (and drops the cells).
    pub fn filter(&self, keep: impl Fn(&Point<S>, &Point<S>) -> bool) -> Self {
        let mut pairs = Vec::new();
        let mut values = self.values.as_ref().map(|_| Vec::new());
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if keep(a, b) {
                pairs.push((a.clone(), b.clone()));
                if let (Some(out), Some(vs)) = (values.as_mut(), self.values.as_ref()) {
                    out.push(vs[i].clone());
                }
            }
        }
        OperatorGraph { dim: self.dim, pairs, values, provenance: self.provenance, cells: None }
    }

    /// `D(G)` of the listed pairs, deduplicated.
    pub fn domain_points(&self) -> Vec<Point<S>> {
        let mut out: Vec<Point<S>> = self.pairs.iter().map(|p| p.0.clone()).collect();
        out.sort_by(|a, b| a.lex_cmp(b));
        out.dedup();
        out
    }

    /// `R(G)` of the listed pairs, deduplicated.
    pub fn range_points(&self) -> Vec<Point<S>> {
        let mut out: Vec<Point<S>> = self.pairs.iter().map(|p| p.1.clone()).collect();
        out.sort_by(|a, b| a.lex_cmp(b));
        out.dedup();
        out
    }

    pub fn in_domain(&self, a: &Point<S>) -> bool {
        match &self.cells {
            Some(c) => c.in_domain(a.x()),
            None => self.pairs.iter().any(|p| p.0.eq_tol(a)),
        }
    }

    /// Membership: cell structure when present, otherwise exact equality
    /// (exact provenance) or distance within the backend tolerance.
    pub fn contains(&self, a: &Point<S>, a_star: &Point<S>) -> bool {
        if let Some(c) = &self.cells {
            return c.contains(a.x(), a_star.x());
        }
        match self.provenance {
            Provenance::Exact => self.pairs.iter().any(|(p, q)| p == a && q == a_star),
            Provenance::Sampled => {
                let tol2 = S::tolerance() * S::tolerance();
                self.pairs.iter().any(|(p, q)| (p.sub(a).norm2() + q.sub(a_star).norm2()) <= tol2)
            }
        }
    }

    /// `sup Φ(a, a*)` over the graph, optionally restricted to `f(a) ≤ level`.
    pub fn sup_functional(&self, phi: &PairFunctional<S>, level: Option<&S>) -> Result<ExtReal<S>> {
        if let Some(cells) = &self.cells {
            let mut best = NegInf;
            for c in cells.cells() {
                let v = phi.sup_cell(c, level);
                if v > best {
                    best = v;
                    if best == PosInf {
                        break;
                    }
                }
            }
            return Ok(best);
        }
        let needs_values = !phi.value.is_zero() || level.is_some();
        let values = match (&self.values, needs_values) {
            (Some(v), _) => Some(v),
            (None, false) => None,
            (None, true) => return Err(Error::precondition("graph carries no function values")),
        };
        let mut best: Option<S> = None;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            let fa = values.map(|v| &v[i]);
            if let (Some(l), Some(fa)) = (level, fa) {
                if fa > l {
                    continue;
                }
            }
            let v = phi.eval(a, b, fa);
            if best.as_ref().map_or(true, |m| v > *m) {
                best = Some(v);
            }
        }
        Ok(best.map(Finite).unwrap_or(NegInf))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::Q;
    use crate::funcrep::Recession;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn cells_of_abs() {
        let abs = PLConvex1D::new(vec![q(0)], vec![q(0)], Recession::Slope(q(-1)), Recession::Slope(q(1))).unwrap();
        let g = ExactGraph::from_pl(&abs);
        assert_eq!(g.cells().len(), 3);
        assert!(g.contains(&q(0), &Q::ratio(1, 2)));
        assert!(g.contains(&q(-5), &q(-1)));
        assert!(!g.contains(&q(-5), &q(1)));
        assert_eq!(g.domain_bounds(), (NegInf, PosInf));
        assert_eq!(g.range_intervals(), vec![SubgradientInterval { lo: Finite(q(-1)), hi: Finite(q(1)) }]);
    }

    #[test]
    fn strict_override_removes_the_vertical_cell() {
        let f = PLConvex1D::indicator(q(0), q(1)).unwrap().with_overrides(Some(PosInf), None).unwrap();
        let g = ExactGraph::from_pl(&f);
        assert!(!g.in_domain(&q(0)));
        assert!(g.in_domain(&Q::ratio(1, 2)));
        assert!(g.in_domain(&q(1)));
        assert_eq!(g.domain_components(), vec![(Finite(q(0)), Finite(q(1)))]);
    }

    #[test]
    fn level_filtered_sup_on_open_segment() {
        let f = PLConvex1D::new(vec![q(0), q(2)], vec![q(0), q(2)], Recession::Wall, Recession::Wall).unwrap();
        let g = ExactGraph::from_pl(&f);
        let mut phi = PairFunctional::zero(1);
        phi.primal = Point::scalar(q(1));
        let og = OperatorGraph::new(1, vec![], Provenance::Exact).unwrap().with_cells(g);
        assert_eq!(og.sup_functional(&phi, None).unwrap(), Finite(q(2)));
        assert_eq!(og.sup_functional(&phi, Some(&q(1))).unwrap(), Finite(q(1)));
        assert_eq!(og.sup_functional(&phi, Some(&q(-1))).unwrap(), NegInf);
    }
}
