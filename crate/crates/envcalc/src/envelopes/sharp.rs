use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, PosInf, Scalar};
use crate::funcrep::{Bound, Evaluate, GridFunction, Interval, MaxAffine, PLConvex1D, Recession, SampledSet};
use crate::operators::{normal_cone_graph, OperatorGraph};
use crate::point::Point;
use crate::transforms::{cl_conv_grid, Hull};

/// `C^#`: points `x` with `⟨x − a, a*⟩ ≤ 0` for every sampled normal pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PortableHull<S> {
    dim: usize,
    normals: Vec<(Point<S>, Point<S>)>,
}

impl<S: Scalar> PortableHull<S> {
    pub fn contains(&self, x: &Point<S>) -> bool {
        self.normals.iter().all(|(a, n)| x.sub(a).dot(n).le_tol(&S::zero()))
    }

    /// The probes lying in the hull.
    pub fn sample(&self, probes: &[Point<S>]) -> Result<SampledSet<S>> {
        SampledSet::new(self.dim, probes.iter().filter(|p| self.contains(p)).cloned().collect())
    }

    pub fn normals(&self) -> &[(Point<S>, Point<S>)] {
        &self.normals
    }
}

/// Portable hull of `C` from a sampled graph of `N_C`; each pair is checked
/// against the points of `C`.
pub fn portable_hull<S: Scalar>(c: &SampledSet<S>, normals: &OperatorGraph<S>) -> Result<PortableHull<S>> {
    if normals.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), found: normals.dim() });
    }
    for (a, n) in normals.pairs() {
        if !c.contains(a) {
            return Err(Error::InvalidNormal(format!("base point {a} is not in the set")));
        }
        if !c.points().iter().all(|y| y.sub(a).dot(n).le_tol(&S::zero())) {
            return Err(Error::InvalidNormal(format!("{n} is not normal at {a}")));
        }
    }
    Ok(PortableHull { dim: c.dim(), normals: normals.pairs().to_vec() })
}

/// `(dom f)^#`, analytic for piecewise-linear functions and sampled for grids.
#[derive(Clone, Debug, PartialEq)]
pub enum DomainHull<S> {
    Interval(Interval<S>),
    Sampled(PortableHull<S>),
}

impl<S: Scalar> DomainHull<S> {
    pub fn contains(&self, x: &Point<S>) -> bool {
        match self {
            DomainHull::Interval(i) => i.contains(x.x()),
            DomainHull::Sampled(h) => h.contains(x),
        }
    }
}

/// `(dom f)^#` for piecewise-linear `f`: a closed end of `dom f` carries the
/// half-line of normals and survives; an open or unbounded end does not.
pub fn dom_sharp_pl<S: Scalar>(f: &PLConvex1D<S>) -> DomainHull<S> {
    let xs = f.breakpoints();
    let m = xs.len() - 1;
    let kept = |r: &Recession<S>, o: Option<&ExtReal<S>>, x: &S| match (r, o) {
        (Recession::Wall, Some(PosInf)) if m > 0 => Bound::Unbounded,
        (Recession::Wall, _) => Bound::Closed(x.clone()),
        _ => Bound::Unbounded,
    };
    DomainHull::Interval(Interval {
        lo: kept(f.left(), f.left_override(), &xs[0]),
        hi: kept(f.right(), f.right_override(), &xs[m]),
    })
}

/// `(dom f)^#` for a grid function, from `N_{dom f}` sampled over `dual`.
pub fn dom_sharp_grid<S: Scalar>(f: &GridFunction<S>, dual: &[Point<S>]) -> Result<DomainHull<S>> {
    let dom = f.finite_points();
    if dom.is_empty() {
        return Err(Error::EmptySet);
    }
    let normals = normal_cone_graph(&dom, dual)?;
    Ok(DomainHull::Sampled(portable_hull(&dom, &normals)?))
}

/// `f^#(x) = f^∪(x) + ι_{(dom f)^#}(x)`.
pub fn sharp_value<S: Scalar>(cup: &MaxAffine<S>, hull: &DomainHull<S>, x: &Point<S>) -> ExtReal<S> {
    if hull.contains(x) {
        cup.eval(x)
    } else {
        PosInf
    }
}

/// `f^#` at each probe.
pub fn portable_envelope<S: Scalar>(cup: &MaxAffine<S>, hull: &DomainHull<S>, probes: &[Point<S>]) -> Vec<ExtReal<S>> {
    probes.iter().map(|x| sharp_value(cup, hull, x)).collect()
}

/// `f^∘ = cl conv(f + ι_{D(G)})` for an exact graph: `cl f` restricted to the
/// closed hull of `D(G)`.
pub fn circ_exact<S: Scalar>(f: &PLConvex1D<S>, g: &OperatorGraph<S>) -> Result<PLConvex1D<S>> {
    let cells = g.cells().ok_or_else(|| Error::precondition("exact circ needs an exact graph"))?;
    if cells.cells().is_empty() {
        return Err(Error::EmptySet);
    }
    let (lo, hi) = cells.domain_bounds();
    f.restrict(lo.finite(), hi.finite())
}

/// `f^∘` from the listed domain points of `G`: the lower hull in 1D, a
/// double conjugate over `dual` in 2D.
pub fn circ_grid<S, F>(f: &F, g: &OperatorGraph<S>, dual: Option<&[Point<S>]>) -> Result<Hull<S>>
where
    S: Scalar,
    F: Evaluate<S>,
{
    let pts = g.domain_points();
    if pts.is_empty() {
        return Err(Error::EmptySet);
    }
    let restricted = GridFunction::sample(g.dim(), pts, |p| f.value(p))?;
    if !restricted.values().iter().all(|v| matches!(v, Finite(_))) {
        return Err(Error::precondition("f must be finite on D(G)"));
    }
    cl_conv_grid(&restricted, dual)
}
