use std::fmt;

use crate::envelopes::{circ_exact, cup_value, dom_sharp_pl, sharp_value, star_cup, upper_envelope};
use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, PosInf, Scalar, Q};
use crate::funcrep::{Evaluate, GridFunction, PLConvex1D, Recession, Subdifferentiable, SubgradientInterval};
use crate::io::Instance;
use crate::operators::{
    fitzpatrick, is_maximal_relative, subdiff_graph, subdiff_graph_exact, ExactGraph, GraphCell, MaximalityStatus,
    OperatorGraph, Provenance,
};
use crate::point::{linspace, points_1d, product_grid, Point};
use crate::theoremlab::LabInstance;
use crate::transforms::cl_conv_grid_1d;

pub const GALLERY: &[&str] = &["quadratic", "open-interval", "half-circle", "two-patch", "quadrant"];

/// One documented claim about a gallery instance and what was observed.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub claim: String,
    pub expected: bool,
    pub observed: bool,
    pub detail: String,
}

impl Finding {
    fn new(claim: impl Into<String>, expected: bool, observed: bool, detail: impl Into<String>) -> Self {
        Finding { claim: claim.into(), expected, observed, detail: detail.into() }
    }

    pub fn reproduced(&self) -> bool {
        self.expected == self.observed
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.reproduced() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} (expected {}, observed {})", self.claim, self.expected, self.observed)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// A gallery instance with its expected findings, evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub instances: Vec<LabInstance>,
    pub findings: Vec<Finding>,
}

impl GalleryEntry {
    pub fn reproduced(&self) -> bool {
        self.findings.iter().all(Finding::reproduced)
    }
}

pub fn gallery(name: &str) -> Result<GalleryEntry> {
    let name = GALLERY.iter().copied().find(|n| *n == name).ok_or_else(|| Error::UnknownGallery(name.to_string()))?;
    let instances = gallery_instances(name)?;
    let findings = evaluate(name, &instances)?;
    Ok(GalleryEntry { name, instances, findings })
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn pl(inst: &LabInstance) -> Result<&PLConvex1D<Q>> {
    match &inst.instance {
        Instance::Pl(f) => Ok(f),
        _ => Err(Error::precondition(format!("{} is not an exact instance", inst.id))),
    }
}

fn grid(inst: &LabInstance) -> Result<&GridFunction<f64>> {
    match &inst.instance {
        Instance::Grid(f) => Ok(f),
        _ => Err(Error::precondition(format!("{} is not a grid instance", inst.id))),
    }
}

/// The instances behind a gallery entry.
pub fn gallery_instances(name: &str) -> Result<Vec<LabInstance>> {
    Ok(match name {
        "quadratic" => vec![LabInstance::new("quadratic:graph", Instance::Graph(quadratic_graph()?))],
        "open-interval" => vec![LabInstance::new("open-interval:f", Instance::Pl(open_interval()?))],
        "half-circle" => vec![LabInstance::new("half-circle:g", Instance::Pl(half_circle()?))],
        "two-patch" => vec![
            LabInstance::new("two-patch:g", Instance::Grid(two_patch_grid()?)),
            LabInstance::new("two-patch:patch", Instance::Pl(two_patch_patch()?)),
        ],
        "quadrant" => {
            let (f, g) = quadrant()?;
            vec![LabInstance::new("quadrant:f", Instance::Grid(f)), LabInstance::new("quadrant:g", Instance::Grid(g))]
        }
        other => return Err(Error::UnknownGallery(other.to_string())),
    })
}

/// Recomputes the findings of entry `name` on (possibly altered) instances.
pub fn evaluate(name: &str, instances: &[LabInstance]) -> Result<Vec<Finding>> {
    match name {
        "quadratic" => quadratic_findings(instances),
        "open-interval" => open_interval_findings(pl(&instances[0])?),
        "half-circle" => half_circle_findings(pl(&instances[0])?),
        "two-patch" => two_patch_findings(grid(&instances[0])?, pl(&instances[1])?),
        "quadrant" => quadrant_findings(grid(&instances[0])?, grid(&instances[1])?),
        other => Err(Error::UnknownGallery(other.to_string())),
    }
}

/// `Graph ∂(x²/2)` at 401 points of `[-2, 2]`.
fn quadratic_graph() -> Result<OperatorGraph<f64>> {
    let (pairs, values) = (-200..=200)
        .map(|k| {
            let a = k as f64 / 100.0;
            ((Point::scalar(a), Point::scalar(a)), a * a / 2.0)
        })
        .unzip();
    OperatorGraph::with_values(1, pairs, values, Provenance::Exact)
}

fn quadratic_findings(instances: &[LabInstance]) -> Result<Vec<Finding>> {
    let Instance::Graph(g) = &instances[0].instance else {
        return Err(Error::precondition("quadratic needs a graph instance"));
    };
    let axis = linspace(&-2.0, &2.0, 41);
    let mut worst = 0.0f64;
    let mut at = (0.0, 0.0);
    for x in &axis {
        for y in &axis {
            let phi = fitzpatrick(g, &Point::scalar(*x), &Point::scalar(*y))?.to_f64();
            let err = (phi - (x + y) * (x + y) / 4.0).abs();
            if err > worst || err.is_nan() {
                worst = err;
                at = (*x, *y);
            }
        }
    }
    let (x, y) = (Point::scalar(1.0), Point::scalar(-1.0));
    let phi = fitzpatrick(g, &x, &y)?;
    let bound = cup_value(g, &x)? + star_cup(g, &y)?;
    Ok(vec![
        Finding::new(
            "φ_∂f(x,y) = ¼(x+y)² on a 41×41 grid of [-2,2]²",
            true,
            worst <= 1e-9,
            format!("max error {worst:e} at {at:?}"),
        ),
        Finding::new(
            "φ_∂f(1,-1) < f^∪(1) + f^{*∪}(-1)",
            true,
            !bound.le_tol(&phi),
            format!("φ = {phi}, bound = {bound}"),
        ),
    ])
}

/// `ι_(0,1)`.
fn open_interval() -> Result<PLConvex1D<Q>> {
    PLConvex1D::indicator(q(0), q(1))?.with_overrides(Some(PosInf), Some(PosInf))
}

fn open_interval_findings(f: &PLConvex1D<Q>) -> Result<Vec<Finding>> {
    let probes: Vec<Q> = linspace(&q(-5), &q(5), 41).into_iter().chain(linspace(&q(0), &q(1), 9)).collect();
    let duals: Vec<Q> = linspace(&q(-3), &q(3), 13);
    let g = subdiff_graph_exact(f, &probes, 3)?;
    let cup = upper_envelope(f, &g)?;
    let hull = dom_sharp_pl(f);
    let zero: ExtReal<Q> = ExtReal::zero();
    let cup_zero = probes.iter().all(|x| cup.eval(&Point::scalar(x.clone())) == zero);
    let sharp_zero = probes.iter().all(|x| sharp_value(&cup, &hull, &Point::scalar(x.clone())) == zero);
    let circ = circ_exact(f, &g)?;
    let in_closed = |x: &Q| *x >= q(0) && *x <= q(1);
    let circ_closed =
        probes.iter().all(|x| circ.eval(x) == if in_closed(x) { zero.clone() } else { PosInf });
    let cells = ExactGraph::from_pl(f);
    let open_times_zero = probes
        .iter()
        .all(|x| duals.iter().all(|y| cells.contains(x, y) == (*x > q(0) && *x < q(1) && *y == q(0))));
    let horizontal = matches!(cells.cells(), [GraphCell::Horizontal { .. }]);
    let normal = |x: &Q, y: &Q| {
        in_closed(x) && (*y == q(0) || (*x == q(0) && *y < q(0)) || (*x == q(1) && *y > q(0)))
    };
    let pts = points_1d(&probes);
    let dps = points_1d(&duals);
    let gc = subdiff_graph(&circ, &pts, &dps)?;
    let matches_normal = probes.iter().all(|x| {
        duals.iter().all(|y| gc.contains(&Point::scalar(x.clone()), &Point::scalar(y.clone())) == normal(x, y))
    });
    Ok(vec![
        Finding::new("f^∪ ≡ 0 on probes of [-5,5]", true, cup_zero, ""),
        Finding::new("f^# ≡ 0 on probes of [-5,5]", true, sharp_zero, ""),
        Finding::new("f^∘ = ι_[0,1]", true, circ_closed, ""),
        Finding::new("Graph ∂f = (0,1) × {0}", true, open_times_zero && horizontal, ""),
        Finding::new("sampled Graph ∂f^∘ = N_[0,1]", true, matches_normal, ""),
    ])
}

/// `−√(1−x²)` interpolated at the rational circle points
/// `((1−t²)/(1+t²), −2t/(1+t²))`, `t = k/32`, and their mirror images, with
/// the value at `±1` raised to 1.
fn half_circle() -> Result<PLConvex1D<Q>> {
    let mut pts: Vec<(Q, Q)> = Vec::new();
    for k in 0..=32 {
        let t = Q::ratio(k, 32);
        let d = q(1) + t.clone() * &t;
        let x = (q(1) - t.clone() * &t) / &d;
        let v = -(q(2) * &t) / &d;
        if k < 32 {
            pts.push((-x.clone(), v.clone()));
        }
        pts.push((x, v));
    }
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let (xs, vs) = pts.into_iter().unzip();
    PLConvex1D::new(xs, vs, Recession::Wall, Recession::Wall)?.with_overrides(Some(Finite(q(1))), Some(Finite(q(1))))
}

fn clip(iv: Option<SubgradientInterval<Q>>, lo: &Q, hi: &Q) -> Option<(ExtReal<Q>, ExtReal<Q>)> {
    let iv = iv?;
    let (l, h) = (iv.lo.max(Finite(lo.clone())), iv.hi.min(Finite(hi.clone())));
    (l <= h).then_some((l, h))
}

fn half_circle_findings(f: &PLConvex1D<Q>) -> Result<Vec<Finding>> {
    let defect = f.lsc_defect();
    let fx = f.convert::<f64>();
    let xs = linspace(&-3.0, &3.0, 401);
    let ys = linspace(&-10.0, &10.0, 401);
    let g = subdiff_graph_exact(&fx, &xs, 3)?;
    let tests: Vec<(Point<f64>, Point<f64>)> =
        xs.iter().flat_map(|x| ys.iter().map(move |y| (Point::scalar(*x), Point::scalar(*y)))).collect();
    let verdict = is_maximal_relative(&g, &tests, "401 × 401 grid of [-3,3]×[-10,10]")?;
    let cl = f.closure();
    let probes = linspace(&q(-3), &q(3), 401);
    let mismatch = probes.iter().find(|x| clip(f.subdifferential(x), &q(-10), &q(10)) != clip(cl.subdifferential(x), &q(-10), &q(10)));
    Ok(vec![
        Finding::new("lsc defect = {-1, 1}", true, defect == vec![q(-1), q(1)], format!("{defect:?}")),
        Finding::new("g is proper", true, f.is_proper(), ""),
        Finding::new("g is lsc", false, f.is_lsc(), ""),
        Finding::new(
            "Graph ∂g is maximal relative to [-3,3]×[-10,10]",
            true,
            verdict.status == MaximalityStatus::MaximalRelative,
            format!("{:?}", verdict.witness),
        ),
        Finding::new(
            "∂g = ∂(cl g) within dual window [-10,10]",
            true,
            mismatch.is_none(),
            mismatch.map(|x| format!("differs at {x}")).unwrap_or_default(),
        ),
    ])
}

/// `g` on the grid `{0, 1, 1.125, …, 2}`, finite except at 1.
fn two_patch_grid() -> Result<GridFunction<f64>> {
    let xs: Vec<f64> = [0.0, 1.0].into_iter().chain((9..=16).map(|k| k as f64 / 8.0)).collect();
    GridFunction::sample_1d(&xs, |x| if *x == 1.0 { PosInf } else { Finite(0.0) })
}

/// The patch `ι_(1,2]`.
fn two_patch_patch() -> Result<PLConvex1D<Q>> {
    PLConvex1D::indicator(q(1), q(2))?.with_overrides(Some(PosInf), None)
}

fn two_patch_findings(g: &GridFunction<f64>, patch: &PLConvex1D<Q>) -> Result<Vec<Finding>> {
    let h = cl_conv_grid_1d(g)?;
    let target = PLConvex1D::<f64>::indicator(0.0, 2.0)?;
    let probes = linspace(&-1.0, &3.0, 33);
    let hull_is_box = probes.iter().all(|x| h.eval(x) == target.eval(x));
    let hq = PLConvex1D::<Q>::indicator(q(0), q(2))?;
    let qprobes = linspace(&q(-1), &q(3), 33);
    let qduals = linspace(&q(-4), &q(4), 33);
    let gh = subdiff_graph_exact(&hq, &qprobes, 3)?;
    let tests: Vec<(Point<Q>, Point<Q>)> = qprobes
        .iter()
        .flat_map(|x| qduals.iter().map(move |y| (Point::scalar(x.clone()), Point::scalar(y.clone()))))
        .collect();
    let maximal = is_maximal_relative(&gh, &tests, "33 × 33 grid of [-1,3]×[-4,4]")?.status == MaximalityStatus::MaximalRelative;
    let pts = points_1d(g.points().iter().map(|p| *p.x()).collect::<Vec<_>>().as_slice());
    let duals = points_1d(&linspace(&-4.0, &4.0, 33));
    let sg = subdiff_graph(g, &pts, &duals)?;
    let included = sg.pairs().iter().all(|(a, s)| h.is_subgradient(a, s));
    let w = (Point::scalar(0.5), Point::scalar(0.0));
    let witness = h.is_subgradient(&w.0, &w.1) && !g.is_subgradient(&w.0, &w.1);
    Ok(vec![
        Finding::new("g is convex on the grid", false, g.is_convex_on_grid()?, ""),
        Finding::new("the patch ι_(1,2] is lsc", false, patch.is_lsc(), format!("defect {:?}", patch.lsc_defect())),
        Finding::new("cl conv g = ι_[0,2]", true, hull_is_box, ""),
        Finding::new("∂(cl conv g) is maximal relative to [-1,3]×[-4,4]", true, maximal, ""),
        Finding::new("Graph ∂g ⊂ Graph ∂(cl conv g)", true, included, ""),
        Finding::new(
            "(0.5, 0) ∈ Graph ∂(cl conv g) \\ Graph ∂g",
            true,
            witness,
            "",
        ),
    ])
}

/// Dual window for the quadrant graphs: `[-4, 0]²` in steps of 1/4. Boundary
/// points of `f` need a component below −√20 to enter `D(∂f)`.
const QUADRANT_DUAL: (f64, f64, usize) = (-4.0, 0.0, 17);

fn quadrant_value(x: f64, y: f64) -> f64 {
    -(x * y).sqrt()
}

fn on_boundary(p: &Point<f64>) -> bool {
    (p.0[0] == 0.0 || p.0[1] == 0.0) && !p.is_zero()
}

/// `f = −√(xy)` on a 21 × 21 grid of `[0,2]²`, and `g = f + 1` on the
/// boundary minus the origin.
fn quadrant() -> Result<(GridFunction<f64>, GridFunction<f64>)> {
    let axis = linspace(&0.0, &2.0, 21);
    let pts = product_grid(&[axis.clone(), axis]);
    let f = GridFunction::sample(2, pts.clone(), |p| Finite(quadrant_value(p.0[0], p.0[1])))?;
    let g = f.map_values(|p, v| if on_boundary(p) { v.plus(&1.0) } else { v.clone() });
    Ok((f, g))
}

fn quadrant_findings(f: &GridFunction<f64>, g: &GridFunction<f64>) -> Result<Vec<Finding>> {
    let (lo, hi, n) = QUADRANT_DUAL;
    let axis = linspace(&lo, &hi, n);
    let dual = product_grid(&[axis.clone(), axis]);
    let gf = subdiff_graph(f, f.points(), &dual)?;
    let gg = subdiff_graph(g, g.points(), &dual)?;
    let agree_on_d = gf.domain_points().iter().all(|a| f.value(a) == g.value(a));
    // Along (h, 1), h → 0, f tends to 0 < g(0, 1) = 1.
    let approach: Vec<f64> = (1..=8).map(|k| quadrant_value(10f64.powi(-k), 1.0)).collect();
    let g01 = g.value(&Point::pair(0.0, 1.0)).to_f64();
    let lsc_at_edge = approach.last().map_or(true, |v| g01 <= v.abs() + 1e-3);
    let same = gf.pairs() == gg.pairs();
    Ok(vec![
        Finding::new("g is convex on the grid", false, g.is_convex_on_grid()?, ""),
        Finding::new("g is lsc at (0,1)", false, lsc_at_edge, format!("g(0,1) = {g01}, f(1e-8,1) = {:e}", approach[7])),
        Finding::new("f is convex on the grid", true, f.is_convex_on_grid()?, ""),
        Finding::new("g = f on the sampled D(∂f)", true, agree_on_d, ""),
        Finding::new("Graph ∂f = Graph ∂g on the grid", true, same, format!("{} vs {} pairs", gf.len(), gg.len())),
        Finding::new("Graph ∂f is nonempty", true, !gf.is_empty(), ""),
    ])
}
