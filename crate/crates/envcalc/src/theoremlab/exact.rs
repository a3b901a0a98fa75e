use num_traits::Signed;

use crate::envelopes::{
    brondsted_search, circ_exact, cup_value, dom_sharp_pl, epi_cup_membership, epigraph_normal_graph, n_cup, sharp_value,
    smile, smile_eps, star_cup, upper_envelope, DomainHull,
};
use crate::error::Result;
use crate::extreal::{ExtReal, Finite, NegInf, PosInf, Scalar, Q};
use crate::funcrep::{Bound, GridFunction, MaxAffine, PLConvex1D, Recession, Subdifferentiable, SubgradientInterval};
use crate::operators::{fitzpatrick, is_maximal_relative, subdiff_graph_exact, ExactGraph, MaximalityStatus, OperatorGraph, Provenance};
use crate::point::Point;
use crate::theoremlab::{not_applicable, Outcome, Probes, Tally};
use crate::transforms::{biconjugate_exact, cl_conv_pl, conjugate_exact};

/// Largest listed graph handed to the n-fold envelope.
const N_CUP_CAP: usize = 60;

fn p(x: &Q) -> Point<Q> {
    Point::scalar(x.clone())
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn at1(x: &Q) -> String {
    format!("x={x}")
}

fn at2(x: &Q, y: &Q) -> String {
    format!("(x,x*)=({x},{y})")
}

fn abs_ext(v: &ExtReal<Q>) -> ExtReal<Q> {
    match v {
        Finite(s) => Finite(s.abs()),
        _ => PosInf,
    }
}

fn sorted_dedup(mut v: Vec<Q>) -> Vec<Q> {
    v.sort();
    v.dedup();
    v
}

/// Critical values, their midpoints and a step beyond each end.
fn refine(crit: Vec<Q>) -> Vec<Q> {
    let crit = sorted_dedup(crit);
    let mut out = crit.clone();
    for w in crit.windows(2) {
        out.push((w[0].clone() + &w[1]) / q(2));
    }
    if let (Some(lo), Some(hi)) = (crit.first(), crit.last()) {
        out.push(lo.clone() - q(1));
        out.push(hi.clone() + q(1));
    }
    sorted_dedup(out)
}

fn all_slopes(f: &PLConvex1D<Q>) -> Vec<Q> {
    let mut s = f.slopes().to_vec();
    s.extend(f.left().slope().cloned());
    s.extend(f.right().slope().cloned());
    s
}

/// Both graphs are unions of cells whose corner coordinates are breakpoints
/// and slopes, so membership on the refined critical grid decides equality.
fn graphs_equal(a: &PLConvex1D<Q>, b: &PLConvex1D<Q>) -> bool {
    let (ga, gb) = (ExactGraph::from_pl(a), ExactGraph::from_pl(b));
    let xs = refine(a.breakpoints().iter().chain(b.breakpoints()).cloned().collect());
    let ys = refine(all_slopes(a).into_iter().chain(all_slopes(b)).collect());
    xs.iter().all(|x| ys.iter().all(|y| ga.contains(x, y) == gb.contains(x, y)))
}

fn domains_equal(a: &PLConvex1D<Q>, b: &PLConvex1D<Q>) -> bool {
    let (ga, gb) = (ExactGraph::from_pl(a), ExactGraph::from_pl(b));
    let xs = refine(a.breakpoints().iter().chain(b.breakpoints()).cloned().collect());
    xs.iter().all(|x| ga.in_domain(x) == gb.in_domain(x))
}

fn ranges_equal(a: &PLConvex1D<Q>, b: &PLConvex1D<Q>) -> bool {
    let (ga, gb) = (ExactGraph::from_pl(a), ExactGraph::from_pl(b));
    let ys = refine(all_slopes(a).into_iter().chain(all_slopes(b)).collect());
    ys.iter().all(|y| ga.in_range(y) == gb.in_range(y))
}

fn meets(iv: &SubgradientInterval<Q>, parts: &[SubgradientInterval<Q>]) -> bool {
    parts.iter().any(|r| iv.lo.clone().max(r.lo.clone()) <= iv.hi.clone().min(r.hi.clone()))
}

/// `cl f` restricted to the closed ends of a hull interval.
fn restrict_to(h: &PLConvex1D<Q>, hull: &DomainHull<Q>) -> Result<PLConvex1D<Q>> {
    match hull {
        DomainHull::Interval(iv) => {
            let end = |b: &Bound<Q>| match b {
                Bound::Closed(v) | Bound::Open(v) => Some(v.clone()),
                Bound::Unbounded => None,
            };
            h.restrict(end(&iv.lo).as_ref(), end(&iv.hi).as_ref())
        }
        DomainHull::Sampled(_) => Err(crate::error::Error::precondition("sampled hull on the exact backend")),
    }
}

/// The first `cap` pairs spread evenly over the listed graph.
fn capped(g: &OperatorGraph<Q>, cap: usize) -> Result<(OperatorGraph<Q>, bool)> {
    let n = g.len();
    let values = g.values().unwrap_or(&[]);
    if n <= cap || values.len() != n {
        return Ok((g.sampled_view(), false));
    }
    let idx: Vec<usize> = (0..cap).map(|i| i * (n - 1) / (cap - 1)).collect();
    let pairs = idx.iter().map(|&i| g.pairs()[i].clone()).collect();
    let vals = idx.iter().map(|&i| values[i].clone()).collect();
    Ok((OperatorGraph::with_values(1, pairs, vals, Provenance::Exact)?, true))
}

/// State shared by the checks on one exact instance.
pub(crate) struct ExactCtx<'a> {
    f: &'a PLConvex1D<Q>,
    xs: Vec<Q>,
    ys: Vec<Q>,
    g: OperatorGraph<Q>,
    cells: ExactGraph<Q>,
}

impl<'a> ExactCtx<'a> {
    pub(crate) fn new(f: &'a PLConvex1D<Q>, probes: &Probes) -> Result<Self> {
        let mut xs = probes.primal_1d();
        xs.extend(f.breakpoints().iter().cloned());
        let g = subdiff_graph_exact(f, &xs, crate::operators::DEFAULT_REPRESENTATIVES)?;
        xs.extend(g.domain_points().into_iter().map(|a| a.x().clone()));
        let mut ys = probes.dual_1d();
        ys.extend(all_slopes(f));
        let cells = ExactGraph::from_pl(f);
        Ok(ExactCtx { f, xs: sorted_dedup(xs), ys: sorted_dedup(ys), g, cells })
    }

    fn fx(&self, x: &Q) -> ExtReal<Q> {
        self.f.eval(x)
    }

    fn in_dom(&self, x: &Q) -> bool {
        self.fx(x).is_finite()
    }

    fn phi(&self, x: &Q, y: &Q) -> Result<ExtReal<Q>> {
        fitzpatrick(&self.g, &p(x), &p(y))
    }

    fn cup(&self) -> Result<MaxAffine<Q>> {
        upper_envelope(self.f, &self.g)
    }

    fn cup_pl(&self) -> Result<PLConvex1D<Q>> {
        self.cup()?.to_pl_1d()
    }

    fn sharp_pl(&self) -> Result<PLConvex1D<Q>> {
        restrict_to(&self.cup_pl()?, &dom_sharp_pl(self.f))
    }

    fn circ(&self) -> Result<PLConvex1D<Q>> {
        circ_exact(self.f, &self.g)
    }

    fn smile(&self, x: &Q) -> Result<ExtReal<Q>> {
        smile(self.f, &self.g, &p(x))
    }

    fn gamma(&self) -> Option<String> {
        let d = self.f.lsc_defect();
        (!d.is_empty()).then(|| format!("f is not lsc at {}", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
    }

    /// Reason why `∂f` fails maximality relative to the probe pairs, if it does.
    fn not_maximal(&self) -> Result<Option<String>> {
        let tests: Vec<(Point<Q>, Point<Q>)> =
            self.xs.iter().flat_map(|x| self.ys.iter().map(move |y| (p(x), p(y)))).collect();
        let v = is_maximal_relative(&self.g, &tests, "probe pairs")?;
        Ok(match (v.status, v.witness) {
            (MaximalityStatus::NotMaximal, Some((x, y))) => Some(format!("∂f is not maximal: ({x},{y}) is related to the graph")),
            _ => None,
        })
    }

    /// Lipschitz bound of `f` on its domain, plus one.
    fn lipschitz(&self) -> Q {
        all_slopes(self.f).iter().map(|s| s.abs()).fold(q(1), |a, b| Q::max_of(a, b + q(1)))
    }

    /// A point of `D(∂f)` within `r` of `x` and a subgradient there.
    fn approach(&self, x: &Q, r: &Q) -> Option<(Q, Q)> {
        [x.clone(), x.clone() + r, x.clone() - r].into_iter().find_map(|a| {
            let iv = self.f.subdifferential(&a)?;
            Some((a, iv.clamp(&q(0))))
        })
    }

    pub(crate) fn run(&self, id: &str) -> Result<Outcome<Q>> {
        match id {
            "dfdom.ineq" => self.dfdom_ineq(),
            "dfdom.i" => self.dfdom_i(),
            "dfdom.e3" => self.dfdom_e3(),
            "dfdom.iv-shadow" => self.dfdom_iv(),
            "ba.density" => self.ba_density(),
            "fcupdiez.i" => self.fcupdiez_i(),
            "fcupdiez.ii" => self.fcupdiez_ii(),
            "fcupdiez.iii" => self.fcupdiez_iii(),
            "fcupdiez.iv" => self.fcupdiez_iv(),
            "fcupdiez.v" => self.fcupdiez_v(),
            "fcupdiez.viii" => self.fcupdiez_viii(),
            "fcupdiez.ix" => self.fcupdiez_ix(),
            "implineq" => self.implineq(),
            "fcirc.i" => self.fcirc_i(),
            "fcirc.ii" => self.fcirc_ii(),
            "fcirc.iii" => self.fcirc_iii(),
            "fcirc.iv" => self.fcirc_iv(),
            "fcirc.v" => self.fcirc_v(),
            "maxcup" => self.maxcup(),
            "fsp.i" => self.fsp_i(),
            "fsp.ii" => self.fsp_ii(),
            "fsp.iii" => self.fsp_iii(),
            "spxstar" => self.spxstar(),
            "maxsdsp.ii" => self.maxsdsp_ii(),
            "maxsdsp.iii" => self.maxsdsp_smile(true),
            "maxsdsp.iv" => self.maxsdsp_smile(false),
            "maxsdsp.v" => self.maxsdsp_net(false),
            "maxsdsp.vi" => self.maxsdsp_net(true),
            "maxsdsp.vii" => self.maxsdsp_vii(),
            "maxsdsp.closure" => self.maxsdsp_closure(),
            "fspeps.ii" => self.fspeps_ii(),
            "fspeps.iii" => self.fspeps_eq(true),
            "fspeps.iv" => self.fspeps_eq(false),
            "ncfitz" => self.ncfitz(),
            "fitz.coupling" => self.fitz_coupling(),
            other => Err(crate::error::Error::UnknownTheorem(other.to_string())),
        }
    }

    fn dfdom_ineq(&self) -> Result<Outcome<Q>> {
        let (fss, fs) = (biconjugate_exact(self.f)?, conjugate_exact(self.f)?);
        let mut t = Tally::new();
        for x in &self.xs {
            for y in &self.ys {
                t.le(&self.phi(x, y)?, &(fss.eval(x) + fs.eval(y)), || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn dfdom_i(&self) -> Result<Outcome<Q>> {
        let h = cl_conv_pl(self.f);
        let mut t = Tally::new();
        for (a, s) in self.g.pairs() {
            t.holds(h.is_subgradient(a, s), || at2(a.x(), s.x()));
            t.eq(&self.fx(a.x()), &h.eval(a.x()), || at1(a.x()));
        }
        for x in &self.xs {
            if let Some(iv) = self.f.subdifferential(x) {
                t.holds(Some(iv) == h.subdifferential(x), || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn dfdom_e3(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.not_maximal()? {
            return not_applicable(why);
        }
        let raise = |w: Option<&ExtReal<Q>>, v: &Q| match w {
            Some(Finite(w)) if w > v => Some(Finite(w.clone() + q(1))),
            other => other.cloned(),
        };
        let (vs, m) = (self.f.values(), self.f.values().len() - 1);
        let g = self.f.clone().with_overrides(raise(self.f.left_override(), &vs[0]), raise(self.f.right_override(), &vs[m]))?;
        let mut t = Tally::new();
        for x in &self.xs {
            t.le(&self.fx(x), &g.eval(x), || at1(x));
            if self.cells.in_domain(x) {
                t.eq(&self.fx(x), &g.eval(x), || at1(x));
            }
        }
        t.holds(graphs_equal(self.f, &g), || "Graph ∂g".into());
        Ok(Outcome::Checked(t))
    }

    fn dfdom_iv(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        if let Some(why) = self.not_maximal()? {
            return not_applicable(why);
        }
        let sample = GridFunction::sample_1d(&self.xs, |x| self.fx(x))?;
        let mut t = Tally::new();
        t.holds(sample.is_convex_on_grid()?, || "probe grid".into());
        Ok(Outcome::Checked(t))
    }

    fn ba_density(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.not_maximal()? {
            return not_applicable(why);
        }
        let h = cl_conv_pl(self.f);
        let defects = self.f.lsc_defect();
        let lip = self.lipschitz();
        let mut t = Tally::new();
        for x in &self.xs {
            let lsc_at = !defects.contains(x);
            let hx = h.eval(x);
            if self.cells.in_domain(x) {
                t.holds(lsc_at, || at1(x));
                t.eq(&self.fx(x), &hx, || at1(x));
            }
            if hx.is_finite() && !self.in_dom(x) {
                t.holds(!lsc_at, || at1(x));
            }
            if !(hx.is_finite() && lsc_at) {
                continue;
            }
            t.eq(&self.fx(x), &hx, || at1(x));
            let mut r = q(1);
            for _ in 0..10 {
                r /= q(2);
                match self.approach(x, &r) {
                    Some((a, _)) => {
                        let gap = abs_ext(&(self.fx(&a) - self.fx(x)));
                        t.le(&gap, &Finite(lip.clone() * &r), || format!("x={x}, r={r}"));
                    }
                    None => t.holds(false, || format!("no D(∂f) point within {r} of {x}")),
                }
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_i(&self) -> Result<Outcome<Q>> {
        let (cup, hull) = (self.cup()?, dom_sharp_pl(self.f));
        let mut t = Tally::new();
        for x in &self.xs {
            let (c, s, fx) = (cup.eval(&p(x)), sharp_value(&cup, &hull, &p(x)), self.fx(x));
            t.le(&c, &s, || at1(x));
            t.le(&s, &fx, || at1(x));
            if self.cells.in_domain(x) {
                t.eq(&c, &fx, || at1(x));
                t.eq(&s, &fx, || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_ii(&self) -> Result<Outcome<Q>> {
        let nonempty = !self.g.is_empty();
        let cup = if nonempty { self.cup()? } else { MaxAffine::new(1) };
        let hull = dom_sharp_pl(self.f);
        let vals: Vec<ExtReal<Q>> = self.xs.iter().map(|x| sharp_value(&cup, &hull, &p(x))).collect();
        let sharp_proper = !vals.iter().any(ExtReal::is_neg_inf) && vals.iter().any(ExtReal::is_finite);
        let mut t = Tally::new();
        t.holds(crate::funcrep::Evaluate::is_proper(&cup) == nonempty, || "f^∪".into());
        t.holds(sharp_proper == nonempty, || "f^#".into());
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_iii(&self) -> Result<Outcome<Q>> {
        let (cup, hull) = (self.cup()?, dom_sharp_pl(self.f));
        let normals = epigraph_normal_graph(self.f, &self.g.sampled_view(), &[p(&q(-1)), p(&q(1))])?;
        let eighth = Q::ratio(1, 8);
        let mut t = Tally::new();
        for x in &self.xs {
            let s = sharp_value(&cup, &hull, &p(x));
            let mut levels = vec![q(-10), q(0), q(10)];
            if let Finite(v) = &s {
                levels.extend([v.clone(), v.clone() - &eighth, v.clone() + &eighth]);
            }
            for v in levels {
                let member = hull.contains(&p(x)) && epi_cup_membership(self.f, &normals, &p(x), &v)?;
                t.holds(member == (Finite(v.clone()) >= s), || format!("(x,v)=({x},{v})"));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_iv(&self) -> Result<Outcome<Q>> {
        let (hc, hs) = (self.cup_pl()?, self.sharp_pl()?);
        let mut t = Tally::new();
        for (a, s) in self.g.pairs() {
            t.holds(hc.is_subgradient(a, s), || format!("f^∪ at ({a},{s})"));
            t.holds(hs.is_subgradient(a, s), || format!("f^# at ({a},{s})"));
        }
        for x in self.xs.iter().filter(|x| self.cells.in_domain(x)) {
            let d = self.f.subdifferential(x);
            t.holds(d == hc.subdifferential(x), || format!("∂f^∪({x})"));
            t.holds(d == hs.subdifferential(x), || format!("∂f^#({x})"));
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_v(&self) -> Result<Outcome<Q>> {
        let (hc, hs) = (self.cup_pl()?, self.sharp_pl()?);
        let gc = subdiff_graph_exact(&hc, &[], 3)?;
        let cc = upper_envelope(&hc, &gc)?.to_pl_1d()?;
        let gs = subdiff_graph_exact(&hs, &[], 3)?;
        let ss = restrict_to(&upper_envelope(&hs, &gs)?.to_pl_1d()?, &dom_sharp_pl(&hs))?;
        let mut t = Tally::new();
        for x in &self.xs {
            t.eq(&cc.eval(x), &hc.eval(x), || format!("f^∪∪ at {x}"));
            t.eq(&ss.eval(x), &hs.eval(x), || format!("f^## at {x}"));
        }
        t.holds(cc.same_function(&hc), || "f^∪∪".into());
        t.holds(ss.same_function(&hs), || "f^##".into());
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_viii(&self) -> Result<Outcome<Q>> {
        let mut t = Tally::new();
        for (name, h) in [("f^∪", self.cup_pl()?), ("f^#", self.sharp_pl()?)] {
            t.holds(graphs_equal(self.f, &h) == domains_equal(self.f, &h), || name.into());
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_ix(&self) -> Result<Outcome<Q>> {
        let (s, was_capped) = capped(&self.g, N_CUP_CAP)?;
        let cup = self.cup()?;
        let mut t = Tally::new();
        for x in &self.xs {
            let c = cup_value(&s, &p(x))?;
            for n in [2, 3] {
                t.eq(&n_cup(&s, n, &p(x))?, &c, || format!("n={n}, x={x}"));
            }
            let full = cup.eval(&p(x));
            if !was_capped && full.is_finite() {
                t.eq(&c, &full, || format!("listed pairs at {x}"));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn implineq(&self) -> Result<Outcome<Q>> {
        let cup = self.cup()?;
        let mut t = Tally::new();
        for y in &self.ys {
            let sc = star_cup(&self.g, &p(y))?;
            for x in &self.xs {
                t.le(&self.phi(x, y)?, &(cup.eval(&p(x)) + sc.clone()), || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_i(&self) -> Result<Outcome<Q>> {
        let (cup, h, circ) = (self.cup()?, cl_conv_pl(self.f), self.circ()?);
        let mut t = Tally::new();
        for x in &self.xs {
            t.le(&cup.eval(&p(x)), &h.eval(x), || at1(x));
            t.le(&h.eval(x), &circ.eval(x), || at1(x));
            if self.cells.in_domain(x) {
                t.eq(&circ.eval(x), &self.fx(x), || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_ii(&self) -> Result<Outcome<Q>> {
        let (circ, hc) = (self.circ()?, self.cup_pl()?);
        let fs = conjugate_exact(self.f)?;
        let circ_fs = circ_exact(&fs, &subdiff_graph_exact(&fs, &self.ys, 3)?)?;
        let circ2 = circ_exact(&circ, &subdiff_graph_exact(&circ, &[], 3)?)?;
        let circ_fs_star = conjugate_exact(&circ_fs)?;
        let mut t = Tally::new();
        for y in &self.ys {
            t.eq(&star_cup(&self.g, &p(y))?, &circ.conjugate_at(y), || format!("f^{{*∪}} = f^{{∘*}} at {y}"));
            t.eq(&circ_fs.eval(y), &hc.conjugate_at(y), || format!("f^{{*∘}} = f^{{∪*}} at {y}"));
        }
        for x in &self.xs {
            t.eq(&circ2.eval(x), &circ.eval(x), || format!("f^∘∘ at {x}"));
            t.eq(&circ_fs_star.eval(x), &hc.eval(x), || format!("f^{{*∘*}} at {x}"));
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_iii(&self) -> Result<Outcome<Q>> {
        let circ = self.circ()?;
        let mut t = Tally::new();
        for x in &self.xs {
            let (d, dc) = (self.f.subdifferential(x), circ.subdifferential(x));
            for y in &self.ys {
                let lhs = d.as_ref().is_some_and(|iv| iv.contains(y));
                let rhs = dc.as_ref().is_some_and(|iv| iv.contains(y)) && self.cells.in_range(y);
                t.holds(lhs == rhs, || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_iv(&self) -> Result<Outcome<Q>> {
        let circ = self.circ()?;
        let range = self.cells.range_intervals();
        let mut t = Tally::new();
        for x in &self.xs {
            let rhs = circ.subdifferential(x).is_some_and(|iv| meets(&iv, &range));
            t.holds(self.cells.in_domain(x) == rhs, || at1(x));
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_v(&self) -> Result<Outcome<Q>> {
        let circ = self.circ()?;
        let mut t = Tally::new();
        t.holds(graphs_equal(self.f, &circ) == ranges_equal(self.f, &circ), || "∂f^∘".into());
        Ok(Outcome::Checked(t))
    }

    fn maxcup(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let (cup, circ) = (self.cup()?, self.circ()?);
        let mut t = Tally::new();
        for x in &self.xs {
            t.eq(&self.fx(x), &cup.eval(&p(x)), || format!("f = f^∪ at {x}"));
            t.eq(&cup.eval(&p(x)), &circ.eval(x), || format!("f^∪ = f^∘ at {x}"));
        }
        for y in &self.ys {
            t.eq(&self.f.conjugate_at(y), &star_cup(&self.g, &p(y))?, || format!("f* = f^{{*∪}} at {y}"));
        }
        Ok(Outcome::Checked(t))
    }

    fn fsp_i(&self) -> Result<Outcome<Q>> {
        let (cup, hull) = (self.cup()?, dom_sharp_pl(self.f));
        let mut t = Tally::new();
        for x in &self.xs {
            let (sm, c, s, fx) = (self.smile(x)?, cup.eval(&p(x)), sharp_value(&cup, &hull, &p(x)), self.fx(x));
            t.le(&sm, &c, || at1(x));
            t.le(&c, &s, || at1(x));
            t.le(&s, &fx, || at1(x));
            if self.cells.in_domain(x) {
                t.eq(&sm, &fx, || at1(x));
            }
            if fx.is_pos_inf() {
                t.eq(&sm, &c, || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fsp_ii(&self) -> Result<Outcome<Q>> {
        let vals = self.xs.iter().map(|x| self.smile(x)).collect::<Result<Vec<_>>>()?;
        let proper = !vals.iter().any(ExtReal::is_neg_inf) && vals.iter().any(ExtReal::is_finite);
        let rhs = !self.g.is_empty() && self.f.conjugate_at(&q(0)) == star_cup(&self.g, &p(&q(0)))?;
        let mut t = Tally::new();
        t.holds(proper == rhs, || "f^⌣".into());
        Ok(Outcome::Checked(t))
    }

    fn fsp_iii(&self) -> Result<Outcome<Q>> {
        let mut t = Tally::new();
        for x in &self.xs {
            t.le(&self.smile(x)?, &(self.phi(x, &q(0))? + self.fx(x)), || at1(x));
        }
        Ok(Outcome::Checked(t))
    }

    fn spxstar(&self) -> Result<Outcome<Q>> {
        let mut t = Tally::new();
        for y in &self.ys {
            let h = self.f.minus_linear(y);
            let gh = subdiff_graph_exact(&h, &self.xs, 3)?;
            let vals = self.xs.iter().map(|x| smile(&h, &gh, &p(x))).collect::<Result<Vec<_>>>()?;
            let proper = !gh.is_empty() && !vals.iter().any(ExtReal::is_neg_inf) && vals.iter().any(ExtReal::is_finite);
            let rhs = !self.g.is_empty() && self.f.conjugate_at(y) == star_cup(&self.g, &p(y))?;
            t.holds(proper == rhs, || format!("x*={y}"));
        }
        Ok(Outcome::Checked(t))
    }

    fn maxsdsp_ii(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let mut t = Tally::new();
        for x in &self.xs {
            for y in &self.ys {
                t.le(&Finite(x.clone() * y), &self.phi(x, y)?, || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn maxsdsp_smile(&self, dom_only: bool) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let mut t = Tally::new();
        for x in self.xs.iter().filter(|x| !dom_only || self.in_dom(x)) {
            t.eq(&self.fx(x), &self.smile(x)?, || at1(x));
        }
        Ok(Outcome::Checked(t))
    }

    fn maxsdsp_net(&self, coupling_only: bool) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let lip = self.lipschitz();
        let mut t = Tally::new();
        for x in self.xs.iter().filter(|x| self.in_dom(x)) {
            let fx = self.fx(x);
            let mut r = q(1);
            for _ in 0..10 {
                r /= q(2);
                let Some((a, s)) = self.approach(x, &r) else {
                    t.holds(false, || format!("no D(∂f) point within {r} of {x}"));
                    continue;
                };
                let at = || format!("x={x}, a={a}, a*={s}");
                let pairing = (x.clone() - &a) * &s;
                let bound = Finite((lip.clone() + s.abs()) * &r);
                t.le(&Finite((x.clone() - &a).abs()), &Finite(r.clone()), at);
                t.le(&abs_ext(&(self.fx(&a) - fx.clone())), &Finite(lip.clone() * &r), at);
                if coupling_only {
                    t.le(&Finite(pairing.abs()), &bound, at);
                } else {
                    t.le(&abs_ext(&(self.fx(&a).plus(&pairing) - fx.clone())), &bound, at);
                }
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn maxsdsp_vii(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let fs = conjugate_exact(self.f)?;
        let mut t = Tally::new();
        for x in self.xs.iter().filter(|x| self.in_dom(x)) {
            let fx = self.fx(x).into_finite().expect("x in dom f");
            for eps in [Q::ratio(1, 100), Q::ratio(1, 10_000), Q::ratio(1, 1_000_000)] {
                let at = || format!("x={x}, ε={eps}");
                // ∂_ε f(x) = {x* : f*(x*) − x·x* ≤ ε − f(x)}; take its far end.
                let Some(iv) = fs.minus_linear(x).level_set(&Finite(eps.clone() - &fx))? else {
                    t.holds(false, || format!("∂_ε f empty at x={x}, ε={eps}"));
                    continue;
                };
                let x_star = iv.hi.value().or(iv.lo.value()).cloned().unwrap_or_else(|| q(0));
                let mut best: ExtReal<Q> = NegInf;
                if let Some(d) = self.f.subdifferential(x) {
                    best = Finite(q(0) * d.clamp(&x_star));
                }
                match brondsted_search(self.f, x, &x_star, &eps)? {
                    Some(pair) => {
                        t.le(&Finite(pair.primal_sq.clone()), &Finite(eps.clone()), at);
                        t.le(&Finite(pair.dual_sq.clone()), &Finite(eps.clone()), at);
                        t.holds(pair.coupling_bound_holds(x, &eps), at);
                        best = best.max(Finite((x.clone() - &pair.a) * &pair.a_star));
                    }
                    None => t.holds(false, || format!("no Brøndsted–Rockafellar pair at x={x}, x*={x_star}, ε={eps}")),
                }
                t.le(&Finite(-eps.clone()), &best, at);
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn maxsdsp_closure(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let dom = self.f.effective_domain().closure();
        let (lo, hi) = self.cells.domain_bounds();
        let range = self.cells.range_intervals();
        let dom_star = conjugate_exact(self.f)?.effective_domain().closure();
        let mut t = Tally::new();
        t.holds(lo == dom.lo_ext() && hi == dom.hi_ext(), || "cl D(∂f) = cl dom f".into());
        t.holds(self.cells.domain_components().len() == 1, || "cl D(∂f) is an interval".into());
        t.holds(
            range.len() == 1 && range[0].lo == dom_star.lo_ext() && range[0].hi == dom_star.hi_ext(),
            || "cl R(∂f) = cl dom f*".into(),
        );
        Ok(Outcome::Checked(t))
    }

    fn fspeps_ii(&self) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let mut t = Tally::new();
        for x in self.xs.iter().filter(|x| self.in_dom(x)) {
            let mut prev: ExtReal<Q> = PosInf;
            for den in [1, 10, 100, 1000] {
                let eps = Q::ratio(1, den);
                let v = smile_eps(self.f, &self.g, &p(x), &eps)?;
                t.le(&v, &prev, || format!("x={x}, ε={eps}"));
                prev = v;
            }
            t.eq(&prev, &self.fx(x), || at1(x));
        }
        Ok(Outcome::Checked(t))
    }

    fn fspeps_eq(&self, dom_only: bool) -> Result<Outcome<Q>> {
        if let Some(why) = self.gamma() {
            return not_applicable(why);
        }
        let mut t = Tally::new();
        for x in self.xs.iter().filter(|x| !dom_only || self.in_dom(x)) {
            for eps in [Q::ratio(1, 10), q(1)] {
                t.eq(&self.fx(x), &smile_eps(self.f, &self.g, &p(x), &eps)?, || format!("x={x}, ε={eps}"));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn ncfitz(&self) -> Result<Outcome<Q>> {
        let flat = |r: &Recession<Q>| r.slope().map_or(true, |s| s == &q(0));
        let is_indicator = self.f.values().iter().all(|v| v == &q(0)) && flat(self.f.left()) && flat(self.f.right());
        if !is_indicator {
            return not_applicable("f is not an indicator function");
        }
        let hull = dom_sharp_pl(self.f);
        let closed = self.f.is_lsc();
        let cup = self.cup()?;
        let mut t = Tally::new();
        for y in &self.ys {
            let sigma = self.f.conjugate_at(y);
            let sc = star_cup(&self.g, &p(y))?;
            for x in &self.xs {
                let phi = self.phi(x, y)?;
                let expected = if hull.contains(&p(x)) { sigma.clone() } else { PosInf };
                t.eq(&phi, &expected, || at2(x, y));
                if closed {
                    t.eq(&phi, &(cup.eval(&p(x)) + sc.clone()), || format!("identity at ({x},{y})"));
                }
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fitz_coupling(&self) -> Result<Outcome<Q>> {
        let mut t = Tally::new();
        for (a, s) in self.g.pairs() {
            t.eq(&fitzpatrick(&self.g, a, s)?, &Finite(a.dot(s)), || at2(a.x(), s.x()));
        }
        Ok(Outcome::Checked(t))
    }
}
