use crate::envelopes::{circ_grid, dom_sharp_grid, sharp_value, smile, star_cup, upper_envelope, DomainHull};
use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite};
use crate::funcrep::{convex_hull_2d, point_in_polygon, Evaluate, GridFunction, MaxAffine, SampledSet, Subdifferentiable};
use crate::io::Instance;
use crate::operators::{fitzpatrick, is_maximal_relative, is_monotone, subdiff_graph, MaximalityStatus, OperatorGraph};
use crate::point::Point;
use crate::theoremlab::{not_applicable, Outcome, Probes, Tally};
use crate::transforms::{biconjugate_grid, cl_conv_dual, cl_conv_grid, conjugate_brute, indicator, support_function};

type P = Point<f64>;

fn at1(x: &P) -> String {
    format!("x={x}")
}

fn at2(x: &P, y: &P) -> String {
    format!("(x,x*)=({x},{y})")
}

fn merged(mut a: Vec<P>, b: &[P]) -> Vec<P> {
    a.extend(b.iter().cloned());
    a.sort_by(|p, q| p.lex_cmp(q));
    a.dedup();
    a
}

fn converted(points: &[Point<crate::extreal::Q>], dim: usize) -> Vec<P> {
    points.iter().filter(|p| p.dim() == dim).map(|p| p.convert::<f64>()).collect()
}

/// Every `ambient` point inside the convex hull of `set` belongs to `set`.
fn grid_convex(set: &[P], ambient: &[P]) -> bool {
    if set.len() < 3 {
        return true;
    }
    let poly = convex_hull_2d(set);
    if poly.len() < 3 {
        return true;
    }
    ambient.iter().all(|p| !point_in_polygon(&poly, p) || set.contains(p))
}

pub(crate) struct FunctionCtx {
    f: GridFunction<f64>,
    set: Option<SampledSet<f64>>,
    xs: Vec<P>,
    dual: Vec<P>,
    g: OperatorGraph<f64>,
}

/// State shared by the checks on one grid instance.
pub(crate) enum GridCtx {
    Function(Box<FunctionCtx>),
    Graph(OperatorGraph<f64>),
}

impl GridCtx {
    pub(crate) fn new(instance: &Instance, probes: &Probes) -> Result<Self> {
        let (f, set) = match instance {
            Instance::Grid(f) => (f.clone(), None),
            Instance::Indicator(c) => (indicator(c)?, Some(c.clone())),
            Instance::MaxAffine(m) => {
                let pts = converted(&probes.primal, m.dim());
                (GridFunction::sample(m.dim(), pts, |p| m.value(p))?, None)
            }
            Instance::Graph(g) => return Ok(GridCtx::Graph(g.clone())),
            Instance::Pl(_) => return Err(Error::precondition("exact instances use the exact backend")),
        };
        let dim = f.dim();
        let xs = merged(converted(&probes.primal, dim), f.points());
        let dual = merged(converted(&probes.dual, dim), &[Point::zeros(dim)]);
        let g = subdiff_graph(&f, f.points(), &dual)?;
        Ok(GridCtx::Function(Box::new(FunctionCtx { f, set, xs, dual, g })))
    }

    pub(crate) fn run(&self, id: &str) -> Result<Outcome<f64>> {
        crate::theoremlab::registry_entry(id)?;
        match self {
            GridCtx::Graph(g) => {
                if !is_monotone(g) {
                    return not_applicable("graph is not monotone");
                }
                if id != "fitz.coupling" {
                    return not_applicable("needs a function, not a bare graph");
                }
                let mut t = Tally::new();
                for (a, s) in g.pairs() {
                    t.eq(&fitzpatrick(g, a, s)?, &Finite(a.dot(s)), || at2(a, s));
                }
                Ok(Outcome::Checked(t))
            }
            GridCtx::Function(c) => c.run(id),
        }
    }
}

impl FunctionCtx {
    fn fx(&self, x: &P) -> ExtReal<f64> {
        self.f.value(x)
    }

    fn in_d(&self, x: &P) -> bool {
        self.g.in_domain(x)
    }

    fn cup(&self) -> Result<MaxAffine<f64>> {
        upper_envelope(&self.f, &self.g)
    }

    fn hull(&self) -> Result<DomainHull<f64>> {
        dom_sharp_grid(&self.f, &self.dual)
    }

    fn resample(&self, h: impl Fn(&P) -> ExtReal<f64>) -> Result<GridFunction<f64>> {
        GridFunction::sample(self.f.dim(), self.f.points().to_vec(), h)
    }

    fn run(&self, id: &str) -> Result<Outcome<f64>> {
        match id {
            "dfdom.ineq" => self.dfdom_ineq(),
            "dfdom.i" => self.dfdom_i(),
            "dfdom.e3" => self.dfdom_e3(),
            "fcupdiez.i" => self.fcupdiez_i(),
            "fcupdiez.ii" => self.fcupdiez_ii(),
            "fcupdiez.iv" => self.fcupdiez_iv(),
            "implineq" => self.implineq(),
            "fcirc.i" => self.fcirc_i(),
            "fsp.i" => self.fsp_i(),
            "fsp.ii" => self.fsp_ii(),
            "fsp.iii" => self.fsp_iii(),
            "ncfitz" => self.ncfitz(),
            "maxsdsp.closure" => self.closure(),
            "fitz.coupling" => {
                let mut t = Tally::new();
                for (a, s) in self.g.pairs() {
                    t.eq(&fitzpatrick(&self.g, a, s)?, &Finite(a.dot(s)), || at2(a, s));
                }
                Ok(Outcome::Checked(t))
            }
            _ => not_applicable("needs the exact backend"),
        }
    }

    fn dfdom_ineq(&self) -> Result<Outcome<f64>> {
        let fss = cl_conv_dual(&self.f, &self.dual)?;
        let fs = conjugate_brute(&self.f, &self.dual)?;
        let mut t = Tally::new();
        for x in &self.xs {
            let bx = fss.eval(x);
            for y in &self.dual {
                t.le(&fitzpatrick(&self.g, x, y)?, &(bx.clone() + fs.value(y)), || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn dfdom_i(&self) -> Result<Outcome<f64>> {
        let h = biconjugate_grid(&self.f, &self.dual)?;
        let mut t = Tally::new();
        for (a, s) in self.g.pairs() {
            t.holds(h.is_subgradient(a, s), || at2(a, s));
            t.eq(&self.fx(a), &h.value(a), || at1(a));
        }
        for a in self.g.domain_points() {
            for y in &self.dual {
                t.holds(self.f.is_subgradient(&a, y) == h.is_subgradient(&a, y), || at2(&a, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn dfdom_e3(&self) -> Result<Outcome<f64>> {
        let tests: Vec<(P, P)> =
            self.f.points().iter().flat_map(|x| self.dual.iter().map(move |y| (x.clone(), y.clone()))).collect();
        let v = is_maximal_relative(&self.g, &tests, "grid pairs")?;
        if v.status == MaximalityStatus::NotMaximal {
            let (x, y) = v.witness.expect("not-maximal verdicts carry a witness");
            return not_applicable(format!("∂f is not maximal: ({x},{y}) is related to the graph"));
        }
        let bumped = self.f.map_values(|p, v| match v {
            Finite(s) if !self.in_d(p) => Finite(s + 1.0),
            other => other.clone(),
        });
        let gb = subdiff_graph(&bumped, bumped.points(), &self.dual)?;
        let mut t = Tally::new();
        for x in self.f.points() {
            t.le(&self.fx(x), &bumped.value(x), || at1(x));
        }
        t.holds(gb.pairs() == self.g.pairs(), || "Graph ∂g".into());
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_i(&self) -> Result<Outcome<f64>> {
        let (cup, hull) = (self.cup()?, self.hull()?);
        let mut t = Tally::new();
        for x in &self.xs {
            let (c, s, fx) = (cup.eval(x), sharp_value(&cup, &hull, x), self.fx(x));
            t.le(&c, &s, || at1(x));
            t.le(&s, &fx, || at1(x));
            if self.in_d(x) {
                t.eq(&c, &fx, || at1(x));
                t.eq(&s, &fx, || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_ii(&self) -> Result<Outcome<f64>> {
        let nonempty = !self.g.is_empty();
        let (cup, hull) = (self.cup()?, self.hull()?);
        let vals: Vec<ExtReal<f64>> = self.xs.iter().map(|x| sharp_value(&cup, &hull, x)).collect();
        let sharp_proper = !vals.iter().any(ExtReal::is_neg_inf) && vals.iter().any(ExtReal::is_finite);
        let mut t = Tally::new();
        t.holds(cup.is_proper() == nonempty, || "f^∪".into());
        t.holds(sharp_proper == nonempty, || "f^#".into());
        Ok(Outcome::Checked(t))
    }

    fn fcupdiez_iv(&self) -> Result<Outcome<f64>> {
        let (cup, hull) = (self.cup()?, self.hull()?);
        let hc = self.resample(|x| cup.eval(x))?;
        let hs = self.resample(|x| sharp_value(&cup, &hull, x))?;
        let mut t = Tally::new();
        for (a, s) in self.g.pairs() {
            t.holds(hc.is_subgradient(a, s), || format!("f^∪ at ({a},{s})"));
            t.holds(hs.is_subgradient(a, s), || format!("f^# at ({a},{s})"));
        }
        for a in self.g.domain_points() {
            for y in &self.dual {
                let d = self.f.is_subgradient(&a, y);
                t.holds(d == hc.is_subgradient(&a, y), || format!("∂f^∪ at {}", at2(&a, y)));
                t.holds(d == hs.is_subgradient(&a, y), || format!("∂f^# at {}", at2(&a, y)));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn implineq(&self) -> Result<Outcome<f64>> {
        let cup = self.cup()?;
        let mut t = Tally::new();
        for y in &self.dual {
            let sc = star_cup(&self.g, y)?;
            for x in &self.xs {
                t.le(&fitzpatrick(&self.g, x, y)?, &(cup.eval(x) + sc.clone()), || at2(x, y));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fcirc_i(&self) -> Result<Outcome<f64>> {
        let cup = self.cup()?;
        let h = cl_conv_grid(&self.f, Some(&self.dual))?;
        let circ = circ_grid(&self.f, &self.g, Some(&self.dual))?;
        let mut t = Tally::new();
        for x in &self.xs {
            let (hx, cx) = (h.value(x), circ.value(x));
            t.le(&cup.eval(x), &hx, || at1(x));
            t.le(&hx, &cx, || at1(x));
            if self.in_d(x) {
                t.eq(&cx, &self.fx(x), || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fsp_i(&self) -> Result<Outcome<f64>> {
        let (cup, hull) = (self.cup()?, self.hull()?);
        let mut t = Tally::new();
        for x in &self.xs {
            let sm = smile(&self.f, &self.g, x)?;
            let (c, s, fx) = (cup.eval(x), sharp_value(&cup, &hull, x), self.fx(x));
            t.le(&sm, &c, || at1(x));
            t.le(&c, &s, || at1(x));
            t.le(&s, &fx, || at1(x));
            if self.in_d(x) {
                t.eq(&sm, &fx, || at1(x));
            }
            if fx.is_pos_inf() {
                t.eq(&sm, &c, || at1(x));
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn fsp_ii(&self) -> Result<Outcome<f64>> {
        let vals = self.xs.iter().map(|x| smile(&self.f, &self.g, x)).collect::<Result<Vec<_>>>()?;
        let proper = !vals.iter().any(ExtReal::is_neg_inf) && vals.iter().any(ExtReal::is_finite);
        let origin = Point::zeros(self.f.dim());
        let fs0 = conjugate_brute(&self.f, std::slice::from_ref(&origin))?.values()[0].clone();
        let rhs = !self.g.is_empty() && fs0.eq_tol(&star_cup(&self.g, &origin)?);
        let mut t = Tally::new();
        t.holds(proper == rhs, || "f^⌣".into());
        Ok(Outcome::Checked(t))
    }

    fn fsp_iii(&self) -> Result<Outcome<f64>> {
        let origin = Point::zeros(self.f.dim());
        let mut t = Tally::new();
        for x in &self.xs {
            let rhs = fitzpatrick(&self.g, x, &origin)? + self.fx(x);
            t.le(&smile(&self.f, &self.g, x)?, &rhs, || at1(x));
        }
        Ok(Outcome::Checked(t))
    }

    fn ncfitz(&self) -> Result<Outcome<f64>> {
        let Some(c) = &self.set else {
            return not_applicable("f is not an indicator function");
        };
        let hull = self.hull()?;
        let mut t = Tally::new();
        for y in &self.dual {
            let sigma = support_function(c, y)?;
            for x in &self.xs {
                let phi = fitzpatrick(&self.g, x, y)?;
                if hull.contains(x) {
                    t.eq(&phi, &sigma, || at2(x, y));
                } else {
                    t.le(&sigma, &phi, || at2(x, y));
                }
            }
        }
        Ok(Outcome::Checked(t))
    }

    fn closure(&self) -> Result<Outcome<f64>> {
        if self.f.dim() != 2 {
            return not_applicable("closure convexity is checked on 2D grids");
        }
        if !self.f.is_convex_on_grid()? {
            return not_applicable("f is not convex on the grid");
        }
        let domain: Vec<P> = (0..self.f.len()).filter(|&i| self.f.has_affine_support(i)).map(|i| self.f.points()[i].clone()).collect();
        let mut range = self.g.range_points();
        range.sort_by(|p, q| p.lex_cmp(q));
        range.dedup();
        let mut t = Tally::new();
        t.holds(grid_convex(&domain, self.f.points()), || "D(∂f)".into());
        t.holds(grid_convex(&range, &self.dual), || "R(∂f)".into());
        Ok(Outcome::Checked(t))
    }
}
