use envcalc::envelopes::{
    circ_exact, circ_grid, cup_value, dom_sharp_grid, dom_sharp_pl, n_cup, portable_hull, sharp_value, smile, smile_eps,
    star_cup, upper_envelope, DomainHull, EnvelopeKind,
};
use envcalc::io::{Instance, Table};
use envcalc::operators::{fitzpatrick, normal_cone_graph, subdiff_graph, subdiff_graph_exact, OperatorGraph, DEFAULT_REPRESENTATIVES};
use envcalc::transforms::{cl_conv_grid, cl_conv_pl, conjugate_brute, conjugate_exact, inf_conv, inf_conv_pl};
use envcalc::{Backend, Error, Evaluate, ExtReal, GridFunction, PLConvex1D, Point, Result, Scalar, Subdifferentiable, Q};

use crate::input::{probes, Func};

fn axis_header(label: &str, dim: usize) -> Vec<String> {
    if dim == 1 {
        vec![label.to_string()]
    } else {
        (1..=dim).map(|i| format!("{label}{i}")).collect()
    }
}

fn coords<S: Scalar>(p: &Point<S>) -> impl Iterator<Item = String> + '_ {
    p.coords().iter().map(|c| c.to_f64().to_string())
}

fn exact<S: Scalar>() -> bool {
    S::BACKEND == Backend::Exact
}

fn value_header<S: Scalar>(mut header: Vec<String>) -> Vec<String> {
    header.push("value".into());
    if exact::<S>() {
        header.push("exact".into());
    }
    header
}

fn value_cells<S: Scalar>(v: &ExtReal<S>) -> Vec<String> {
    let mut cells = vec![v.display_f64()];
    if exact::<S>() {
        cells.push(v.exact_string());
    }
    cells
}

/// One row per point: coordinates, then the value (decimal, plus the exact
/// form on the exact backend).
fn value_table<S: Scalar>(label: &str, dim: usize, rows: impl IntoIterator<Item = (Point<S>, ExtReal<S>)>) -> Table {
    let mut t = Table::new(value_header::<S>(axis_header(label, dim)));
    for (p, v) in rows {
        t.push(coords(&p).chain(value_cells(&v)));
    }
    t
}

fn pair_header(dim: usize) -> Vec<String> {
    let mut h = axis_header("x", dim);
    h.extend(axis_header("y", dim));
    h
}

fn exact_graph(f: &PLConvex1D<Q>, probes: &[Point<Q>]) -> Result<OperatorGraph<Q>> {
    let mut xs: Vec<Q> = probes.iter().map(|p| p.x().clone()).collect();
    xs.extend(f.breakpoints().iter().cloned());
    xs.sort();
    xs.dedup();
    subdiff_graph_exact(f, &xs, DEFAULT_REPRESENTATIVES)
}

pub fn conjugate(f: Func, dual: Option<&str>) -> Result<Table> {
    match f {
        Func::Exact(f) => {
            let fs = conjugate_exact(&f)?;
            let ys = probes::<Q>(dual, 1)?;
            Ok(value_table("y", 1, ys.into_iter().map(|y| {
                let v = fs.eval(y.x());
                (y, v)
            })))
        }
        Func::Grid(f) => {
            let ys = probes::<f64>(dual, f.dim())?;
            let fs = conjugate_brute(&f, &ys)?;
            Ok(value_table("y", f.dim(), fs.points().iter().cloned().zip(fs.values().iter().cloned())))
        }
    }
}

pub fn clconv(f: Func, at: Option<&str>, dual: Option<&str>) -> Result<Table> {
    match f {
        Func::Exact(f) => {
            let h = cl_conv_pl(&f);
            let xs = probes::<Q>(at, 1)?;
            Ok(value_table("x", 1, xs.into_iter().map(|x| {
                let v = h.eval(x.x());
                (x, v)
            })))
        }
        Func::Grid(f) => {
            let ys = probes::<f64>(dual, f.dim())?;
            let h = cl_conv_grid(&f, Some(&ys))?;
            let xs = probes::<f64>(at, f.dim())?;
            Ok(value_table("x", f.dim(), xs.into_iter().map(|x| {
                let v = h.value(&x);
                (x, v)
            })))
        }
    }
}

/// Exact pairs are evaluated piece by piece; grid pairs take the sample
/// points of `f` as witnesses.
pub fn infconv(f: Func, g: Func, at: Option<&str>) -> Result<Table> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    match (f, g) {
        (Func::Exact(f), Func::Exact(g)) => {
            let rows = probes::<Q>(at, 1)?.into_iter().map(|x| {
                let v = inf_conv_pl(&f, &g, x.x());
                (x, v)
            });
            Ok(value_table("x", 1, rows))
        }
        (f, g) => {
            let dim = f.dim();
            let (f, g) = (f.into_grid(at)?, g.into_grid(at)?);
            let mut rows = Vec::new();
            for x in probes::<f64>(at, dim)? {
                let v = inf_conv(&f, &g, &x, f.points())?;
                rows.push((x, v));
            }
            Ok(value_table("x", dim, rows))
        }
    }
}

fn pair_table<S: Scalar>(g: &OperatorGraph<S>) -> Table {
    let mut t = Table::new(pair_header(g.dim()));
    for (a, b) in g.pairs() {
        t.push(coords(a).chain(coords(b)));
    }
    t
}

/// Exact graphs list the probes and breakpoints with representatives of each
/// subgradient interval; grid graphs test every dual probe at each primal point.
pub fn subdiff(f: Func, at: Option<&str>, dual: Option<&str>) -> Result<Table> {
    match f {
        Func::Exact(f) => Ok(pair_table(&exact_graph(&f, &probes(at, 1)?)?)),
        Func::Grid(f) => {
            let primal = match at {
                Some(spec) => probes(Some(spec), f.dim())?,
                None => f.points().to_vec(),
            };
            Ok(pair_table(&subdiff_graph(&f, &primal, &probes(dual, f.dim())?)?))
        }
    }
}

fn fitz_table<S: Scalar>(g: &OperatorGraph<S>, xs: &[Point<S>], ys: &[Point<S>]) -> Result<Table> {
    let mut t = Table::new(value_header::<S>(pair_header(g.dim())));
    for x in xs {
        for y in ys {
            let phi = fitzpatrick(g, x, y)?;
            t.push(coords(x).chain(coords(y)).chain(value_cells(&phi)));
        }
    }
    Ok(t)
}

/// `φ` of a graph instance, or of the subdifferential graph of a function.
pub fn fitz(inst: &Instance, backend: Option<Backend>, at: Option<&str>, dual: Option<&str>) -> Result<Table> {
    if let Instance::Graph(g) = inst {
        return fitz_table(g, &probes(at, g.dim())?, &probes(dual, g.dim())?);
    }
    match Func::from_instance(inst, backend, at)? {
        Func::Exact(f) => {
            let xs = probes(at, 1)?;
            fitz_table(&exact_graph(&f, &xs)?, &xs, &probes(dual, 1)?)
        }
        Func::Grid(f) => {
            let ys = probes(dual, f.dim())?;
            fitz_table(&subdiff_graph(&f, f.points(), &ys)?, &probes(at, f.dim())?, &ys)
        }
    }
}

pub struct EnvelopeParams {
    pub kind: EnvelopeKind,
    pub n: Option<usize>,
    pub eps: Option<String>,
}

type Lazy<'a, T> = Box<dyn FnOnce() -> Result<T> + 'a>;

struct EnvelopeInput<'a, S: Scalar, F> {
    f: Option<&'a F>,
    g: OperatorGraph<S>,
    hull: Lazy<'a, DomainHull<S>>,
    circ: Lazy<'a, Box<dyn Evaluate<S> + 'a>>,
    xs: Vec<Point<S>>,
    ys: Vec<Point<S>>,
}

fn envelope_table<S: Scalar, F: Subdifferentiable<S>>(p: &EnvelopeParams, input: EnvelopeInput<'_, S, F>) -> Result<Table> {
    let EnvelopeInput { f, g, hull, circ, xs, ys } = input;
    let dim = g.dim();
    let need_f = || f.ok_or_else(|| Error::precondition(format!("`{}` needs a function instance", p.kind)));
    let at_x = |h: &dyn Fn(&Point<S>) -> Result<ExtReal<S>>| -> Result<Table> {
        let rows = xs.iter().map(|x| Ok((x.clone(), h(x)?))).collect::<Result<Vec<_>>>()?;
        Ok(value_table("x", dim, rows))
    };
    match p.kind {
        EnvelopeKind::Cup | EnvelopeKind::Sharp => {
            let cup = match f {
                Some(f) => Some(upper_envelope(f, &g)?),
                None => None,
            };
            let cup_at = |x: &Point<S>| match &cup {
                Some(m) => Ok(m.eval(x)),
                None => cup_value(&g, x),
            };
            if p.kind == EnvelopeKind::Cup {
                return at_x(&cup_at);
            }
            need_f()?;
            let hull = hull()?;
            let cup = cup.expect("built from f");
            at_x(&|x| Ok(sharp_value(&cup, &hull, x)))
        }
        EnvelopeKind::StarCup => {
            let rows = ys.iter().map(|y| Ok((y.clone(), star_cup(&g, y)?))).collect::<Result<Vec<_>>>()?;
            Ok(value_table("y", dim, rows))
        }
        EnvelopeKind::Circ => {
            need_f()?;
            let c = circ()?;
            at_x(&|x| Ok(c.value(x)))
        }
        EnvelopeKind::NCup => {
            let n = p.n.ok_or_else(|| Error::parse("`ncup` needs --n"))?;
            at_x(&|x| n_cup(&g, n, x))
        }
        EnvelopeKind::Smile => {
            let f = need_f()?;
            at_x(&|x| smile(f, &g, x))
        }
        EnvelopeKind::SmileEps => {
            let f = need_f()?;
            let eps = S::parse_scalar(p.eps.as_deref().ok_or_else(|| Error::parse("`smileeps` needs --eps"))?)?;
            at_x(&|x| smile_eps(f, &g, x, &eps))
        }
    }
}

pub fn envelope(
    inst: &Instance,
    backend: Option<Backend>,
    p: &EnvelopeParams,
    at: Option<&str>,
    dual: Option<&str>,
) -> Result<Table> {
    if let Instance::Graph(g) = inst {
        let input: EnvelopeInput<'_, f64, GridFunction<f64>> = EnvelopeInput {
            f: None,
            g: g.clone(),
            hull: Box::new(|| Err(Error::precondition("graph instances carry no domain"))),
            circ: Box::new(|| Err(Error::precondition("graph instances carry no function"))),
            xs: probes(at, g.dim())?,
            ys: probes(dual, g.dim())?,
        };
        return envelope_table(p, input);
    }
    match Func::from_instance(inst, backend, at)? {
        Func::Exact(f) => {
            let xs = probes(at, 1)?;
            let g = exact_graph(&f, &xs)?;
            let gc = g.clone();
            let fr = &f;
            envelope_table(
                p,
                EnvelopeInput {
                    f: Some(&f),
                    g,
                    hull: Box::new(|| Ok(dom_sharp_pl(fr))),
                    circ: Box::new(move || Ok(Box::new(circ_exact(fr, &gc)?) as Box<dyn Evaluate<Q>>)),
                    xs,
                    ys: probes(dual, 1)?,
                },
            )
        }
        Func::Grid(f) => {
            let ys = probes(dual, f.dim())?;
            let g = subdiff_graph(&f, f.points(), &ys)?;
            let gc = g.clone();
            let (fr, yr) = (&f, &ys);
            envelope_table(
                p,
                EnvelopeInput {
                    f: Some(&f),
                    g,
                    hull: Box::new(move || dom_sharp_grid(fr, yr)),
                    circ: Box::new(move || Ok(Box::new(circ_grid(fr, &gc, Some(yr))?) as Box<dyn Evaluate<f64>>)),
                    xs: probes(at, f.dim())?,
                    ys: ys.clone(),
                },
            )
        }
    }
}

fn membership_table<S: Scalar>(dim: usize, xs: &[Point<S>], member: impl Fn(&Point<S>) -> bool) -> Table {
    let mut h = axis_header("x", dim);
    h.push("member".into());
    let mut t = Table::new(h);
    for x in xs {
        t.push(coords(x).chain([member(x).to_string()]));
    }
    t
}

/// `C^#` of an indicator instance, `(dom f)^#` of a function.
pub fn hull(inst: &Instance, backend: Option<Backend>, at: Option<&str>, dual: Option<&str>) -> Result<Table> {
    if let Instance::Indicator(c) = inst {
        let normals = normal_cone_graph(c, &probes(dual, c.dim())?)?;
        let h = portable_hull(c, &normals)?;
        return Ok(membership_table(c.dim(), &probes(at, c.dim())?, |x| h.contains(x)));
    }
    match Func::from_instance(inst, backend, at)? {
        Func::Exact(f) => {
            let h = dom_sharp_pl(&f);
            Ok(membership_table(1, &probes(at, 1)?, |x| h.contains(x)))
        }
        Func::Grid(f) => {
            let h = dom_sharp_grid(&f, &probes(dual, f.dim())?)?;
            Ok(membership_table(f.dim(), &probes(at, f.dim())?, |x| h.contains(x)))
        }
    }
}
