//! Acceptance criteria 1–10, one PASS/FAIL line each.
//!
//! Every criterion recomputes its targets from the public API with oracles
//! that do not share code with the quantity under test where possible, and
//! fails when its runtime budget is exceeded.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use envcalc::envelopes::{
    brondsted_search, circ_exact, circ_grid, cup_value, dom_sharp_grid, dom_sharp_pl, n_cup, sharp_value, smile,
    smile_eps, star_cup, upper_envelope,
};
use envcalc::funcrep::{Evaluate, GridFunction, PLConvex1D, Recession, Subdifferentiable};
use envcalc::io::Instance;
use envcalc::operators::{
    fitzpatrick, ni_check, subdiff_graph, subdiff_graph_exact, OperatorGraph, Provenance, DEFAULT_REPRESENTATIVES,
};
use envcalc::point::{linspace, points_1d, product_grid};
use envcalc::theoremlab::{gallery, Family, InstanceGenerator};
use envcalc::transforms::{
    biconjugate_exact, cl_conv_dual, cl_conv_grid_1d, cl_conv_pl, conjugate_brute, conjugate_exact, conjugate_llt,
};
use envcalc::{ext_add, ext_inf, ext_sup, ExtReal, Finite, NegInf, Point, PosInf, Scalar, Q};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn p(x: &Q) -> Point<Q> {
    Point::scalar(x.clone())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pl_instances(family: Family, n: usize) -> Result<Vec<(String, PLConvex1D<Q>)>, String> {
    let insts = InstanceGenerator::new(42, family).take(n).map_err(|e| e.to_string())?;
    Ok(insts
        .into_iter()
        .map(|i| match i.instance {
            Instance::Pl(f) => (i.id, f),
            other => panic!("{} is a {} instance", i.id, other.kind()),
        })
        .collect())
}

fn grid_instances(n: usize) -> Result<Vec<(String, GridFunction<f64>)>, String> {
    let insts = InstanceGenerator::new(42, Family::GridNonconvex).take(n).map_err(|e| e.to_string())?;
    Ok(insts
        .into_iter()
        .map(|i| match i.instance {
            Instance::Grid(f) => (i.id, f),
            other => panic!("{} is a {} instance", i.id, other.kind()),
        })
        .collect())
}

/// `[-5, 5]` at halves plus the breakpoints of `f`.
fn exact_probes(f: &PLConvex1D<Q>) -> Vec<Q> {
    let mut xs = linspace(&q(-5), &q(5), 21);
    xs.extend(f.breakpoints().iter().cloned());
    xs.sort();
    xs.dedup();
    xs
}

fn dual_probes() -> Vec<Q> {
    linspace(&q(-5), &q(5), 21)
}

fn exact_graph(f: &PLConvex1D<Q>, xs: &[Q]) -> Result<OperatorGraph<Q>, String> {
    subdiff_graph_exact(f, xs, DEFAULT_REPRESENTATIVES).map_err(|e| e.to_string())
}

fn le_exact(a: &ExtReal<Q>, b: &ExtReal<Q>) -> bool {
    a <= b
}

fn conventions() -> Outcome {
    let none: [ExtReal<Q>; 0] = [];
    ensure(ext_add::<Q>(&PosInf, &NegInf) == PosInf, || "ext_add(+inf, -inf) is not +inf".into())?;
    ensure(ext_add::<f64>(&NegInf, &PosInf) == PosInf, || "ext_add(-inf, +inf) is not +inf".into())?;
    ensure(ext_sup(none.iter()) == NegInf, || "ext_sup of nothing is not -inf".into())?;
    ensure(ext_inf(none.iter()) == PosInf, || "ext_inf of nothing is not +inf".into())?;
    Ok("exact".into())
}

fn quadratic_fitzpatrick() -> Outcome {
    let (pairs, values) = (-200..=200)
        .map(|k| {
            let a = k as f64 / 100.0;
            ((Point::scalar(a), Point::scalar(a)), a * a / 2.0)
        })
        .unzip();
    let g = OperatorGraph::with_values(1, pairs, values, Provenance::Exact).map_err(|e| e.to_string())?;
    let axis = linspace(&-2.0, &2.0, 41);
    let mut worst = 0.0f64;
    for x in &axis {
        for y in &axis {
            let phi = fitzpatrick(&g, &Point::scalar(*x), &Point::scalar(*y)).map_err(|e| e.to_string())?;
            let err = (phi.to_f64() - (x + y).powi(2) / 4.0).abs();
            ensure(err <= 1e-9, || format!("φ({x},{y}) = {phi}, expected {}", (x + y).powi(2) / 4.0))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("max error {worst:.1e} over 41×41 probes"))
}

fn open_interval_chain() -> Outcome {
    let f = PLConvex1D::indicator(q(0), q(1))
        .and_then(|f| f.with_overrides(Some(PosInf), Some(PosInf)))
        .map_err(|e| e.to_string())?;
    let xs = linspace(&q(-5), &q(5), 41);
    let g = exact_graph(&f, &xs)?;
    let cup = upper_envelope(&f, &g).map_err(|e| e.to_string())?;
    let hull = dom_sharp_pl(&f);
    let circ = circ_exact(&f, &g).map_err(|e| e.to_string())?;
    let zero = ExtReal::<Q>::zero();
    for x in &xs {
        ensure(cup.eval(&p(x)) == zero, || format!("f^∪({x}) = {}", cup.eval(&p(x))))?;
        ensure(sharp_value(&cup, &hull, &p(x)) == zero, || format!("f^#({x}) ≠ 0"))?;
        let inside = *x >= q(0) && *x <= q(1);
        let want = if inside { zero.clone() } else { PosInf };
        ensure(circ.eval(x) == want, || format!("f^∘({x}) = {}, expected {want}", circ.eval(x)))?;
    }
    let duals = linspace(&q(-3), &q(3), 13);
    let sampled = subdiff_graph(&circ, &points_1d(&xs), &points_1d(&duals)).map_err(|e| e.to_string())?;
    let normal = |x: &Q, y: &Q| {
        let (lo, hi) = (q(0), q(1));
        *x >= lo && *x <= hi && (*y == q(0) || (*x == lo && *y < q(0)) || (*x == hi && *y > q(0)))
    };
    let mut checked = 0;
    for x in &xs {
        for y in &duals {
            ensure(sampled.contains(&p(x), &p(y)) == normal(x, y), || format!("∂f^∘ and N_[0,1] differ at ({x},{y})"))?;
            checked += 1;
        }
    }
    Ok(format!("{} probes, {checked} normal-cone pairs", xs.len()))
}

/// Brøndsted–Rockafellar pairs for every probe ε-subgradient at `x`.
fn brondsted_pairs(f: &PLConvex1D<Q>, x: &Q, duals: &[Q], eps: &Q) -> Result<(usize, usize, Option<String>), String> {
    let (mut found, mut total, mut miss) = (0, 0, None);
    for y in duals {
        if !f.eps_subgradient(&p(x), &p(y), eps) {
            continue;
        }
        total += 1;
        match brondsted_search(f, x, y, eps).map_err(|e| e.to_string())? {
            Some(pair) if pair.primal_sq <= *eps && pair.dual_sq <= *eps && pair.coupling_bound_holds(x, eps) => {
                found += 1
            }
            other => {
                miss.get_or_insert_with(|| format!("x={x}, x*={y}, ε={eps}: {other:?}"));
            }
        }
    }
    Ok((found, total, miss))
}

fn equivalence_battery() -> Outcome {
    let duals = dual_probes();
    let tests: Vec<(Point<Q>, Point<Q>)> =
        duals.iter().flat_map(|x| duals.iter().map(move |y| (p(x), p(y)))).collect();
    let epsilons = [Q::ratio(1, 100), Q::ratio(1, 10_000), Q::ratio(1, 1_000_000)];
    let mut witnesses = 0;
    for (id, f) in pl_instances(Family::PlConvex, 200)? {
        let xs = exact_probes(&f);
        let g = exact_graph(&f, &xs)?;
        for x in &xs {
            let fx = f.eval(x);
            let s = smile(&f, &g, &p(x)).map_err(|e| e.to_string())?;
            ensure(s == fx, || format!("{id}: f^⌣({x}) = {s}, f({x}) = {fx}"))?;
            for eps in [Q::ratio(1, 10), q(1)] {
                let se = smile_eps(&f, &g, &p(x), &eps).map_err(|e| e.to_string())?;
                ensure(se == fx, || format!("{id}: f_ε^⌣({x}) = {se} at ε = {eps}, f = {fx}"))?;
            }
        }
        let ni = ni_check(&g, &tests).map_err(|e| e.to_string())?;
        ensure(ni.pass && !ni.margin.is_neg_inf() && ni.margin >= ExtReal::zero(), || {
            format!("{id}: NI margin {} at {:?}", ni.margin, ni.worst)
        })?;
        for x in xs.iter().filter(|x| f.eval(x).is_finite()) {
            for eps in &epsilons {
                let (found, total, miss) = brondsted_pairs(&f, x, &duals, eps)?;
                ensure(miss.is_none(), || format!("{id}: no pair for {}", miss.clone().unwrap_or_default()))?;
                ensure(found == total, || format!("{id}: {found}/{total} pairs"))?;
                witnesses += found;
            }
        }
    }
    ensure(witnesses > 0, || "no ε-subgradients on the probes".into())?;
    Ok(format!("200 instances, {witnesses} Brøndsted–Rockafellar witnesses"))
}

fn exact_chains(id: &str, f: &PLConvex1D<Q>) -> Result<usize, String> {
    let xs = exact_probes(f);
    let g = exact_graph(f, &xs)?;
    let cup = upper_envelope(f, &g).map_err(|e| e.to_string())?;
    let hull = dom_sharp_pl(f);
    let clconv = cl_conv_pl(f);
    let circ = circ_exact(f, &g).map_err(|e| e.to_string())?;
    let fss = biconjugate_exact(f).map_err(|e| e.to_string())?;
    let fs = conjugate_exact(f).map_err(|e| e.to_string())?;
    let mut n = 0;
    for x in &xs {
        let s = smile(f, &g, &p(x)).map_err(|e| e.to_string())?;
        let c = cup.eval(&p(x));
        let h = sharp_value(&cup, &hull, &p(x));
        let chain = [s, c.clone(), h, f.eval(x)];
        ensure(chain.windows(2).all(|w| le_exact(&w[0], &w[1])), || format!("{id}: f^⌣ ≤ f^∪ ≤ f^# ≤ f fails at {x}: {chain:?}"))?;
        let chain = [c, clconv.eval(x), circ.eval(x)];
        ensure(chain.windows(2).all(|w| le_exact(&w[0], &w[1])), || format!("{id}: f^∪ ≤ cl conv f ≤ f^∘ fails at {x}: {chain:?}"))?;
        for y in dual_probes() {
            let phi = fitzpatrick(&g, &p(x), &p(&y)).map_err(|e| e.to_string())?;
            let bound = ext_add(&fss.eval(x), &fs.eval(&y));
            ensure(le_exact(&phi, &bound), || format!("{id}: φ({x},{y}) = {phi} > f**(x)+f*(y) = {bound}"))?;
            let sc = star_cup(&g, &p(&y)).map_err(|e| e.to_string())?;
            let bound = ext_add(&cup.eval(&p(x)), &sc);
            ensure(le_exact(&phi, &bound), || format!("{id}: φ({x},{y}) = {phi} > f^∪(x)+f^{{*∪}}(y) = {bound}"))?;
            n += 2;
        }
    }
    Ok(n)
}

fn grid_chains(id: &str, f: &GridFunction<f64>) -> Result<usize, String> {
    let dim = f.dim();
    let count = if dim == 1 { 21 } else { 11 };
    let axis = linspace(&-5.0, &5.0, count);
    let mut xs = product_grid(&vec![axis; dim]);
    xs.extend(f.points().iter().cloned());
    let dual = product_grid(&vec![linspace(&-5.0, &5.0, count); dim]);
    let e = |r: envcalc::Error| format!("{id}: {r}");
    let g = subdiff_graph(f, f.points(), &dual).map_err(e)?;
    let cup = upper_envelope(f, &g).map_err(e)?;
    let hull = dom_sharp_grid(f, &dual).map_err(e)?;
    let clconv: Box<dyn Evaluate<f64>> =
        if dim == 1 { Box::new(cl_conv_grid_1d(f).map_err(e)?) } else { Box::new(cl_conv_dual(f, &dual).map_err(e)?) };
    let circ = circ_grid(f, &g, Some(&dual)).map_err(e)?;
    let fss = cl_conv_dual(f, &dual).map_err(e)?;
    let fs = conjugate_brute(f, &dual).map_err(e)?;
    let mut n = 0;
    for x in &xs {
        let s = smile(f, &g, x).map_err(e)?;
        let c = cup.eval(x);
        let h = sharp_value(&cup, &hull, x);
        let chain = [s, c.clone(), h, f.value(x)];
        ensure(chain.windows(2).all(|w| w[0].le_tol(&w[1])), || format!("{id}: f^⌣ ≤ f^∪ ≤ f^# ≤ f fails at {x}: {chain:?}"))?;
        let chain = [c.clone(), clconv.value(x), circ.value(x)];
        ensure(chain.windows(2).all(|w| w[0].le_tol(&w[1])), || format!("{id}: f^∪ ≤ cl conv f ≤ f^∘ fails at {x}: {chain:?}"))?;
        for (y, fy) in fs.points().iter().zip(fs.values()) {
            let phi = fitzpatrick(&g, x, y).map_err(e)?;
            let bound = ext_add(&fss.eval(x), fy);
            ensure(phi.le_tol(&bound), || format!("{id}: φ({x},{y}) = {phi} > f**(x)+f*(y) = {bound}"))?;
            let bound = ext_add(&c, &star_cup(&g, y).map_err(e)?);
            ensure(phi.le_tol(&bound), || format!("{id}: φ({x},{y}) = {phi} > f^∪(x)+f^{{*∪}}(y) = {bound}"))?;
            n += 2;
        }
    }
    Ok(n)
}

fn envelope_chains() -> Outcome {
    let mut n = 0;
    for (id, f) in pl_instances(Family::PlConvex, 200)? {
        n += exact_chains(&id, &f)?;
    }
    for (id, f) in grid_instances(50)? {
        n += grid_chains(&id, &f)?;
    }
    Ok(format!("250 instances, {n} inequality pairs"))
}

/// Listed pairs of the exact graph, thinned by even stride to at most `cap`.
fn capped_graph(g: &OperatorGraph<Q>, cap: usize) -> Result<OperatorGraph<Q>, String> {
    let values = g.values().ok_or("exact graph without values")?;
    let n = g.len();
    let idx: Vec<usize> = if n <= cap { (0..n).collect() } else { (0..cap).map(|i| i * (n - 1) / (cap - 1)).collect() };
    let pairs = idx.iter().map(|&i| g.pairs()[i].clone()).collect();
    let vals = idx.iter().map(|&i| values[i].clone()).collect();
    OperatorGraph::with_values(1, pairs, vals, Provenance::Sampled).map_err(|e| e.to_string())
}

fn n_fold_collapse() -> Outcome {
    let mut largest = 0;
    for (id, f) in pl_instances(Family::PlConvex, 50)? {
        let xs = exact_probes(&f);
        let g = capped_graph(&exact_graph(&f, &xs)?, 60)?;
        largest = largest.max(g.len());
        let vals = g.values().expect("values kept");
        for x in &xs {
            let c = cup_value(&g, &p(x)).map_err(|e| e.to_string())?;
            // Literal pair enumeration for n = 2.
            let mut brute: Option<Q> = None;
            for (a1, s1) in g.pairs() {
                for ((a2, s2), v2) in g.pairs().iter().zip(vals) {
                    let t = p(x).sub(a1).dot(s1) + a1.sub(a2).dot(s2) + v2;
                    if brute.as_ref().map_or(true, |b| t > *b) {
                        brute = Some(t);
                    }
                }
            }
            let brute = brute.map_or(NegInf, Finite);
            ensure(brute == c, || format!("{id}: enumerated f^{{2∪}}({x}) = {brute}, f^∪ = {c}"))?;
            for n in [2, 3] {
                let v = n_cup(&g, n, &p(x)).map_err(|e| e.to_string())?;
                ensure(v == c, || format!("{id}: f^{{{n}∪}}({x}) = {v}, f^∪ = {c}"))?;
            }
        }
    }
    Ok(format!("50 instances, graphs up to {largest} pairs"))
}

/// `−inf f` from the breakpoint values and the recession slopes.
fn minus_inf_value(f: &PLConvex1D<Q>) -> ExtReal<Q> {
    let down_left = matches!(f.left(), Recession::Slope(s) if *s > q(0));
    let down_right = matches!(f.right(), Recession::Slope(s) if *s < q(0));
    if down_left || down_right {
        return PosInf;
    }
    Finite(-f.values().iter().min().expect("a breakpoint").clone())
}

fn identities() -> Outcome {
    let ys = dual_probes();
    let mut n = 0;
    for (id, f) in pl_instances(Family::PlConvex, 200)? {
        let xs = exact_probes(&f);
        let g = exact_graph(&f, &xs)?;
        let e = |r: envcalc::Error| format!("{id}: {r}");
        let at_zero = star_cup(&g, &p(&q(0))).map_err(e)?;
        let want = minus_inf_value(&f);
        ensure(at_zero == want, || format!("{id}: f^{{*∪}}(0) = {at_zero}, −inf f = {want}"))?;
        let circ_conj = conjugate_exact(&circ_exact(&f, &g).map_err(e)?).map_err(e)?;
        let fs = conjugate_exact(&f).map_err(e)?;
        let mut yprobes = ys.clone();
        yprobes.extend(fs.breakpoints().iter().cloned());
        let gs = subdiff_graph_exact(&fs, &yprobes, DEFAULT_REPRESENTATIVES).map_err(e)?;
        let star_circ = circ_exact(&fs, &gs).map_err(e)?;
        let cup_conj = conjugate_exact(&upper_envelope(&f, &g).map_err(e)?.to_pl_1d().map_err(e)?).map_err(e)?;
        for y in &ys {
            let lhs = star_cup(&g, &p(y)).map_err(e)?;
            ensure(lhs == circ_conj.eval(y), || format!("{id}: f^{{*∪}}({y}) = {lhs}, f^{{∘*}} = {}", circ_conj.eval(y)))?;
            let (a, b) = (star_circ.eval(y), cup_conj.eval(y));
            ensure(a == b, || format!("{id}: f^{{*∘}}({y}) = {a}, f^{{∪*}} = {b}"))?;
            n += 2;
        }
    }
    Ok(format!("200 instances, {n} dual identities"))
}

fn gallery_verdicts() -> Outcome {
    let mut n = 0;
    for name in ["half-circle", "two-patch", "quadrant"] {
        let entry = gallery(name).map_err(|e| e.to_string())?;
        for finding in &entry.findings {
            ensure(finding.reproduced(), || format!("{name}: {finding}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} findings reproduced"))
}

/// Walled instances whose wall values are raised by `δ`, so `∂f = ∅` there
/// while `∂_ε f ≠ ∅` for `ε ≥ δ`.
fn raised_walls(n: usize, delta: &Q) -> Result<Vec<(String, PLConvex1D<Q>, Vec<Q>)>, String> {
    let mut out = Vec::new();
    for (id, f) in pl_instances(Family::PlConvexWithOverride, n)? {
        let base = f.closure();
        let m = base.values().len() - 1;
        let raise = |wall: bool, v: &Q| wall.then(|| Finite(v.clone() + delta));
        let left = raise(*base.left() == Recession::Wall, &base.values()[0]);
        let right = raise(*base.right() == Recession::Wall, &base.values()[m]);
        let g = base.clone().with_overrides(left, right).map_err(|e| e.to_string())?;
        let points = g.lsc_defect();
        out.push((id, g, points));
    }
    Ok(out)
}

fn brondsted_bounds() -> Outcome {
    let delta = Q::ratio(1, 100_000_000);
    let mut duals = dual_probes();
    let (mut found, mut total) = (0, 0);
    let mut first_miss = None;
    for (id, f, points) in raised_walls(50, &delta)? {
        ensure(!points.is_empty(), || format!("{id} has no raised wall"))?;
        for x in &points {
            ensure(f.subdifferential(x).is_none(), || format!("{id}: ∂f({x}) ≠ ∅"))?;
            duals.extend(f.slopes().iter().cloned());
            for eps in [Q::ratio(1, 100), Q::ratio(1, 10_000)] {
                let (k, t, miss) = brondsted_pairs(&f, x, &duals, &eps)?;
                found += k;
                total += t;
                if first_miss.is_none() {
                    first_miss = miss.map(|m| format!("{id}: {m}"));
                }
            }
            duals.truncate(21);
        }
    }
    ensure(total > 0, || "no ε-subgradients at the raised walls".into())?;
    match first_miss {
        None => Ok(format!("{found}/{total} ε-subgradients have a pair")),
        Some(m) => Err(format!("{found}/{total} ε-subgradients have a pair; first miss {m}")),
    }
}

fn convex_samples(n: usize) -> (Vec<f64>, Vec<f64>) {
    let xs = linspace(&-2.0, &2.0, n);
    let vs = xs.iter().map(|x| x * x / 2.0 + x.abs().powi(3) / 3.0 + (x - 0.5).abs()).collect();
    (xs, vs)
}

fn brute_values(xs: &[f64], vs: &[f64], dual: &[f64]) -> Result<Vec<f64>, String> {
    let f = GridFunction::sample_1d(xs, |x| {
        let i = xs.partition_point(|t| t < x);
        Finite(vs[i])
    })
    .map_err(|e| e.to_string())?;
    let g = conjugate_brute(&f, &points_1d(dual)).map_err(|e| e.to_string())?;
    Ok(g.values().iter().map(ExtReal::to_f64).collect())
}

fn performance_backend() -> Outcome {
    let (xs, vs) = convex_samples(4096);
    let dual = linspace(&-6.0, &6.0, 4096);
    let fast = conjugate_llt(&xs, &vs, &dual).map_err(|e| e.to_string())?;
    let slow = brute_values(&xs, &vs, &dual)?;
    let worst = fast.iter().zip(&slow).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("llt and brute differ by {worst:e} at n = 4096"))?;
    let n = 1 << 16;
    let (xs, vs) = convex_samples(n);
    let dual = linspace(&-6.0, &6.0, n);
    let f = GridFunction::sample_1d(&xs, |x| Finite(vs[xs.partition_point(|t| t < x)])).map_err(|e| e.to_string())?;
    let dual_pts = points_1d(&dual);
    let t = Instant::now();
    let slow = conjugate_brute(&f, &dual_pts).map_err(|e| e.to_string())?;
    let brute = t.elapsed();
    let mut llt = Duration::MAX;
    for _ in 0..3 {
        let t = Instant::now();
        let fast = conjugate_llt(&xs, &vs, &dual).map_err(|e| e.to_string())?;
        llt = llt.min(t.elapsed());
        std::hint::black_box(fast);
    }
    std::hint::black_box(slow);
    let ratio = brute.as_secs_f64() / llt.as_secs_f64().max(1e-9);
    ensure(ratio >= 20.0, || format!("brute/llt = {ratio:.1} at n = 2^16"))?;
    Ok(format!("max error {worst:.1e} at 4096; brute {brute:.2?}, llt {llt:.2?}, ratio {ratio:.0} at 2^16"))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "extended-real conventions", budget: Duration::from_secs(1), run: conventions },
    Criterion { id: 2, title: "quadratic Fitzpatrick function", budget: Duration::from_secs(5), run: quadratic_fitzpatrick },
    Criterion { id: 3, title: "open-interval chain", budget: Duration::from_secs(5), run: open_interval_chain },
    Criterion { id: 4, title: "maximal-subdifferential battery", budget: Duration::from_secs(60), run: equivalence_battery },
    Criterion { id: 5, title: "envelope chains and Fitzpatrick bounds", budget: Duration::from_secs(60), run: envelope_chains },
    Criterion { id: 6, title: "n-fold collapse", budget: Duration::from_secs(120), run: n_fold_collapse },
    Criterion { id: 7, title: "dual identities", budget: Duration::from_secs(30), run: identities },
    Criterion { id: 8, title: "gallery verdicts", budget: Duration::from_secs(30), run: gallery_verdicts },
    Criterion { id: 9, title: "Brøndsted–Rockafellar bounds", budget: Duration::from_secs(30), run: brondsted_bounds },
    Criterion { id: 10, title: "performance backend", budget: Duration::from_secs(120), run: performance_backend },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} C{:<2} {:<40} {:>7.2}s / {:>3}s  {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
