//! Plain-Rust entry points behind the browser exports. Everything crosses
//! the boundary as JSON text; infinite values serialize as `null`.

use envcalc::io::Instance;
use envcalc::point::linspace;
use envcalc::theoremlab::{gallery, gallery_instances};
use envcalc::transforms::{cl_conv_grid_1d, conjugate_exact};
use envcalc::{Evaluate, GridFunction, PLConvex1D, Point};
use serde_json::json;

type Str = std::result::Result<String, String>;

/// A one-dimensional function ready for plotting.
enum Curve {
    Exact(PLConvex1D<f64>),
    Grid(GridFunction<f64>),
}

impl Curve {
    fn parse(text: &str) -> std::result::Result<Curve, String> {
        match Instance::from_json(text).map_err(|e| e.to_string())? {
            Instance::Pl(f) => Ok(Curve::Exact(f.convert())),
            Instance::Grid(g) if g.dim() == 1 => Ok(Curve::Grid(g)),
            other => Err(format!("the demo plots one-dimensional functions, got a {} instance", other.kind())),
        }
    }

    fn sample(&self, xs: &[f64]) -> Vec<f64> {
        match self {
            Curve::Exact(f) => xs.iter().map(|x| f.eval(x).to_f64()).collect(),
            Curve::Grid(g) => xs.iter().map(|x| g.value(&Point::scalar(*x)).to_f64()).collect(),
        }
    }

    fn as_pl(&self) -> std::result::Result<PLConvex1D<f64>, String> {
        match self {
            Curve::Exact(f) => Ok(f.clone()),
            Curve::Grid(g) => cl_conv_grid_1d(g).map_err(|e| e.to_string()),
        }
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> std::result::Result<Vec<f64>, String> {
    if lo.is_nan() || hi.is_nan() || lo >= hi || !(2..=100_000).contains(&n) {
        return Err(format!("bad axis {lo}:{hi}:{n}"));
    }
    Ok(linspace(&lo, &hi, n))
}

/// `f` on the primal axis and `f*` on the dual axis. Grid input is
/// conjugated through its lower hull, which has the same conjugate.
pub fn conjugate(instance: &str, lo: f64, hi: f64, n: usize) -> Str {
    let f = Curve::parse(instance)?;
    let xs = axis(lo, hi, n)?;
    let fs = conjugate_exact(&f.as_pl()?).map_err(|e| e.to_string())?;
    let ys = xs.clone();
    let out: Vec<f64> = ys.iter().map(|y| fs.eval(y).to_f64()).collect();
    Ok(json!({ "x": xs, "f": f.sample(&xs), "y": ys, "out": out }).to_string())
}

/// `f` and `cl conv f` on the same axis.
pub fn hull(instance: &str, lo: f64, hi: f64, n: usize) -> Str {
    let f = Curve::parse(instance)?;
    let xs = axis(lo, hi, n)?;
    let h = f.as_pl()?.closure();
    let out: Vec<f64> = xs.iter().map(|x| h.eval(x).to_f64()).collect();
    Ok(json!({ "x": xs, "f": f.sample(&xs), "y": xs, "out": out }).to_string())
}

/// The findings of a gallery entry as `{claim, expected, observed, ok, detail}` rows.
pub fn findings(name: &str) -> Str {
    let entry = gallery(name).map_err(|e| e.to_string())?;
    let rows: Vec<_> = entry
        .findings
        .iter()
        .map(|f| json!({ "claim": f.claim, "expected": f.expected, "observed": f.observed, "ok": f.reproduced(), "detail": f.detail }))
        .collect();
    Ok(json!(rows).to_string())
}

/// The first one-dimensional instance of a gallery entry, as JSON.
pub fn preset(name: &str) -> Str {
    gallery_instances(name)
        .map_err(|e| e.to_string())?
        .into_iter()
        .find(|i| matches!(&i.instance, Instance::Pl(_)) || matches!(&i.instance, Instance::Grid(g) if g.dim() == 1))
        .map(|i| i.instance.to_json())
        .ok_or_else(|| format!("{name} has no one-dimensional instance"))
}
