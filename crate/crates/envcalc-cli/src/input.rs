use std::fs;
use std::path::Path;

use envcalc::io::{parse_probes, Instance};
use envcalc::theoremlab::{gallery_instances, LabInstance};
use envcalc::transforms::indicator;
use envcalc::{Backend, Error, Evaluate, GridFunction, PLConvex1D, Point, Result, Scalar, Q};

pub const DEFAULT_AXIS: &str = "-5:5:21";
pub const DEFAULT_AXIS_2D: &str = "-5:5:11";

/// Reads `ENVCALC_BACKEND`.
pub fn backend_override() -> Result<Option<Backend>> {
    match std::env::var("ENVCALC_BACKEND") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim() {
            "" => Ok(None),
            "exact" => Ok(Some(Backend::Exact)),
            "grid" => Ok(Some(Backend::Grid)),
            other => Err(Error::parse(format!("ENVCALC_BACKEND must be `exact` or `grid`, got `{other}`"))),
        },
    }
}

/// A JSON file, or `gallery:NAME` / `gallery:NAME:PART` for a built-in instance.
pub fn load(spec: &str) -> Result<LabInstance> {
    if let Some(rest) = spec.strip_prefix("gallery:") {
        let (name, part) = rest.split_once(':').map_or((rest, None), |(n, p)| (n, Some(p)));
        let insts = gallery_instances(name)?;
        return match part {
            None => Ok(insts[0].clone()),
            Some(p) => insts
                .into_iter()
                .find(|i| i.id.rsplit(':').next() == Some(p))
                .ok_or_else(|| Error::parse(format!("gallery entry `{name}` has no part `{p}`"))),
        };
    }
    let text = fs::read_to_string(spec).map_err(|e| Error::parse(format!("{spec}: {e}")))?;
    let id = Path::new(spec).file_stem().map_or(spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok(LabInstance::new(id, Instance::from_json(&text)?))
}

/// Probe points for `dim`, parsed from axis text or the default axis.
pub fn probes<S: Scalar>(spec: Option<&str>, dim: usize) -> Result<Vec<Point<S>>> {
    let default = if dim == 1 { DEFAULT_AXIS } else { DEFAULT_AXIS_2D };
    parse_probes(spec.unwrap_or(default), dim)
}

/// A function instance on the backend that will process it.
pub enum Func {
    Exact(PLConvex1D<Q>),
    Grid(GridFunction<f64>),
}

impl Func {
    /// Exact instances go to the grid backend when it is forced, sampled at `probes`.
    pub fn from_instance(inst: &Instance, backend: Option<Backend>, probes: Option<&str>) -> Result<Func> {
        Ok(match inst {
            Instance::Pl(f) if backend != Some(Backend::Grid) => Func::Exact(f.clone()),
            Instance::Pl(f) => Func::Grid(sample_pl(f, probes)?),
            Instance::Grid(f) => Func::Grid(f.clone()),
            Instance::Indicator(c) => Func::Grid(indicator(c)?),
            Instance::MaxAffine(m) => {
                let pts = self::probes(probes, m.dim())?;
                Func::Grid(GridFunction::sample(m.dim(), pts, |p| m.value(p))?)
            }
            Instance::Graph(_) => return Err(Error::precondition("this verb needs a function, not a graph")),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Func::Exact(_) => 1,
            Func::Grid(f) => f.dim(),
        }
    }

    /// The grid form, sampling an exact function at `probes`.
    pub fn into_grid(self, probes: Option<&str>) -> Result<GridFunction<f64>> {
        match self {
            Func::Exact(f) => sample_pl(&f, probes),
            Func::Grid(g) => Ok(g),
        }
    }
}

fn sample_pl(f: &PLConvex1D<Q>, probes: Option<&str>) -> Result<GridFunction<f64>> {
    let g = f.convert::<f64>();
    let xs: Vec<f64> = self::probes::<f64>(probes, 1)?.iter().map(|p| *p.x()).collect();
    GridFunction::sample_1d(&xs, |x| g.eval(x))
}
