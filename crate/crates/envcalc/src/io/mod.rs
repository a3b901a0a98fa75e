//! Instance files, probe specifications and CSV tables.

mod csv;
mod probes;

pub use csv::Table;
pub use probes::{parse_axis, parse_probes};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, Scalar, Q};
use crate::funcrep::{AffinePiece, GridFunction, HalfSpace, MaxAffine, PLConvex1D, Recession, SampledSet};
use crate::operators::{OperatorGraph, Provenance};
use crate::point::Point;

/// Any input the tools accept.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    /// Exact piecewise-linear convex function on the line.
    Pl(PLConvex1D<Q>),
    /// Samples on a finite grid, `+inf` elsewhere.
    Grid(GridFunction<f64>),
    /// The indicator of a finite point set.
    Indicator(SampledSet<f64>),
    MaxAffine(MaxAffine<f64>),
    Graph(OperatorGraph<f64>),
}

impl Instance {
    pub fn dim(&self) -> usize {
        match self {
            Instance::Pl(_) => 1,
            Instance::Grid(f) => crate::funcrep::Evaluate::dim(f),
            Instance::Indicator(c) => c.dim(),
            Instance::MaxAffine(m) => crate::funcrep::Evaluate::dim(m),
            Instance::Graph(g) => g.dim(),
        }
    }

    /// The `kind` tag used in instance files.
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Pl(_) => "pl-convex-1d",
            Instance::Grid(_) => "grid",
            Instance::Indicator(_) => "indicator",
            Instance::MaxAffine(_) => "max-affine",
            Instance::Graph(_) => "graph",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        wire.into_instance()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Wire::from_instance(self)).expect("instance serializes")
    }
}

/// A JSON number or one of the strings `"inf"`, `"-inf"`, `"p/q"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Number(serde_json::Number),
    Text(String),
}

impl Num {
    fn ext<S: Scalar>(&self) -> Result<ExtReal<S>> {
        match self {
            Num::Number(n) => ExtReal::parse(&n.to_string()),
            Num::Text(t) => ExtReal::parse(t),
        }
    }

    fn finite<S: Scalar>(&self) -> Result<S> {
        self.ext()?.into_finite().ok_or_else(|| Error::parse("expected a finite number"))
    }

    fn from_f64(v: f64) -> Self {
        match serde_json::Number::from_f64(v) {
            Some(n) => Num::Number(n),
            None => Num::Text(if v > 0.0 { "inf".into() } else { "-inf".into() }),
        }
    }

    fn from_ext(v: &ExtReal<f64>) -> Self {
        Num::from_f64(v.to_f64())
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct Overrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WirePiece {
    anchor: Vec<Num>,
    slope: Vec<Num>,
    level: Num,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WireWall {
    anchor: Vec<Num>,
    normal: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum Wire {
    #[serde(rename = "pl-convex-1d")]
    Pl {
        breakpoints: Vec<String>,
        values: Vec<String>,
        /// A slope, or `"-inf"` for a wall at the first breakpoint.
        left_slope: String,
        /// A slope, or `"inf"` for a wall at the last breakpoint.
        right_slope: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        endpoint_overrides: Option<Overrides>,
    },
    Grid {
        dim: usize,
        points: Vec<Vec<Num>>,
        values: Vec<Num>,
    },
    Indicator {
        dim: usize,
        points: Vec<Vec<Num>>,
    },
    MaxAffine {
        dim: usize,
        pieces: Vec<WirePiece>,
        #[serde(default)]
        walls: Vec<WireWall>,
    },
    Graph {
        dim: usize,
        provenance: String,
        pairs: Vec<(Vec<Num>, Vec<Num>)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<Num>>,
    },
}

fn point(coords: &[Num]) -> Result<Point<f64>> {
    Ok(Point::new(coords.iter().map(Num::finite).collect::<Result<_>>()?))
}

fn wire_point(p: &Point<f64>) -> Vec<Num> {
    p.coords().iter().map(|v| Num::from_f64(*v)).collect()
}

fn recession(text: &str, wall: &str) -> Result<Recession<Q>> {
    match ExtReal::<Q>::parse(text)? {
        Finite(s) => Ok(Recession::Slope(s)),
        e if e.exact_string() == wall => Ok(Recession::Wall),
        _ => Err(Error::parse(format!("recession `{text}`: expected a slope or `{wall}`"))),
    }
}

fn wire_recession(r: &Recession<Q>, wall: &str) -> String {
    match r {
        Recession::Slope(s) => s.exact_string(),
        Recession::Wall => wall.into(),
    }
}

impl Wire {
    fn into_instance(self) -> Result<Instance> {
        Ok(match self {
            Wire::Pl { breakpoints, values, left_slope, right_slope, endpoint_overrides } => {
                let xs = breakpoints.iter().map(|s| Q::parse_scalar(s)).collect::<Result<_>>()?;
                let vs = values.iter().map(|s| Q::parse_scalar(s)).collect::<Result<_>>()?;
                let f = PLConvex1D::new(xs, vs, recession(&left_slope, "-inf")?, recession(&right_slope, "inf")?)?;
                match endpoint_overrides {
                    Some(o) => {
                        let parse = |s: &Option<String>| s.as_deref().map(ExtReal::parse).transpose();
                        Instance::Pl(f.with_overrides(parse(&o.left)?, parse(&o.right)?)?)
                    }
                    None => Instance::Pl(f),
                }
            }
            Wire::Grid { dim, points, values } => {
                let pts = points.iter().map(|p| point(p)).collect::<Result<_>>()?;
                let vs = values.iter().map(Num::ext).collect::<Result<_>>()?;
                Instance::Grid(GridFunction::new(dim, pts, vs)?)
            }
            Wire::Indicator { dim, points } => {
                Instance::Indicator(SampledSet::new(dim, points.iter().map(|p| point(p)).collect::<Result<_>>()?)?)
            }
            Wire::MaxAffine { dim, pieces, walls } => {
                let mut m = MaxAffine::new(dim);
                for p in &pieces {
                    m.push_piece(AffinePiece { anchor: point(&p.anchor)?, slope: point(&p.slope)?, level: p.level.finite()? })?;
                }
                for w in &walls {
                    m.push_wall(HalfSpace { anchor: point(&w.anchor)?, normal: point(&w.normal)? })?;
                }
                Instance::MaxAffine(m)
            }
            Wire::Graph { dim, provenance, pairs, values } => {
                let provenance = match provenance.as_str() {
                    "exact" => Provenance::Exact,
                    "sampled" => Provenance::Sampled,
                    other => return Err(Error::parse(format!("unknown provenance `{other}`"))),
                };
                let pairs = pairs.iter().map(|(a, b)| Ok((point(a)?, point(b)?))).collect::<Result<Vec<_>>>()?;
                let g = match values {
                    Some(vs) => OperatorGraph::with_values(dim, pairs, vs.iter().map(Num::finite).collect::<Result<_>>()?, provenance)?,
                    None => OperatorGraph::new(dim, pairs, provenance)?,
                };
                Instance::Graph(g)
            }
        })
    }

    fn from_instance(inst: &Instance) -> Self {
        match inst {
            Instance::Pl(f) => {
                let o = |w: Option<&ExtReal<Q>>| w.map(ExtReal::exact_string);
                let overrides = Overrides { left: o(f.left_override()), right: o(f.right_override()) };
                Wire::Pl {
                    breakpoints: f.breakpoints().iter().map(Scalar::exact_string).collect(),
                    values: f.values().iter().map(Scalar::exact_string).collect(),
                    left_slope: wire_recession(f.left(), "-inf"),
                    right_slope: wire_recession(f.right(), "inf"),
                    endpoint_overrides: (overrides.left.is_some() || overrides.right.is_some()).then_some(overrides),
                }
            }
            Instance::Grid(f) => Wire::Grid {
                dim: crate::funcrep::Evaluate::dim(f),
                points: f.points().iter().map(wire_point).collect(),
                values: f.values().iter().map(Num::from_ext).collect(),
            },
            Instance::Indicator(c) => Wire::Indicator { dim: c.dim(), points: c.points().iter().map(wire_point).collect() },
            Instance::MaxAffine(m) => Wire::MaxAffine {
                dim: crate::funcrep::Evaluate::dim(m),
                pieces: m
                    .pieces()
                    .iter()
                    .map(|p| WirePiece { anchor: wire_point(&p.anchor), slope: wire_point(&p.slope), level: Num::from_f64(p.level) })
                    .collect(),
                walls: m.walls().iter().map(|w| WireWall { anchor: wire_point(&w.anchor), normal: wire_point(&w.normal) }).collect(),
            },
            Instance::Graph(g) => Wire::Graph {
                dim: g.dim(),
                provenance: g.provenance().to_string(),
                pairs: g.pairs().iter().map(|(a, b)| (wire_point(a), wire_point(b))).collect(),
                values: g.values().map(|vs| vs.iter().map(|v| Num::from_f64(*v)).collect()),
            },
        }
    }
}
