use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extreal::{ExtReal, Finite, PosInf, Scalar, Q};
use crate::funcrep::{GridFunction, PLConvex1D, Recession, SampledSet};
use crate::io::Instance;
use crate::operators::{OperatorGraph, Provenance};
use crate::point::{linspace, points_1d, product_grid, Point};
use crate::theoremlab::LabInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    PlConvex,
    PlConvexWithOverride,
    GridNonconvex,
    IndicatorSet,
    OperatorGraph,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::PlConvex,
        Family::PlConvexWithOverride,
        Family::GridNonconvex,
        Family::IndicatorSet,
        Family::OperatorGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::PlConvex => "pl-convex",
            Family::PlConvexWithOverride => "pl-convex-with-override",
            Family::GridNonconvex => "grid-nonconvex",
            Family::IndicatorSet => "indicator-set",
            Family::OperatorGraph => "operator-graph",
        }
    }

    fn tag(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::parse(format!("unknown family {s:?}")))
    }
}

/// Seeded source of test instances: instance `k` of a family depends only on
/// the seed, the family and `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub family: Family,
    /// Most breakpoints of a pl-convex instance.
    pub max_breakpoints: usize,
}

fn half(k: i64) -> Q {
    Q::ratio(k, 2)
}

impl InstanceGenerator {
    pub fn new(seed: u64, family: Family) -> Self {
        InstanceGenerator { seed, family, max_breakpoints: 8 }
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mix = self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (self.family.tag() << 56) ^ index as u64;
        ChaCha8Rng::seed_from_u64(mix)
    }

    pub fn instance(&self, index: usize) -> Result<LabInstance> {
        let mut rng = self.rng(index);
        let instance = match self.family {
            Family::PlConvex => Instance::Pl(self.pl_convex(&mut rng, 1, false)?),
            Family::PlConvexWithOverride => Instance::Pl(self.with_override(&mut rng)?),
            Family::GridNonconvex => Instance::Grid(grid_nonconvex(&mut rng)?),
            Family::IndicatorSet => Instance::Indicator(indicator_set(&mut rng)?),
            Family::OperatorGraph => Instance::Graph(operator_graph(&mut rng, index % 2 == 1)?),
        };
        Ok(LabInstance::new(format!("{}#{index:04}", self.family), instance))
    }

    /// Instances `0..n`.
    pub fn take(&self, n: usize) -> Result<Vec<LabInstance>> {
        (0..n).map(|k| self.instance(k)).collect()
    }

    /// Breakpoints at halves of `[-4, 4]`, sorted half-integer slopes in
    /// `[-3, 3]`, and each end walled or continued by a steeper slope.
    fn pl_convex(&self, rng: &mut ChaCha8Rng, min_points: usize, force_wall: bool) -> Result<PLConvex1D<Q>> {
        let n = rng.gen_range(min_points..=self.max_breakpoints.max(min_points));
        let mut grid: Vec<i64> = (-8..=8).collect();
        grid.shuffle(rng);
        let mut xs: Vec<i64> = grid[..n].to_vec();
        xs.sort_unstable();
        let mut slopes: Vec<i64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(-6..=6)).collect();
        slopes.sort_unstable();
        let mut vs = vec![half(rng.gen_range(-4..=4))];
        for i in 1..n {
            let dx = half(xs[i] - xs[i - 1]);
            vs.push(vs[i - 1].clone() + half(slopes[i - 1]) * dx);
        }
        let base_left = slopes.first().copied().unwrap_or_else(|| rng.gen_range(-6..=6));
        let base_right = slopes.last().copied().unwrap_or(base_left);
        let mut left = if rng.gen_bool(0.5) { Recession::Wall } else { Recession::Slope(half(base_left - rng.gen_range(0..=2))) };
        let mut right =
            if rng.gen_bool(0.5) { Recession::Wall } else { Recession::Slope(half(base_right + rng.gen_range(0..=2))) };
        if force_wall && left != Recession::Wall && right != Recession::Wall {
            if rng.gen_bool(0.5) {
                left = Recession::Wall;
            } else {
                right = Recession::Wall;
            }
        }
        PLConvex1D::new(xs.into_iter().map(half).collect(), vs, left, right)
    }

    /// A walled pl-convex function whose wall value is kept, raised, or opened.
    fn with_override(&self, rng: &mut ChaCha8Rng) -> Result<PLConvex1D<Q>> {
        let f = self.pl_convex(rng, 2, true)?;
        let mut pick = |on: bool, v: &Q| -> Option<ExtReal<Q>> {
            if !on {
                return None;
            }
            Some(match rng.gen_range(0..3) {
                0 => PosInf,
                1 => Finite(v.clone() + half(rng.gen_range(1..=4))),
                _ => Finite(v.clone()),
            })
        };
        let m = f.values().len() - 1;
        let left = pick(*f.left() == Recession::Wall, &f.values()[0]);
        let right = pick(*f.right() == Recession::Wall, &f.values()[m]);
        f.clone().with_overrides(left, right)
    }
}

fn quarters(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0..=4) as f64 / 4.0
}

/// `|x|²/2` plus random quarter bumps, occasionally `+inf` (never everywhere).
fn grid_nonconvex(rng: &mut ChaCha8Rng) -> Result<GridFunction<f64>> {
    let (dim, pts) = if rng.gen_bool(0.5) {
        (1, points_1d(&linspace(&-2.0, &2.0, 21)))
    } else {
        let axis = linspace(&-1.5, &1.5, 7);
        (2, product_grid(&[axis.clone(), axis]))
    };
    let anchor = rng.gen_range(0..pts.len());
    let values = pts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if i != anchor && rng.gen_bool(0.1) {
                PosInf
            } else {
                Finite(p.norm2() / 2.0 + quarters(rng))
            }
        })
        .collect();
    GridFunction::new(dim, pts, values)
}

/// A 1D interval or scattered subset, or a 2D box or disk.
fn indicator_set(rng: &mut ChaCha8Rng) -> Result<SampledSet<f64>> {
    if rng.gen_bool(0.5) {
        let axis = linspace(&-2.0, &2.0, 17);
        let keep: Vec<f64> = if rng.gen_bool(0.5) {
            let (a, b) = (rng.gen_range(0..17), rng.gen_range(0..17));
            axis[a.min(b)..=a.max(b)].to_vec()
        } else {
            let mut s: Vec<f64> = axis.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if s.is_empty() {
                s.push(axis[8]);
            }
            s
        };
        return Ok(SampledSet::from_1d(&keep));
    }
    let axis = linspace(&-2.0, &2.0, 9);
    let grid = product_grid(&[axis.clone(), axis]);
    let keep: Vec<Point<f64>> = if rng.gen_bool(0.5) {
        let (lx, hx) = (rng.gen_range(-4..=0) as f64 / 2.0, rng.gen_range(0..=4) as f64 / 2.0);
        let (ly, hy) = (rng.gen_range(-4..=0) as f64 / 2.0, rng.gen_range(0..=4) as f64 / 2.0);
        grid.into_iter().filter(|p| (lx..=hx).contains(&p.0[0]) && (ly..=hy).contains(&p.0[1])).collect()
    } else {
        let r2 = (rng.gen_range(1..=4) as f64 / 2.0).powi(2);
        grid.into_iter().filter(|p| p.norm2() <= r2).collect()
    };
    SampledSet::new(2, keep)
}

/// Twelve 1D pairs with nondecreasing second coordinates; `planted` swaps two
/// distinct ones so the graph is not monotone.
fn operator_graph(rng: &mut ChaCha8Rng, planted: bool) -> Result<OperatorGraph<f64>> {
    let mut xs: Vec<f64> = (0..12).map(|k| k as f64 / 2.0 - 3.0).collect();
    xs.shuffle(rng);
    xs.sort_by(|a, b| a.total_cmp(b));
    let mut ys: Vec<f64> = (0..12).map(|_| rng.gen_range(-6..=6) as f64 / 2.0).collect();
    ys.sort_by(|a, b| a.total_cmp(b));
    if planted {
        ys[0] -= 1.0;
        ys.swap(0, 11);
    }
    let pairs = xs.into_iter().zip(ys).map(|(x, y)| (Point::scalar(x), Point::scalar(y))).collect();
    OperatorGraph::new(1, pairs, Provenance::Sampled)
}
