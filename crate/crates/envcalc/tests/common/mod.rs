#![allow(dead_code)]

use envcalc::point::linspace;
use envcalc::{ExtReal, Finite, GridFunction, PLConvex1D, Point, PosInf, Recession, Scalar, Q};
use proptest::prelude::*;

pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

pub fn half(n: i64) -> Q {
    Q::ratio(n, 2)
}

/// Piecewise-linear convex functions with up to four breakpoints on a
/// half-integer lattice, each end either a wall or a recession slope.
pub fn pl_convex() -> impl Strategy<Value = PLConvex1D<Q>> {
    (1usize..=4, -8i64..=4, -4i64..=4)
        .prop_flat_map(|(k, x0, v0)| {
            (
                Just((x0, v0)),
                prop::collection::vec(1i64..=6, k - 1),
                prop::collection::vec(-8i64..=8, k - 1),
                prop::option::of(0i64..=4),
                prop::option::of(0i64..=4),
            )
        })
        .prop_map(|((x0, v0), gaps, mut slopes, left, right)| {
            slopes.sort();
            let mut xs = vec![half(x0)];
            let mut vs = vec![q(v0)];
            for (g, s) in gaps.iter().zip(&slopes) {
                let x = xs.last().unwrap().clone() + half(*g);
                let v = vs.last().unwrap().clone() + half(*g) * half(*s);
                xs.push(x);
                vs.push(v);
            }
            let first = slopes.first().copied().unwrap_or(0);
            let last = slopes.last().copied().unwrap_or(0);
            let left = left.map_or(Recession::Wall, |d| Recession::Slope(half(first - d)));
            let right = right.map_or(Recession::Wall, |d| Recession::Slope(half(last + d)));
            PLConvex1D::new(xs, vs, left, right).expect("slopes are sorted")
        })
}

/// As [`pl_convex`], with wall values possibly raised or removed.
pub fn pl_with_overrides() -> impl Strategy<Value = PLConvex1D<Q>> {
    let bump = prop::option::of(prop_oneof![Just(None), (1i64..=3).prop_map(Some)]);
    (pl_convex(), bump.clone(), bump).prop_map(|(f, l, r)| {
        let m = f.values().len() - 1;
        let over = |wall: bool, v: &Q, b: Option<Option<i64>>| -> Option<ExtReal<Q>> {
            match (wall, b) {
                (true, Some(None)) if m > 0 => Some(PosInf),
                (true, Some(Some(d))) if m > 0 => Some(Finite(v.clone() + q(d))),
                _ => None,
            }
        };
        let left = over(*f.left() == Recession::Wall, &f.values()[0], l);
        let right = over(*f.right() == Recession::Wall, &f.values()[m], r);
        f.with_overrides(left, right).expect("overrides sit on walls")
    })
}

/// Probes on `[-6, 6]` in quarter steps plus the breakpoints of `f`.
pub fn probes_for(f: &PLConvex1D<Q>) -> Vec<Q> {
    let mut xs = linspace(&q(-6), &q(6), 49);
    xs.extend(f.breakpoints().iter().cloned());
    xs.sort();
    xs.dedup();
    xs
}

pub fn dual_probes() -> Vec<Q> {
    linspace(&q(-5), &q(5), 41)
}

pub fn pt(x: &Q) -> Point<Q> {
    Point::scalar(x.clone())
}

/// Random 1D grid samples on `[-2, 2]`, some of them `+inf`.
pub fn grid_1d() -> impl Strategy<Value = GridFunction<f64>> {
    (3usize..=15)
        .prop_flat_map(|n| prop::collection::vec(prop_oneof![4 => (-300i64..=300).prop_map(Some), 1 => Just(None)], n))
        .prop_filter("some finite value", |vs| vs.iter().any(Option::is_some))
        .prop_map(|vs| {
            let xs = linspace(&-2.0, &2.0, vs.len());
            let values = vs.iter().map(|v| v.map_or(PosInf, |v| Finite(v as f64 / 100.0))).collect();
            GridFunction::new(1, xs.into_iter().map(Point::scalar).collect(), values).unwrap()
        })
}

/// Random finite grid samples on `[-1, 1]²`.
pub fn grid_2d() -> impl Strategy<Value = GridFunction<f64>> {
    prop::collection::vec(-100i64..=100, 25).prop_map(|vs| {
        let axis = linspace(&-1.0, &1.0, 5);
        let pts = envcalc::point::product_grid(&[axis.clone(), axis]);
        GridFunction::new(2, pts, vs.iter().map(|v| Finite(*v as f64 / 50.0)).collect()).unwrap()
    })
}
