mod common;

use common::*;
use envcalc::point::{linspace, points_1d};
use envcalc::transforms::{
    biconjugate_exact, biconjugate_grid, cl_conv_grid_1d, cl_conv_pl, conjugate_brute, conjugate_exact, conjugate_llt,
};
use envcalc::{ext_add, Evaluate, ExtReal, Finite, GridFunction, Recession};
use proptest::prelude::*;

proptest! {
    #[test]
    fn fenchel_young_is_exact(f in pl_with_overrides()) {
        let fs = conjugate_exact(&f).unwrap();
        for x in probes_for(&f) {
            for y in dual_probes() {
                let lhs = ext_add(&f.eval(&x), &fs.eval(&y));
                prop_assert!(lhs >= Finite(x.clone() * &y), "x={x} y={y}");
            }
        }
    }

    #[test]
    fn conjugation_reverses_order(f in pl_convex(), lift in 0i64..=3, cut in 0i64..=2) {
        // g = f + lift on a shrunken domain, so g ≥ f everywhere.
        let xs = f.breakpoints();
        let (lo, hi) = (xs[0].clone() - half(cut), xs[xs.len() - 1].clone() + half(cut));
        let g = f.restrict(Some(&lo), Some(&hi)).unwrap();
        let g = envcalc::PLConvex1D::new(
            g.breakpoints().to_vec(),
            g.values().iter().map(|v| v.clone() + q(lift)).collect(),
            g.left().clone(),
            g.right().clone(),
        ).unwrap();
        for x in probes_for(&f) {
            prop_assert!(f.eval(&x) <= g.eval(&x));
        }
        let (fs, gs) = (conjugate_exact(&f).unwrap(), conjugate_exact(&g).unwrap());
        for y in dual_probes() {
            prop_assert!(fs.eval(&y) >= gs.eval(&y), "y={y}");
        }
    }

    #[test]
    fn closed_hull_is_idempotent(f in pl_with_overrides()) {
        let h = cl_conv_pl(&f);
        prop_assert!(cl_conv_pl(&h).same_function(&h));
        prop_assert!(h.is_lsc());
    }

    #[test]
    fn grid_hull_is_idempotent(f in grid_1d()) {
        let h = cl_conv_grid_1d(&f).unwrap();
        let again = cl_conv_grid_1d(&GridFunction::sample(1, f.points().to_vec(), |p| h.value(p)).unwrap()).unwrap();
        for p in f.points() {
            prop_assert!(h.value(p).eq_tol(&again.value(p)), "x={p}");
        }
    }

    #[test]
    fn biconjugate_is_the_closure(f in pl_with_overrides()) {
        let fss = biconjugate_exact(&f).unwrap();
        let closure = f.closure();
        for x in probes_for(&f) {
            let (v, w) = (fss.eval(&x), f.eval(&x));
            prop_assert!(v <= w, "f**({x}) = {v} > f = {w}");
            if w == closure.eval(&x) {
                prop_assert_eq!(v, w);
            }
        }
    }

    #[test]
    fn grid_biconjugate_is_below(f in grid_1d()) {
        // The hull's own slopes make every supporting line available.
        let hull = cl_conv_grid_1d(&f).unwrap();
        let mut ys = linspace(&-40.0, &40.0, 801);
        ys.extend(hull.slopes());
        ys.sort_by(f64::total_cmp);
        ys.dedup();
        let fss = biconjugate_grid(&f, &points_1d(&ys)).unwrap();
        for (p, v) in f.points().iter().zip(f.values()) {
            if let Finite(_) = v {
                let b = fss.value(p);
                prop_assert!(b.le_tol(v), "f**({p}) = {b} > {v}");
                if hull.value(p).eq_tol(v) {
                    prop_assert!(b.eq_tol(v), "f**({p}) = {b}, f = {v}");
                }
            }
        }
    }
}

fn convex_samples(xs: &[f64], curv: f64, kink: f64) -> Vec<f64> {
    xs.iter().map(|x| curv * x * x / 2.0 + (x - kink).abs() + x.abs().powi(3) / 6.0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn linear_time_matches_brute_force(exp in 1u32..=14, curv in 0.0f64..3.0, kink in -1.0f64..1.0, span in 1.0f64..8.0) {
        let n = (1usize << exp) + 1;
        let xs = linspace(&-1.5, &1.5, n);
        let vs = convex_samples(&xs, curv, kink);
        let dual = linspace(&-span, &span, n.min(4097));
        let fast = conjugate_llt(&xs, &vs, &dual).unwrap();
        let f = GridFunction::new(1, points_1d(&xs), vs.iter().map(|v| Finite(*v)).collect()).unwrap();
        let slow = conjugate_brute(&f, &points_1d(&dual)).unwrap();
        for ((y, a), b) in dual.iter().zip(&fast).zip(slow.values()) {
            prop_assert!((ExtReal::Finite(*a).to_f64() - b.to_f64()).abs() <= 1e-12, "y={y}: {a} vs {b}");
        }
    }
}

#[test]
fn override_does_not_change_the_conjugate() {
    let f = envcalc::PLConvex1D::indicator(q(0), q(1)).unwrap();
    let g = f.clone().with_overrides(Some(Finite(q(5))), None).unwrap();
    assert!(conjugate_exact(&f).unwrap().same_function(&conjugate_exact(&g).unwrap()));
    assert_eq!(*f.left(), Recession::Wall);
}
