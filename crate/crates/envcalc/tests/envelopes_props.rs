mod common;

use common::*;
use envcalc::envelopes::{
    cup_dual_form, cup_value, dom_sharp_pl, n_cup, sharp_value, smile, star_cup, star_cup_primal_form, upper_envelope,
};
use envcalc::operators::{subdiff_graph, subdiff_graph_exact, DEFAULT_REPRESENTATIVES};
use envcalc::point::{linspace, points_1d};
use envcalc::transforms::conjugate_brute;
use envcalc::{Evaluate, GridFunction, Point, Subdifferentiable};
use proptest::prelude::*;

fn sampled(f: &GridFunction<f64>) -> envcalc::operators::OperatorGraph<f64> {
    subdiff_graph(f, f.points(), &points_1d(&linspace(&-20.0, &20.0, 81))).unwrap()
}

proptest! {
    #[test]
    fn cup_is_below_f_and_touches_on_the_graph(f in pl_with_overrides()) {
        let g = subdiff_graph_exact(&f, &probes_for(&f), DEFAULT_REPRESENTATIVES).unwrap();
        let cup = upper_envelope(&f, &g).unwrap().to_pl_1d().unwrap();
        for x in probes_for(&f) {
            prop_assert!(cup.eval(&x) <= f.eval(&x), "x={x}");
        }
        for a in g.domain_points() {
            prop_assert_eq!(cup.value(&a), f.value(&a), "a={}", a);
        }
    }

    #[test]
    fn cup_is_idempotent(f in pl_with_overrides()) {
        let g = subdiff_graph_exact(&f, &probes_for(&f), DEFAULT_REPRESENTATIVES).unwrap();
        let h = upper_envelope(&f, &g).unwrap().to_pl_1d().unwrap();
        let g2 = subdiff_graph_exact(&h, &probes_for(&h), DEFAULT_REPRESENTATIVES).unwrap();
        let h2 = upper_envelope(&h, &g2).unwrap().to_pl_1d().unwrap();
        prop_assert!(h2.same_function(&h), "{:?} vs {:?}", h, h2);
    }

    #[test]
    fn graph_pairs_are_subgradients_of_cup_and_sharp(f in pl_with_overrides()) {
        let g = subdiff_graph_exact(&f, &probes_for(&f), DEFAULT_REPRESENTATIVES).unwrap();
        let m = upper_envelope(&f, &g).unwrap();
        let cup = m.to_pl_1d().unwrap();
        let hull = dom_sharp_pl(&f);
        for (a, s) in g.pairs() {
            prop_assert!(cup.is_subgradient(a, s), "({}, {})", a, s);
            prop_assert_eq!(sharp_value(&m, &hull, a), f.value(a));
        }
    }

    #[test]
    fn sampled_cup_forms_agree(f in grid_1d()) {
        let g = sampled(&f);
        prop_assume!(!g.is_empty());
        let m = upper_envelope(&f, &g).unwrap();
        let conj = |y: &Point<f64>| conjugate_brute(&f, std::slice::from_ref(y)).unwrap().values()[0].clone();
        for x in linspace(&-3.0, &3.0, 25) {
            let x = Point::scalar(x);
            let v = cup_value(&g, &x).unwrap();
            prop_assert!(v.eq_tol(&m.eval(&x)), "x={x}");
            prop_assert!(v.eq_tol(&cup_dual_form(&g, &x, conj)), "x={x}");
            prop_assert!(v.le_tol(&f.value(&x)) || !f.points().contains(&x));
        }
        for y in linspace(&-6.0, &6.0, 25) {
            let y = Point::scalar(y);
            prop_assert!(star_cup(&g, &y).unwrap().eq_tol(&star_cup_primal_form(&g, &y, conj)), "y={y}");
        }
    }

    #[test]
    fn smile_is_below_cup(f in pl_with_overrides()) {
        let g = subdiff_graph_exact(&f, &probes_for(&f), DEFAULT_REPRESENTATIVES).unwrap().sampled_view();
        for x in probes_for(&f) {
            let x = pt(&x);
            let (s, c) = (smile(&f, &g, &x).unwrap(), cup_value(&g, &x).unwrap());
            prop_assert!(s <= c, "x={x}: {s} > {c}");
        }
        for a in g.domain_points() {
            prop_assert_eq!(smile(&f, &g, &a).unwrap(), f.value(&a));
        }
    }

    #[test]
    fn longer_chains_collapse_to_cup(f in grid_1d()) {
        // On a subdifferential graph each extra link can only lose ground.
        let g = sampled(&f);
        prop_assume!(!g.is_empty());
        for x in linspace(&-3.0, &3.0, 13) {
            let x = Point::scalar(x);
            let c = cup_value(&g, &x).unwrap();
            for n in 2..=4 {
                prop_assert!(n_cup(&g, n, &x).unwrap().eq_tol(&c), "n={n} x={x}");
            }
        }
    }
}
