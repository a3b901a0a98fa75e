//! Executable checks over generated instances, a seeded suite runner and the
//! counterexample gallery.
//!
//! Every check evaluates both sides of an identity or inequality at probe
//! points and records the smallest slack. A check whose hypotheses fail on
//! the instance reports [`Verdict::NotApplicable`] and never pass or fail.

mod exact;
mod gallery;
mod generate;
mod grid;
mod suite;

use std::fmt;

pub use gallery::{evaluate, gallery, gallery_instances, Finding, GalleryEntry, GALLERY};
pub use generate::{Family, InstanceGenerator};
pub use suite::{run_suite, run_suite_with, suite_instances, SuiteConfig, SuiteReport};

use crate::error::{Error, Result};
use crate::extreal::{Backend, ExtReal, Finite, NegInf, Scalar, Q};
use crate::io::Instance;
use crate::point::{linspace, product_grid, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Outcome of one check on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct TheoremCheck {
    pub theorem_id: String,
    pub instance_id: String,
    pub verdict: Verdict,
    /// Probe point(s) of the smallest slack on pass or fail; the unmet
    /// hypothesis when not applicable.
    pub witness: Option<String>,
    /// Smallest slack seen; negative beyond the tolerance means fail.
    pub margin: f64,
    pub backend: Backend,
    pub tolerance: f64,
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<14} {:<16} {:<28} margin={} tol={} backend={}",
            self.verdict.to_string().to_uppercase(),
            self.theorem_id,
            self.instance_id,
            self.margin,
            self.tolerance,
            self.backend
        )?;
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

/// An instance with a stable name.
#[derive(Clone, Debug, PartialEq)]
pub struct LabInstance {
    pub id: String,
    pub instance: Instance,
}

impl LabInstance {
    pub fn new(id: impl Into<String>, instance: Instance) -> Self {
        LabInstance { id: id.into(), instance }
    }
}

/// Primal and dual probe points, kept exact and converted for grid backends.
#[derive(Clone, Debug, PartialEq)]
pub struct Probes {
    pub primal: Vec<Point<Q>>,
    pub dual: Vec<Point<Q>>,
}

impl Probes {
    /// `[-5, 5]` in steps of ½ (1D) or 1 (2D) on both sides.
    pub fn default_for(dim: usize) -> Self {
        let count = if dim == 1 { 21 } else { 11 };
        let axis = linspace(&Q::from_int(-5), &Q::from_int(5), count);
        let grid = product_grid(&vec![axis; dim]);
        Probes { primal: grid.clone(), dual: grid }
    }

    pub(crate) fn primal_1d(&self) -> Vec<Q> {
        self.primal.iter().filter(|p| p.dim() == 1).map(|p| p.x().clone()).collect()
    }

    pub(crate) fn dual_1d(&self) -> Vec<Q> {
        self.dual.iter().filter(|p| p.dim() == 1).map(|p| p.x().clone()).collect()
    }
}

/// A registered claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremEntry {
    pub id: &'static str,
    pub statement: &'static str,
}

pub const REGISTRY: &[TheoremEntry] = &[
    TheoremEntry { id: "dfdom.ineq", statement: "φ_∂f(x,x*) ≤ f**(x) + f*(x*)" },
    TheoremEntry { id: "dfdom.i", statement: "Graph ∂f ⊂ Graph ∂(cl conv f), with ∂f = ∂(cl conv f) on D(∂f)" },
    TheoremEntry { id: "dfdom.e3", statement: "∂f maximal, g ≥ f, g = f on D(∂f) ⇒ ∂g = ∂f" },
    TheoremEntry { id: "dfdom.iv-shadow", statement: "lsc with maximal ∂f ⇒ convex on the grid (1D)" },
    TheoremEntry { id: "ba.density", statement: "D(∂f) dense in dom f, f(x_n) → f(x) = cl conv f(x) where f is lsc" },
    TheoremEntry { id: "fcupdiez.i", statement: "f^∪ ≤ f^# ≤ f, with equality on D(∂f)" },
    TheoremEntry { id: "fcupdiez.ii", statement: "f^∪ and f^# are proper iff Graph ∂f ≠ ∅" },
    TheoremEntry { id: "fcupdiez.iii", statement: "(Epi f)^# ∩ ((dom f)^# × ℝ) = Epi f^#" },
    TheoremEntry { id: "fcupdiez.iv", statement: "∂f^∪ = ∂f^# = ∂f on D(∂f)" },
    TheoremEntry { id: "fcupdiez.v", statement: "f^∪∪ = f^∪ and f^## = f^#" },
    TheoremEntry { id: "fcupdiez.viii", statement: "∂f = ∂f^∪ iff D(∂f) = D(∂f^∪), and likewise for f^#" },
    TheoremEntry { id: "fcupdiez.ix", statement: "f^{n∪} = f^∪ for n = 2, 3" },
    TheoremEntry { id: "implineq", statement: "φ_∂f(x,x*) ≤ f^∪(x) + f^{*∪}(x*)" },
    TheoremEntry { id: "fcirc.i", statement: "f^∪ ≤ cl conv f ≤ f^∘, with f^∘ = f on D(∂f)" },
    TheoremEntry { id: "fcirc.ii", statement: "f^∘∘ = f^∘, f^{*∘*} = f^∪, f^{*∪} = f^{∘*}, f^{*∘} = f^{∪*}" },
    TheoremEntry { id: "fcirc.iii", statement: "∂f(x) = ∂f^∘(x) ∩ R(∂f)" },
    TheoremEntry { id: "fcirc.iv", statement: "x ∈ D(∂f) iff ∂f^∘(x) ∩ R(∂f) ≠ ∅" },
    TheoremEntry { id: "fcirc.v", statement: "∂f = ∂f^∘ iff R(∂f) = R(∂f^∘)" },
    TheoremEntry { id: "maxcup", statement: "Γ: f = f^∪, f* = f^{*∪} and f^∪ = f^∘" },
    TheoremEntry { id: "fsp.i", statement: "f^⌣ ≤ f^∪ ≤ f^# ≤ f; f^⌣ = f on D(∂f); f^⌣ = f^∪ off dom f" },
    TheoremEntry { id: "fsp.ii", statement: "f^⌣ proper iff Graph ∂f ≠ ∅ and f*(0) = f^{*∪}(0)" },
    TheoremEntry { id: "fsp.iii", statement: "f^⌣(x) ≤ φ_∂f(x,0) + f(x)" },
    TheoremEntry { id: "spxstar", statement: "(f − x*)^⌣ proper iff Graph ∂f ≠ ∅ and f*(x*) = f^{*∪}(x*)" },
    TheoremEntry { id: "maxsdsp.ii", statement: "Γ: φ_∂f(x,x*) ≥ ⟨x,x*⟩" },
    TheoremEntry { id: "maxsdsp.iii", statement: "Γ: f(x) = f^⌣(x) on dom f" },
    TheoremEntry { id: "maxsdsp.iv", statement: "Γ: f = f^⌣" },
    TheoremEntry { id: "maxsdsp.v", statement: "Γ: a_i → x, f(a_i) → f(x), ⟨x − a_i, a_i*⟩ + f(a_i) → f(x)" },
    TheoremEntry { id: "maxsdsp.vi", statement: "Γ: a_i → x, f(a_i) → f(x), ⟨x − a_i, a_i*⟩ → 0" },
    TheoremEntry { id: "maxsdsp.vii", statement: "Γ: some (a,a*) ∈ ∂f with ⟨x − a, a*⟩ ≥ −ε, and the Brøndsted–Rockafellar pair" },
    TheoremEntry { id: "maxsdsp.closure", statement: "Γ: closures of D(∂f) and R(∂f) are convex" },
    TheoremEntry { id: "fspeps.ii", statement: "Γ: f(x) = inf_{ε>0} f_ε^⌣(x)" },
    TheoremEntry { id: "fspeps.iii", statement: "Γ: f(x) = f_ε^⌣(x) on dom f" },
    TheoremEntry { id: "fspeps.iv", statement: "Γ: f = f_ε^⌣" },
    TheoremEntry { id: "ncfitz", statement: "φ_{N_C}(x,x*) = ι_{C^#}(x) + σ_C(x*)" },
    TheoremEntry { id: "fitz.coupling", statement: "G monotone ⇒ φ_G = ⟨·,·⟩ on G" },
];

pub fn registry_entry(id: &str) -> Result<&'static TheoremEntry> {
    REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Smallest slack over a batch of comparisons, with where it occurred.
#[derive(Clone, Debug)]
pub(crate) struct Tally<S> {
    margin: ExtReal<S>,
    witness: Option<String>,
}

impl<S: Scalar> Tally<S> {
    pub(crate) fn new() -> Self {
        Tally { margin: crate::extreal::PosInf, witness: None }
    }

    fn record(&mut self, slack: ExtReal<S>, at: impl FnOnce() -> String) {
        if self.witness.is_none() || slack < self.margin {
            self.margin = slack;
            self.witness = Some(at());
        }
    }

    /// `lhs ≤ rhs`, slack `rhs − lhs` (`+inf − +inf` counts as satisfied).
    pub(crate) fn le(&mut self, lhs: &ExtReal<S>, rhs: &ExtReal<S>, at: impl FnOnce() -> String) {
        let slack = if lhs == rhs { ExtReal::zero() } else { rhs.margin(lhs) };
        self.record(slack, at);
    }

    /// `lhs = rhs`, slack `−|lhs − rhs|`.
    pub(crate) fn eq(&mut self, lhs: &ExtReal<S>, rhs: &ExtReal<S>, at: impl FnOnce() -> String) {
        let slack = if lhs == rhs {
            ExtReal::zero()
        } else {
            let a = rhs.margin(lhs);
            let b = lhs.margin(rhs);
            a.min(b)
        };
        self.record(slack, at);
    }

    /// A yes/no condition: slack 0 when it holds, `-inf` when not.
    pub(crate) fn holds(&mut self, ok: bool, at: impl FnOnce() -> String) {
        self.record(if ok { ExtReal::zero() } else { NegInf }, at);
    }

    fn passes(&self) -> bool {
        match &self.margin {
            Finite(m) => !m.lt_tol(&S::zero()),
            NegInf => false,
            _ => true,
        }
    }
}

/// What a predicate produced before it is labelled.
pub(crate) enum Outcome<S> {
    Checked(Tally<S>),
    NotApplicable(String),
}

pub(crate) fn not_applicable<S>(reason: impl Into<String>) -> Result<Outcome<S>> {
    Ok(Outcome::NotApplicable(reason.into()))
}

fn label<S: Scalar>(id: &str, inst: &LabInstance, out: Result<Outcome<S>>) -> Result<TheoremCheck> {
    let base = TheoremCheck {
        theorem_id: id.to_string(),
        instance_id: inst.id.clone(),
        verdict: Verdict::NotApplicable,
        witness: None,
        margin: f64::INFINITY,
        backend: S::BACKEND,
        tolerance: S::tolerance().to_f64(),
    };
    match out {
        Ok(Outcome::Checked(t)) => Ok(TheoremCheck {
            verdict: if t.passes() { Verdict::Pass } else { Verdict::Fail },
            margin: t.margin.to_f64(),
            witness: t.witness.clone(),
            ..base
        }),
        Ok(Outcome::NotApplicable(reason)) => Ok(TheoremCheck { witness: Some(reason), ..base }),
        Err(e) if e.is_hypothesis() => Ok(TheoremCheck { witness: Some(e.to_string()), ..base }),
        Err(e) => Err(e),
    }
}

/// Runs the check `theorem_id` on `instance` at `probes`.
pub fn check(theorem_id: &str, instance: &LabInstance, probes: &Probes) -> Result<TheoremCheck> {
    let entry = registry_entry(theorem_id)?;
    Ok(run_checks(&[entry.id], instance, probes)?.remove(0))
}

/// Every registered check on `instance`, in registry order.
pub fn check_all(instance: &LabInstance, probes: &Probes) -> Result<Vec<TheoremCheck>> {
    let ids: Vec<&str> = REGISTRY.iter().map(|e| e.id).collect();
    run_checks(&ids, instance, probes)
}

pub(crate) fn run_checks(ids: &[&str], instance: &LabInstance, probes: &Probes) -> Result<Vec<TheoremCheck>> {
    let pl = match &instance.instance {
        Instance::Pl(f) => Some(f.clone()),
        Instance::MaxAffine(m) if crate::funcrep::Evaluate::dim(m) == 1 => Some(m.to_pl_1d()?.convert::<Q>()),
        _ => None,
    };
    match pl {
        Some(f) => {
            let ctx = exact::ExactCtx::new(&f, probes);
            ids.iter()
                .map(|id| {
                    let out = match &ctx {
                        Ok(c) => c.run(id),
                        Err(e) => Err(e.clone()),
                    };
                    label::<Q>(id, instance, out)
                })
                .collect()
        }
        None => {
            let ctx = grid::GridCtx::new(&instance.instance, probes);
            ids.iter()
                .map(|id| {
                    let out = match &ctx {
                        Ok(c) => c.run(id),
                        Err(e) => Err(e.clone()),
                    };
                    label::<f64>(id, instance, out)
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcrep::{PLConvex1D, Recession};

    fn pl(id: &str, f: PLConvex1D<Q>) -> LabInstance {
        LabInstance::new(id, Instance::Pl(f))
    }

    /// `0` on `[0, 1]`, with the value at `0` raised to `w` when given.
    fn flat_unit(w: Option<i64>) -> LabInstance {
        let f = PLConvex1D::new(vec![Q::from_int(0), Q::from_int(1)], vec![Q::from_int(0); 2], Recession::Wall, Recession::Wall)
            .unwrap()
            .with_overrides(w.map(|w| Finite(Q::from_int(w))), None)
            .unwrap();
        pl(if w.is_some() { "raised" } else { "flat" }, f)
    }

    #[test]
    fn n_cup_collapses_on_quadratic_interpolant() {
        let xs: Vec<Q> = (-8..=8).map(|k| Q::ratio(k, 4)).collect();
        let vs: Vec<Q> = xs.iter().map(|x| x.clone() * x / Q::from_int(2)).collect();
        let f = PLConvex1D::new(xs, vs, Recession::Slope(Q::from_int(-2)), Recession::Slope(Q::from_int(2))).unwrap();
        let c = check("fcupdiez.ix", &pl("half-square", f), &Probes::default_for(1)).unwrap();
        assert_eq!(c.verdict, Verdict::Pass, "{c}");
        assert_eq!(c.margin, 0.0);
    }

    #[test]
    fn subdifferential_envelope_reproduces_pl_convex() {
        let probes = Probes::default_for(1);
        for inst in InstanceGenerator::new(42, Family::PlConvex).take(30).unwrap() {
            let c = check("maxsdsp.iv", &inst, &probes).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "{c}");
        }
    }

    #[test]
    fn fitzpatrick_bound_holds_on_nonconvex_grids() {
        let probes1 = Probes::default_for(1);
        let probes2 = Probes::default_for(2);
        for inst in InstanceGenerator::new(42, Family::GridNonconvex).take(20).unwrap() {
            let probes = if inst.instance.dim() == 1 { &probes1 } else { &probes2 };
            let c = check("dfdom.ineq", &inst, probes).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "{c}");
        }
    }

    #[test]
    fn single_point_domain_keeps_its_value() {
        let f = PLConvex1D::new(vec![Q::ratio(7, 2)], vec![Q::ratio(-1, 2)], Recession::Wall, Recession::Wall).unwrap();
        for id in ["fcupdiez.i", "maxcup", "fsp.i", "implineq"] {
            let c = check(id, &pl("point", f.clone()), &Probes::default_for(1)).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "{c}");
        }
    }

    #[test]
    fn circ_statements_need_a_closed_subdifferential_domain() {
        let probes = Probes::default_for(1);
        for id in ["fcirc.i", "fcirc.ii", "fcirc.iii", "fcirc.iv", "fcirc.v"] {
            let c = check(id, &flat_unit(None), &probes).unwrap();
            assert_eq!(c.verdict, Verdict::Pass, "{c}");
        }
        // D(∂f) = (0, 1] while f^∘ = ι_[0,1] has 0 ∈ ∂f^∘(0) ∩ R(∂f).
        let raised = flat_unit(Some(1));
        assert_eq!(check("fcirc.i", &raised, &probes).unwrap().verdict, Verdict::Pass);
        let iii = check("fcirc.iii", &raised, &probes).unwrap();
        assert_eq!(iii.verdict, Verdict::Fail);
        assert_eq!(iii.witness.as_deref(), Some("(x,x*)=(0,0)"));
        let iv = check("fcirc.iv", &raised, &probes).unwrap();
        assert_eq!((iv.verdict, iv.witness.as_deref()), (Verdict::Fail, Some("x=0")));
        // f^∪ = 0 everywhere, so f^{∪*} = ι_{0}, while f^{*∘} = σ_[0,1].
        assert_eq!(check("fcirc.ii", &raised, &probes).unwrap().verdict, Verdict::Fail);
    }
}
