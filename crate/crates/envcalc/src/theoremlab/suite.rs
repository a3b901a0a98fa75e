use std::fmt::Write;

use crate::error::Result;
use crate::io::Table;
use crate::theoremlab::{run_checks, Family, InstanceGenerator, LabInstance, Probes, TheoremCheck, Verdict, REGISTRY};

/// Family of suite instance `k`: each block of ten holds four pl-convex, two
/// overridden, two grid, one indicator and one graph instance.
fn family_of(k: usize) -> Family {
    match k % 10 {
        0..=3 => Family::PlConvex,
        4 | 5 => Family::PlConvexWithOverride,
        6 | 7 => Family::GridNonconvex,
        8 => Family::IndicatorSet,
        _ => Family::OperatorGraph,
    }
}

/// The instances of a seeded suite, in order.
pub fn suite_instances(seed: u64, n_instances: usize) -> Result<Vec<LabInstance>> {
    let mut seen = [0usize; Family::ALL.len()];
    (0..n_instances)
        .map(|k| {
            let family = family_of(k);
            let slot = &mut seen[family as usize];
            *slot += 1;
            InstanceGenerator::new(seed, family).instance(*slot - 1)
        })
        .collect()
}

/// What to run: `None` selects every registered check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteConfig {
    pub theorems: Option<Vec<String>>,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub n_instances: usize,
    /// Ordered by theorem id, then instance index.
    pub checks: Vec<TheoremCheck>,
}

impl SuiteReport {
    pub fn count(&self, v: Verdict) -> usize {
        self.checks.iter().filter(|c| c.verdict == v).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Verdict::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            writeln!(out, "{c}").expect("write to string");
        }
        writeln!(
            out,
            "seed={} instances={} checks={} pass={} fail={} not-applicable={}",
            self.seed,
            self.n_instances,
            self.checks.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::NotApplicable)
        )
        .expect("write to string");
        out
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["theorem_id", "instance_id", "verdict", "margin", "tolerance", "backend"]);
        for c in &self.checks {
            t.push([
                c.theorem_id.clone(),
                c.instance_id.clone(),
                c.verdict.to_string(),
                c.margin.to_string(),
                c.tolerance.to_string(),
                c.backend.to_string(),
            ]);
        }
        t
    }
}

/// Every registered check on `n_instances` seeded instances.
pub fn run_suite(seed: u64, n_instances: usize) -> Result<SuiteReport> {
    run_suite_with(seed, n_instances, &SuiteConfig::default())
}

pub fn run_suite_with(seed: u64, n_instances: usize, config: &SuiteConfig) -> Result<SuiteReport> {
    let selected: Vec<&str> = match &config.theorems {
        None => REGISTRY.iter().map(|e| e.id).collect(),
        Some(ids) => {
            for id in ids {
                crate::theoremlab::registry_entry(id)?;
            }
            REGISTRY.iter().map(|e| e.id).filter(|id| ids.iter().any(|s| s == id)).collect()
        }
    };
    let instances = if selected.is_empty() { Vec::new() } else { suite_instances(seed, n_instances)? };
    let threads = match config.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        n => n,
    }
    .min(instances.len().max(1));
    let chunk = instances.len().div_ceil(threads).max(1);
    let results: Vec<Result<Vec<(usize, TheoremCheck)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let selected = &selected;
                s.spawn(move || -> Result<Vec<(usize, TheoremCheck)>> {
                    let mut out = Vec::new();
                    for (i, inst) in part.iter().enumerate() {
                        let probes = Probes::default_for(inst.instance.dim());
                        for check in run_checks(selected, inst, &probes)? {
                            out.push((c * chunk + i, check));
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    checks.sort_by(|(i, a), (j, b)| a.theorem_id.cmp(&b.theorem_id).then(i.cmp(j)));
    Ok(SuiteReport { seed, n_instances: instances.len(), checks: checks.into_iter().map(|(_, c)| c).collect() })
}
