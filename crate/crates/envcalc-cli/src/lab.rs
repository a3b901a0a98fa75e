use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use envcalc::io::{parse_probes, Table};
use envcalc::point::linspace;
use envcalc::theoremlab::{
    check, check_all, gallery, run_suite_with, suite_instances, LabInstance, Probes, SuiteConfig, SuiteReport, GALLERY,
};
use envcalc::transforms::{conjugate_brute, conjugate_llt};
use envcalc::{Error, Finite, GridFunction, Result, Q};

use crate::input::{DEFAULT_AXIS, DEFAULT_AXIS_2D};

/// What a lab verb produced: lines for the terminal, a CSV table, and
/// whether everything held.
pub struct Report {
    pub text: String,
    pub table: Table,
    pub passed: bool,
}

fn lab_probes(dim: usize, primal: Option<&str>, dual: Option<&str>) -> Result<Probes> {
    let default = if dim == 1 { DEFAULT_AXIS } else { DEFAULT_AXIS_2D };
    Ok(Probes {
        primal: parse_probes::<Q>(primal.unwrap_or(default), dim)?,
        dual: parse_probes::<Q>(dual.unwrap_or(default), dim)?,
    })
}

/// The selected checks (all registered ones when `theorems` is empty) on each instance.
pub fn check_instances(
    instances: &[LabInstance],
    theorems: &[String],
    primal: Option<&str>,
    dual: Option<&str>,
) -> Result<Report> {
    let mut checks = Vec::new();
    for inst in instances {
        let probes = lab_probes(inst.instance.dim(), primal, dual)?;
        if theorems.is_empty() {
            checks.extend(check_all(inst, &probes)?);
        } else {
            for id in theorems {
                checks.push(check(id, inst, &probes)?);
            }
        }
    }
    let report = SuiteReport { seed: 0, n_instances: instances.len(), checks };
    let text = report.checks.iter().map(|c| format!("{c}\n")).collect();
    Ok(Report { text, table: report.to_table(), passed: report.passed() })
}

fn export(dir: &Path, instances: &[LabInstance]) -> Result<()> {
    let io = |e: std::io::Error| Error::parse(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    for inst in instances {
        let name = format!("{}.json", inst.id.replace([':', '#', '/'], "-"));
        fs::write(dir.join(name), inst.instance.to_json() + "\n").map_err(io)?;
    }
    Ok(())
}

/// Seeded suite; failures are listed before the summary line.
pub fn suite(seed: u64, n: usize, theorems: &[String], export_dir: Option<&Path>) -> Result<Report> {
    if let Some(dir) = export_dir {
        export(dir, &suite_instances(seed, n)?)?;
    }
    let config = SuiteConfig { theorems: (!theorems.is_empty()).then(|| theorems.to_vec()), threads: 0 };
    let report = run_suite_with(seed, n, &config)?;
    let mut text: String = report.failures().map(|c| format!("{c}\n")).collect();
    text += report.to_text().lines().last().unwrap_or_default();
    text.push('\n');
    Ok(Report { text, table: report.to_table(), passed: report.passed() })
}

pub fn galleries(name: Option<&str>, export_dir: Option<&Path>) -> Result<Report> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => GALLERY.to_vec(),
    };
    let mut table = Table::new(["entry", "claim", "expected", "observed", "reproduced", "detail"]);
    let (mut text, mut passed) = (String::new(), true);
    for name in names {
        let entry = gallery(name)?;
        if let Some(dir) = export_dir {
            export(dir, &entry.instances)?;
        }
        text += &format!("{name}\n");
        for f in &entry.findings {
            text += &format!("  {f}\n");
            table.push([
                name.to_string(),
                f.claim.clone(),
                f.expected.to_string(),
                f.observed.to_string(),
                f.reproduced().to_string(),
                f.detail.clone(),
            ]);
        }
        passed &= entry.reproduced();
    }
    Ok(Report { text, table, passed })
}

/// Convex samples of `x²/2 + |x|³/3 + |x − ½|` on `[-2, 2]`.
fn convex_samples(n: usize) -> (Vec<f64>, Vec<f64>) {
    let xs = linspace(&-2.0, &2.0, n);
    let vs = xs.iter().map(|x| x * x / 2.0 + x.abs().powi(3) / 3.0 + (x - 0.5).abs()).collect();
    (xs, vs)
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, Duration)> {
    let t = Instant::now();
    let out = f()?;
    Ok((out, t.elapsed()))
}

/// Brute-force against linear-time conjugation for `2^10 … 2^max_exp` samples.
pub fn bench(max_exp: u32, tolerance: f64) -> Result<Report> {
    if !(10..=20).contains(&max_exp) {
        return Err(Error::parse(format!("bench size exponent must be in 10..=20, got {max_exp}")));
    }
    let mut table = Table::new(["n", "brute_s", "llt_s", "ratio", "max_error"]);
    let (mut text, mut passed) = (String::new(), true);
    for e in 10..=max_exp {
        let n = 1usize << e;
        let (xs, vs) = convex_samples(n);
        let dual = linspace(&-6.0, &6.0, n);
        let f = GridFunction::sample_1d(&xs, |x| Finite(vs[xs.partition_point(|t| t < x)]))?;
        let dual_pts = envcalc::point::points_1d(&dual);
        let (slow, brute) = timed(|| conjugate_brute(&f, &dual_pts))?;
        let (fast, llt) = timed(|| conjugate_llt(&xs, &vs, &dual))?;
        let err = fast.iter().zip(slow.values()).map(|(a, b)| (a - b.to_f64()).abs()).fold(0.0, f64::max);
        let ratio = brute.as_secs_f64() / llt.as_secs_f64().max(1e-9);
        passed &= err <= tolerance;
        text += &format!("n=2^{e} brute={brute:.3?} llt={llt:.3?} ratio={ratio:.1} max_error={err:.1e}\n");
        table.push([
            n.to_string(),
            brute.as_secs_f64().to_string(),
            llt.as_secs_f64().to_string(),
            ratio.to_string(),
            err.to_string(),
        ]);
    }
    Ok(Report { text, table, passed })
}
