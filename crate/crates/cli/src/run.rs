//! Executes a resolved job and writes its output files.

use std::path::{Path, PathBuf};

use ptlattice_core::diagram::sweep;
use ptlattice_core::{
    assemble_hamiltonian, classify_spectrum, phase_diagram, ring_threshold_formula, verify_direct_sum, EigenSolver,
    PhaseRow, ThresholdOptions, ThresholdStatus,
};
use serde::Serialize;
use serde_json::Value;

use crate::config::{Command, JobConfig};
use crate::error::CliError;
use crate::output::{json_number, metadata_json, render_csv, render_json, write_file};

/// Environment variable that overrides the configured worker count.
pub const WORKERS_ENV: &str = "PTLATTICE_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    /// 0 on success, 2 when a numerical failure was recorded in the output.
    pub exit_code: i32,
    pub messages: Vec<String>,
}

impl RunOutcome {
    fn new() -> Self {
        Self { files: Vec::new(), exit_code: 0, messages: Vec::new() }
    }

    fn numerical(&mut self, message: String) {
        self.exit_code = 2;
        self.messages.push(message);
    }
}

/// Worker count from the environment, falling back to the configuration.
pub fn resolve_workers(job: &JobConfig, env: Option<&str>) -> Result<usize, CliError> {
    match env {
        None => Ok(job.workers),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(CliError::validation(WORKERS_ENV, format!("expected a positive integer, got `{v}`"))),
        },
    }
}

fn options(job: &JobConfig) -> Result<ThresholdOptions<f64>, CliError> {
    Ok(ThresholdOptions {
        tolerance: job.tolerance,
        initial_upper: (0.5 * job.scale()?).min(job.bracket_cap),
        bracket_cap: job.bracket_cap,
        reality_tolerance: job.reality_tolerance,
        solver: EigenSolver::default(),
    })
}

fn numerical(e: ptlattice_core::Error) -> CliError {
    match e {
        ptlattice_core::Error::NoConvergence { .. } | ptlattice_core::Error::NonFiniteMatrix => {
            CliError::Numerical(e.to_string())
        }
        other => CliError::validation("config", other.to_string()),
    }
}

fn row_failures(rows: &[PhaseRow<f64>], label: &str, outcome: &mut RunOutcome) {
    for r in rows.iter().filter(|r| r.status == ThresholdStatus::NoConvergence) {
        outcome.numerical(format!("{label}: eigensolver did not converge at m = {}", r.m));
    }
}

pub fn run(job: &JobConfig, out_dir: &Path, workers: usize) -> Result<RunOutcome, CliError> {
    match job.command {
        Command::Spectrum => run_spectrum(job, out_dir),
        Command::Threshold => run_threshold(job, out_dir),
        Command::PhaseDiagram => run_phase_diagram(job, out_dir, workers),
        Command::RingThreshold => run_ring(job, out_dir, workers),
        Command::Verify => run_verify(job, out_dir),
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    dimension: usize,
    eigenvalues: Vec<[Value; 2]>,
    max_abs_imag: Value,
    classification: &'static str,
    pairing_defect: Value,
    metadata: Value,
}

fn run_spectrum(job: &JobConfig, out_dir: &Path) -> Result<RunOutcome, CliError> {
    let spec = job.lattice(0, job.m.expect("site resolved"))?;
    let h = assemble_hamiltonian(&spec);
    let eigs = EigenSolver::default().eigenvalues(&h).map_err(numerical)?;
    let spectrum = classify_spectrum(&eigs, job.reality_tolerance).map_err(numerical)?;
    let report = SpectrumReport {
        dimension: h.dim(),
        eigenvalues: spectrum.eigenvalues.iter().map(|e| [json_number(e.re), json_number(e.im)]).collect(),
        max_abs_imag: json_number(spectrum.max_abs_imag),
        classification: spectrum.phase.as_str(),
        pairing_defect: json_number(spectrum.pairing_defect),
        metadata: metadata_json(job),
    };
    let mut outcome = RunOutcome::new();
    outcome.files.push(write_file(out_dir, "spectrum.json", &render_json(&report))?);
    Ok(outcome)
}

fn run_threshold(job: &JobConfig, out_dir: &Path) -> Result<RunOutcome, CliError> {
    let m = job.m.expect("site resolved");
    let spec = job.lattice(0, m)?;
    let rows = sweep(job.n, &[m], |_| Ok(spec.clone()), &options(job)?, 1).map_err(numerical)?;
    let mut outcome = RunOutcome::new();
    outcome.files.push(write_file(out_dir, "threshold.csv", &render_csv(job, &rows))?);
    row_failures(&rows, "threshold", &mut outcome);
    match rows[0].status {
        ThresholdStatus::NoUpperBracket => outcome.numerical(format!(
            "threshold: spectrum still real at the bracket cap {}",
            job.bracket_cap
        )),
        ThresholdStatus::AlwaysBroken => outcome.numerical("threshold: spectrum already broken at zero gain".into()),
        _ => {}
    }
    Ok(outcome)
}

/// File name for one mixing ratio, e.g. `phase_diagram_td0.4.csv`.
pub fn phase_diagram_file(ratio: f64) -> String {
    format!("phase_diagram_td{}.csv", crate::output::format_sig(ratio))
}

fn run_phase_diagram(job: &JobConfig, out_dir: &Path, workers: usize) -> Result<RunOutcome, CliError> {
    let ray = job.ray.gain_ray()?;
    let sites = job.sites();
    let opts = options(job)?;
    let mut outcome = RunOutcome::new();
    for (i, &ratio) in job.t_d_over_t_s.iter().enumerate() {
        let base = job.lattice(i, sites[0])?;
        let diagram = phase_diagram(&base, &sites, &ray, &opts, workers).map_err(numerical)?;
        let name = phase_diagram_file(ratio);
        outcome.files.push(write_file(out_dir, &name, &render_csv(job, &diagram.rows))?);
        row_failures(&diagram.rows, &name, &mut outcome);
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct RingReport {
    formula: Value,
    formula_error: Option<String>,
    bisection_min: Value,
    bisection_max: Value,
    spread: Value,
    max_abs_deviation: Value,
    consistent: bool,
    metadata: Value,
}

fn run_ring(job: &JobConfig, out_dir: &Path, workers: usize) -> Result<RunOutcome, CliError> {
    let sites = job.sites();
    let direction = job.ray.gain_ray()?.direction();
    let specs = sites
        .iter()
        .map(|&m| job.ring(m)?.lattice_spec(direction).map_err(numerical))
        .collect::<Result<Vec<_>, _>>()?;
    let lookup = |m: usize| Ok(specs[sites.binary_search(&m).expect("site in sweep")].clone());
    let rows = sweep(job.n, &sites, lookup, &options(job)?, workers).map_err(numerical)?;
    let (formula, formula_error) = match ring_threshold_formula(&job.ring(sites[0])?) {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let finite: Vec<f64> = rows.iter().map(|r| r.gamma_pt).filter(|g| g.is_finite()).collect();
    let (lo, hi) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &g| (a.min(g), b.max(g)));
    let spread = if finite.is_empty() { f64::NAN } else { hi - lo };
    let deviation = match formula {
        Some(f) if finite.len() == rows.len() => finite.iter().map(|g| (g - f).abs()).fold(0.0, f64::max),
        _ => f64::NAN,
    };
    let report = RingReport {
        formula: formula.map_or(Value::Null, json_number),
        formula_error,
        bisection_min: json_number(lo),
        bisection_max: json_number(hi),
        spread: json_number(spread),
        max_abs_deviation: json_number(deviation),
        consistent: deviation <= 2.0 * job.tolerance,
        metadata: metadata_json(job),
    };
    let mut outcome = RunOutcome::new();
    outcome.files.push(write_file(out_dir, "ring_threshold.csv", &render_csv(job, &rows))?);
    outcome.files.push(write_file(out_dir, "ring_threshold.json", &render_json(&report))?);
    row_failures(&rows, "ring-threshold", &mut outcome);
    Ok(outcome)
}

#[derive(Serialize)]
struct VerifyReport {
    basis: &'static str,
    dimension: usize,
    max_multiset_distance: Value,
    tolerance: Value,
    pass: bool,
    metadata: Value,
}

fn run_verify(job: &JobConfig, out_dir: &Path) -> Result<RunOutcome, CliError> {
    let spec = job.lattice(0, job.m.expect("site resolved"))?;
    let report = verify_direct_sum(&spec, job.verify_tolerance, &EigenSolver::default()).map_err(|e| match e {
        ptlattice_core::Error::NotDecomposable => CliError::validation(
            "ray",
            "lattice mixes tau_x and tau_z terms and has no sector decomposition",
        ),
        other => numerical(other),
    })?;
    let json = VerifyReport {
        basis: report.basis.as_str(),
        dimension: report.full.len(),
        max_multiset_distance: json_number(report.max_multiset_distance),
        tolerance: json_number(report.tolerance),
        pass: report.pass,
        metadata: metadata_json(job),
    };
    let mut outcome = RunOutcome::new();
    outcome.files.push(write_file(out_dir, "verify.json", &render_json(&json))?);
    if !report.pass {
        outcome.numerical(format!(
            "verify: multiset distance {} exceeds {}",
            report.max_multiset_distance, report.tolerance
        ));
    }
    Ok(outcome)
}
