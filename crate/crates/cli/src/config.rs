//! Job configuration: a single TOML document, fully resolved before running.

use std::fmt;
use std::str::FromStr;

use ptlattice_core::{build_profile, Boundary, GainRay, LatticeSpec, ProfileKind, RingSpec, SpinMatrix, TunnelingProfile};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Keys that `--set key=value` may override.
pub const OVERRIDABLE_KEYS: [&str; 4] = ["N", "m", "t_d", "gamma"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Threshold,
    PhaseDiagram,
    RingThreshold,
    Verify,
}

impl Command {
    pub const ALL: [Command; 5] =
        [Command::Spectrum, Command::Threshold, Command::PhaseDiagram, Command::RingThreshold, Command::Verify];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Threshold => "threshold",
            Command::PhaseDiagram => "phase-diagram",
            Command::RingThreshold => "ring-threshold",
            Command::Verify => "verify",
        }
    }

    fn needs_site(self) -> bool {
        matches!(self, Command::Spectrum | Command::Threshold | Command::Verify)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CliError::validation("command", format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileName {
    Constant,
    ParabolicSqrt,
    Explicit,
}

impl ProfileName {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileName::Constant => "constant",
            ProfileName::ParabolicSqrt => "parabolic-sqrt",
            ProfileName::Explicit => "explicit",
        }
    }
}

/// Gain direction: a named Pauli combination or explicit coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RayConfig {
    Named(String),
    Components {
        #[serde(default)]
        s: f64,
        #[serde(default)]
        x: f64,
        #[serde(default)]
        z: f64,
    },
}

impl RayConfig {
    pub fn direction(&self) -> Result<SpinMatrix<f64>, CliError> {
        let m = match self {
            RayConfig::Named(name) => match name.as_str() {
                "tau_z" => SpinMatrix::tau_z(),
                "tau_x" => SpinMatrix::tau_x(),
                "identity" => SpinMatrix::identity(),
                other => {
                    return Err(CliError::validation(
                        "ray",
                        format!("unknown ray `{other}` (expected tau_z, tau_x, identity or {{s, x, z}})"),
                    ))
                }
            },
            RayConfig::Components { s, x, z } => {
                SpinMatrix::new(*s, *x, *z).map_err(|e| CliError::validation("ray", e.to_string()))?
            }
        };
        Ok(m)
    }

    pub fn gain_ray(&self) -> Result<GainRay<f64>, CliError> {
        GainRay::new(self.direction()?).map_err(|e| CliError::validation("ray", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BondEntry {
    Scalar(f64),
    Components(Vec<f64>),
}

impl BondEntry {
    fn to_spin(&self, index: usize) -> Result<SpinMatrix<f64>, CliError> {
        let c = match self {
            BondEntry::Scalar(s) => [*s, 0.0, 0.0],
            BondEntry::Components(v) if (1..=3).contains(&v.len()) => {
                let mut c = [0.0; 3];
                c[..v.len()].copy_from_slice(v);
                c
            }
            BondEntry::Components(v) => {
                return Err(CliError::validation("bonds", format!("bond {} has {} components (expected 1 to 3)", index + 1, v.len())))
            }
        };
        SpinMatrix::new(c[0], c[1], c[2]).map_err(|e| CliError::validation("bonds", e.to_string()))
    }
}

/// Document as written; every key optional, unknown keys rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_d_over_t_s: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_range: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reality_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bracket_cap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tb_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tb_d: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bonds: Option<Vec<BondEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<RayConfig>,
}

/// Fully defaulted, validated job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: Command,
    pub n: usize,
    pub boundary: Boundary,
    pub profile: ProfileName,
    pub t_s: f64,
    pub t_d: f64,
    /// Mixing ratios; one phase diagram per entry, a single entry otherwise.
    pub t_d_over_t_s: Vec<f64>,
    pub t0: f64,
    pub bonds: Vec<[f64; 3]>,
    pub force: bool,
    /// Impurity site for spectrum, threshold and verify jobs.
    pub m: Option<usize>,
    /// Inclusive site range for phase-diagram and ring-threshold jobs.
    pub m_range: Option<(usize, usize)>,
    pub ray: RayConfig,
    pub gamma: f64,
    pub tolerance: f64,
    pub reality_tolerance: f64,
    pub bracket_cap: f64,
    pub verify_tolerance: f64,
    pub workers: usize,
    pub t0_s: f64,
    pub t0_d: f64,
    pub tb_s: f64,
    pub tb_d: f64,
}

/// Parses a TOML document into a validated job.
pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    parse_with_overrides(text, None, &[])
}

/// Parses, optionally forcing the command and applying `key=value` overrides.
pub fn parse_with_overrides(text: &str, command: Option<Command>, overrides: &[String]) -> Result<JobConfig, CliError> {
    let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
    if let Some(cmd) = command {
        match table.get("command").and_then(|v| v.as_str()) {
            Some(existing) if existing != cmd.as_str() => {
                return Err(CliError::validation(
                    "command",
                    format!("config says `{existing}` but `{cmd}` was requested"),
                ))
            }
            _ => {
                table.insert("command".into(), toml::Value::String(cmd.as_str().into()));
            }
        }
    }
    for item in overrides {
        apply_override(&mut table, item)?;
    }
    let raw: RawConfig = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
    resolve(raw)
}

fn apply_override(table: &mut toml::Table, item: &str) -> Result<(), CliError> {
    let (key, value) = item
        .split_once('=')
        .ok_or_else(|| CliError::Parse(format!("override `{item}` is not key=value")))?;
    let key = key.trim();
    if !OVERRIDABLE_KEYS.contains(&key) {
        return Err(CliError::validation(key, format!("not overridable (allowed: {})", OVERRIDABLE_KEYS.join(", "))));
    }
    let parsed: toml::Table = format!("v = {}", value.trim())
        .parse()
        .map_err(|e: toml::de::Error| CliError::Parse(format!("override `{item}`: {e}")))?;
    let value = parsed["v"].clone();
    if key == "t_d" {
        // a single mixing amplitude replaces any ratio series
        table.remove("t_d_over_t_s");
    }
    table.insert(key.into(), value);
    Ok(())
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::validation(key, format!("must be positive and finite, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::validation(key, format!("must be non-negative and finite, got {v}")))
    }
}

fn check_site_key(key: &str, n: usize, m: usize) -> Result<(), CliError> {
    if n % 2 == 1 && m == (n + 1) / 2 {
        return Err(CliError::validation(key, format!("m = {m} is the center site of an odd lattice (m = N+1-m)")));
    }
    if m < 1 || m > n / 2 {
        return Err(CliError::validation(key, format!("{m} outside 1..={}", n / 2)));
    }
    Ok(())
}

fn resolve(raw: RawConfig) -> Result<JobConfig, CliError> {
    let command: Command = raw
        .command
        .as_deref()
        .ok_or_else(|| CliError::validation("command", "missing"))?
        .parse()?;
    let n = raw.n.ok_or_else(|| CliError::validation("N", "missing"))?;
    let min_sites = if command == Command::RingThreshold { 3 } else { 2 };
    if n < min_sites {
        return Err(CliError::validation("N", format!("need at least {min_sites} sites, got {n}")));
    }
    let boundary = match raw.boundary.as_deref().unwrap_or("open") {
        "open" => Boundary::Open,
        "periodic" => Boundary::Periodic,
        other => return Err(CliError::validation("boundary", format!("expected open or periodic, got `{other}`"))),
    };
    let profile = match raw.profile.as_deref().unwrap_or("constant") {
        "constant" => ProfileName::Constant,
        "parabolic-sqrt" => ProfileName::ParabolicSqrt,
        "explicit" => ProfileName::Explicit,
        other => {
            return Err(CliError::validation("profile", format!("expected constant, parabolic-sqrt or explicit, got `{other}`")))
        }
    };
    let force = raw.force.unwrap_or(false);

    let t_s = non_negative("t_s", raw.t_s.unwrap_or(1.0))?;
    let t0 = non_negative("t0", raw.t0.unwrap_or(1.0))?;
    let (t_d, t_d_over_t_s) = match (raw.t_d, raw.t_d_over_t_s) {
        (Some(t_d), None) => {
            let t_d = non_negative("t_d", t_d)?;
            let ratio = if t_s > 0.0 { t_d / t_s } else { 0.0 };
            (t_d, vec![ratio])
        }
        (None, Some(ratios)) => {
            let first = *ratios.first().ok_or_else(|| CliError::validation("t_d_over_t_s", "empty list"))?;
            (t_s * first, ratios)
        }
        (Some(t_d), Some(ratios)) => {
            let first = *ratios.first().ok_or_else(|| CliError::validation("t_d_over_t_s", "empty list"))?;
            if (t_s * first - t_d).abs() > 1e-12 * t_s.max(1.0) {
                return Err(CliError::validation("t_d", format!("t_d = {t_d} disagrees with t_d_over_t_s[0] * t_s")));
            }
            (t_d, ratios)
        }
        (None, None) => (0.0, vec![0.0]),
    };
    for &r in &t_d_over_t_s {
        non_negative("t_d_over_t_s", r)?;
        if r > 1.0 && !force {
            return Err(CliError::validation("t_d_over_t_s", format!("{r} exceeds 1 (t_d > t_s); set force = true to allow")));
        }
    }
    if command != Command::PhaseDiagram && t_d_over_t_s.len() != 1 {
        return Err(CliError::validation("t_d_over_t_s", format!("{command} takes a single mixing ratio")));
    }

    let bonds = match (profile, raw.bonds) {
        (ProfileName::Explicit, Some(list)) => list
            .iter()
            .enumerate()
            .map(|(i, b)| b.to_spin(i).map(|m| [m.s, m.x, m.z]))
            .collect::<Result<Vec<_>, _>>()?,
        (ProfileName::Explicit, None) => return Err(CliError::validation("bonds", "explicit profile needs a bond list")),
        (_, Some(_)) => return Err(CliError::validation("bonds", "only allowed with profile = \"explicit\"")),
        (_, None) => Vec::new(),
    };

    let (m, m_range) = if command.needs_site() {
        if raw.m_range.is_some() {
            return Err(CliError::validation("m_range", format!("{command} takes a single site `m`")));
        }
        let m = raw.m.ok_or_else(|| CliError::validation("m", "missing"))?;
        check_site_key("m", n, m)?;
        (Some(m), None)
    } else {
        let range = match (raw.m, raw.m_range) {
            (Some(_), Some(_)) => return Err(CliError::validation("m", "give either m or m_range, not both")),
            (Some(m), None) => (m, m),
            (None, Some(r)) if r.len() == 2 => (r[0], r[1]),
            (None, Some(r)) => {
                return Err(CliError::validation("m_range", format!("expected [first, last], got {} entries", r.len())))
            }
            (None, None) => (1, n / 2),
        };
        check_site_key("m_range", n, range.0)?;
        check_site_key("m_range", n, range.1)?;
        if range.0 > range.1 {
            return Err(CliError::validation("m_range", format!("first {} exceeds last {}", range.0, range.1)));
        }
        (None, Some(range))
    };

    let default_ray = match command {
        Command::RingThreshold | Command::Verify => "identity",
        _ => "tau_z",
    };
    let ray = raw.ray.unwrap_or_else(|| RayConfig::Named(default_ray.into()));
    ray.gain_ray()?;

    let t0_s = non_negative("t0_s", raw.t0_s.unwrap_or(1.0))?;
    let t0_d = non_negative("t0_d", raw.t0_d.unwrap_or(0.0))?;
    let tb_s = non_negative("tb_s", raw.tb_s.unwrap_or(0.5))?;
    let tb_d = non_negative("tb_d", raw.tb_d.unwrap_or(0.0))?;

    let mut job = JobConfig {
        command,
        n,
        boundary,
        profile,
        t_s,
        t_d,
        t_d_over_t_s,
        t0,
        bonds,
        force,
        m,
        m_range,
        ray,
        gamma: non_negative("gamma", raw.gamma.unwrap_or(0.0))?,
        tolerance: 0.0,
        reality_tolerance: 0.0,
        bracket_cap: 0.0,
        verify_tolerance: positive("verify_tolerance", raw.verify_tolerance.unwrap_or(1e-8))?,
        workers: raw.workers.unwrap_or(1),
        t0_s,
        t0_d,
        tb_s,
        tb_d,
    };
    if job.workers == 0 {
        return Err(CliError::validation("workers", "must be at least 1"));
    }

    // build once so parity and amplitude errors surface as configuration errors
    let scale = job.scale()?;
    job.tolerance = positive("tolerance", raw.tolerance.unwrap_or(1e-4 * scale))?;
    job.reality_tolerance = positive("reality_tolerance", raw.reality_tolerance.unwrap_or(1e-8 * scale))?;
    job.bracket_cap = positive("bracket_cap", raw.bracket_cap.unwrap_or(8.0 * scale))?;
    if let Some(m) = job.m {
        job.lattice(0, m)?;
    }
    Ok(job)
}

impl JobConfig {
    /// Bond profile for mixing ratio `series`.
    pub fn profile_for(&self, series: usize) -> Result<TunnelingProfile<f64>, CliError> {
        let ratio = self.t_d_over_t_s[series];
        let kind = match self.profile {
            // force lifts |x| <= s, which the generated constant profile would enforce
            ProfileName::Constant if self.force && ratio > 1.0 => ProfileKind::Explicit {
                bonds: vec![SpinMatrix::tunneling(self.t_s, self.t_s * ratio); self.boundary.bond_count(self.n)],
                force: true,
            },
            ProfileName::Constant => ProfileKind::Constant { t_s: self.t_s, t_d: self.t_s * ratio },
            ProfileName::ParabolicSqrt => ProfileKind::ParabolicSqrt { t0: self.t0, t_d_fraction: ratio },
            ProfileName::Explicit => ProfileKind::Explicit {
                bonds: self.bonds.iter().map(|b| SpinMatrix { s: b[0], x: b[1], z: b[2] }).collect(),
                force: self.force,
            },
        };
        let key = if self.profile == ProfileName::Explicit { "bonds" } else { "profile" };
        build_profile(&kind, self.n, self.boundary).map_err(|e| CliError::validation(key, e.to_string()))
    }

    /// Largest tunneling amplitude over every lattice the job builds, or 1 if all vanish.
    pub fn scale(&self) -> Result<f64, CliError> {
        let mut scale = 0.0f64;
        if self.command == Command::RingThreshold {
            for m in self.sites() {
                let ring = self.ring(m)?;
                scale = scale.max(ring.outer().max_coefficient()).max(ring.inner().max_coefficient());
            }
        } else {
            for i in 0..self.t_d_over_t_s.len() {
                scale = scale.max(self.profile_for(i)?.scale());
            }
        }
        Ok(if scale > 0.0 { scale } else { 1.0 })
    }

    /// Lattice for ratio `series` with impurity at `m`, gain = ray direction at scale `gamma`.
    pub fn lattice(&self, series: usize, m: usize) -> Result<LatticeSpec<f64>, CliError> {
        let direction = self.ray.gain_ray()?.direction();
        LatticeSpec::new(self.profile_for(series)?, m, direction, self.gamma).map_err(|e| CliError::validation("m", e.to_string()))
    }

    pub fn ring(&self, m: usize) -> Result<RingSpec<f64>, CliError> {
        RingSpec::new(self.n, m, SpinMatrix::tunneling(self.t0_s, self.t0_d), SpinMatrix::tunneling(self.tb_s, self.tb_d))
            .map_err(|e| CliError::validation("m_range", e.to_string()))
    }

    /// Document that parses back to this job.
    pub fn to_raw(&self) -> RawConfig {
        RawConfig {
            command: Some(self.command.as_str().into()),
            n: Some(self.n),
            boundary: Some(self.boundary.as_str().into()),
            profile: Some(self.profile.as_str().into()),
            t_s: Some(self.t_s),
            t_d: Some(self.t_d),
            t_d_over_t_s: Some(self.t_d_over_t_s.clone()),
            t0: Some(self.t0),
            force: Some(self.force),
            m: self.m,
            m_range: self.m_range.map(|(a, b)| vec![a, b]),
            gamma: Some(self.gamma),
            tolerance: Some(self.tolerance),
            reality_tolerance: Some(self.reality_tolerance),
            bracket_cap: Some(self.bracket_cap),
            verify_tolerance: Some(self.verify_tolerance),
            workers: Some(self.workers),
            t0_s: Some(self.t0_s),
            t0_d: Some(self.t0_d),
            tb_s: Some(self.tb_s),
            tb_d: Some(self.tb_d),
            bonds: (self.profile == ProfileName::Explicit)
                .then(|| self.bonds.iter().map(|b| BondEntry::Components(b.to_vec())).collect()),
            ray: Some(self.ray.clone()),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_raw()).expect("resolved config serializes")
    }

    /// Resolved configuration as embedded in output files. The worker count
    /// is left out so outputs do not depend on it.
    pub fn metadata(&self) -> RawConfig {
        RawConfig { workers: None, ..self.to_raw() }
    }

    pub fn sites(&self) -> Vec<usize> {
        match (self.m, self.m_range) {
            (Some(m), _) => vec![m],
            (None, Some((a, b))) => (a..=b).filter(|&m| !(self.n % 2 == 1 && m == (self.n + 1) / 2)).collect(),
            (None, None) => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_edge_threshold_job() {
        let job = parse_config(
            r#"
            command = "threshold"
            N = 41
            profile = "constant"
            t_s = 1
            t_d = 0
            m = 1
            ray = "tau_z"
            "#,
        )
        .unwrap();
        assert_eq!(job.command, Command::Threshold);
        assert_eq!(job.n, 41);
        assert_eq!(job.m, Some(1));
        assert_eq!(job.tolerance, 1e-4);
        assert_eq!(job.reality_tolerance, 1e-8);
        assert_eq!(job.bracket_cap, 8.0);
        assert_eq!(job.t_d_over_t_s, vec![0.0]);
    }

    #[test]
    fn center_site_is_rejected() {
        let err = parse_config("command = \"threshold\"\nN = 41\nm = 21\n").unwrap_err();
        match err {
            CliError::Validation { key, message } => {
                assert_eq!(key, "m");
                assert!(message.contains("center"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fig3_sweep_job() {
        let job = parse_config("command = \"phase-diagram\"\nN = 40\nt_d_over_t_s = [0, 0.4, 0.7]\nray = \"tau_z\"\n").unwrap();
        assert_eq!(job.t_d_over_t_s, vec![0.0, 0.4, 0.7]);
        assert_eq!(job.m_range, Some((1, 20)));
        assert_eq!(job.sites().len(), 20);
    }

    #[test]
    fn unknown_key_is_a_parse_error() {
        let err = parse_config("command = \"spectrum\"\nN = 4\nm = 1\nbogus = 3\n").unwrap_err();
        assert!(matches!(err, CliError::Parse(ref msg) if msg.contains("bogus")), "{err:?}");
    }

    #[test]
    fn malformed_toml_reports_line() {
        let err = parse_config("command = \"spectrum\"\nN = = 4\n").unwrap_err();
        assert!(matches!(err, CliError::Parse(ref msg) if msg.contains("line 2")), "{err:?}");
    }

    #[test]
    fn validation_errors_name_the_key() {
        let key_of = |text: &str| match parse_config(text).unwrap_err() {
            CliError::Validation { key, .. } => key,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(key_of("command = \"spectrum\"\nN = 1\nm = 1\n"), "N");
        assert_eq!(key_of("command = \"spectrum\"\nN = 4\nm = 1\ntolerance = 0\n"), "tolerance");
        assert_eq!(key_of("command = \"spectrum\"\nN = 4\n"), "m");
        assert_eq!(key_of("command = \"spectrum\"\nN = 4\nm = 1\nray = \"sideways\"\n"), "ray");
        assert_eq!(key_of("command = \"jump\"\nN = 4\n"), "command");
        assert_eq!(
            key_of("command = \"spectrum\"\nN = 4\nm = 1\nprofile = \"explicit\"\nbonds = [1, 2, 3]\n"),
            "bonds"
        );
        assert_eq!(key_of("command = \"threshold\"\nN = 8\nm = 1\nt_d_over_t_s = [0, 0.4]\n"), "t_d_over_t_s");
    }

    #[test]
    fn explicit_bonds_and_component_ray() {
        let job = parse_config(
            "command = \"verify\"\nN = 4\nm = 2\nprofile = \"explicit\"\nbonds = [1, [2, 0.5], 1]\nray = { s = 1, x = 0.5 }\n",
        )
        .unwrap();
        assert_eq!(job.bonds, vec![[1.0, 0.0, 0.0], [2.0, 0.5, 0.0], [1.0, 0.0, 0.0]]);
        assert_eq!(job.ray, RayConfig::Components { s: 1.0, x: 0.5, z: 0.0 });
        assert_eq!(job.tolerance, 2e-4);
    }

    #[test]
    fn overrides() {
        let text = "command = \"phase-diagram\"\nN = 40\nt_d_over_t_s = [0, 0.4]\n";
        let job = parse_with_overrides(text, Some(Command::PhaseDiagram), &["N=20".into(), "t_d=0.3".into()]).unwrap();
        assert_eq!(job.n, 20);
        assert_eq!(job.t_d_over_t_s, vec![0.3]);
        let err = parse_with_overrides(text, None, &["tolerance=1".into()]).unwrap_err();
        assert!(matches!(err, CliError::Validation { ref key, .. } if key == "tolerance"));
        let err = parse_with_overrides(text, Some(Command::Spectrum), &[]).unwrap_err();
        assert!(matches!(err, CliError::Validation { ref key, .. } if key == "command"));
    }

    #[test]
    fn ring_defaults() {
        let job = parse_config("command = \"ring-threshold\"\nN = 12\n").unwrap();
        assert_eq!(job.ray, RayConfig::Named("identity".into()));
        assert_eq!((job.t0_s, job.tb_s), (1.0, 0.5));
        assert_eq!(job.m_range, Some((1, 6)));
    }

    #[test]
    fn round_trip_examples() {
        for text in [
            "command = \"threshold\"\nN = 41\nm = 1\n",
            "command = \"phase-diagram\"\nN = 41\nt_d_over_t_s = [0, 0.4, 0.7]\nm_range = [2, 19]\n",
            "command = \"spectrum\"\nN = 9\nm = 3\nprofile = \"parabolic-sqrt\"\nt0 = 0.5\nt_d = 0.1\ngamma = 0.2\nboundary = \"periodic\"\n",
            "command = \"verify\"\nN = 4\nm = 2\nprofile = \"explicit\"\nbonds = [1, [2, 0.5], 1]\nray = { s = 1, x = 0.5 }\n",
            "command = \"ring-threshold\"\nN = 12\nt0_d = 0.2\ntb_s = 0.5\ntb_d = 0.1\nworkers = 3\n",
        ] {
            let job = parse_config(text).unwrap();
            assert_eq!(parse_config(&job.to_toml()).unwrap(), job, "{}", job.to_toml());
        }
    }
}
