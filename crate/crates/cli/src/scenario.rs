// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Declarative scenario files.
//!
//! Scenarios are TOML documents (conventionally with a `.cfg` extension).
//! Every section is checked and resolved into core types before any
//! computation starts. See `scenarios/` for one file per figure panel.

use std::path::Path;

use qudit_lgt::digital::trotter::MAX_PHONON_SITES;
use qudit_lgt::params::MAX_EXACT_SITES;
use qudit_lgt::{
    dirac_vacuum, string_state, GateScheme, Level, ModelParams, NoiseEnsemble, PhononConfig, QuditState,
    StringWindow, TrotterPlan,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Exact state-vector evolution.
    Exact,
    /// Trotterized circuit compared against the exact trajectory.
    Digital,
    /// Ensemble of static Zeeman-noise realizations.
    Noisy,
    /// Baryon transfer on three sites and its `J_eff` fit.
    Perturbative,
    /// `P = F·F_MS^{N_gates}` over a grid of step counts and gate fidelities.
    Performance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub n_sites: usize,
    pub mass: f64,
    pub g2: f64,
    #[serde(default)]
    pub stagger_offset: u8,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    Vacuum,
    /// Vacuum with the listed `[site, level]` replacements.
    Flips,
    /// Flux string of `length` links starting on quark site `start`.
    String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub kind: InitialKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flips: Vec<[u8; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<usize>,
}

impl Default for InitialSection {
    fn default() -> Self {
        InitialSection { kind: InitialKind::Vacuum, flips: Vec::new(), start: None, length: None }
    }
}

/// Time grid. Exactly one of `dt` and `dt_pi` (step in units of π), and
/// exactly one of `steps` and `t_final`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_pi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
}

/// Largest relative gap tolerated between `t_final` and `steps·dt`.
pub const T_FINAL_SLACK: f64 = 1e-2;

impl TimeSection {
    pub fn step(&self) -> Result<f64, CliError> {
        let dt = match (self.dt, self.dt_pi) {
            (Some(dt), None) => dt,
            (None, Some(x)) => x * std::f64::consts::PI,
            _ => return Err(CliError::Config("[time] needs exactly one of dt and dt_pi".into())),
        };
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(CliError::Config(format!("time step must be positive, got {dt}")));
        }
        Ok(dt)
    }

    pub fn n_steps(&self) -> Result<usize, CliError> {
        let dt = self.step()?;
        match (self.steps, self.t_final) {
            (Some(0), None) => Err(CliError::Config("[time] steps must be at least 1".into())),
            (Some(n), None) => Ok(n),
            (None, Some(t)) => {
                let n = (t / dt).round() as usize;
                if n == 0 || ((n as f64 * dt - t) / t).abs() > T_FINAL_SLACK {
                    return Err(CliError::Config(format!("t_final {t} is not a multiple of dt {dt}")));
                }
                Ok(n)
            }
            _ => Err(CliError::Config("[time] needs exactly one of steps and t_final".into())),
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        let dt = self.step()?;
        Ok((0..=self.n_steps()?).map(|k| k as f64 * dt).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigitalSection {
    pub scheme: GateScheme,
    #[serde(default = "one")]
    pub order: u8,
    /// Integrate the motional mode of the MS-based gates.
    #[serde(default)]
    pub phonon: bool,
    #[serde(default)]
    pub phonon_config: PhononConfig,
}

fn one() -> u8 {
    1
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseBackend {
    Exact,
    Digital,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    pub delta_b: f64,
    #[serde(default = "default_w")]
    pub w: f64,
    #[serde(default = "default_realizations")]
    pub realizations: usize,
    #[serde(default = "default_backend")]
    pub backend: NoiseBackend,
}

fn default_w() -> f64 {
    NoiseEnsemble::default().w
}

fn default_realizations() -> usize {
    NoiseEnsemble::default().realizations
}

fn default_backend() -> NoiseBackend {
    NoiseBackend::Digital
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservablesSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub string_window: Option<StringWindow>,
    /// Report every density relative to the vacuum trajectory.
    #[serde(default)]
    pub subtract_vacuum: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostselectSection {
    pub shots: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerformanceSection {
    pub t_final: f64,
    pub n_st: Vec<usize>,
    pub f_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbativeSection {
    /// Samples of the transfer population per first-maximum time.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Length of the sampled window in units of the first-maximum time.
    #[serde(default = "default_span")]
    pub span: f64,
}

fn default_samples() -> usize {
    200
}

fn default_span() -> f64 {
    2.0
}

impl Default for PerturbativeSection {
    fn default() -> Self {
        PerturbativeSection { samples: default_samples(), span: default_span() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub engine: Engine,
    #[serde(default)]
    pub seed: u64,
    pub model: ModelSection,
    #[serde(default)]
    pub initial: InitialSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digital: Option<DigitalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSection>,
    #[serde(default)]
    pub observables: ObservablesSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub postselect: Option<PostselectSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub performance: Option<PerformanceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbative: Option<PerturbativeSection>,
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    /// Reads a scenario file, or the `scenario` field of a run manifest.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
            let s = v.get("scenario").ok_or_else(|| CliError::Config("manifest has no scenario field".into()))?;
            return serde_json::from_value(s.clone()).map_err(|e| CliError::Config(e.to_string()));
        }
        Self::from_toml(&text)
    }

    pub fn params(&self) -> Result<ModelParams, CliError> {
        let m = &self.model;
        Ok(ModelParams::new(m.n_sites, m.mass, m.g2)?.with_stagger_offset(m.stagger_offset)?)
    }

    pub fn time(&self) -> Result<&TimeSection, CliError> {
        self.time.as_ref().ok_or_else(|| CliError::Config(format!("engine {:?} needs a [time] section", self.engine)))
    }

    pub fn digital(&self) -> Result<&DigitalSection, CliError> {
        self.digital
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("engine {:?} needs a [digital] section", self.engine)))
    }

    pub fn plan(&self) -> Result<TrotterPlan, CliError> {
        let t = self.time()?;
        Ok(TrotterPlan::new(self.digital()?.order, t.step()?, t.n_steps()?)?)
    }

    pub fn ensemble(&self) -> Result<NoiseEnsemble, CliError> {
        let n = self.noise.as_ref().ok_or_else(|| CliError::Config("engine noisy needs a [noise] section".into()))?;
        let e = NoiseEnsemble { delta_b: n.delta_b, w: n.w, realizations: n.realizations, seed: self.seed };
        e.validate()?;
        Ok(e)
    }

    pub fn initial_state(&self) -> Result<QuditState, CliError> {
        let p = self.params()?;
        let init = &self.initial;
        match init.kind {
            InitialKind::Vacuum => Ok(dirac_vacuum(&p)?),
            InitialKind::Flips => {
                if init.flips.is_empty() {
                    return Err(CliError::Config("initial.kind = \"flips\" needs a non-empty flips list".into()));
                }
                let mut config = p.vacuum_config();
                for &[site, level] in &init.flips {
                    p.check_site(site as usize)?;
                    config[site as usize - 1] = Level::new(level)?;
                }
                Ok(QuditState::product(&config))
            }
            InitialKind::String => {
                let (Some(start), Some(length)) = (init.start, init.length) else {
                    return Err(CliError::Config("initial.kind = \"string\" needs start and length".into()));
                };
                Ok(string_state(&p, start, length)?)
            }
        }
    }

    /// Checks every section the engine reads, including capacity limits.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(CliError::Config(format!("scenario name {:?} is not a plain file stem", self.name)));
        }
        let p = self.params()?;
        p.check_exact_capacity()?;
        self.initial_state()?;
        if let Some(w) = self.observables.string_window {
            if w.start == 0 || w.length == 0 || w.start + w.length > p.n_sites {
                return Err(CliError::Config(format!(
                    "string window {}+{} does not fit {} sites",
                    w.start, w.length, p.n_sites
                )));
            }
        }
        let phonon_sites = |d: &DigitalSection| -> Result<(), CliError> {
            if d.phonon {
                d.phonon_config.validate()?;
                if p.n_sites > MAX_PHONON_SITES && matches!(d.scheme, GateScheme::FullMs | GateScheme::DisjointPair) {
                    return Err(CliError::Capacity(format!(
                        "phonon-resolved circuits hold at most {MAX_PHONON_SITES} sites, got {}",
                        p.n_sites
                    )));
                }
            }
            Ok(())
        };
        match self.engine {
            Engine::Exact => {
                self.time()?.grid()?;
            }
            Engine::Digital => {
                self.plan()?;
                phonon_sites(self.digital()?)?;
            }
            Engine::Noisy => {
                self.ensemble()?;
                match self.noise.as_ref().map(|n| n.backend) {
                    Some(NoiseBackend::Digital) => {
                        self.plan()?;
                        phonon_sites(self.digital()?)?;
                    }
                    _ => {
                        self.time()?.grid()?;
                    }
                }
            }
            Engine::Perturbative => {
                if p.n_sites != 3 {
                    return Err(CliError::Config("the perturbative engine works on 3 sites".into()));
                }
                qudit_lgt::jeff(p.g2, p.mass)?;
            }
            Engine::Performance => {
                let perf = self
                    .performance
                    .as_ref()
                    .ok_or_else(|| CliError::Config("engine performance needs a [performance] section".into()))?;
                if perf.n_st.is_empty() || perf.f_ms.is_empty() || perf.n_st.contains(&0) {
                    return Err(CliError::Config("performance grid needs positive n_st and some f_ms".into()));
                }
                if !(perf.t_final > 0.0) {
                    return Err(CliError::Config("performance.t_final must be positive".into()));
                }
                for &f in &perf.f_ms {
                    qudit_lgt::performance(1.0, f, 1)?;
                }
                let d = self.digital()?;
                phonon_sites(d)?;
                TrotterPlan::new(d.order, perf.t_final, 1)?;
            }
        }
        if let Some(ps) = &self.postselect {
            if ps.shots == 0 {
                return Err(CliError::Config("postselect.shots must be positive".into()));
            }
        }
        debug_assert!(p.n_sites <= MAX_EXACT_SITES);
        Ok(())
    }
}
