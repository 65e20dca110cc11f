//! Run configuration: a JSON document layered over a preset, then flags.

use std::path::{Path, PathBuf};

use cogradio_core::analysis::{Experiment, Scheme, DEFAULT_GRID_SIZE};
use cogradio_core::channel::{LinearTopology, Scenario, SystemParams};
use serde::Deserialize;
use thiserror::Error;

/// A configuration problem, tied to the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Partial configuration. Every field is optional so that documents and
/// flags can be layered.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: Option<String>,
    pub schemes: Option<Vec<String>>,
    pub params: Option<ParamsFile>,
    pub topology: Option<TopologyFile>,
    pub sweep: Option<SweepFile>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub t_grid_size: Option<usize>,
    pub output: Option<OutputFile>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub p: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "M")]
    pub antennas: Option<usize>,
    pub pathloss_exponent: Option<f64>,
}

/// Either the spacing form `{t_d, r_d, d_24}` or all four positions.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyFile {
    pub t_d: Option<f64>,
    pub r_d: Option<f64>,
    pub d_24: Option<f64>,
    pub tx1: Option<f64>,
    pub tx2: Option<f64>,
    pub rx2: Option<f64>,
    pub rx1: Option<f64>,
}

/// Either `{start, stop, step}` or `{list}`, in dB.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
    pub list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputFile {
    pub path: Option<PathBuf>,
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2,
    Fig3,
}

impl Preset {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fig2" => Some(Preset::Fig2),
            "fig3" => Some(Preset::Fig3),
            _ => None,
        }
    }

    /// Fig. 2: SISO links with fixed path-loss gains. Fig. 3: two-antenna
    /// links under Rayleigh fading. Both use `p = 0.1`, `β = 1` and the
    /// layout `t_d = 0.1`, `r_d = 0.6`, `d_24 = 1`.
    pub fn config(self) -> ConfigFile {
        let (scenario, antennas, sweep, trials) = match self {
            Preset::Fig2 => ("siso_siso", 1, (-20.0, 100.0, 5.0), 0),
            Preset::Fig3 => ("miso_miso", 2, (0.0, 100.0, 10.0), 500),
        };
        ConfigFile {
            scenario: Some(scenario.into()),
            schemes: None,
            params: Some(ParamsFile {
                p: Some(0.1),
                beta: Some(1.0),
                antennas: Some(antennas),
                pathloss_exponent: Some(2.0),
            }),
            topology: Some(TopologyFile {
                t_d: Some(0.1),
                r_d: Some(0.6),
                d_24: Some(1.0),
                ..TopologyFile::default()
            }),
            sweep: Some(SweepFile {
                start: Some(sweep.0),
                stop: Some(sweep.1),
                step: Some(sweep.2),
                list: None,
            }),
            trials: Some(trials),
            seed: Some(1),
            t_grid_size: Some(DEFAULT_GRID_SIZE),
            output: None,
        }
    }
}

/// Schemes evaluated when none are named.
pub fn default_schemes(scenario: Scenario) -> Vec<Scheme> {
    match scenario {
        Scenario::SisoSiso => vec![Scheme::Classical, Scheme::DfDpc, Scheme::FDpcNc],
        Scenario::MisoMiso => vec![
            Scheme::Classical,
            Scheme::DDpcZf,
            Scheme::DDpcZfNc,
            Scheme::ZfMiso,
        ],
        Scenario::SisoMimo => vec![Scheme::Classical, Scheme::ZfMimo],
    }
}

fn pick<T>(over: Option<T>, base: Option<T>) -> Option<T> {
    over.or(base)
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new("config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Fields set in `over` win. Parameters merge field by field; topology
    /// and sweep are replaced as a whole.
    pub fn overlay(self, over: ConfigFile) -> ConfigFile {
        let params = match (self.params, over.params) {
            (Some(b), Some(o)) => Some(ParamsFile {
                p: pick(o.p, b.p),
                beta: pick(o.beta, b.beta),
                antennas: pick(o.antennas, b.antennas),
                pathloss_exponent: pick(o.pathloss_exponent, b.pathloss_exponent),
            }),
            (b, o) => pick(o, b),
        };
        let output = match (self.output, over.output) {
            (Some(b), Some(o)) => Some(OutputFile {
                path: pick(o.path, b.path),
                format: pick(o.format, b.format),
            }),
            (b, o) => pick(o, b),
        };
        ConfigFile {
            scenario: pick(over.scenario, self.scenario),
            schemes: pick(over.schemes, self.schemes),
            params,
            topology: pick(over.topology, self.topology),
            sweep: pick(over.sweep, self.sweep),
            trials: pick(over.trials, self.trials),
            seed: pick(over.seed, self.seed),
            t_grid_size: pick(over.t_grid_size, self.t_grid_size),
            output,
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        let missing = |field: &str| ConfigError::new(field, "missing");
        let scenario_name = self
            .scenario
            .as_deref()
            .ok_or_else(|| missing("scenario"))?;
        let scenario = Scenario::parse(scenario_name).ok_or_else(|| {
            ConfigError::new(
                "scenario",
                format!("unknown scenario {scenario_name:?} (siso_siso, miso_miso, siso_mimo)"),
            )
        })?;

        let schemes = match &self.schemes {
            None => default_schemes(scenario),
            Some(names) => parse_schemes(names, scenario)?,
        };

        let params = self.params.clone().unwrap_or_default();
        let params = SystemParams {
            p: params.p.ok_or_else(|| missing("params.p"))?,
            beta: params.beta.ok_or_else(|| missing("params.beta"))?,
            power: 1.0,
            antennas: params.antennas.ok_or_else(|| missing("params.M"))?,
            pathloss_exponent: params.pathloss_exponent.unwrap_or(2.0),
        };
        params.validate().map_err(|e| match e {
            cogradio_core::Error::InvalidParameter { name, reason } => {
                let name = if name == "antennas" { "M" } else { name };
                ConfigError::new(format!("params.{name}"), reason)
            }
            other => ConfigError::new("params", other.to_string()),
        })?;
        if scenario != Scenario::SisoSiso && params.antennas < 2 {
            return Err(ConfigError::new(
                "params.M",
                format!("{scenario} needs at least two antennas"),
            ));
        }

        let topology =
            resolve_topology(self.topology.as_ref().ok_or_else(|| missing("topology"))?)?;
        let p_db = resolve_sweep(self.sweep.as_ref().ok_or_else(|| missing("sweep"))?)?;

        let grid_size = self.t_grid_size.unwrap_or(DEFAULT_GRID_SIZE);
        if grid_size < 3 {
            return Err(ConfigError::new("t_grid_size", "must be at least 3"));
        }

        let format = match self.output.as_ref().and_then(|o| o.format.as_deref()) {
            None => None,
            Some(f) => Some(Format::parse(f).ok_or_else(|| {
                ConfigError::new("output.format", format!("unknown format {f:?} (csv, json)"))
            })?),
        };

        Ok(RunConfig {
            experiment: Experiment {
                scenario,
                schemes,
                params,
                topology,
                p_db,
                trials: self.trials.unwrap_or(0),
                seed: self.seed.unwrap_or(0),
                grid_size,
            },
            output_path: self.output.as_ref().and_then(|o| o.path.clone()),
            format,
        })
    }
}

pub fn parse_schemes(names: &[String], scenario: Scenario) -> Result<Vec<Scheme>, ConfigError> {
    if names.is_empty() {
        return Err(ConfigError::new("schemes", "must not be empty"));
    }
    let mut out = Vec::with_capacity(names.len());
    for name in names {
        let scheme = Scheme::parse(name).ok_or_else(|| {
            let known: Vec<_> = Scheme::ALL.iter().map(|s| s.name()).collect();
            ConfigError::new(
                "schemes",
                format!("unknown scheme {name:?} ({})", known.join(", ")),
            )
        })?;
        if !scheme.supports(scenario) {
            return Err(ConfigError::new(
                "schemes",
                format!("{scheme} does not apply to {scenario}"),
            ));
        }
        if !out.contains(&scheme) {
            out.push(scheme);
        }
    }
    Ok(out)
}

fn resolve_topology(t: &TopologyFile) -> Result<LinearTopology, ConfigError> {
    let spacing = [t.t_d, t.r_d, t.d_24];
    let positions = [t.tx1, t.tx2, t.rx2, t.rx1];
    let topology = match (
        spacing.iter().any(Option::is_some),
        positions.iter().any(Option::is_some),
    ) {
        (true, true) => {
            return Err(ConfigError::new(
                "topology",
                "give either t_d/r_d/d_24 or tx1/tx2/rx2/rx1, not both",
            ))
        }
        (false, false) => return Err(ConfigError::new("topology", "empty")),
        (true, false) => {
            let get = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| ConfigError::new(format!("topology.{name}"), "missing"))
            };
            let t_d = get(t.t_d, "t_d")?;
            let r_d = get(t.r_d, "r_d")?;
            let d_24 = get(t.d_24, "d_24")?;
            for (v, name) in [(t_d, "t_d"), (r_d, "r_d"), (d_24, "d_24")] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(ConfigError::new(
                        format!("topology.{name}"),
                        "must be finite and positive",
                    ));
                }
            }
            LinearTopology::from_spacing(t_d, r_d, d_24)
        }
        (false, true) => {
            let mut vals = [0.0; 4];
            for (slot, (v, name)) in vals
                .iter_mut()
                .zip(positions.into_iter().zip(["tx1", "tx2", "rx2", "rx1"]))
            {
                *slot = match v {
                    Some(x) if x.is_finite() => x,
                    Some(_) => {
                        return Err(ConfigError::new(
                            format!("topology.{name}"),
                            "must be finite",
                        ))
                    }
                    None => return Err(ConfigError::new(format!("topology.{name}"), "missing")),
                };
            }
            LinearTopology {
                pos_tx1: vals[0],
                pos_tx2: vals[1],
                pos_rx2: vals[2],
                pos_rx1: vals[3],
            }
        }
    };
    topology
        .validate()
        .map_err(|e| ConfigError::new("topology", e.to_string()))?;
    Ok(topology)
}

/// Largest number of SNR points a range may expand to.
const MAX_POINTS: f64 = 1e6;

fn resolve_sweep(s: &SweepFile) -> Result<Vec<f64>, ConfigError> {
    let range = [s.start, s.stop, s.step];
    let points = match (&s.list, range.iter().any(Option::is_some)) {
        (Some(_), true) => {
            return Err(ConfigError::new(
                "sweep",
                "give either start/stop/step or list, not both",
            ))
        }
        (Some(list), false) => list.clone(),
        (None, _) => {
            let get = |v: Option<f64>, name: &str| match v {
                Some(x) if x.is_finite() => Ok(x),
                Some(_) => Err(ConfigError::new(format!("sweep.{name}"), "must be finite")),
                None => Err(ConfigError::new(format!("sweep.{name}"), "missing")),
            };
            let (start, stop, step) = (
                get(s.start, "start")?,
                get(s.stop, "stop")?,
                get(s.step, "step")?,
            );
            expand_range(start, stop, step)?
        }
    };
    if points.is_empty() {
        return Err(ConfigError::new("sweep", "no SNR points"));
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(ConfigError::new("sweep.list", "values must be finite"));
    }
    Ok(points)
}

/// `start, start + step, …` up to `stop` inclusive (with slack for
/// rounding in the step count).
pub fn expand_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ConfigError> {
    if !(step > 0.0) {
        return Err(ConfigError::new("sweep.step", "must be positive"));
    }
    if stop < start {
        return Err(ConfigError::new("sweep.stop", "must not be below start"));
    }
    let count = ((stop - start) / step + 1e-9).floor();
    if !(count < MAX_POINTS) {
        return Err(ConfigError::new("sweep.step", "too many points"));
    }
    Ok((0..=count as usize)
        .map(|k| start + k as f64 * step)
        .collect())
}

/// Parses `start:stop:step`, a comma-separated list, or a single value.
pub fn parse_pdb(text: &str) -> Result<SweepFile, ConfigError> {
    let err = |msg: &str| ConfigError::new("--pdb", format!("{msg} in {text:?}"));
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| err("not a number"))
            .and_then(|x| {
                if x.is_finite() {
                    Ok(x)
                } else {
                    Err(err("non-finite value"))
                }
            })
    };
    if text.contains(':') {
        let parts: Vec<_> = text.split(':').collect();
        let [start, stop, step] = parts[..] else {
            return Err(err("expected start:stop:step"));
        };
        Ok(SweepFile {
            start: Some(num(start)?),
            stop: Some(num(stop)?),
            step: Some(num(step)?),
            list: None,
        })
    } else {
        let list = text.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
        Ok(SweepFile {
            list: Some(list),
            ..SweepFile::default()
        })
    }
}

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}
