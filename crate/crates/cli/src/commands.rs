//! Subcommands and the parallel sweep driver.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cogradio_core::analysis::{
    evaluate_scheme, evaluate_trial, slope_between, Experiment, SweepAccumulator, SweepPoint,
};
use rayon::prelude::*;

use crate::channel_file::load_channel;
use crate::config::{
    parse_pdb, ConfigError, ConfigFile, Format, OutputFile, ParamsFile, Preset, RunConfig,
};
use crate::output::{self, SlopeRow};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "cogradio",
    version,
    about = "Rates of generalized cognitive-radio links"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every scheme at one SNR point, with diagnostics (JSON)
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        /// Fixed channel file; overrides the sampled or path-loss channel
        #[arg(long)]
        channel: Option<PathBuf>,
        /// Fading trial to evaluate when trials > 0
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Rate curves over an SNR sweep (CSV or JSON)
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo sweep with standard errors; needs trials > 0
    Mc {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Multiplexing-gain estimates against their theoretical values (JSON)
    Slope {
        #[command(flatten)]
        common: CommonArgs,
        /// Lower SNR in dB
        #[arg(long, default_value_t = 60.0, allow_hyphen_values = true)]
        low: f64,
        /// Upper SNR in dB
        #[arg(long, default_value_t = 100.0, allow_hyphen_values = true)]
        high: f64,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON configuration layered over the preset
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Base preset: fig2 (default) or fig3
    #[arg(long)]
    pub preset: Option<String>,
    /// siso_siso, miso_miso or siso_mimo
    #[arg(long)]
    pub scenario: Option<String>,
    /// Comma-separated scheme names
    #[arg(long, value_delimiter = ',')]
    pub scheme: Option<Vec<String>>,
    /// SNR points in dB: start:stop:step, a comma list, or one value
    #[arg(long, allow_hyphen_values = true)]
    pub pdb: Option<String>,
    /// Number of antennas M
    #[arg(long = "antennas", short = 'M')]
    pub antennas: Option<usize>,
    /// Fading trials; 0 uses fixed path-loss gains
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Worker threads; all cores when absent
    #[arg(long)]
    pub threads: Option<usize>,
}

impl CommonArgs {
    /// Preset, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig, ConfigError> {
        self.layers()?.resolve()
    }

    fn layers(&self) -> Result<ConfigFile, ConfigError> {
        let preset = match self.preset.as_deref() {
            None => Preset::Fig2,
            Some(name) => Preset::parse(name).ok_or_else(|| {
                ConfigError::new("--preset", format!("unknown preset {name:?} (fig2, fig3)"))
            })?,
        };
        let mut merged = preset.config();
        if let Some(path) = &self.config {
            merged = merged.overlay(ConfigFile::load(path)?);
        }
        let flags = ConfigFile {
            scenario: self.scenario.clone(),
            schemes: self.scheme.clone(),
            params: self.antennas.map(|m| ParamsFile {
                antennas: Some(m),
                ..ParamsFile::default()
            }),
            sweep: self.pdb.as_deref().map(parse_pdb).transpose()?,
            trials: self.trials,
            seed: self.seed,
            output: (self.out.is_some() || self.format.is_some()).then(|| OutputFile {
                path: self.out.clone(),
                format: self.format.clone(),
            }),
            ..ConfigFile::default()
        };
        if self.threads == Some(0) {
            return Err(ConfigError::new("--threads", "must be at least 1"));
        }
        Ok(merged.overlay(flags))
    }
}

/// Runs every trial in parallel and reduces the results in trial order,
/// so the output does not depend on the thread count.
pub fn run_sweep(exp: &Experiment, threads: Option<usize>) -> Result<Vec<SweepPoint>, CliError> {
    exp.validate()?;
    const CHUNK: u64 = 256;
    let indices = exp.trial_indices();
    let work = || -> Result<Vec<SweepPoint>, CliError> {
        let mut acc = SweepAccumulator::new(exp);
        for chunk in indices.chunks(CHUNK as usize) {
            let results = chunk
                .par_iter()
                .map(|&trial| evaluate_trial(exp, trial))
                .collect::<Result<Vec<_>, _>>()?;
            for trial in &results {
                acc.push(trial);
            }
        }
        Ok(acc.finish())
    };
    match threads {
        None => work(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Io {
                path: "thread pool".into(),
                source: std::io::Error::other(e),
            })?
            .install(work),
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

fn json_only(cfg: &RunConfig, command: &str) -> Result<(), ConfigError> {
    match cfg.format {
        Some(Format::Csv) => Err(ConfigError::new(
            "output.format",
            format!("{command} writes JSON only"),
        )),
        _ => Ok(()),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval {
            common,
            channel,
            trial,
        } => {
            let mut layers = common.layers()?;
            let fixed = channel.as_deref().map(load_channel).transpose()?;
            if let Some(ch) = &fixed {
                // The file fixes the scenario and antenna count.
                layers.scenario = Some(ch.scenario().name().into());
                let params = layers.params.get_or_insert_with(ParamsFile::default);
                params.antennas = Some(ch.antennas());
            }
            let cfg = layers.resolve()?;
            json_only(&cfg, "eval")?;
            let exp = &cfg.experiment;
            let [p_db] = exp.p_db[..] else {
                return Err(ConfigError::new("--pdb", "eval takes exactly one SNR point").into());
            };
            exp.validate()?;
            let trial = (exp.trials > 0).then_some(trial);
            let ch = match fixed {
                Some(ch) => ch,
                None => exp.realization(trial)?,
            };
            let params = exp
                .params
                .with_power(cogradio_core::analysis::db_to_linear(p_db));
            let evals = exp
                .schemes
                .iter()
                .map(|&s| evaluate_scheme(s, &ch, &params, exp.grid_size))
                .collect::<Result<Vec<_>, _>>()?;
            let doc = output::eval_json(exp, p_db, trial, &ch, &evals);
            emit(cfg.output_path.as_deref(), &output::to_text(&doc))
        }
        Command::Sweep { common } => {
            let cfg = common.resolve()?;
            let points = run_sweep(&cfg.experiment, common.threads)?;
            let text = match cfg.format.unwrap_or(Format::Csv) {
                Format::Csv => output::sweep_csv(&points, false),
                Format::Json => output::to_text(&output::sweep_json(&cfg.experiment, &points)),
            };
            emit(cfg.output_path.as_deref(), &text)
        }
        Command::Mc { common } => {
            let cfg = common.resolve()?;
            if cfg.experiment.trials == 0 {
                return Err(
                    ConfigError::new("trials", "mc needs at least one fading trial").into(),
                );
            }
            let points = run_sweep(&cfg.experiment, common.threads)?;
            let text = match cfg.format.unwrap_or(Format::Csv) {
                Format::Csv => output::sweep_csv(&points, true),
                Format::Json => output::to_text(&output::sweep_json(&cfg.experiment, &points)),
            };
            emit(cfg.output_path.as_deref(), &text)
        }
        Command::Slope { common, low, high } => {
            let mut cfg = common.resolve()?;
            json_only(&cfg, "slope")?;
            if !(low.is_finite() && high.is_finite() && high > low) {
                return Err(ConfigError::new("--high", "must exceed --low").into());
            }
            cfg.experiment.p_db = vec![low, high];
            let exp = &cfg.experiment;
            let points = run_sweep(exp, common.threads)?;
            let rows: Vec<SlopeRow> = exp
                .schemes
                .iter()
                .enumerate()
                .map(|(i, &scheme)| SlopeRow {
                    scheme: scheme.name(),
                    slope: slope_between(
                        points[0].summaries[i].rate,
                        points[1].summaries[i].rate,
                        low,
                        high,
                    ),
                    reference: scheme.reference_slope(
                        exp.scenario,
                        exp.params.p,
                        exp.params.antennas,
                    ),
                })
                .collect();
            let doc = output::slope_json(exp, low, high, &rows);
            emit(cfg.output_path.as_deref(), &output::to_text(&doc))
        }
    }
}
