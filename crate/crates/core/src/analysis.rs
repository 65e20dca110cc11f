//! Power-split optimization over `t`, scheme dispatch, Monte Carlo
//! averaging over fading, and multiplexing-gain slope estimation.

use alloc::vec::Vec;
use core::fmt;

use crate::channel::{
    deterministic_gains, sample_rayleigh, ChannelRealization, LinearTopology, Scenario, Seed,
    SisoChannel, SystemParams,
};
use crate::math::sqrt;
use crate::mimo::{self, MimoLink};
use crate::miso::{self, MisoLink, MisoScheme};
use crate::siso::{self, RootBranch};
use crate::{Error, Result};

pub const DEFAULT_GRID_SIZE: usize = 2001;

/// Final bracket width of the golden-section refinement.
pub const REFINE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub t_star: f64,
    pub rate: f64,
    /// Points where the objective failed and was scored as zero.
    pub failures: usize,
}

/// Maximizes `f` on `[lo, hi]` by golden-section search, assuming it is
/// unimodal there. Returns the best point visited.
pub fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes a rate over `t ∈ [0, 1]`: a uniform grid of `grid_size`
/// points, then golden-section refinement between the neighbours of the
/// best grid point. Ties keep the smallest `t`.
pub fn optimize_t<E>(mut rate_fn: impl FnMut(f64) -> Result<f64, E>, grid_size: usize) -> Optimum {
    let n = grid_size.max(3);
    let mut failures = 0;
    let mut eval = |t: f64| match rate_fn(t) {
        Ok(r) if !r.is_nan() => r,
        _ => {
            failures += 1;
            0.0
        }
    };
    let step = 1.0 / (n - 1) as f64;
    let mut best = (0, eval(0.0));
    for k in 1..n {
        let t = if k == n - 1 { 1.0 } else { k as f64 * step };
        let r = eval(t);
        if r > best.1 {
            best = (k, r);
        }
    }
    let t_grid = |k: usize| if k == n - 1 { 1.0 } else { k as f64 * step };
    let (k, grid_rate) = best;
    let lo = t_grid(k.saturating_sub(1));
    let hi = t_grid((k + 1).min(n - 1));
    let (t_ref, r_ref) = golden_section_max(&mut eval, lo, hi, REFINE_TOLERANCE);
    let (t_star, rate) = if r_ref > grid_rate {
        (t_ref, r_ref)
    } else {
        (t_grid(k), grid_rate)
    };
    Optimum {
        t_star,
        rate,
        failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Classical,
    DfDpc,
    FDpcNc,
    DDpcZf,
    DDpcZfNc,
    ZfMiso,
    ZfMimo,
}

impl Scheme {
    pub const ALL: [Scheme; 7] = [
        Scheme::Classical,
        Scheme::DfDpc,
        Scheme::FDpcNc,
        Scheme::DDpcZf,
        Scheme::DDpcZfNc,
        Scheme::ZfMiso,
        Scheme::ZfMimo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Classical => "classical",
            Scheme::DfDpc => "df_dpc",
            Scheme::FDpcNc => "f_dpc_nc",
            Scheme::DDpcZf => "d_dpc_zf",
            Scheme::DDpcZfNc => "d_dpc_zf_nc",
            Scheme::ZfMiso => "zf_miso",
            Scheme::ZfMimo => "zf_mimo",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|sch| sch.name() == s)
    }

    /// Scenario the scheme is defined for; `None` for the classical scheme,
    /// which applies to all of them.
    pub fn scenario(self) -> Option<Scenario> {
        match self {
            Scheme::Classical => None,
            Scheme::DfDpc | Scheme::FDpcNc => Some(Scenario::SisoSiso),
            Scheme::DDpcZf | Scheme::DDpcZfNc | Scheme::ZfMiso => Some(Scenario::MisoMiso),
            Scheme::ZfMimo => Some(Scenario::SisoMimo),
        }
    }

    pub fn supports(self, scenario: Scenario) -> bool {
        self.scenario().is_none_or(|s| s == scenario)
    }

    /// Theoretical multiplexing gain `lim R / log2 P`.
    pub fn reference_slope(self, scenario: Scenario, p: f64, antennas: usize) -> f64 {
        let m = antennas as f64;
        match self {
            Scheme::Classical => match scenario {
                Scenario::SisoMimo => p * m,
                Scenario::SisoSiso | Scenario::MisoMiso => p,
            },
            Scheme::DfDpc | Scheme::FDpcNc | Scheme::ZfMiso => p,
            Scheme::DDpcZf => p + (1.0 - p) * (1.0 - 1.0 / m),
            Scheme::DDpcZfNc => 1.0,
            Scheme::ZfMimo => p * m + (1.0 - p) * (m - 1.0),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Diagnostics {
    pub decodable: Option<bool>,
    pub weak_interference: Option<bool>,
    pub singular: Option<bool>,
    pub branch: Option<RootBranch>,
    /// Objective failures during the `t` search.
    pub failures: usize,
}

/// A scheme evaluated at its optimal power split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeEval {
    pub scheme: Scheme,
    pub total_rate: f64,
    pub t_star: f64,
    pub alpha: Option<f64>,
    pub u: Option<f64>,
    pub rate1: f64,
    pub rate2: f64,
    pub diagnostics: Diagnostics,
}

fn mismatch(scheme: Scheme) -> Error {
    Error::ScenarioMismatch(scheme.scenario().map_or("any", Scenario::name))
}

/// Total rate of one scheme on one realization as a function of `t`.
pub struct Objective<'a> {
    kind: ObjectiveKind<'a>,
    p: f64,
}

enum ObjectiveKind<'a> {
    Classical(f64),
    Siso(&'a SisoChannel, SystemParams, bool),
    Miso(MisoLink),
    Mimo(MimoLink),
}

impl<'a> Objective<'a> {
    pub fn new(scheme: Scheme, ch: &'a ChannelRealization, params: &SystemParams) -> Result<Self> {
        params.validate()?;
        let kind = match (scheme, ch) {
            (Scheme::Classical, _) => {
                ObjectiveKind::Classical(evaluate_scheme(scheme, ch, params, 3)?.rate1)
            }
            (Scheme::DfDpc, ChannelRealization::SisoSiso(c)) => {
                ObjectiveKind::Siso(c, *params, false)
            }
            (Scheme::FDpcNc, ChannelRealization::SisoSiso(c)) => {
                ObjectiveKind::Siso(c, *params, true)
            }
            (Scheme::DDpcZf, ChannelRealization::MisoMiso(c)) => {
                ObjectiveKind::Miso(MisoLink::new(c, params, MisoScheme::DDpcZf)?)
            }
            (Scheme::DDpcZfNc, ChannelRealization::MisoMiso(c)) => {
                ObjectiveKind::Miso(MisoLink::new(c, params, MisoScheme::DDpcZfNonCausal)?)
            }
            (Scheme::ZfMiso, ChannelRealization::MisoMiso(c)) => {
                ObjectiveKind::Miso(MisoLink::new(c, params, MisoScheme::Zf)?)
            }
            (Scheme::ZfMimo, ChannelRealization::SisoMimo(c)) => {
                ObjectiveKind::Mimo(MimoLink::new(c, params)?)
            }
            _ => return Err(mismatch(scheme)),
        };
        Ok(Self { kind, p: params.p })
    }

    pub fn total(&self, t: f64) -> Result<f64> {
        match &self.kind {
            ObjectiveKind::Classical(rate1) => Ok(self.p * rate1),
            ObjectiveKind::Siso(c, params, false) => {
                siso::rate_df_dpc(c, params, t).map(|r| r.total)
            }
            ObjectiveKind::Siso(c, params, true) => {
                siso::rate_f_dpc_noncausal(c, params, t).map(|r| r.total)
            }
            ObjectiveKind::Miso(link) => link.total(t),
            ObjectiveKind::Mimo(link) => link.total(t),
        }
    }
}

/// Evaluates `scheme` on one realization, maximized over `t`.
pub fn evaluate_scheme(
    scheme: Scheme,
    ch: &ChannelRealization,
    params: &SystemParams,
    grid_size: usize,
) -> Result<SchemeEval> {
    params.validate()?;
    let p = params.p;
    match (scheme, ch) {
        (Scheme::Classical, _) => {
            let rate1 = match ch {
                ChannelRealization::SisoSiso(c) => {
                    crate::math::log2_1p(c.h24.norm_sqr() * params.idle_state_power(0.0))
                }
                ChannelRealization::MisoMiso(c) => miso::rate_miso_state1(&c.h24, params, 0.0),
                ChannelRealization::SisoMimo(c) => {
                    let modes = crate::cxla::singular_values(&c.h24);
                    mimo::waterfill(&modes, params.idle_state_power(0.0))?.rate
                }
            };
            Ok(SchemeEval {
                scheme,
                total_rate: p * rate1,
                t_star: 0.0,
                alpha: None,
                u: None,
                rate1,
                rate2: 0.0,
                diagnostics: Diagnostics::default(),
            })
        }
        (Scheme::DfDpc | Scheme::FDpcNc, ChannelRealization::SisoSiso(c)) => {
            let rates = |t| match scheme {
                Scheme::DfDpc => siso::rate_df_dpc(c, params, t),
                _ => siso::rate_f_dpc_noncausal(c, params, t),
            };
            let best = optimize_t(|t| rates(t).map(|r| r.total), grid_size);
            let r = rates(best.t_star)?;
            Ok(SchemeEval {
                scheme,
                total_rate: r.total,
                t_star: best.t_star,
                alpha: Some(r.alpha),
                u: r.u,
                rate1: r.r1,
                rate2: r.r2,
                diagnostics: Diagnostics {
                    decodable: Some(r.decodable),
                    weak_interference: Some(r.weak_interference),
                    singular: None,
                    branch: r.branch,
                    failures: best.failures,
                },
            })
        }
        (Scheme::DDpcZf | Scheme::DDpcZfNc | Scheme::ZfMiso, ChannelRealization::MisoMiso(c)) => {
            let kind = match scheme {
                Scheme::DDpcZf => MisoScheme::DDpcZf,
                Scheme::DDpcZfNc => MisoScheme::DDpcZfNonCausal,
                _ => MisoScheme::Zf,
            };
            let link = MisoLink::new(c, params, kind)?;
            let best = optimize_t(|t| link.total(t), grid_size);
            let (rate1, rate2) = link.rates(best.t_star)?;
            let listens = kind == MisoScheme::DDpcZf;
            Ok(SchemeEval {
                scheme,
                total_rate: p * rate1 + (1.0 - p) * rate2,
                t_star: best.t_star,
                alpha: (kind != MisoScheme::Zf).then_some(link.alpha()),
                u: None,
                rate1,
                rate2,
                diagnostics: Diagnostics {
                    decodable: listens.then_some(link.alpha() < 1.0),
                    weak_interference: None,
                    singular: Some(link.zero_forced_gain() <= mimo::SINGULAR_THRESHOLD),
                    branch: None,
                    failures: best.failures,
                },
            })
        }
        (Scheme::ZfMimo, ChannelRealization::SisoMimo(c)) => {
            let link = MimoLink::new(c, params)?;
            let best = optimize_t(|t| link.total(t), grid_size);
            let (s1, s2) = link.states(best.t_star)?;
            Ok(SchemeEval {
                scheme,
                total_rate: p * s1.rate + (1.0 - p) * s2.rate,
                t_star: best.t_star,
                alpha: None,
                u: None,
                rate1: s1.rate,
                rate2: s2.rate,
                diagnostics: Diagnostics {
                    singular: Some(link.projections().singular),
                    failures: best.failures,
                    ..Diagnostics::default()
                },
            })
        }
        _ => Err(mismatch(scheme)),
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Slope of a rate curve in bits per doubling of `P` between two SNRs.
pub fn slope_between(rate_low: f64, rate_high: f64, p_db_low: f64, p_db_high: f64) -> f64 {
    let decades = (p_db_high - p_db_low) / 10.0;
    (rate_high - rate_low) / (decades * core::f64::consts::LOG2_10)
}

/// Slope of `rate(P)` between two SNRs given in dB.
pub fn slope_of(mut rate: impl FnMut(f64) -> f64, p_db_low: f64, p_db_high: f64) -> f64 {
    let low = rate(db_to_linear(p_db_low));
    let high = rate(db_to_linear(p_db_high));
    slope_between(low, high, p_db_low, p_db_high)
}

/// A sweep over SNR points and schemes, averaged over fading trials.
///
/// `trials = 0` evaluates the fixed path-loss gains once instead of
/// sampling fading. The same trial index always maps to the same fading
/// realization, at every SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub scenario: Scenario,
    pub schemes: Vec<Scheme>,
    /// `power` is replaced by each sweep point.
    pub params: SystemParams,
    pub topology: LinearTopology,
    pub p_db: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub grid_size: usize,
}

impl Experiment {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.topology.validate()?;
        if self.schemes.is_empty() {
            return Err(Error::Empty("schemes"));
        }
        if self.p_db.is_empty() {
            return Err(Error::Empty("p_db"));
        }
        if self.p_db.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("p_db"));
        }
        if self.grid_size < 3 {
            return Err(Error::InvalidParameter {
                name: "grid_size",
                reason: "must be at least 3",
            });
        }
        if self.scenario != Scenario::SisoSiso && self.params.antennas < 2 {
            return Err(Error::InvalidParameter {
                name: "antennas",
                reason: "multi-antenna scenarios need at least two antennas",
            });
        }
        if let Some(&bad) = self.schemes.iter().find(|s| !s.supports(self.scenario)) {
            return Err(mismatch(bad));
        }
        Ok(())
    }

    /// Fading realization of `trial`, or the path-loss gains for `None`.
    pub fn realization(&self, trial: Option<u64>) -> Result<ChannelRealization> {
        match trial {
            None => deterministic_gains(&self.topology, &self.params, self.scenario),
            Some(i) => sample_rayleigh(
                &self.topology,
                &self.params,
                self.scenario,
                Seed::new(self.seed, i),
            ),
        }
    }

    /// Trial indices to evaluate: `[None]` in path-loss mode.
    pub fn trial_indices(&self) -> Vec<Option<u64>> {
        if self.trials == 0 {
            alloc::vec![None]
        } else {
            (0..self.trials).map(Some).collect()
        }
    }
}

/// Evaluates every `(point, scheme)` pair on one realization, indexed
/// `[point][scheme]`.
pub fn evaluate_trial(exp: &Experiment, trial: Option<u64>) -> Result<Vec<Vec<SchemeEval>>> {
    let ch = exp.realization(trial)?;
    exp.p_db
        .iter()
        .map(|&db| {
            let params = exp.params.with_power(db_to_linear(db));
            exp.schemes
                .iter()
                .map(|&s| evaluate_scheme(s, &ch, &params, exp.grid_size))
                .collect()
        })
        .collect()
}

/// Per-scheme averages at one sweep point. Optional diagnostics are
/// averaged over the trials that report them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSummary {
    pub scheme: Scheme,
    pub rate: f64,
    /// Standard error of `rate` (zero for fewer than two trials).
    pub rate_stderr: f64,
    pub t_star: f64,
    pub alpha: Option<f64>,
    pub u: Option<f64>,
    pub rate1: f64,
    pub rate2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub p_db: f64,
    pub summaries: Vec<SchemeSummary>,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Default)]
struct Accumulator {
    n: f64,
    rate: f64,
    rate_sq: f64,
    t_star: f64,
    rate1: f64,
    rate2: f64,
    alpha: (f64, f64),
    u: (f64, f64),
}

impl Accumulator {
    fn push(&mut self, e: &SchemeEval) {
        self.n += 1.0;
        self.rate += e.total_rate;
        self.rate_sq += e.total_rate * e.total_rate;
        self.t_star += e.t_star;
        self.rate1 += e.rate1;
        self.rate2 += e.rate2;
        if let Some(a) = e.alpha {
            self.alpha.0 += a;
            self.alpha.1 += 1.0;
        }
        if let Some(u) = e.u {
            self.u.0 += u;
            self.u.1 += 1.0;
        }
    }

    fn finish(&self, scheme: Scheme) -> SchemeSummary {
        let n = self.n;
        let mean = self.rate / n;
        let rate_stderr = if n >= 2.0 {
            let var = ((self.rate_sq - n * mean * mean) / (n - 1.0)).max(0.0);
            sqrt(var / n)
        } else {
            0.0
        };
        let avg = |(sum, count): (f64, f64)| (count > 0.0).then(|| sum / count);
        SchemeSummary {
            scheme,
            rate: mean,
            rate_stderr,
            t_star: self.t_star / n,
            alpha: avg(self.alpha),
            u: avg(self.u),
            rate1: self.rate1 / n,
            rate2: self.rate2 / n,
        }
    }
}

/// Streaming reduction of per-trial results. Trials must be pushed in
/// trial order for the sums to be reproducible.
pub struct SweepAccumulator<'a> {
    exp: &'a Experiment,
    /// Indexed `[point · schemes + scheme]`.
    cells: Vec<Accumulator>,
}

impl<'a> SweepAccumulator<'a> {
    pub fn new(exp: &'a Experiment) -> Self {
        let n = exp.p_db.len() * exp.schemes.len();
        Self {
            exp,
            cells: (0..n).map(|_| Accumulator::default()).collect(),
        }
    }

    /// Adds one trial, indexed `[point][scheme]` as returned by
    /// [`evaluate_trial`].
    pub fn push(&mut self, trial: &[Vec<SchemeEval>]) {
        let width = self.exp.schemes.len();
        for (pi, row) in trial.iter().enumerate() {
            for (si, eval) in row.iter().enumerate() {
                self.cells[pi * width + si].push(eval);
            }
        }
    }

    pub fn finish(self) -> Vec<SweepPoint> {
        let exp = self.exp;
        let width = exp.schemes.len();
        exp.p_db
            .iter()
            .enumerate()
            .map(|(pi, &p_db)| SweepPoint {
                p_db,
                summaries: exp
                    .schemes
                    .iter()
                    .enumerate()
                    .map(|(si, &scheme)| self.cells[pi * width + si].finish(scheme))
                    .collect(),
                trials: exp.trials,
                seed: exp.seed,
            })
            .collect()
    }
}

/// Reduces per-trial results (in trial order) into sweep points.
pub fn summarize(exp: &Experiment, per_trial: &[Vec<Vec<SchemeEval>>]) -> Vec<SweepPoint> {
    let mut acc = SweepAccumulator::new(exp);
    for trial in per_trial {
        acc.push(trial);
    }
    acc.finish()
}

/// Runs the whole sweep sequentially.
pub fn monte_carlo_sweep(exp: &Experiment) -> Result<Vec<SweepPoint>> {
    exp.validate()?;
    let per_trial = exp
        .trial_indices()
        .into_iter()
        .map(|trial| evaluate_trial(exp, trial))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize(exp, &per_trial))
}

/// Slope of the trial-averaged optimized rate of `scheme` between two SNRs,
/// with common random numbers at both points.
pub fn multiplexing_slope(
    exp: &Experiment,
    scheme: Scheme,
    p_db_low: f64,
    p_db_high: f64,
) -> Result<f64> {
    if !(p_db_high > p_db_low) {
        return Err(Error::InvalidParameter {
            name: "p_db_high",
            reason: "must exceed p_db_low",
        });
    }
    let exp = Experiment {
        schemes: alloc::vec![scheme],
        p_db: alloc::vec![p_db_low, p_db_high],
        ..exp.clone()
    };
    let points = monte_carlo_sweep(&exp)?;
    Ok(slope_between(
        points[0].summaries[0].rate,
        points[1].summaries[0].rate,
        p_db_low,
        p_db_high,
    ))
}
