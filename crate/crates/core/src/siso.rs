//! SISO-SISO schemes: classical, decode-forward with dirty-paper coding
//! (DF-DPC), its genie-aided non-causal variant (F-DPC), and the high-SNR
//! offset `G(t)` of the latter.
//!
//! During an active block the cognitive transmitter listens for a fraction
//! `α` of the block, decodes the primary message, then spends a fraction
//! `u` of its power on its own dirty-paper coded signal and `1 − u` on
//! relaying the primary signal so that the primary rate is unchanged.

use crate::analysis::optimize_t;
use crate::channel::{SisoChannel, SystemParams};
use crate::math::{log2, log2_1p, sqrt};
use crate::{Complex64, Error, Result};

/// Slack allowed when clamping a power-split root into `[0, 1]`.
pub const ROOT_TOLERANCE: f64 = 1e-9;

/// Which sign of `±√δ` produced the power split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootBranch {
    Plus,
    Minus,
}

impl RootBranch {
    pub fn name(self) -> &'static str {
        match self {
            RootBranch::Plus => "plus",
            RootBranch::Minus => "minus",
        }
    }

    fn sign(self) -> f64 {
        match self {
            RootBranch::Plus => 1.0,
            RootBranch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub u: f64,
    /// `None` when the split is trivially 1 (no primary power, no
    /// cross link, or no secondary power).
    pub branch: Option<RootBranch>,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SisoStateRates {
    pub alpha: f64,
    pub u: Option<f64>,
    pub branch: Option<RootBranch>,
    pub delta: Option<f64>,
    /// Instantaneous state-1 rate.
    pub r1: f64,
    /// State-2 rate averaged over the whole active block, `(1 − α)·R_c`.
    pub r2: f64,
    pub total: f64,
    /// Primary rate with the cognitive user present.
    pub rp_check: f64,
    /// `|h23| ≤ |h24|`.
    pub weak_interference: bool,
    /// `α < 1`.
    pub decodable: bool,
}

/// Listening fraction: `log(1 + |h13|²βP/(1−p)) / log(1 + |h12|²βP/(1−p))`.
///
/// Zero when the primary is silent or `h13 = 0`. Values `≥ 1` mean the
/// cognitive transmitter cannot decode within the block.
pub fn alpha_siso(h13: Complex64, h12: Complex64, params: &SystemParams) -> Result<f64> {
    let primary = params.active_primary_power();
    let g13 = h13.norm_sqr();
    if primary == 0.0 || g13 == 0.0 {
        return Ok(0.0);
    }
    let g12 = h12.norm_sqr();
    if g12 == 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(libm::log1p(g13 * primary) / libm::log1p(g12 * primary))
}

/// Primary rate the cognitive user must preserve, `log2(1 + |h13|²βP/(1−p))`.
pub fn primary_target_rate(h13: Complex64, params: &SystemParams) -> f64 {
    log2_1p(h13.norm_sqr() * params.active_primary_power())
}

/// Primary rate while the cognitive user splits its power as `(u, 1 − u)`.
pub fn primary_rate_rp(
    h13: Complex64,
    h23: Complex64,
    u: f64,
    t: f64,
    alpha: f64,
    params: &SystemParams,
) -> f64 {
    if params.power == 0.0 {
        return 0.0;
    }
    let a = h13.norm() * sqrt(params.beta);
    let b = h23.norm();
    let s = t / (1.0 - alpha);
    let coherent = a + b * sqrt(((1.0 - u) * s).max(0.0));
    let interference = b * b * u * s + (1.0 - params.p) / params.power;
    log2_1p(coherent * coherent / interference)
}

/// Power fraction `u` that keeps the primary rate at its target.
///
/// Both roots of the quadratic behind the closed form are evaluated; the
/// ones within `[0, 1]` (up to [`ROOT_TOLERANCE`]) are kept and the larger
/// `u`, which maximizes the cognitive rate, wins.
pub fn power_split_u(
    h13: Complex64,
    h23: Complex64,
    alpha: f64,
    t: f64,
    params: &SystemParams,
) -> Result<PowerSplit> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            reason: "must lie in [0, 1)",
        });
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "must lie in (0, 1]",
        });
    }
    let p = params.p;
    let power = params.power;
    let a = h13.norm() * sqrt(params.beta);
    let b = h23.norm();
    let c = sqrt(1.0 - alpha) * (1.0 - p);
    let denom = 1.0 - p + a * a * power;
    let delta = c * c + power * b * b * t * denom;
    if params.active_primary_power() == 0.0 || power == 0.0 || b == 0.0 {
        return Ok(PowerSplit {
            u: 1.0,
            branch: None,
            delta,
        });
    }
    let root = sqrt(delta);
    let scale = b * sqrt(t);
    // Bracketed term of the closed form, a·(−c ± √δ)/(b·√t·D). The plus
    // branch is rewritten as a·P·b·√t/(√δ + c) to avoid cancellation.
    let x_plus = a * power * scale / (root + c);
    let x_minus = -a * (c + root) / (scale * denom);
    // u = 1 − x², expanded with the quadratic x satisfies so that small u
    // at high power is not lost to cancellation.
    let split = |x: f64| (1.0 - p) * (1.0 + 2.0 * a * x * sqrt(1.0 - alpha) / scale) / denom;
    let u_plus = split(x_plus);
    let u_minus = split(x_minus);

    let admissible = |u: f64| (-ROOT_TOLERANCE..=1.0 + ROOT_TOLERANCE).contains(&u);
    let best = [(u_plus, RootBranch::Plus), (u_minus, RootBranch::Minus)]
        .into_iter()
        .filter(|&(u, _)| admissible(u))
        .fold(None, |acc: Option<(f64, RootBranch)>, cand| match acc {
            Some(prev) if prev.0 >= cand.0 => Some(prev),
            _ => Some(cand),
        });
    match best {
        Some((u, branch)) => Ok(PowerSplit {
            u: u.clamp(0.0, 1.0),
            branch: Some(branch),
            delta,
        }),
        None => Err(Error::NoValidRoot {
            plus: u_plus,
            minus: u_minus,
        }),
    }
}

fn check_t(t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            reason: "must lie in [0, 1]",
        })
    }
}

fn rates_with_alpha(
    ch: &SisoChannel,
    params: &SystemParams,
    t: f64,
    alpha: f64,
) -> Result<SisoStateRates> {
    check_t(t)?;
    let g24 = ch.h24.norm_sqr();
    let p = params.p;
    let r1 = log2_1p(g24 * params.idle_state_power(t));
    let decodable = alpha < 1.0;
    let target = primary_target_rate(ch.h13, params);
    let mut out = SisoStateRates {
        alpha,
        u: None,
        branch: None,
        delta: None,
        r1,
        r2: 0.0,
        total: p * r1,
        rp_check: target,
        weak_interference: ch.h23.norm() <= ch.h24.norm(),
        decodable,
    };
    if decodable && t > 0.0 && p < 1.0 {
        let split = power_split_u(ch.h13, ch.h23, alpha, t, params)?;
        let listen = 1.0 - alpha;
        out.r2 = listen * log2_1p(g24 * params.active_state_power(t) * split.u / listen);
        out.u = Some(split.u);
        out.branch = split.branch;
        out.delta = Some(split.delta);
        out.rp_check = primary_rate_rp(ch.h13, ch.h23, split.u, t, alpha, params);
        out.total = p * r1 + (1.0 - p) * out.r2;
    }
    Ok(out)
}

/// Classical rate: the cognitive user transmits only while the primary is
/// idle, `p·log2(1 + |h24|²P/p)`.
pub fn classical_rate(ch: &SisoChannel, params: &SystemParams) -> f64 {
    params.p * log2_1p(ch.h24.norm_sqr() * params.idle_state_power(0.0))
}

/// DF-DPC rates at power-allocation parameter `t`.
pub fn rate_df_dpc(ch: &SisoChannel, params: &SystemParams, t: f64) -> Result<SisoStateRates> {
    let alpha = alpha_siso(ch.h13, ch.h12, params)?;
    rates_with_alpha(ch, params, t, alpha)
}

/// F-DPC with the primary message known non-causally (no listening).
pub fn rate_f_dpc_noncausal(
    ch: &SisoChannel,
    params: &SystemParams,
    t: f64,
) -> Result<SisoStateRates> {
    rates_with_alpha(ch, params, t, 0.0)
}

/// High-SNR gap `G(t) = lim (R^(nc)(t) − R^(c))` of the non-causal scheme.
///
/// `G(t) = p·log2(1−t) + (1−p)·log2(1 + |h24|²(|h23|t ± 2|h13|√(βt)) / (|h23||h13|²β))`
/// where the sign follows `branch`.
pub fn asymptotic_gain(
    ch: &SisoChannel,
    params: &SystemParams,
    t: f64,
    branch: RootBranch,
) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            reason: "must lie in (0, 1)",
        });
    }
    let a = ch.h13.norm();
    let b = ch.h23.norm();
    let beta = params.beta;
    if a == 0.0 || b == 0.0 || !(beta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "channel",
            reason: "|h13|, |h23| and beta must be positive",
        });
    }
    let idle = 1.0 - t;
    let active = 1.0
        + ch.h24.norm_sqr() * (b * t + branch.sign() * 2.0 * a * sqrt(beta * t))
            / (b * a * a * beta);
    if active <= 0.0 {
        return Err(Error::NonPositiveLogArgument(active));
    }
    Ok(params.p * log2(idle) + (1.0 - params.p) * log2(active))
}

/// Branch of `G(t)` matching the root [`power_split_u`] selects for the
/// non-causal scheme, probed at `t = 1/2`.
pub fn selected_branch(ch: &SisoChannel, params: &SystemParams) -> RootBranch {
    power_split_u(ch.h13, ch.h23, 0.0, 0.5, params)
        .ok()
        .and_then(|s| s.branch)
        .unwrap_or(RootBranch::Plus)
}

/// `G = max_t G(t)` and its maximizer.
pub fn asymptotic_gain_max(
    ch: &SisoChannel,
    params: &SystemParams,
    grid_size: usize,
) -> Result<(f64, f64)> {
    let branch = selected_branch(ch, params);
    // Validate once so that precondition failures surface as errors.
    asymptotic_gain(ch, params, 0.5, RootBranch::Plus)?;
    let best = optimize_t(
        |t| {
            if t <= 0.0 {
                // Both logarithm arguments tend to 1.
                Ok(0.0)
            } else if t >= 1.0 {
                Ok(f64::NEG_INFINITY)
            } else {
                asymptotic_gain(ch, params, t, branch)
            }
        },
        grid_size,
    );
    Ok((best.t_star, best.rate))
}
