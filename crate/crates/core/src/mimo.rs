//! SISO-MIMO dual zero forcing with spatial water-filling.
//!
//! While the primary is active the secondary transmitter precodes with
//! `Q_t` (columns orthogonal to `h23`) and the secondary receiver projects
//! with `Q_r` (rows orthogonal to `h14`), leaving an interference-free
//! `(M−1) × (M−1)` channel `Q_r·H24·Q_t`.

use alloc::vec;
use alloc::vec::Vec;

use crate::channel::{MimoChannel, SystemParams};
use crate::cxla::{self, CxMatrix, CxVector};
use crate::math::log2_1p;
use crate::{Error, Result};

/// Singular values at or below this are treated as a nulled mode.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WaterfillResult {
    pub water_level: f64,
    /// Per-mode powers, aligned with the input gains.
    pub powers: Vec<f64>,
    pub rate: f64,
    /// Every gain was zero while the budget was positive.
    pub all_modes_zero: bool,
}

/// Water-filling of `budget` over parallel modes with singular values
/// `lambdas`: `P_i = max(μ − 1/λ_i², 0)` with `Σ P_i = budget`.
///
/// The active set is found exactly: modes are sorted by gain and added while
/// the implied water level stays above the next mode's floor `1/λ²`.
pub fn waterfill(lambdas: &[f64], budget: f64) -> Result<WaterfillResult> {
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "budget",
            reason: "must be finite and nonnegative",
        });
    }
    if lambdas.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return Err(Error::InvalidParameter {
            name: "lambdas",
            reason: "must be finite and nonnegative",
        });
    }
    let n = lambdas.len();
    let mut powers = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).filter(|&i| lambdas[i] > 0.0).collect();
    order.sort_by(|&a, &b| lambdas[b].total_cmp(&lambdas[a]));
    if order.is_empty() || budget == 0.0 {
        return Ok(WaterfillResult {
            water_level: 0.0,
            powers,
            rate: 0.0,
            all_modes_zero: order.is_empty() && budget > 0.0,
        });
    }
    let floor = |i: usize| 1.0 / (lambdas[i] * lambdas[i]);

    let mut active = 1;
    let mut floors = floor(order[0]);
    for (k, &i) in order.iter().enumerate().skip(1) {
        let level = (budget + floors + floor(i)) / (k + 1) as f64;
        if level > floor(i) {
            active = k + 1;
            floors += floor(i);
        } else {
            break;
        }
    }
    let active = &order[..active];
    // P_i = (budget + Σ_j (1/λ_j² − 1/λ_i²)) / k keeps the sum exact even
    // when the floors dwarf the budget.
    let k = active.len() as f64;
    for &i in active {
        let spread: f64 = active.iter().map(|&j| floor(j) - floor(i)).sum();
        powers[i] = ((budget + spread) / k).max(0.0);
    }
    let weakest = *active.last().unwrap();
    let water_level = powers[weakest] + floor(weakest);
    let rate = active
        .iter()
        .map(|&i| log2_1p(powers[i] * lambdas[i] * lambdas[i]))
        .sum();
    Ok(WaterfillResult {
        water_level,
        powers,
        rate,
        all_modes_zero: false,
    })
}

/// Zero-forcing projections and the resulting effective channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Projections {
    /// `M × (M−1)`, `Q_tᴴ·h23 = 0`.
    pub q_t: CxMatrix,
    /// `(M−1) × M`, `Q_r·h14 = 0`.
    pub q_r: CxMatrix,
    pub h24_eff: CxMatrix,
    pub singular_values: Vec<f64>,
    /// All singular values of the effective channel vanish.
    pub singular: bool,
}

pub fn effective_channel(h24: &CxMatrix, h14: &CxVector, h23: &CxVector) -> Result<Projections> {
    let m = h14.len();
    if m < 2 {
        return Err(Error::InvalidParameter {
            name: "antennas",
            reason: "zero forcing needs at least two antennas",
        });
    }
    if h24.rows() != m || h24.cols() != h23.len() {
        return Err(Error::DimensionMismatch {
            expected: m,
            actual: h24.rows(),
        });
    }
    let q_t = cxla::orthonormal_complement(h23)?;
    let q_r = cxla::hermitian(&cxla::orthonormal_complement(h14)?);
    let h24_eff = q_r.mul(h24)?.mul(&q_t)?;
    let singular_values = cxla::singular_values(&h24_eff);
    let singular = singular_values.iter().all(|&s| s <= SINGULAR_THRESHOLD);
    Ok(Projections {
        q_t,
        q_r,
        h24_eff,
        singular_values,
        singular,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MimoEval {
    pub projections: Projections,
    pub state1: WaterfillResult,
    pub state2: WaterfillResult,
    pub total: f64,
}

/// Precomputed, `t`-independent parts of the dual-ZF scheme.
#[derive(Debug, Clone)]
pub struct MimoLink {
    params: SystemParams,
    direct: Vec<f64>,
    projections: Projections,
}

impl MimoLink {
    pub fn new(ch: &MimoChannel, params: &SystemParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            params: *params,
            direct: cxla::singular_values(&ch.h24),
            projections: effective_channel(&ch.h24, &ch.h14, &ch.h23)?,
        })
    }

    pub fn projections(&self) -> &Projections {
        &self.projections
    }

    pub fn states(&self, t: f64) -> Result<(WaterfillResult, WaterfillResult)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: "must lie in [0, 1]",
            });
        }
        let idle = waterfill(&self.direct, self.params.idle_state_power(t))?;
        let active = if self.projections.singular {
            waterfill(&[], 0.0)?
        } else {
            waterfill(
                &self.projections.singular_values,
                self.params.active_state_power(t),
            )?
        };
        Ok((idle, active))
    }

    pub fn total(&self, t: f64) -> Result<f64> {
        let (s1, s2) = self.states(t)?;
        Ok(self.params.p * s1.rate + (1.0 - self.params.p) * s2.rate)
    }

    pub fn eval(&self, t: f64) -> Result<MimoEval> {
        let (state1, state2) = self.states(t)?;
        Ok(MimoEval {
            projections: self.projections.clone(),
            total: self.params.p * state1.rate + (1.0 - self.params.p) * state2.rate,
            state1,
            state2,
        })
    }
}

/// Dual-ZF rates at `t`.
pub fn rate_zf_mimo(ch: &MimoChannel, params: &SystemParams, t: f64) -> Result<MimoEval> {
    MimoLink::new(ch, params)?.eval(t)
}

/// Classical MIMO rate: water-filling over `H24` in the idle state only.
pub fn classical_rate(ch: &MimoChannel, params: &SystemParams) -> Result<f64> {
    let idle = waterfill(
        &cxla::singular_values(&ch.h24),
        params.idle_state_power(0.0),
    )?;
    Ok(params.p * idle.rate)
}

/// Sum degrees of freedom of the `M1 × M2 × M3 × M4` MIMO interference
/// channel: `min{M1+M2, M3+M4, max(M1,M4), max(M2,M3)}`.
pub fn dof_sum_bound(m1: u32, m2: u32, m3: u32, m4: u32) -> u32 {
    (m1 + m2).min(m3 + m4).min(m1.max(m4)).min(m2.max(m3))
}
