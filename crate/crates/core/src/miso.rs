//! MISO-MISO schemes: matched-filter transmission while the primary is
//! idle, then either decode/DPC/zero-force (D-DPC-ZF) or plain zero forcing
//! with the primary signal treated as noise (ZF) while it is active.

use crate::channel::{MisoChannel, SystemParams};
use crate::cxla::{self, CxMatrix, CxVector};
use crate::math::log2_1p;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MisoScheme {
    DDpcZf,
    /// D-DPC-ZF with the primary message known non-causally (`α = 0`).
    DDpcZfNonCausal,
    Zf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MisoEval {
    pub scheme: MisoScheme,
    pub alpha: f64,
    pub q_t: CxMatrix,
    /// `Q_tᴴ·h24`; its squared norm is the zero-forced channel gain.
    pub h24_tilde: CxVector,
    pub r1: f64,
    pub r2: f64,
    pub total: f64,
}

/// State-1 rate with matched beamforming, `log2(1 + P(1−t)/p·‖h24‖²)`.
pub fn rate_miso_state1(h24: &CxVector, params: &SystemParams, t: f64) -> f64 {
    log2_1p(params.idle_state_power(t) * h24.norm_sqr())
}

/// Listening fraction with an `M`-antenna primary transmitter sending
/// isotropic Gaussian signals of per-antenna power `βP/((1−p)M)`:
/// `log2(1 + c·‖h13‖²) / log2 det(I + c·H12·H12ᴴ)`.
pub fn alpha_miso(h12: &CxMatrix, h13: &CxVector, params: &SystemParams) -> Result<f64> {
    let c = params.active_primary_power_per_antenna();
    let g13 = h13.norm_sqr();
    if c == 0.0 || g13 == 0.0 {
        return Ok(0.0);
    }
    let gram = h12.mul(&cxla::hermitian(h12))?;
    let listen = cxla::log_det_identity_plus(c, &gram)?;
    if listen <= 0.0 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(log2_1p(c * g13) / listen)
}

/// Precomputed, `t`-independent parts of a MISO scheme.
#[derive(Debug, Clone)]
pub struct MisoLink {
    scheme: MisoScheme,
    params: SystemParams,
    alpha: f64,
    q_t: CxMatrix,
    h24_tilde: CxVector,
    gain24: f64,
    gain_tilde: f64,
    /// `1 + βP/((1−p)M)·‖h14‖²`, the ZF receiver's noise-plus-interference.
    interference: f64,
}

impl MisoLink {
    pub fn new(ch: &MisoChannel, params: &SystemParams, scheme: MisoScheme) -> Result<Self> {
        params.validate()?;
        let m = ch.h24.len();
        if m < 2 {
            return Err(Error::InvalidParameter {
                name: "antennas",
                reason: "zero forcing needs at least two transmit antennas",
            });
        }
        let q_t = cxla::orthonormal_complement(&ch.h23)?;
        let h24_tilde = cxla::hermitian(&q_t).mul_vec(&ch.h24)?;
        let alpha = match scheme {
            MisoScheme::DDpcZf => alpha_miso(&ch.h12, &ch.h13, params)?,
            MisoScheme::DDpcZfNonCausal | MisoScheme::Zf => 0.0,
        };
        Ok(Self {
            scheme,
            params: *params,
            alpha,
            gain24: ch.h24.norm_sqr(),
            gain_tilde: h24_tilde.norm_sqr(),
            interference: 1.0 + params.active_primary_power_per_antenna() * ch.h14.norm_sqr(),
            q_t,
            h24_tilde,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `‖h̃24‖²`.
    pub fn zero_forced_gain(&self) -> f64 {
        self.gain_tilde
    }

    /// `(r1, r2)` at power-allocation parameter `t`.
    pub fn rates(&self, t: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: "must lie in [0, 1]",
            });
        }
        let params = &self.params;
        let r1 = log2_1p(params.idle_state_power(t) * self.gain24);
        let snr = params.active_state_power(t) * self.gain_tilde;
        let r2 = match self.scheme {
            MisoScheme::DDpcZf | MisoScheme::DDpcZfNonCausal => {
                let listen = 1.0 - self.alpha;
                // α = 1 is treated as undecodable by continuity.
                if listen > 0.0 {
                    listen * log2_1p(snr / listen)
                } else {
                    0.0
                }
            }
            MisoScheme::Zf => log2_1p(snr / self.interference),
        };
        Ok((r1, r2))
    }

    pub fn total(&self, t: f64) -> Result<f64> {
        let (r1, r2) = self.rates(t)?;
        Ok(self.params.p * r1 + (1.0 - self.params.p) * r2)
    }

    pub fn eval(&self, t: f64) -> Result<MisoEval> {
        let (r1, r2) = self.rates(t)?;
        Ok(MisoEval {
            scheme: self.scheme,
            alpha: self.alpha,
            q_t: self.q_t.clone(),
            h24_tilde: self.h24_tilde.clone(),
            r1,
            r2,
            total: self.params.p * r1 + (1.0 - self.params.p) * r2,
        })
    }
}

/// D-DPC-ZF rates at `t`.
pub fn rate_d_dpc_zf(ch: &MisoChannel, params: &SystemParams, t: f64) -> Result<MisoEval> {
    MisoLink::new(ch, params, MisoScheme::DDpcZf)?.eval(t)
}

/// D-DPC-ZF with `α = 0`.
pub fn rate_d_dpc_zf_noncausal(
    ch: &MisoChannel,
    params: &SystemParams,
    t: f64,
) -> Result<MisoEval> {
    MisoLink::new(ch, params, MisoScheme::DDpcZfNonCausal)?.eval(t)
}

/// Transmit zero forcing without listening; the primary is noise.
pub fn rate_zf_miso(ch: &MisoChannel, params: &SystemParams, t: f64) -> Result<MisoEval> {
    MisoLink::new(ch, params, MisoScheme::Zf)?.eval(t)
}

/// Classical MISO rate, `p·log2(1 + P/p·‖h24‖²)`.
pub fn classical_rate(ch: &MisoChannel, params: &SystemParams) -> f64 {
    params.p * rate_miso_state1(&ch.h24, params, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Complex64;
    use alloc::vec;

    fn v(xs: &[f64]) -> CxVector {
        CxVector::from_real(xs).unwrap()
    }

    fn channel(h23: &[f64], h24: &[f64], h13: &[f64]) -> MisoChannel {
        MisoChannel {
            h12: CxMatrix::identity(2),
            h13: v(h13),
            h14: v(&[0.5, 0.5]),
            h23: v(h23),
            h24: v(h24),
        }
    }

    #[test]
    fn state_one_examples() {
        let params = SystemParams::new(0.5, 1.0, 1.0, 2).unwrap();
        // P(1−t)/p = 1 at t = 1/2.
        let r = rate_miso_state1(&v(&[1.0, 1.0]), &params, 0.5);
        assert!((r - 3f64.log2()).abs() < 1e-14);
        assert_eq!(rate_miso_state1(&v(&[1.0, 1.0]), &params, 1.0), 0.0);
        let single = rate_miso_state1(&v(&[0.8]), &params, 0.2);
        let siso = (1.0 + 0.64 * 1.0 * 0.8 / 0.5f64).log2();
        assert!((single - siso).abs() < 1e-14);
    }

    #[test]
    fn alpha_examples() {
        // βP/((1−p)M) = 1 with p = 0.5, M = 2, βP = 1.
        let params = SystemParams::new(0.5, 1.0, 1.0, 2).unwrap();
        let a = alpha_miso(&CxMatrix::identity(2), &v(&[1.0, 0.0]), &params).unwrap();
        assert!((a - 0.5).abs() < 1e-14);
        assert_eq!(
            alpha_miso(&CxMatrix::identity(2), &v(&[0.0, 0.0]), &params).unwrap(),
            0.0
        );
        assert_eq!(
            alpha_miso(&CxMatrix::zeros(2, 2), &v(&[1.0, 0.0]), &params),
            Err(Error::DegenerateDenominator)
        );
    }

    #[test]
    fn t_zero_is_classical() {
        let params = SystemParams::new(0.1, 1.0, 100.0, 2).unwrap();
        let ch = channel(&[1.0, 0.3], &[0.2, 0.9], &[0.3, 0.1]);
        let classical = classical_rate(&ch, &params);
        for scheme in [
            MisoScheme::DDpcZf,
            MisoScheme::DDpcZfNonCausal,
            MisoScheme::Zf,
        ] {
            let link = MisoLink::new(&ch, &params, scheme).unwrap();
            assert!((link.total(0.0).unwrap() - classical).abs() < 1e-14);
        }
    }

    #[test]
    fn parallel_channels_null_the_secondary() {
        let params = SystemParams::new(0.1, 1.0, 100.0, 2).unwrap();
        let ch = channel(&[1.0, 2.0], &[0.5, 1.0], &[0.3, 0.1]);
        for t in [0.2, 0.7, 1.0] {
            let eval = rate_d_dpc_zf(&ch, &params, t).unwrap();
            assert!(eval.h24_tilde.norm() < 1e-15);
            assert!(eval.r2.abs() < 1e-14);
        }
    }

    #[test]
    fn undecodable_primary_gives_no_active_rate() {
        let params = SystemParams::new(0.1, 1.0, 100.0, 2).unwrap();
        let mut ch = channel(&[1.0, 0.0], &[0.5, 1.0], &[5.0, 5.0]);
        ch.h12 = CxMatrix::diag(&[0.1, 0.1]);
        let eval = rate_d_dpc_zf(&ch, &params, 0.5).unwrap();
        assert!(eval.alpha > 1.0);
        assert_eq!(eval.r2, 0.0);
    }

    #[test]
    fn zf_without_primary_interference() {
        let params = SystemParams::new(0.2, 1.0, 10.0, 2).unwrap();
        let mut ch = channel(&[1.0, 0.0], &[0.5, 1.0], &[0.3, 0.1]);
        ch.h14 = v(&[0.0, 0.0]);
        let zf = rate_zf_miso(&ch, &params, 0.4).unwrap();
        let genie = rate_d_dpc_zf_noncausal(&ch, &params, 0.4).unwrap();
        assert!((zf.r2 - genie.r2).abs() < 1e-14);
        assert!((zf.r2 - (1.0 + 10.0 * 0.4 / 0.8 * 1.0f64).log2()).abs() < 1e-14);
    }

    #[test]
    fn complex_channels_are_projected_hermitian_wise() {
        let params = SystemParams::new(0.2, 1.0, 10.0, 2).unwrap();
        let h23 = CxVector::new(vec![Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.9)]).unwrap();
        let ch = MisoChannel {
            h12: CxMatrix::identity(2),
            h13: v(&[0.1, 0.1]),
            h14: v(&[0.1, 0.1]),
            h23: h23.clone(),
            h24: CxVector::new(vec![Complex64::new(1.0, -0.5), Complex64::new(0.2, 0.1)]).unwrap(),
        };
        let eval = rate_zf_miso(&ch, &params, 0.5).unwrap();
        let leak = cxla::hermitian(&eval.q_t).mul_vec(&h23).unwrap();
        assert!(leak.norm() < 1e-15);
        // ‖Q_tᴴh24‖² = ‖h24‖² − |h23ᴴh24|²/‖h23‖²
        let proj = ch.h24.norm_sqr() - h23.dot(&ch.h24).norm_sqr() / h23.norm_sqr();
        assert!((eval.h24_tilde.norm_sqr() - proj).abs() < 1e-14);
    }
}
