//! Node geometry, path-loss gains and Rayleigh fading draws.
//!
//! Nodes 1 and 3 are the primary transmitter and receiver, nodes 2 and 4
//! the secondary (cognitive) pair. Noise has unit variance at every receive
//! antenna, so the secondary power `P` doubles as the SNR scale.
//!
//! Channel vectors at a multi-antenna transmitter are stored as columns
//! `h` whose received sample is `hᴴ·x`. Zero forcing against `h` therefore
//! means `Qᴴ·h = 0`. Under circular symmetry this convention is
//! statistically indistinguishable from the row form `h·x`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cxla::{CxMatrix, CxVector};
use crate::math::sqrt;
use crate::{Error, Result};

/// Scenario-wide scalars.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Probability that the primary is idle (state 1).
    pub p: f64,
    /// Primary-to-secondary long-term power ratio.
    pub beta: f64,
    /// Secondary long-term average power (noise-normalized).
    pub power: f64,
    /// Antennas per multi-antenna node.
    pub antennas: usize,
    pub pathloss_exponent: f64,
}

impl SystemParams {
    pub fn new(p: f64, beta: f64, power: f64, antennas: usize) -> Result<Self> {
        let params = Self {
            p,
            beta,
            power,
            antennas,
            pathloss_exponent: 2.0,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason| Err(Error::InvalidParameter { name, reason });
        if !(self.p.is_finite() && (0.0..=1.0).contains(&self.p)) {
            return bad("p", "must lie in [0, 1]");
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return bad("beta", "must be finite and nonnegative");
        }
        if !(self.power.is_finite() && self.power >= 0.0) {
            return bad("power", "must be finite and nonnegative");
        }
        if self.antennas == 0 {
            return bad("antennas", "must be at least 1");
        }
        if !(self.pathloss_exponent.is_finite() && self.pathloss_exponent > 0.0) {
            return bad("pathloss_exponent", "must be finite and positive");
        }
        Ok(())
    }

    pub fn with_power(mut self, power: f64) -> Self {
        self.power = power;
        self
    }

    /// Primary transmit power while active, `βP/(1−p)`; zero when `p = 1`
    /// because the active state never occurs.
    pub fn active_primary_power(&self) -> f64 {
        if self.p >= 1.0 {
            0.0
        } else {
            self.beta * self.power / (1.0 - self.p)
        }
    }

    /// Per-antenna primary power in the multi-antenna scenarios,
    /// `βP/((1−p)M)`.
    pub fn active_primary_power_per_antenna(&self) -> f64 {
        self.active_primary_power() / self.antennas as f64
    }

    /// State-1 power `P(1−t)/p`; zero when `p = 0`.
    pub fn idle_state_power(&self, t: f64) -> f64 {
        if self.p <= 0.0 {
            0.0
        } else {
            self.power * (1.0 - t) / self.p
        }
    }

    /// State-2 power `Pt/(1−p)`; zero when `p = 1`.
    pub fn active_state_power(&self, t: f64) -> f64 {
        if self.p >= 1.0 {
            0.0
        } else {
            self.power * t / (1.0 - self.p)
        }
    }
}

/// The five links, in the order coefficients are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    H12,
    H13,
    H14,
    H23,
    H24,
}

impl Link {
    pub const ALL: [Link; 5] = [Link::H12, Link::H13, Link::H14, Link::H23, Link::H24];
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Link::H12 => "h12",
            Link::H13 => "h13",
            Link::H14 => "h14",
            Link::H23 => "h23",
            Link::H24 => "h24",
        };
        f.write_str(s)
    }
}

/// Collinear node placement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTopology {
    pub pos_tx1: f64,
    pub pos_tx2: f64,
    pub pos_rx2: f64,
    pub pos_rx1: f64,
}

impl LinearTopology {
    /// Default layout: primary transmitter `t_d` behind the secondary one,
    /// secondary receiver at `d_24`, primary receiver `r_d` beyond it.
    pub fn from_spacing(t_d: f64, r_d: f64, d_24: f64) -> Self {
        Self {
            pos_tx1: -t_d,
            pos_tx2: 0.0,
            pos_rx2: d_24,
            pos_rx1: d_24 + r_d,
        }
    }

    pub fn distance(&self, link: Link) -> f64 {
        let (a, b) = match link {
            Link::H12 => (self.pos_tx1, self.pos_tx2),
            Link::H13 => (self.pos_tx1, self.pos_rx1),
            Link::H14 => (self.pos_tx1, self.pos_rx2),
            Link::H23 => (self.pos_tx2, self.pos_rx1),
            Link::H24 => (self.pos_tx2, self.pos_rx2),
        };
        (a - b).abs()
    }

    /// `d^{−γ}` for the link.
    pub fn path_gain(&self, link: Link, exponent: f64) -> Result<f64> {
        let d = self.distance(link);
        if !d.is_finite() {
            return Err(Error::NonFinite("topology"));
        }
        if d <= 0.0 {
            return Err(Error::ZeroDistance(link));
        }
        Ok(libm::pow(d, -exponent))
    }

    pub fn validate(&self) -> Result<()> {
        for link in Link::ALL {
            self.path_gain(link, 2.0)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    SisoSiso,
    MisoMiso,
    SisoMimo,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::SisoSiso => "siso_siso",
            Scenario::MisoMiso => "miso_miso",
            Scenario::SisoMimo => "siso_mimo",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "siso_siso" => Some(Scenario::SisoSiso),
            "miso_miso" => Some(Scenario::MisoMiso),
            "siso_mimo" => Some(Scenario::SisoMimo),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SisoChannel {
    pub h12: Complex64,
    pub h13: Complex64,
    pub h14: Complex64,
    pub h23: Complex64,
    pub h24: Complex64,
}

/// Multi-antenna primary and secondary transmitters, single-antenna receivers.
#[derive(Debug, Clone, PartialEq)]
pub struct MisoChannel {
    /// `M × M`, row = secondary-transmitter antenna.
    pub h12: CxMatrix,
    pub h13: CxVector,
    pub h14: CxVector,
    pub h23: CxVector,
    pub h24: CxVector,
}

/// Single-antenna primary pair, `M`-antenna secondary pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MimoChannel {
    pub h12: CxVector,
    pub h13: Complex64,
    /// Primary transmitter to the `M` secondary receive antennas.
    pub h14: CxVector,
    pub h23: CxVector,
    /// `M × M`, row = receive antenna, column = transmit antenna.
    pub h24: CxMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelRealization {
    SisoSiso(SisoChannel),
    MisoMiso(MisoChannel),
    SisoMimo(MimoChannel),
}

impl ChannelRealization {
    pub fn scenario(&self) -> Scenario {
        match self {
            ChannelRealization::SisoSiso(_) => Scenario::SisoSiso,
            ChannelRealization::MisoMiso(_) => Scenario::MisoMiso,
            ChannelRealization::SisoMimo(_) => Scenario::SisoMimo,
        }
    }

    /// Antenna count of the multi-antenna nodes (1 for SISO-SISO).
    pub fn antennas(&self) -> usize {
        match self {
            ChannelRealization::SisoSiso(_) => 1,
            ChannelRealization::MisoMiso(ch) => ch.h24.len(),
            ChannelRealization::SisoMimo(ch) => ch.h14.len(),
        }
    }

    /// Checks that every link has the shape its scenario requires.
    pub fn validate(&self) -> Result<()> {
        let expect = |expected: usize, actual: usize| {
            if expected == actual {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected, actual })
            }
        };
        match self {
            ChannelRealization::SisoSiso(ch) => {
                let all = [ch.h12, ch.h13, ch.h14, ch.h23, ch.h24];
                if all.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                    Ok(())
                } else {
                    Err(Error::NonFinite("channel"))
                }
            }
            ChannelRealization::MisoMiso(ch) => {
                let m = ch.h24.len();
                expect(m, ch.h12.rows())?;
                expect(m, ch.h12.cols())?;
                expect(m, ch.h13.len())?;
                expect(m, ch.h14.len())?;
                expect(m, ch.h23.len())
            }
            ChannelRealization::SisoMimo(ch) => {
                let m = ch.h14.len();
                expect(m, ch.h12.len())?;
                expect(m, ch.h23.len())?;
                expect(m, ch.h24.rows())?;
                expect(m, ch.h24.cols())?;
                if ch.h13.re.is_finite() && ch.h13.im.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonFinite("channel"))
                }
            }
        }
    }
}

/// Seed of one fading realization. Each `stream_index` selects an
/// independent ChaCha8 stream under the same key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed {
    pub seed: u64,
    pub stream_index: u64,
}

impl Seed {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        Self { seed, stream_index }
    }

    pub fn sampler(&self) -> ComplexGaussian {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_index);
        ComplexGaussian { rng }
    }
}

/// Circularly symmetric complex Gaussian source.
///
/// Each draw consumes two 64-bit words `w1`, `w2`, turned into uniforms
/// `u = (w >> 11)·2⁻⁵³ ∈ [0, 1)`. With `r = sqrt(−σ²·ln(1 − u1))` and
/// `θ = 2π·u2` the sample is `r·(cos θ + i·sin θ)` (Box–Muller), which has
/// independent real and imaginary parts of variance `σ²/2`.
pub struct ComplexGaussian {
    rng: ChaCha8Rng,
}

impl ComplexGaussian {
    fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn sample(&mut self, variance: f64) -> Complex64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = sqrt(-variance * libm::log(1.0 - u1));
        let theta = 2.0 * PI * u2;
        Complex64::new(r * libm::cos(theta), r * libm::sin(theta))
    }
}

/// Draws the five links in the fixed order h12, h13, h14, h23, h24,
/// row-major within each link. `draw` receives the link variance.
fn build(
    topology: &LinearTopology,
    params: &SystemParams,
    scenario: Scenario,
    mut draw: impl FnMut(f64) -> Complex64,
) -> Result<ChannelRealization> {
    params.validate()?;
    let mut gains = [0.0; 5];
    for (slot, link) in gains.iter_mut().zip(Link::ALL) {
        *slot = topology.path_gain(link, params.pathloss_exponent)?;
    }
    let [g12, g13, g14, g23, g24] = gains;
    let m = params.antennas;
    let mut vector = |n: usize, var: f64| -> Result<CxVector> {
        CxVector::new((0..n).map(|_| draw(var)).collect::<Vec<_>>())
    };
    Ok(match scenario {
        Scenario::SisoSiso => {
            let h12 = vector(1, g12)?[0];
            let h13 = vector(1, g13)?[0];
            let h14 = vector(1, g14)?[0];
            let h23 = vector(1, g23)?[0];
            let h24 = vector(1, g24)?[0];
            ChannelRealization::SisoSiso(SisoChannel {
                h12,
                h13,
                h14,
                h23,
                h24,
            })
        }
        Scenario::MisoMiso => {
            let h12 = CxMatrix::new(m, m, vector(m * m, g12)?.into_entries())?;
            let h13 = vector(m, g13)?;
            let h14 = vector(m, g14)?;
            let h23 = vector(m, g23)?;
            let h24 = vector(m, g24)?;
            ChannelRealization::MisoMiso(MisoChannel {
                h12,
                h13,
                h14,
                h23,
                h24,
            })
        }
        Scenario::SisoMimo => {
            let h12 = vector(m, g12)?;
            let h13 = vector(1, g13)?[0];
            let h14 = vector(m, g14)?;
            let h23 = vector(m, g23)?;
            let h24 = CxMatrix::new(m, m, vector(m * m, g24)?.into_entries())?;
            ChannelRealization::SisoMimo(MimoChannel {
                h12,
                h13,
                h14,
                h23,
                h24,
            })
        }
    })
}

/// Fixed path-loss coefficients: every entry is the real `d^{−γ/2}`.
pub fn deterministic_gains(
    topology: &LinearTopology,
    params: &SystemParams,
    scenario: Scenario,
) -> Result<ChannelRealization> {
    build(topology, params, scenario, |var| {
        Complex64::new(sqrt(var), 0.0)
    })
}

/// Independent `CN(0, d^{−γ})` coefficients, a pure function of `seed`.
pub fn sample_rayleigh(
    topology: &LinearTopology,
    params: &SystemParams,
    scenario: Scenario,
    seed: Seed,
) -> Result<ChannelRealization> {
    let mut source = seed.sampler();
    build(topology, params, scenario, |var| source.sample(var))
}
