//! Achievable rates, power splits and multiplexing gains for generalized
//! cognitive-radio links, where the secondary pair may reuse the spectrum
//! both while the primary user is idle and while it is active.
//!
//! Three link configurations are covered:
//!
//! - SISO-SISO: classical, decode-forward with dirty-paper coding
//!   ([`siso::rate_df_dpc`]) and its genie-aided variant.
//! - MISO-MISO: decode, dirty-paper code and zero-force
//!   ([`miso::rate_d_dpc_zf`]) plus plain zero forcing.
//! - SISO-MIMO: transmit/receive zero forcing with spatial water-filling
//!   ([`mimo::rate_zf_mimo`]).
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and
//! parallel Monte Carlo live in the `cogradio` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod channel;
pub mod cxla;
mod error;
mod math;
pub mod mimo;
pub mod miso;
pub mod siso;

pub use error::{Error, Result};
pub use num_complex::Complex64;
