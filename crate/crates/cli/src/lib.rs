//! Command-line front end for `cogradio-core`: configuration files and
//! presets, fixed-channel files, parallel Monte Carlo sweeps, and CSV/JSON
//! output.

pub mod channel_file;
pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

pub use channel_file::ChannelFileError;
pub use commands::{run, Cli};
pub use config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    ChannelFile(#[from] ChannelFileError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] cogradio_core::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the inputs, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::ChannelFile(_) => 2,
            CliError::Io { .. } | CliError::Core(_) => 1,
        }
    }
}
