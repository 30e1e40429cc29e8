use thiserror::Error;

/// Failures of the closed-form model evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("degenerate satellite geometry: {0}")]
    DegenerateGeometry(&'static str),
    #[error("device and UAV are colocated (zero distance)")]
    ZeroDistance,
    #[error("no {0} devices are attached to this UAV")]
    EmptyGroup(&'static str),
    #[error("offloading ratio {gamma} > 0 but no satellite compute is allocated")]
    NoSatelliteCompute { gamma: f64 },
    #[error("offloading ratio {gamma} > 0 but the UAV-satellite DS rate is zero")]
    ZeroUplinkRate { gamma: f64 },
    #[error("device {device} has {bits} bits to send over a zero-rate link")]
    ZeroDeviceRate { device: usize, bits: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

/// Crate-level error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors caused by bad user input (config file, CLI values).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Model(ModelError::InvalidParameter { .. }))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
