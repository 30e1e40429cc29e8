//! Time-slotted simulator of a cooperative satellite-UAV-maritime IoT network.
//!
//! UAVs hover over sea-surface devices. In every slot each UAV first
//! gathers delay-sensitive (DS) tasks and runs them partly on board and
//! partly on a LEO satellite. It then switches to uplinking buffered
//! delay-tolerant (DT) data. [`solver::solve_slot_jcorm`] chooses the DS
//! transmit power, the satellite CPU share, the DT start time and the
//! offloading ratio of every UAV so as to maximize uplinked DT data minus
//! weighted energy.
//!
//! ```
//! use csamn::{config::ScenarioConfig, harness::run_experiment};
//!
//! let cfg = ScenarioConfig { num_slots: 2, ..ScenarioConfig::default() };
//! let result = run_experiment(&cfg, 7).unwrap();
//! assert_eq!(result.slots.len(), 2);
//! assert!(result.utility() > 0.0);
//! ```

pub mod baselines;
pub mod config;
pub mod error;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod scenario;
pub mod solver;

pub use config::{Algorithm, ScenarioConfig};
pub use error::{Error, ModelError, Result};
pub use harness::{run_experiment, ExperimentResult};
pub use scenario::{generate_scenario, NetworkState};
