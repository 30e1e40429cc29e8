//! Comparison schemes sharing the model and metrics pipeline with JCORM.

mod atsm;
mod ga;
mod no_offload;

pub use atsm::{solve_slot_atsm, Atsm};
pub use ga::{ga_fitness, solve_slot_ga, Ga, GaConfig};
pub use no_offload::{solve_slot_no_offload, NoOffload};
