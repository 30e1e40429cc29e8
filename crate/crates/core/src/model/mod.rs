//! Closed-form physical model of the satellite-UAV-maritime network.
//!
//! Everything here is a pure function of its inputs. Buffers advance only
//! through [`dt_collection_step`] / [`StorageState::advance`], which return
//! new values.

mod channel;
mod decision;
mod energy;
mod geometry;
mod params;
mod slot;
mod storage;
mod timing;

pub use channel::{
    device_uav_gain, device_uav_rate, leo_rate_from_gain, path_loss, rician_power, uav_leo_gain, uav_leo_rate,
    MaritimeChannelParams, SatLinkParams, TaskKind,
};
pub use decision::{SlotDecision, UavDecision};
pub use energy::{slot_energy, EnergyBreakdown};
pub use geometry::SatelliteGeometry;
pub use params::{db_to_linear, dbm_to_watts, ComputeParams, Point3, SlotSchedule};
pub use slot::{SlotContext, SlotEvaluation, UavOutcome, UavSlotState, Violation};
pub use storage::{dt_collection_step, DtStep, StorageState};
pub use timing::{ds_completion_time, ds_offload_time, ds_timing, DsTiming};
