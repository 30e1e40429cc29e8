//! DS task completion time: device offload, local and satellite branches.

use super::{ComputeParams, UavDecision};
use crate::error::ModelError;

/// Breakdown of one UAV's DS processing time in a slot (s).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DsTiming {
    /// Devices to UAV; the slowest device dominates.
    pub offload: f64,
    pub local_compute: f64,
    pub uplink: f64,
    pub leo_compute: f64,
    pub propagation: f64,
    /// `uplink + leo_compute + 2·propagation`, or 0 when nothing is offloaded.
    pub satellite_branch: f64,
}

impl DsTiming {
    /// Completion time `offload + max(local, satellite)`.
    pub fn total(&self) -> f64 {
        self.offload + self.local_compute.max(self.satellite_branch)
    }

    /// Completion time if only the local branch had to finish.
    pub fn local_path(&self) -> f64 {
        self.offload + self.local_compute
    }

    /// Completion time if only the satellite branch had to finish.
    pub fn satellite_path(&self) -> f64 {
        self.offload + self.satellite_branch
    }
}

/// Time to gather every DS task at the UAV, `max_k D_k / R_k`.
pub fn ds_offload_time(bits: &[f64], rates: &[f64]) -> Result<f64, ModelError> {
    let mut worst = 0.0f64;
    for (device, (&d, &r)) in bits.iter().zip(rates).enumerate() {
        if d <= 0.0 {
            continue;
        }
        if !(r > 0.0) {
            return Err(ModelError::ZeroDeviceRate { device, bits: d });
        }
        worst = worst.max(d / r);
    }
    Ok(worst)
}

/// DS timing given a precomputed device offload time and total DS load.
///
/// `ds_uplink_rate` is the UAV-to-satellite DS rate at `decision.p_sens`.
pub fn ds_timing(
    decision: &UavDecision,
    offload_time: f64,
    ds_total_bits: f64,
    ds_uplink_rate: f64,
    compute: &ComputeParams,
    propagation_delay: f64,
) -> Result<DsTiming, ModelError> {
    let gamma = decision.gamma;
    let local_compute = compute.cycles_per_bit * (1.0 - gamma) * ds_total_bits / compute.uav_cpu_hz;
    let offloaded = gamma * ds_total_bits;
    let mut timing = DsTiming {
        offload: offload_time,
        local_compute,
        propagation: propagation_delay,
        ..DsTiming::default()
    };
    if offloaded > 0.0 {
        if !(decision.f_leo > 0.0) {
            return Err(ModelError::NoSatelliteCompute { gamma });
        }
        if !(ds_uplink_rate > 0.0) {
            return Err(ModelError::ZeroUplinkRate { gamma });
        }
        timing.uplink = offloaded / ds_uplink_rate;
        timing.leo_compute = compute.cycles_per_bit * offloaded / decision.f_leo;
        timing.satellite_branch = timing.uplink + timing.leo_compute + 2.0 * propagation_delay;
    }
    Ok(timing)
}

/// Full DS completion time from per-device task sizes and rates.
pub fn ds_completion_time(
    decision: &UavDecision,
    task_bits: &[f64],
    device_rates: &[f64],
    ds_uplink_rate: f64,
    compute: &ComputeParams,
    propagation_delay: f64,
) -> Result<DsTiming, ModelError> {
    let offload = ds_offload_time(task_bits, device_rates)?;
    let total: f64 = task_bits.iter().sum();
    ds_timing(decision, offload, total, ds_uplink_rate, compute, propagation_delay)
}
