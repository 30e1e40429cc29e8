//! Per-slot view of the network and evaluation of a candidate decision.
//!
//! A [`SlotContext`] freezes everything that does not depend on the
//! decision: DS loads and device rates, the aggregate DT collection rate,
//! satellite gain and propagation delay, and the UAV buffers. Solvers,
//! baselines and oracles all score decisions through [`SlotContext::evaluate`].

use super::energy::{slot_energy, EnergyBreakdown};
use super::storage::{dt_collection_step, DtStep};
use super::timing::{ds_timing, DsTiming};
use super::{ComputeParams, SatLinkParams, SlotDecision, UavDecision};
use crate::error::ModelError;

/// Decision-independent state of one UAV in one slot.
#[derive(Debug, Clone, PartialEq)]
pub struct UavSlotState {
    pub ds_bits: Vec<f64>,
    pub ds_rates: Vec<f64>,
    pub ds_total_bits: f64,
    /// Time for the slowest DS device to hand over its task (s).
    pub offload_time: f64,
    /// Sum of DT device rates into this UAV (bit/s).
    pub dt_rate_sum: f64,
    pub remaining_bits: f64,
}

impl UavSlotState {
    pub fn new(ds_bits: Vec<f64>, ds_rates: Vec<f64>, dt_rate_sum: f64, remaining_bits: f64) -> Result<Self, ModelError> {
        let offload_time = super::timing::ds_offload_time(&ds_bits, &ds_rates)?;
        let ds_total_bits = ds_bits.iter().sum();
        Ok(Self { ds_bits, ds_rates, ds_total_bits, offload_time, dt_rate_sum, remaining_bits })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlotContext {
    pub uavs: Vec<UavSlotState>,
    pub compute: ComputeParams,
    pub link: SatLinkParams,
    /// UAV-to-satellite channel gain (same for every UAV).
    pub leo_gain: f64,
    pub propagation_delay: f64,
    /// DT uplink rate at the fixed DT power.
    pub dt_uplink_rate: f64,
    pub slot_len: f64,
    pub omega: f64,
    pub capacity_bits: f64,
}

/// Constraint violations of one UAV's decision, in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Violation {
    /// Distance outside the variable boxes, each measured relative to the box width.
    pub bounds: f64,
    /// `l − δ_tol` when positive (s).
    pub deadline: f64,
    /// Collection beyond free storage (bits).
    pub storage: f64,
}

impl Violation {
    pub fn is_clear(&self) -> bool {
        self.bounds == 0.0 && self.deadline == 0.0 && self.storage == 0.0
    }

    /// Scale-free violation total: seconds over slot length, bits over capacity.
    pub fn normalized(&self, slot_len: f64, capacity_bits: f64) -> f64 {
        self.bounds + self.deadline / slot_len + self.storage / capacity_bits.max(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavOutcome {
    pub timing: DsTiming,
    pub dt: DtStep,
    pub energy: EnergyBreakdown,
    /// `uplinked − ω·energy` for this UAV (bits).
    pub utility: f64,
    pub violation: Violation,
}

impl UavOutcome {
    pub fn ds_delay(&self) -> f64 {
        self.timing.total()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlotEvaluation {
    pub uavs: Vec<UavOutcome>,
    /// Slot utility `Σ uplinked − ω·E` (bits).
    pub utility: f64,
    /// Satellite CPU oversubscription `Σ f − F_LEO` when positive.
    pub cpu_budget_excess: f64,
}

impl SlotEvaluation {
    pub fn energy(&self) -> EnergyBreakdown {
        self.uavs.iter().map(|o| o.energy).sum()
    }

    pub fn uplinked(&self) -> f64 {
        self.uavs.iter().map(|o| o.dt.uplinked).sum()
    }

    pub fn is_feasible(&self) -> bool {
        self.cpu_budget_excess == 0.0 && self.uavs.iter().all(|o| o.violation.is_clear())
    }
}

fn box_excess(v: f64, lo: f64, hi: f64) -> f64 {
    let width = (hi - lo).max(f64::MIN_POSITIVE);
    ((lo - v).max(0.0) + (v - hi).max(0.0)) / width
}

impl SlotContext {
    pub fn num_uavs(&self) -> usize {
        self.uavs.len()
    }

    /// DS uplink rate of one UAV at power `p`.
    pub fn ds_uplink_rate(&self, p: f64) -> f64 {
        super::channel::leo_rate_from_gain(p, self.leo_gain, &self.link, self.num_uavs())
    }

    pub fn backlog(&self, u: usize) -> f64 {
        self.capacity_bits - self.uavs[u].remaining_bits
    }

    pub fn timing(&self, u: usize, d: &UavDecision) -> Result<DsTiming, ModelError> {
        let s = &self.uavs[u];
        ds_timing(d, s.offload_time, s.ds_total_bits, self.ds_uplink_rate(d.p_sens), &self.compute, self.propagation_delay)
    }

    pub fn evaluate_uav(&self, u: usize, d: &UavDecision) -> Result<UavOutcome, ModelError> {
        let s = &self.uavs[u];
        let timing = self.timing(u, d)?;
        let dt = dt_collection_step(
            s.remaining_bits,
            self.capacity_bits,
            s.dt_rate_sum,
            self.dt_uplink_rate,
            d.delta_tol,
            self.slot_len,
        );
        let energy = slot_energy(d, s.ds_total_bits, timing.uplink, self.link.dt_uplink_power_w, self.slot_len, &self.compute);
        let utility = dt.uplinked - self.omega * energy.total();
        let violation = Violation {
            bounds: box_excess(d.gamma, 0.0, 1.0)
                + box_excess(d.delta_tol, 0.0, self.slot_len)
                + box_excess(d.f_leo, 0.0, self.compute.leo_cpu_hz)
                + box_excess(d.p_sens, 0.0, self.link.max_tx_power_w),
            deadline: (timing.total() - d.delta_tol).max(0.0),
            storage: dt.overflow_bits,
        };
        Ok(UavOutcome { timing, dt, energy, utility, violation })
    }

    pub fn evaluate(&self, decision: &SlotDecision) -> Result<SlotEvaluation, ModelError> {
        let uavs = decision
            .uavs
            .iter()
            .enumerate()
            .map(|(u, d)| self.evaluate_uav(u, d))
            .collect::<Result<Vec<_>, _>>()?;
        let utility = uavs.iter().map(|o| o.utility).sum();
        let cpu_budget_excess = (decision.total_leo_cpu() - self.compute.leo_cpu_hz).max(0.0);
        Ok(SlotEvaluation { uavs, utility, cpu_budget_excess })
    }
}
