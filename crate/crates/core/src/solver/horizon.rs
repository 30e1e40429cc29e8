use crate::config::ScenarioConfig;
use crate::error::Result;
use crate::model::{SlotContext, StorageState};
use crate::scenario::NetworkState;

use super::SlotSolution;

/// A per-slot decision rule: JCORM or one of the baselines.
pub trait SlotPolicy: Sync {
    fn name(&self) -> &'static str;

    /// Decides slot `slot` given its frozen context.
    fn solve_slot(&self, ctx: &SlotContext, slot: usize) -> Result<SlotSolution>;
}

/// One solved slot together with the buffers it started from.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotRecord {
    pub slot: usize,
    pub storage_before: StorageState,
    pub solution: SlotSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonRun {
    pub slots: Vec<SlotRecord>,
    pub final_storage: StorageState,
}

impl HorizonRun {
    /// Horizon utility `Σ_t (Σ_u uplinked − ω·E)` (bits).
    pub fn utility(&self) -> f64 {
        self.slots.iter().map(|r| r.solution.evaluation.utility).sum()
    }
}

/// Solves every slot of `net` in order, carrying the UAV buffers forward.
/// Infeasible slots are recorded and the horizon continues.
pub fn run_horizon(cfg: &ScenarioConfig, net: &NetworkState, policy: &dyn SlotPolicy) -> Result<HorizonRun> {
    let mut storage = net.initial_storage.clone();
    let mut slots = Vec::with_capacity(net.num_slots());
    for t in 0..net.num_slots() {
        let ctx = net.slot_context(cfg, t, &storage)?;
        let solution = policy.solve_slot(&ctx, t)?;
        let steps: Vec<_> = solution.evaluation.uavs.iter().map(|o| o.dt).collect();
        let next = storage.advance(&steps);
        slots.push(SlotRecord { slot: t, storage_before: std::mem::replace(&mut storage, next), solution });
    }
    Ok(HorizonRun { slots, final_storage: storage })
}
