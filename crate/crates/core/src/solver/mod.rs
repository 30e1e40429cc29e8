//! Per-slot optimization: the four block solvers and the alternating loop.
//!
//! Each block solver optimizes one decision variable per UAV with the other
//! three held fixed, and reports the UAVs for which its feasible set was
//! empty. [`solve_slot_jcorm`] chains them, and [`run_horizon`] threads the
//! UAV buffers across slots for any [`SlotPolicy`].

mod compute;
mod horizon;
mod init;
mod jcorm;
mod power;
mod ratio;
mod start_time;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::model::{SlotContext, SlotDecision, SlotEvaluation, UavDecision};

pub use compute::{solve_sp2, solve_sp2_uav, sp2_objective};
pub use horizon::{run_horizon, HorizonRun, SlotPolicy, SlotRecord};
pub use init::initial_decision;
pub use jcorm::{fallback_decision, solve_slot_jcorm, Jcorm, JcormSettings};
pub use power::{solve_sp1, solve_sp1_uav, sp1_objective, DinkelbachState, PowerSolution};
pub use ratio::{solve_sp4, solve_sp4_uav, sp4_objective};
pub use start_time::{solve_sp3, solve_sp3_uav, sp3_objective, StartTimeBounds};

/// How the start-time block treats the DS deadline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverMode {
    /// Both the local and the satellite branch must finish before `δ_tol`.
    #[default]
    Strict,
    /// Only the average of the two branches is bounded, and no fallback is applied.
    PaperRelaxed,
}

impl std::str::FromStr for SolverMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "strict" => Ok(SolverMode::Strict),
            "paper-relaxed" => Ok(SolverMode::PaperRelaxed),
            _ => Err(crate::Error::config(format!("unknown mode `{s}` (expected strict|paper-relaxed)"))),
        }
    }
}

/// Starting point of the alternating loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitStrategy {
    /// Full power, satellite CPU split to minimize the summed DS completion
    /// time, offloading ratio balancing the two branches, and the earliest
    /// feasible DT start.
    #[default]
    DeadlineTight,
    /// Midpoint of every box.
    Interior,
}

/// Iteration caps, tolerances and the subgradient step schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Dinkelbach stopping threshold on the parametric objective.
    pub eps: f64,
    /// Inner subgradient stopping threshold, relative to `pmax`.
    pub xi: f64,
    /// Alternating-loop stopping threshold on the slot objective (bits).
    pub tau: f64,
    pub r_max: usize,
    pub j_max: usize,
    pub i_max: usize,
    /// Step size `a / (b + j)` of the multiplier updates.
    pub step_a: f64,
    pub step_b: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { eps: 0.01, xi: 0.01, tau: 0.01, r_max: 50, j_max: 50, i_max: 50, step_a: 0.1, step_b: 1.0 }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name, reason: &str| Err(ModelError::InvalidParameter { name, reason: reason.into() });
        for (name, v) in [("eps", self.eps), ("xi", self.xi), ("tau", self.tau), ("step_a", self.step_a)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(name, "must be a finite value > 0");
            }
        }
        if !(self.step_b >= 0.0) {
            return bad("step_b", "must be >= 0");
        }
        for (name, v) in [("r_max", self.r_max), ("j_max", self.j_max), ("i_max", self.i_max)] {
            if v == 0 {
                return bad(name, "must be >= 1");
            }
        }
        Ok(())
    }

    pub(crate) fn step(&self, j: usize) -> f64 {
        self.step_a / (self.step_b + j as f64)
    }
}

/// Reasons a block could not satisfy its constraints for one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockFlag {
    /// No power up to `pmax` meets the satellite-branch deadline.
    PowerDeadline,
    /// The satellite-branch deadline needs more CPU than the satellite has.
    ComputeCap,
    /// The per-UAV CPU minima overrun the satellite budget and were scaled down.
    ComputeBudget,
    /// The DT start-time interval is empty.
    StartTimeEmpty,
    /// The offloading-ratio interval is empty.
    RatioEmpty,
    /// The final decision failed the constraint check and was replaced.
    Fallback,
}

/// One flag raised by a block for one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagEvent {
    pub iteration: usize,
    pub uav: usize,
    pub flag: BlockFlag,
}

/// Diagnostics of one slot solve.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlotSolveTrace {
    /// Slot objective after initialization and after every accepted iteration (bits).
    pub objective: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// An iteration lowered the objective and was rolled back.
    pub reverted: bool,
    /// Time spent in each block, in block order.
    pub block_time: [Duration; 4],
    pub flags: Vec<FlagEvent>,
    /// Final multiplier state of the power block per UAV.
    pub dinkelbach: Vec<DinkelbachState>,
}

impl SlotSolveTrace {
    /// True when no recorded step lowered the objective by more than `rel_tol`.
    pub fn is_non_decreasing(&self, rel_tol: f64) -> bool {
        self.objective.windows(2).all(|w| w[1] >= w[0] - rel_tol * w[0].abs().max(1.0))
    }

    pub(crate) fn flag(&mut self, iteration: usize, uav: usize, flag: BlockFlag) {
        self.flags.push(FlagEvent { iteration, uav, flag });
    }
}

/// Result of solving one slot with any policy.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotSolution {
    pub decision: SlotDecision,
    pub evaluation: SlotEvaluation,
    pub trace: SlotSolveTrace,
    /// The slot ended on a decision that violates a constraint or on the fallback.
    pub infeasible: bool,
}

/// Per-UAV result of a block solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockValue {
    pub value: f64,
    pub flag: Option<BlockFlag>,
}

impl BlockValue {
    pub(crate) fn ok(value: f64) -> Self {
        Self { value, flag: None }
    }

    pub(crate) fn flagged(value: f64, flag: BlockFlag) -> Self {
        Self { value, flag: Some(flag) }
    }
}

/// Slot utility, or `-∞` when the model cannot evaluate the decision.
pub fn slot_objective(ctx: &SlotContext, decision: &SlotDecision) -> f64 {
    ctx.evaluate(decision).map(|e| e.utility).unwrap_or(f64::NEG_INFINITY)
}

/// Moves a closed-form boundary point toward `limit` in doubling ulp-sized
/// steps until `feasible` accepts it under the model's own arithmetic.
/// Gives back `x` unchanged when it is already feasible or no nudge within
/// about 1e-4 relative helps.
pub(crate) fn settle(x: f64, limit: f64, feasible: impl Fn(f64) -> bool) -> f64 {
    if feasible(x) {
        return x;
    }
    let mut step = x.abs().max(limit.abs()) * f64::EPSILON;
    for _ in 0..40 {
        let y = if limit > x { (x + step).min(limit) } else { (x - step).max(limit) };
        if feasible(y) {
            return y;
        }
        if y == limit {
            break;
        }
        step *= 2.0;
    }
    x
}

/// Quantities of one UAV that every block needs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct UavTerms {
    pub ds_bits: f64,
    pub offload: f64,
    pub prop: f64,
    pub f0: f64,
    pub uav_cpu: f64,
    pub leo_cpu: f64,
    pub kappa: f64,
    pub slot_len: f64,
    pub omega: f64,
}

impl UavTerms {
    pub fn new(ctx: &SlotContext, u: usize) -> Self {
        let s = &ctx.uavs[u];
        Self {
            ds_bits: s.ds_total_bits,
            offload: s.offload_time,
            prop: ctx.propagation_delay,
            f0: ctx.compute.cycles_per_bit,
            uav_cpu: ctx.compute.uav_cpu_hz,
            leo_cpu: ctx.compute.leo_cpu_hz,
            kappa: ctx.compute.kappa,
            slot_len: ctx.slot_len,
            omega: ctx.omega,
        }
    }

    /// Time left for the offloaded part after device offload, round trip and satellite compute.
    pub fn satellite_slack(&self, d: &UavDecision) -> f64 {
        let comp = if d.f_leo > 0.0 { self.f0 * d.gamma * self.ds_bits / d.f_leo } else { f64::INFINITY };
        d.delta_tol - 2.0 * self.prop - comp - self.offload
    }
}
