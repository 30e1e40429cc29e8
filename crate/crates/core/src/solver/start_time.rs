//! DT start time. With the other blocks fixed, the slot utility is piecewise
//! linear in `δ_tol`. Before the depletion point `Λ²` the uplink empties the
//! buffer and every extra second of collection adds data. After it the
//! uplink is rate-limited and each second of delay costs `R_tol − ω·p_tol`
//! bits. The optimum is therefore the upper end of the feasible interval
//! when `ω·p_tol ≥ R_tol`, and `Λ²` clamped into the interval otherwise.

use super::{BlockFlag, BlockValue, SolverMode, UavTerms};
use crate::model::{SlotContext, SlotDecision, UavDecision};

/// Relative nudge that keeps rounding on the safe side of each bound.
const NUDGE: f64 = 1e-12;

/// Feasible interval of the DT start time for one UAV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartTimeBounds {
    /// DS deadline bound under the solver mode.
    pub deadline: f64,
    /// Start at which uplink capacity equals the data on board (`Λ²`).
    pub depletion: f64,
    /// Latest start that keeps collection within the free storage.
    pub storage: f64,
    pub lower: f64,
    pub upper: f64,
}

impl StartTimeBounds {
    pub fn is_empty(&self) -> bool {
        self.lower > self.upper
    }
}

/// Bounds of the start-time interval for UAV `u`. A decision the model
/// cannot time (offloading without CPU or rate) has deadline `+∞`.
pub fn start_time_bounds(ctx: &SlotContext, u: usize, d: &UavDecision, mode: SolverMode) -> StartTimeBounds {
    let t = UavTerms::new(ctx, u);
    let s = &ctx.uavs[u];
    let deadline = match mode {
        SolverMode::Strict => ctx.timing(u, d).map(|x| x.total()).unwrap_or(f64::INFINITY),
        SolverMode::PaperRelaxed => {
            let local = t.f0 / t.uav_cpu;
            let mut avg = local;
            if d.gamma > 0.0 {
                let rate = ctx.ds_uplink_rate(d.p_sens);
                avg += d.gamma * (1.0 / rate + t.f0 / d.f_leo - local);
            }
            let lambda1 = 0.5 * t.ds_bits * avg;
            if lambda1.is_nan() { f64::INFINITY } else { t.offload + t.prop + lambda1 }
        }
    };
    let r_up = ctx.dt_uplink_rate;
    let denom = r_up + s.dt_rate_sum;
    let depletion = if denom > 0.0 { (r_up * t.slot_len - ctx.backlog(u)) / denom } else { f64::NEG_INFINITY };
    let storage = if s.dt_rate_sum > 0.0 { s.remaining_bits / s.dt_rate_sum * (1.0 - NUDGE) } else { f64::INFINITY };
    StartTimeBounds {
        deadline,
        depletion,
        storage,
        lower: deadline.max(0.0),
        upper: storage.min(t.slot_len),
    }
}

/// Utility of UAV `u` as a function of its start time, scaled to Mbit.
/// Infeasible decisions score `-∞`.
pub fn sp3_objective(ctx: &SlotContext, u: usize, d: &UavDecision) -> f64 {
    match ctx.evaluate_uav(u, d) {
        Ok(o) if o.violation.is_clear() => o.utility / 1e6,
        _ => f64::NEG_INFINITY,
    }
}

pub fn solve_sp3_uav(ctx: &SlotContext, u: usize, d: &UavDecision, mode: SolverMode) -> BlockValue {
    let b = start_time_bounds(ctx, u, d, mode);
    if b.is_empty() {
        return BlockValue::flagged(ctx.slot_len, BlockFlag::StartTimeEmpty);
    }
    let slope = ctx.omega * ctx.link.dt_uplink_power_w - ctx.dt_uplink_rate;
    BlockValue::ok(if slope >= 0.0 { b.upper } else { b.depletion.clamp(b.lower, b.upper) })
}

pub fn solve_sp3(ctx: &SlotContext, decision: &mut SlotDecision, mode: SolverMode) -> Vec<BlockValue> {
    (0..decision.len())
        .map(|u| {
            let b = solve_sp3_uav(ctx, u, &decision.uavs[u], mode);
            decision.uavs[u].delta_tol = b.value;
            b
        })
        .collect()
}
