//! Offloading ratio. The slot utility is linear in `γ`, with coefficient
//!
//! ```text
//! Π = ω·ΣD·(f0·κ·F_u² − f0·κ·f² − p / R(p))
//! ```
//!
//! so the optimum is whichever end of the deadline-feasible interval `Π` points to.

use super::{settle, BlockFlag, BlockValue, UavTerms};
use crate::model::{SlotContext, SlotDecision, UavDecision};

/// Block objective: the `γ`-dependent energy `ω·(DS uplink + local + satellite compute)`.
pub fn sp4_objective(ctx: &SlotContext, u: usize, d: &UavDecision) -> f64 {
    let t = UavTerms::new(ctx, u);
    let rate = ctx.ds_uplink_rate(d.p_sens);
    let uplink = if d.gamma > 0.0 { d.p_sens * d.gamma * t.ds_bits / rate } else { 0.0 };
    let cycles = t.f0 * t.kappa * t.ds_bits;
    let compute = cycles * ((1.0 - d.gamma) * t.uav_cpu.powi(2) + d.gamma * d.f_leo.powi(2));
    t.omega * (uplink + compute)
}

/// Interval `[γ_min, γ_max]` allowed by the local and satellite deadlines.
pub fn ratio_bounds(ctx: &SlotContext, u: usize, d: &UavDecision) -> (f64, f64) {
    let t = UavTerms::new(ctx, u);
    if t.ds_bits <= 0.0 {
        return (0.0, 1.0);
    }
    let gamma_min = (1.0 - (d.delta_tol - t.offload) * t.uav_cpu / (t.f0 * t.ds_bits)).clamp(0.0, 1.0);
    let rate = ctx.ds_uplink_rate(d.p_sens);
    let gamma_max = if rate > 0.0 && d.f_leo > 0.0 {
        let per_bit = 1.0 / rate + t.f0 / d.f_leo;
        ((d.delta_tol - 2.0 * t.prop - t.offload) / (per_bit * t.ds_bits)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (gamma_min, gamma_max)
}

pub fn solve_sp4_uav(ctx: &SlotContext, u: usize, d: &UavDecision) -> BlockValue {
    let t = UavTerms::new(ctx, u);
    if t.ds_bits <= 0.0 {
        return BlockValue::ok(0.0);
    }
    let (gamma_min, gamma_max) = ratio_bounds(ctx, u, d);
    if gamma_min > gamma_max {
        return BlockValue::flagged(gamma_min, BlockFlag::RatioEmpty);
    }
    let rate = ctx.ds_uplink_rate(d.p_sens);
    let per_bit_uplink = if rate > 0.0 { d.p_sens / rate } else { f64::INFINITY };
    let pi = t.omega * t.ds_bits * (t.f0 * t.kappa * (t.uav_cpu.powi(2) - d.f_leo.powi(2)) - per_bit_uplink);
    let on_time = |g: f64| ctx.timing(u, &UavDecision { gamma: g, ..*d }).is_ok_and(|t| t.total() <= d.delta_tol);
    BlockValue::ok(if pi > 0.0 { settle(gamma_max, gamma_min, on_time) } else { settle(gamma_min, gamma_max, on_time) })
}

pub fn solve_sp4(ctx: &SlotContext, decision: &mut SlotDecision) -> Vec<BlockValue> {
    (0..decision.len())
        .map(|u| {
            let b = solve_sp4_uav(ctx, u, &decision.uavs[u]);
            decision.uavs[u].gamma = b.value;
            b
        })
        .collect()
}
