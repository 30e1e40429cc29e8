//! Satellite CPU share: the least frequency that meets the satellite-branch deadline.

use super::{settle, BlockFlag, BlockValue, UavTerms};
use crate::model::{SlotContext, SlotDecision, UavDecision};

/// Block objective `ω·f0·κ·γ·f²·ΣD`: satellite compute energy weighted by `ω`.
pub fn sp2_objective(ctx: &SlotContext, u: usize, d: &UavDecision) -> f64 {
    let c = &ctx.compute;
    ctx.omega * c.cycles_per_bit * c.kappa * d.gamma * d.f_leo.powi(2) * ctx.uavs[u].ds_total_bits
}

/// Minimum CPU share of UAV `u`, ignoring the budget shared with other UAVs.
///
/// The slack divides the offloaded cycles by the time left once offload,
/// uplink and the round trip are paid for.
pub fn solve_sp2_uav(ctx: &SlotContext, u: usize, d: &UavDecision) -> BlockValue {
    let t = UavTerms::new(ctx, u);
    let offloaded = d.gamma * t.ds_bits;
    if offloaded <= 0.0 {
        return BlockValue::ok(0.0);
    }
    let rate = ctx.ds_uplink_rate(d.p_sens);
    if !(rate > 0.0) {
        return BlockValue::flagged(t.leo_cpu, BlockFlag::ComputeCap);
    }
    let slack = d.delta_tol - 2.0 * t.prop - t.offload - offloaded / rate;
    if !(slack > 0.0) {
        return BlockValue::flagged(t.leo_cpu, BlockFlag::ComputeCap);
    }
    let f = t.f0 * offloaded / slack;
    if f > t.leo_cpu {
        BlockValue::flagged(t.leo_cpu, BlockFlag::ComputeCap)
    } else {
        let on_time =
            |f: f64| ctx.timing(u, &UavDecision { f_leo: f, ..*d }).is_ok_and(|t| t.satellite_path() <= d.delta_tol);
        BlockValue::ok(settle(f, t.leo_cpu, on_time))
    }
}

/// Runs the CPU block for every UAV. When the minima overrun the satellite
/// budget they are scaled down proportionally and every offloading UAV is
/// flagged with [`BlockFlag::ComputeBudget`].
pub fn solve_sp2(ctx: &SlotContext, decision: &mut SlotDecision) -> Vec<BlockValue> {
    let mut out: Vec<BlockValue> = (0..decision.len()).map(|u| solve_sp2_uav(ctx, u, &decision.uavs[u])).collect();
    let total: f64 = out.iter().map(|b| b.value).sum();
    let budget = ctx.compute.leo_cpu_hz;
    if total > budget {
        // A few ulps of margin keep the rescaled sum within the budget after rounding.
        let scale = budget / total * (1.0 - 8.0 * f64::EPSILON);
        for b in out.iter_mut().filter(|b| b.value > 0.0) {
            b.value *= scale;
            b.flag.get_or_insert(BlockFlag::ComputeBudget);
        }
    }
    for (d, b) in decision.uavs.iter_mut().zip(&out) {
        d.f_leo = b.value;
    }
    out
}
