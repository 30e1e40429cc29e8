//! Average time-slot baseline: DS service always gets the first half of the slot.

use crate::error::Result;
use crate::model::{SlotContext, SlotDecision};
use crate::solver::{
    initial_decision, slot_objective, solve_sp1, solve_sp2, solve_sp4, BlockValue, InitStrategy, JcormSettings,
    SlotPolicy, SlotSolution, SlotSolveTrace, SolverMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Atsm {
    pub settings: JcormSettings,
}

fn note(trace: &mut SlotSolveTrace, iteration: usize, blocks: &[BlockValue]) {
    for (u, b) in blocks.iter().enumerate() {
        if let Some(flag) = b.flag {
            trace.flags.push(crate::solver::FlagEvent { iteration, uav: u, flag });
        }
    }
}

/// Fixes `δ_tol = δ/2` and alternates the power, CPU and ratio blocks.
///
/// UAVs whose DS work cannot finish by `δ/2` keep their fastest decision
/// and the slot is reported infeasible.
pub fn solve_slot_atsm(ctx: &SlotContext, settings: &JcormSettings) -> Result<SlotSolution> {
    let half = 0.5 * ctx.slot_len;
    let tol = &settings.tolerances;
    let mut fastest = initial_decision(ctx, InitStrategy::DeadlineTight, SolverMode::Strict);
    fastest.uavs.iter_mut().for_each(|d| d.delta_tol = half);

    let mut decision = fastest.clone();
    let mut trace = SlotSolveTrace::default();
    let mut objective = slot_objective(ctx, &decision);
    trace.objective.push(objective);
    for i in 1..=tol.i_max {
        trace.iterations = i;
        let previous = decision.clone();
        let powers = solve_sp1(ctx, &mut decision, tol);
        let cpu = solve_sp2(ctx, &mut decision);
        let ratios = solve_sp4(ctx, &mut decision);
        let power_flags: Vec<BlockValue> = powers.iter().map(|p| p.power).collect();
        for blocks in [&power_flags, &cpu, &ratios] {
            note(&mut trace, i, blocks);
        }
        let next = slot_objective(ctx, &decision);
        if next < objective - 1e-9 * objective.abs().max(1.0) {
            decision = previous;
            trace.reverted = true;
            break;
        }
        let change = (next - objective).abs();
        objective = next;
        trace.objective.push(objective);
        if change <= tol.tau {
            trace.converged = true;
            break;
        }
    }

    let mut decision = SlotDecision::new(
        decision
            .uavs
            .iter()
            .enumerate()
            .map(|(u, d)| match ctx.evaluate_uav(u, d) {
                Ok(o) if o.violation.deadline == 0.0 => *d,
                _ => fastest.uavs[u],
            })
            .collect(),
    );
    if decision.total_leo_cpu() > ctx.compute.leo_cpu_hz {
        decision = fastest;
    }
    let evaluation = ctx.evaluate(&decision)?;
    let infeasible = !evaluation.is_feasible();
    Ok(SlotSolution { decision, evaluation, trace, infeasible })
}

impl SlotPolicy for Atsm {
    fn name(&self) -> &'static str {
        "atsm"
    }

    fn solve_slot(&self, ctx: &SlotContext, _slot: usize) -> Result<SlotSolution> {
        solve_slot_atsm(ctx, &self.settings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{fixtures::context, solve_slot_jcorm};

    #[test]
    fn start_time_is_half_slot() {
        for seed in 0..4 {
            let ctx = context(6, seed);
            let sol = solve_slot_atsm(&ctx, &JcormSettings::default()).unwrap();
            assert!(sol.decision.uavs.iter().all(|d| d.delta_tol == 5.0));
            assert!(!sol.infeasible);
            let jcorm = solve_slot_jcorm(&ctx, &JcormSettings::default()).unwrap();
            assert!(sol.evaluation.utility <= jcorm.evaluation.utility);
        }
    }

    #[test]
    fn heavy_ds_load_misses_half_slot() {
        let mut ctx = context(1, 2);
        let s = &mut ctx.uavs[0];
        s.ds_bits = vec![6e8; s.ds_bits.len()];
        s.ds_total_bits = s.ds_bits.iter().sum();
        s.offload_time = s.ds_bits.iter().zip(&s.ds_rates).map(|(b, r)| b / r).fold(0.0, f64::max);
        let sol = solve_slot_atsm(&ctx, &JcormSettings::default()).unwrap();
        assert_eq!(sol.decision.uavs[0].delta_tol, 5.0);
        assert!(sol.infeasible);
        assert!(sol.evaluation.uavs[0].ds_delay() > 5.0);
    }
}
