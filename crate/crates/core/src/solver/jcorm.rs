//! Alternating block optimization of one slot.

use std::time::Instant;

use super::{
    compute::solve_sp2, init::initial_decision, power::solve_sp1, ratio::solve_sp4, slot_objective, start_time,
    BlockFlag, BlockValue, InitStrategy, SlotPolicy, SlotSolution, SlotSolveTrace, SolverMode, ToleranceConfig,
};
use crate::error::Result;
use crate::model::{SlotContext, UavDecision};

/// Relative objective drop treated as rounding noise rather than a decrease.
pub(crate) const MONOTONE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JcormSettings {
    pub tolerances: ToleranceConfig,
    pub mode: SolverMode,
    pub init: InitStrategy,
}

/// Local-only execution for UAV `u`: nothing offloaded, DT start at the
/// end of local processing (or later if the buffers demand it).
pub fn fallback_decision(ctx: &SlotContext, u: usize) -> UavDecision {
    let mut d = UavDecision::default();
    let b = start_time::solve_sp3_uav(ctx, u, &d, SolverMode::Strict);
    d.delta_tol = if b.flag.is_none() {
        b.value
    } else {
        let s = &ctx.uavs[u];
        (s.offload_time + ctx.compute.cycles_per_bit * s.ds_total_bits / ctx.compute.uav_cpu_hz).min(ctx.slot_len)
    };
    d
}

fn record(trace: &mut SlotSolveTrace, iteration: usize, blocks: &[BlockValue]) {
    for (u, b) in blocks.iter().enumerate() {
        if let Some(flag) = b.flag {
            trace.flag(iteration, u, flag);
        }
    }
}

/// Solves one slot by cycling power, CPU share, DT start time and offloading ratio.
///
/// Every accepted iteration keeps the slot objective non-decreasing; an
/// iteration that lowers it is rolled back and ends the loop. In strict mode
/// any UAV whose final decision still violates a constraint is switched to
/// [`fallback_decision`] and the slot is marked infeasible.
pub fn solve_slot_jcorm(ctx: &SlotContext, settings: &JcormSettings) -> Result<SlotSolution> {
    let tol = &settings.tolerances;
    let mut trace = SlotSolveTrace::default();
    let mut decision = initial_decision(ctx, settings.init, settings.mode);
    let mut objective = slot_objective(ctx, &decision);
    trace.objective.push(objective);

    for i in 1..=tol.i_max {
        trace.iterations = i;
        let previous = decision.clone();

        let t0 = Instant::now();
        let powers = solve_sp1(ctx, &mut decision, tol);
        let t1 = Instant::now();
        let cpu = solve_sp2(ctx, &mut decision);
        let t2 = Instant::now();
        let starts = start_time::solve_sp3(ctx, &mut decision, settings.mode);
        let t3 = Instant::now();
        let ratios = solve_sp4(ctx, &mut decision);
        let t4 = Instant::now();
        for (k, (a, b)) in [(t0, t1), (t1, t2), (t2, t3), (t3, t4)].into_iter().enumerate() {
            trace.block_time[k] += b - a;
        }
        trace.dinkelbach = powers.iter().map(|p| p.state).collect();
        let power_flags: Vec<BlockValue> = powers.iter().map(|p| p.power).collect();
        for blocks in [&power_flags, &cpu, &starts, &ratios] {
            record(&mut trace, i, blocks);
        }

        let next = slot_objective(ctx, &decision);
        if next < objective - MONOTONE_REL_TOL * objective.abs().max(1.0) {
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

    // The ratio block runs last, so re-seat the start times on the final ratios.
    let mut settled = decision.clone();
    let starts = start_time::solve_sp3(ctx, &mut settled, settings.mode);
    let settled_objective = slot_objective(ctx, &settled);
    if settled_objective >= objective - MONOTONE_REL_TOL * objective.abs().max(1.0) {
        let last = trace.iterations + 1;
        record(&mut trace, last, &starts);
        decision = settled;
        if settled_objective != objective {
            trace.objective.push(settled_objective);
        }
    }

    let mut infeasible = false;
    let mut evaluation = ctx.evaluate(&decision).ok();
    if settings.mode == SolverMode::Strict {
        let failing: Vec<usize> = match &evaluation {
            Some(e) if e.cpu_budget_excess > 0.0 => (0..decision.len()).filter(|&u| decision.uavs[u].gamma > 0.0).collect(),
            Some(e) => (0..decision.len()).filter(|&u| !e.uavs[u].violation.is_clear()).collect(),
            None => (0..decision.len()).filter(|&u| ctx.evaluate_uav(u, &decision.uavs[u]).is_err()).collect(),
        };
        let last = trace.iterations + 1;
        for &u in &failing {
            decision.uavs[u] = fallback_decision(ctx, u);
            trace.flag(last, u, BlockFlag::Fallback);
            infeasible = true;
        }
        if !failing.is_empty() {
            evaluation = ctx.evaluate(&decision).ok();
        }
    }
    let evaluation = match evaluation {
        Some(e) => e,
        None => ctx.evaluate(&decision)?,
    };
    infeasible |= !evaluation.is_feasible();
    Ok(SlotSolution { decision, evaluation, trace, infeasible })
}

/// The alternating-optimization policy as a [`SlotPolicy`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jcorm {
    pub settings: JcormSettings,
}

impl SlotPolicy for Jcorm {
    fn name(&self) -> &'static str {
        "jcorm"
    }

    fn solve_slot(&self, ctx: &SlotContext, _slot: usize) -> Result<SlotSolution> {
        solve_slot_jcorm(ctx, &self.settings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::fixtures::context;

    #[test]
    fn default_slot_is_feasible_and_monotone() {
        for seed in 0..5 {
            let ctx = context(6, seed);
            let sol = solve_slot_jcorm(&ctx, &JcormSettings::default()).unwrap();
            assert!(!sol.infeasible, "seed {seed}: {:?}", sol.trace.flags);
            assert!(sol.trace.is_non_decreasing(MONOTONE_REL_TOL));
            assert!(sol.trace.iterations <= 50);
            for (u, d) in sol.decision.uavs.iter().enumerate() {
                assert!(ctx.timing(u, d).unwrap().total() <= d.delta_tol);
            }
        }
    }

    #[test]
    fn interior_start_still_monotone() {
        let ctx = context(6, 1);
        let settings = JcormSettings { init: InitStrategy::Interior, ..JcormSettings::default() };
        let sol = solve_slot_jcorm(&ctx, &settings).unwrap();
        assert!(sol.trace.is_non_decreasing(MONOTONE_REL_TOL));
        assert!(!sol.infeasible);
    }

    #[test]
    fn tight_start_beats_half_slot_start() {
        let ctx = context(6, 3);
        let tight = solve_slot_jcorm(&ctx, &JcormSettings::default()).unwrap();
        let interior =
            solve_slot_jcorm(&ctx, &JcormSettings { init: InitStrategy::Interior, ..JcormSettings::default() }).unwrap();
        assert!(tight.evaluation.utility > interior.evaluation.utility);
    }

    #[test]
    fn zero_ds_load_is_dt_only() {
        let mut ctx = context(1, 4);
        for b in ctx.uavs[0].ds_bits.iter_mut() {
            *b = 0.0;
        }
        ctx.uavs[0].ds_total_bits = 0.0;
        ctx.uavs[0].offload_time = 0.0;
        let sol = solve_slot_jcorm(&ctx, &JcormSettings::default()).unwrap();
        let d = sol.decision.uavs[0];
        assert_eq!((d.gamma, d.f_leo, d.p_sens, d.delta_tol), (0.0, 0.0, 0.0, 0.0));
        let o = &sol.evaluation.uavs[0];
        let dt_energy = ctx.link.dt_uplink_power_w * ctx.slot_len;
        assert_eq!(sol.evaluation.utility, o.dt.uplinked - ctx.omega * dt_energy);
    }

    #[test]
    fn fallback_is_local_only() {
        let ctx = context(2, 4);
        let d = fallback_decision(&ctx, 1);
        assert_eq!((d.gamma, d.f_leo, d.p_sens), (0.0, 0.0, 0.0));
        let t = ctx.timing(1, &d).unwrap();
        assert_eq!(d.delta_tol, t.local_path());
    }
}
