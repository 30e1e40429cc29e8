use crate::error::Result;
use crate::model::{SlotContext, SlotDecision, UavDecision};
use crate::solver::{solve_sp3, BlockFlag, FlagEvent, SlotPolicy, SlotSolution, SlotSolveTrace, SolverMode};

/// Local-only processing: no power, no satellite CPU, nothing offloaded.
/// Only the DT start time is optimized.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoOffload;

pub fn solve_slot_no_offload(ctx: &SlotContext) -> Result<SlotSolution> {
    let mut decision = SlotDecision::new(vec![UavDecision::default(); ctx.num_uavs()]);
    let starts = solve_sp3(ctx, &mut decision, SolverMode::Strict);
    let mut trace = SlotSolveTrace::default();
    for (u, b) in starts.iter().enumerate() {
        if let Some(flag) = b.flag {
            trace.flags.push(FlagEvent { iteration: 1, uav: u, flag });
        }
    }
    let evaluation = ctx.evaluate(&decision)?;
    trace.objective.push(evaluation.utility);
    trace.iterations = 1;
    trace.converged = true;
    let infeasible = !evaluation.is_feasible() || trace.flags.iter().any(|f| f.flag == BlockFlag::StartTimeEmpty);
    Ok(SlotSolution { decision, evaluation, trace, infeasible })
}

impl SlotPolicy for NoOffload {
    fn name(&self) -> &'static str {
        "no-offload"
    }

    fn solve_slot(&self, ctx: &SlotContext, _slot: usize) -> Result<SlotSolution> {
        solve_slot_no_offload(ctx)
    }
}
