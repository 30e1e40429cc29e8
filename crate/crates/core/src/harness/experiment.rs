use std::time::Instant;

use crate::baselines::{Atsm, Ga, NoOffload};
use crate::config::{Algorithm, ScenarioConfig};
use crate::error::Result;
use crate::model::{EnergyBreakdown, SlotDecision};
use crate::scenario::generate_scenario;
use crate::solver::{run_horizon, Jcorm, JcormSettings, SlotPolicy, SlotSolveTrace};

/// Outcome of one slot as reported in results.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotMetrics {
    pub slot: usize,
    /// `Σ_u uplinked − ω·E` (bits).
    pub utility: f64,
    /// DT data delivered to the satellite (bits).
    pub data_bits: f64,
    pub energy: EnergyBreakdown,
    /// Mean DS completion time over UAVs (s).
    pub ds_delay_s: f64,
    pub infeasible: bool,
    /// UAVs whose decision violates a constraint.
    pub violating_uavs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub algo: Algorithm,
    pub seed: u64,
    pub slots: Vec<SlotMetrics>,
    pub decisions: Vec<SlotDecision>,
    pub traces: Vec<SlotSolveTrace>,
    pub wall_clock_s: f64,
}

impl ExperimentResult {
    pub fn utility(&self) -> f64 {
        self.slots.iter().map(|s| s.utility).sum()
    }

    pub fn data_bits(&self) -> f64 {
        self.slots.iter().map(|s| s.data_bits).sum()
    }

    pub fn energy_j(&self) -> f64 {
        self.slots.iter().map(|s| s.energy.total()).sum()
    }

    /// Mean DS completion time over every UAV and slot (s); zero for an empty run.
    pub fn avg_ds_delay_s(&self) -> f64 {
        if self.slots.is_empty() {
            return 0.0;
        }
        self.slots.iter().map(|s| s.ds_delay_s).sum::<f64>() / self.slots.len() as f64
    }

    pub fn infeasible_slots(&self) -> usize {
        self.slots.iter().filter(|s| s.infeasible).count()
    }

    /// Running sum of slot utilities.
    pub fn cumulative_utility(&self) -> Vec<f64> {
        self.slots
            .iter()
            .scan(0.0, |acc, s| {
                *acc += s.utility;
                Some(*acc)
            })
            .collect()
    }
}

/// The slot policy named by `algo`, parameterized from `cfg`.
pub fn policy_for(cfg: &ScenarioConfig, algo: Algorithm) -> Box<dyn SlotPolicy> {
    let settings = JcormSettings { tolerances: cfg.tolerances(), mode: cfg.mode, init: cfg.init };
    match algo {
        Algorithm::Jcorm => Box::new(Jcorm { settings }),
        Algorithm::Atsm => Box::new(Atsm { settings }),
        Algorithm::Ga => Box::new(Ga { config: cfg.ga() }),
        Algorithm::NoOffload => Box::new(NoOffload),
    }
}

/// Runs `cfg.algo` over the horizon of the scenario drawn from `seed`.
pub fn run_experiment(cfg: &ScenarioConfig, seed: u64) -> Result<ExperimentResult> {
    run_experiment_with(cfg, seed, cfg.algo)
}

/// Like [`run_experiment`] but with an explicit algorithm.
pub fn run_experiment_with(cfg: &ScenarioConfig, seed: u64, algo: Algorithm) -> Result<ExperimentResult> {
    let start = Instant::now();
    let cfg = ScenarioConfig { seed, ..cfg.clone() };
    let net = generate_scenario(&cfg, seed)?;
    let policy = policy_for(&cfg, algo);
    let run = run_horizon(&cfg, &net, policy.as_ref())?;
    let mut slots = Vec::with_capacity(run.slots.len());
    let mut decisions = Vec::with_capacity(run.slots.len());
    let mut traces = Vec::with_capacity(run.slots.len());
    for record in run.slots {
        let sol = record.solution;
        let e = &sol.evaluation;
        let n = e.uavs.len().max(1) as f64;
        slots.push(SlotMetrics {
            slot: record.slot,
            utility: e.utility,
            data_bits: e.uplinked(),
            energy: e.energy(),
            ds_delay_s: e.uavs.iter().map(|o| o.ds_delay()).sum::<f64>() / n,
            infeasible: sol.infeasible,
            violating_uavs: e.uavs.iter().filter(|o| !o.violation.is_clear()).count(),
        });
        decisions.push(sol.decision);
        traces.push(sol.trace);
    }
    Ok(ExperimentResult { algo, seed, slots, decisions, traces, wall_clock_s: start.elapsed().as_secs_f64() })
}
