//! Genetic-algorithm baseline over the joint per-slot decision.
//!
//! A genome holds `(p, f, δ_tol, γ)` for every UAV, each inside its box.
//! Fitness is the slot utility in Mbit minus `penalty_weight` times the
//! scale-free constraint violation. Selection is by tournament, crossover is
//! uniform, and mutation adds Gaussian noise clipped back into the box.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{ModelError, Result};
use crate::model::{SlotContext, SlotDecision, UavDecision};
use crate::solver::{SlotPolicy, SlotSolution, SlotSolveTrace};

const GENES_PER_UAV: usize = 4;

/// Fitness given to genomes the model cannot evaluate, in penalty units.
const UNEVALUABLE_PENALTY: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Mutation standard deviation as a fraction of each box width.
    pub mutation_sigma_frac: f64,
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub penalty_weight: f64,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 60,
            generations: 100,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_sigma_frac: 0.05,
            elitism_count: 2,
            tournament_size: 3,
            penalty_weight: 1e5,
            seed: 1,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |name, reason: &str| Err(ModelError::InvalidParameter { name, reason: reason.into() });
        if self.population_size == 0 {
            return bad("ga_population", "must be >= 1");
        }
        if self.tournament_size == 0 {
            return bad("ga_tournament", "must be >= 1");
        }
        if self.elitism_count > self.population_size {
            return bad("ga_elitism", "cannot exceed the population size");
        }
        for (name, v) in [("ga_crossover", self.crossover_rate), ("ga_mutation", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(name, "must lie in [0, 1]");
            }
        }
        if !(self.mutation_sigma_frac > 0.0 && self.mutation_sigma_frac.is_finite()) {
            return bad("ga_sigma_frac", "must be a finite value > 0");
        }
        if !(self.penalty_weight >= 0.0) {
            return bad("ga_penalty", "must be >= 0");
        }
        Ok(())
    }
}

/// Box upper bounds of one UAV's genes; every lower bound is zero.
fn gene_upper(ctx: &SlotContext) -> [f64; GENES_PER_UAV] {
    [ctx.link.max_tx_power_w, ctx.compute.leo_cpu_hz, ctx.slot_len, 1.0]
}

fn decode(genome: &[f64]) -> SlotDecision {
    SlotDecision::new(
        genome
            .chunks_exact(GENES_PER_UAV)
            .map(|g| UavDecision { p_sens: g[0], f_leo: g[1], delta_tol: g[2], gamma: g[3] })
            .collect(),
    )
}

/// Penalized fitness of a decision (Mbit-scale).
pub fn ga_fitness(ctx: &SlotContext, decision: &SlotDecision, penalty_weight: f64) -> f64 {
    match ctx.evaluate(decision) {
        Ok(e) => {
            let violation: f64 = e.uavs.iter().map(|o| o.violation.normalized(ctx.slot_len, ctx.capacity_bits)).sum::<f64>()
                + e.cpu_budget_excess / ctx.compute.leo_cpu_hz;
            e.utility / 1e6 - penalty_weight * violation
        }
        Err(_) => -penalty_weight * UNEVALUABLE_PENALTY,
    }
}

fn tournament<'a>(rng: &mut ChaCha8Rng, pop: &'a [(Vec<f64>, f64)], k: usize) -> &'a [f64] {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..k {
        let c = &pop[rng.random_range(0..pop.len())];
        if c.1 > best.1 {
            best = c;
        }
    }
    &best.0
}

/// Runs the GA on one slot. The RNG stream is derived from `cfg.seed` and `slot`.
pub fn solve_slot_ga(ctx: &SlotContext, cfg: &GaConfig, slot: usize) -> Result<SlotSolution> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(slot as u64 + 1);
    let upper = gene_upper(ctx);
    let n_genes = GENES_PER_UAV * ctx.num_uavs();
    let hi = |i: usize| upper[i % GENES_PER_UAV];
    let fitness = |g: &[f64]| ga_fitness(ctx, &decode(g), cfg.penalty_weight);

    let mut pop: Vec<(Vec<f64>, f64)> = (0..cfg.population_size)
        .map(|_| {
            let g: Vec<f64> = (0..n_genes).map(|i| rng.random::<f64>() * hi(i)).collect();
            let f = fitness(&g);
            (g, f)
        })
        .collect();
    let by_fitness = |a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)| b.1.total_cmp(&a.1);

    let mut trace = SlotSolveTrace::default();
    pop.sort_by(by_fitness);
    let unit = Normal::new(0.0, 1.0).expect("unit normal");
    for generation in 1..=cfg.generations {
        let mut next: Vec<(Vec<f64>, f64)> = pop.iter().take(cfg.elitism_count).cloned().collect();
        while next.len() < cfg.population_size {
            let a = tournament(&mut rng, &pop, cfg.tournament_size);
            let b = tournament(&mut rng, &pop, cfg.tournament_size);
            let cross = rng.random::<f64>() < cfg.crossover_rate;
            let mut child: Vec<f64> =
                (0..n_genes).map(|i| if cross && rng.random::<bool>() { b[i] } else { a[i] }).collect();
            for (i, gene) in child.iter_mut().enumerate() {
                if rng.random::<f64>() < cfg.mutation_rate {
                    let sigma = cfg.mutation_sigma_frac * hi(i);
                    *gene = (*gene + sigma * unit.sample(&mut rng)).clamp(0.0, hi(i));
                }
            }
            let f = fitness(&child);
            next.push((child, f));
        }
        next.sort_by(by_fitness);
        pop = next;
        trace.iterations = generation;
        trace.objective.push(pop[0].1);
    }

    // Prefer the fittest individual that breaks no constraint.
    let feasible = pop.iter().map(|(g, _)| decode(g)).find(|d| ctx.evaluate(d).is_ok_and(|e| e.is_feasible()));
    let decision = feasible.unwrap_or_else(|| decode(&pop[0].0));
    let evaluation = ctx.evaluate(&decision)?;
    let infeasible = !evaluation.is_feasible();
    trace.converged = true;
    Ok(SlotSolution { decision, evaluation, trace, infeasible })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Ga {
    pub config: GaConfig,
}

impl SlotPolicy for Ga {
    fn name(&self) -> &'static str {
        "ga"
    }

    fn solve_slot(&self, ctx: &SlotContext, slot: usize) -> Result<SlotSolution> {
        solve_slot_ga(ctx, &self.config, slot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::fixtures::context;

    #[test]
    fn single_individual_without_generations_is_returned_as_drawn() {
        let ctx = context(2, 3);
        let cfg = GaConfig { population_size: 1, generations: 0, elitism_count: 0, ..GaConfig::default() };
        let sol = solve_slot_ga(&ctx, &cfg, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(5);
        let upper = gene_upper(&ctx);
        let drawn: Vec<f64> = (0..8).map(|i| rng.random::<f64>() * upper[i % 4]).collect();
        assert_eq!(sol.decision, decode(&drawn));
        assert!(sol.trace.objective.is_empty());
    }

    #[test]
    fn elitism_keeps_best_fitness_monotone() {
        let ctx = context(2, 3);
        let cfg = GaConfig { generations: 30, ..GaConfig::default() };
        let sol = solve_slot_ga(&ctx, &cfg, 0).unwrap();
        assert!(sol.trace.objective.windows(2).all(|w| w[1] >= w[0]));
        let again = solve_slot_ga(&ctx, &cfg, 0).unwrap();
        assert_eq!(sol, again);
    }

    #[test]
    fn genes_stay_in_their_boxes() {
        let ctx = context(3, 1);
        let sol = solve_slot_ga(&ctx, &GaConfig { generations: 20, ..GaConfig::default() }, 2).unwrap();
        for o in &sol.evaluation.uavs {
            assert_eq!(o.violation.bounds, 0.0);
        }
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(GaConfig { population_size: 0, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { mutation_rate: 1.5, ..GaConfig::default() }.validate().is_err());
        assert!(GaConfig { elitism_count: 70, ..GaConfig::default() }.validate().is_err());
    }
}
