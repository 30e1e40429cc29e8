use proptest::prelude::*;

use csamn::model::{dt_collection_step, SlotContext, StorageState, UavDecision};
use csamn::solver::{solve_slot_jcorm, solve_sp3_uav, solve_sp4_uav, JcormSettings, SolverMode};
use csamn::{generate_scenario, ScenarioConfig};

fn slot(num_uavs: usize, seed: u64, t: usize, fill: f64) -> SlotContext {
    let cfg = ScenarioConfig { num_uavs, ..ScenarioConfig::default() };
    let net = generate_scenario(&cfg, seed).unwrap();
    let mut storage = StorageState::new(cfg.storage_capacity_bits, cfg.initial_remaining_bits, num_uavs);
    storage.remaining_bits.iter_mut().for_each(|r| *r = fill * cfg.storage_capacity_bits);
    net.slot_context(&cfg, t % cfg.num_slots, &storage).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn storage_step_stays_in_bounds(
        capacity in 0.0f64..2e10,
        fill in 0.0f64..=1.0,
        device_rate in 0.0f64..1e9,
        uplink_rate in 0.0f64..1e9,
        delta in -5.0f64..15.0,
        slot_len in 0.1f64..10.0,
    ) {
        let remaining = fill * capacity;
        let s = dt_collection_step(remaining, capacity, device_rate, uplink_rate, delta, slot_len);
        prop_assert!((0.0..=capacity).contains(&s.next_remaining));
        prop_assert!(s.uplinked <= s.uplink_limit);
        prop_assert!(s.collected <= remaining);
        prop_assert!(s.uplinked <= s.uplink_capacity.max(0.0));
    }

    #[test]
    fn strict_slots_meet_every_deadline(num_uavs in 1usize..=6, seed in 0u64..500, t in 0usize..10, fill in 0.05f64..=1.0) {
        let ctx = slot(num_uavs, seed, t, fill);
        let sol = solve_slot_jcorm(&ctx, &JcormSettings::default()).unwrap();
        prop_assert!(sol.trace.is_non_decreasing(1e-9));
        prop_assert!(sol.trace.iterations <= 50);
        if !sol.infeasible {
            prop_assert!(sol.evaluation.cpu_budget_excess == 0.0);
            for (u, d) in sol.decision.uavs.iter().enumerate() {
                prop_assert!(ctx.timing(u, d).unwrap().total() <= d.delta_tol);
                prop_assert!((0.0..=1.0).contains(&d.gamma));
                prop_assert!((0.0..=ctx.slot_len).contains(&d.delta_tol));
            }
        }
    }

    #[test]
    fn start_time_never_loses_to_slot_ends(seed in 0u64..500, t in 0usize..10, fill in 0.05f64..=1.0, gamma in 0.0f64..=1.0) {
        let ctx = slot(1, seed, t, fill);
        let d = UavDecision { p_sens: 1.0, f_leo: ctx.compute.leo_cpu_hz, delta_tol: 0.0, gamma };
        let b = solve_sp3_uav(&ctx, 0, &d, SolverMode::Strict);
        prop_assume!(b.flag.is_none());
        let chosen = ctx.evaluate_uav(0, &UavDecision { delta_tol: b.value, ..d }).unwrap();
        prop_assert!(chosen.violation.is_clear());
        let end = ctx.evaluate_uav(0, &UavDecision { delta_tol: ctx.slot_len, ..d }).unwrap();
        if end.violation.is_clear() {
            prop_assert!(chosen.utility >= end.utility - 1e-6);
        }
    }

    #[test]
    fn ratio_stays_in_its_interval(seed in 0u64..500, delta in 0.2f64..10.0, p in 0.01f64..=1.0, f in 1e8f64..1e10) {
        let ctx = slot(1, seed, 0, 0.5);
        let d = UavDecision { p_sens: p, f_leo: f, delta_tol: delta, gamma: 0.5 };
        let b = solve_sp4_uav(&ctx, 0, &d);
        prop_assert!((0.0..=1.0).contains(&b.value));
        if b.flag.is_none() {
            let t = ctx.timing(0, &UavDecision { gamma: b.value, ..d }).unwrap();
            prop_assert!(t.total() <= delta);
        }
    }
}

#[test]
fn scenario_draws_are_reproducible() {
    let cfg = ScenarioConfig::default();
    assert_eq!(generate_scenario(&cfg, 42).unwrap(), generate_scenario(&cfg, 42).unwrap());
    assert_ne!(generate_scenario(&cfg, 42).unwrap(), generate_scenario(&cfg, 43).unwrap());
}
