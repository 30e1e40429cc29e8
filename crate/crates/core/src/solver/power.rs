//! DS transmit power: Dinkelbach iteration on the energy-per-rate ratio.
//!
//! The block minimizes `A·p / R(p)` with `A = ω·γ·ΣD` subject to `p ≤ pmax`
//! and the satellite-branch deadline `γΣD ≤ Γ·R(p)`. Each Dinkelbach step
//! replaces the ratio by `A·p − η·R(p)`. Its Lagrangian stationary point
//!
//! ```text
//! p̂ = { (η + λΓ)·B / ((A + μ)·U·ln 2) − σ²/g }⁺
//! ```
//!
//! is iterated with projected subgradient updates of `λ` (deadline) and
//! `μ` (power cap). The primal iterate itself is the exact KKT point of the
//! one-dimensional parametric problem, the water level projected onto
//! `[p_req, pmax]` where `p_req` is the least power meeting the deadline.
//! This keeps every iterate feasible even when the multipliers have not
//! settled within `j_max` steps.

use std::f64::consts::LN_2;

use super::{settle, BlockFlag, BlockValue, ToleranceConfig, UavTerms};
use crate::model::{SlotContext, SlotDecision, UavDecision};

/// Multiplier and ratio state of the power block for one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DinkelbachState {
    pub eta: f64,
    pub lambda: f64,
    pub mu: f64,
    pub outer_iters: usize,
    pub inner_iters: usize,
    /// Parametric objective `A·p − η·R(p)` at exit; zero at the ratio's root.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSolution {
    pub power: BlockValue,
    pub state: DinkelbachState,
}

/// Block objective `ω·p·γΣD / R(p)`: the DS uplink energy weighted by `ω`.
pub fn sp1_objective(ctx: &SlotContext, u: usize, d: &UavDecision) -> f64 {
    let offloaded = d.gamma * ctx.uavs[u].ds_total_bits;
    if offloaded <= 0.0 {
        return 0.0;
    }
    let rate = ctx.ds_uplink_rate(d.p_sens);
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    ctx.omega * d.p_sens * offloaded / rate
}

/// Optimal DS power of UAV `u` with the other blocks fixed.
pub fn solve_sp1_uav(ctx: &SlotContext, u: usize, d: &UavDecision, tol: &ToleranceConfig) -> PowerSolution {
    let t = UavTerms::new(ctx, u);
    let pmax = ctx.link.max_tx_power_w;
    let offloaded = d.gamma * t.ds_bits;
    let mut state = DinkelbachState::default();
    if offloaded <= 0.0 {
        return PowerSolution { power: BlockValue::ok(0.0), state };
    }

    let bw = ctx.link.leo_bandwidth_hz / ctx.num_uavs() as f64;
    let noise_over_gain = ctx.link.noise_power_w / ctx.leo_gain;
    let rate = |p: f64| ctx.ds_uplink_rate(p);

    let slack = t.satellite_slack(d);
    if !(slack > 0.0) {
        return PowerSolution { power: BlockValue::flagged(pmax, BlockFlag::PowerDeadline), state };
    }
    let on_time = |p: f64| ctx.timing(u, &UavDecision { p_sens: p, ..*d }).is_ok_and(|t| t.satellite_path() <= d.delta_tol);
    let mut p_req = (2f64.powf(offloaded / (slack * bw)) - 1.0) * noise_over_gain;
    if !(p_req <= pmax) {
        // Rounding can push the closed form just past pmax on a tight deadline.
        if !(on_time(pmax) && p_req <= pmax * (1.0 + 1e-9)) {
            return PowerSolution { power: BlockValue::flagged(pmax, BlockFlag::PowerDeadline), state };
        }
        p_req = pmax;
    }

    let a = t.omega * offloaded;
    if a <= 0.0 {
        // Free energy: any feasible power is optimal, so take the least one.
        return PowerSolution { power: BlockValue::ok(settle(p_req, pmax, on_time)), state };
    }

    let mut p = p_req;
    for r in 1..=tol.r_max {
        state.outer_iters = r;
        let (mut lambda, mut mu) = (0.0f64, 0.0f64);
        let mut p_hat_prev = f64::NAN;
        for j in 1..=tol.j_max {
            state.inner_iters += 1;
            let water = (state.eta + lambda * slack) * bw / ((a + mu) * LN_2);
            let p_hat = (water - noise_over_gain).max(0.0).min(pmax);
            // Deadline subgradient relative to the offloaded volume, power subgradient relative to pmax.
            let grad_lambda = 1.0 - slack * rate(p_hat) / offloaded;
            let grad_mu = (p_hat - pmax) / pmax;
            lambda = (lambda + tol.step(j) * grad_lambda).max(0.0);
            mu = (mu + tol.step(j) * grad_mu).max(0.0);
            if (p_hat - p_hat_prev).abs() <= tol.xi * pmax {
                break;
            }
            p_hat_prev = p_hat;
        }
        state.lambda = lambda;
        state.mu = mu;

        let water_level = (state.eta * bw / (a * LN_2) - noise_over_gain).max(0.0);
        p = water_level.clamp(p_req, pmax);
        let r_p = rate(p);
        let eta_next = a * p / r_p;
        let change = (eta_next - state.eta).abs() * r_p;
        state.eta = eta_next;
        state.residual = a * p - state.eta * r_p;
        if change <= tol.eps {
            break;
        }
    }
    PowerSolution { power: BlockValue::ok(settle(p, pmax, on_time)), state }
}

/// Runs the power block for every UAV, writing the new powers into `decision`.
pub fn solve_sp1(ctx: &SlotContext, decision: &mut SlotDecision, tol: &ToleranceConfig) -> Vec<PowerSolution> {
    (0..decision.len())
        .map(|u| {
            let sol = solve_sp1_uav(ctx, u, &decision.uavs[u], tol);
            decision.uavs[u].p_sens = sol.power.value;
            sol
        })
        .collect()
}
