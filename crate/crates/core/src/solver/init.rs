//! Starting decisions for the alternating loop.
//!
//! The deadline-tight start solves a relaxation that drops the energy terms.
//! In the usual rate-limited regime every second of DS work shortens the DT
//! uplink, so the slot utility is governed by the summed completion time.
//! With full power and both branches balanced, UAV `u`'s completion time is
//!
//! ```text
//! T(f) = off + a − a·(a − 2·prop)·f / ((a + c)·f + d)
//! ```
//!
//! with `a = f0·ΣD/F_u`, `c = ΣD/R(pmax)` and `d = f0·ΣD`. `T` is convex and
//! decreasing in `f`, so the budget split that minimizes `Σ T` equalizes the
//! marginal gains. A bisection on the common marginal value finds it.

use super::{start_time, InitStrategy, SolverMode, UavTerms};
use crate::model::{SlotContext, SlotDecision, UavDecision};

struct Balance {
    a: f64,
    c: f64,
    d: f64,
    two_prop: f64,
}

impl Balance {
    fn new(ctx: &SlotContext, u: usize) -> Option<Self> {
        let t = UavTerms::new(ctx, u);
        let r = ctx.ds_uplink_rate(ctx.link.max_tx_power_w);
        let a = t.f0 * t.ds_bits / t.uav_cpu;
        let two_prop = 2.0 * t.prop;
        // Offloading only pays when local compute outlasts the round trip.
        (t.ds_bits > 0.0 && r > 0.0 && a > two_prop).then(|| Balance { a, c: t.ds_bits / r, d: t.f0 * t.ds_bits, two_prop })
    }

    /// CPU share at which the marginal time saving equals `nu`.
    fn share(&self, nu: f64, cap: f64) -> f64 {
        let root = (self.a * (self.a - self.two_prop) * self.d / nu).sqrt();
        ((root - self.d) / (self.a + self.c)).clamp(0.0, cap)
    }

    /// Ratio that makes the local and satellite branches finish together.
    fn ratio(&self, f: f64) -> f64 {
        if f <= 0.0 {
            return 0.0;
        }
        ((self.a - self.two_prop) / (self.a + self.c + self.d / f)).clamp(0.0, 1.0)
    }
}

/// Satellite CPU split minimizing the summed balanced completion time.
pub(crate) fn balanced_split(ctx: &SlotContext) -> Vec<f64> {
    let cap = ctx.compute.leo_cpu_hz;
    let parts: Vec<Option<Balance>> = (0..ctx.num_uavs()).map(|u| Balance::new(ctx, u)).collect();
    let total = |nu: f64| parts.iter().flatten().map(|b| b.share(nu, cap)).sum::<f64>();
    if parts.iter().all(Option::is_none) {
        return vec![0.0; parts.len()];
    }
    // Work in log space: the marginal values span many decades.
    let (mut lo, mut hi) = (-200.0f64, 200.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid.exp()) > cap {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let nu = hi.exp();
    let mut split: Vec<f64> = parts.iter().map(|b| b.as_ref().map_or(0.0, |b| b.share(nu, cap))).collect();
    let sum: f64 = split.iter().sum();
    if sum > cap {
        split.iter_mut().for_each(|f| *f *= cap / sum);
    }
    split
}

/// Initial decision of the alternating loop under `strategy`.
pub fn initial_decision(ctx: &SlotContext, strategy: InitStrategy, mode: SolverMode) -> SlotDecision {
    let n = ctx.num_uavs();
    match strategy {
        InitStrategy::Interior => SlotDecision::new(vec![
            UavDecision {
                p_sens: 0.5 * ctx.link.max_tx_power_w,
                f_leo: ctx.compute.leo_cpu_hz / n as f64,
                delta_tol: 0.5 * ctx.slot_len,
                gamma: 0.5,
            };
            n
        ]),
        InitStrategy::DeadlineTight => {
            let split = balanced_split(ctx);
            let mut dec = SlotDecision::new(
                split
                    .iter()
                    .enumerate()
                    .map(|(u, &f)| {
                        let gamma = Balance::new(ctx, u).map_or(0.0, |b| b.ratio(f));
                        UavDecision {
                            p_sens: if gamma > 0.0 { ctx.link.max_tx_power_w } else { 0.0 },
                            f_leo: if gamma > 0.0 { f } else { 0.0 },
                            delta_tol: ctx.slot_len,
                            gamma,
                        }
                    })
                    .collect(),
            );
            start_time::solve_sp3(ctx, &mut dec, mode);
            dec
        }
    }
}
