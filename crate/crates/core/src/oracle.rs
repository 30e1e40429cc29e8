//! Brute-force reference solvers for tests and debugging.
//!
//! Everything here scores candidates through the model evaluators only and
//! shares no optimization logic with [`crate::solver`]. Each search returns
//! the best grid point, breaking ties by the lowest grid index, or
//! [`GridOutcome::Empty`] when no grid point is feasible.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{SlotContext, SlotDecision, UavDecision};

/// Evenly spaced points on `[lower, upper]`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(lower: f64, upper: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::config("a grid needs at least two points"));
        }
        if !(lower <= upper) {
            return Err(Error::config(format!("grid bounds out of order: {lower} > {upper}")));
        }
        Ok(Self { lower, upper, points })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.upper
        } else {
            self.lower + (self.upper - self.lower) * i as f64 / (self.points - 1) as f64
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.value(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GridOutcome<T> {
    Best { arg: T, objective: f64, index: usize },
    Empty,
}

impl<T> GridOutcome<T> {
    pub fn objective(&self) -> Option<f64> {
        match self {
            GridOutcome::Best { objective, .. } => Some(*objective),
            GridOutcome::Empty => None,
        }
    }

    pub fn arg(&self) -> Option<&T> {
        match self {
            GridOutcome::Best { arg, .. } => Some(arg),
            GridOutcome::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, GridOutcome::Empty)
    }
}

/// Picks the larger objective, then the smaller index.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Maximizes `score` over the grid; `None` marks an infeasible point.
fn search_max(grid: &GridSpec, score: impl Fn(f64) -> Option<f64> + Sync) -> GridOutcome<f64> {
    let best = (0..grid.points)
        .into_par_iter()
        .filter_map(|i| score(grid.value(i)).filter(|s| !s.is_nan()).map(|s| (s, i)))
        .reduce_with(better);
    match best {
        Some((objective, index)) => GridOutcome::Best { arg: grid.value(index), objective, index },
        None => GridOutcome::Empty,
    }
}

fn search_min(grid: &GridSpec, cost: impl Fn(f64) -> Option<f64> + Sync) -> GridOutcome<f64> {
    match search_max(grid, |x| cost(x).map(|c| -c)) {
        GridOutcome::Best { arg, objective, index } => GridOutcome::Best { arg, objective: -objective, index },
        GridOutcome::Empty => GridOutcome::Empty,
    }
}

/// Direction of a 1-D search, for [`zoomed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Two-pass grid search. The second pass spends the same number of points
/// on the two cells around the first optimum, so boundary optima are
/// resolved to `(upper − lower) / points²`. The better pass wins; a tie
/// keeps the first pass. Indices of the second pass start at `grid.points`.
pub fn zoomed(grid: &GridSpec, sense: Sense, search: impl Fn(&GridSpec) -> GridOutcome<f64>) -> GridOutcome<f64> {
    let first = search(grid);
    let GridOutcome::Best { index, .. } = first else {
        return first;
    };
    let lo = grid.value(index.saturating_sub(1));
    let hi = grid.value((index + 1).min(grid.points - 1));
    let Ok(fine) = GridSpec::new(lo, hi, grid.points) else {
        return first;
    };
    match (search(&fine), first) {
        (GridOutcome::Best { arg, objective, index: i }, GridOutcome::Best { objective: o1, .. })
            if (sense == Sense::Maximize && objective > o1) || (sense == Sense::Minimize && objective < o1) =>
        {
            GridOutcome::Best { arg, objective, index: grid.points + i }
        }
        (_, first) => first,
    }
}

/// Weighted slot energy `ω·E` of UAV `u`, with the satellite-branch deadline.
fn energy_if_satellite_on_time(ctx: &SlotContext, u: usize, d: &UavDecision) -> Option<f64> {
    let o = ctx.evaluate_uav(u, d).ok()?;
    (o.timing.satellite_path() <= d.delta_tol).then(|| ctx.omega * o.energy.total())
}

/// Weighted DS uplink energy `ω·p·(γΣD / R(p))` of UAV `u`.
pub fn power_objective(ctx: &SlotContext, u: usize, d: &UavDecision) -> Option<f64> {
    let t = ctx.timing(u, d).ok()?;
    Some(ctx.omega * d.p_sens * t.uplink)
}

/// Power minimizing the DS uplink energy subject to the satellite-branch deadline.
pub fn grid_sp1(ctx: &SlotContext, u: usize, fixed: &UavDecision, grid: &GridSpec) -> GridOutcome<f64> {
    search_min(grid, |p| {
        let d = UavDecision { p_sens: p, ..*fixed };
        let t = ctx.timing(u, &d).ok()?;
        (p <= ctx.link.max_tx_power_w && t.satellite_path() <= d.delta_tol).then(|| ctx.omega * p * t.uplink)
    })
}

/// Satellite CPU share minimizing the weighted slot energy subject to the satellite-branch deadline.
pub fn grid_sp2(ctx: &SlotContext, u: usize, fixed: &UavDecision, grid: &GridSpec) -> GridOutcome<f64> {
    search_min(grid, |f| {
        let d = UavDecision { f_leo: f, ..*fixed };
        if f > ctx.compute.leo_cpu_hz {
            return None;
        }
        energy_if_satellite_on_time(ctx, u, &d)
    })
}

/// UAV utility in Mbit under every strict constraint (deadline and storage).
pub fn feasible_utility_mbit(ctx: &SlotContext, u: usize, d: &UavDecision) -> Option<f64> {
    let o = ctx.evaluate_uav(u, d).ok()?;
    o.violation.is_clear().then_some(o.utility / 1e6)
}

/// DT start time maximizing the UAV utility (Mbit) under every strict constraint.
pub fn grid_sp3(ctx: &SlotContext, u: usize, fixed: &UavDecision, grid: &GridSpec) -> GridOutcome<f64> {
    search_max(grid, |delta| feasible_utility_mbit(ctx, u, &UavDecision { delta_tol: delta, ..*fixed }))
}

/// Offloading ratio minimizing the weighted slot energy subject to both deadline branches.
pub fn grid_sp4(ctx: &SlotContext, u: usize, fixed: &UavDecision, grid: &GridSpec) -> GridOutcome<f64> {
    search_min(grid, |gamma| {
        let d = UavDecision { gamma, ..*fixed };
        let o = ctx.evaluate_uav(u, &d).ok()?;
        (o.violation.deadline == 0.0 && o.violation.bounds == 0.0).then(|| ctx.omega * o.energy.total())
    })
}

/// Axes of the joint search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointGrid {
    pub p: GridSpec,
    pub f: GridSpec,
    pub delta: GridSpec,
    pub gamma: GridSpec,
}

impl JointGrid {
    /// Full boxes of `ctx` with `points` per axis.
    pub fn full(ctx: &SlotContext, points: usize) -> Result<Self> {
        Ok(Self {
            p: GridSpec::new(0.0, ctx.link.max_tx_power_w, points)?,
            f: GridSpec::new(0.0, ctx.compute.leo_cpu_hz, points)?,
            delta: GridSpec::new(0.0, ctx.slot_len, points)?,
            gamma: GridSpec::new(0.0, 1.0, points)?,
        })
    }
}

pub const MAX_JOINT_UAVS: usize = 2;
pub const MAX_JOINT_POINTS: usize = 25;

/// Best `(p, δ_tol, γ)` of UAV `u` for a fixed CPU share, or `None`.
fn best_for_share(ctx: &SlotContext, u: usize, f: f64, grid: &JointGrid) -> Option<(f64, usize, UavDecision)> {
    let mut best: Option<(f64, usize, UavDecision)> = None;
    let mut index = 0usize;
    for p in grid.p.values() {
        for delta in grid.delta.values() {
            for gamma in grid.gamma.values() {
                let d = UavDecision { p_sens: p, f_leo: f, delta_tol: delta, gamma };
                if let Ok(o) = ctx.evaluate_uav(u, &d) {
                    if o.violation.is_clear() && best.as_ref().is_none_or(|b| o.utility > b.0) {
                        best = Some((o.utility, index, d));
                    }
                }
                index += 1;
            }
        }
    }
    best
}

/// Exhaustive maximization of the slot utility (bits) for one or two UAVs.
///
/// Utilities are separable across UAVs except through the shared satellite
/// CPU budget, so the search tabulates each UAV's best point per CPU share
/// and then scans the budget-feasible share pairs. The result equals a full
/// product-grid search with lexicographic tie-breaking.
pub fn grid_joint(ctx: &SlotContext, grid: &JointGrid) -> Result<GridOutcome<SlotDecision>> {
    let n = ctx.num_uavs();
    if n == 0 || n > MAX_JOINT_UAVS {
        return Err(Error::config(format!("joint oracle handles 1..={MAX_JOINT_UAVS} UAVs, got {n}")));
    }
    let axes = [grid.p.points, grid.f.points, grid.delta.points, grid.gamma.points];
    if axes.iter().any(|&k| k > MAX_JOINT_POINTS) {
        return Err(Error::config(format!("joint oracle allows at most {MAX_JOINT_POINTS} points per axis")));
    }
    let shares: Vec<f64> = grid.f.values().collect();
    let tables: Vec<Vec<Option<(f64, usize, UavDecision)>>> = (0..n)
        .map(|u| shares.par_iter().map(|&f| best_for_share(ctx, u, f, grid)).collect())
        .collect();

    let budget = ctx.compute.leo_cpu_hz;
    let mut best: Option<(f64, usize, Vec<UavDecision>)> = None;
    let inner = grid.p.points * grid.delta.points * grid.gamma.points;
    let mut consider = |utility: f64, key: usize, ds: Vec<UavDecision>| {
        if best.as_ref().is_none_or(|b| utility > b.0 || (utility == b.0 && key < b.1)) {
            best = Some((utility, key, ds));
        }
    };
    match n {
        1 => {
            for (k, entry) in tables[0].iter().enumerate() {
                if let Some((v, i, d)) = entry {
                    consider(*v, k * inner + i, vec![*d]);
                }
            }
        }
        _ => {
            let per_uav = grid.f.points * inner;
            for (k1, e1) in tables[0].iter().enumerate() {
                for (k2, e2) in tables[1].iter().enumerate() {
                    if shares[k1] + shares[k2] > budget {
                        continue;
                    }
                    if let (Some((v1, i1, d1)), Some((v2, i2, d2))) = (e1, e2) {
                        consider(v1 + v2, (k1 * inner + i1) * per_uav + k2 * inner + i2, vec![*d1, *d2]);
                    }
                }
            }
        }
    }
    Ok(match best {
        Some((objective, index, ds)) => GridOutcome::Best { arg: SlotDecision::new(ds), objective, index },
        None => GridOutcome::Empty,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::fixtures::context;

    #[test]
    fn grid_points_cover_both_ends() {
        let g = GridSpec::new(0.0, 1.0, 5).unwrap();
        assert_eq!(g.values().collect::<Vec<_>>(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn zero_ratio_power_search_is_free() {
        let ctx = context(1, 1);
        let d = UavDecision { p_sens: 0.3, f_leo: 1e9, delta_tol: 5.0, gamma: 0.0 };
        let out = grid_sp1(&ctx, 0, &d, &GridSpec::new(0.0, 1.0, 11).unwrap());
        assert_eq!(out, GridOutcome::Best { arg: 0.0, objective: 0.0, index: 0 });
    }

    #[test]
    fn impossible_deadline_is_empty() {
        let ctx = context(1, 1);
        let d = UavDecision { p_sens: 0.3, f_leo: 1e6, delta_tol: 0.5, gamma: 1.0 };
        assert!(grid_sp1(&ctx, 0, &d, &GridSpec::new(0.0, 1.0, 101).unwrap()).is_empty());
    }

    #[test]
    fn joint_rejects_large_instances() {
        let ctx = context(3, 1);
        let grid = JointGrid::full(&ctx, 5).unwrap();
        assert!(grid_joint(&ctx, &grid).is_err());
        let ctx = context(1, 1);
        assert!(grid_joint(&ctx, &JointGrid::full(&ctx, 26).unwrap()).is_err());
    }

    #[test]
    fn idle_network_scores_zero() {
        let mut ctx = context(1, 1);
        let s = &mut ctx.uavs[0];
        s.ds_bits.iter_mut().for_each(|b| *b = 0.0);
        s.ds_total_bits = 0.0;
        s.offload_time = 0.0;
        s.dt_rate_sum = 0.0;
        s.remaining_bits = ctx.capacity_bits;
        ctx.omega = 0.0;
        let out = grid_joint(&ctx, &JointGrid::full(&ctx, 5).unwrap()).unwrap();
        assert_eq!(out.objective(), Some(0.0));
    }

    #[test]
    fn two_uav_decomposition_matches_brute_force() {
        let ctx = context(2, 6);
        let grid = JointGrid::full(&ctx, 4).unwrap();
        let fast = grid_joint(&ctx, &grid).unwrap();
        // Plain 8-D enumeration in row-major order.
        let mut best: Option<(f64, SlotDecision)> = None;
        let pts = |g: &GridSpec| g.values().collect::<Vec<_>>();
        let singles: Vec<UavDecision> = pts(&grid.f)
            .iter()
            .flat_map(|&f| {
                let (ps, ds, gs) = (pts(&grid.p), pts(&grid.delta), pts(&grid.gamma));
                ps.into_iter().flat_map(move |p| {
                    let gs = gs.clone();
                    ds.clone().into_iter().flat_map(move |delta| {
                        gs.clone().into_iter().map(move |gamma| UavDecision { p_sens: p, f_leo: f, delta_tol: delta, gamma })
                    })
                })
            })
            .collect();
        for a in &singles {
            for b in &singles {
                let dec = SlotDecision::new(vec![*a, *b]);
                if let Ok(e) = ctx.evaluate(&dec) {
                    if e.is_feasible() && best.as_ref().is_none_or(|x| e.utility > x.0) {
                        best = Some((e.utility, dec));
                    }
                }
            }
        }
        let (v, _) = best.unwrap();
        assert!((fast.objective().unwrap() - v).abs() <= 1e-9 * v.abs());
    }
}
