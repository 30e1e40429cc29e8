//! Parameter sweeps and paired-seed comparisons.
//!
//! Every (algorithm, value, seed) cell is an independent run executed on the
//! rayon pool. Cells are stored in a fixed order, so the output does not
//! depend on scheduling.

use rayon::prelude::*;

use super::experiment::{run_experiment_with, ExperimentResult};
use crate::config::{Algorithm, ScenarioConfig};
use crate::error::{Error, Result};

/// The headline metrics of one run, or their mean or spread across seeds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics {
    pub utility: f64,
    pub data_bits: f64,
    pub energy_j: f64,
    pub ds_delay_s: f64,
    pub infeasible_slots: f64,
}

impl Metrics {
    pub const NAMES: [&'static str; 5] = ["utility", "data_bits", "energy_j", "ds_delay_s", "infeasible_slots"];

    pub fn of(r: &ExperimentResult) -> Self {
        Self {
            utility: r.utility(),
            data_bits: r.data_bits(),
            energy_j: r.energy_j(),
            ds_delay_s: r.avg_ds_delay_s(),
            infeasible_slots: r.infeasible_slots() as f64,
        }
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.utility, self.data_bits, self.energy_j, self.ds_delay_s, self.infeasible_slots]
    }

    pub fn from_array(a: [f64; 5]) -> Self {
        Self { utility: a[0], data_bits: a[1], energy_j: a[2], ds_delay_s: a[3], infeasible_slots: a[4] }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Self::NAMES.iter().position(|n| *n == name).map(|i| self.to_array()[i])
    }
}

/// Mean and sample standard deviation of each metric.
pub fn mean_std(samples: &[Metrics]) -> (Metrics, Metrics) {
    let n = samples.len();
    if n == 0 {
        return (Metrics::default(), Metrics::default());
    }
    let mut mean = [0.0; 5];
    for s in samples {
        for (m, v) in mean.iter_mut().zip(s.to_array()) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut var = [0.0; 5];
    if n > 1 {
        for s in samples {
            for ((v, x), m) in var.iter_mut().zip(s.to_array()).zip(mean) {
                *v += (x - m).powi(2);
            }
        }
        var.iter_mut().for_each(|v| *v = (*v / (n - 1) as f64).sqrt());
    }
    (Metrics::from_array(mean), Metrics::from_array(var))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub algo: Algorithm,
    pub value: f64,
    pub seed: u64,
    pub result: ExperimentResult,
}

/// Aggregate of one (algorithm, value) point over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub algo: Algorithm,
    pub value: f64,
    pub seeds: usize,
    pub mean: Metrics,
    pub std: Metrics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Swept parameter, or `"none"` for a plain comparison.
    pub axis: String,
    pub values: Vec<f64>,
    pub algos: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    /// Cells ordered by algorithm, then value, then seed.
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn summaries(&self) -> Vec<PointSummary> {
        let mut out = Vec::new();
        for &algo in &self.algos {
            for &value in &self.values {
                let samples: Vec<Metrics> = self
                    .cells
                    .iter()
                    .filter(|c| c.algo == algo && c.value.to_bits() == value.to_bits())
                    .map(|c| Metrics::of(&c.result))
                    .collect();
                let (mean, std) = mean_std(&samples);
                out.push(PointSummary { algo, value, seeds: samples.len(), mean, std });
            }
        }
        out
    }

    pub fn summary(&self, algo: Algorithm, value: f64) -> Option<PointSummary> {
        self.summaries().into_iter().find(|s| s.algo == algo && s.value.to_bits() == value.to_bits())
    }

    pub fn cell(&self, algo: Algorithm, value: f64, seed: u64) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.algo == algo && c.value.to_bits() == value.to_bits() && c.seed == seed)
    }

    pub fn infeasible_slots(&self) -> usize {
        self.cells.iter().map(|c| c.result.infeasible_slots()).sum()
    }
}

fn run_cells(base: &ScenarioConfig, axis: Option<&str>, values: &[f64], seeds: &[u64], algos: &[Algorithm]) -> Result<Vec<SweepCell>> {
    let mut jobs = Vec::with_capacity(algos.len() * values.len() * seeds.len());
    for &algo in algos {
        for &value in values {
            let mut cfg = base.clone();
            if let Some(axis) = axis {
                cfg.set_axis(axis, value)?;
                cfg.validate()?;
            }
            for &seed in seeds {
                jobs.push((algo, value, seed, cfg.clone()));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(algo, value, seed, cfg)| {
            let result = run_experiment_with(&cfg, seed, algo)?;
            Ok(SweepCell { algo, value, seed, result })
        })
        .collect()
}

/// Runs every algorithm for every axis value and seed.
pub fn run_sweep(
    base: &ScenarioConfig,
    axis: &str,
    values: &[f64],
    seeds: &[u64],
    algos: &[Algorithm],
) -> Result<SweepTable> {
    if values.is_empty() || seeds.is_empty() || algos.is_empty() {
        return Err(Error::config("a sweep needs at least one value, one seed and one algorithm"));
    }
    base.clone().set_axis(axis, values[0])?;
    let cells = run_cells(base, Some(axis), values, seeds, algos)?;
    Ok(SweepTable { axis: axis.to_string(), values: values.to_vec(), algos: algos.to_vec(), seeds: seeds.to_vec(), cells })
}

/// Runs every algorithm on the same seeds with the base configuration.
pub fn run_compare(base: &ScenarioConfig, seeds: &[u64], algos: &[Algorithm]) -> Result<SweepTable> {
    if seeds.is_empty() || algos.is_empty() {
        return Err(Error::config("a comparison needs at least one seed and one algorithm"));
    }
    let cells = run_cells(base, None, &[0.0], seeds, algos)?;
    Ok(SweepTable { axis: "none".into(), values: vec![0.0], algos: algos.to_vec(), seeds: seeds.to_vec(), cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_sample_std() {
        let a = Metrics { utility: 1.0, ..Metrics::default() };
        let b = Metrics { utility: 3.0, ..Metrics::default() };
        let (m, s) = mean_std(&[a, b]);
        assert_eq!(m.utility, 2.0);
        assert_eq!(s.utility, 2f64.sqrt());
        assert_eq!(mean_std(&[a]).1, Metrics::default());
    }

    #[test]
    fn unknown_axis_is_a_config_error() {
        let err = run_sweep(&ScenarioConfig::default(), "altitude", &[1.0], &[1], &[Algorithm::Jcorm]).unwrap_err();
        assert!(err.is_config());
    }

    #[test]
    fn sweep_orders_cells_and_applies_values() {
        let base = ScenarioConfig { num_slots: 2, ..ScenarioConfig::default() };
        let t = run_sweep(&base, "omega", &[0.1, 10.0], &[1, 2], &[Algorithm::Jcorm, Algorithm::NoOffload]).unwrap();
        assert_eq!(t.cells.len(), 8);
        let order: Vec<_> = t.cells.iter().map(|c| (c.algo, c.value, c.seed)).collect();
        assert_eq!(order[0], (Algorithm::Jcorm, 0.1, 1));
        assert_eq!(order[3], (Algorithm::Jcorm, 10.0, 2));
        assert_eq!(order[4], (Algorithm::NoOffload, 0.1, 1));
        let low = t.summary(Algorithm::Jcorm, 0.1).unwrap().mean.utility;
        let high = t.summary(Algorithm::Jcorm, 10.0).unwrap().mean.utility;
        assert!(low > high);
    }
}
