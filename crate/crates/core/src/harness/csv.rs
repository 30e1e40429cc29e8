//! CSV persistence of runs and sweeps.
//!
//! Columns: `kind, algo, axis, value, seed, slot, utility, data_bits,
//! energy_j, ds_delay_s, infeasible_slots`.
//!
//! * `slot` rows hold one slot of one run; `infeasible_slots` is 0 or 1.
//! * `run` rows hold horizon totals of one run (`slot` empty).
//! * `mean` and `std` rows aggregate the runs of one (algo, value) point
//!   over seeds (`seed` and `slot` empty).
//!
//! Utility and data are in bits, energy in joules, delay in seconds. Floats
//! carry nine significant digits.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::experiment::ExperimentResult;
use super::sweep::{mean_std, Metrics, PointSummary, SweepTable};
use crate::config::Algorithm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    Slot,
    Run,
    Mean,
    Std,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub kind: RowKind,
    pub algo: Algorithm,
    pub axis: String,
    pub value: f64,
    pub seed: Option<u64>,
    pub slot: Option<usize>,
    pub metrics: Metrics,
}

#[derive(Serialize, Deserialize)]
struct RawRow {
    kind: RowKind,
    algo: String,
    axis: String,
    value: String,
    seed: Option<u64>,
    slot: Option<usize>,
    utility: String,
    data_bits: String,
    energy_j: String,
    ds_delay_s: String,
    infeasible_slots: String,
}

/// Nine significant digits in scientific notation.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.8e}")
    }
}

fn parse(field: &str, s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::config(format!("bad number `{s}` in column {field}")))
}

impl CsvRow {
    fn to_raw(&self) -> RawRow {
        let m = self.metrics;
        RawRow {
            kind: self.kind,
            algo: self.algo.name().into(),
            axis: self.axis.clone(),
            value: fmt_sig9(self.value),
            seed: self.seed,
            slot: self.slot,
            utility: fmt_sig9(m.utility),
            data_bits: fmt_sig9(m.data_bits),
            energy_j: fmt_sig9(m.energy_j),
            ds_delay_s: fmt_sig9(m.ds_delay_s),
            infeasible_slots: fmt_sig9(m.infeasible_slots),
        }
    }

    fn from_raw(r: RawRow) -> Result<Self> {
        Ok(Self {
            kind: r.kind,
            algo: r.algo.parse()?,
            axis: r.axis,
            value: parse("value", &r.value)?,
            seed: r.seed,
            slot: r.slot,
            metrics: Metrics {
                utility: parse("utility", &r.utility)?,
                data_bits: parse("data_bits", &r.data_bits)?,
                energy_j: parse("energy_j", &r.energy_j)?,
                ds_delay_s: parse("ds_delay_s", &r.ds_delay_s)?,
                infeasible_slots: parse("infeasible_slots", &r.infeasible_slots)?,
            },
        })
    }
}

/// Slot rows followed by the run row of one experiment.
pub fn run_rows(r: &ExperimentResult, axis: &str, value: f64) -> Vec<CsvRow> {
    let mut rows: Vec<CsvRow> = r
        .slots
        .iter()
        .map(|s| CsvRow {
            kind: RowKind::Slot,
            algo: r.algo,
            axis: axis.into(),
            value,
            seed: Some(r.seed),
            slot: Some(s.slot),
            metrics: Metrics {
                utility: s.utility,
                data_bits: s.data_bits,
                energy_j: s.energy.total(),
                ds_delay_s: s.ds_delay_s,
                infeasible_slots: if s.infeasible { 1.0 } else { 0.0 },
            },
        })
        .collect();
    rows.push(CsvRow {
        kind: RowKind::Run,
        algo: r.algo,
        axis: axis.into(),
        value,
        seed: Some(r.seed),
        slot: None,
        metrics: Metrics::of(r),
    });
    rows
}

fn summary_rows(s: &PointSummary, axis: &str) -> [CsvRow; 2] {
    let row = |kind, metrics| CsvRow { kind, algo: s.algo, axis: axis.into(), value: s.value, seed: None, slot: None, metrics };
    [row(RowKind::Mean, s.mean), row(RowKind::Std, s.std)]
}

/// All rows of a sweep: every run's slot and run rows, then mean and std rows.
pub fn table_rows(t: &SweepTable) -> Vec<CsvRow> {
    let mut rows: Vec<CsvRow> = t.cells.iter().flat_map(|c| run_rows(&c.result, &t.axis, c.value)).collect();
    for s in t.summaries() {
        rows.extend(summary_rows(&s, &t.axis));
    }
    rows
}

pub fn write_rows<W: Write>(w: W, rows: &[CsvRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r.to_raw())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(r: R) -> Result<Vec<CsvRow>> {
    csv::Reader::from_reader(r).deserialize::<RawRow>().map(|raw| CsvRow::from_raw(raw?)).collect()
}

pub fn write_csv(path: impl AsRef<Path>, rows: &[CsvRow]) -> Result<()> {
    write_rows(std::fs::File::create(path)?, rows)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<CsvRow>> {
    read_rows(std::fs::File::open(path)?)
}

/// Recomputes mean and std rows from the run rows of `rows`, in first-seen
/// (algo, value) order.
pub fn aggregate_runs(rows: &[CsvRow]) -> Vec<PointSummary> {
    let mut keys: Vec<(Algorithm, u64)> = Vec::new();
    for r in rows.iter().filter(|r| r.kind == RowKind::Run) {
        let k = (r.algo, r.value.to_bits());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.into_iter()
        .map(|(algo, bits)| {
            let samples: Vec<Metrics> = rows
                .iter()
                .filter(|r| r.kind == RowKind::Run && r.algo == algo && r.value.to_bits() == bits)
                .map(|r| r.metrics)
                .collect();
            let (mean, std) = mean_std(&samples);
            PointSummary { algo, value: f64::from_bits(bits), seeds: samples.len(), mean, std }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig9(123456789.123), "1.23456789e8");
        assert_eq!(fmt_sig9(0.0), "0");
        assert_eq!(fmt_sig9(-2.5e-3), "-2.50000000e-3");
        assert_eq!(fmt_sig9(1.0 / 3.0).parse::<f64>().unwrap(), 0.333333333);
    }

    #[test]
    fn rows_survive_a_round_trip() {
        let row = CsvRow {
            kind: RowKind::Mean,
            algo: Algorithm::NoOffload,
            axis: "k0".into(),
            value: 5.0,
            seed: None,
            slot: None,
            metrics: Metrics { utility: 1.5e9, data_bits: 2e9, energy_j: 321.0, ds_delay_s: 0.75, infeasible_slots: 0.0 },
        };
        let mut buf = Vec::new();
        write_rows(&mut buf, std::slice::from_ref(&row)).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("kind,algo,axis,value,seed,slot,utility,data_bits,energy_j,ds_delay_s,infeasible_slots\n"));
        assert_eq!(read_rows(buf.as_slice()).unwrap(), vec![row]);
    }
}
