//! CSV and JSON encodings. CSV files start with one `#` metadata line, then
//! a single header line.

use num_complex::Complex64;
use serde::Serialize;

use super::commands::FactorReport;
use crate::error::{invalid, Result};
use crate::phasespace::{TrajectoryPoint, TrajectoryRow};
use crate::quantum::{DistributionRow, DistributionTable};

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("plain data serializes");
    bytes.push(b'\n');
    bytes
}

fn csv_bytes<R: Serialize>(meta: Option<String>, rows: &[R]) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    if let Some(meta) = meta {
        out.extend_from_slice(format!("# {meta}\n").as_bytes());
    }
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| invalid(format!("csv encoding failed: {e}")))?;
    }
    writer
        .into_inner()
        .map_err(|e| invalid(format!("csv encoding failed: {e}")))
}

pub fn dist_csv(table: &DistributionTable) -> Result<Vec<u8>> {
    let meta = format!(
        "q={},N={},x={},L={},k={},mode={}",
        table.q, table.n, table.x, table.period, table.k, table.mode
    );
    csv_bytes::<DistributionRow>(Some(meta), &table.rows)
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct FactorRow<'a> {
    N: u64,
    x: u64,
    l: u32,
    q: u64,
    mode: String,
    seed: u64,
    trials: usize,
    recovered_L: Option<u64>,
    factor_1: Option<u64>,
    factor_2: Option<u64>,
    lucky: bool,
    success: bool,
    measured_c: &'a str,
}

/// One row; `measured_c` is space-separated.
pub fn factor_csv(report: &FactorReport) -> Result<Vec<u8>> {
    let measured: Vec<String> = report.measured_c.iter().map(|c| c.to_string()).collect();
    let measured = measured.join(" ");
    let row = FactorRow {
        N: report.N,
        x: report.x,
        l: report.l,
        q: report.q,
        mode: report.mode.to_string(),
        seed: report.seed,
        trials: report.trials,
        recovered_L: report.recovered_L,
        factor_1: report.factors.map(|f| f[0]),
        factor_2: report.factors.map(|f| f[1]),
        lucky: report.lucky,
        success: report.success,
        measured_c: &measured,
    };
    csv_bytes(None, &[row])
}

pub fn phase_csv(traj: &[TrajectoryPoint]) -> Result<Vec<u8>> {
    let rows: Vec<TrajectoryRow> = traj.iter().map(TrajectoryRow::from).collect();
    csv_bytes(None, &rows)
}

#[derive(Serialize)]
struct PhaseDocument {
    lambda0: [f64; 2],
    dphi: f64,
    steps: usize,
    rows: Vec<TrajectoryRow>,
}

pub fn phase_json(lambda0: Complex64, dphi: f64, traj: &[TrajectoryPoint]) -> Vec<u8> {
    json_bytes(&PhaseDocument {
        lambda0: [lambda0.re, lambda0.im],
        dphi,
        steps: traj.len().saturating_sub(1),
        rows: traj.iter().map(TrajectoryRow::from).collect(),
    })
}
