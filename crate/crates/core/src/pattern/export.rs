//! CSV and JSON serializations. All output is byte-deterministic.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::{CutSpec, PatternCut, PatternGrid, PatternMeta};
use crate::error::{Error, Result};

pub const GRID_CSV_HEADER: &str = "theta_deg,phi_deg,amplitude,db";
pub const CUT_CSV_HEADER: &str = "angle_deg,amplitude,db";

/// Nine significant digits in scientific notation; `-0` prints as `0`.
pub fn sig9(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.8e}")
}

fn deg6(rad: f64) -> String {
    let d = rad.to_degrees();
    let d = if d == 0.0 { 0.0 } else { d };
    format!("{d:.6}")
}

/// One row per cell, θ-major, header `theta_deg,phi_deg,amplitude,db`.
pub fn grid_to_csv(grid: &PatternGrid) -> String {
    let thetas = grid.thetas();
    let phis = grid.phis();
    let mut out = String::with_capacity(48 * (thetas.len() * phis.len() + 1));
    out.push_str(GRID_CSV_HEADER);
    out.push('\n');
    let phi_cols: Vec<String> = phis.iter().map(|&p| deg6(p)).collect();
    for (i, &theta) in thetas.iter().enumerate() {
        let t = deg6(theta);
        for (j, p) in phi_cols.iter().enumerate() {
            let _ = writeln!(
                out,
                "{t},{p},{},{}",
                sig9(grid.amplitude(i, j)),
                sig9(grid.db(i, j))
            );
        }
    }
    out
}

pub fn cut_to_csv(cut: &PatternCut) -> String {
    let mut out = String::from(CUT_CSV_HEADER);
    out.push('\n');
    for p in &cut.points {
        let _ = writeln!(
            out,
            "{},{},{}",
            deg6(p.angle),
            sig9(p.amplitude),
            sig9(p.db)
        );
    }
    out
}

/// Two-column numeric series with the given header names.
pub fn series_to_csv(x_name: &str, y_name: &str, points: &[(f64, f64)]) -> String {
    let mut out = format!("{x_name},{y_name}\n");
    for (x, y) in points {
        let _ = writeln!(out, "{},{}", sig9(*x), sig9(*y));
    }
    out
}

#[derive(Serialize)]
struct GridJson<'a> {
    thetas_deg: Vec<f64>,
    phis_deg: Vec<f64>,
    amplitude: &'a [f64],
    db: &'a [f64],
    meta: &'a PatternMeta,
}

pub fn grid_to_json(grid: &PatternGrid) -> Result<String> {
    let doc = GridJson {
        thetas_deg: grid.thetas().iter().map(|t| t.to_degrees()).collect(),
        phis_deg: grid.phis().iter().map(|p| p.to_degrees()).collect(),
        amplitude: grid.amplitudes(),
        db: grid.dbs(),
        meta: grid.meta(),
    };
    Ok(serde_json::to_string(&doc)?)
}

#[derive(Serialize)]
struct CutJson<'a> {
    cut: &'a CutSpec,
    angles_deg: Vec<f64>,
    amplitude: Vec<f64>,
    db: Vec<f64>,
}

pub fn cut_to_json(cut: &PatternCut) -> Result<String> {
    let doc = CutJson {
        cut: &cut.spec,
        angles_deg: cut.points.iter().map(|p| p.angle.to_degrees()).collect(),
        amplitude: cut.points.iter().map(|p| p.amplitude).collect(),
        db: cut.points.iter().map(|p| p.db).collect(),
    };
    Ok(serde_json::to_string(&doc)?)
}

/// Writes `bytes` to `path`, reporting the path on failure.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
