//! Radiation-pattern sampling over a (θ, φ) mesh, principal-plane cuts and
//! export to CSV, JSON and polar SVG.

mod element;
pub mod export;
pub mod svg;

pub use element::ElementPattern;

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array_factor::{planar_af, ArrayGeometry, SteeringPhase};
use crate::error::{Error, Result};
use crate::wave::{amplitude_to_db, clamp_db, normalize_phi, Direction, TrigMode};

pub const DEFAULT_DB_FLOOR: f64 = -60.0;

/// Half-power level in dB, `20·log10(1/√2)`.
pub const HALF_POWER_DB: f64 = -3.010_299_956_639_812;

/// Sample counts of a pattern mesh.
///
/// Polar angles span `[0, π]` with both ends included; azimuths span
/// `[0, 2π)` in `n_phi` equal steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for GridSpec {
    /// 0.5° in θ, 1° in φ.
    fn default() -> Self {
        Self {
            n_theta: 361,
            n_phi: 360,
        }
    }
}

impl GridSpec {
    pub fn thetas(&self) -> Vec<f64> {
        (0..self.n_theta)
            .map(|i| PI * i as f64 / (self.n_theta - 1) as f64)
            .collect()
    }

    pub fn phis(&self) -> Vec<f64> {
        (0..self.n_phi)
            .map(|j| TAU * j as f64 / self.n_phi as f64)
            .collect()
    }
}

/// Everything needed to regenerate a [`PatternGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternMeta {
    pub geometry: ArrayGeometry,
    pub steering: SteeringPhase,
    pub element: ElementPattern,
    pub mode: TrigMode,
    pub grid: GridSpec,
    pub db_floor: f64,
}

/// Peak-normalized `|AF·element|` sampled on a (θ, φ) mesh, stored θ-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    amplitude: Vec<f64>,
    db: Vec<f64>,
    meta: PatternMeta,
}

impl PatternGrid {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    /// Row-major (θ-major) amplitudes.
    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitude
    }

    pub fn dbs(&self) -> &[f64] {
        &self.db
    }

    pub fn meta(&self) -> &PatternMeta {
        &self.meta
    }

    pub fn amplitude(&self, i: usize, j: usize) -> f64 {
        self.amplitude[i * self.phis.len() + j]
    }

    pub fn db(&self, i: usize, j: usize) -> f64 {
        self.db[i * self.phis.len() + j]
    }
}

/// Samples `|AF(θ, φ)·element(θ)|` and normalizes the peak to 1.
pub fn sample_pattern(
    geom: &ArrayGeometry,
    steer: &SteeringPhase,
    element: ElementPattern,
    grid: GridSpec,
    mode: TrigMode,
    db_floor: f64,
) -> Result<PatternGrid> {
    if grid.n_theta < 2 || grid.n_phi < 2 {
        return Err(Error::domain(format!(
            "pattern grid needs at least 2x2 samples, got {}x{}",
            grid.n_theta, grid.n_phi
        )));
    }
    if !(db_floor.is_finite() && db_floor < 0.0) {
        return Err(Error::domain(format!(
            "dB floor must be negative, got {db_floor}"
        )));
    }
    let thetas = grid.thetas();
    let phis = grid.phis();

    let raw: Vec<f64> = thetas
        .par_iter()
        .flat_map_iter(|&theta| {
            let ef = element.factor(theta);
            phis.iter().map(move |&phi| {
                let dir = Direction::new(theta, phi).expect("grid angles are in range");
                planar_af(geom, steer, &dir, mode) * ef
            })
        })
        .collect();

    let peak = raw.iter().copied().fold(0.0f64, f64::max);
    if peak.is_nan() || peak <= 0.0 {
        return Err(Error::domain("pattern is identically zero"));
    }
    let amplitude: Vec<f64> = raw.iter().map(|v| v / peak).collect();
    let db = amplitude
        .iter()
        .map(|&a| clamp_db(amplitude_to_db(a), db_floor))
        .collect();

    Ok(PatternGrid {
        thetas,
        phis,
        amplitude,
        db,
        meta: PatternMeta {
            geometry: *geom,
            steering: *steer,
            element,
            mode,
            grid,
            db_floor,
        },
    })
}

/// Which principal cut to take from a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "angle")]
pub enum CutSpec {
    /// Fixed azimuth, sweep over θ.
    PhiConst(f64),
    /// Fixed polar angle, sweep over φ.
    ThetaConst(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutPoint {
    pub angle: f64,
    pub amplitude: f64,
    pub db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternCut {
    /// The cut as realized on the grid (nearest grid line).
    pub spec: CutSpec,
    pub points: Vec<CutPoint>,
}

/// Extracts the grid line nearest to the requested cut, without
/// interpolation.
pub fn principal_cut(grid: &PatternGrid, cut: CutSpec) -> Result<PatternCut> {
    match cut {
        CutSpec::PhiConst(phi) => {
            if !phi.is_finite() {
                return Err(Error::domain("cut azimuth must be finite"));
            }
            let target = normalize_phi(phi);
            let circ = |p: f64| {
                let d = (p - target).abs();
                d.min(TAU - d)
            };
            let j = nearest(&grid.phis, circ);
            let points = (0..grid.thetas.len())
                .map(|i| CutPoint {
                    angle: grid.thetas[i],
                    amplitude: grid.amplitude(i, j),
                    db: grid.db(i, j),
                })
                .collect();
            Ok(PatternCut {
                spec: CutSpec::PhiConst(grid.phis[j]),
                points,
            })
        }
        CutSpec::ThetaConst(theta) => {
            let t = &grid.thetas;
            let half_step = 0.5 * (t[1] - t[0]);
            if !theta.is_finite() || theta < t[0] - half_step || theta > t[t.len() - 1] + half_step
            {
                return Err(Error::domain(format!(
                    "cut polar angle {theta} lies outside the grid"
                )));
            }
            let i = nearest(t, |v| (v - theta).abs());
            let points = (0..grid.phis.len())
                .map(|j| CutPoint {
                    angle: grid.phis[j],
                    amplitude: grid.amplitude(i, j),
                    db: grid.db(i, j),
                })
                .collect();
            Ok(PatternCut {
                spec: CutSpec::ThetaConst(t[i]),
                points,
            })
        }
    }
}

fn nearest(values: &[f64], dist: impl Fn(f64) -> f64) -> usize {
    let mut best = (f64::INFINITY, 0);
    for (k, &v) in values.iter().enumerate() {
        let d = dist(v);
        if d < best.0 {
            best = (d, k);
        }
    }
    best.1
}

/// Full −3 dB (half-power) width of the lobe containing the cut's maximum,
/// in radians.
///
/// Crossings are located by linear interpolation in amplitude. A θ-cut whose
/// peak sits on a pole is mirrored through it; a φ-cut wraps around.
/// Returns `None` when the lobe never drops to half power.
pub fn main_lobe_width_3db(cut: &PatternCut) -> Option<f64> {
    let pts = &cut.points;
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let (peak_idx, peak) = pts
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, p)| {
            if p.amplitude > acc.1 {
                (k, p.amplitude)
            } else {
                acc
            }
        });
    if peak.is_nan() || peak <= 0.0 {
        return None;
    }
    let threshold = peak * 10f64.powf(HALF_POWER_DB / 20.0);
    let periodic = matches!(cut.spec, CutSpec::ThetaConst(_));

    let walk = |step: isize| -> Option<f64> {
        let mut prev = peak_idx;
        let mut span = 0.0;
        for _ in 1..n {
            let next = if periodic {
                (prev as isize + step).rem_euclid(n as isize) as usize
            } else {
                let k = prev as isize + step;
                if k < 0 || k >= n as isize {
                    return None;
                }
                k as usize
            };
            let mut gap = (pts[next].angle - pts[prev].angle).abs();
            if periodic && gap > PI {
                gap = TAU - gap;
            }
            let (a0, a1) = (pts[prev].amplitude, pts[next].amplitude);
            if a1 < threshold {
                let frac = if a0 > a1 {
                    (a0 - threshold) / (a0 - a1)
                } else {
                    0.0
                };
                return Some(span + frac * gap);
            }
            span += gap;
            prev = next;
        }
        None
    };

    match (walk(-1), walk(1)) {
        (Some(l), Some(r)) => Some(l + r),
        (None, Some(r)) if !periodic && peak_idx == 0 => Some(2.0 * r),
        (Some(l), None) if !periodic && peak_idx == n - 1 => Some(2.0 * l),
        _ => None,
    }
}
