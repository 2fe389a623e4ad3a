//! Closed-form null, main-lobe and grating-lobe angles of a uniform line
//! array, with `θ` measured from the array axis and phase
//! `ρ(θ) = 2π·a·cosθ + α`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arguments within this distance outside `[-1, 1]` are rounding noise.
const VISIBLE_SLACK: f64 = 1e-12;
const DEDUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LobeKind {
    Null,
    /// The `m = 0` main beam.
    Peak,
    /// Any `m >= 1` full-height replica of the main beam.
    GratingLobe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LobeReport {
    pub kind: LobeKind,
    /// `n` for nulls, `m` for peaks.
    pub index: u32,
    pub theta: f64,
    pub arccos_argument: f64,
}

/// The line-array phase `2π·a·cosθ + α` the solvers invert.
pub fn line_phase(spacing: f64, alpha: f64, theta: f64) -> f64 {
    TAU * spacing * theta.cos() + alpha
}

fn check_spacing(a: f64) -> Result<()> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::domain(format!(
            "spacing must be positive and finite, got {a}"
        )));
    }
    Ok(())
}

fn visible(arg: f64) -> Option<f64> {
    if arg.abs() <= 1.0 + VISIBLE_SLACK {
        Some(arg.clamp(-1.0, 1.0))
    } else {
        None
    }
}

fn finish(mut lobes: Vec<LobeReport>) -> Vec<LobeReport> {
    lobes.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    lobes.dedup_by(|b, a| (a.theta - b.theta).abs() <= DEDUP_TOL);
    lobes
}

/// Angles where the `n`-element factor vanishes: `cos θ = (−α ± 2πk/n)/(2πa)`
/// for `k` not a multiple of `n`.
///
/// Enumeration stops once both signs have left the visible region for good,
/// or after `10·n` indices.
pub fn null_angles(n: usize, a: f64, alpha: f64) -> Result<Vec<LobeReport>> {
    if n < 2 {
        return Err(Error::domain(format!(
            "a {n}-element array has no nulls; need at least 2"
        )));
    }
    check_spacing(a)?;
    if !alpha.is_finite() {
        return Err(Error::domain("progressive phase must be finite"));
    }
    let scale = TAU * a;
    let mut out = Vec::new();
    for k in 1..=(10 * n) {
        let shift = TAU * k as f64 / n as f64;
        if shift - alpha.abs() > scale * (1.0 + VISIBLE_SLACK) {
            break;
        }
        if k % n == 0 {
            continue;
        }
        for sign in [1.0, -1.0] {
            if let Some(arg) = visible((-alpha + sign * shift) / scale) {
                out.push(LobeReport {
                    kind: LobeKind::Null,
                    index: k as u32,
                    theta: arg.acos(),
                    arccos_argument: arg,
                });
            }
        }
    }
    Ok(finish(out))
}

/// Main beam (`m = 0`) and grating lobes (`m = 1..=m_max`):
/// `cos θ = (−α ± 2πm)/(2πa)`.
pub fn peak_angles(n: usize, a: f64, alpha: f64, m_max: u32) -> Result<Vec<LobeReport>> {
    if n == 0 {
        return Err(Error::domain("element count must be at least 1"));
    }
    check_spacing(a)?;
    if !alpha.is_finite() {
        return Err(Error::domain("progressive phase must be finite"));
    }
    let scale = TAU * a;
    let mut out = Vec::new();
    for m in 0..=m_max {
        let shift = TAU * f64::from(m);
        if shift - alpha.abs() > scale * (1.0 + VISIBLE_SLACK) {
            break;
        }
        let kind = if m == 0 {
            LobeKind::Peak
        } else {
            LobeKind::GratingLobe
        };
        for sign in [1.0, -1.0] {
            if let Some(arg) = visible((-alpha + sign * shift) / scale) {
                out.push(LobeReport {
                    kind,
                    index: m,
                    theta: arg.acos(),
                    arccos_argument: arg,
                });
            }
        }
    }
    Ok(finish(out))
}

/// Smallest `m_max` that reaches past the visible region for `(a, α)`.
pub fn visible_order_bound(a: f64, alpha: f64) -> u32 {
    ((TAU * a + alpha.abs()) / TAU).ceil() as u32 + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array_factor::linear_af_from_phase;
    use crate::wave::TrigMode;
    use approx::assert_abs_diff_eq;

    fn degrees(lobes: &[LobeReport]) -> Vec<f64> {
        lobes.iter().map(|l| l.theta.to_degrees()).collect()
    }

    fn af(n: usize, a: f64, alpha: f64, theta: f64) -> f64 {
        linear_af_from_phase(n, line_phase(a, alpha, theta), TrigMode::Radians).unwrap()
    }

    #[test]
    fn half_wave_four_element_nulls() {
        let nulls = null_angles(4, 0.5, 0.0).unwrap();
        let d = degrees(&nulls);
        assert_eq!(d.len(), 4);
        for (got, want) in d.iter().zip([0.0, 60.0, 120.0, 180.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
        for l in &nulls {
            assert!(af(4, 0.5, 0.0, l.theta) < 1e-9);
            assert_eq!(l.kind, LobeKind::Null);
            assert!(l.index % 4 != 0);
        }
    }

    #[test]
    fn endfire_nulls_two_elements() {
        let d = degrees(&null_angles(2, 0.5, 0.0).unwrap());
        assert_eq!(d.len(), 2);
        assert_abs_diff_eq!(d[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d[1], 180.0, epsilon = 1e-9);
    }

    #[test]
    fn short_arrays_can_have_no_nulls() {
        // Quarter-wave pair: argument ±2, AF never drops below cos(π/4).
        assert!(null_angles(2, 0.25, 0.0).unwrap().is_empty());
        assert!(null_angles(4, 0.1, 0.0).unwrap().is_empty());
        let min = (0..=18000)
            .map(|i| af(4, 0.1, 0.0, (i as f64 * 0.01).to_radians()))
            .fold(f64::INFINITY, f64::min);
        assert!(min > 0.5);
    }

    #[test]
    fn null_preconditions() {
        assert!(null_angles(1, 0.5, 0.0).is_err());
        assert!(null_angles(4, 0.0, 0.0).is_err());
        assert!(peak_angles(0, 0.5, 0.0, 2).is_err());
    }

    #[test]
    fn broadside_main_lobe() {
        for a in [0.1, 0.47, 0.9] {
            let p = peak_angles(8, a, 0.0, 0).unwrap();
            assert_eq!(p.len(), 1);
            assert_eq!(p[0].kind, LobeKind::Peak);
            assert_abs_diff_eq!(p[0].theta.to_degrees(), 90.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn grating_lobes_at_one_wavelength() {
        let p = peak_angles(6, 1.0, 0.0, 1).unwrap();
        let d = degrees(&p);
        assert_eq!(d.len(), 3);
        assert_abs_diff_eq!(d[0], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d[1], 90.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d[2], 180.0, epsilon = 1e-9);
        assert_eq!(p[0].kind, LobeKind::GratingLobe);
        for l in &p {
            assert!(af(6, 1.0, 0.0, l.theta) > 1.0 - 1e-9);
        }
    }

    #[test]
    fn no_grating_lobes_below_a_wavelength() {
        let p = peak_angles(10, 0.47, 0.0, 3).unwrap();
        assert!(p.iter().all(|l| l.kind == LobeKind::Peak));
        let above: Vec<bool> = (0..=18000)
            .map(|i| af(10, 0.47, 0.0, (i as f64 * 0.01).to_radians()) > 0.999)
            .collect();
        let runs = above.windows(2).filter(|w| !w[0] && w[1]).count() + usize::from(above[0]);
        assert_eq!(runs, 1);
    }

    #[test]
    fn steered_main_lobe_follows_alpha() {
        let a = 0.5;
        let theta0 = 60f64.to_radians();
        let alpha = -TAU * a * theta0.cos();
        let p = peak_angles(8, a, alpha, 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_abs_diff_eq!(p[0].theta, theta0, epsilon = 1e-12);
    }

    #[test]
    fn order_bound_covers_visible_region() {
        let a = 1.7;
        let alpha = 2.0;
        let bound = visible_order_bound(a, alpha);
        let all = peak_angles(4, a, alpha, bound + 5).unwrap();
        assert_eq!(all, peak_angles(4, a, alpha, bound).unwrap());
    }
}
