//! Directivity estimates: the closed-form Chebyshev linear formula, the
//! planar product formula, and a numerical integral of `|AF|²` over the
//! sphere that serves as the reference for both.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array_factor::{planar_af_from_phases, ArrayGeometry, PhasePair, SteeringPhase};
use crate::error::{Error, Result};
use crate::pattern::ElementPattern;
use crate::wave::{to_db, TrigMode};

/// Dolph-Chebyshev beam broadening factor for voltage ratio `r0`:
/// `1 + 0.636·[(2/r0)·cosh(√(acosh²(r0) − π²))]²`, with the root argument
/// clamped at zero.
pub fn beam_broadening_factor(r0: f64) -> Result<f64> {
    if !r0.is_finite() || r0 <= 1.0 {
        return Err(Error::domain(format!(
            "voltage ratio must exceed 1, got {r0}"
        )));
    }
    let root = (r0.acosh().powi(2) - PI * PI).max(0.0).sqrt();
    let term = 2.0 / r0 * root.cosh();
    Ok(1.0 + 0.636 * term * term)
}

/// Inputs to the closed-form linear directivity. Lengths in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevDirectivityInput {
    pub r0: f64,
    pub length_l: f64,
    pub spacing_a: f64,
    pub broadening_f: f64,
}

impl ChebyshevDirectivityInput {
    pub fn new(r0: f64, length_l: f64, spacing_a: f64, broadening_f: f64) -> Result<Self> {
        if !r0.is_finite() || r0 <= 1.0 {
            return Err(Error::domain(format!(
                "voltage ratio must exceed 1, got {r0}"
            )));
        }
        if !length_l.is_finite() || length_l <= 0.0 {
            return Err(Error::domain(format!(
                "array length must be positive, got {length_l}"
            )));
        }
        if !spacing_a.is_finite() || spacing_a <= 0.0 {
            return Err(Error::domain(format!(
                "spacing must be positive, got {spacing_a}"
            )));
        }
        if !broadening_f.is_finite() || broadening_f < 1.0 {
            return Err(Error::domain(format!(
                "broadening factor must be at least 1, got {broadening_f}"
            )));
        }
        Ok(Self {
            r0,
            length_l,
            spacing_a,
            broadening_f,
        })
    }

    /// Same as [`new`](Self::new) with `f` derived from `r0`.
    pub fn with_derived_broadening(r0: f64, length_l: f64, spacing_a: f64) -> Result<Self> {
        Self::new(r0, length_l, spacing_a, beam_broadening_factor(r0)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectivityMethod {
    ClosedFormLinear,
    ClosedFormPlanar,
    NumericalQuadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectivityReport {
    pub value: f64,
    pub value_dbi: f64,
    pub method: DirectivityMethod,
    pub grid_resolution: Option<(usize, usize)>,
    pub hemisphere_only: bool,
}

impl DirectivityReport {
    fn closed(value: f64, method: DirectivityMethod) -> Self {
        Self {
            value,
            value_dbi: to_db(value),
            method,
            grid_resolution: None,
            hemisphere_only: false,
        }
    }
}

/// `D = 2·r0² / (1 + (r0² − 1)·f/(L + a))`.
pub fn linear_directivity_closed_form(input: &ChebyshevDirectivityInput) -> DirectivityReport {
    let r2 = input.r0 * input.r0;
    let d = 2.0 * r2 / (1.0 + (r2 - 1.0) * input.broadening_f / (input.length_l + input.spacing_a));
    DirectivityReport::closed(d, DirectivityMethod::ClosedFormLinear)
}

/// `D0 = Dx·Dy·cosθ0`, or `π·Dx·Dy·cosθ0` when `include_pi` is set.
pub fn planar_directivity_closed_form(
    d_x: f64,
    d_y: f64,
    theta0: f64,
    include_pi: bool,
) -> Result<DirectivityReport> {
    if !(d_x > 0.0 && d_y > 0.0) || !d_x.is_finite() || !d_y.is_finite() {
        return Err(Error::domain("linear directivities must be positive"));
    }
    if !theta0.is_finite() || theta0 < 0.0 {
        return Err(Error::domain(format!("invalid scan angle {theta0}")));
    }
    let c = theta0.cos();
    if c <= 0.0 || theta0 >= FRAC_PI_2 {
        return Err(Error::domain(
            "scan angle must stay above the array plane (theta0 < 90°)",
        ));
    }
    let scale = if include_pi { PI } else { 1.0 };
    Ok(DirectivityReport::closed(
        scale * d_x * d_y * c,
        DirectivityMethod::ClosedFormPlanar,
    ))
}

/// Sample counts for the spherical quadrature, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for QuadratureGrid {
    /// Half-degree steps.
    fn default() -> Self {
        Self {
            n_theta: 361,
            n_phi: 721,
        }
    }
}

impl QuadratureGrid {
    pub const MIN_THETA: usize = 91;
    pub const MIN_PHI: usize = 181;

    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < Self::MIN_THETA || n_phi < Self::MIN_PHI {
            return Err(Error::domain(format!(
                "quadrature grid needs at least {}x{} samples, got {n_theta}x{n_phi}",
                Self::MIN_THETA,
                Self::MIN_PHI
            )));
        }
        Ok(Self { n_theta, n_phi })
    }

    /// The grid with each interval halved.
    pub fn refined(self) -> Self {
        Self {
            n_theta: 2 * self.n_theta - 1,
            n_phi: 2 * self.n_phi - 1,
        }
    }
}

/// Pairwise (cascade) summation in a fixed order.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

fn trapezoid_weight(i: usize, n: usize, h: f64) -> f64 {
    if i == 0 || i + 1 == n {
        0.5 * h
    } else {
        h
    }
}

struct Intensity<'a> {
    geom: &'a ArrayGeometry,
    steer: &'a SteeringPhase,
    element: ElementPattern,
}

impl Intensity<'_> {
    fn at(&self, theta: f64, phi: f64) -> f64 {
        let st = theta.sin();
        let phases = PhasePair {
            rho_x: TAU * self.geom.a_x() * st * phi.cos() + self.steer.omega_x,
            rho_y: TAU * self.geom.a_y() * st * phi.sin() + self.steer.omega_y,
        };
        let field = planar_af_from_phases(self.geom, &phases, TrigMode::Radians)
            * self.element.factor(theta);
        field * field
    }
}

/// Directivity `4π·U_max / ∬ U sinθ dθ dφ` with `U = |AF·element|²`.
///
/// Composite trapezoid rule on a uniform grid; the polar range is `[0, π]`,
/// or `[0, π/2]` when `hemisphere_only` (the ground-plane half-space).
/// `U_max` is the grid maximum refined by a 10× local subdivision around the
/// grid argmax. Rows are evaluated in parallel but reduced in a fixed
/// order, so results are bit-identical regardless of thread count.
pub fn numerical_directivity(
    geom: &ArrayGeometry,
    steer: &SteeringPhase,
    element: ElementPattern,
    grid: QuadratureGrid,
    hemisphere_only: bool,
) -> Result<DirectivityReport> {
    let grid = QuadratureGrid::new(grid.n_theta, grid.n_phi)?;
    let theta_max = if hemisphere_only { FRAC_PI_2 } else { PI };
    let (nt, np) = (grid.n_theta, grid.n_phi);
    let h_theta = theta_max / (nt - 1) as f64;
    let h_phi = TAU / (np - 1) as f64;
    let theta_at = |i: usize| theta_max * i as f64 / (nt - 1) as f64;
    let phi_at = |j: usize| TAU * j as f64 / (np - 1) as f64;
    let u = Intensity {
        geom,
        steer,
        element,
    };

    // (weighted row integral, row max, argmax column)
    let rows: Vec<(f64, f64, usize)> = (0..nt)
        .into_par_iter()
        .map(|i| {
            let theta = theta_at(i);
            let st = theta.sin();
            let mut terms = Vec::with_capacity(np);
            let mut best = (f64::NEG_INFINITY, 0);
            for j in 0..np {
                let v = u.at(theta, phi_at(j));
                if v > best.0 {
                    best = (v, j);
                }
                terms.push(trapezoid_weight(j, np, h_phi) * v);
            }
            let row = pairwise_sum(&terms) * st * trapezoid_weight(i, nt, h_theta);
            (row, best.0, best.1)
        })
        .collect();

    let integral = pairwise_sum(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
    if !(integral.is_finite() && integral > 0.0) {
        return Err(Error::domain(
            "radiated power integrates to zero; pattern is degenerate",
        ));
    }

    let (i_best, &(_, grid_max, j_best)) = rows
        .iter()
        .enumerate()
        .fold(
            None,
            |acc: Option<(usize, &(f64, f64, usize))>, (i, r)| match acc {
                Some((_, b)) if b.1 >= r.1 => acc,
                _ => Some((i, r)),
            },
        )
        .expect("grid has rows");

    let mut u_max = grid_max;
    let (t0, p0) = (theta_at(i_best), phi_at(j_best));
    for di in -10i32..=10 {
        let theta = (t0 + f64::from(di) * h_theta / 10.0).clamp(0.0, theta_max);
        for dj in -10i32..=10 {
            let v = u.at(theta, p0 + f64::from(dj) * h_phi / 10.0);
            if v > u_max {
                u_max = v;
            }
        }
    }

    let value = 4.0 * PI * u_max / integral;
    Ok(DirectivityReport {
        value,
        value_dbi: to_db(value),
        method: DirectivityMethod::NumericalQuadrature,
        grid_resolution: Some((nt, np)),
        hemisphere_only,
    })
}
