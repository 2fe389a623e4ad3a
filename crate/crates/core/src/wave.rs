//! Free-space wave quantities, angles, decibels and the trig evaluation mode.
//!
//! Every angle crossing this crate's public API is in radians. Degrees only
//! appear at the command-line edge and inside [`TrigMode::PaperDegreeCompat`].

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Propagation speed used throughout, in m/s.
///
/// Fixed at exactly 3e8 rather than the CODATA value so that 2.5 GHz maps to
/// a wavelength of exactly 0.12 m.
pub const SPEED_OF_LIGHT: f64 = 3.0e8;

/// Wavelength in meters for a frequency in hertz.
pub fn wavelength_of(frequency: f64) -> Result<f64> {
    if !frequency.is_finite() || frequency <= 0.0 {
        return Err(Error::domain(format!(
            "frequency must be positive and finite, got {frequency}"
        )));
    }
    Ok(SPEED_OF_LIGHT / frequency)
}

/// Free-space wavenumber `2π/λ` in rad/m.
pub fn wavenumber_of(wavelength: f64) -> Result<f64> {
    if !wavelength.is_finite() || wavelength <= 0.0 {
        return Err(Error::domain(format!(
            "wavelength must be positive and finite, got {wavelength}"
        )));
    }
    Ok(TAU / wavelength)
}

/// A monochromatic free-space wave.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wave {
    frequency: f64,
    wavelength: f64,
    wavenumber: f64,
}

impl Wave {
    pub fn from_frequency(frequency: f64) -> Result<Self> {
        let wavelength = wavelength_of(frequency)?;
        Ok(Self {
            frequency,
            wavelength,
            wavenumber: wavenumber_of(wavelength)?,
        })
    }

    pub fn from_wavelength(wavelength: f64) -> Result<Self> {
        let wavenumber = wavenumber_of(wavelength)?;
        Ok(Self {
            frequency: SPEED_OF_LIGHT / wavelength,
            wavelength,
            wavenumber,
        })
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    /// Converts a physical length in meters to wavelengths.
    pub fn meters_to_wavelengths(&self, meters: f64) -> f64 {
        meters / self.wavelength
    }
}

/// Spherical observation or steering direction.
///
/// `theta` is measured from the array normal (+z) and must lie in `[0, π]`;
/// `phi` is stored reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::domain(format!(
                "direction angles must be finite, got theta={theta}, phi={phi}"
            )));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::domain(format!(
                "theta must lie in [0, pi], got {theta}"
            )));
        }
        Ok(Self {
            theta,
            phi: normalize_phi(phi),
        })
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// The zenith, broadside to a planar array lying in the xy-plane.
    pub fn zenith() -> Self {
        Self {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Reduces an azimuth to `[0, 2π)`.
pub fn normalize_phi(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// How sine arguments are interpreted when evaluating array factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigMode {
    /// Arguments are radians. Physically correct.
    #[default]
    Radians,
    /// A phase computed in radians is re-read as degrees before the sine is
    /// taken. Only used to reproduce the reference element-count sweep.
    PaperDegreeCompat,
}

impl TrigMode {
    pub fn sin(self, x: f64) -> f64 {
        match self {
            TrigMode::Radians => x.sin(),
            TrigMode::PaperDegreeCompat => x.to_radians().sin(),
        }
    }

    pub fn cos(self, x: f64) -> f64 {
        match self {
            TrigMode::Radians => x.cos(),
            TrigMode::PaperDegreeCompat => x.to_radians().cos(),
        }
    }
}

/// Power ratio to decibels, `10·log10(ratio)`.
///
/// Ratios `<= 0` (and NaN) map to `f64::NEG_INFINITY`; callers clamp with
/// [`clamp_db`] before export.
pub fn to_db(power_ratio: f64) -> f64 {
    if power_ratio > 0.0 {
        10.0 * power_ratio.log10()
    } else {
        f64::NEG_INFINITY
    }
}

/// Field (amplitude) ratio to decibels, `20·log10(amplitude)`.
pub fn amplitude_to_db(amplitude: f64) -> f64 {
    if amplitude > 0.0 {
        20.0 * amplitude.log10()
    } else {
        f64::NEG_INFINITY
    }
}

pub fn clamp_db(db: f64, floor: f64) -> f64 {
    if db.is_nan() || db < floor {
        floor
    } else {
        db
    }
}
