use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

/// Radiation pattern of a single array element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementPattern {
    #[default]
    Isotropic,
    /// Quarter-wave monopole over an infinite ground plane at `θ = π/2`.
    QuarterWaveMonopole,
}

impl ElementPattern {
    /// Field factor at polar angle `theta` (radians from zenith).
    pub fn factor(self, theta: f64) -> f64 {
        match self {
            ElementPattern::Isotropic => 1.0,
            ElementPattern::QuarterWaveMonopole => {
                if theta > FRAC_PI_2 {
                    return 0.0;
                }
                let s = theta.sin();
                // cos(π/2·cosθ)/sinθ → 0 as θ → 0
                if s < 1e-9 {
                    return 0.0;
                }
                ((FRAC_PI_2 * theta.cos()).cos() / s).abs()
            }
        }
    }

    /// True when the pattern is mirror-symmetric about the `θ = π/2` plane.
    pub fn is_horizon_symmetric(self) -> bool {
        matches!(self, ElementPattern::Isotropic)
    }
}
