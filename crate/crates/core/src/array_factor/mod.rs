//! Array-factor kernels for uniform linear and planar arrays.
//!
//! A planar array in the xy-plane has `m_x` elements along x and `n_y` along
//! y. Its normalized array factor is the product of two Dirichlet kernels,
//! one per axis, evaluated at the per-axis phase functions.

mod lobes;

pub use lobes::{line_phase, null_angles, peak_angles, visible_order_bound, LobeKind, LobeReport};

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wave::{Direction, TrigMode};

/// Below this `|sin(ρ/2)|` the Dirichlet quotient is replaced by its limit.
pub const SINGULARITY_THRESHOLD: f64 = 1e-9;

/// Physical layout of a uniform rectangular array. Spacings are in
/// wavelengths so `k·a` reduces to `2π·a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    m_x: usize,
    n_y: usize,
    a_x: f64,
    a_y: f64,
}

impl ArrayGeometry {
    pub fn new(m_x: usize, n_y: usize, a_x: f64, a_y: f64) -> Result<Self> {
        if m_x == 0 || n_y == 0 {
            return Err(Error::domain(format!(
                "element counts must be at least 1, got {m_x}x{n_y}"
            )));
        }
        for (name, a) in [("a_x", a_x), ("a_y", a_y)] {
            if !a.is_finite() || a <= 0.0 {
                return Err(Error::domain(format!(
                    "spacing {name} must be positive and finite, got {a}"
                )));
            }
        }
        Ok(Self { m_x, n_y, a_x, a_y })
    }

    /// A linear array along x (the `n_y = 1` degenerate case).
    pub fn linear(m: usize, a: f64) -> Result<Self> {
        Self::new(m, 1, a, a)
    }

    pub fn square(n: usize, a: f64) -> Result<Self> {
        Self::new(n, n, a, a)
    }

    pub fn m_x(&self) -> usize {
        self.m_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn a_x(&self) -> f64 {
        self.a_x
    }

    pub fn a_y(&self) -> f64 {
        self.a_y
    }
}

/// Progressive phase shift per element along each axis, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SteeringPhase {
    pub omega_x: f64,
    pub omega_y: f64,
}

impl SteeringPhase {
    pub fn new(omega_x: f64, omega_y: f64) -> Result<Self> {
        if !omega_x.is_finite() || !omega_y.is_finite() {
            return Err(Error::domain("steering phases must be finite"));
        }
        Ok(Self { omega_x, omega_y })
    }

    pub fn broadside() -> Self {
        Self::default()
    }
}

/// Per-axis array phase functions, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub rho_x: f64,
    pub rho_y: f64,
}

/// Which azimuth factor the y-axis steering phase uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SteeringConvention {
    /// `ω_y = −2π·a_y·sinθ₀·sinφ₀`, matching the xy-plane geometry.
    #[default]
    Physical,
    /// `ω_y = −2π·a_y·sinθ₀·cosφ₀`.
    /// Makes the two axes degenerate; kept for fidelity experiments.
    PaperLiteral,
}

/// Phase functions `ρ_x = 2π·a_x·sinθ·cosφ + ω_x`, `ρ_y = 2π·a_y·sinθ·sinφ + ω_y`.
pub fn phase_functions(geom: &ArrayGeometry, steer: &SteeringPhase, dir: &Direction) -> PhasePair {
    let st = dir.theta().sin();
    PhasePair {
        rho_x: TAU * geom.a_x * st * dir.phi().cos() + steer.omega_x,
        rho_y: TAU * geom.a_y * st * dir.phi().sin() + steer.omega_y,
    }
}

/// The uniform-array simplification `ρ = 2π·a·cosθ + ω`, applied on both axes.
///
/// This is the phase that [`TrigMode::PaperDegreeCompat`] pairs with; it
/// treats each axis as a line array measured from its own axis.
pub fn uniform_axis_phase(
    geom: &ArrayGeometry,
    steer: &SteeringPhase,
    dir: &Direction,
) -> PhasePair {
    let ct = dir.theta().cos();
    PhasePair {
        rho_x: TAU * geom.a_x * ct + steer.omega_x,
        rho_y: TAU * geom.a_y * ct + steer.omega_y,
    }
}

/// Progressive phases that place the main beam at `target`.
pub fn steering_phases(
    geom: &ArrayGeometry,
    target: &Direction,
    convention: SteeringConvention,
) -> SteeringPhase {
    let st = target.theta().sin();
    let (cp, sp) = (target.phi().cos(), target.phi().sin());
    let y_factor = match convention {
        SteeringConvention::Physical => sp,
        SteeringConvention::PaperLiteral => cp,
    };
    SteeringPhase {
        omega_x: -TAU * geom.a_x * st * cp,
        omega_y: -TAU * geom.a_y * st * y_factor,
    }
}

/// Normalized Dirichlet kernel `|sin(nρ/2) / (n·sin(ρ/2))|`.
///
/// Where `sin(ρ/2)` vanishes (main and grating lobes) the quotient is
/// replaced by the ratio of derivatives `cos(nρ/2)/cos(ρ/2)`, whose magnitude
/// is 1 there.
pub fn linear_af_from_phase(n: usize, rho: f64, mode: TrigMode) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("element count must be at least 1"));
    }
    Ok(dirichlet(n, rho, mode))
}

fn dirichlet(n: usize, rho: f64, mode: TrigMode) -> f64 {
    if n == 1 {
        return 1.0;
    }
    let nf = n as f64;
    let half = 0.5 * rho;
    let den = mode.sin(half);
    let value = if den.abs() < SINGULARITY_THRESHOLD {
        (mode.cos(nf * half) / mode.cos(half)).abs()
    } else {
        (mode.sin(nf * half) / (nf * den)).abs()
    };
    value.min(1.0)
}

/// Normalized planar array factor, the product of the two axis kernels.
///
/// In [`TrigMode::PaperDegreeCompat`] the phases come from
/// [`uniform_axis_phase`] instead of [`phase_functions`].
pub fn planar_af(
    geom: &ArrayGeometry,
    steer: &SteeringPhase,
    dir: &Direction,
    mode: TrigMode,
) -> f64 {
    let phases = match mode {
        TrigMode::Radians => phase_functions(geom, steer, dir),
        TrigMode::PaperDegreeCompat => uniform_axis_phase(geom, steer, dir),
    };
    planar_af_from_phases(geom, &phases, mode)
}

pub fn planar_af_from_phases(geom: &ArrayGeometry, phases: &PhasePair, mode: TrigMode) -> f64 {
    dirichlet(geom.m_x, phases.rho_x, mode) * dirichlet(geom.n_y, phases.rho_y, mode)
}

/// Reference array factor from the explicit element-phasor double sum.
///
/// O(M·N); independent of the closed-form kernel and used to check it.
pub fn brute_force_af(geom: &ArrayGeometry, steer: &SteeringPhase, dir: &Direction) -> f64 {
    let phases = phase_functions(geom, steer, dir);
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..geom.m_x {
        for q in 0..geom.n_y {
            let arg = p as f64 * phases.rho_x + q as f64 * phases.rho_y;
            sum += Complex64::from_polar(1.0, arg);
        }
    }
    (sum.norm() / (geom.m_x * geom.n_y) as f64).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    // Values frozen from an independent numpy phasor sum.
    const LIN4_AT_45: f64 = 0.069_605_434_826_362_93;
    const PLANAR4_AT_45: f64 = 0.004_844_916_557_367_092;

    #[test]
    fn geometry_validation() {
        assert!(ArrayGeometry::new(0, 1, 0.5, 0.5).is_err());
        assert!(ArrayGeometry::new(1, 0, 0.5, 0.5).is_err());
        assert!(ArrayGeometry::new(2, 2, 0.0, 0.5).is_err());
        assert!(ArrayGeometry::new(2, 2, 0.5, f64::NAN).is_err());
        assert!(SteeringPhase::new(f64::INFINITY, 0.0).is_err());
        let g = ArrayGeometry::linear(8, 0.5).unwrap();
        assert_eq!(g.n_y(), 1);
    }

    #[test]
    fn phase_function_examples() {
        let g = ArrayGeometry::square(4, 0.47).unwrap();
        let d = Direction::from_degrees(45.0, 45.0).unwrap();
        let p = phase_functions(&g, &SteeringPhase::broadside(), &d);
        assert_abs_diff_eq!(p.rho_x, 1.476_548_547_187_202_6, epsilon = 1e-12);
        assert_abs_diff_eq!(p.rho_y, p.rho_x, epsilon = 1e-12);

        let p = phase_functions(&g, &SteeringPhase::broadside(), &Direction::zenith());
        assert_eq!((p.rho_x, p.rho_y), (0.0, 0.0));

        let g = ArrayGeometry::linear(4, 0.5).unwrap();
        let steer = SteeringPhase::new(-PI * 0.5, 0.0).unwrap();
        let p = phase_functions(&g, &steer, &Direction::from_degrees(30.0, 0.0).unwrap());
        assert_abs_diff_eq!(p.rho_x, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn steering_examples() {
        let g = ArrayGeometry::square(4, 0.5).unwrap();
        for conv in [
            SteeringConvention::Physical,
            SteeringConvention::PaperLiteral,
        ] {
            let s = steering_phases(&g, &Direction::zenith(), conv);
            assert_eq!(s.omega_x.abs() + s.omega_y.abs(), 0.0);
        }
        let s = steering_phases(
            &g,
            &Direction::from_degrees(30.0, 0.0).unwrap(),
            SteeringConvention::Physical,
        );
        assert_abs_diff_eq!(s.omega_x, -FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(s.omega_y, 0.0, epsilon = 1e-15);

        let target = Direction::from_degrees(90.0, 90.0).unwrap();
        let s = steering_phases(&g, &target, SteeringConvention::Physical);
        assert_abs_diff_eq!(s.omega_x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.omega_y, -PI, epsilon = 1e-12);
        let s = steering_phases(&g, &target, SteeringConvention::PaperLiteral);
        assert_abs_diff_eq!(s.omega_x, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.omega_y, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_kernel_examples() {
        assert_eq!(
            linear_af_from_phase(1, 1.234, TrigMode::Radians).unwrap(),
            1.0
        );
        assert_abs_diff_eq!(
            linear_af_from_phase(4, FRAC_PI_2, TrigMode::Radians).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            linear_af_from_phase(4, 1.476_548_547_187_202_6, TrigMode::Radians).unwrap(),
            LIN4_AT_45,
            epsilon = 1e-12
        );
        let compat =
            linear_af_from_phase(4, 2.088_154_980_934_432, TrigMode::PaperDegreeCompat).unwrap();
        assert_abs_diff_eq!(compat, 0.999_170_031_399_470_1, epsilon = 1e-12);
        assert!((compat - 0.9992).abs() < 1e-4);
        assert!(linear_af_from_phase(0, 0.3, TrigMode::Radians).is_err());
    }

    #[test]
    fn planar_examples() {
        let one = ArrayGeometry::new(1, 1, 0.5, 0.5).unwrap();
        let d = Direction::from_degrees(10.0, 20.0).unwrap();
        assert_eq!(
            planar_af(&one, &SteeringPhase::broadside(), &d, TrigMode::Radians),
            1.0
        );

        let g = ArrayGeometry::square(4, 0.47).unwrap();
        let d = Direction::from_degrees(45.0, 45.0).unwrap();
        let s = SteeringPhase::broadside();
        assert_abs_diff_eq!(
            planar_af(&g, &s, &d, TrigMode::Radians),
            PLANAR4_AT_45,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(brute_force_af(&g, &s, &d), PLANAR4_AT_45, epsilon = 1e-12);
        let compat = planar_af(&g, &s, &d, TrigMode::PaperDegreeCompat);
        assert_abs_diff_eq!(compat, 0.998_340_751_646_818_3, epsilon = 1e-12);
        assert!((compat - 0.9984).abs() < 1e-4);
    }

    #[test]
    fn brute_force_cancellation_and_alignment() {
        let g = ArrayGeometry::linear(4, 0.5).unwrap();
        let d = Direction::from_degrees(30.0, 0.0).unwrap();
        assert_abs_diff_eq!(
            brute_force_af(&g, &SteeringPhase::broadside(), &d),
            0.0,
            epsilon = 1e-12
        );

        let g = ArrayGeometry::new(5, 7, 0.6, 0.4).unwrap();
        let target = Direction::from_degrees(25.0, 130.0).unwrap();
        let s = steering_phases(&g, &target, SteeringConvention::Physical);
        assert_abs_diff_eq!(brute_force_af(&g, &s, &target), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            planar_af(&g, &s, &target, TrigMode::Radians),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn singularity_never_leaks_nan() {
        for m in -3i32..=3 {
            let centre = TAU * f64::from(m);
            for off in [0.0, 1e-12, -1e-12, 1e-9, -1e-9, 1e-8, -1e-8] {
                for n in [2usize, 3, 16, 64] {
                    let v = linear_af_from_phase(n, centre + off, TrigMode::Radians).unwrap();
                    assert!(v.is_finite());
                    assert!((v - 1.0).abs() < 1e-6, "n={n} m={m} off={off} v={v}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_phasor_sum(
            m in 1usize..=32, n in 1usize..=32,
            ax in 0.05f64..2.0, ay in 0.05f64..2.0,
            wx in -PI..PI, wy in -PI..PI,
            theta in 0.0f64..=PI, phi in 0.0f64..TAU,
        ) {
            let g = ArrayGeometry::new(m, n, ax, ay).unwrap();
            let s = SteeringPhase::new(wx, wy).unwrap();
            let d = Direction::new(theta, phi).unwrap();
            let closed = planar_af(&g, &s, &d, TrigMode::Radians);
            prop_assert!((0.0..=1.0).contains(&closed));
            prop_assert!((closed - brute_force_af(&g, &s, &d)).abs() <= 1e-10);
        }

        #[test]
        fn pattern_multiplication(
            m in 1usize..=40, n in 1usize..=40,
            ax in 0.05f64..2.0, ay in 0.05f64..2.0,
            theta in 0.0f64..=PI, phi in 0.0f64..TAU,
        ) {
            let g = ArrayGeometry::new(m, n, ax, ay).unwrap();
            let s = SteeringPhase::broadside();
            let d = Direction::new(theta, phi).unwrap();
            let p = phase_functions(&g, &s, &d);
            let product = linear_af_from_phase(m, p.rho_x, TrigMode::Radians).unwrap()
                * linear_af_from_phase(n, p.rho_y, TrigMode::Radians).unwrap();
            prop_assert!((planar_af(&g, &s, &d, TrigMode::Radians) - product).abs() <= 1e-15);
        }

        #[test]
        fn broadside_symmetry_about_horizon(n in 1usize..=64, a in 0.05f64..2.0, theta in 0.0f64..=PI) {
            let rho = |t: f64| TAU * a * t.cos();
            let lhs = linear_af_from_phase(n, rho(theta), TrigMode::Radians).unwrap();
            let rhs = linear_af_from_phase(n, rho(PI - theta), TrigMode::Radians).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn unity_at_steered_direction(
            m in 1usize..=24, n in 1usize..=24,
            ax in 0.05f64..2.0, ay in 0.05f64..2.0,
            theta in 0.0f64..=PI, phi in 0.0f64..TAU,
        ) {
            let g = ArrayGeometry::new(m, n, ax, ay).unwrap();
            let target = Direction::new(theta, phi).unwrap();
            let s = steering_phases(&g, &target, SteeringConvention::Physical);
            prop_assert!((planar_af(&g, &s, &target, TrigMode::Radians) - 1.0).abs() <= 1e-12);
        }
    }
}
