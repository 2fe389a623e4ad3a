//! Simulation of uniform linear and planar antenna arrays.
//!
//! The crate computes normalized array factors with a closed-form Dirichlet
//! kernel (checked against an explicit phasor sum), steering phases, closed
//! form null and grating-lobe angles, and directivity both from closed-form
//! Chebyshev estimates and from a numerical integral over the sphere.
//! Sampled patterns can be exported as CSV, JSON or a polar SVG cut.
//!
//! Angles are radians and spacings are in wavelengths throughout.

pub mod array_factor;
pub mod directivity;
pub mod error;
pub mod experiments;
pub mod pattern;
pub mod wave;

pub use array_factor::{
    brute_force_af, linear_af_from_phase, null_angles, peak_angles, phase_functions, planar_af,
    steering_phases, ArrayGeometry, LobeKind, LobeReport, PhasePair, SteeringConvention,
    SteeringPhase,
};
pub use directivity::{
    beam_broadening_factor, linear_directivity_closed_form, numerical_directivity,
    planar_directivity_closed_form, ChebyshevDirectivityInput, DirectivityMethod,
    DirectivityReport, QuadratureGrid,
};
pub use error::{Error, Result};
pub use pattern::{
    principal_cut, sample_pattern, CutSpec, ElementPattern, GridSpec, PatternCut, PatternGrid,
};
pub use wave::{Direction, TrigMode, Wave};
