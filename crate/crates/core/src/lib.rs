//! Electron Landau states in a uniform magnetic field: eigenfunctions,
//! probability currents, orbital angular momentum, two-mode beam
//! interference and the comparison with free-space Laguerre–Gauss beams.

pub mod currents;
pub mod error;
pub mod field;
pub mod lg_beam;
pub mod output;
pub mod quadrature;
pub mod specfun;
pub mod states;
pub mod superposition;
pub mod verify;

pub use currents::{
    decompose_current, density, expectations, inverse_square_moment, mean_angular_velocity, oam_densities,
    CurrentDecomposition, ExpectationReport, OamDensities,
};
pub use error::{Error, Result};
pub use field::{sample_field, FieldSample, FieldSource, GridSpec};
pub use lg_beam::{gouy_jump, gouy_phase, lg_amplitude, LGParams};
pub use quadrature::{azimuthal_mode_phase, radial_integrate, ModePhase, RadialQuadrature};
pub use specfun::{laguerre, log_factorial, LaguerreEval};
pub use states::{
    eigenfunction, energy, longitudinal_phase, lzg_index, radial_wavefunction, EnergyDecomposition, LongitudinalPhase,
    ModeIndex, ParaxialCheck, PhysicalScales,
};
pub use superposition::{
    analytic_rotation_rate, centroid, default_mixing, measured_rotation_rate, superposition_currents,
    superposition_density, CentroidSample, SuperpositionCurrents, SuperpositionSpec,
};
