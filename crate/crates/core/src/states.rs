//! Landau eigenstates in the symmetric gauge.
//!
//! A state is labelled by its radial node count `p` and magnetic quantum
//! number `m`; the Landau index is `n = p + (|m| + m)/2`. The radial
//! function is the 2-D oscillator one with oscillator length
//! `b = sqrt(2) l_B`:
//!
//! ```text
//! R_{p,m}(r) = (-1)^p (1/b) sqrt(2 p!/(p+|m|)!) e^{-r²/2b²} (r²/b²)^{|m|/2} L_p^{|m|}(r²/b²)
//! ```
//!
//! Internally everything is evaluated in the dimensionless radius
//! `R = r / l_B`, with `x = R²/2 = r²/b²` as the Laguerre argument.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{laguerre, laguerre_second_derivative, log_factorial};

/// Radial node count `p` and magnetic quantum number `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub p: u32,
    pub m: i32,
}

impl ModeIndex {
    pub const fn new(p: u32, m: i32) -> Self {
        Self { p, m }
    }

    /// Builds the mode from the Landau index `n`; requires `m <= n`.
    pub fn from_landau(n: u32, m: i32) -> Result<Self> {
        if i64::from(m) > i64::from(n) {
            return Err(Error::Domain(format!("invalid quantum numbers: m = {m} exceeds n = {n}")));
        }
        Ok(Self { p: n - m.max(0) as u32, m })
    }

    /// Landau quantum number `n = p + (|m| + m)/2`.
    pub fn n(&self) -> u32 {
        self.p + self.m.max(0) as u32
    }

    pub fn abs_m(&self) -> u32 {
        self.m.unsigned_abs()
    }

    /// The degenerate Landau level `n`: `m = n, n-1, n-2, ...` (unbounded
    /// below, so the iterator never ends on its own).
    pub fn landau_level(n: u32) -> impl Iterator<Item = ModeIndex> {
        (0..).map(move |k: i64| ModeIndex::from_landau(n, (i64::from(n) - k) as i32).expect("m <= n by construction"))
    }

    /// Partner state `(n - m, -m)` in Landau labels, i.e. `(p, -m)`.
    pub fn mirrored(&self) -> Self {
        Self { p: self.p, m: -self.m }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, m={}; n={})", self.p, self.m, self.n())
    }
}

/// Magnetic field, electron mass and charge (natural units, `ħ = c = 1`),
/// plus an optional longitudinal Larmor length for beam-phase work.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    field: f64,
    mass: f64,
    charge: f64,
    longitudinal_length: Option<f64>,
}

impl Default for PhysicalScales {
    /// `B = m_e = e = 1`, so `l_B = 1`, `ω_c = 1`, `ω_L = 1/2`.
    fn default() -> Self {
        Self { field: 1.0, mass: 1.0, charge: 1.0, longitudinal_length: None }
    }
}

impl PhysicalScales {
    pub fn new(field: f64, mass: f64, charge: f64) -> Result<Self> {
        for (name, v) in [("magnetic field", field), ("electron mass", mass), ("charge", charge)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { field, mass, charge, longitudinal_length: None })
    }

    /// Sets `z_m` directly.
    pub fn with_longitudinal_length(mut self, z_m: f64) -> Result<Self> {
        if !(z_m > 0.0) || !z_m.is_finite() {
            return Err(Error::Domain(format!("longitudinal Larmor length must be positive, got {z_m}")));
        }
        self.longitudinal_length = Some(z_m);
        Ok(self)
    }

    /// `z_m = v / ω_L`.
    pub fn with_beam_speed(self, v: f64) -> Result<Self> {
        let z_m = v / self.larmor_frequency();
        self.with_longitudinal_length(z_m)
    }

    /// `z_m = sqrt(E / ω_L) w_m` for total beam energy `E`.
    pub fn with_beam_energy(self, energy: f64) -> Result<Self> {
        let z_m = (energy / self.larmor_frequency()).sqrt() * self.magnetic_width();
        self.with_longitudinal_length(z_m)
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    /// `l_B = 1/sqrt(eB)`.
    pub fn magnetic_length(&self) -> f64 {
        1.0 / (self.charge * self.field).sqrt()
    }

    /// `b = sqrt(2) l_B`.
    pub fn oscillator_length(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.magnetic_length()
    }

    /// `w_m = 2 l_B`.
    pub fn magnetic_width(&self) -> f64 {
        2.0 * self.magnetic_length()
    }

    pub fn cyclotron_frequency(&self) -> f64 {
        self.charge * self.field / self.mass
    }

    pub fn larmor_frequency(&self) -> f64 {
        0.5 * self.cyclotron_frequency()
    }

    pub fn longitudinal_larmor_length(&self) -> Option<f64> {
        self.longitudinal_length
    }

    /// Total beam energy implied by `z_m`, inverting `z_m = sqrt(E/ω_L) w_m`.
    pub fn beam_energy(&self) -> Option<f64> {
        self.longitudinal_length
            .map(|z_m| self.larmor_frequency() * (z_m / self.magnetic_width()).powi(2))
    }

    /// Reports whether the paraxial conditions `E_⊥ ≪ E` and `w_m ≪ z_m`
    /// hold for `mode`. Nothing is enforced; callers decide what to do with
    /// a violation.
    pub fn paraxial_check(&self, mode: ModeIndex) -> Option<ParaxialCheck> {
        let z_m = self.longitudinal_length?;
        let beam_energy = self.beam_energy()?;
        let transverse_energy = f64::from(2 * mode.n() + 1) * self.larmor_frequency();
        let energy_ratio = transverse_energy / beam_energy;
        let width_ratio = self.magnetic_width() / z_m;
        Some(ParaxialCheck {
            energy_ratio,
            width_ratio,
            violated: energy_ratio > PARAXIAL_LIMIT || width_ratio > PARAXIAL_LIMIT,
        })
    }
}

/// Ratio above which "much smaller than" is considered violated.
pub const PARAXIAL_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParaxialCheck {
    /// `E_⊥ / E`
    pub energy_ratio: f64,
    /// `w_m / z_m`
    pub width_ratio: f64,
    pub violated: bool,
}

/// Oscillator plus Zeeman split of the eigen-energy, in units of `ω_L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyDecomposition {
    pub oscillator: f64,
    pub zeeman: f64,
    pub total: f64,
    /// `total * ω_L`, i.e. `(n + 1/2) ω_c`.
    pub total_physical: f64,
}

pub fn energy(mode: ModeIndex, scales: &PhysicalScales) -> EnergyDecomposition {
    let oscillator = f64::from(2 * mode.p + mode.abs_m() + 1);
    let zeeman = f64::from(mode.m);
    let total = oscillator + zeeman;
    EnergyDecomposition { oscillator, zeeman, total, total_physical: total * scales.larmor_frequency() }
}

/// `m + (2p + |m| + 1)`, which always equals `2n + 1`.
pub fn lzg_index(mode: ModeIndex) -> i64 {
    i64::from(mode.m) + i64::from(2 * mode.p + mode.abs_m() + 1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongitudinalPhase {
    /// `Δk_z = -[m + (2p + |m| + 1)] / z_m`
    pub delta_kz: f64,
    /// Landau–Zeeman–Gouy phase `Δk_z z`.
    pub lzg_phase: f64,
}

pub fn longitudinal_phase(mode: ModeIndex, scales: &PhysicalScales, z: f64) -> Result<LongitudinalPhase> {
    let z_m = scales
        .longitudinal_larmor_length()
        .ok_or_else(|| Error::Configuration("longitudinal Larmor length z_m is not set".into()))?;
    let delta_kz = -(lzg_index(mode) as f64) / z_m;
    Ok(LongitudinalPhase { delta_kz, lzg_phase: delta_kz * z })
}

/// Dimensionless radial function `u(R) = l_B R_{p,m}(R l_B)` together with
/// the pieces needed for kinetic-energy integrals.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialParts {
    pub u: f64,
    /// `du/dx` with `x = R²/2`; note `du/dR = R du/dx`.
    #[cfg_attr(not(test), allow(dead_code))]
    pub du_dx: f64,
    /// Transverse Laplacian of `u e^{imφ}` divided by `e^{imφ}`.
    pub laplacian: f64,
}

fn log_norm(mode: ModeIndex) -> f64 {
    0.5 * (log_factorial(mode.p) - log_factorial(mode.p + mode.abs_m()))
}

fn node_sign(mode: ModeIndex) -> f64 {
    if mode.p % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `u(R)` only; the hot path for densities.
pub(crate) fn radial_dimensionless(mode: ModeIndex, big_r: f64) -> Result<f64> {
    if !(big_r >= 0.0) {
        return Err(Error::Domain(format!("radius must be >= 0, got {big_r}")));
    }
    let x = 0.5 * big_r * big_r;
    let lag = laguerre(mode.p, mode.abs_m(), x)?;
    Ok(node_sign(mode) * envelope(mode, x) * lag.value)
}

/// `sqrt(p!/(p+|m|)!) e^{-x/2} x^{|m|/2}`, evaluated in log space.
fn envelope(mode: ModeIndex, x: f64) -> f64 {
    let am = mode.abs_m();
    if am > 0 && x == 0.0 {
        return 0.0;
    }
    let power = if am == 0 { 0.0 } else { 0.5 * f64::from(am) * x.ln() };
    (log_norm(mode) - 0.5 * x + power).exp()
}

pub(crate) fn radial_parts(mode: ModeIndex, big_r: f64) -> Result<RadialParts> {
    if !(big_r > 0.0) {
        return Err(Error::Domain(format!("radial derivatives need R > 0, got {big_r}")));
    }
    let x = 0.5 * big_r * big_r;
    let alpha = mode.abs_m();
    let lag = laguerre(mode.p, alpha, x)?;
    let l2 = laguerre_second_derivative(mode.p, alpha, x);
    let g = node_sign(mode) * envelope(mode, x);
    let a = 0.5 * f64::from(alpha);
    let s = a / x - 0.5;
    let u = g * lag.value;
    let du_dx = g * (s * lag.value + lag.derivative);
    let d2u_dx2 = g * ((s * s - a / (x * x)) * lag.value + 2.0 * s * lag.derivative + l2);
    // ∇²u = u'' + u'/R - m²u/R² with u' = R du/dx, u'' = du/dx + R² d²u/dx²
    let m2 = f64::from(alpha * alpha);
    let laplacian = 2.0 * du_dx + 2.0 * x * d2u_dx2 - m2 * u / (2.0 * x);
    Ok(RadialParts { u, du_dx, laplacian })
}

/// Radial wavefunction `R_{p,m}(r)` in physical units (`1/length`).
pub fn radial_wavefunction(mode: ModeIndex, scales: &PhysicalScales, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
    }
    let l_b = scales.magnetic_length();
    Ok(radial_dimensionless(mode, r / l_b)? / l_b)
}

/// `ψ_{p,m}(r, φ) = e^{imφ}/sqrt(2π) R_{p,m}(r)`.
pub fn eigenfunction(mode: ModeIndex, scales: &PhysicalScales, r: f64, phi: f64) -> Result<Complex64> {
    let radial = radial_wavefunction(mode, scales, r)?;
    Ok(Complex64::from_polar(radial / (2.0 * PI).sqrt(), f64::from(mode.m) * phi))
}
