//! Two-mode superpositions of nondiffractive Landau beams.
//!
//! Each beam picks up the longitudinal phase `-(2n+1) z/z_m`, so with
//! `Z = z/z_m` the interference term of the density carries the phase
//!
//! ```text
//! Θ = (m₁ - m₂) φ - 2 (n₁ - n₂) Z
//! ```
//!
//! and the pattern rotates rigidly at `ω̄/ω_L = 2(n₁ - n₂)/(m₁ - m₂)`.
//! The beam radial profiles are the positive-normalized ones,
//! `N_{p,m} ξ^{|m|/2} L_p^{|m|}(ξ) e^{-ξ/2}` with `ξ = R²/2`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::quadrature::{azimuthal_mode_phase, radial_integrate, ring_angles, RadialQuadrature, MIN_MODE_AMPLITUDE};
use crate::specfun::log_factorial;
use crate::states::{radial_dimensionless, ModeIndex, PhysicalScales};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec {
    mode1: ModeIndex,
    mode2: ModeIndex,
    a: f64,
    b: f64,
}

impl SuperpositionSpec {
    pub fn new(mode1: ModeIndex, mode2: ModeIndex, a: f64, b: f64) -> Result<Self> {
        if mode1 == mode2 {
            return Err(Error::Degenerate(format!("both components are {mode1}")));
        }
        if !a.is_finite() || !b.is_finite() || a * a + b * b == 0.0 {
            return Err(Error::Domain(format!("mixing amplitudes must be finite and not both zero, got ({a}, {b})")));
        }
        Ok(Self { mode1, mode2, a, b })
    }

    /// Uses [`default_mixing`] for the amplitudes.
    pub fn with_default_mixing(mode1: ModeIndex, mode2: ModeIndex) -> Result<Self> {
        let (a, b) = default_mixing(mode1.m, mode2.m);
        Self::new(mode1, mode2, a, b)
    }

    /// Both components nodeless.
    pub fn nodeless(m1: i32, m2: i32) -> Result<Self> {
        Self::with_default_mixing(ModeIndex::new(0, m1), ModeIndex::new(0, m2))
    }

    pub fn mode1(&self) -> ModeIndex {
        self.mode1
    }

    pub fn mode2(&self) -> ModeIndex {
        self.mode2
    }

    pub fn amplitudes(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// Azimuthal order of the interference pattern, `|m₁ - m₂|`.
    pub fn order(&self) -> u32 {
        (self.mode1.m - self.mode2.m).unsigned_abs()
    }

    fn interference_phase(&self, phi: f64, z: f64) -> f64 {
        let dm = f64::from(self.mode1.m - self.mode2.m);
        let dn = f64::from(self.mode1.n()) - f64::from(self.mode2.n());
        dm * phi - 2.0 * dn * z
    }

    fn weight(&self) -> f64 {
        1.0 / (2.0 * PI * (self.a * self.a + self.b * self.b))
    }
}

/// Mixing amplitudes `a = √(|m₁|!)/2^{|m₁|/2}`, `b = 2 √(|m₂|!)/2^{|m₂|/2}`.
pub fn default_mixing(m1: i32, m2: i32) -> (f64, f64) {
    let coeff = |m: i32| {
        let am = m.unsigned_abs();
        (0.5 * log_factorial(am) - 0.5 * f64::from(am) * std::f64::consts::LN_2).exp()
    };
    (coeff(m1), 2.0 * coeff(m2))
}

fn beam_profile(mode: ModeIndex, big_r: f64) -> Result<f64> {
    let u = radial_dimensionless(mode, big_r)?;
    // undo the (-1)^p node sign of the eigenfunction convention
    Ok(if mode.p % 2 == 0 { u } else { -u })
}

pub(crate) fn density_at(spec: &SuperpositionSpec, big_r: f64, phi: f64, z: f64) -> Result<f64> {
    let f1 = beam_profile(spec.mode1, big_r)?;
    let f2 = beam_profile(spec.mode2, big_r)?;
    let (a, b) = (spec.a, spec.b);
    let cross = 2.0 * a * b * f1 * f2 * spec.interference_phase(phi, z).cos();
    Ok(spec.weight() * (a * a * f1 * f1 + b * b * f2 * f2 + cross))
}

/// Dimensionless density `ρ̃(r, φ, Z)` of the normalized superposition.
pub fn superposition_density(spec: &SuperpositionSpec, scales: &PhysicalScales, r: f64, phi: f64, z: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
    }
    density_at(spec, r / scales.magnetic_length(), phi, z)
}

/// Dimensionless current components of a nodeless superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionCurrents {
    pub j_can_r: f64,
    pub j_can_phi: f64,
    pub j_gauge_phi: f64,
}

impl SuperpositionCurrents {
    pub fn j_total_phi(&self) -> f64 {
        self.j_can_phi + self.j_gauge_phi
    }
}

/// Closed-form currents at dimensionless radius `big_r >= 0`. All radial
/// powers are integer powers of `R`, so `R = 0` gives the limit approached
/// along the direction `φ`.
pub(crate) fn currents_at(spec: &SuperpositionSpec, big_r: f64, phi: f64, z: f64) -> Result<SuperpositionCurrents> {
    let (m1, m2) = (spec.mode1, spec.mode2);
    if m1.p != 0 || m2.p != 0 {
        return Err(Error::Unsupported(format!(
            "superposition currents are only available for nodeless modes, got {m1} and {m2}"
        )));
    }
    let (am1, am2) = (m1.abs_m() as i32, m2.abs_m() as i32);
    let s = am1 + am2;
    let (a, b) = spec.amplitudes();
    let n1 = (-0.5 * log_factorial(am1 as u32)).exp();
    let n2 = (-0.5 * log_factorial(am2 as u32)).exp();
    let c = spec.weight();
    let gauss = (-0.5 * big_r * big_r).exp();
    let theta = spec.interference_phase(phi, z);
    let cross = a * b * n1 * n2;

    // ξ^{(s-1)/2} = (R/√2)^{s-1}
    let j_can_r = c * cross / SQRT_2 * (big_r / SQRT_2).powi(s - 1) * gauss * f64::from(am1 - am2) * theta.sin();

    // ξ^{|m|}/R = R^{2|m|-1}/2^{|m|};  ξ^{s/2}/R = R^{s-1}/2^{s/2}
    let own = |m: i32, am: i32, amp: f64, norm: f64| {
        if m == 0 {
            0.0
        } else {
            f64::from(m) * amp * amp * norm * norm * big_r.powi(2 * am - 1) / 2f64.powi(am)
        }
    };
    let j_can_phi = c
        * gauss
        * (own(m1.m, am1, a, n1)
            + own(m2.m, am2, b, n2)
            + f64::from(m1.m + m2.m) * cross * big_r.powi(s - 1) / 2f64.powf(0.5 * f64::from(s)) * theta.cos());

    let j_gauge_phi = 0.5 * big_r * density_at(spec, big_r, phi, z)?;
    Ok(SuperpositionCurrents { j_can_r, j_can_phi, j_gauge_phi })
}

pub fn superposition_currents(
    spec: &SuperpositionSpec,
    scales: &PhysicalScales,
    r: f64,
    phi: f64,
    z: f64,
) -> Result<SuperpositionCurrents> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("superposition currents need r > 0, got {r}")));
    }
    currents_at(spec, r / scales.magnetic_length(), phi, z)
}

/// `ω̄/ω_L = 2(n₁ - n₂)/(m₁ - m₂)`.
pub fn analytic_rotation_rate(spec: &SuperpositionSpec) -> Result<f64> {
    let dm = spec.mode1.m - spec.mode2.m;
    if dm == 0 {
        return Err(Error::Degenerate("m1 = m2: no azimuthal interference, the pattern does not rotate".into()));
    }
    let dn = i64::from(spec.mode1.n()) - i64::from(spec.mode2.n());
    Ok(2.0 * dn as f64 / f64::from(dm))
}

/// Centroid of the density at one propagation distance, in units of `l_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentroidSample {
    pub z: f64,
    pub x_bar: f64,
    pub y_bar: f64,
}

impl CentroidSample {
    pub fn norm(&self) -> f64 {
        self.x_bar.hypot(self.y_bar)
    }

    pub fn angle(&self) -> f64 {
        self.y_bar.atan2(self.x_bar)
    }
}

/// `(X̄, Ȳ) = ∬ (X, Y) ρ̃ dA`: Gauss–Legendre in `R`, trapezoid in `φ`
/// (exact for the finite Fourier content of the density).
pub fn centroid(spec: &SuperpositionSpec, scales: &PhysicalScales, z: f64) -> Result<CentroidSample> {
    let _ = scales;
    let quad = RadialQuadrature::for_pair(spec.mode1, spec.mode2);
    let n_phi = (4 * (spec.order() as usize + 2)).max(32);
    let dphi = 2.0 * PI / n_phi as f64;
    let moment = |proj: fn(f64) -> f64| {
        radial_integrate(
            |big_r| {
                let ring: f64 = ring_angles(n_phi)
                    .map(|phi| proj(phi) * density_at(spec, big_r, phi, z).unwrap_or(f64::NAN))
                    .sum();
                ring * dphi * big_r * big_r
            },
            &quad,
        )
    };
    Ok(CentroidSample { z, x_bar: moment(f64::cos)?, y_bar: moment(f64::sin)? })
}

/// Number of equally spaced ring samples used for pattern tracking.
fn ring_sample_count(order: u32) -> usize {
    (8 * order as usize).max(64)
}

fn ring_amplitude(spec: &SuperpositionSpec, big_r: f64, z: f64) -> Result<f64> {
    let samples = ring_samples(spec, big_r, z)?;
    match azimuthal_mode_phase(&samples, spec.order()) {
        Ok(mp) => Ok(mp.amplitude),
        Err(Error::DegeneratePattern { amplitude, .. }) => Ok(amplitude),
        Err(e) => Err(e),
    }
}

fn ring_samples(spec: &SuperpositionSpec, big_r: f64, z: f64) -> Result<Vec<(f64, f64)>> {
    ring_angles(ring_sample_count(spec.order()))
        .map(|phi| Ok((phi, density_at(spec, big_r, phi, z)?)))
        .collect()
}

/// Ring radius (units of `l_B`) with the strongest order-`q` contrast:
/// a 16-point coarse scan refined by golden-section search.
pub fn tracking_radius(spec: &SuperpositionSpec, z: f64) -> Result<f64> {
    const CANDIDATES: usize = 16;
    let n_max = spec.mode1.n().max(spec.mode2.n());
    let m_max = spec.mode1.abs_m().max(spec.mode2.abs_m());
    let r_scan = 2.0 * f64::from(2 * n_max + m_max + 1).sqrt() + 2.0;
    let grid: Vec<f64> = (1..=CANDIDATES).map(|i| r_scan * i as f64 / CANDIDATES as f64).collect();
    let mut best = 0;
    let mut best_amp = f64::NEG_INFINITY;
    for (i, &r) in grid.iter().enumerate() {
        let amp = ring_amplitude(spec, r, z)?;
        if amp > best_amp {
            best_amp = amp;
            best = i;
        }
    }
    let mut lo = if best == 0 { 0.0 } else { grid[best - 1] };
    let mut hi = if best + 1 < grid.len() { grid[best + 1] } else { grid[best] + r_scan / CANDIDATES as f64 };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = ring_amplitude(spec, x1, z)?;
    let mut f2 = ring_amplitude(spec, x2, z)?;
    while hi - lo > 1e-9 * hi.max(1.0) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ring_amplitude(spec, x2, z)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ring_amplitude(spec, x1, z)?;
        }
    }
    let r = 0.5 * (lo + hi);
    if ring_amplitude(spec, r, z)? < best_amp {
        Ok(grid[best])
    } else {
        Ok(r)
    }
}

/// Pattern angle at each `Z`, unwrapped modulo `2π/q`.
///
/// Unwrapping assumes the pattern turns by less than `π/q` between
/// consecutive samples; see [`tracking_step`].
pub fn pattern_angles(spec: &SuperpositionSpec, z_samples: &[f64]) -> Result<Vec<f64>> {
    let q = spec.order();
    if q == 0 {
        return Err(Error::Degenerate("m1 = m2: no azimuthal interference pattern".into()));
    }
    let first = *z_samples.first().ok_or_else(|| Error::Domain("no Z samples".into()))?;
    let radius = tracking_radius(spec, first)?;
    let period = 2.0 * PI / f64::from(q);
    let mut out = Vec::with_capacity(z_samples.len());
    let mut prev: Option<f64> = None;
    for &z in z_samples {
        let samples = ring_samples(spec, radius, z)?;
        let mp = azimuthal_mode_phase(&samples, q)?;
        if mp.amplitude < MIN_MODE_AMPLITUDE {
            return Err(Error::DegeneratePattern { order: q, amplitude: mp.amplitude });
        }
        let angle = match prev {
            None => mp.angle,
            Some(p) => {
                let d = mp.angle - p;
                p + d - period * (d / period).round()
            }
        };
        prev = Some(angle);
        out.push(angle);
    }
    Ok(out)
}

/// Rotation rate `ω̄/ω_L` recovered from the density alone: least-squares
/// slope of the tracked pattern angle against `Z`.
pub fn measured_rotation_rate(spec: &SuperpositionSpec, scales: &PhysicalScales, z_samples: &[f64]) -> Result<f64> {
    let _ = scales;
    let mut distinct = z_samples.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::Domain(format!("need at least 3 distinct Z samples, got {}", distinct.len())));
    }
    let angles = pattern_angles(spec, z_samples)?;
    Ok(least_squares_slope(z_samples, &angles))
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Largest `Z` step for which consecutive pattern angles differ by at most
/// a quarter of the unwrapping period `2π/q`: `π / (4 |n₁ - n₂|)`, capped at 0.4.
pub fn tracking_step(spec: &SuperpositionSpec) -> f64 {
    let dn = (i64::from(spec.mode1.n()) - i64::from(spec.mode2.n())).unsigned_abs();
    if dn == 0 {
        0.4
    } else {
        (PI / (4.0 * dn as f64)).min(0.4)
    }
}

/// `count` equally spaced `Z` samples starting at 0 with [`tracking_step`].
pub fn tracking_samples(spec: &SuperpositionSpec, count: usize) -> Vec<f64> {
    let step = tracking_step(spec);
    (0..count).map(|k| k as f64 * step).collect()
}
