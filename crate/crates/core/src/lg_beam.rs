//! Free-space Laguerre–Gauss beams in the paraxial approximation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{laguerre, log_factorial};
use crate::states::ModeIndex;

/// Waist, wavenumber and the derived Rayleigh length `z_R = k w0²/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LGParams {
    w0: f64,
    k: f64,
    z_r: f64,
}

impl LGParams {
    pub fn new(w0: f64, k: f64) -> Result<Self> {
        if !(w0 > 0.0 && w0.is_finite()) {
            return Err(Error::Domain(format!("beam waist must be positive, got {w0}")));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
        }
        Ok(Self { w0, k, z_r: 0.5 * k * w0 * w0 })
    }

    pub fn waist(&self) -> f64 {
        self.w0
    }

    pub fn wavenumber(&self) -> f64 {
        self.k
    }

    pub fn rayleigh_length(&self) -> f64 {
        self.z_r
    }

    /// `w(z) = w0 √(1 + (z/z_R)²)`.
    pub fn width(&self, z: f64) -> f64 {
        self.w0 * (z / self.z_r).hypot(1.0)
    }

    /// `R(z) = z (1 + (z_R/z)²)`; infinite at the waist.
    pub fn curvature_radius(&self, z: f64) -> f64 {
        if z == 0.0 {
            f64::INFINITY
        } else {
            z + self.z_r * self.z_r / z
        }
    }
}

/// Coefficient `2p + |m| + 1` of the Gouy phase.
pub fn gouy_index(mode: ModeIndex) -> i64 {
    2 * i64::from(mode.p) + i64::from(mode.abs_m()) + 1
}

/// `Φ_G(z) = −(2p + |m| + 1) arctan(z/z_R)`.
pub fn gouy_phase(mode: ModeIndex, params: &LGParams, z: f64) -> f64 {
    -(gouy_index(mode) as f64) * (z / params.z_r).atan()
}

/// Total Gouy phase change through the focus, `Φ_G(+∞) − Φ_G(−∞)`.
pub fn gouy_jump(mode: ModeIndex, params: &LGParams) -> f64 {
    gouy_phase(mode, params, f64::INFINITY) - gouy_phase(mode, params, f64::NEG_INFINITY)
}

/// Complex LG amplitude, normalized to unit power in every transverse plane.
pub fn lg_amplitude(mode: ModeIndex, params: &LGParams, r: f64, phi: f64, z: f64) -> Result<Complex64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be >= 0, got {r}")));
    }
    let w = params.width(z);
    let am = mode.abs_m();
    let x = 2.0 * r * r / (w * w);
    let lag = laguerre(mode.p, am, x)?.value;
    let log_norm = 0.5 * (log_factorial(mode.p) - log_factorial(mode.p + am));
    let radial_power = if am == 0 {
        1.0
    } else if x == 0.0 {
        0.0
    } else {
        (0.5 * f64::from(am) * x.ln()).exp()
    };
    let envelope = (2.0 / w) / (2.0 * PI).sqrt() * log_norm.exp() * radial_power * (-0.5 * x).exp() * lag;
    let curvature = params.k * r * r / (2.0 * params.curvature_radius(z));
    let phase = curvature + f64::from(mode.m) * phi + params.k * z + gouy_phase(mode, params, z);
    Ok(Complex64::from_polar(1.0, phase) * envelope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currents::density;
    use crate::quadrature::{radial_integrate, RadialQuadrature};
    use crate::states::PhysicalScales;

    fn params() -> LGParams {
        LGParams::new(2.0, 3.0).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LGParams::new(0.0, 1.0).is_err());
        assert!(LGParams::new(1.0, -1.0).is_err());
        assert!(LGParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn derived_rayleigh_length() {
        assert_eq!(params().rayleigh_length(), 6.0);
        assert_eq!(params().width(0.0), 2.0);
    }

    #[test]
    fn width_doubles_at_root_three_rayleigh_lengths() {
        let p = params();
        assert!((p.width(3f64.sqrt() * p.rayleigh_length()) - 2.0 * p.waist()).abs() < 1e-14);
    }

    #[test]
    fn width_grows_with_distance() {
        let p = params();
        let mut prev = p.width(0.0);
        for i in 1..50 {
            let z = 0.5 * f64::from(i);
            let w = p.width(z);
            assert!(w > prev && (p.width(-z) - w).abs() < 1e-15);
            prev = w;
        }
    }

    #[test]
    fn curvature_limits() {
        let p = params();
        assert!(p.curvature_radius(0.0).is_infinite());
        assert!(p.curvature_radius(1e-9) > 1e9);
        let far = 100.0 * p.rayleigh_length();
        assert!((p.curvature_radius(far) - far).abs() / far < 1e-4);
    }

    #[test]
    fn gouy_examples() {
        let p = params();
        let m00 = ModeIndex::new(0, 0);
        assert_eq!(gouy_phase(m00, &p, 0.0), 0.0);
        assert!((gouy_phase(m00, &p, p.rayleigh_length()) + PI / 4.0).abs() < 1e-15);
        assert!((gouy_jump(ModeIndex::new(1, 2), &p) + 5.0 * PI).abs() < 1e-14);
        for z in [0.3, 2.0, 40.0] {
            let m = ModeIndex::new(2, -3);
            assert_eq!(gouy_phase(m, &p, z), -gouy_phase(m, &p, -z));
        }
    }

    #[test]
    fn gouy_and_landau_indices_differ_in_structure() {
        // 2p + |m| + 1 and 2n + 1 differ by exactly -m
        for p in 0..=3u32 {
            for m in -3..=3 {
                let mode = ModeIndex::new(p, m);
                let landau = i64::from(2 * mode.n() + 1);
                assert_eq!(gouy_index(mode) - landau, -i64::from(m));
            }
        }
    }

    fn power(mode: ModeIndex, p: &LGParams, z: f64) -> f64 {
        let quad = RadialQuadrature::with_r_max(6.0 * p.width(z) + 10.0);
        radial_integrate(|r| lg_amplitude(mode, p, r, 0.0, z).unwrap().norm_sqr() * 2.0 * PI * r, &quad).unwrap()
    }

    #[test]
    fn power_is_conserved_through_focus() {
        let p = params();
        for mode in [ModeIndex::new(0, 0), ModeIndex::new(1, 2), ModeIndex::new(2, -3)] {
            let p0 = power(mode, &p, 0.0);
            let p2 = power(mode, &p, 2.0 * p.rayleigh_length());
            assert!((p0 - 1.0).abs() < 1e-10 && (p2 - 1.0).abs() < 1e-10, "{mode}: {p0} {p2}");
        }
    }

    #[test]
    fn modulus_is_azimuthally_uniform() {
        let p = params();
        let mode = ModeIndex::new(1, 3);
        for z in [0.0, 4.0, -9.0] {
            let base = lg_amplitude(mode, &p, 1.3, 0.0, z).unwrap().norm();
            for phi in [0.5, 2.0, 4.4] {
                let v = lg_amplitude(mode, &p, 1.3, phi, z).unwrap().norm();
                assert!((v - base).abs() < 1e-15 * base.max(1.0));
            }
        }
    }

    #[test]
    fn waist_matches_landau_density() {
        let scales = PhysicalScales::new(2.0, 1.0, 1.0).unwrap();
        let p = LGParams::new(scales.magnetic_width(), 5.0).unwrap();
        for mode in [ModeIndex::new(0, 1), ModeIndex::new(1, 2), ModeIndex::new(3, -4)] {
            for i in 0..60 {
                let r = 0.1 * f64::from(i);
                let l_b = scales.magnetic_length();
                let lg = lg_amplitude(mode, &p, r, 0.7, 0.0).unwrap().norm_sqr() * l_b * l_b;
                let landau = density(mode, &scales, r).unwrap();
                assert!((lg - landau).abs() < 1e-12, "{mode} r={r}: {lg} vs {landau}");
            }
        }
    }
}
