//! Composite Gauss–Legendre quadrature on the half-line and discrete
//! azimuthal Fourier analysis.
//!
//! All sums run in ascending panel (or sample) order, so results are
//! bit-reproducible for a fixed configuration.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::ModeIndex;

/// Panel doublings attempted before giving up.
pub const MAX_DOUBLINGS: u32 = 12;
/// Default absolute tolerance on dimensionless integrals.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Tail-to-peak ratio above which the truncation radius is rejected.
pub const TRUNCATION_RATIO: f64 = 1e-14;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            // Tricomi initial guess for the i-th largest root.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Shared 16-point rule.
    pub fn sixteen() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Composite rule over `[a, b]` with `panels` equal panels.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, panels: usize) -> f64 {
        self.integrate_tracking(&f, a, b, panels).0
    }

    /// Same as [`integrate`](Self::integrate) but also reports the largest
    /// `|f|` seen at any node.
    fn integrate_tracking<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> (f64, f64) {
        let h = (b - a) / panels as f64;
        let half = 0.5 * h;
        let mut total = 0.0;
        let mut peak: f64 = 0.0;
        for k in 0..panels {
            let mid = a + (k as f64 + 0.5) * h;
            let mut panel = 0.0;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let v = f(mid + half * x);
                peak = peak.max(v.abs());
                panel += w * v;
            }
            total += half * panel;
        }
        (total, peak)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let prev = if n == 0 { 0.0 } else { p0 };
    let d = n as f64 * (x * p - prev) / (x * x - 1.0);
    (p, d)
}

/// Configuration for half-line integrals `∫_0^∞ f(r) dr`, truncated at
/// `r_max` (in units of the magnetic length for the physics integrands).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialQuadrature {
    pub r_max: f64,
    pub panels: usize,
    pub nodes_per_panel: usize,
    pub tol: f64,
}

impl Default for RadialQuadrature {
    fn default() -> Self {
        Self { r_max: 20.0, panels: 8, nodes_per_panel: 16, tol: DEFAULT_TOL }
    }
}

impl RadialQuadrature {
    pub fn with_r_max(r_max: f64) -> Self {
        Self { r_max, ..Self::default() }
    }

    /// Truncation radius `2 sqrt(2n + |m| + 1) + 10` (dimensionless): the
    /// classical turning point plus a Gaussian tail margin.
    pub fn for_mode(mode: ModeIndex) -> Self {
        let n = f64::from(mode.n());
        let am = f64::from(mode.m.unsigned_abs());
        Self::with_r_max(2.0 * (2.0 * n + am + 1.0).sqrt() + 10.0)
    }

    /// Truncation radius covering both modes of a pair.
    pub fn for_pair(a: ModeIndex, b: ModeIndex) -> Self {
        let qa = Self::for_mode(a);
        let qb = Self::for_mode(b);
        if qa.r_max >= qb.r_max {
            qa
        } else {
            qb
        }
    }
}

/// Integrates `f` over `[0, r_max]`, doubling the panel count until two
/// successive estimates agree to `tol * max(1, |I|)`.
///
/// Fails with [`Error::Nonconvergence`] after [`MAX_DOUBLINGS`] doublings and
/// with [`Error::Truncation`] when `|f(r_max)|` exceeds
/// `TRUNCATION_RATIO` times the largest sampled `|f|`.
pub fn radial_integrate<F: Fn(f64) -> f64>(f: F, quad: &RadialQuadrature) -> Result<f64> {
    if !(quad.r_max > 0.0) || quad.panels == 0 || quad.nodes_per_panel == 0 || !(quad.tol > 0.0) {
        return Err(Error::Configuration(format!("invalid radial quadrature {quad:?}")));
    }
    let owned;
    let rule = if quad.nodes_per_panel == 16 {
        GaussLegendre::sixteen()
    } else {
        owned = GaussLegendre::new(quad.nodes_per_panel);
        &owned
    };

    let mut panels = quad.panels;
    let (mut prev, _) = rule.integrate_tracking(&f, 0.0, quad.r_max, panels);
    let mut last_change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let (cur, peak) = rule.integrate_tracking(&f, 0.0, quad.r_max, panels);
        last_change = (cur - prev).abs();
        if last_change <= quad.tol * cur.abs().max(1.0) {
            let tail = f(quad.r_max).abs();
            if tail > TRUNCATION_RATIO * peak {
                return Err(Error::Truncation { r_max: quad.r_max, tail, peak });
            }
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Nonconvergence { doublings: MAX_DOUBLINGS, last_change })
}

/// Magnitude and orientation of one azimuthal Fourier component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePhase {
    /// `|c_q|` with `c_q = Σ ρ(φ_j) e^{-i q φ_j}` (unnormalized sum).
    pub amplitude: f64,
    /// Pattern angle: where `cos(q(φ - angle))` peaks, defined modulo `2π/q`.
    pub angle: f64,
}

/// Amplitude below which a ring is considered to carry no order-`q` contrast.
pub const MIN_MODE_AMPLITUDE: f64 = 1e-12;

/// Discrete Fourier coefficient of order `order` for equally spaced samples
/// `(φ, ρ)` on a ring.
///
/// A density `A + B cos(q(φ - θ))` with `B > 0` yields `angle = θ`. The sign
/// convention is `angle = -arg(c_q)/q`.
pub fn azimuthal_mode_phase(density_on_ring: &[(f64, f64)], order: u32) -> Result<ModePhase> {
    if order == 0 {
        return Err(Error::Domain("azimuthal order must be positive".into()));
    }
    if density_on_ring.len() < 4 * order as usize {
        return Err(Error::Domain(format!(
            "need at least {} ring samples for order {order}, got {}",
            4 * order,
            density_on_ring.len()
        )));
    }
    let q = f64::from(order);
    let c: Complex64 = density_on_ring
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &(phi, rho)| acc + rho * Complex64::from_polar(1.0, -q * phi));
    let amplitude = c.norm();
    if amplitude < MIN_MODE_AMPLITUDE {
        return Err(Error::DegeneratePattern { order, amplitude });
    }
    Ok(ModePhase { amplitude, angle: -c.arg() / q })
}

/// `count` equally spaced angles on `[0, 2π)`.
pub fn ring_angles(count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |j| 2.0 * PI * j as f64 / count as f64)
}
