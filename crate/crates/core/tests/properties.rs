use std::f64::consts::PI;

use landau_core::quadrature::{ring_angles, RadialQuadrature};
use landau_core::superposition::tracking_samples;
use landau_core::*;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact `L_p^α(x)` from the explicit series, in rational arithmetic.
fn laguerre_series(p: u32, alpha: u32, x: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    let mut power = BigRational::one();
    let mut fact = BigInt::one();
    for k in 0..=p {
        if k > 0 {
            power = &power * x;
            fact *= BigInt::from(k);
        }
        let term = BigRational::new(binomial(p + alpha, p - k), fact.clone()) * &power;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laguerre_matches_exact_series(p in 0u32..=64, alpha in 0u32..=64, x in 0.0f64..80.0) {
        let xr = BigRational::from_float(x).unwrap();
        let exact = to_f64(&laguerre_series(p, alpha, &xr));
        // cancellation scale: the largest lower-degree value seen by the recurrence
        let scale = (0..=p).map(|k| to_f64(&laguerre_series(k, alpha, &xr)).abs()).fold(exact.abs(), f64::max);
        let got = laguerre(p, alpha, x).unwrap().value;
        prop_assert!((got - exact).abs() <= 1e-9 * scale.max(1e-300), "p={} a={} x={}: {} vs {}", p, alpha, x, got, exact);
    }
}

proptest! {
    #[test]
    fn laguerre_derivative_matches_finite_difference(p in 1u32..=20, alpha in 0u32..=20, x in 0.5f64..30.0) {
        let h = 1e-5 * x.max(1.0);
        let e = laguerre(p, alpha, x).unwrap();
        let fd = (laguerre(p, alpha, x + h).unwrap().value - laguerre(p, alpha, x - h).unwrap().value) / (2.0 * h);
        let scale = e.derivative.abs().max(e.value.abs()).max(1.0);
        prop_assert!((fd - e.derivative).abs() <= 1e-5 * scale);
    }

    #[test]
    fn laguerre_rejects_negative_argument(p in 0u32..=64, alpha in 0u32..=64, x in -1e6f64..-1e-12) {
        prop_assert!(matches!(laguerre(p, alpha, x), Err(Error::Domain(_))));
    }

    #[test]
    fn density_depends_on_p_and_abs_m_only(n in 0u32..=24, m in -24i32..=24, r in 0.0f64..10.0) {
        prop_assume!(m <= n as i32);
        let sc = PhysicalScales::default();
        let a = ModeIndex::from_landau(n, m).unwrap();
        let b = ModeIndex::from_landau((n as i32 - m) as u32, -m).unwrap();
        prop_assert_eq!(density(a, &sc, r).unwrap(), density(b, &sc, r).unwrap());
    }

    #[test]
    fn mean_angular_velocity_takes_three_values(p in 0u32..=4, m in -12i32..=12) {
        let got = mean_angular_velocity(ModeIndex::new(p, m), &PhysicalScales::default()).unwrap();
        prop_assert!((got - (f64::from(m.signum()) + 1.0)).abs() < 1e-9);
    }

    #[test]
    fn total_current_flows_with_gauge_current_outside_turning_radius(p in 0u32..=3, m in -10i32..=-1, r in 0.1f64..10.0) {
        let c = decompose_current(ModeIndex::new(p, m), &PhysicalScales::default(), r).unwrap();
        // j_total = (m/R + R/2) ρ̃ changes sign at R² = 2|m|
        let expected = (r * r - 2.0 * f64::from(-m)).signum();
        if c.rho > 1e-200 && (r * r - 2.0 * f64::from(-m)).abs() > 1e-9 {
            prop_assert_eq!(c.j_total_phi.signum(), expected);
        }
    }

    #[test]
    fn rotation_rate_swap_symmetry(p1 in 0u32..=3, m1 in -8i32..=8, p2 in 0u32..=3, m2 in -8i32..=8) {
        prop_assume!(m1 != m2);
        let a = SuperpositionSpec::with_default_mixing(ModeIndex::new(p1, m1), ModeIndex::new(p2, m2)).unwrap();
        let b = SuperpositionSpec::with_default_mixing(ModeIndex::new(p2, m2), ModeIndex::new(p1, m1)).unwrap();
        prop_assert_eq!(analytic_rotation_rate(&a).unwrap(), analytic_rotation_rate(&b).unwrap());
    }

    #[test]
    fn superposition_is_normalized(m1 in -6i32..=6, m2 in -6i32..=6, p1 in 0u32..=2, z in -3.0f64..3.0) {
        prop_assume!(m1 != m2);
        let spec = SuperpositionSpec::with_default_mixing(ModeIndex::new(p1, m1), ModeIndex::new(0, m2)).unwrap();
        let sc = PhysicalScales::default();
        let n_phi = 64;
        let quad = RadialQuadrature::for_pair(spec.mode1(), spec.mode2());
        let total = radial_integrate(
            |r| {
                ring_angles(n_phi).map(|phi| superposition_density(&spec, &sc, r, phi, z).unwrap()).sum::<f64>()
                    * (2.0 * PI / n_phi as f64) * r
            },
            &quad,
        ).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-9, "{}", total);
    }

    #[test]
    fn mode_phase_recovers_pattern_angle(q in 1u32..=9, angle in 0.0f64..1.0, contrast in 0.05f64..1.0) {
        let theta0 = angle * 2.0 * PI / f64::from(q);
        let n = (8 * q as usize).max(64);
        let ring: Vec<(f64, f64)> = ring_angles(n).map(|phi| (phi, 1.0 + contrast * (f64::from(q) * (phi - theta0)).cos())).collect();
        let mp = azimuthal_mode_phase(&ring, q).unwrap();
        let period = 2.0 * PI / f64::from(q);
        let d = mp.angle - theta0;
        prop_assert!((d - period * (d / period).round()).abs() < 1e-12);
        prop_assert!((mp.amplitude - 0.5 * contrast * n as f64).abs() < 1e-9 * n as f64);
    }

    #[test]
    fn lg_power_is_independent_of_z(p in 0u32..=3, m in -4i32..=4, z in -30.0f64..30.0) {
        let params = LGParams::new(1.5, 2.0).unwrap();
        let mode = ModeIndex::new(p, m);
        let quad = RadialQuadrature::with_r_max(6.0 * params.width(z) + 10.0);
        let power = radial_integrate(|r| lg_amplitude(mode, &params, r, 0.0, z).unwrap().norm_sqr() * 2.0 * PI * r, &quad).unwrap();
        prop_assert!((power - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gouy_phase_is_odd(p in 0u32..=5, m in -5i32..=5, z in 0.0f64..100.0) {
        let params = LGParams::new(1.0, 3.0).unwrap();
        let mode = ModeIndex::new(p, m);
        prop_assert_eq!(gouy_phase(mode, &params, z), -gouy_phase(mode, &params, -z));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn measured_rate_matches_analytic(m1 in -8i32..=8, m2 in -8i32..=8) {
        prop_assume!(m1 != m2);
        let spec = SuperpositionSpec::nodeless(m1, m2).unwrap();
        let zs = tracking_samples(&spec, 4);
        let measured = measured_rotation_rate(&spec, &PhysicalScales::default(), &zs).unwrap();
        prop_assert!((measured - analytic_rotation_rate(&spec).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn log_factorial_matches_exact_integers() {
    let mut fact = BigInt::one();
    for k in 0..=200u32 {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        // ln via the exact integer: mantissa and binary exponent
        let bits = fact.bits();
        let shift = bits.saturating_sub(60);
        let mantissa = (&fact >> shift).to_f64().unwrap();
        let exact = mantissa.ln() + shift as f64 * std::f64::consts::LN_2;
        let got = log_factorial(k);
        assert!((got - exact).abs() <= 2e-15 * exact.max(1.0), "k={k}: {got} vs {exact}");
    }
    assert!(fact.is_positive());
}

#[test]
fn orthonormality_across_radial_index() {
    let sc = PhysicalScales::default();
    for m in [-5, 0, 3] {
        for p in 0..=5u32 {
            for p2 in 0..=5u32 {
                let a = ModeIndex::new(p, m);
                let b = ModeIndex::new(p2, m);
                let quad = RadialQuadrature::for_pair(a, b);
                let overlap = radial_integrate(
                    |r| radial_wavefunction(a, &sc, r).unwrap() * radial_wavefunction(b, &sc, r).unwrap() * r,
                    &quad,
                )
                .unwrap();
                let want = if p == p2 { 1.0 } else { 0.0 };
                assert!((overlap - want).abs() < 1e-10, "m={m} p={p} p'={p2}: {overlap}");
            }
        }
    }
}
