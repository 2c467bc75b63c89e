//! Values frozen from 40-digit arbitrary-precision evaluations.

use landau_core::states::ModeIndex;
use landau_core::*;

fn close(got: f64, want: f64, rel: f64) {
    assert!((got - want).abs() <= rel * want.abs(), "{got} vs {want}");
}

#[test]
fn laguerre_reference_values() {
    close(laguerre(10, 3, 7.5).unwrap().value, 13.455643245152064732, 1e-13);
    close(laguerre(64, 0, 100.0).unwrap().value, -1.6713150974535538761e20, 1e-10);
    close(laguerre(30, 64, 250.0).unwrap().value, 2.3954833809650112216e32, 1e-12);
}

#[test]
fn log_factorial_reference_value() {
    close(log_factorial(50), 148.47776695177303207, 1e-15);
}

#[test]
fn radial_function_reference_values() {
    let sc = PhysicalScales::default();
    close(radial_wavefunction(ModeIndex::new(3, -2), &sc, 1.7).unwrap(), -0.04191850807609391272, 1e-13);
    close(radial_wavefunction(ModeIndex::new(0, 20), &sc, 6.3).unwrap(), 0.29796258083569780321, 1e-13);
}

#[test]
fn lg_amplitude_reference_value() {
    let params = LGParams::new(2.0, 3.0).unwrap();
    let a = lg_amplitude(ModeIndex::new(1, 2), &params, 1.1, 0.4, 0.7).unwrap();
    close(a.re, -0.12148613026454561182, 1e-12);
    close(a.im, 0.1219937540060530936, 1e-12);
}

#[test]
fn superposition_density_reference_value() {
    let spec = SuperpositionSpec::nodeless(1, -2).unwrap();
    let rho = superposition_density(&spec, &PhysicalScales::default(), 1.3, 0.5, 0.25).unwrap();
    close(rho, 0.047310681969086244928, 1e-13);
}

#[test]
fn dipole_centroid_closed_form() {
    // a = 1, b = √2: X̄ = ab/(a²+b²) ∫ R² f₀ f₁ dR = (√2/3)·√2 = 2/3
    let spec = SuperpositionSpec::nodeless(0, 1).unwrap();
    let c = centroid(&spec, &PhysicalScales::default(), 0.0).unwrap();
    close(c.x_bar, 2.0 / 3.0, 1e-12);
    assert!(c.y_bar.abs() < 1e-14);
}
