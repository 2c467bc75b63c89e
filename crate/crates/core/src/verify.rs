//! The verification suite behind `landau verify`.
//!
//! Each criterion returns a [`CriterionOutcome`]. Reports contain no
//! timings, so two runs serialize to identical bytes.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde_json::Value;

use crate::currents::{expectations, inverse_square_moment, mean_angular_velocity};
use crate::error::Result;
use crate::field::{sample_field, FieldSource, GridSpec};
use crate::lg_beam::{gouy_jump, lg_amplitude, LGParams};
use crate::output::json_num;
use crate::states::{longitudinal_phase, ModeIndex, PhysicalScales};
use crate::currents::density;
use crate::superposition::{
    analytic_rotation_rate, centroid, least_squares_slope, measured_rotation_rate, tracking_samples, SuperpositionSpec,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub max_error: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(id: u32, name: &'static str, max_error: f64, tolerance: f64, detail: String) -> Self {
        Self { id, name, passed: max_error < tolerance, max_error, tolerance, detail }
    }

    fn failed(id: u32, name: &'static str, tolerance: f64, detail: String) -> Self {
        Self { id, name, passed: false, max_error: f64::NAN, tolerance, detail }
    }

    pub fn to_json(&self) -> Value {
        let mut map = BTreeMap::new();
        map.insert("id", Value::from(self.id));
        map.insert("name", Value::from(self.name));
        map.insert("passed", Value::from(self.passed));
        map.insert("max_error", json_num(self.max_error));
        map.insert("tolerance", json_num(self.tolerance));
        map.insert("detail", Value::from(self.detail.clone()));
        serde_json::to_value(map).expect("string keys")
    }

    /// One human-readable line: `PASS [3] name: max_error=… tol=…`.
    pub fn summary_line(&self) -> String {
        format!(
            "{} [{}] {}: max_error={:.3e} tol={:.1e} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.max_error,
            self.tolerance,
            self.detail
        )
    }
}

fn wrap(id: u32, name: &'static str, tol: f64, body: impl FnOnce() -> Result<(f64, String)>) -> CriterionOutcome {
    match body() {
        Ok((err, detail)) => CriterionOutcome::new(id, name, err, tol, detail),
        Err(e) => CriterionOutcome::failed(id, name, tol, format!("error: {e}")),
    }
}

/// Modes with `n <= 6`, `-6 <= m <= n`.
pub fn expectation_modes() -> Vec<ModeIndex> {
    let mut out = Vec::new();
    for n in 0..=6u32 {
        for m in -6..=n as i32 {
            out.push(ModeIndex::from_landau(n, m).expect("m <= n"));
        }
    }
    out
}

pub fn oam_expectations() -> CriterionOutcome {
    wrap(1, "oam expectations", 1e-8, || {
        let sc = PhysicalScales::default();
        let mut worst: f64 = 0.0;
        let modes = expectation_modes();
        for &mode in &modes {
            let e = expectations(mode, &sc)?;
            let n = f64::from(mode.n());
            let m = f64::from(mode.m);
            worst = worst
                .max((e.l_can - m).abs())
                .max((e.l_gauge - (2.0 * n + 1.0 - m)).abs())
                .max((e.l_mech - (2.0 * n + 1.0)).abs());
        }
        Ok((worst, format!("{} modes", modes.len())))
    })
}

pub fn density_symmetry() -> CriterionOutcome {
    wrap(2, "density symmetry", 1e-10, || {
        let sc = PhysicalScales::default();
        let grid = GridSpec::default();
        let mut worst: f64 = 0.0;
        for &(n, m) in &[(20u32, 20i32), (5, 3), (1, 1)] {
            let a = sample_field(&FieldSource::Mode(ModeIndex::from_landau(n, m)?), &sc, &grid, 0.0)?;
            let b = sample_field(&FieldSource::Mode(ModeIndex::from_landau(n - m as u32, -m)?), &sc, &grid, 0.0)?;
            for (pa, pb) in a.iter().zip(&b) {
                worst = worst.max((pa.rho - pb.rho).abs());
            }
        }
        Ok((worst, format!("3 pairs on a {0}x{0} grid", grid.points_per_side)))
    })
}

pub fn three_fold_splitting() -> CriterionOutcome {
    wrap(3, "three-fold splitting", 1e-8, || {
        let sc = PhysicalScales::default();
        let mut worst: f64 = 0.0;
        for p in 0..=1 {
            for m in [-20, 0, 20] {
                let got = mean_angular_velocity(ModeIndex::new(p, m), &sc)?;
                worst = worst.max((got - (f64::from(m.signum()) + 1.0)).abs());
            }
        }
        Ok((worst, "m in {-20, 0, 20}, p in {0, 1}".into()))
    })
}

pub fn energy_identities() -> CriterionOutcome {
    wrap(4, "energy identities", 1e-7, || {
        let sc = PhysicalScales::default();
        let mut worst: f64 = 0.0;
        let modes = expectation_modes();
        for &mode in &modes {
            let e = expectations(mode, &sc)?;
            let e_osc = e.e_osc_kinetic + e.e_osc_potential;
            let level = f64::from(2 * mode.n() + 1);
            worst = worst
                .max((e.e_osc_kinetic - e.e_osc_potential).abs() / e_osc)
                .max((e.b_dot_mu - level).abs() / level);
        }
        Ok((worst, format!("{} modes", modes.len())))
    })
}

/// Nodeless `(m1, m2)` pairs and their exact rates.
pub fn rotation_table_pairs() -> Vec<(i32, i32, f64)> {
    let mut out = Vec::new();
    for k in 1..=8 {
        let kf = f64::from(k);
        out.push((k, -k, 1.0));
        out.push((0, k, 2.0));
        out.push((0, -k, 0.0));
        out.push((1, -k, 2.0 / (kf + 1.0)));
        out.push((-1, k, 2.0 * kf / (kf + 1.0)));
    }
    for k1 in 1..=8 {
        for k2 in k1 + 1..=8 {
            out.push((k1, k2, 2.0));
            out.push((-k1, -k2, 0.0));
        }
    }
    out
}

pub const ROTATION_SAMPLES: usize = 4;

pub fn rotation_tables() -> CriterionOutcome {
    wrap(5, "rotation tables", 1e-6, || {
        let sc = PhysicalScales::default();
        let pairs = rotation_table_pairs();
        let mut worst: f64 = 0.0;
        for &(m1, m2, exact) in &pairs {
            let spec = SuperpositionSpec::nodeless(m1, m2)?;
            let zs = tracking_samples(&spec, ROTATION_SAMPLES);
            let measured = measured_rotation_rate(&spec, &sc, &zs)?;
            let analytic = analytic_rotation_rate(&spec)?;
            worst = worst.max((measured - exact).abs()).max((analytic - exact).abs());
        }
        Ok((worst, format!("{} pairs, {ROTATION_SAMPLES} Z samples each", pairs.len())))
    })
}

pub fn centroid_dynamics() -> CriterionOutcome {
    // the three sub-checks have different tolerances; report the worst ratio
    wrap(6, "centroid dynamics", 1.0, || {
        let sc = PhysicalScales::default();
        let mut selection: f64 = 0.0;
        for m2 in [2, -2] {
            let spec = SuperpositionSpec::nodeless(0, m2)?;
            for z in [0.0, 0.4, 0.8] {
                selection = selection.max(centroid(&spec, &sc, z)?.norm());
            }
        }

        let spec = SuperpositionSpec::nodeless(0, 1)?;
        let zs: Vec<f64> = (0..6).map(|i| 0.2 * f64::from(i)).collect();
        let mut angles: Vec<f64> = Vec::new();
        for &z in &zs {
            let a = centroid(&spec, &sc, z)?.angle();
            let unwrapped = match angles.last() {
                None => a,
                Some(&prev) => prev + (a - prev - 2.0 * PI * ((a - prev) / (2.0 * PI)).round()),
            };
            angles.push(unwrapped);
        }
        let slope_err = (least_squares_slope(&zs, &angles) - 2.0).abs();

        let spec = SuperpositionSpec::nodeless(0, -1)?;
        let c0 = centroid(&spec, &sc, 0.0)?;
        let mut drift: f64 = 0.0;
        for i in 1..=6 {
            let c = centroid(&spec, &sc, 0.2 * f64::from(i))?;
            drift = drift.max((c.x_bar - c0.x_bar).hypot(c.y_bar - c0.y_bar));
        }
        let ratio = (selection / 1e-10).max(slope_err / 1e-4).max(drift / 1e-8);
        Ok((
            ratio,
            format!("|c(0,+-2)|={selection:.3e}/1e-10, slope err={slope_err:.3e}/1e-4, drift(0,-1)={drift:.3e}/1e-8"),
        ))
    })
}

pub fn inverse_square() -> CriterionOutcome {
    wrap(7, "inverse-square moment", 1e-8, || {
        let mut worst: f64 = 0.0;
        for p in 0..=4 {
            for am in 1..=8 {
                for m in [am, -am] {
                    let got = inverse_square_moment(ModeIndex::new(p, m))?;
                    let exact = 1.0 / (2.0 * f64::from(am));
                    worst = worst.max((got - exact).abs() / exact);
                }
            }
        }
        Ok((worst, "p <= 4, 1 <= |m| <= 8".into()))
    })
}

pub fn gouy_contrast() -> CriterionOutcome {
    wrap(8, "gouy contrast", 1e-12, || {
        let params = LGParams::new(2.0, 1.0)?;
        let sc = PhysicalScales::default().with_longitudinal_length(1.0)?;
        let z_m = 1.0;
        let mut worst: f64 = 0.0;
        let mut rows = Vec::new();
        for p in 0..=3u32 {
            for m in -3..=3 {
                let mode = ModeIndex::new(p, m);
                let gouy = f64::from(2 * p + mode.abs_m() + 1);
                let landau = f64::from(2 * mode.n() + 1);
                let jump = gouy_jump(mode, &params);
                let dk = longitudinal_phase(mode, &sc, 0.0)?.delta_kz * z_m;
                worst = worst.max((jump + gouy * PI).abs()).max((dk + landau).abs());
                rows.push(format!("({p},{m}):{}/{}", -gouy, -landau));
            }
        }
        Ok((worst, format!("gouy/landau coefficients {}", rows.join(" "))))
    })
}

pub fn waist_match() -> CriterionOutcome {
    wrap(9, "waist match", 1e-10, || {
        let sc = PhysicalScales::default();
        let l_b = sc.magnetic_length();
        let params = LGParams::new(sc.magnetic_width(), 1.0)?;
        let mut worst: f64 = 0.0;
        for mode in [ModeIndex::new(0, 1), ModeIndex::new(1, 2)] {
            for i in 0..=1000 {
                let r = 0.01 * f64::from(i) * l_b;
                for phi in [0.0, 1.0, 2.5] {
                    let lg = lg_amplitude(mode, &params, r, phi, 0.0)?.norm_sqr() * l_b * l_b;
                    worst = worst.max((lg - density(mode, &sc, r)?).abs());
                }
            }
        }
        Ok((worst, "(0,1) and (1,2), 0 <= r <= 10 l_B".into()))
    })
}

/// Criteria 1 to 9 in order.
pub fn run_physics() -> Vec<CriterionOutcome> {
    vec![
        oam_expectations(),
        density_symmetry(),
        three_fold_splitting(),
        energy_identities(),
        rotation_tables(),
        centroid_dynamics(),
        inverse_square(),
        gouy_contrast(),
        waist_match(),
    ]
}

pub fn report_json(outcomes: &[CriterionOutcome]) -> String {
    let mut map = BTreeMap::new();
    map.insert("criteria", Value::Array(outcomes.iter().map(CriterionOutcome::to_json).collect()));
    map.insert("passed", Value::from(outcomes.iter().all(|o| o.passed)));
    serde_json::to_string_pretty(&map).expect("string keys") + "\n"
}

/// Reruns criteria 1 to 9 and compares the serialized reports.
pub fn determinism(first: &[CriterionOutcome]) -> CriterionOutcome {
    let again = run_physics();
    let same = report_json(first) == report_json(&again);
    CriterionOutcome::new(
        10,
        "determinism",
        if same { 0.0 } else { 1.0 },
        0.5,
        if same { "byte-identical rerun".into() } else { "rerun differs".into() },
    )
}

/// Full suite, criteria 1 to 10.
pub fn run_all() -> Vec<CriterionOutcome> {
    let mut out = run_physics();
    let det = determinism(&out);
    out.push(det);
    out
}
