//! Transverse sampling of densities and currents on square grids.

use rayon::prelude::*;

use crate::currents::azimuthal_currents;
use crate::error::{Error, Result};
use crate::states::{ModeIndex, PhysicalScales};
use crate::superposition::{currents_at, density_at, SuperpositionSpec};

/// Square grid `[-half_width, half_width]²` in units of `l_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub points_per_side: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { half_width: 12.0, points_per_side: 301 }
    }
}

impl GridSpec {
    pub fn new(half_width: f64, points_per_side: usize) -> Result<Self> {
        let grid = Self { half_width, points_per_side };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::Domain(format!("grid half width must be positive, got {}", self.half_width)));
        }
        if self.points_per_side < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points per side, got {}", self.points_per_side)));
        }
        Ok(())
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        let span = 2.0 * self.half_width;
        -self.half_width + span * i as f64 / (self.points_per_side - 1) as f64
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points_per_side - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSource {
    Mode(ModeIndex),
    Superposition(SuperpositionSpec),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub x: f64,
    pub y: f64,
    pub rho: f64,
    pub jx: f64,
    pub jy: f64,
}

fn sample_point(source: &FieldSource, x: f64, y: f64, z: f64) -> Result<FieldSample> {
    let big_r = x.hypot(y);
    let phi = y.atan2(x);
    let (cos, sin) = (phi.cos(), phi.sin());
    let (rho, j_r, j_phi) = match source {
        FieldSource::Mode(mode) => {
            let (rho, jc, jg) = azimuthal_currents(*mode, big_r)?;
            (rho, 0.0, jc + jg)
        }
        FieldSource::Superposition(spec) => {
            let c = currents_at(spec, big_r, phi, z)?;
            (density_at(spec, big_r, phi, z)?, c.j_can_r, c.j_total_phi())
        }
    };
    Ok(FieldSample { x, y, rho, jx: j_r * cos - j_phi * sin, jy: j_r * sin + j_phi * cos })
}

/// Samples `ρ̃` and `(j̃x, j̃y)` row by row (`Y` outer, ascending) at
/// propagation distance `Z`. The origin uses the analytic limits.
pub fn sample_field(source: &FieldSource, scales: &PhysicalScales, grid: &GridSpec, z: f64) -> Result<Vec<FieldSample>> {
    let _ = scales;
    grid.validate()?;
    let n = grid.points_per_side;
    let rows: Vec<Result<Vec<FieldSample>>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = grid.coordinate(j);
            (0..n).map(|i| sample_point(source, grid.coordinate(i), y, z)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}
