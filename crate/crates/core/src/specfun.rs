//! Associated Laguerre polynomials and log-factorials.
//!
//! Values come from the upward three-term recurrence in the degree,
//!
//! ```text
//! (k + 1) L_{k+1}^a(x) = (2k + 1 + a - x) L_k^a(x) - (k + a) L_{k-1}^a(x),
//! ```
//!
//! which stays well conditioned over the supported envelope
//! (degree and order up to 64, `0 <= x <= X_MAX`). Derivatives use the
//! identity `d/dx L_p^a = -L_{p-1}^{a+1}`.

use crate::error::{Error, Result};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: u32 = 64;
/// Largest supported (integer) order.
pub const MAX_ORDER: u32 = 64;
/// Upper end of the argument range over which finiteness is guaranteed.
/// Larger arguments are still evaluated; the wavefunctions built on top of
/// these polynomials are negligible there anyway.
pub const X_MAX: f64 = 400.0;

/// Value and first derivative of `L_p^alpha(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreEval {
    pub value: f64,
    pub derivative: f64,
}

// ln(k!) for k <= 20, taken from the exact integer factorial.
const EXACT_TABLE_LEN: usize = 21;

fn exact_log_factorials() -> [f64; EXACT_TABLE_LEN] {
    let mut table = [0.0; EXACT_TABLE_LEN];
    let mut fact: u64 = 1;
    for (k, slot) in table.iter_mut().enumerate().skip(1) {
        fact *= k as u64;
        *slot = (fact as f64).ln();
    }
    table
}

/// `ln(k!)`.
///
/// Exact (up to the final rounding of `ln`) for `k <= 20`; above that a
/// Stirling series with four correction terms, whose truncation error is
/// below `1e-15` for `k + 1 >= 22`.
pub fn log_factorial(k: u32) -> f64 {
    if (k as usize) < EXACT_TABLE_LEN {
        return exact_log_factorials()[k as usize];
    }
    let x = f64::from(k) + 1.0;
    let x2 = x * x;
    let series = 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2)
        - 1.0 / (1680.0 * x * x2 * x2 * x2);
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// Raw recurrence without envelope checks. Used internally for the shifted
/// orders that appear in derivatives.
pub(crate) fn laguerre_value(p: u32, alpha: u32, x: f64) -> f64 {
    let a = f64::from(alpha);
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 1.0 + a - x;
    for k in 1..p {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0 + a - x) * curr - (kf + a) * prev) / (kf + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// Second derivative `d^2/dx^2 L_p^alpha(x) = L_{p-2}^{alpha+2}(x)`.
pub(crate) fn laguerre_second_derivative(p: u32, alpha: u32, x: f64) -> f64 {
    if p < 2 {
        0.0
    } else {
        laguerre_value(p - 2, alpha + 2, x)
    }
}

/// Evaluates `L_p^alpha(x)` and its derivative.
pub fn laguerre(p: u32, alpha: u32, x: f64) -> Result<LaguerreEval> {
    if p > MAX_DEGREE || alpha > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Laguerre indices (p = {p}, alpha = {alpha}) outside supported envelope \
             (p <= {MAX_DEGREE}, alpha <= {MAX_ORDER})"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("Laguerre argument must be finite and >= 0, got {x}")));
    }
    let value = laguerre_value(p, alpha, x);
    let derivative = if p == 0 { 0.0 } else { -laguerre_value(p - 1, alpha + 1, x) };
    Ok(LaguerreEval { value, derivative })
}
