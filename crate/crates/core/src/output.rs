//! Number formatting shared by reports and data files.

use serde_json::{Number, Value};

/// Scientific notation with 17 significant digits; `-0` prints as `0`.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// JSON number with 17 significant digits; non-finite values become `null`.
pub fn json_num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    fmt17(x).parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}
