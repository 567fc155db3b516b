//! Number formatting for emitted artifacts.

/// Rounds to 15 significant digits and prints the shortest representation
/// that round-trips to the rounded value.
pub fn num(v: f64) -> String {
    format!("{}", round15(v))
}

/// `v` rounded to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().unwrap_or(v)
}
