//! Locale-independent number formatting for CSV output.

/// Shortest decimal string that parses back to exactly `x` (never more than
/// 17 significant digits).
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
