//! `printf("%.Ng")`-style number formatting.
//!
//! Machine-readable output uses 17 significant digits, which round-trips every
//! `f64`; console output uses 6.

/// Significant digits for CSV output.
pub const MACHINE_DIGITS: usize = 17;
/// Significant digits for human-readable output.
pub const HUMAN_DIGITS: usize = 6;

/// Formats `x` with `digits` significant digits, dropping trailing zeros, switching
/// to exponent notation when the decimal exponent is below -4 or at least `digits`.
pub fn format_g(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Round first so the exponent accounts for carries such as 9.99 -> 10.0.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

/// 17 significant digits.
pub fn machine(x: f64) -> String {
    format_g(x, MACHINE_DIGITS)
}

/// 6 significant digits.
pub fn human(x: f64) -> String {
    format_g(x, HUMAN_DIGITS)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
