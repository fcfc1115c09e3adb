//! Number parsing and significant-digit rounding for the CLI.

/// Parses `p/q` or a plain decimal.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in '{s}'"))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in '{s}'"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            p / q
        }
        None => s
            .parse()
            .map_err(|_| format!("'{s}' is not a number or p/q fraction"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// Rounds `x` to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}
