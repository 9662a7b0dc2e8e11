//! Angle bookkeeping. Every angle leaving this crate lives in `[0, 2π)` and
//! comparisons are circular.

use std::f64::consts::TAU;

/// Reduces `theta` into `[0, 2π)`.
pub fn reduce(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Circular distance `min(|Δ|, 2π − |Δ|)` with `Δ` reduced mod 2π.
pub fn dist(a: f64, b: f64) -> f64 {
    let d = reduce(a - b);
    d.min(TAU - d)
}

/// Parses an angle written either as decimal radians or as a rational
/// multiple of pi: `pi`, `-pi/3`, `3pi/4`, `5*pi/12`, `0.25pi`.
pub fn parse_angle(text: &str) -> Option<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    let Some(pos) = lower.find("pi") else {
        return lower.parse::<f64>().ok().filter(|v| v.is_finite());
    };
    let (head, tail) = (&lower[..pos], &lower[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().ok()?,
    };
    let divisor = if tail.is_empty() {
        1.0
    } else {
        let d = tail.strip_prefix('/')?.parse::<f64>().ok()?;
        if d == 0.0 {
            return None;
        }
        d
    };
    let v = factor * std::f64::consts::PI / divisor;
    v.is_finite().then_some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reduce_wraps_negative_angles() {
        assert!((reduce(-PI / 3.0) - 5.0 * PI / 3.0).abs() < 1e-15);
        assert_eq!(reduce(0.0), 0.0);
        assert_eq!(reduce(-1e-300), 0.0);
        assert!((reduce(TAU + 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn circular_distance() {
        assert!((dist(0.1, TAU - 0.1) - 0.2).abs() < 1e-15);
        assert!((dist(PI, 0.0) - PI).abs() < 1e-15);
        assert!(dist(1.0, 1.0 + 4.0 * PI) < 1e-14);
    }

    #[test]
    fn pi_fractions() {
        let cases = [
            ("pi/4", PI / 4.0),
            ("3pi/4", 0.75 * PI),
            ("-pi/3", -PI / 3.0),
            ("5*pi/12", 5.0 * PI / 12.0),
            ("pi", PI),
            ("0.5", 0.5),
            ("-2", -2.0),
            ("0.25pi", 0.25 * PI),
        ];
        for (text, want) in cases {
            let got = parse_angle(text).unwrap();
            assert!((got - want).abs() < 1e-15, "{text}: {got} vs {want}");
        }
        assert!(parse_angle("pi/0").is_none());
        assert!(parse_angle("banana").is_none());
        assert!(parse_angle("pi/x").is_none());
    }
}
