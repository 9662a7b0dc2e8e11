//! The two special functions the construction needs: the principal branch
//! of `ln Γ(z)` and the decaying Airy function on the far right half-line.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `B_{2n} / (2n (2n - 1))` for n = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const SHIFT: f64 = 8.0;

/// Principal branch of `ln Γ(z)`, continuous off the non-positive real axis
/// and equal to the real log-gamma on the positive axis. On the negative
/// axis the value is the limit from above.
pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite("log-gamma argument"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::PoleOfGamma(z.re));
    }
    if z.im < 0.0 {
        return Ok(log_gamma_upper(z.conj()).conj());
    }
    Ok(log_gamma_upper(z))
}

// Im z >= 0 from here on.
fn log_gamma_upper(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return log_gamma_shifted(z);
    }
    // Γ(z)Γ(1−z) = π / sin(πz), with ln sin(πz) written so that it is
    // continuous on the closed upper half plane:
    //   sin(πz) = (i/2) e^{−iπz} (1 − e^{2πiz}).
    let i = Complex64::i();
    let ln_sin = Complex64::new(0.5f64.ln(), PI / 2.0) - i * PI * z
        + (Complex64::new(1.0, 0.0) - (2.0 * PI * i * z).exp()).ln();
    Complex64::new(PI.ln(), 0.0) - ln_sin - log_gamma_shifted(Complex64::new(1.0, 0.0) - z)
}

fn log_gamma_shifted(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc += w.ln();
        w += 1.0;
    }
    stirling(w) - acc
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += term * c;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// `arg Γ(z)` reduced to `(−π, π]`.
pub fn arg_gamma(z: Complex64) -> Result<f64> {
    let lg = complex_log_gamma(z)?;
    Ok(lg.im.sin().atan2(lg.im.cos()))
}

/// Airy `(Ai(x), Ai'(x))` for `x >= 8` from the large-argument expansion.
/// The boundary data of the shooting problem lives at `x >= 10`, where the
/// truncated series is accurate to a few ulps.
pub fn airy_ai_large(x: f64) -> (f64, f64) {
    assert!(x >= 8.0, "airy_ai_large needs x >= 8, got {x}");
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut u = 1.0;
    let mut sum_ai = 1.0;
    let mut sum_dai = 1.0;
    let mut zpow = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        zpow *= -1.0 / zeta;
        let ta = u * zpow;
        let td = v * zpow;
        sum_ai += ta;
        sum_dai += td;
        if ta.abs() < 1e-18 * sum_ai.abs() && td.abs() < 1e-18 * sum_dai.abs() {
            break;
        }
    }
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (pref / q * sum_ai, -pref * q * sum_dai)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Γ(z) as a truncated Euler product with a Stirling-corrected tail,
    // evaluated entirely in log space: independent of the shift/reflection
    // code path above.
    fn arg_gamma_product(z: Complex64) -> f64 {
        // ln Γ(z) = −γz − ln z + Σ_{n≥1} [z/n − ln(1 + z/n)]
        let euler_gamma = 0.577_215_664_901_532_9;
        let mut s = -euler_gamma * z - z.ln();
        let n_terms = 200_000;
        for n in 1..=n_terms {
            let nf = n as f64;
            s += z / nf - (c(1.0, 0.0) + z / nf).ln();
        }
        // tail Σ_{n>N} [z/n − ln(1+z/n)] ≈ z²/(2N) − z³/(6N²) + ...
        let nf = n_terms as f64;
        s += z * z / (2.0 * nf) - z * z * z / (6.0 * nf * nf) - z * z / (4.0 * nf * nf);
        s.im.sin().atan2(s.im.cos())
    }

    #[test]
    fn gamma_at_one_and_half() {
        let g1 = complex_log_gamma(c(1.0, 0.0)).unwrap();
        assert!(g1.norm() < 1e-14);
        let gh = complex_log_gamma(c(0.5, 0.0)).unwrap();
        assert!((gh.re - PI.sqrt().ln()).abs() < 1e-14);
        assert!(gh.im.abs() < 1e-15);
    }

    #[test]
    fn modulus_of_gamma_on_imaginary_unit() {
        // |Γ(i)|² = π / sinh π
        let g = complex_log_gamma(c(0.0, 1.0)).unwrap();
        let expected = 0.5 * (PI / PI.sinh()).ln();
        assert!((g.re - expected).abs() < 1e-14);
    }

    #[test]
    fn reference_values() {
        // mpmath.loggamma, 15 significant digits
        let table = [
            (c(0.0, 1.0), c(-0.650923199301856, -1.87243664726243)),
            (c(0.0, 2.5), c(-3.46619757436878, -1.02819192094246)),
            (c(0.0, -2.1), c(-2.75070149520062, 1.36733685296223)),
            (c(0.0, 10.0), c(-15.9403172812413, 12.232116647435)),
            (c(0.0, 5.0), c(-7.73976205698685, 2.24510224782003)),
            (c(0.3, 0.5), c(0.295195462640838, -1.09164470157906)),
            (c(-2.7, 0.1), c(-0.142262513881771, -9.52557544190639)),
            (c(-10.2, 3.0), c(-22.7486213525002, -26.4648882291381)),
            (c(-3.5, 0.0), c(-1.30900668499304, -12.5663706143592)),
            (c(0.4, 0.0), c(0.796677817701784, 0.0)),
        ];
        for (z, want) in table {
            let got = complex_log_gamma(z).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "{z}: {got} vs {want}");
        }
    }

    #[test]
    fn relative_error_on_imaginary_strip() {
        // Γ(1 + iy) = iy Γ(iy); |Γ(iy)|² = π / (y sinh πy)
        for k in 1..=100 {
            let y = 0.1 * k as f64;
            let lg = complex_log_gamma(c(0.0, y)).unwrap();
            let modulus = (PI / (y * (PI * y).sinh())).sqrt();
            assert!((lg.re.exp() / modulus - 1.0).abs() < 1e-12, "y = {y}");
            let shifted = complex_log_gamma(c(1.0, y)).unwrap();
            let lhs = shifted.exp();
            let rhs = c(0.0, y) * lg.exp();
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "y = {y}");
        }
    }

    #[test]
    fn arg_matches_product_oracle() {
        for &y in &[-2.5, -1.0, -0.3, 0.2, 0.7, 1.6, 2.5] {
            let z = c(0.0, y);
            let a = arg_gamma(z).unwrap();
            let b = arg_gamma_product(z);
            let diff = (a - b).sin().atan2((a - b).cos()).abs();
            assert!(diff < 1e-10, "y = {y}: {a} vs {b}");
        }
    }

    #[test]
    fn reflection_and_shift_agree_on_overlap() {
        for &(re, im) in &[(0.49, 0.3), (0.2, 2.0), (-0.4, 0.05), (0.1, -1.5)] {
            let z = c(re, im);
            let via_reflection = complex_log_gamma(z).unwrap();
            let via_shift = if im >= 0.0 {
                log_gamma_shifted(z)
            } else {
                log_gamma_shifted(z.conj()).conj()
            };
            assert!((via_reflection - via_shift).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(complex_log_gamma(c(x, 0.0)), Err(Error::PoleOfGamma(_))));
        }
        assert!(complex_log_gamma(c(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn airy_reference_values() {
        // mpmath.airyai
        let cases = [
            (10.0, 1.10475325528987e-10, -3.52063367673892e-10),
            (12.0, 1.39318468887536e-13, -4.85473655498531e-13),
        ];
        for (x, ai, dai) in cases {
            let (a, d) = airy_ai_large(x);
            assert!((a / ai - 1.0).abs() < 1e-13, "Ai({x})");
            assert!((d / dai - 1.0).abs() < 1e-13, "Ai'({x})");
        }
        let (a20, _) = airy_ai_large(20.0);
        assert!((a20 / 1.69167286867054e-27 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn airy_satisfies_its_equation() {
        // Ai'' = x Ai, checked by central differences of Ai'
        let x = 11.0;
        let h = 1e-4;
        let (ai, _) = airy_ai_large(x);
        let (_, dp) = airy_ai_large(x + h);
        let (_, dm) = airy_ai_large(x - h);
        let second = (dp - dm) / (2.0 * h);
        assert!((second / (x * ai) - 1.0).abs() < 1e-7);
    }
}
