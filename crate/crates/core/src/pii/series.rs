//! Algebraic series at +∞ and the oscillatory model at −∞.

use num_complex::Complex64;

use crate::monodromy::ConnectionConstants;

/// Three-term expansion of u at +∞,
/// `α/x + 2α(1−α²)/x⁴ + 4α(1−α²)(10−3α²)/x⁷` with α = −iμ/2.
pub fn asym_series_plus(x: f64, mu: f64) -> Complex64 {
    let alpha = Complex64::new(0.0, -0.5 * mu);
    let one = Complex64::new(1.0, 0.0);
    let a2 = alpha * alpha;
    alpha / x + 2.0 * alpha * (one - a2) / x.powi(4) + 4.0 * alpha * (one - a2) * (10.0 - 3.0 * a2) / x.powi(7)
}

/// Derivative of [`asym_series_plus`] in x.
pub fn asym_series_plus_deriv(x: f64, mu: f64) -> Complex64 {
    let alpha = Complex64::new(0.0, -0.5 * mu);
    let one = Complex64::new(1.0, 0.0);
    let a2 = alpha * alpha;
    -alpha / (x * x) - 8.0 * alpha * (one - a2) / x.powi(5) - 28.0 * alpha * (one - a2) * (10.0 - 3.0 * a2) / x.powi(8)
}

/// Coefficients `b_1..b_n` of the formal solution `p = Σ b_m x^{2−3m}` of
/// `p'' = xp − 2p³ + μ/2`.
pub fn series_coeffs(mu: f64, n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    if n == 0 {
        return Vec::new();
    }
    b[1] = -0.5 * mu;
    for m in 2..=n {
        let mf = m as f64;
        let mut cubic = 0.0;
        for i in 1..m {
            for j in 1..m {
                let l = m as isize + 1 - i as isize - j as isize;
                if l >= 1 && (l as usize) < m {
                    cubic += b[i] * b[j] * b[l as usize];
                }
            }
        }
        b[m] = (5.0 - 3.0 * mf) * (4.0 - 3.0 * mf) * b[m - 1] + 2.0 * cubic;
    }
    b.remove(0);
    b
}

/// The divergent series at +∞ summed to its smallest term.
#[derive(Debug, Clone)]
pub struct RightSeries {
    coeffs: Vec<f64>,
}

/// Value, derivative, and the magnitude of the first omitted term.
#[derive(Debug, Clone, Copy)]
pub struct SeriesValue {
    pub p: f64,
    pub dp: f64,
    pub terms: usize,
    pub tail: f64,
}

impl RightSeries {
    pub fn new(mu: f64) -> Self {
        Self { coeffs: series_coeffs(mu, 60) }
    }

    pub fn eval(&self, x: f64) -> SeriesValue {
        let mut p = 0.0;
        let mut dp = 0.0;
        let mut prev = f64::INFINITY;
        let mut terms = 0;
        let mut tail = 0.0;
        for (idx, &b) in self.coeffs.iter().enumerate() {
            if b == 0.0 {
                break;
            }
            let power = 2.0 - 3.0 * (idx + 1) as f64;
            let term = b * x.powf(power);
            if term.abs() > prev {
                tail = term.abs();
                break;
            }
            p += term;
            dp += power * term / x;
            prev = term.abs();
            terms += 1;
        }
        SeriesValue { p, dp, terms, tail }
    }
}

impl RightSeries {
    /// `∫_{x0}^{x1} p` for `x1 ≥ x0 ≥ 8`, with the truncation fixed at `x0`.
    pub fn integral(&self, x0: f64, x1: f64) -> f64 {
        let terms = self.eval(x0).terms;
        let mut acc = 0.0;
        for (idx, &b) in self.coeffs.iter().take(terms).enumerate() {
            let m = (idx + 1) as f64;
            acc += if idx == 0 {
                b * (x1 / x0).ln()
            } else {
                b * (x1.powf(3.0 - 3.0 * m) - x0.powf(3.0 - 3.0 * m)) / (3.0 - 3.0 * m)
            };
        }
        acc
    }

    /// `∫_{x0}^{∞} (p − b₁/x)`, the convergent part of the right tail.
    pub fn tail_without_log(&self, x0: f64) -> f64 {
        let terms = self.eval(x0).terms;
        self.coeffs
            .iter()
            .take(terms)
            .enumerate()
            .skip(1)
            .map(|(idx, &b)| {
                let m = (idx + 1) as f64;
                b * x0.powf(3.0 - 3.0 * m) / (3.0 * m - 3.0)
            })
            .sum()
    }
}

/// Leading oscillatory model of u at −∞:
/// `α/x + d(−x)^{−1/4} sin((2/3)(−x)^{3/2} − (3/4)d² ln(−x) + φ)`.
pub fn asym_osc_minus(x: f64, cc: &ConnectionConstants, mu: f64) -> Complex64 {
    Complex64::new(0.0, osc_minus_real(x, cc, mu))
}

/// Imaginary part of [`asym_osc_minus`], i.e. the real-form value p.
pub fn osc_minus_real(x: f64, cc: &ConnectionConstants, mu: f64) -> f64 {
    let r = -x;
    let algebraic = -0.5 * mu / x;
    if cc.is_degenerate() {
        return algebraic;
    }
    let psi = (2.0 / 3.0) * r.powf(1.5) + 0.75 * cc.d_sq_neg * r.ln() + cc.phi;
    algebraic + cc.amplitude_real * r.powf(-0.25) * psi.sin()
}
