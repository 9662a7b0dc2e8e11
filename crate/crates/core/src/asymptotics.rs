//! Large-|x| expansions of the profile `g` and of `z(t,x)` near the spiral,
//! and monitors for their remainders.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowSolution;
use crate::monodromy::{ConnectionConstants, SpiralParams};

/// Region constant `c` in `t^{1/3} ≤ c·|x|`.
pub const DEFAULT_REGION: f64 = 0.5;

/// Trigonometric factor of the oscillatory term on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oscillation {
    Cos,
    Sin,
}

impl Oscillation {
    fn apply(self, psi: f64) -> f64 {
        match self {
            Oscillation::Cos => psi.cos(),
            Oscillation::Sin => psi.sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlusCoefficients {
    pub mu: f64,
    /// `A₀, A₁, A₂`.
    pub a: [Complex64; 3],
    /// `a₂ = iμ + μ²/2`.
    pub aux2: Complex64,
    /// `a₅ = (4+μ²)(6iμ + 3μ²/2)`.
    pub aux5: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinusCoefficients {
    pub mu: f64,
    /// `B₀, B₁`; `B₂` is absent when `d = 0`.
    pub b: [Complex64; 2],
    pub b2: Option<Complex64>,
    pub d1: f64,
    pub d2: Complex64,
    pub d3: Complex64,
    pub cc: ConnectionConstants,
}

fn leading(mu: f64, theta: f64) -> Complex64 {
    Complex64::from_polar((1.0 + mu * mu).sqrt().recip(), theta)
}

/// Chain `A₁ = (iμ−1)a₂A₀`, `A₂ = (2+iμ)(μ²/4−iμ+6)A₁` from a leading coefficient.
pub fn plus_chain(mu: f64, a0: Complex64) -> PlusCoefficients {
    let i = Complex64::i();
    let aux2 = i * mu + 0.5 * mu * mu;
    let aux5 = (4.0 + mu * mu) * (6.0 * i * mu + 1.5 * mu * mu);
    let a1 = (i * mu - 1.0) * aux2 * a0;
    let a2 = (2.0 + i * mu) * (0.25 * mu * mu - i * mu + 6.0) * a1;
    PlusCoefficients { mu, a: [a0, a1, a2], aux2, aux5 }
}

pub fn coeffs_plus(params: &SpiralParams) -> PlusCoefficients {
    plus_chain(params.mu, leading(params.mu, params.theta_plus))
}

/// The right-hand coefficients of g: leading `g₊` with phase `θ̃₊`.
pub fn coeffs_plus_tilde(mu: f64, theta_tilde_plus: f64) -> PlusCoefficients {
    plus_chain(mu, leading(mu, theta_tilde_plus))
}

pub fn coeffs_minus(params: &SpiralParams, cc: &ConnectionConstants) -> MinusCoefficients {
    let mu = params.mu;
    let b0 = leading(mu, params.theta_minus);
    let b1 = 2.0 * 3f64.sqrt() * cc.d_sq() * Complex64::new(1.0, -mu) * b0;
    minus_set(mu, b0, b1, cc, b0)
}

/// The left-hand coefficients of g: `B̃₀ = g₋` with phase `θ̃₋`,
/// `B̃₁ = 2√3d²(iμ−1)B̃₀`.
pub fn coeffs_minus_tilde(mu: f64, theta_tilde_minus: f64, cc: &ConnectionConstants) -> MinusCoefficients {
    let g = leading(mu, theta_tilde_minus);
    let b1 = 2.0 * 3f64.sqrt() * cc.d_sq() * Complex64::new(-1.0, mu) * g;
    minus_set(mu, g, b1, cc, g)
}

fn minus_set(mu: f64, b0: Complex64, b1: Complex64, cc: &ConnectionConstants, g_minus: Complex64) -> MinusCoefficients {
    let q = 3f64.powf(0.25);
    let d = cc.d();
    let b2 = (!cc.is_degenerate()).then(|| -q * b1 / d);
    MinusCoefficients {
        mu,
        b: [b0, b1],
        b2,
        d1: 2.0 * cc.d_sq() / 3f64.sqrt(),
        d2: 4.0 * Complex64::i() * mu * d / q,
        d3: 2.0 * Complex64::new(1.0, -mu) * g_minus * d / q,
        cc: *cc,
    }
}

impl MinusCoefficients {
    pub fn b2(&self) -> Result<Complex64> {
        self.b2.ok_or(Error::DegenerateAmplitude)
    }
}

/// `Ψ(x) = (2/3)(−x/∛3)^{3/2} − (3/4)d² ln(−x/∛3) + φ`, `x < 0`.
pub fn phase_psi(x: f64, cc: &ConnectionConstants) -> f64 {
    crate::flow::phase_psi(cc.d_sq(), cc.phi, x)
}

pub fn in_region(t: f64, x: f64, c: f64) -> bool {
    t > 0.0 && t.cbrt() <= c * x.abs()
}

fn region(t: f64, x: f64, c: f64) -> Result<()> {
    if in_region(t, x, c) {
        Ok(())
    } else {
        Err(Error::RegionViolation { t, x })
    }
}

/// `e^{−iμ ln x}(A₀x + A₁t x^{−2} + A₂t² x^{−5})` for `x > 0`.
pub fn expansion_plus(k: &PlusCoefficients, t: f64, x: f64) -> Result<Complex64> {
    expansion_plus_in(k, t, x, DEFAULT_REGION)
}

pub fn expansion_plus_in(k: &PlusCoefficients, t: f64, x: f64, c: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(Error::RegionViolation { t, x });
    }
    region(t, x, c)?;
    let s = k.a[0] * x + k.a[1] * t * x.powi(-2) + k.a[2] * t * t * x.powi(-5);
    Ok(Complex64::from_polar(1.0, -k.mu * x.ln()) * s)
}

/// `e^{−iμ ln|x|}(B₀x + B₁t^{1/2}|x|^{−1/2} + B₂t^{3/4}|x|^{−5/4} cos Ψ(t^{−1/3}x))`
/// for `x < 0`.
pub fn expansion_minus(k: &MinusCoefficients, t: f64, x: f64) -> Result<Complex64> {
    expansion_minus_in(k, t, x, DEFAULT_REGION, Oscillation::Cos)
}

pub fn expansion_minus_in(k: &MinusCoefficients, t: f64, x: f64, c: f64, osc: Oscillation) -> Result<Complex64> {
    if x >= 0.0 {
        return Err(Error::RegionViolation { t, x });
    }
    region(t, x, c)?;
    let r = -x;
    let mut s = k.b[0] * x + k.b[1] * t.sqrt() * r.powf(-0.5);
    if let Some(b2) = k.b2 {
        let psi = phase_psi(x / t.cbrt(), &k.cc);
        s += b2 * t.powf(0.75) * r.powf(-1.25) * osc.apply(psi);
    }
    Ok(Complex64::from_polar(1.0, -k.mu * r.ln()) * s)
}

/// Three-term expansion of g on either side:
/// `Ã₀ + Ã₁x^{−3} + Ã₂x^{−6}` or `B̃₀ + B̃₁|x|^{−3/2} + B̃₂|x|^{−9/4}·trig Ψ(x)`.
pub fn g_expansion(plus: &PlusCoefficients, minus: &MinusCoefficients, x: f64, osc: Oscillation) -> Result<Complex64> {
    if x.abs() < 8.0 {
        return Err(Error::RegionViolation { t: 0.0, x });
    }
    if x > 0.0 {
        return Ok(plus.a[0] + plus.a[1] * x.powi(-3) + plus.a[2] * x.powi(-6));
    }
    let r = -x;
    let mut g = minus.b[0] + minus.b[1] * r.powf(-1.5);
    if let Some(b2) = minus.b2 {
        g += b2 * r.powf(-2.25) * osc.apply(phase_psi(x, &minus.cc));
    }
    Ok(g)
}

/// Both g expansions with the limits measured on the flow.
pub fn g_expansions(fs: &FlowSolution, cc: &ConnectionConstants) -> (PlusCoefficients, MinusCoefficients) {
    (
        coeffs_plus_tilde(fs.sol.mu, fs.theta_tilde_plus),
        coeffs_minus_tilde(fs.sol.mu, fs.theta_tilde_minus, cc),
    )
}

/// Tail constants measured on the solution, in place of the closed-form
/// connection constants. Zero amplitude for the zero solution.
pub fn fitted_constants(fs: &FlowSolution) -> ConnectionConstants {
    match &fs.sol.fit {
        Some(f) => ConnectionConstants::from_amplitude_phase(f.d_fit, f.phi_fit),
        None => ConnectionConstants::from_amplitude_phase(0.0, 0.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderRow {
    pub t: f64,
    pub x: f64,
    pub remainder: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderReport {
    pub side: Side,
    pub rows: Vec<RemainderRow>,
    pub sup: f64,
    /// Mean over times of the log-log slope of |R| against |x|.
    pub slope: f64,
    pub n_points: usize,
}

/// Where the expansion is compared against the flow.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderGrid {
    pub ts: Vec<f64>,
    /// Magnitudes of x; the sign comes from the side.
    pub xs: Vec<f64>,
    pub c_region: f64,
}

/// Bins per time level for the envelope slope.
const SLOPE_BINS: usize = 6;

/// Compare `evaluate_z` with an expansion and tabulate `|R₊|/(t³x^{−8})` or
/// `|R₋|/(t x^{−2})`. The slope is taken through the largest remainder in
/// each of a few consecutive groups of grid points, so oscillating
/// remainders are measured by their envelope.
pub fn remainder_report(
    fs: &FlowSolution,
    side: Side,
    expansion: impl Fn(f64, f64) -> Result<Complex64>,
    grid: &RemainderGrid,
) -> Result<RemainderReport> {
    let mut rows = Vec::new();
    let mut slopes = Vec::new();
    for &t in &grid.ts {
        let mut level = Vec::new();
        for &m in &grid.xs {
            let x = if side == Side::Plus { m } else { -m };
            if !in_region(t, x, grid.c_region) {
                continue;
            }
            let rem = (fs.evaluate_z(t, x)? - expansion(t, x)?).norm();
            let bound = match side {
                Side::Plus => t.powi(3) * m.powi(-8),
                Side::Minus => t * m.powi(-2),
            };
            level.push(RemainderRow { t, x, remainder: rem, ratio: rem / bound });
        }
        if let Some(s) = envelope_slope(&level) {
            slopes.push(s);
        }
        rows.extend(level);
    }
    let sup = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let slope = if slopes.is_empty() { f64::NAN } else { slopes.iter().sum::<f64>() / slopes.len() as f64 };
    Ok(RemainderReport { side, n_points: rows.len(), rows, sup, slope })
}

fn envelope_slope(rows: &[RemainderRow]) -> Option<f64> {
    if rows.len() < 2 * SLOPE_BINS {
        return None;
    }
    let chunk = rows.len() / SLOPE_BINS;
    let pts: Vec<(f64, f64)> = rows
        .chunks(chunk)
        .filter(|c| c.len() == chunk)
        .filter_map(|c| {
            let top = c.iter().map(|r| r.remainder).fold(0.0, f64::max);
            let center = c.iter().map(|r| r.x.abs().ln()).sum::<f64>() / c.len() as f64;
            (top > 0.0).then(|| (center, top.ln()))
        })
        .collect();
    (pts.len() >= 2).then(|| slope(&pts))
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// `n` points spaced evenly in `ln x` on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

impl RemainderReport {
    pub fn write_csv(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(out, "t,x,ratio")?;
        for r in &self.rows {
            writeln!(out, "{:.16e},{:.16e},{:.16e}", r.t, r.x, r.ratio)?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({ "sup": self.sup, "slope": self.slope, "n_points": self.n_points })
    }
}
