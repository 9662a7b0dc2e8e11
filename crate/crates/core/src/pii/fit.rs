//! Amplitude and phase of the oscillatory tail by linear least squares.
//!
//! The algebraic part `−μ/(2x)` is removed and the remainder rescaled by
//! `(−x)^{1/4}`. The model is `A sin Ψ` with
//! `Ψ = (2/3)(−x)^{3/2} + (3/4)A² ln(−x) + φ`, plus nuisance columns for
//! the next corrections: `(−x)^{−3/2}` at frequencies Ψ and 3Ψ, and
//! `(−x)^{−9/4}` at frequencies 0 and 2Ψ. Since A enters Ψ, the fit is
//! repeated until A is self-consistent.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::angles;
use crate::error::{Error, Result};
use crate::pii::taylor::Trajectory;

const SAMPLES: usize = 2400;
const MIN_PERIODS: f64 = 5.0;
const MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeFit {
    pub d_fit: f64,
    pub phi_fit: f64,
    pub window: [f64; 2],
    /// Root-mean-square residual relative to `d_fit`.
    pub rms_residual: f64,
    /// All model coefficients, in the column order of [`MODEL_TERMS`].
    pub coefficients: Vec<f64>,
}

/// Number of oscillation periods of the leading phase inside the window.
pub fn periods_in(window: [f64; 2]) -> f64 {
    let lead = |x: f64| (2.0 / 3.0) * (-x).powf(1.5);
    (lead(window[0]) - lead(window[1])) / TAU
}

pub fn fit_envelope(traj: &Trajectory, mu: f64, window: [f64; 2]) -> Result<EnvelopeFit> {
    if window[0] < traj.lo() || window[1] > traj.hi() {
        return Err(Error::OutOfRange { x: window[0], lo: traj.lo(), hi: traj.hi() });
    }
    fit_function(|x| traj.eval(x).map_or(f64::NAN, |v| v.0), mu, window)
}

/// Fits any real-form profile sampled through `p`.
pub fn fit_function(p: impl Fn(f64) -> f64, mu: f64, window: [f64; 2]) -> Result<EnvelopeFit> {
    let [lo, hi] = window;
    if !(lo < hi && hi < 0.0) {
        return Err(Error::WindowTooShort { lo, hi, periods: 0.0 });
    }
    let periods = periods_in(window);
    if periods < MIN_PERIODS {
        return Err(Error::WindowTooShort { lo, hi, periods });
    }
    let mut xs = Vec::with_capacity(SAMPLES);
    let mut ys = Vec::with_capacity(SAMPLES);
    for i in 0..SAMPLES {
        let x = lo + (hi - lo) * (i as f64 + 0.5) / SAMPLES as f64;
        let y = (p(x) + 0.5 * mu / x) * (-x).powf(0.25);
        if !y.is_finite() {
            return Err(Error::NonFinite("profile inside fit window"));
        }
        xs.push(x);
        ys.push(y);
    }
    let rhs = DVector::from_vec(ys);

    // y ≈ A sin Ψ, so the mean square of y seeds A
    let mut amp = (2.0 * rhs.norm_squared() / SAMPLES as f64).sqrt();
    let mut last = None;
    for _ in 0..MAX_SWEEPS {
        let (coef, resid) = solve(&xs, &rhs, amp)?;
        let new_amp = coef[0].hypot(coef[1]);
        if new_amp < 1e-10 {
            return Err(Error::DegenerateFit(new_amp));
        }
        let converged = (new_amp - amp).abs() <= 1e-14 * new_amp;
        amp = new_amp;
        last = Some((coef, resid));
        if converged {
            break;
        }
    }
    let (coef, resid) = last.expect("at least one sweep");
    let phi = coef[1].atan2(coef[0]);
    Ok(EnvelopeFit {
        d_fit: amp,
        phi_fit: angles::reduce(phi),
        window,
        rms_residual: resid / amp,
        coefficients: coef.iter().copied().collect(),
    })
}

/// One column of the envelope model: `(−x)^{−decay}·trig(harmonic·Ψ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelTerm {
    pub decay: f64,
    pub harmonic: u32,
    pub cosine: bool,
    pub log: bool,
}

impl ModelTerm {
    const fn new(decay: f64, harmonic: u32, cosine: bool) -> Self {
        Self { decay, harmonic, cosine, log: false }
    }

    const fn with_log(decay: f64, harmonic: u32, cosine: bool) -> Self {
        Self { decay, harmonic, cosine, log: true }
    }

    pub fn eval(&self, r: f64, psi: f64) -> f64 {
        let arg = self.harmonic as f64 * psi;
        let trig = if self.cosine { arg.cos() } else { arg.sin() };
        let envelope = r.powf(-self.decay);
        if self.log {
            envelope * r.ln() * trig
        } else {
            envelope * trig
        }
    }
}

pub const MODEL_TERMS: [ModelTerm; 11] = [
    ModelTerm::new(0.0, 1, false),
    ModelTerm::new(0.0, 1, true),
    ModelTerm::new(1.5, 1, false),
    ModelTerm::new(1.5, 1, true),
    ModelTerm::new(1.5, 3, false),
    ModelTerm::new(1.5, 3, true),
    ModelTerm::new(2.25, 0, true),
    ModelTerm::new(2.25, 2, false),
    ModelTerm::new(2.25, 2, true),
    ModelTerm::with_log(1.5, 1, false),
    ModelTerm::with_log(1.5, 1, true),
];

impl EnvelopeFit {
    /// Unwrapped model phase without φ: `(2/3)r^{3/2} + (3/4)d² ln r`.
    pub fn base_phase(&self, r: f64) -> f64 {
        (2.0 / 3.0) * r.powf(1.5) + 0.75 * self.d_fit * self.d_fit * r.ln()
    }

    /// Fitted model of `p + μ/(2x)` at `x < 0`.
    pub fn model(&self, x: f64) -> f64 {
        let r = -x;
        let psi = self.base_phase(r);
        let y: f64 = MODEL_TERMS.iter().zip(&self.coefficients).map(|(t, c)| c * t.eval(r, psi)).sum();
        y * r.powf(-0.25)
    }
}

fn solve(xs: &[f64], rhs: &DVector<f64>, amp: f64) -> Result<(DVector<f64>, f64)> {
    let n = xs.len();
    let mut m = DMatrix::<f64>::zeros(n, MODEL_TERMS.len());
    for (i, &x) in xs.iter().enumerate() {
        let r = -x;
        let psi = (2.0 / 3.0) * r.powf(1.5) + 0.75 * amp * amp * r.ln();
        for (j, term) in MODEL_TERMS.iter().enumerate() {
            m[(i, j)] = term.eval(r, psi);
        }
    }
    let qr = m.clone().qr();
    let qtb = qr.q().transpose() * rhs;
    let coef = qr.r().solve_upper_triangular(&qtb).ok_or(Error::DegenerateFit(0.0))?;
    let resid = (&m * &coef - rhs).norm() / (n as f64).sqrt();
    Ok((coef, resid))
}
