//! Spiral parameters, the Painlevé II monodromy data they select, and the
//! closed-form connection constants of the oscillatory tail.
//!
//! Purely imaginary scalars (α, k, d) are carried by their imaginary parts.
//! With α = iα_im, k = iκ, the real reduction u = ip turns every formula
//! here into real arithmetic; complex values only appear at the API edge.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use crate::angles;
use crate::error::{Error, Result};
use crate::special::arg_gamma;

const DEGENERACY_GUARD: f64 = 1e-12;

/// Singularity data of the double spiral: arm angles and pitch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralParams {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub mu: f64,
}

/// Reduces the angles into `[0, 2π)` and rejects the straight-line case
/// `|θ₊ − θ₋| = π`.
pub fn normalize_spiral_params(theta_plus: f64, theta_minus: f64, mu: f64) -> Result<SpiralParams> {
    if !theta_plus.is_finite() {
        return Err(Error::NonFinite("theta_plus"));
    }
    if !theta_minus.is_finite() {
        return Err(Error::NonFinite("theta_minus"));
    }
    if !mu.is_finite() {
        return Err(Error::NonFinite("mu"));
    }
    let tp = angles::reduce(theta_plus);
    let tm = angles::reduce(theta_minus);
    if ((tp - tm).abs() - PI).abs() < DEGENERACY_GUARD {
        return Err(Error::DegenerateSpiral { theta_plus: tp, theta_minus: tm });
    }
    Ok(SpiralParams { theta_plus: tp, theta_minus: tm, mu })
}

impl SpiralParams {
    pub fn new(theta_plus: f64, theta_minus: f64, mu: f64) -> Result<Self> {
        normalize_spiral_params(theta_plus, theta_minus, mu)
    }

    /// Parameters of the mirrored spiral with the arms exchanged.
    pub fn swapped(&self) -> Self {
        Self { theta_plus: self.theta_minus, theta_minus: self.theta_plus, mu: self.mu }
    }

    /// Imaginary part of α = −iμ/2.
    pub fn alpha_im(&self) -> f64 {
        -0.5 * self.mu
    }

    /// True when the spiral is a single straight line through the origin
    /// traversed at unit speed: θ₊ = θ₋ and μ = 0. The Painlevé profile is
    /// then identically zero.
    pub fn is_trivial(&self) -> bool {
        self.mu == 0.0 && half_angle(self) == 0.0
    }
}

/// Half-angle `a ∈ (−π/2, π/2)` with `e^{2ia} = e^{i(θ₊−θ₋)}`.
pub fn half_angle(params: &SpiralParams) -> f64 {
    let delta = params.theta_plus - params.theta_minus;
    if delta < -PI {
        (delta + TAU) / 2.0
    } else if delta > PI {
        (delta - TAU) / 2.0
    } else {
        delta / 2.0
    }
}

/// Monodromy data of the purely imaginary Ablowitz–Segur transcendent with
/// `s₂ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonodromyData {
    /// α = i·alpha_im
    pub alpha_im: f64,
    /// k = i·kappa
    pub kappa: f64,
    /// half-angle a
    pub a: f64,
    pub s1: Complex64,
    pub s2: Complex64,
    pub s3: Complex64,
}

impl MonodromyData {
    /// Builds monodromy data directly from (α, k) given by imaginary parts.
    /// The half-angle is recovered from the total-integral identity.
    pub fn from_alpha_k(alpha_im: f64, kappa: f64) -> Self {
        let (s1, s2, s3) = stokes_multipliers(alpha_im, kappa);
        let a = (kappa / (PI * alpha_im).cosh()).atan();
        Self { alpha_im, kappa, a, s1, s2, s3 }
    }

    pub fn mu(&self) -> f64 {
        -2.0 * self.alpha_im
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::new(0.0, self.alpha_im)
    }

    pub fn k(&self) -> Complex64 {
        Complex64::new(0.0, self.kappa)
    }

    /// `|s₁ − s₂ + s₃ + s₁s₂s₃ + 2 sin(πα)|`.
    pub fn constraint_residual(&self) -> f64 {
        let sin_pi_alpha = (self.alpha() * PI).sin();
        (self.s1 - self.s2 + self.s3 + self.s1 * self.s2 * self.s3 + 2.0 * sin_pi_alpha).norm()
    }

    /// `|(cosh(πμ/2) + k)/√(cosh²(πμ/2) − k²) − e^{ia}|`, the residual of the
    /// parameter map with the positive real square root.
    pub fn parameter_map_residual(&self) -> f64 {
        let ch = Complex64::new((PI * self.alpha_im).cosh(), 0.0);
        let k = self.k();
        let root = (ch * ch - k * k).sqrt();
        ((ch + k) / root - Complex64::from_polar(1.0, self.a)).norm()
    }
}

/// κ = cosh(πμ/2)·tan(a): the argument of `(cosh + iκ)/√(cosh² + κ²)` is
/// `atan(κ / cosh)` and its modulus is one.
pub fn solve_k(params: &SpiralParams) -> MonodromyData {
    let a = half_angle(params);
    let alpha_im = params.alpha_im();
    let kappa = (PI * params.mu / 2.0).cosh() * a.tan();
    let (s1, s2, s3) = stokes_multipliers(alpha_im, kappa);
    MonodromyData { alpha_im, kappa, a, s1, s2, s3 }
}

/// `s₁ = −sin(πα) − ik`, `s₂ = 0`, `s₃ = −sin(πα) + ik` for α = iα_im,
/// k = iκ. Here `sin(πα) = i sinh(πα_im)`.
pub fn stokes_multipliers(alpha_im: f64, kappa: f64) -> (Complex64, Complex64, Complex64) {
    let sh = (PI * alpha_im).sinh();
    let s1 = Complex64::new(kappa, -sh);
    let s3 = Complex64::new(-kappa, -sh);
    (s1, Complex64::new(0.0, 0.0), s3)
}

/// Amplitude and phase of the oscillatory tail as x → −∞.
///
/// `d = i·amplitude_real` and `d² = −d_sq_neg`. The real-form solution
/// `p = −iu` oscillates like `amplitude_real·(−x)^{−1/4} sin(Ψ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionConstants {
    pub d_sq_neg: f64,
    /// Phase in `[0, 2π)`; NaN when the amplitude vanishes.
    pub phi: f64,
    pub amplitude_real: f64,
}

impl ConnectionConstants {
    pub fn d_sq(&self) -> f64 {
        -self.d_sq_neg
    }

    pub fn d(&self) -> Complex64 {
        Complex64::new(0.0, self.amplitude_real)
    }

    pub fn is_degenerate(&self) -> bool {
        self.amplitude_real == 0.0
    }

    /// Constants with a given real amplitude and phase, e.g. taken from an
    /// envelope fit.
    pub fn from_amplitude_phase(amplitude_real: f64, phi: f64) -> Self {
        Self {
            d_sq_neg: amplitude_real * amplitude_real,
            phi: angles::reduce(phi),
            amplitude_real,
        }
    }
}

/// `−(3/2)d² ln 2 + arg Γ(i d²/2) − π/4`, the part of the phase that
/// depends on the amplitude only.
fn phase_core(d_sq: f64) -> Result<f64> {
    let ag = arg_gamma(Complex64::new(0.0, 0.5 * d_sq))?;
    Ok(-1.5 * d_sq * 2f64.ln() + ag - FRAC_PI_4)
}

/// Connection constants from (α, k):
///   d² = −(1/π) ln(cosh²(iπα) + |k|²),
///   φ = −(3/2)d² ln 2 + arg Γ(i d²/2) − π/4 + arg(i sinh(iπα) − ik).
pub fn connection_from_monodromy(md: &MonodromyData) -> Result<ConnectionConstants> {
    let ch = (PI * md.alpha_im).cosh();
    let d_sq_neg = (ch * ch + md.kappa * md.kappa).ln() / PI;
    if d_sq_neg <= 0.0 {
        return Err(Error::DegenerateAmplitude);
    }
    // i sinh(iπα) − ik with α = iα_im, k = iκ: (κ, −sinh(πα_im))
    let tail_arg = (-(PI * md.alpha_im).sinh()).atan2(md.kappa);
    let phi = phase_core(-d_sq_neg)? + tail_arg;
    Ok(ConnectionConstants {
        d_sq_neg,
        phi: angles::reduce(phi),
        amplitude_real: d_sq_neg.sqrt(),
    })
}

/// Connection constants written in the spiral parameters:
///   d² = −(1/π)[ln(1 + tan²((θ₊−θ₋)/2)) + 2 ln cosh(πμ/2)],
///   φ = −(3/2)d² ln 2 + arg Γ(i d²/2) − π/4 + arctan(tanh(πμ/2) / tan((θ₊−θ₋)/2)).
///
/// The last arctangent is evaluated in its two-argument form
/// `atan2(tanh(πμ/2), tan((θ₊−θ₋)/2))` so that the quadrant follows the
/// sign of κ.
pub fn connection_from_spiral(params: &SpiralParams) -> Result<ConnectionConstants> {
    let half = (params.theta_plus - params.theta_minus) / 2.0;
    let t = half.tan();
    let x = PI * params.mu / 2.0;
    // ln cosh(x) without overflow for large |x|
    let ln_cosh = x.abs() + (-2.0 * x.abs()).exp().ln_1p() - 2f64.ln();
    let d_sq_neg = ((t * t).ln_1p() + 2.0 * ln_cosh) / PI;
    if d_sq_neg <= 0.0 {
        return Err(Error::DegenerateAmplitude);
    }
    let phi = phase_core(-d_sq_neg)? + x.tanh().atan2(t);
    Ok(ConnectionConstants {
        d_sq_neg,
        phi: angles::reduce(phi),
        amplitude_real: d_sq_neg.sqrt(),
    })
}

/// Phase with the sign of the `sinh(πμ/2)` term reversed. This is the
/// phase actually realized by the solution whose total integral is `e^{ia}`;
/// it coincides with the printed formula when μ = 0.
pub fn reflected_phase(params: &SpiralParams) -> Result<f64> {
    let md = solve_k(params);
    let cc = connection_from_monodromy(&md)?;
    let tail = (-(PI * md.alpha_im).sinh()).atan2(md.kappa);
    Ok(angles::reduce(cc.phi - 2.0 * tail))
}

/// Both parameterizations of the connection constants, for callers that
/// only need the value: the (α, k) route is used.
pub fn connection_constants(params: &SpiralParams) -> Result<ConnectionConstants> {
    connection_from_monodromy(&solve_k(params))
}

/// Amplitude only; zero in the degenerate case instead of an error.
pub fn amplitude(md: &MonodromyData) -> f64 {
    let ch = (PI * md.alpha_im).cosh();
    ((ch * ch + md.kappa * md.kappa).ln() / PI).max(0.0).sqrt()
}

/// Minimal amplitude over the family at fixed μ, attained at k = 0.
pub fn minimal_amplitude(mu: f64) -> f64 {
    amplitude(&MonodromyData::from_alpha_k(-0.5 * mu, 0.0))
}
