//! One-parameter shooting from the right boundary.
//!
//! At `x = R` the data are the algebraic series plus `c·Ai`. With the fitted
//! amplitude, `E(c) = exp(π d_fit²) − cosh²(πμ/2)` is a parabola
//! `((c − c*)/λ)²`, and the target `E = κ²` is met on the side
//! `sign(c − c*) = sign(κ)`. Near the vertex a single amplitude carries
//! little information about c, so the parabola is fitted by least squares
//! over a spread of probes and then solved, instead of root-finding pointwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::monodromy::{self, ConnectionConstants, MonodromyData};
use crate::pii::fit::{fit_envelope, EnvelopeFit, MODEL_TERMS};
use crate::pii::series::RightSeries;
use crate::pii::taylor::{integrate_pii, Trajectory};
use crate::quad;
use crate::special::airy_ai_large;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootConfig {
    pub r: f64,
    pub l: f64,
    pub tol: f64,
    pub window: [f64; 2],
}

impl Default for ShootConfig {
    fn default() -> Self {
        Self { r: 12.0, l: 250.0, tol: 1e-10, window: [-240.0, -100.0] }
    }
}

/// Dense real-form solution `u = ip` on `[−L, R]` with its asymptotic
/// continuations.
#[derive(Debug, Clone)]
pub struct PiiSolution {
    pub mu: f64,
    pub md: MonodromyData,
    /// None when the amplitude vanishes (μ = 0, κ = 0).
    pub cc: Option<ConnectionConstants>,
    pub shoot_param: f64,
    /// None for the zero solution.
    pub fit: Option<EnvelopeFit>,
    pub config: ShootConfig,
    pub traj: Trajectory,
    /// Number of trajectories integrated during the search.
    pub probes: usize,
    series: RightSeries,
}

fn boundary_trajectory(mu: f64, c: f64, cfg: &ShootConfig, series: &RightSeries) -> Result<Trajectory> {
    let s = series.eval(cfg.r);
    let (ai, aip) = airy_ai_large(cfg.r);
    integrate_pii(mu, s.p + c * ai, s.dp + c * aip, cfg.r, -cfg.l, cfg.tol)
}

struct Probe {
    traj: Trajectory,
    fit: Option<EnvelopeFit>,
    excess: f64,
}

fn probe(mu: f64, c: f64, cfg: &ShootConfig, series: &RightSeries) -> Result<Probe> {
    let traj = boundary_trajectory(mu, c, cfg, series)?;
    let ch = (PI * mu / 2.0).cosh();
    match fit_envelope(&traj, mu, cfg.window) {
        Ok(fit) => {
            let excess = (PI * fit.d_fit * fit.d_fit).exp() - ch * ch;
            Ok(Probe { traj, fit: Some(fit), excess })
        }
        Err(Error::DegenerateFit(_)) => Ok(Probe { traj, fit: None, excess: 1.0 - ch * ch }),
        Err(e) => Err(e),
    }
}

/// Vertex of the parabola through three equally spaced samples.
fn vertex(mu: f64, cfg: &ShootConfig, series: &RightSeries) -> Result<f64> {
    let mut v = 0.0;
    for h in [1.0, 0.5, 0.25] {
        let em = probe(mu, v - h, cfg, series)?.excess;
        let e0 = probe(mu, v, cfg, series)?.excess;
        let ep = probe(mu, v + h, cfg, series)?.excess;
        let curv = ep - 2.0 * e0 + em;
        if curv <= 0.0 {
            return Err(Error::NoConvergence { iterations: 0, mismatch: curv });
        }
        v -= 0.5 * h * (ep - em) / curv;
    }
    Ok(v)
}

/// Shoots for the Ablowitz–Segur solution with the given monodromy data.
/// Only the amplitude is matched; the phase is left free. When μ = 0 the
/// Airy coefficient is κ itself.
pub fn shoot_solution(md: &MonodromyData, cfg: &ShootConfig) -> Result<PiiSolution> {
    if cfg.r < 10.0 || cfg.l < 20.0 {
        return Err(Error::Config(format!("need R >= 10 and L >= 20, got R={} L={}", cfg.r, cfg.l)));
    }
    if cfg.window[0] < -cfg.l || cfg.window[1] > -8.0 {
        return Err(Error::Config(format!("fit window {:?} must lie in [-L, -8]", cfg.window)));
    }
    let mu = md.mu();
    let series = RightSeries::new(mu);
    let cc = match monodromy::connection_from_monodromy(md) {
        Ok(cc) => Some(cc),
        Err(Error::DegenerateAmplitude) => None,
        Err(e) => return Err(e),
    };
    let finish = |c: f64, p: Probe, probes: usize| PiiSolution {
        mu,
        md: *md,
        cc,
        shoot_param: c,
        fit: p.fit,
        config: *cfg,
        traj: p.traj,
        probes,
        series: series.clone(),
    };

    if mu == 0.0 {
        // the decaying solution is κ·Ai(x)(1 + o(1)): no search needed
        let p = probe(mu, md.kappa, cfg, &series)?;
        return Ok(finish(md.kappa, p, 1));
    }
    let v = vertex(mu, cfg, &series)?;
    let (c_star, lambda) = parabola(mu, v, md.kappa.abs(), cfg, &series)?;
    let c = c_star + md.kappa * lambda;
    let p = probe(mu, c, cfg, &series)?;
    Ok(finish(c, p, 9 + PARABOLA_SAMPLES + 1))
}

/// The solution through the boundary data with Airy coefficient `c`,
/// without any search.
pub fn solution_with_param(md: &MonodromyData, cfg: &ShootConfig, c: f64) -> Result<PiiSolution> {
    let mu = md.mu();
    let series = RightSeries::new(mu);
    let cc = match monodromy::connection_from_monodromy(md) {
        Ok(cc) => Some(cc),
        Err(Error::DegenerateAmplitude) => None,
        Err(e) => return Err(e),
    };
    let p = probe(mu, c, cfg, &series)?;
    Ok(PiiSolution { mu, md: *md, cc, shoot_param: c, fit: p.fit, config: *cfg, traj: p.traj, probes: 1, series })
}

/// Serializable summary of a solution. The dense solution is rebuilt from
/// `shoot_param` and `config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub mu: f64,
    pub alpha_im: f64,
    pub kappa: f64,
    pub shoot_param: f64,
    pub config: ShootConfig,
    pub fit: Option<EnvelopeFit>,
    pub grid: Vec<f64>,
    pub p: Vec<f64>,
    pub p_prime: Vec<f64>,
}

const PARABOLA_SAMPLES: usize = 13;

/// Least-squares fit of `exp(π d_fit²) − cosh²(πμ/2) = ((c − c*)/λ)²` on
/// samples straddling the vertex.
fn parabola(mu: f64, v: f64, kappa: f64, cfg: &ShootConfig, series: &RightSeries) -> Result<(f64, f64)> {
    let half = (1.5 * kappa).max(3.0);
    let mut normal = nalgebra::Matrix3::<f64>::zeros();
    let mut rhs = nalgebra::Vector3::<f64>::zeros();
    for j in 0..PARABOLA_SAMPLES {
        let t = half * (2.0 * j as f64 / (PARABOLA_SAMPLES - 1) as f64 - 1.0);
        let e = probe(mu, v + t, cfg, series)?.excess;
        let row = nalgebra::Vector3::new(t * t, t, 1.0);
        normal += row * row.transpose();
        rhs += row * e;
    }
    let coef = normal
        .lu()
        .solve(&rhs)
        .ok_or(Error::NoConvergence { iterations: PARABOLA_SAMPLES, mismatch: f64::NAN })?;
    if coef[0] <= 0.0 {
        return Err(Error::NoConvergence { iterations: PARABOLA_SAMPLES, mismatch: coef[0] });
    }
    Ok((v - 0.5 * coef[1] / coef[0], coef[0].sqrt().recip()))
}

impl PiiSolution {
    pub fn record(&self) -> SolutionRecord {
        SolutionRecord {
            mu: self.mu,
            alpha_im: self.md.alpha_im,
            kappa: self.md.kappa,
            shoot_param: self.shoot_param,
            config: self.config,
            fit: self.fit.clone(),
            grid: self.grid(),
            p: self.p_values(),
            p_prime: self.p_prime_values(),
        }
    }

    /// Rebuild from a record; fails if the rebuilt grid values differ.
    pub fn from_record(rec: &SolutionRecord) -> Result<Self> {
        let md = MonodromyData::from_alpha_k(rec.alpha_im, rec.kappa);
        let sol = solution_with_param(&md, &rec.config, rec.shoot_param)?;
        let grid = sol.grid();
        let same = grid.len() == rec.grid.len()
            && sol.p_values().iter().zip(&rec.p).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + b.abs()));
        if !same {
            return Err(Error::Config("solution record does not reproduce its grid".into()));
        }
        Ok(sol)
    }

    pub fn lo(&self) -> f64 {
        self.traj.lo()
    }

    pub fn hi(&self) -> f64 {
        self.traj.hi()
    }

    pub fn grid(&self) -> Vec<f64> {
        self.traj.knots()
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.grid().iter().map(|&x| self.traj.eval(x).expect("knot").0).collect()
    }

    pub fn p_prime_values(&self) -> Vec<f64> {
        self.grid().iter().map(|&x| self.traj.eval(x).expect("knot").1).collect()
    }

    /// `(p, p', p'')` on the whole line: dense output on `[−L, R]`, the
    /// right series plus the Airy mode beyond R, the fitted tail model
    /// below −L.
    pub fn eval(&self, x: f64) -> (f64, f64, f64) {
        if let Some(v) = self.traj.eval(x) {
            return v;
        }
        let (p, dp) = if x > self.hi() {
            let s = self.series.eval(x);
            let (ai, aip) = airy_ai_large(x.max(8.0));
            (s.p + self.shoot_param * ai, s.dp + self.shoot_param * aip)
        } else {
            let h = 1e-4;
            let f = |y: f64| self.left_model(y);
            let dp = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
            (f(x), dp)
        };
        (p, dp, x * p - 2.0 * p.powi(3) + 0.5 * self.mu)
    }

    fn left_model(&self, x: f64) -> f64 {
        let algebraic = -0.5 * self.mu / x;
        match &self.fit {
            Some(fit) => algebraic + fit.model(x),
            None => algebraic,
        }
    }

    /// `u(x) = i·p(x)`.
    pub fn evaluate_u(&self, x: f64) -> Complex64 {
        Complex64::new(0.0, self.eval(x).0)
    }

    /// `∫_0^x p`, defined for `x ≥ −L`.
    pub fn antiderivative(&self, x: f64) -> Result<f64> {
        let at_zero = self.traj.integral(0.0).expect("0 lies inside [-L, R]");
        if let Some(q) = self.traj.integral(x) {
            return Ok(q - at_zero);
        }
        if x > self.hi() {
            let r = self.hi();
            // the Airy mode contributes below 1e-13 beyond R
            let q_r = self.traj.integral(r).expect("R") - at_zero;
            return Ok(q_r + self.series.integral(r, x));
        }
        Err(Error::OutOfRange { x, lo: self.lo(), hi: self.hi() })
    }

    /// `∫_X^∞ (p + μ/(2x))` for `0 < X`.
    pub fn right_tail(&self, x_cut: f64) -> f64 {
        let r = self.hi();
        let start = x_cut.max(r);
        let mut acc = self.series.tail_without_log(start);
        if x_cut < r {
            let inner = self.antiderivative(r).unwrap() - self.antiderivative(x_cut).unwrap();
            acc += inner + 0.5 * self.mu * (r / x_cut).ln();
        }
        acc
    }

    /// `∫_{−∞}^{−X} (p + μ/(2x))`: the trajectory down to the middle of the
    /// fit window, then the fitted tail model integrated along vertical
    /// contours where every oscillatory term decays exponentially.
    pub fn left_tail(&self, x_cut: f64) -> f64 {
        let Some(fit) = &self.fit else {
            return 0.0;
        };
        let handoff = -0.5 * (fit.window[0] + fit.window[1]);
        if x_cut >= handoff {
            return model_tail(fit, x_cut);
        }
        let q = |x: f64| self.antiderivative(x).expect("inside the trajectory");
        let inner = q(-x_cut) - q(-handoff) - 0.5 * self.mu * (handoff / x_cut).ln();
        inner + model_tail(fit, handoff)
    }
}

/// `∫_X^∞` of the fitted model of `p + μ/(2x)` at `x = −r`.
pub fn model_tail(fit: &EnvelopeFit, x_cut: f64) -> f64 {
    let d2 = fit.d_fit * fit.d_fit;
    let mut total = 0.0;
    for (term, &coef) in MODEL_TERMS.iter().zip(&fit.coefficients) {
        let q = 0.25 + term.decay;
        if term.harmonic == 0 && !term.log {
            total += coef * x_cut.powf(1.0 - q) / (q - 1.0);
            continue;
        }
        let n = term.harmonic as f64;
        let psi = |z: Complex64| z.powf(1.5) * (2.0 / 3.0) + z.ln() * (0.75 * d2);
        let tau_max = 60.0 / (n * x_cut.sqrt());
        let integrand = |tau: f64| {
            let z = Complex64::new(x_cut, tau);
            let envelope = if term.log { z.powf(-q) * z.ln() } else { z.powf(-q) };
            envelope * (Complex64::i() * n * psi(z)).exp()
        };
        let j = Complex64::i() * quad::integrate(integrand, 0.0, tau_max, 24);
        total += coef * if term.cosine { j.re } else { j.im };
    }
    total
}
