//! Self-similar solutions of the curve flow built from a PII profile.
//!
//! With `v(x) = 2u(x/∛3)/∛3` the profile is
//! `w(x) = ∫_0^x exp(∫_0^y v) dy − C`, and the flow solution is
//! `z(t,x) = e^{iβ} t^{1/3} e^{−i(μ/3)ln t} w(x t^{−1/3})`.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles;
use crate::error::{Error, Result};
use crate::monodromy::{solve_k, SpiralParams};
use crate::pii::{shoot_solution, PiiSolution, ShootConfig};
use crate::quad;

pub const CBRT3: f64 = 1.442_249_570_307_408_3;

const PANEL_GROWTH: f64 = 1.2;
const MAX_PANEL: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    /// Half-width of the covered interval in the flow variable.
    pub extent: f64,
    /// Radius at which the limits of g are read off.
    pub x_cut: f64,
    /// Width of the first quadrature panel at 0; panels grow outward.
    pub first_panel: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self { extent: 240.0, x_cut: 200.0, first_panel: 1e-3 }
    }
}

#[derive(Debug, Clone)]
pub struct FlowSolution {
    pub sol: PiiSolution,
    pub params: SpiralParams,
    pub config: FlowConfig,
    pub c_const: Complex64,
    pub theta_tilde_plus: f64,
    pub theta_tilde_minus: f64,
    pub beta: f64,
    /// Panel boundaries, ascending, containing 0.
    knots: Vec<f64>,
    /// `∫_0^{knot} w_x` at each knot.
    cumulative: Vec<Complex64>,
}

/// `(w_x, w_xx, w_xxx)`.
#[derive(Debug, Clone, Copy)]
pub struct WDerivs {
    pub w1: Complex64,
    pub w2: Complex64,
    pub w3: Complex64,
}

fn panel_knots(extent: f64, first: f64) -> Vec<f64> {
    let mut right = vec![0.0];
    let mut h = first.min(MAX_PANEL);
    let mut x = 0.0;
    while x < extent {
        x = (x + h).min(extent);
        right.push(x);
        h = (h * PANEL_GROWTH).min(MAX_PANEL);
    }
    let mut knots: Vec<f64> = right.iter().skip(1).rev().map(|x| -x).collect();
    knots.extend(right);
    knots
}

/// Solve the spiral's PII problem with default settings and build the flow.
pub fn solve_flow(params: &SpiralParams, shoot: &ShootConfig, cfg: &FlowConfig) -> Result<FlowSolution> {
    let md = solve_k(params);
    let sol = shoot_solution(&md, shoot)?;
    build_flow_with(sol, params, cfg)
}

pub fn build_flow(sol: PiiSolution, params: &SpiralParams) -> Result<FlowSolution> {
    build_flow_with(sol, params, &FlowConfig::default())
}

pub fn build_flow_with(sol: PiiSolution, params: &SpiralParams, cfg: &FlowConfig) -> Result<FlowSolution> {
    if cfg.extent / CBRT3 > sol.config.l {
        return Err(Error::GridTooShort { needed: cfg.extent, reached: sol.config.l * CBRT3 });
    }
    if cfg.first_panel.is_nan() || cfg.first_panel <= 0.0 {
        return Err(Error::Config(format!("first panel width must be positive, got {}", cfg.first_panel)));
    }
    if cfg.x_cut > cfg.extent {
        return Err(Error::GridTooShort { needed: cfg.x_cut, reached: cfg.extent });
    }
    let mu = sol.mu;
    let (p0, dp0, _) = sol.eval(0.0);
    let c_const = Complex64::new(p0 * p0, dp0) * (2.0 * CBRT3) / Complex64::new(1.0, -mu);

    let knots = panel_knots(cfg.extent, cfg.first_panel);
    let zero = knots.iter().position(|&x| x == 0.0).expect("0 is a knot");
    let integrand = |y: f64| -> Result<Complex64> {
        let q = sol.antiderivative(y / CBRT3)?;
        Ok(Complex64::from_polar(1.0, 2.0 * q))
    };
    let mut cumulative = vec![Complex64::new(0.0, 0.0); knots.len()];
    for j in zero + 1..knots.len() {
        cumulative[j] = cumulative[j - 1] + panel(&integrand, knots[j - 1], knots[j])?;
    }
    for j in (0..zero).rev() {
        cumulative[j] = cumulative[j + 1] - panel(&integrand, knots[j], knots[j + 1])?;
    }
    if cumulative.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFinite("outer integral"));
    }

    let mut fs = FlowSolution {
        sol,
        params: *params,
        config: *cfg,
        c_const,
        theta_tilde_plus: 0.0,
        theta_tilde_minus: 0.0,
        beta: 0.0,
        knots,
        cumulative,
    };
    let (tp, tm) = fs.tilde_thetas_at(cfg.x_cut)?;
    fs.theta_tilde_plus = tp;
    fs.theta_tilde_minus = tm;
    fs.beta = angles::reduce(params.theta_minus - tm);
    Ok(fs)
}

fn panel(f: &impl Fn(f64) -> Result<Complex64>, a: f64, b: f64) -> Result<Complex64> {
    let (xs, ws) = quad::gl16();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in xs.iter().zip(ws) {
        acc += f(mid + half * x)? * (half * w);
    }
    Ok(acc)
}

/// Correction factors of g at large |x|: g(±X) ≈ g± · factor.
pub fn right_factor(mu: f64, x: f64) -> Complex64 {
    let i = Complex64::i();
    let a2 = i * mu + 0.5 * mu * mu;
    let a5 = (4.0 + mu * mu) * (6.0 * i * mu + 1.5 * mu * mu);
    let r1 = (i * mu - 1.0) * a2;
    let r2 = (0.5 * i * mu - 0.5) * (a5 + a2 * a2 * (2.0 + i * mu));
    1.0 + r1 * x.powi(-3) + r2 * x.powi(-6)
}

/// Left factor with amplitude `δ` (`d = iδ`) and phase `φ` of the PII tail,
/// at `x = −r`.
pub fn left_factor(mu: f64, delta: f64, phi: f64, r: f64) -> Complex64 {
    if delta == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let d = Complex64::new(0.0, delta);
    let d2 = -delta * delta;
    let rho1 = 2.0 * 3f64.sqrt() * d2 * Complex64::new(-1.0, mu);
    let rho2 = -(3f64.powf(0.25)) * rho1 / d;
    let psi = phase_psi(d2, phi, -r);
    1.0 + rho1 * r.powf(-1.5) + rho2 * r.powf(-2.25) * psi.sin()
}

/// `Ψ(x) = (2/3)(−x/∛3)^{3/2} − (3/4)d² ln(−x/∛3) + φ` for `x < 0`.
pub fn phase_psi(d_sq: f64, phi: f64, x: f64) -> f64 {
    let s = -x / CBRT3;
    (2.0 / 3.0) * s.powf(1.5) - 0.75 * d_sq * s.ln() + phi
}

impl FlowSolution {
    pub fn lo(&self) -> f64 {
        self.knots[0]
    }

    pub fn hi(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    fn check(&self, x: f64) -> Result<()> {
        if !(self.lo()..=self.hi()).contains(&x) {
            return Err(Error::OutOfRange { x, lo: self.lo(), hi: self.hi() });
        }
        Ok(())
    }

    /// `v(x) = 2u(x/∛3)/∛3`, as `(Im v, Im v_x)`.
    pub fn v(&self, x: f64) -> (f64, f64) {
        let (p, dp, _) = self.sol.eval(x / CBRT3);
        (2.0 * p / CBRT3, 2.0 * dp / (CBRT3 * CBRT3))
    }

    pub fn w_x(&self, x: f64) -> Result<Complex64> {
        self.check(x)?;
        Ok(Complex64::from_polar(1.0, 2.0 * self.sol.antiderivative(x / CBRT3)?))
    }

    /// Analytic derivatives: `w_xx = v w_x`, `w_xxx = (v_x + v²) w_x`.
    pub fn w_derivs(&self, x: f64) -> Result<WDerivs> {
        let w1 = self.w_x(x)?;
        let (pv, dpv) = self.v(x);
        let v = Complex64::new(0.0, pv);
        let vx = Complex64::new(0.0, dpv);
        Ok(WDerivs { w1, w2: v * w1, w3: (vx + v * v) * w1 })
    }

    pub fn compute_w(&self, x: f64) -> Result<Complex64> {
        self.check(x)?;
        let j = match self.knots.partition_point(|&k| k <= x) {
            0 => 0,
            n => (n - 1).min(self.knots.len() - 2),
        };
        let f = |y: f64| self.w_x(y);
        let part = if x == self.knots[j] { Complex64::new(0.0, 0.0) } else { panel(&f, self.knots[j], x)? };
        Ok(self.cumulative[j] + part - self.c_const)
    }

    /// `w(b) − w(a)` integrated directly, without the cumulative table.
    pub fn increment(&self, a: f64, b: f64) -> Result<Complex64> {
        self.check(a)?;
        self.check(b)?;
        let n = ((b - a).abs() / MAX_PANEL).ceil().max(1.0) as usize;
        let h = (b - a) / n as f64;
        let f = |y: f64| self.w_x(y);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            acc += panel(&f, a + j as f64 * h, a + (j + 1) as f64 * h)?;
        }
        Ok(acc)
    }

    pub fn compute_g(&self, x: f64) -> Result<Complex64> {
        if x == 0.0 {
            return Err(Error::ZeroArgument);
        }
        let w = self.compute_w(x)?;
        Ok(Complex64::from_polar(1.0, self.sol.mu * x.abs().ln()) * w / x)
    }

    /// `(δ, φ)` of the PII tail as measured on the solution.
    fn tail_constants(&self) -> (f64, f64) {
        match &self.sol.fit {
            Some(f) => (f.d_fit, f.phi_fit),
            None => (0.0, 0.0),
        }
    }

    /// Corrected limits of arg g at ±∞ read off at radius `x_cut`.
    pub fn tilde_thetas_at(&self, x_cut: f64) -> Result<(f64, f64)> {
        let reach = self.hi().min(-self.lo());
        if x_cut > reach {
            return Err(Error::GridTooShort { needed: x_cut, reached: reach });
        }
        let mu = self.sol.mu;
        let (delta, phi) = self.tail_constants();
        let plus = self.compute_g(x_cut)? / right_factor(mu, x_cut);
        let minus = self.compute_g(-x_cut)? / left_factor(mu, delta, phi, x_cut);
        Ok((angles::reduce(plus.arg()), angles::reduce(minus.arg())))
    }

    pub fn tilde_thetas(&self) -> (f64, f64) {
        (self.theta_tilde_plus, self.theta_tilde_minus)
    }

    /// Distance between `θ̃₊ − θ̃₋` and `θ₊ − θ₋` modulo 2π.
    pub fn phase_coherence(&self) -> f64 {
        angles::dist(
            self.theta_tilde_plus - self.theta_tilde_minus,
            self.params.theta_plus - self.params.theta_minus,
        )
    }

    fn frame(&self, t: f64) -> Complex64 {
        Complex64::from_polar(t.cbrt(), self.beta - self.sol.mu / 3.0 * t.ln())
    }

    pub fn evaluate_z(&self, t: f64, x: f64) -> Result<Complex64> {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::NonFinite("time must be positive"));
        }
        Ok(self.frame(t) * self.compute_w(x / t.cbrt())?)
    }

    /// `(z_x, z_xx, z_xxx)` from the analytic profile derivatives.
    pub fn z_derivs(&self, t: f64, x: f64) -> Result<WDerivs> {
        let s = t.cbrt();
        let d = self.w_derivs(x / s)?;
        let f = self.frame(t) / s;
        Ok(WDerivs { w1: f * d.w1, w2: f * d.w2 / s, w3: f * d.w3 / (s * s) })
    }

    pub fn singularity_gap(&self, t: f64, x: f64) -> Result<f64> {
        let z0 = spiral_z0(&self.params, x)?;
        Ok((self.evaluate_z(t, x)? - z0).norm() / t.cbrt())
    }

    pub fn curve(&self, t: f64, xs: &[f64]) -> Result<CurveSample> {
        let zs = xs.iter().map(|&x| self.evaluate_z(t, x)).collect::<Result<Vec<_>>>()?;
        Ok(CurveSample { t, xs: xs.to_vec(), zs })
    }
}

/// `z_0(x) = x(1+μ²)^{−1/2} e^{i(θ± − μ ln|x|)}`.
pub fn spiral_z0(params: &SpiralParams, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let theta = if x > 0.0 { params.theta_plus } else { params.theta_minus };
    let mu = params.mu;
    Ok(Complex64::from_polar(1.0, theta - mu * x.abs().ln()) * (x / (1.0 + mu * mu).sqrt()))
}

/// Solution for `t < 0` that reaches the spiral at `t = 0` from below:
/// `z₋(t,x) = −ž(−t,−x)` with `ž` built for the swapped spiral.
#[derive(Debug, Clone)]
pub struct BackwardFlow {
    pub params: SpiralParams,
    pub swapped: FlowSolution,
}

pub fn backward_solution(params: &SpiralParams, shoot: &ShootConfig, cfg: &FlowConfig) -> Result<BackwardFlow> {
    let swapped = solve_flow(&params.swapped(), shoot, cfg)?;
    Ok(BackwardFlow { params: *params, swapped })
}

impl BackwardFlow {
    pub fn evaluate_z(&self, t: f64, x: f64) -> Result<Complex64> {
        if t.is_nan() || t >= 0.0 {
            return Err(Error::NonFinite("time must be negative"));
        }
        Ok(-self.swapped.evaluate_z(-t, -x)?)
    }

    pub fn singularity_gap(&self, t: f64, x: f64) -> Result<f64> {
        let z0 = spiral_z0(&self.params, x)?;
        Ok((self.evaluate_z(t, x)? - z0).norm() / (-t).cbrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub xs: Vec<f64>,
    pub zs: Vec<Complex64>,
}

impl CurveSample {
    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        writeln!(out, "t,x,re_z,im_z")?;
        for (x, z) in self.xs.iter().zip(&self.zs) {
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", self.t, x, z.re, z.im)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "t": self.t,
            "x": self.xs,
            "re_z": self.zs.iter().map(|z| z.re).collect::<Vec<_>>(),
            "im_z": self.zs.iter().map(|z| z.im).collect::<Vec<_>>(),
        })
    }
}
