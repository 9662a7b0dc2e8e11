//! Verification batteries: the total-integral identity, residuals of the
//! ODEs and the flow, remainder orders, and seeded parameter sweeps.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::angles;
use crate::asymptotics::{self, Oscillation, RemainderGrid, Side};
use crate::error::{Error, Result};
use crate::flow::{self, BackwardFlow, FlowConfig, FlowSolution};
use crate::monodromy::{self, ConnectionConstants, SpiralParams};
use crate::pii::{self, PiiSolution, ShootConfig};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite_name: String,
    pub checks: Vec<Check>,
    /// Largest `measured / tolerance` over all checks.
    pub worst_ratio: f64,
}

impl VerificationReport {
    pub fn new(suite_name: &str) -> Self {
        Self { suite_name: suite_name.to_string(), checks: Vec::new(), worst_ratio: 0.0 }
    }

    pub fn push(&mut self, name: &str, measured: f64, tolerance: f64) {
        let pass = measured <= tolerance;
        let ratio = if measured.is_nan() { f64::INFINITY } else { measured / tolerance };
        self.worst_ratio = self.worst_ratio.max(ratio);
        self.checks.push(Check { name: name.to_string(), measured, tolerance, pass });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(&c.name, c.measured, c.tolerance);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!("suite: {}\n", self.suite_name);
        out += &format!("{:<width$}  {:>12}  {:>10}  result\n", "check", "measured", "tolerance");
        for c in &self.checks {
            let verdict = if c.pass { "pass" } else { "FAIL" };
            out += &format!("{:<width$}  {:>12.3e}  {:>10.1e}  {verdict}\n", c.name, c.measured, c.tolerance);
        }
        let n_fail = self.checks.iter().filter(|c| !c.pass).count();
        out += &format!("{} checks, {} failed, worst ratio {:.3e}\n", self.checks.len(), n_fail, self.worst_ratio);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub sweep: usize,
    pub shoot: ShootConfig,
    pub flow: FlowConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, sweep: 100, shoot: ShootConfig::default(), flow: FlowConfig::default() }
    }
}

/// Random triples with μ ∈ [−3,3] and angles in [0,2π), rejecting those
/// within 0.1 of the excluded case `|θ₊−θ₋| = π`.
pub fn random_sweep(seed: u64, n: usize) -> Vec<SpiralParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let tp = rng.gen_range(0.0..2.0 * PI);
        let tm = rng.gen_range(0.0..2.0 * PI);
        let mu = rng.gen_range(-3.0..3.0);
        if angles::dist(tp - tm, PI) < 0.1 {
            continue;
        }
        out.push(SpiralParams::new(tp, tm, mu).expect("rejection keeps parameters valid"));
    }
    out
}

/// `exp(∫ u)` over the line as a principal value: the integral over
/// `[−X, X]` plus both tails, with the `μ/(2x)` parts cancelling.
pub fn cauchy_total_integral(sol: &PiiSolution, x_cut: f64) -> Result<Complex64> {
    if x_cut > sol.config.l {
        return Err(Error::GridTooShort { needed: x_cut, reached: sol.config.l });
    }
    let inner = sol.antiderivative(x_cut)? - sol.antiderivative(-x_cut)?;
    let total = inner + sol.right_tail(x_cut) + sol.left_tail(x_cut);
    Ok(Complex64::from_polar(1.0, total))
}

/// Distance of the total integral from `e^{ia}`.
pub fn total_integral_error(sol: &PiiSolution, x_cut: f64) -> Result<f64> {
    let target = Complex64::from_polar(1.0, sol.md.a);
    Ok((cauchy_total_integral(sol, x_cut)? - target).norm())
}

/// `sup |u_x|/(1 + |x|^{1/4})` over the knots in `[−L, 0]`.
pub fn ux_growth_check(sol: &PiiSolution) -> f64 {
    sol.grid()
        .into_iter()
        .filter(|&x| x <= 0.0)
        .map(|x| sol.eval(x).1.abs() / (1.0 + x.abs().powf(0.25)))
        .fold(0.0, f64::max)
}

/// `max |u'' − xu − 2u³ + α|` at `n` evenly spaced points of `[−L, R]`.
pub fn pii_residual(sol: &PiiSolution, n: usize) -> f64 {
    let (lo, hi) = (sol.lo(), sol.hi());
    (0..n)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            let (p, _, ddp) = sol.traj.eval(x).expect("inside");
            (ddp - x * p + 2.0 * p.powi(3) - 0.5 * sol.mu).abs()
        })
        .fold(0.0, f64::max)
}

/// `|u − three-term series|·x^{10}` at the given points.
pub fn right_tail_profile(sol: &PiiSolution, xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|&x| (sol.evaluate_u(x) - pii::asym_series_plus(x, sol.mu)).norm() * x.powi(10)).collect()
}

/// Absolute changes below this are treated as rounding in `max_increase`.
const INCREASE_FLOOR: f64 = 1e-10;

/// Largest relative increase along a sequence that should not increase.
pub fn max_increase(v: &[f64]) -> f64 {
    v.windows(2)
        .map(|w| (w[1] - w[0] - INCREASE_FLOOR).max(0.0) / w[0].abs().max(INCREASE_FLOOR))
        .fold(0.0, f64::max)
}

/// Phase distances of the fit from the closed-form φ and from the
/// sign-reversed variant.
pub fn phase_errors(sol: &PiiSolution, params: &SpiralParams) -> Result<Option<(f64, f64)>> {
    let Some(fit) = &sol.fit else {
        return Ok(None);
    };
    let cc = monodromy::connection_constants(params)?;
    let reflected = monodromy::reflected_phase(params)?;
    Ok(Some((angles::dist(fit.phi_fit, cc.phi), angles::dist(fit.phi_fit, reflected))))
}

fn flow_points(fs: &FlowSolution, n: usize, margin: f64) -> Vec<f64> {
    let (lo, hi) = (fs.lo() + margin, fs.hi() - margin);
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

/// `max ||w_x| − 1|`.
pub fn arclength_defect(fs: &FlowSolution, n: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in flow_points(fs, n, 0.0) {
        worst = worst.max((fs.w_x(x)?.norm() - 1.0).abs());
    }
    Ok(worst)
}

struct Stencil {
    d1: Complex64,
    d2: Complex64,
    d3: Complex64,
}

fn stencil(f: impl Fn(f64) -> Result<Complex64>, x: f64, h: f64) -> Result<Stencil> {
    let v: Vec<Complex64> = (-3..=3).map(|k| f(x + k as f64 * h)).collect::<Result<_>>()?;
    let d1 = (v[1] - v[2] * 8.0 + v[4] * 8.0 - v[5]) / (12.0 * h);
    let d2 = (-v[1] + v[2] * 16.0 - v[3] * 30.0 + v[4] * 16.0 - v[5]) / (12.0 * h * h);
    let d3 = (v[0] - v[1] * 8.0 + v[2] * 13.0 - v[4] * 13.0 + v[5] * 8.0 - v[6]) / (8.0 * h * h * h);
    Ok(Stencil { d1, d2, d3 })
}

/// Residual of `(1−iμ)w/3 − x w_x/3 + w_xxx − (3/2)w̄_x w_xx²`, with
/// `w_xx` and `w_xxx` by centered differences of `w_x`.
pub fn ode_residual(fs: &FlowSolution, n: usize) -> Result<f64> {
    let h = 2e-3;
    let mu = fs.sol.mu;
    let mut worst: f64 = 0.0;
    for x in flow_points(fs, n, 3.0 * h) {
        let w = fs.compute_w(x)?;
        let v: Vec<Complex64> = (-2..=2).map(|k| fs.w_x(x + k as f64 * h)).collect::<Result<_>>()?;
        let w1 = v[2];
        let w2 = (v[0] - v[1] * 8.0 + v[3] * 8.0 - v[4]) / (12.0 * h);
        let w3 = (-v[0] + v[1] * 16.0 - v[2] * 30.0 + v[3] * 16.0 - v[4]) / (12.0 * h * h);
        let r = Complex64::new(1.0, -mu) * w / 3.0 - x * w1 / 3.0 + w3 - 1.5 * w1.conj() * w2 * w2;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Residual of `(iμ−1)w/3 + x w_x/3 − (v_x − v²/2)w_x`.
pub fn first_integral_residual(fs: &FlowSolution, n: usize) -> Result<f64> {
    let mu = fs.sol.mu;
    let mut worst: f64 = 0.0;
    for x in flow_points(fs, n, 0.0) {
        let w = fs.compute_w(x)?;
        let wx = fs.w_x(x)?;
        let (v, vx) = fs.v(x);
        let v = Complex64::new(0.0, v);
        let r = Complex64::new(-1.0, mu) * w / 3.0 + x * wx / 3.0 - (Complex64::new(0.0, vx) - v * v / 2.0) * wx;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Largest of `|z_t + z_xxx − (3/2)z̄_x z_xx²| / max(1, |z_xxx|)` and
/// `||z_x| − 1|` over a space-time grid, by finite differences.
pub fn pde_residual(fs: &FlowSolution, ts: &[f64], xs: &[f64]) -> Result<(f64, f64)> {
    let h = 1e-2;
    let mut worst: f64 = 0.0;
    let mut speed: f64 = 0.0;
    for &t in ts {
        let dt = 1e-4 * t;
        for &x in xs {
            let s = stencil(|y| fs.evaluate_z(t, y), x, h)?;
            let zt = (fs.evaluate_z(t + dt, x)? - fs.evaluate_z(t - dt, x)?) / (2.0 * dt);
            let r = zt + s.d3 - 1.5 * s.d1.conj() * s.d2 * s.d2;
            worst = worst.max(r.norm() / s.d3.norm().max(1.0));
            speed = speed.max((s.d1.norm() - 1.0).abs());
        }
    }
    Ok((worst, speed))
}

/// `sup_x |z(t,x) − z₀(x)|/t^{1/3}` for each `t`, each sup refined around
/// the best grid point by golden-section search.
pub fn gap_sups(gap: impl Fn(f64, f64) -> Result<f64>, ts: &[f64], x_max: f64, n: usize) -> Result<Vec<f64>> {
    let mut sups = Vec::with_capacity(ts.len());
    for &t in ts {
        let xs: Vec<f64> = (0..n).map(|i| -x_max + 2.0 * x_max * (i as f64 + 0.5) / n as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| gap(t, x)).collect::<Result<_>>()?;
        let (k, _) = vals.iter().enumerate().fold((0, f64::MIN), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
        let step = 2.0 * x_max / n as f64;
        let (mut a, mut b) = (xs[k] - step, xs[k] + step);
        if a < 0.0 && b > 0.0 {
            // keep away from the excluded point
            if xs[k] < 0.0 { b = -1e-9 } else { a = 1e-9 }
        }
        a = a.max(-x_max);
        b = b.min(x_max);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut best = vals[k];
        for _ in 0..60 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            let (fc, fd) = (gap(t, c)?, gap(t, d)?);
            best = best.max(fc).max(fd);
            if fc > fd { b = d } else { a = c }
        }
        sups.push(best);
    }
    Ok(sups)
}

/// Report of `|R₊|` against `e^{iβ}Ã_k` and `|R₋|` against the expansion
/// with the given oscillation and constants, on `t = 1`, `|x| ∈ [12, 60]`.
pub fn remainder_slopes(
    fs: &FlowSolution,
    cc: &ConnectionConstants,
    osc: Oscillation,
) -> Result<(asymptotics::RemainderReport, asymptotics::RemainderReport)> {
    let grid = RemainderGrid { ts: vec![1.0], xs: asymptotics::log_grid(12.0, 60.0, 240), c_region: asymptotics::DEFAULT_REGION };
    let mu = fs.sol.mu;
    let a0 = Complex64::from_polar((1.0 + mu * mu).sqrt().recip(), fs.beta + fs.theta_tilde_plus);
    let plus = asymptotics::plus_chain(mu, a0);
    let minus = asymptotics::coeffs_minus(&fs.params, cc);
    let rp = asymptotics::remainder_report(fs, Side::Plus, |t, x| asymptotics::expansion_plus(&plus, t, x), &grid)?;
    let rm = asymptotics::remainder_report(
        fs,
        Side::Minus,
        |t, x| asymptotics::expansion_minus_in(&minus, t, x, grid.c_region, osc),
        &grid,
    )?;
    Ok((rp, rm))
}

/// Slope mismatch: `|slope − target|`, or only the shortfall
/// `max(0, slope − target)` at μ = 0 where faster decay is allowed.
fn slope_mismatch(slope: f64, target: f64, one_sided: bool) -> f64 {
    if one_sided {
        (slope - target).max(0.0)
    } else {
        (slope - target).abs()
    }
}

fn monodromy_suite(params: &SpiralParams, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("monodromy");
    let mut sweep = random_sweep(cfg.seed, cfg.sweep);
    sweep.push(*params);
    let (mut stokes, mut map, mut d2, mut phi): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for p in &sweep {
        let md = monodromy::solve_k(p);
        stokes = stokes.max(md.constraint_residual());
        map = map.max(md.parameter_map_residual());
        if let (Ok(a), Ok(b)) = (monodromy::connection_from_monodromy(&md), monodromy::connection_from_spiral(p)) {
            d2 = d2.max((a.d_sq_neg - b.d_sq_neg).abs());
            phi = phi.max(angles::dist(a.phi, b.phi));
        }
    }
    rep.push("stokes constraint residual", stokes, 1e-14);
    rep.push("parameter map residual", map, 1e-12);
    rep.push("connection routes: d^2", d2, 1e-12);
    rep.push("connection routes: phi", phi, 1e-10);
    Ok(rep)
}

fn pii_suite(params: &SpiralParams, sol: &PiiSolution) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("pii");
    rep.push("PII residual (1000 points)", pii_residual(sol, 1000), 1e-8);
    let xs: Vec<f64> = (0..=10).map(|i| 10.0 + 0.2 * i as f64).collect();
    let tail = right_tail_profile(sol, &xs);
    rep.push("right tail |u - series| x^10 bounded", tail.iter().cloned().fold(0.0, f64::max), 1e6);
    rep.push("right tail |u - series| x^10 non-increasing", max_increase(&tail), 1e-9);
    let e20 = total_integral_error(sol, 20.0)?;
    let e35 = total_integral_error(sol, 35.0)?;
    rep.push("total integral at X=35", e35, 1e-3);
    rep.push("total integral converges (X=20 -> 35)", (e35 - e20).max(0.0), 1e-9);
    rep.push("|u_x|/(1+|x|^1/4) bounded", ux_growth_check(sol), 10.0);
    if let Some(fit) = &sol.fit {
        let md = monodromy::solve_k(params);
        rep.push("tail amplitude |d_fit - |d||", (fit.d_fit - monodromy::amplitude(&md)).abs(), 1e-4);
        if let Some((printed, reflected)) = phase_errors(sol, params)? {
            rep.push("tail phase vs closed form", printed, 1e-2);
            rep.push("tail phase vs sign-reversed closed form", reflected, 1e-2);
        }
    }
    Ok(rep)
}

fn flow_suite(fs: &FlowSolution, backward: &BackwardFlow) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("flow");
    rep.push("| |w_x| - 1 |", arclength_defect(fs, 1000)?, 1e-9);
    rep.push("self-similar ODE residual", ode_residual(fs, 400)?, 1e-6);
    rep.push("first integral residual", first_integral_residual(fs, 400)?, 1e-7);
    let ts: Vec<f64> = (0..10).map(|i| 0.2 + 0.24 * i as f64).collect();
    let xs: Vec<f64> = (0..40).map(|i| -6.0 + 12.0 * (i as f64 + 0.5) / 40.0).collect();
    let (pde, speed) = pde_residual(fs, &ts, &xs)?;
    rep.push("PDE residual (relative)", pde, 1e-4);
    rep.push("| |z_x| - 1 |", speed, 1e-6);
    rep.push("phase coherence", fs.phase_coherence(), 1e-4);
    let (_, a) = fs.tilde_thetas_at(fs.config.x_cut - 5.0)?;
    rep.push("theta-tilde-minus cut stability", angles::dist(a, fs.theta_tilde_minus), 1e-4);
    let times = [1.0, 0.3, 0.1, 0.03, 0.01];
    let sups = gap_sups(|t, x| fs.singularity_gap(t, x), &times, 20.0, 400)?;
    rep.push("gap sup finite", sups.iter().cloned().fold(0.0, f64::max), 1e6);
    rep.push("gap sup non-increasing as t -> 0", max_increase(&sups), 1e-6);
    let mut reflection: f64 = 0.0;
    for i in 0..100 {
        let x = -5.0 + 10.0 * (i as f64 + 0.5) / 100.0;
        let a = flow::spiral_z0(&backward.params.swapped(), -x)?;
        let b = flow::spiral_z0(&backward.params, x)?;
        reflection = reflection.max((a + b).norm());
    }
    rep.push("swapped spiral reflection", reflection, 1e-14);
    let back: Vec<f64> = times.iter().map(|t| -t).collect();
    let sups = gap_sups(|t, x| backward.singularity_gap(t, x), &back, 20.0, 200)?;
    rep.push("backward gap sup finite", sups.iter().cloned().fold(0.0, f64::max), 1e6);
    Ok(rep)
}

fn asymptotics_suite(fs: &FlowSolution) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("asymptotics");
    let params = &fs.params;
    let mu = params.mu;
    let plus = asymptotics::coeffs_plus(params);
    let i = Complex64::i();
    let chain = (plus.a[1] - (i * mu - 1.0) * (i * mu + 0.5 * mu * mu) * plus.a[0]).norm()
        + (plus.a[2] - (2.0 + i * mu) * (0.25 * mu * mu - i * mu + 6.0) * plus.a[1]).norm();
    rep.push("A-chain identities", chain, 1e-12);
    rep.push("|A0| - (1+mu^2)^-1/2", (plus.a[0].norm() - (1.0 + mu * mu).sqrt().recip()).abs(), 1e-15);
    let fitted = asymptotics::fitted_constants(fs);
    let trivial = fs.sol.fit.is_none();
    if trivial {
        let (rp, rm) = remainder_slopes(fs, &fitted, Oscillation::Cos)?;
        rep.push("S+ remainder sup", rp.rows.iter().map(|r| r.remainder).fold(0.0, f64::max), 1e-12);
        rep.push("S- remainder sup", rm.rows.iter().map(|r| r.remainder).fold(0.0, f64::max), 1e-12);
        return Ok(rep);
    }
    let closed = monodromy::connection_constants(params)?;
    let minus = asymptotics::coeffs_minus(params, &closed);
    let tilde = asymptotics::coeffs_minus_tilde(mu, fs.theta_tilde_minus, &closed);
    let e = Complex64::from_polar(1.0, fs.beta);
    let recon = (e * tilde.b[0] - minus.b[0]).norm()
        + (e * tilde.b[1] + minus.b[1]).norm()
        + (e * tilde.b2()? + minus.b2()?).norm();
    rep.push("tilde reconciliation (B)", recon, 1e-12);
    let one_sided = mu == 0.0;
    let (rp, rm) = remainder_slopes(fs, &closed, Oscillation::Cos)?;
    if one_sided {
        // no algebraic correction terms: the remainder sits at rounding level
        let sup = rp.rows.iter().map(|r| r.remainder).fold(0.0, f64::max);
        rep.push("S+ remainder sup (mu = 0)", sup, 1e-8);
    } else {
        rep.push("S+ remainder slope vs -8", (rp.slope + 8.0).abs(), 0.5);
    }
    rep.push("S- remainder slope vs -2 (closed-form expansion)", slope_mismatch(rm.slope, -2.0, one_sided), 0.5);
    let (_, rs) = remainder_slopes(fs, &fitted, Oscillation::Sin)?;
    rep.push("S- remainder slope vs -2 (sine term, measured phase)", slope_mismatch(rs.slope, -2.0, one_sided), 0.5);
    Ok(rep)
}

/// Run the named battery on one parameter set. Suites that need the
/// solution solve it once with the configured settings.
pub fn run_suite(name: &str, params: &SpiralParams, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let needs_flow = matches!(name, "flow" | "asymptotics" | "all");
    match name {
        "monodromy" => return monodromy_suite(params, cfg),
        "pii" => {
            let sol = pii::shoot_solution(&monodromy::solve_k(params), &cfg.shoot)?;
            return pii_suite(params, &sol);
        }
        _ if needs_flow => {}
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    let fs = flow::solve_flow(params, &cfg.shoot, &cfg.flow)?;
    match name {
        "asymptotics" => asymptotics_suite(&fs),
        "flow" => {
            let back = flow::backward_solution(params, &cfg.shoot, &cfg.flow)?;
            flow_suite(&fs, &back)
        }
        _ => {
            let mut rep = VerificationReport::new("all");
            rep.extend(monodromy_suite(params, cfg)?);
            rep.extend(pii_suite(params, &fs.sol)?);
            let back = flow::backward_solution(params, &cfg.shoot, &cfg.flow)?;
            rep.extend(flow_suite(&fs, &back)?);
            rep.extend(asymptotics_suite(&fs)?);
            Ok(rep)
        }
    }
}
