//! `spiralflow <params|solve|evolve|figure|verify> [flags]`.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 degenerate spiral,
//! 3 solver did not converge, 4 sampling out of range, 5 failed checks,
//! 64 usage error (bad flag, config key, suite or figure name).

pub mod config;
pub mod figures;
pub mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{self, CurveSample, FlowConfig, FlowSolution};
use crate::monodromy::{self, ConnectionConstants, MonodromyData, SpiralParams};
use crate::pii::{self, PiiSolution, SolutionRecord};
use crate::validation::{self, SuiteConfig};

pub use config::{Format, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_OUT_OF_RANGE: i32 = 4;
pub const EXIT_CHECKS_FAILED: i32 = 5;
pub const EXIT_USAGE: i32 = 64;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DegenerateSpiral { .. } => EXIT_DEGENERATE,
        Error::NoConvergence { .. } | Error::BlowUp { .. } | Error::DegenerateFit(_) | Error::WindowTooShort { .. } => {
            EXIT_NO_CONVERGENCE
        }
        Error::OutOfRange { .. } | Error::GridTooShort { .. } | Error::RegionViolation { .. } => EXIT_OUT_OF_RANGE,
        Error::Config(_) | Error::UnknownSuite(_) | Error::BadTolerance(_) | Error::NonFinite(_) => EXIT_USAGE,
        _ => EXIT_OTHER,
    }
}

#[derive(Debug, Parser)]
#[command(name = "spiralflow", version, about = "Self-similar curves forming double logarithmic spirals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print monodromy data and connection constants as JSON.
    Params(ParamsArgs),
    /// Solve the transcendent and the self-similar profile.
    Solve(SolveArgs),
    /// Sample the curves z(t, ·).
    Evolve(EvolveArgs),
    /// Emit figure data.
    Figure(FigureArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ParamFlags {
    /// Angle of the x > 0 arm (radians, or forms like "3pi/4").
    #[arg(long, allow_hyphen_values = true)]
    pub theta_plus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_minus: Option<String>,
    /// Spiral pitch.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunFlags {
    /// Config file of `key = value` lines (default: $SPIRALFLOW_CONFIG).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override any config key, e.g. `--set solver.L=300`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SampleFlags {
    /// Comma-separated times.
    #[arg(long, allow_hyphen_values = true)]
    pub t_list: Option<String>,
    /// Two comma-separated bounds, e.g. "-10,10".
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Also write an SVG rendering here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamsArgs {
    #[command(flatten)]
    pub params: ParamFlags,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub run: RunFlags,
}

#[derive(Debug, Clone, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub run: RunFlags,
    #[command(flatten)]
    pub sample: SampleFlags,
    /// Solution file written by `solve`.
    #[arg(long)]
    pub solution: Option<PathBuf>,
    /// Sample the solution for t < 0 that reaches the spiral from below.
    #[arg(long)]
    pub backward: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    /// spiral, painleve or evolution.
    #[arg(long)]
    pub which: String,
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub run: RunFlags,
    #[command(flatten)]
    pub sample: SampleFlags,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub alpha_im: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 4.0)]
    pub kappa: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// monodromy, pii, flow, asymptotics or all.
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub params: ParamFlags,
    #[command(flatten)]
    pub run: RunFlags,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub sweep: Option<usize>,
}

/// Flat parameter summary printed by `params`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub mu: f64,
    pub alpha_im: f64,
    pub kappa: f64,
    pub a: f64,
    pub s1_re: f64,
    pub s1_im: f64,
    pub s3_re: f64,
    pub s3_im: f64,
    pub d_sq_neg: f64,
    pub amplitude: f64,
    /// None when the amplitude vanishes.
    pub phi: Option<f64>,
    pub degenerate_d: bool,
}

impl ParamsReport {
    /// `cc` is None when the amplitude vanishes.
    pub fn new(params: &SpiralParams, md: &MonodromyData, cc: Option<&ConnectionConstants>) -> Self {
        Self {
            theta_plus: params.theta_plus,
            theta_minus: params.theta_minus,
            mu: params.mu,
            alpha_im: md.alpha_im,
            kappa: md.kappa,
            a: md.a,
            s1_re: md.s1.re,
            s1_im: md.s1.im,
            s3_re: md.s3.re,
            s3_im: md.s3.im,
            d_sq_neg: cc.map_or(0.0, |c| c.d_sq_neg),
            amplitude: cc.map_or(0.0, |c| c.amplitude_real),
            phi: cc.map(|c| c.phi),
            degenerate_d: cc.is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowSummary {
    pub config: FlowConfig,
    pub c_re: f64,
    pub c_im: f64,
    pub theta_tilde_plus: f64,
    pub theta_tilde_minus: f64,
    pub beta: f64,
    pub phase_coherence: f64,
}

/// Document written by `solve` and read back by `evolve --solution`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutput {
    pub params: ParamsReport,
    pub flow: FlowSummary,
    pub solution: SolutionRecord,
}

impl SolveOutput {
    pub fn new(fs: &FlowSolution) -> Self {
        Self {
            params: ParamsReport::new(&fs.params, &fs.sol.md, fs.sol.cc.as_ref()),
            flow: FlowSummary {
                config: fs.config,
                c_re: fs.c_const.re,
                c_im: fs.c_const.im,
                theta_tilde_plus: fs.theta_tilde_plus,
                theta_tilde_minus: fs.theta_tilde_minus,
                beta: fs.beta,
                phase_coherence: fs.phase_coherence(),
            },
            solution: fs.sol.record(),
        }
    }

    pub fn spiral_params(&self) -> Result<SpiralParams> {
        SpiralParams::new(self.params.theta_plus, self.params.theta_minus, self.params.mu)
    }

    /// Rebuilds the flow solution this document describes.
    pub fn rebuild(&self) -> Result<FlowSolution> {
        let sol = PiiSolution::from_record(&self.solution)?;
        flow::build_flow_with(sol, &self.spiral_params()?, &self.flow.config)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Params(a) => cmd_params(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Evolve(a) => cmd_evolve(a, out),
        Command::Figure(a) => cmd_figure(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
    }
}

/// Config sources merged in order: defaults, file, `--set`, dedicated flags.
pub fn resolve_config(params: &ParamFlags, run: &RunFlags, sample: Option<&SampleFlags>) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_sources(run.config.as_deref())?;
    for kv in &run.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
        cfg.set(k.trim(), v)?;
    }
    if let Some(v) = &params.theta_plus {
        cfg.params.theta_plus = Some(v.clone());
    }
    if let Some(v) = &params.theta_minus {
        cfg.params.theta_minus = Some(v.clone());
    }
    if let Some(v) = &params.mu {
        cfg.params.mu = Some(v.clone());
    }
    if let Some(t) = run.tol {
        cfg.solver.tol = t;
    }
    if let Some(p) = &run.out {
        cfg.output.path = Some(p.clone());
    }
    if let Some(f) = run.format {
        cfg.output.format = f;
    }
    if let Some(s) = sample {
        if let Some(v) = &s.t_list {
            cfg.set("regions.t_list", v)?;
        }
        if let Some(v) = &s.x_range {
            cfg.set("regions.x_range", v)?;
        }
        if let Some(n) = s.n_points {
            cfg.regions.n_points = n;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> Result<()> {
    match &cfg.output.path {
        Some(p) => output::write_atomic(p, text.as_bytes()),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn json_text<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn cmd_params(args: &ParamsArgs, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = RunConfig::default();
    cfg.params.theta_plus = args.params.theta_plus.clone();
    cfg.params.theta_minus = args.params.theta_minus.clone();
    cfg.params.mu = args.params.mu.clone();
    let params = cfg.spiral_params()?;
    let md = monodromy::solve_k(&params);
    let cc = match monodromy::connection_constants(&params) {
        Ok(c) => Some(c),
        Err(Error::DegenerateAmplitude) => None,
        Err(e) => return Err(e),
    };
    out.write_all(json_text(&ParamsReport::new(&params, &md, cc.as_ref()))?.as_bytes())?;
    Ok(EXIT_OK)
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = resolve_config(&args.params, &args.run, None)?;
    let params = cfg.spiral_params()?;
    let fs = flow::solve_flow(&params, &cfg.shoot(), &cfg.flow())?;
    let doc = SolveOutput::new(&fs);
    if let Some(p) = &cfg.output.path {
        output::write_atomic(p, json_text(&doc)?.as_bytes())?;
    }
    let f = &doc.flow;
    writeln!(out, "kappa             {:.12}", doc.params.kappa)?;
    writeln!(out, "shoot_param       {:.12e}", doc.solution.shoot_param)?;
    if let Some(fit) = &doc.solution.fit {
        writeln!(out, "fit amplitude     {:.12}", fit.d_fit)?;
        writeln!(out, "fit phase         {:.12}", fit.phi_fit)?;
        writeln!(out, "fit rms           {:.3e}", fit.rms_residual)?;
    }
    writeln!(out, "theta_tilde_plus  {:.12}", f.theta_tilde_plus)?;
    writeln!(out, "theta_tilde_minus {:.12}", f.theta_tilde_minus)?;
    writeln!(out, "beta              {:.12}", f.beta)?;
    writeln!(out, "phase coherence   {:.3e}", f.phase_coherence)?;
    Ok(EXIT_OK)
}

fn curves_output(cfg: &RunConfig, params: &SpiralParams, samples: &[CurveSample]) -> Result<String> {
    Ok(match cfg.output.format {
        Format::Csv => figures::curves_csv(samples),
        Format::Json => {
            let curves: Vec<_> = samples.iter().map(CurveSample::to_json).collect();
            json_text(&serde_json::json!({ "params": params, "curves": curves }))?
        }
        Format::Svg => curves_svg(samples),
    })
}

fn curves_svg(samples: &[CurveSample]) -> String {
    let curves: Vec<(String, Vec<(f64, f64)>)> =
        samples.iter().map(|s| (format!("t = {}", s.t), s.zs.iter().map(|z| (z.re, z.im)).collect())).collect();
    output::svg_polylines(&curves)
}

/// Snapshots at each time followed by the spiral at `t = 0`.
pub fn evolution_samples(fs: &FlowSolution, ts: &[f64], xs: &[f64]) -> Result<Vec<CurveSample>> {
    let mut samples = ts.iter().map(|&t| fs.curve(t, xs)).collect::<Result<Vec<_>>>()?;
    samples.push(figures::spiral_sample(&fs.params, xs)?);
    Ok(samples)
}

fn write_samples(cfg: &RunConfig, params: &SpiralParams, samples: &[CurveSample], svg: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let text = curves_output(cfg, params, samples)?;
    if let Some(p) = svg {
        output::write_atomic(p, curves_svg(samples).as_bytes())?;
    }
    emit(cfg, &text, out)
}

pub fn cmd_evolve(args: &EvolveArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = resolve_config(&args.params, &args.run, Some(&args.sample))?;
    let xs = cfg.xs();
    if args.backward {
        if args.solution.is_some() {
            return Err(Error::Config("--backward solves inline; drop --solution".into()));
        }
        let params = cfg.spiral_params()?;
        let back = flow::backward_solution(&params, &cfg.shoot(), &cfg.flow())?;
        let mut samples = Vec::new();
        for &t in &cfg.regions.t_list {
            let zs = xs.iter().map(|&x| back.evaluate_z(-t, x)).collect::<Result<Vec<_>>>()?;
            samples.push(CurveSample { t: -t, xs: xs.clone(), zs });
        }
        samples.push(figures::spiral_sample(&params, &xs)?);
        write_samples(&cfg, &params, &samples, args.sample.svg.as_ref(), out)?;
        return Ok(EXIT_OK);
    }
    let fs = match &args.solution {
        Some(path) => {
            let doc: SolveOutput = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            doc.rebuild()?
        }
        None => flow::solve_flow(&cfg.spiral_params()?, &cfg.shoot(), &cfg.flow())?,
    };
    let samples = evolution_samples(&fs, &cfg.regions.t_list, &xs)?;
    write_samples(&cfg, &fs.params, &samples, args.sample.svg.as_ref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_figure(args: &FigureArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = resolve_config(&args.params, &args.run, Some(&args.sample))?;
    match args.which.as_str() {
        "spiral" => {
            let params = cfg.spiral_params()?;
            let rows = figures::spiral_rows(&params, cfg.regions.n_points)?;
            if let Some(p) = &args.sample.svg {
                let (neg, pos): (Vec<_>, Vec<_>) = rows.iter().map(|r| (r[0], (r[1], r[2]))).partition(|(x, _)| *x < 0.0);
                // both arms drawn towards the centre
                let curves = vec![
                    ("x < 0".to_string(), neg.into_iter().map(|(_, z)| z).collect()),
                    ("x > 0".to_string(), pos.into_iter().rev().map(|(_, z)| z).collect()),
                ];
                output::write_atomic(p, output::svg_polylines(&curves).as_bytes())?;
            }
            emit(&cfg, &output::csv_table("x,re_z,im_z", &rows), out)?;
        }
        "painleve" => {
            let range = match &args.sample.x_range {
                Some(_) => cfg.regions.x_range,
                None => figures::PAINLEVE_RANGE,
            };
            let rows = figures::painleve_rows(args.alpha_im, args.kappa, range, cfg.regions.n_points, &cfg.shoot())?;
            if let Some(p) = &args.sample.svg {
                let curve = vec![("Im u".to_string(), rows.iter().map(|r| (r[0], r[1])).collect())];
                output::write_atomic(p, output::svg_polylines(&curve).as_bytes())?;
            }
            emit(&cfg, &output::csv_table("x,im_u", &rows), out)?;
        }
        "evolution" => {
            let params = if cfg.params.theta_plus.is_none() && cfg.params.theta_minus.is_none() {
                let (tp, tm, mu) = figures::EVOLUTION_SET;
                SpiralParams::new(tp, tm, mu)?
            } else {
                cfg.spiral_params()?
            };
            let fs = flow::solve_flow(&params, &cfg.shoot(), &cfg.flow())?;
            let samples = evolution_samples(&fs, &cfg.regions.t_list, &cfg.xs())?;
            write_samples(&cfg, &params, &samples, args.sample.svg.as_ref(), out)?;
        }
        other => return Err(Error::Config(format!("unknown figure `{other}` (spiral, painleve, evolution)"))),
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    const SUITES: [&str; 5] = ["monodromy", "pii", "flow", "asymptotics", "all"];
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(Error::UnknownSuite(args.suite.clone()));
    }
    let cfg = resolve_config(&args.params, &args.run, None)?;
    let params = if cfg.params.theta_plus.is_none() && cfg.params.theta_minus.is_none() {
        let (tp, tm, mu) = figures::EVOLUTION_SET;
        SpiralParams::new(tp, tm, mu)?
    } else {
        cfg.spiral_params()?
    };
    let defaults = SuiteConfig::default();
    let suite = SuiteConfig {
        seed: args.seed.unwrap_or(defaults.seed),
        sweep: args.sweep.unwrap_or(defaults.sweep),
        shoot: cfg.shoot(),
        flow: cfg.flow(),
    };
    let report = validation::run_suite(&args.suite, &params, &suite)?;
    out.write_all(report.table().as_bytes())?;
    if let Some(p) = &cfg.output.path {
        output::write_atomic(p, json_text(&report)?.as_bytes())?;
    }
    if report.passed() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "{} check(s) failed", report.checks.iter().filter(|c| !c.pass).count())?;
        Ok(EXIT_CHECKS_FAILED)
    }
}

/// Solves the transcendent only, for callers that need no flow.
pub fn solve_pii(params: &SpiralParams, cfg: &RunConfig) -> Result<PiiSolution> {
    pii::shoot_solution(&monodromy::solve_k(params), &cfg.shoot())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["spiralflow"];
        full.extend_from_slice(args);
        let code = run_from(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn params_json() {
        let (code, out, _) = run(&["params", "--theta-plus", "pi/4", "--theta-minus", "3pi/4", "--mu", "1.5"]);
        assert_eq!(code, 0);
        let rep: ParamsReport = serde_json::from_str(&out).unwrap();
        assert!((rep.kappa + 5.3228).abs() < 1e-4);
        assert!(!rep.degenerate_d);
    }

    #[test]
    fn params_exit_codes() {
        assert_eq!(run(&["params", "--theta-plus", "0", "--theta-minus", "pi", "--mu", "1"]).0, EXIT_DEGENERATE);
        assert_eq!(run(&["params", "--theta-plus", "nope", "--theta-minus", "pi", "--mu", "1"]).0, EXIT_USAGE);
        assert_eq!(run(&["params", "--bogus"]).0, EXIT_USAGE);
        let (code, out, _) = run(&["params", "--theta-plus", "1", "--theta-minus", "1", "--mu", "0"]);
        assert_eq!(code, 0);
        let rep: ParamsReport = serde_json::from_str(&out).unwrap();
        assert_eq!(rep.kappa, 0.0);
        assert!(rep.degenerate_d && rep.phi.is_none());
    }

    #[test]
    fn negative_mu_is_a_value() {
        let (code, out, _) = run(&["params", "--theta-plus", "pi/4", "--theta-minus", "3pi/4", "--mu", "-6"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"mu\": -6.0"));
    }

    #[test]
    fn unknown_names_are_usage_errors() {
        assert_eq!(run(&["verify", "--suite", "bogus"]).0, EXIT_USAGE);
        assert_eq!(run(&["figure", "--which", "bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn monodromy_suite_passes() {
        let (code, out, _) = run(&["verify", "--suite", "monodromy"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn trivial_solve_and_evolve_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let sol = dir.path().join("sol.json");
        let s = sol.to_str().unwrap();
        let args = ["solve", "--mu", "0", "--theta-plus", "1", "--theta-minus", "1", "--out", s];
        assert_eq!(run(&args).0, 0);
        let first = std::fs::read(&sol).unwrap();
        assert_eq!(run(&args).0, 0);
        assert_eq!(std::fs::read(&sol).unwrap(), first);

        let (code, csv, _) = run(&["evolve", "--solution", s, "--t-list", "0.5", "--x-range", "-2,2", "--n-points", "5"]);
        assert_eq!(code, 0);
        let (_, rows) = output::parse_csv(&csv).unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            // straight line through the origin at angle 1
            assert!((r[2] - r[1] * 1f64.cos()).abs() < 1e-12 && (r[3] - r[1] * 1f64.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_outside_the_grid_is_exit_4() {
        let args = ["evolve", "--mu", "0", "--theta-plus", "1", "--theta-minus", "1", "--t-list", "1e-9", "--x-range", "-5,5"];
        assert_eq!(run(&args).0, EXIT_OUT_OF_RANGE);
    }
}
