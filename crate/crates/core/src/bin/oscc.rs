//! Command-line front end: complexity queries, branch-structure tables for
//! f(ν̃; Δ), the reference-value reproduction suite, and randomized
//! verification against the numerical oracles.
//!
//! Exit codes: 0 success, 1 verification/reproduction failure, 2 invalid input.

use clap::{Args, Parser, Subcommand};
use oscillator_complexity::metric::{
    euler_arnold_pi, geodesic_point, geodesic_velocity, mat_vec, mu_right, speed, GeodesicParams,
    Metric,
};
use oscillator_complexity::oracle::{
    conserved_along, hamiltonian_solution, integrate_christoffel, integrate_geodesic,
    lc_geodesic_point, lc_geodesic_velocity, params_from_momenta, ChristoffelConvention,
    PhaseState,
};
use oscillator_complexity::representations::{kernel, quotient_reduce, to_group_element};
use oscillator_complexity::solver::{
    branch_max, complexity, enumerate_roots, f_of_nu, solve_constants, BoundaryProblem,
    ComplexityResult,
};
use oscillator_complexity::{
    Automorphism, AutomorphismFamily, GroupElement, NamedUnitary, RepresentationSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::process::ExitCode;

const TWO_PI: f64 = std::f64::consts::TAU;

#[derive(Parser)]
#[command(
    name = "oscc",
    about = "Geodesic complexity on the oscillator group",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal geodesic length to a target element or named unitary.
    Complexity(Box<ComplexityArgs>),
    /// Emit samples of f(ν̃; Δ) with branch maxima and the maxima asymptote.
    PlotF(PlotArgs),
    /// Run the published parameter sets and identities, printing pass/fail.
    Reproduce(FormatArg),
    /// Randomized round-trip, conservation and oracle cross-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Default)]
struct ComplexityArgs {
    /// Metric entries a,b,d of the invariant form (default 1,-1,2).
    #[arg(long, value_name = "a,b,d", allow_hyphen_values = true)]
    metric: Option<String>,
    /// Raw target coordinates e,alpha,q,p.
    #[arg(long, value_name = "e,alpha,q,p", allow_hyphen_values = true)]
    target: Option<String>,
    /// Displacement unitary exp(i(pQ+qP)) with the given q,p.
    #[arg(long, value_name = "q,p", allow_hyphen_values = true)]
    displacement: Option<String>,
    /// Oscillator evolution exp(-itΩH); requires --omega-t.
    #[arg(long)]
    oscillator_evolution: bool,
    /// Shifted oscillator exp(-it(ΩH + λQ/Ω)); requires --lam2-over-omega4 and --omega-t.
    #[arg(long)]
    shifted_oscillator: bool,
    /// λ²/Ω⁴ for the shifted oscillator.
    #[arg(long)]
    lam2_over_omega4: Option<f64>,
    /// Dimensionless evolution time Ωt.
    #[arg(long, allow_negative_numbers = true)]
    omega_t: Option<f64>,
    /// Casimir Ω of the representation (defaults to 1).
    #[arg(long)]
    omega: Option<f64>,
    /// Casimir h of the representation (defaults to 0).
    #[arg(long, allow_negative_numbers = true)]
    h: Option<f64>,
    /// Declare h/Ω + 1/2 = k/l (mod 1); enables the α-periodic kernel quotient.
    #[arg(long, value_name = "k/l")]
    rational: Option<String>,
    /// Declare h/Ω + 1/2 irrational; enables the e-periodic kernel quotient only.
    #[arg(long)]
    irrational: bool,
    /// Output format: text, json or csv (default: text or $OSCC_FORMAT).
    #[arg(long)]
    format: Option<String>,
    /// Flat key=value config file; command-line flags override it.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct PlotArgs {
    /// Branch parameter Δ of f(ν̃; Δ).
    #[arg(long)]
    delta: f64,
    /// Lower end of the ν̃ range.
    #[arg(long, default_value_t = -6.0 * std::f64::consts::PI, allow_negative_numbers = true)]
    nu_min: f64,
    /// Upper end of the ν̃ range.
    #[arg(long, default_value_t = 6.0 * std::f64::consts::PI, allow_negative_numbers = true)]
    nu_max: f64,
    /// Number of samples (≥ 2).
    #[arg(long, default_value_t = 1200)]
    samples: usize,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// RNG seed; a fixed seed reproduces the report bit for bit.
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    /// Number of randomized trials per suite (≥ 1).
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    format: Option<String>,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `oscc plot-f | head`) instead of
    // panicking in println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Complexity(args) => cmd_complexity(*args),
        Command::PlotF(args) => cmd_plot_f(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

fn pick_format(flag: &Option<String>) -> Result<Format, String> {
    let raw = match flag {
        Some(s) => s.clone(),
        None => std::env::var("OSCC_FORMAT").unwrap_or_else(|_| "text".into()),
    };
    match raw.as_str() {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!(
            "unknown format '{other}' (expected text, json or csv)"
        )),
    }
}

/// Six significant digits for human-readable output.
fn fmt6(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (5 - mag).clamp(0, 12) as usize;
    format!("{v:.decimals$}")
}

#[derive(Serialize)]
struct CandidateOut {
    branch: i64,
    nu_tilde: f64,
    length: f64,
}

#[derive(Serialize)]
struct ComplexityOut {
    complexity: f64,
    winner: CandidateOut,
    certified: bool,
    window: i64,
    scan_edge: f64,
    bound: f64,
    representative: [f64; 4],
    candidates: Vec<CandidateOut>,
}

fn complexity_out(res: &ComplexityResult, representative: &GroupElement) -> ComplexityOut {
    ComplexityOut {
        complexity: res.complexity,
        winner: CandidateOut {
            branch: res.winner.branch_index,
            nu_tilde: res.winner.nu_tilde,
            length: res.winner.length,
        },
        certified: res.certification.certified,
        window: res.certification.window,
        scan_edge: res.certification.scan_edge,
        bound: res.certification.bound,
        representative: [
            representative.e,
            representative.alpha,
            representative.q,
            representative.p,
        ],
        candidates: res
            .candidates
            .iter()
            .map(|c| CandidateOut {
                branch: c.branch_index,
                nu_tilde: c.nu_tilde,
                length: c.length,
            })
            .collect(),
    }
}

fn emit_complexity(out: &ComplexityOut, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(out).unwrap()),
        Format::Csv => {
            println!("record,field,value");
            println!("summary,complexity,{}", out.complexity);
            println!("summary,winner_nu_tilde,{}", out.winner.nu_tilde);
            println!("summary,winner_branch,{}", out.winner.branch);
            println!("summary,certified,{}", out.certified as i64);
            println!("summary,window,{}", out.window);
            println!("summary,scan_edge,{}", out.scan_edge);
            println!("summary,bound,{}", out.bound);
            for (label, v) in ["e", "alpha", "q", "p"].iter().zip(out.representative) {
                println!("representative,{label},{v}");
            }
            for (i, c) in out.candidates.iter().enumerate() {
                println!("candidate[{i}],branch,{}", c.branch);
                println!("candidate[{i}],nu_tilde,{}", c.nu_tilde);
                println!("candidate[{i}],length,{}", c.length);
            }
        }
        Format::Text => {
            println!("complexity C = {}", fmt6(out.complexity));
            println!(
                "winner: nu_tilde = {} (branch k = {}), length = {}",
                fmt6(out.winner.nu_tilde),
                out.winner.branch,
                fmt6(out.winner.length)
            );
            let [e, alpha, q, p] = out.representative;
            println!(
                "representative: (e, alpha, q, p) = ({}, {}, {}, {})",
                fmt6(e),
                fmt6(alpha),
                fmt6(q),
                fmt6(p)
            );
            println!(
                "certification: scanned |nu_tilde| < {} (window {}), unscanned lower bound {} {}",
                fmt6(out.scan_edge),
                out.window,
                fmt6(out.bound),
                if out.certified {
                    "> C (certified)"
                } else {
                    "(NOT certified)"
                }
            );
            println!("candidates ({}):", out.candidates.len());
            println!("  {:>6} {:>16} {:>16}", "branch", "nu_tilde", "length");
            for c in &out.candidates {
                println!(
                    "  {:>6} {:>16} {:>16}",
                    c.branch,
                    fmt6(c.nu_tilde),
                    fmt6(c.length)
                );
            }
        }
    }
}

// ---------------------------------------------------------------------------
// complexity
// ---------------------------------------------------------------------------

fn parse_floats(name: &str, raw: &str, n: usize) -> Result<Vec<f64>, String> {
    let vals: Result<Vec<f64>, _> = raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| format!("{name}: cannot parse '{raw}': {e}"))?;
    if vals.len() != n {
        return Err(format!(
            "{name}: expected {n} comma-separated values, got {}",
            vals.len()
        ));
    }
    Ok(vals)
}

fn apply_config(args: &mut ComplexityArgs, path: &str) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {path}: {e}"))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config {path}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim().to_string());
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| format!("config key {key}: {e}"))
        };
        let parse_bool = |v: &str| {
            v.parse::<bool>()
                .map_err(|e| format!("config key {key}: {e}"))
        };
        match key {
            "metric" => {
                args.metric.get_or_insert(value);
            }
            "target" => {
                args.target.get_or_insert(value);
            }
            "displacement" => {
                args.displacement.get_or_insert(value);
            }
            "rational" => {
                args.rational.get_or_insert(value);
            }
            "format" => {
                args.format.get_or_insert(value);
            }
            "oscillator-evolution" => args.oscillator_evolution |= parse_bool(&value)?,
            "shifted-oscillator" => args.shifted_oscillator |= parse_bool(&value)?,
            "irrational" => args.irrational |= parse_bool(&value)?,
            "lam2-over-omega4" => {
                let v = parse_f64(&value)?;
                args.lam2_over_omega4.get_or_insert(v);
            }
            "omega-t" => {
                let v = parse_f64(&value)?;
                args.omega_t.get_or_insert(v);
            }
            "omega" => {
                let v = parse_f64(&value)?;
                args.omega.get_or_insert(v);
            }
            "h" => {
                let v = parse_f64(&value)?;
                args.h.get_or_insert(v);
            }
            other => return Err(format!("config {path}: unknown key '{other}'")),
        }
    }
    Ok(())
}

fn cmd_complexity(mut args: ComplexityArgs) -> Result<ExitCode, String> {
    if let Some(path) = args.config.clone() {
        apply_config(&mut args, &path)?;
    }
    let format = pick_format(&args.format)?;
    let metric_vals = match &args.metric {
        Some(raw) => parse_floats("--metric", raw, 3)?,
        None => vec![1.0, -1.0, 2.0],
    };
    let metric =
        Metric::new(metric_vals[0], metric_vals[1], metric_vals[2]).map_err(|e| e.to_string())?;

    let omega = args.omega.unwrap_or(1.0);
    let h = args.h.unwrap_or(0.0);
    // None: bare group-element semantics (no kernel quotient). Some(rat):
    // minimize over the declared representation's kernel translates.
    let rationality: Option<Option<(i64, i64)>> = match (&args.rational, args.irrational) {
        (Some(_), true) => return Err("--rational and --irrational are mutually exclusive".into()),
        (Some(raw), false) => {
            let (k, l) = raw
                .split_once('/')
                .ok_or_else(|| format!("--rational: expected k/l, got '{raw}'"))?;
            let k = k
                .trim()
                .parse::<i64>()
                .map_err(|e| format!("--rational: {e}"))?;
            let l = l
                .trim()
                .parse::<i64>()
                .map_err(|e| format!("--rational: {e}"))?;
            Some(Some((k, l)))
        }
        (None, true) => Some(None),
        (None, false) => None,
    };

    let target = match (&args.target, &args.displacement, args.oscillator_evolution, args.shifted_oscillator)
    {
        (Some(raw), None, false, false) => {
            let v = parse_floats("--target", raw, 4)?;
            GroupElement::new(v[0], v[1], v[2], v[3])
        }
        (None, Some(raw), false, false) => {
            let v = parse_floats("--displacement", raw, 2)?;
            GroupElement::new(0.0, 0.0, v[0], v[1])
        }
        (None, None, true, false) => {
            let omt = args.omega_t.ok_or("--oscillator-evolution requires --omega-t")?;
            GroupElement::new(0.0, -omt, 0.0, 0.0)
        }
        (None, None, false, true) => {
            let l2o4 = args
                .lam2_over_omega4
                .ok_or("--shifted-oscillator requires --lam2-over-omega4")?;
            let omt = args.omega_t.ok_or("--shifted-oscillator requires --omega-t")?;
            if l2o4 < 0.0 {
                return Err("--lam2-over-omega4 must be nonnegative".into());
            }
            let spec = RepresentationSpec::new(omega, h, None).map_err(|e| e.to_string())?;
            to_group_element(
                &NamedUnitary::ShiftedOscillator { t: omt / omega, lambda: l2o4.sqrt() * omega * omega },
                &spec,
            )
        }
        _ => {
            return Err(
                "specify exactly one of --target, --displacement, --oscillator-evolution, --shifted-oscillator"
                    .into(),
            )
        }
    };

    let base = complexity(&BoundaryProblem::new(metric, target)).map_err(|e| e.to_string())?;
    let mut best = (base, target);
    if let Some(rat) = rationality {
        let spec = RepresentationSpec::new(omega, h, rat).map_err(|e| e.to_string())?;
        let kern = kernel(&spec);
        for rep in quotient_reduce(&target, &kern, &metric, best.0.complexity) {
            if rep == target {
                continue;
            }
            let res = complexity(&BoundaryProblem::new(metric, rep)).map_err(|e| e.to_string())?;
            if res.complexity < best.0.complexity {
                best = (res, rep);
            }
        }
    }
    emit_complexity(&complexity_out(&best.0, &best.1), format);
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// plot-f
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PlotOut {
    delta: f64,
    f_samples: Vec<(f64, f64)>,
    branch_maxima: Vec<(f64, f64)>,
    asymptote: Vec<(f64, f64)>,
}

fn cmd_plot_f(args: PlotArgs) -> Result<ExitCode, String> {
    if args.samples < 2 {
        return Err("--samples must be at least 2".into());
    }
    if !args.delta.is_finite() || args.delta <= 0.0 {
        return Err("--delta must be positive".into());
    }
    if args.nu_max <= args.nu_min {
        return Err("--nu-max must exceed --nu-min".into());
    }
    let format = pick_format(&args.format)?;
    let mut f_samples = Vec::with_capacity(args.samples);
    let step = (args.nu_max - args.nu_min) / (args.samples - 1) as f64;
    for i in 0..args.samples {
        let nu = args.nu_min + step * i as f64;
        // Skip samples inside the pole guards and clip the divergent tails.
        if let Ok(val) = f_of_nu(nu, args.delta) {
            if val.abs() < 1e6 {
                f_samples.push((nu, val));
            }
        }
    }
    let mut branch_maxima = Vec::new();
    let k_lo = (args.nu_min / TWO_PI).floor() as i64;
    let k_hi = (args.nu_max / TWO_PI).ceil() as i64;
    for k in k_lo..=k_hi {
        if (-1..=0).contains(&k) && args.delta <= 1.0 / 3.0 {
            continue;
        }
        if let Ok((nu, fm)) = branch_max(k, args.delta) {
            if nu >= args.nu_min && nu <= args.nu_max {
                branch_maxima.push((nu, fm));
            }
        }
    }
    let asymptote: Vec<(f64, f64)> = [args.nu_min, args.nu_max]
        .iter()
        .map(|&nu| (nu, (args.delta - 0.5) * nu))
        .collect();
    let out = PlotOut {
        delta: args.delta,
        f_samples,
        branch_maxima,
        asymptote,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&out).unwrap()),
        Format::Csv | Format::Text => {
            println!("series,nu,value");
            for (nu, v) in &out.f_samples {
                println!("f,{nu},{v}");
            }
            for (nu, v) in &out.branch_maxima {
                println!("branch_max,{nu},{v}");
            }
            for (nu, v) in &out.asymptote {
                println!("asymptote,{nu},{v}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

struct CheckTable {
    rows: Vec<(String, f64, f64, f64, bool)>,
    all_pass: bool,
}

impl CheckTable {
    fn new() -> Self {
        CheckTable {
            rows: Vec::new(),
            all_pass: true,
        }
    }

    fn check(&mut self, label: &str, computed: f64, expected: f64, tol: f64) {
        let pass = (computed - expected).abs() <= tol;
        self.all_pass &= pass;
        self.rows
            .push((label.to_string(), computed, expected, tol, pass));
    }

    fn check_le(&mut self, label: &str, computed: f64, limit: f64, tol: f64) {
        let pass = computed <= limit + tol;
        self.all_pass &= pass;
        self.rows
            .push((label.to_string(), computed, limit, tol, pass));
    }
}

fn shifted_oscillator_target(lam2_over_omega4: f64, omega_t: f64) -> GroupElement {
    let spec = RepresentationSpec::new(1.0, 0.0, None).unwrap();
    to_group_element(
        &NamedUnitary::ShiftedOscillator {
            t: omega_t,
            lambda: lam2_over_omega4.sqrt(),
        },
        &spec,
    )
}

fn cmd_reproduce(args: FormatArg) -> Result<ExitCode, String> {
    let format = pick_format(&args.format)?;
    let mut table = CheckTable::new();
    let metric = Metric::new(1.0, -1.0, 2.0).unwrap();

    // The six published parameter sets (λ²/Ω⁴, Ωt) with their Δ, the listed
    // root/length pairs, and the reported complexities. For the last two the
    // root set is infinite; the published ν̃ = −Ωt branch plus the "likely
    // minimal" candidate are checked instead.
    type Case = (f64, f64, f64, &'static [(f64, f64)], Option<f64>);
    let cases: [Case; 6] = [
        (50.0, 1.0, 0.0870, &[(-1.0, 7.2111)], Some(7.2111)),
        (
            10.0,
            1.0,
            0.4351,
            &[(-1.0, 3.464), (-2.116, 3.817), (2.905, 6.688)],
            Some(3.464),
        ),
        (
            10.0,
            10.0,
            0.1088,
            &[(-10.0, 34.641), (-8.162, 34.359), (-4.621, 26.391)],
            Some(26.391),
        ),
        (
            50.0,
            10.0,
            0.0218,
            &[(-10.0, 72.111), (-8.112, 71.148), (-4.698, 48.325)],
            Some(48.325),
        ),
        (50.0, 50.0, 1.1418, &[(-50.0, 360.555)], None),
        (10.0, 50.0, 5.7087, &[(-50.0, 173.205)], None),
    ];
    let likely_minima: [Option<(f64, f64)>; 6] = [
        None,
        None,
        None,
        None,
        Some((-6.188, 161.500)),
        Some((-6.180, 117.579)),
    ];

    for (i, (l2o4, omt, delta_expect, root_table, c_expect)) in cases.iter().enumerate() {
        let target = shifted_oscillator_target(*l2o4, *omt);
        let bp = BoundaryProblem::new(metric, target);
        let label = format!("case[{i}] l2o4={l2o4} omt={omt}");
        table.check(
            &format!("{label} Delta"),
            bp.delta().unwrap(),
            *delta_expect,
            1e-4,
        );
        let res = complexity(&bp).map_err(|e| e.to_string())?;
        for (nu_expect, len_expect) in root_table.iter() {
            let found = res
                .candidates
                .iter()
                .min_by(|a, b| {
                    (a.nu_tilde - nu_expect)
                        .abs()
                        .partial_cmp(&(b.nu_tilde - nu_expect).abs())
                        .unwrap()
                })
                .ok_or("no candidates")?;
            table.check(
                &format!("{label} root near {nu_expect}"),
                found.nu_tilde,
                *nu_expect,
                1e-3,
            );
            table.check(
                &format!("{label} length at {nu_expect}"),
                found.length,
                *len_expect,
                1e-3,
            );
        }
        if let Some(c) = c_expect {
            table.check(&format!("{label} C"), res.complexity, *c, 1e-3);
        }
        if let Some((nu_likely, l_likely)) = likely_minima[i] {
            table.check_le(
                &format!("{label} best <= published candidate"),
                res.complexity,
                l_likely,
                1e-3,
            );
            table.check(
                &format!("{label} certified"),
                res.certification.certified as i64 as f64,
                1.0,
                0.0,
            );
            // The published value is only "likely the minimal"; agreement is
            // reported, not required.
            let agrees = (res.winner.nu_tilde - nu_likely).abs() <= 1e-3;
            table.rows.push((
                format!(
                    "{label} winner vs published likely root ({})",
                    if agrees {
                        "agrees"
                    } else {
                        "DISAGREES, certified value reported"
                    }
                ),
                res.winner.nu_tilde,
                nu_likely,
                1e-3,
                true,
            ));
        }
    }

    // Kernel sawtooth for the h = 0 representation, exact for b = 0 metrics
    // (for b ≠ 0 central kernel translates genuinely shorten the geodesic
    // and the piecewise formula no longer gives the minimum).
    let saw_metric = Metric::new(1.0, 0.0, 2.0).unwrap();
    let spec = RepresentationSpec::new(1.0, 0.0, Some((1, 2))).unwrap();
    let kern = kernel(&spec);
    for omt in [
        0.5,
        std::f64::consts::PI,
        5.9,
        7.0,
        5.0 * std::f64::consts::PI,
        40.0,
    ] {
        let g = GroupElement::new(0.0, -omt, 0.0, 0.0);
        let mut best = complexity(&BoundaryProblem::new(saw_metric, g))
            .map_err(|e| e.to_string())?
            .complexity;
        for rep in quotient_reduce(&g, &kern, &saw_metric, best) {
            best = best.min(
                complexity(&BoundaryProblem::new(saw_metric, rep))
                    .map_err(|e| e.to_string())?
                    .complexity,
            );
        }
        let span = omt.rem_euclid(2.0 * TWO_PI);
        let expected = 2.0f64.sqrt() * span.min(2.0 * TWO_PI - span);
        table.check(&format!("sawtooth Omega*t={omt}"), best, expected, 1e-8);
    }

    // Displacement identity: C = sqrt(q² + p²), any admissible metric.
    for (q, p) in [(3.0, 4.0), (0.3, -0.2), (2.0, 0.0)] {
        let g = GroupElement::new(0.0, 0.0, q, p);
        let res = complexity(&BoundaryProblem::new(metric, g)).map_err(|e| e.to_string())?;
        table.check(
            &format!("displacement q={q} p={p}"),
            res.complexity,
            (q * q + p * p).sqrt(),
            1e-9,
        );
    }

    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                label: &'a str,
                computed: f64,
                expected: f64,
                tol: f64,
                pass: bool,
            }
            let rows: Vec<Row> = table
                .rows
                .iter()
                .map(|(l, c, e, t, p)| Row {
                    label: l,
                    computed: *c,
                    expected: *e,
                    tol: *t,
                    pass: *p,
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({"all_pass": table.all_pass, "checks": rows})
            );
        }
        Format::Csv => {
            println!("label,computed,expected,tol,pass");
            for (l, c, e, t, p) in &table.rows {
                println!("{l},{c},{e},{t},{}", *p as i64);
            }
        }
        Format::Text => {
            for (l, c, e, t, p) in &table.rows {
                println!(
                    "{} {l}: computed {} expected {} (tol {})",
                    if *p { "PASS" } else { "FAIL" },
                    fmt6(*c),
                    fmt6(*e),
                    t
                );
            }
            println!(
                "{}",
                if table.all_pass {
                    "ALL CHECKS PASSED"
                } else {
                    "SOME CHECKS FAILED"
                }
            );
        }
    }
    Ok(if table.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Suite {
    rows: Vec<(String, f64, f64, bool)>,
    all_pass: bool,
}

impl Suite {
    fn new() -> Self {
        Suite {
            rows: Vec::new(),
            all_pass: true,
        }
    }

    fn report(&mut self, label: &str, max_err: f64, tol: f64) {
        let pass = max_err <= tol;
        self.all_pass &= pass;
        self.rows.push((label.to_string(), max_err, tol, pass));
    }
}

fn random_metric(rng: &mut ChaCha8Rng) -> Metric {
    let a = rng.gen_range(0.5..2.2);
    let b = rng.gen_range(-1.0..1.0);
    let d = b * b / a + rng.gen_range(0.3..2.0);
    Metric::new(a, b, d).unwrap()
}

fn random_params(rng: &mut ChaCha8Rng) -> GeodesicParams {
    GeodesicParams::new(
        rng.gen_range(-1.2..1.2),
        rng.gen_range(-1.2..1.2),
        rng.gen_range(-1.2..1.2),
        rng.gen_range(-1.2..1.2),
    )
}

fn random_element(rng: &mut ChaCha8Rng) -> GroupElement {
    GroupElement::new(
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-6.0..6.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
    )
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let format = pick_format(&args.format)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut suite = Suite::new();

    // Group round trips.
    let mut worst_assoc = 0.0f64;
    let mut worst_log = 0.0f64;
    for _ in 0..args.trials {
        let (g, h, k) = (
            random_element(&mut rng),
            random_element(&mut rng),
            random_element(&mut rng),
        );
        for (x, y) in g
            .compose(&h)
            .compose(&k)
            .coords()
            .iter()
            .zip(g.compose(&h.compose(&k)).coords())
        {
            worst_assoc = worst_assoc.max((x - y).abs());
        }
        if let Ok(x) = g.log() {
            for (u, v) in x.exp().coords().iter().zip(g.coords()) {
                worst_log = worst_log.max((u - v).abs());
            }
        }
    }
    suite.report("compose associativity", worst_assoc, 1e-12);
    suite.report("exp(log(g)) round trip", worst_log, 1e-10);

    // Automorphism homomorphism property.
    let mut worst_auto = 0.0f64;
    for _ in 0..args.trials {
        let family = if rng.gen_bool(0.5) {
            AutomorphismFamily::First
        } else {
            AutomorphismFamily::Second
        };
        let auto = Automorphism::new(
            family,
            rng.gen_range(0.2..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
        .unwrap();
        let (g, h) = (random_element(&mut rng), random_element(&mut rng));
        for (x, y) in auto
            .apply(&g.compose(&h))
            .coords()
            .iter()
            .zip(auto.apply(&g).compose(&auto.apply(&h)).coords())
        {
            worst_auto = worst_auto.max((x - y).abs());
        }
    }
    suite.report("automorphism homomorphism", worst_auto, 1e-12);

    // Boundary round trip: params -> endpoint -> recovered params.
    let mut worst_bdry = 0.0f64;
    let mut done = 0;
    while done < args.trials {
        let m = random_metric(&mut rng);
        let gp = random_params(&mut rng);
        let nu = gp.nu_tilde(&m);
        let k = (nu / TWO_PI).round();
        if (k != 0.0 && (nu - TWO_PI * k).abs() < 0.05) || gp.amplitude_sq() < 1e-3 {
            continue;
        }
        let target = geodesic_point(&m, &gp, 1.0);
        let bp = BoundaryProblem::new(m, target);
        let window = (nu.abs() / TWO_PI).ceil() as i64 + 1;
        let roots = enumerate_roots(&bp, window).map_err(|e| e.to_string())?;
        let nearest = roots
            .iter()
            .copied()
            .min_by(|a, b| (a - nu).abs().partial_cmp(&(b - nu).abs()).unwrap())
            .ok_or("no roots found")?;
        let rec = solve_constants(&bp, nearest).map_err(|e| e.to_string())?;
        worst_bdry = worst_bdry
            .max((rec.pi_e - gp.pi_e).abs())
            .max((rec.pi_alpha - gp.pi_alpha).abs())
            .max((rec.pi_q0 - gp.pi_q0).abs())
            .max((rec.pi_p0 - gp.pi_p0).abs());
        done += 1;
    }
    suite.report("boundary round trip (params)", worst_bdry, 1e-8);

    // Oracle agreement: closed form vs both integrators.
    let oracle_trials = args.trials.clamp(3, 20);
    let mut worst_first = 0.0f64;
    let mut worst_christoffel = 0.0f64;
    for _ in 0..oracle_trials {
        let m = random_metric(&mut rng);
        let gp = random_params(&mut rng);
        let closed = geodesic_point(&m, &gp, 1.0);
        let end1 = *integrate_geodesic(&m, &gp, 4000).last().unwrap();
        let v0 = [gp.pi_e, gp.pi_q0, gp.pi_p0, gp.pi_alpha];
        let end2 = integrate_christoffel(&m, v0, 4000, ChristoffelConvention::FlowCompatible)
            .last()
            .unwrap()
            .coords;
        for i in 0..4 {
            worst_first = worst_first.max((end1.coords()[i] - closed.coords()[i]).abs());
            worst_christoffel =
                worst_christoffel.max((end2.coords()[i] - closed.coords()[i]).abs());
        }
    }
    suite.report("closed form vs first-order RK4 endpoint", worst_first, 1e-8);
    suite.report(
        "closed form vs Christoffel RK4 endpoint",
        worst_christoffel,
        1e-7,
    );

    // Conservation along exact Levi-Civita trajectories (exact velocities),
    // plus the cyclic momenta and energy along the reconstruction family.
    let mut worst_lc = 0.0f64;
    let mut worst_cyclic = 0.0f64;
    for _ in 0..oracle_trials {
        let m = random_metric(&mut rng);
        let gp = random_params(&mut rng);
        let lc_states: Vec<PhaseState> = (0..=30)
            .map(|i| {
                let t = i as f64 / 30.0;
                PhaseState {
                    coords: lc_geodesic_point(&m, &gp, t),
                    velocity: lc_geodesic_velocity(&m, &gp, t),
                }
            })
            .collect();
        worst_lc = worst_lc.max(conserved_along(&m, &lc_states).max_relative_drift());
        let states: Vec<PhaseState> = (0..=30)
            .map(|i| {
                let t = i as f64 / 30.0;
                PhaseState {
                    coords: geodesic_point(&m, &gp, t),
                    velocity: geodesic_velocity(&m, &gp, t),
                }
            })
            .collect();
        let report = conserved_along(&m, &states);
        for idx in [0usize, 1, 3] {
            worst_cyclic = worst_cyclic.max(report.max_drift[idx]);
        }
    }
    suite.report(
        "conserved drift along Levi-Civita geodesics",
        worst_lc,
        1e-9,
    );
    suite.report(
        "cyclic momenta/energy drift along closed form",
        worst_cyclic,
        1e-9,
    );

    // Hamiltonian closed form against the Levi-Civita closed form.
    let mut worst_ham = 0.0f64;
    let mut done = 0;
    while done < args.trials {
        let m = random_metric(&mut rng);
        let (pe, palpha): (f64, f64) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        if pe.abs() < 0.1 {
            continue;
        }
        let det = m.det_block();
        let e_min = 0.5
            * (pe * (m.d() * pe - m.b() * palpha) + palpha * (m.a() * palpha - m.b() * pe))
            / det;
        let energy = e_min + rng.gen_range(0.05..1.5);
        let gamma0 = rng.gen_range(0.0..TWO_PI);
        let gp = params_from_momenta(&m, pe, palpha, energy, gamma0).map_err(|e| e.to_string())?;
        let sigma = rng.gen_range(0.1..1.0);
        let ham = hamiltonian_solution(&m, pe, palpha, energy, gamma0, sigma)
            .map_err(|e| e.to_string())?;
        for (x, y) in ham
            .coords()
            .iter()
            .zip(lc_geodesic_point(&m, &gp, sigma).coords())
        {
            worst_ham = worst_ham.max((x - y).abs());
        }
        worst_ham = worst_ham.max(((2.0 * energy).sqrt() - speed(&m, &gp)).abs());
        done += 1;
    }
    suite.report(
        "hamiltonian closed form vs Levi-Civita closed form",
        worst_ham,
        1e-10,
    );

    // First-order system residual of the closed form at random times.
    let mut worst_resid = 0.0f64;
    for _ in 0..args.trials {
        let m = random_metric(&mut rng);
        let gp = random_params(&mut rng);
        let t = rng.gen_range(0.1..0.9);
        let a = geodesic_point(&m, &gp, t);
        let rhs = mat_vec(&mu_right(&a), &euler_arnold_pi(&m, &gp, t));
        let vel = geodesic_velocity(&m, &gp, t);
        for i in 0..4 {
            worst_resid = worst_resid.max((vel[i] - rhs[i]).abs());
        }
    }
    suite.report(
        "closed-form first-order system residual",
        worst_resid,
        1e-10,
    );

    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                label: &'a str,
                max_error: f64,
                tol: f64,
                pass: bool,
            }
            let rows: Vec<Row> = suite
                .rows
                .iter()
                .map(|(l, e, t, p)| Row {
                    label: l,
                    max_error: *e,
                    tol: *t,
                    pass: *p,
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({"seed": args.seed, "trials": args.trials, "all_pass": suite.all_pass, "suites": rows})
            );
        }
        Format::Csv => {
            println!("label,max_error,tol,pass");
            for (l, e, t, p) in &suite.rows {
                println!("{l},{e},{t},{}", *p as i64);
            }
        }
        Format::Text => {
            println!("seed {} trials {}", args.seed, args.trials);
            for (l, e, t, p) in &suite.rows {
                println!(
                    "{} {l}: max error {:.3e} (tol {:.0e})",
                    if *p { "PASS" } else { "FAIL" },
                    e,
                    t
                );
            }
            println!(
                "{}",
                if suite.all_pass {
                    "ALL SUITES PASSED"
                } else {
                    "SOME SUITES FAILED"
                }
            );
        }
    }
    Ok(if suite.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
