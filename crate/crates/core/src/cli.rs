//! The `zxent` command-line front end.
//!
//! Every subcommand prints either a human-readable report (which always
//! states the tolerance in effect) or, with `--format machine`, one JSON
//! object per line. The seed and tolerance can also be set through
//! `ZXENT_SEED` and `ZXENT_TOL`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::diagram::{Diagram, DiagramDoc};
use crate::entangle::{
    classify_slocc, ghz_witness, hyperdeterminant_tangle, normalize_state, tangle_report,
    TangleReport,
};
use crate::entangle::{
    family_amplitudes, family_conditions, family_is_w_class, family_three_tangle,
    plug_corner_analysis, scan_family, square4_analysis, supplementarity, supplementarity_numeric,
    FamilyVerdict, SQUARE_CORNERS,
};
use crate::error::{Error, Result};
use crate::evaluator::{evaluate, evaluate_scalar};
use crate::generators::{point_mult, Color};
use crate::phase::Phase;
use crate::qtensor::{QTensor, TensorDoc};
use crate::rewrite::fuse_normalize;
use crate::rewrite::verify_rules;
use crate::rng;
use crate::wfrob::{
    basis_structure, loop_scalar, loop_value, orthogonality_of, pi_loop_scalar, verify_frobenius,
    w_algebra_diagrams, FrobeniusReport, LoopClass, WDiagrams, WReading,
};

/// Largest register `random-state` will draw.
pub const MAX_RANDOM_QUBITS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Machine,
}

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: f64,
    pub format: OutputFormat,
}

#[derive(Parser, Debug)]
#[command(
    name = "zxent",
    version,
    about = "Z/X spider diagrams and three-qubit entanglement"
)]
struct Cli {
    /// Output style: human-readable report or one JSON record per line.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: OutputFormat,
    /// Seed for every randomized suite.
    #[arg(long, global = true, env = "ZXENT_SEED", default_value_t = 1)]
    seed: u64,
    /// Numerical tolerance.
    #[arg(long = "tol", global = true, env = "ZXENT_TOL", default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Workers {
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a diagram file to its tensor.
    Eval {
        file: PathBuf,
        /// Print the number a closed diagram evaluates to.
        #[arg(long)]
        scalar: bool,
    },
    /// Fuse spiders, drop identities and loops; report the scalar.
    Normalize {
        file: PathBuf,
        /// Also write the normalized diagram here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check every rewrite rule on seeded random instances.
    VerifyRules {
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[command(flatten)]
        workers: Workers,
    },
    /// SLOCC class and tangles of a three-qubit state or diagram.
    Classify { file: PathBuf },
    /// Tangles of a three-qubit state or diagram.
    Tangle { file: PathBuf },
    /// Local maps taking GHZ to the given state.
    Witness { file: PathBuf },
    /// Analyse one member of the triangle family.
    Family {
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        alpha: Phase,
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        beta: Phase,
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        gamma: Phase,
        /// Amplitudes, tangles and corner plugging as well.
        #[arg(long)]
        report: bool,
    },
    /// Classify every family member on the grid pπ/q, 0 ≤ p < 2q.
    Scan {
        #[arg(long)]
        denominator: i64,
        #[command(flatten)]
        workers: Workers,
    },
    /// Supplementarity of two Z phases.
    Supp {
        #[arg(value_parser = parse_phase, allow_hyphen_values = true)]
        xi: Phase,
        #[arg(value_parser = parse_phase, allow_hyphen_values = true)]
        zeta: Phase,
    },
    /// Plug pairs of corners of the four-qubit square.
    Square4 {
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        alpha: Phase,
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        beta: Phase,
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        gamma: Phase,
        #[arg(long, value_parser = parse_phase, allow_hyphen_values = true)]
        delta: Phase,
    },
    /// Frobenius axioms, loop value and orthogonality of the W algebra.
    WfrobCheck {
        /// Directory holding `literal/` and `transposed/` generator files.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Draw a seeded Gaussian state.
    RandomState {
        #[arg(long, default_value_t = 3)]
        qubits: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Normalize { .. } => "normalize",
            Command::VerifyRules { .. } => "verify-rules",
            Command::Classify { .. } => "classify",
            Command::Tangle { .. } => "tangle",
            Command::Witness { .. } => "witness",
            Command::Family { .. } => "family",
            Command::Scan { .. } => "scan",
            Command::Supp { .. } => "supp",
            Command::Square4 { .. } => "square4",
            Command::WfrobCheck { .. } => "wfrob-check",
            Command::RandomState { .. } => "random-state",
        }
    }

    fn workers(&self) -> usize {
        match self {
            Command::VerifyRules { workers, .. } | Command::Scan { workers, .. } => workers.workers,
            _ => 1,
        }
    }
}

fn parse_phase(s: &str) -> std::result::Result<Phase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Normalized Gaussian state on `n_qubits` from the ChaCha8 stream of `seed`.
pub fn random_state(seed: u64, n_qubits: usize) -> Result<QTensor> {
    if n_qubits > MAX_RANDOM_QUBITS {
        return Err(Error::Argument(format!(
            "at most {MAX_RANDOM_QUBITS} qubits, got {n_qubits}"
        )));
    }
    Ok(rng::random_state(&mut rng::seeded(seed), n_qubits))
}

/// Run with process arguments, printing to stdout/stderr.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit output streams; returns the exit code.
pub fn run_with<I: IntoIterator<Item = OsString>>(
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let cfg = RunConfig {
        seed: cli.seed,
        tolerance: cli.tol,
        format: cli.format,
    };
    if !(cfg.tolerance > 0.0 && cfg.tolerance < 1.0) {
        let _ = writeln!(
            err,
            "error: tolerance must lie in (0, 1), got {}",
            cfg.tolerance
        );
        return 2;
    }
    let workers = cli.command.workers();
    if workers == 0 {
        let _ = writeln!(err, "error: --workers must be at least 1");
        return 2;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 2;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| {
        let mut o = Out { w: &mut buf, cfg };
        o.header(cli.command.name())?;
        dispatch(&cli.command, &mut o)
    });
    if let Err(e) = out.write_all(&buf).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: {e}");
        return 3;
    }
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

struct Out<'a> {
    w: &'a mut dyn Write,
    cfg: RunConfig,
}

impl Out<'_> {
    fn machine(&self) -> bool {
        self.cfg.format == OutputFormat::Machine
    }

    fn header(&mut self, command: &str) -> Result<()> {
        let (seed, tol) = (self.cfg.seed, self.cfg.tolerance);
        if self.machine() {
            self.record(
                json!({"record": "config", "command": command, "seed": seed, "tolerance": tol}),
            )
        } else {
            self.line(&format!(
                "# zxent {command}  tolerance {tol:e}  seed {seed}"
            ))
        }
    }

    fn record(&mut self, v: Value) -> Result<()> {
        writeln!(
            self.w,
            "{}",
            serde_json::to_string(&v).expect("json values serialize")
        )?;
        Ok(())
    }

    fn line(&mut self, s: &str) -> Result<()> {
        writeln!(self.w, "{s}")?;
        Ok(())
    }

    fn text(&mut self, s: &str) -> Result<()> {
        write!(self.w, "{s}")?;
        Ok(())
    }
}

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn cnum(z: C64) -> String {
    format!("{:+.12e} {:+.12e}i", z.re, z.im)
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), num)
}

fn resolve(path: &Path) -> PathBuf {
    if !path.exists() && path.extension().is_none() {
        let with = path.with_extension("json");
        if with.exists() {
            return with;
        }
    }
    path.to_path_buf()
}

enum Input {
    Tensor(QTensor),
    Diagram(Diagram),
}

/// A tensor file (has `data`) or a diagram file.
fn load_input(path: &Path) -> Result<Input> {
    let path = resolve(path);
    let raw = std::fs::read_to_string(&path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    // human output of this tool starts with a `# zxent` line
    let text: String = raw
        .lines()
        .skip_while(|l| l.starts_with('#'))
        .flat_map(|l| [l, "\n"])
        .collect();
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if v.get("data").is_some() {
        Ok(Input::Tensor(QTensor::from_json(&text)?))
    } else {
        Ok(Input::Diagram(Diagram::from_json(&text)?))
    }
}

fn load_diagram(path: &Path) -> Result<Diagram> {
    match load_input(path)? {
        Input::Diagram(d) => Ok(d),
        Input::Tensor(_) => Err(Error::Parse(format!(
            "{}: expected a diagram file",
            path.display()
        ))),
    }
}

/// A three-qubit state from either kind of file.
fn load_state(path: &Path) -> Result<QTensor> {
    let t = match load_input(path)? {
        Input::Tensor(t) => t,
        Input::Diagram(d) => evaluate(&d)?,
    };
    if t.n_in() != 0 || t.n_out() != 3 {
        return Err(Error::Dimension(format!(
            "need a 0→3 state, got {}→{}",
            t.n_in(),
            t.n_out()
        )));
    }
    Ok(t)
}

fn dispatch(cmd: &Command, o: &mut Out) -> Result<i32> {
    match cmd {
        Command::Eval { file, scalar } => cmd_eval(o, file, *scalar),
        Command::Normalize { file, output } => cmd_normalize(o, file, output.as_deref()),
        Command::VerifyRules { instances, .. } => cmd_verify(o, *instances),
        Command::Classify { file } => cmd_classify(o, file),
        Command::Tangle { file } => cmd_tangle(o, file),
        Command::Witness { file } => cmd_witness(o, file),
        Command::Family {
            alpha,
            beta,
            gamma,
            report,
        } => cmd_family(o, *alpha, *beta, *gamma, *report),
        Command::Scan { denominator, .. } => cmd_scan(o, *denominator),
        Command::Supp { xi, zeta } => cmd_supp(o, *xi, *zeta),
        Command::Square4 {
            alpha,
            beta,
            gamma,
            delta,
        } => cmd_square4(o, [*alpha, *beta, *gamma, *delta]),
        Command::WfrobCheck { fixtures } => cmd_wfrob(o, fixtures.as_deref()),
        Command::RandomState { qubits } => cmd_random_state(o, *qubits),
    }
}

fn tensor_value(t: &QTensor) -> Value {
    serde_json::to_value(TensorDoc::from(t)).expect("tensor serializes")
}

fn cmd_eval(o: &mut Out, file: &Path, scalar: bool) -> Result<i32> {
    let d = load_diagram(file)?;
    if scalar {
        let z = evaluate_scalar(&d)?;
        if o.machine() {
            o.record(json!({"record": "scalar", "value": cjson(z)}))?;
        } else {
            o.line(&format!("scalar {}", cnum(z)))?;
        }
    } else {
        let t = evaluate(&d)?;
        if o.machine() {
            o.record(json!({"record": "tensor", "tensor": tensor_value(&t)}))?;
        } else {
            o.text(&t.to_json())?;
        }
    }
    Ok(0)
}

fn cmd_normalize(o: &mut Out, file: &Path, output: Option<&Path>) -> Result<i32> {
    let d = load_diagram(file)?;
    let n = fuse_normalize(&d)?;
    if let Some(path) = output {
        std::fs::write(path, n.diagram.to_json())?;
    }
    if o.machine() {
        let doc =
            serde_json::to_value(DiagramDoc::from_diagram(&n.diagram)).expect("diagram serializes");
        o.record(json!({
            "record": "normalized",
            "scalar": cjson(n.scalar),
            "steps": n.steps.len(),
            "nodes": n.diagram.node_count(),
            "diagram": doc,
        }))?;
    } else {
        o.line(&format!("scalar {}", cnum(n.scalar)))?;
        o.line(&format!("steps  {}", n.steps.len()))?;
        o.line(&format!(
            "nodes  {} -> {}",
            d.node_count(),
            n.diagram.node_count()
        ))?;
        o.text(&n.diagram.to_json())?;
    }
    Ok(0)
}

fn cmd_verify(o: &mut Out, instances: usize) -> Result<i32> {
    if instances == 0 {
        return Err(Error::Argument("--instances must be at least 1".into()));
    }
    let r = verify_rules(o.cfg.seed, instances, o.cfg.tolerance)?;
    if o.machine() {
        for rule in &r.rules {
            o.record(json!({
                "record": "rule",
                "rule": rule.rule.name(),
                "instances": rule.instances,
                "passed": rule.passed,
                "max_deviation": rule.max_deviation,
                "max_scalar_error": rule.max_scalar_error,
                "first_failure": rule.first_failure,
            }))?;
        }
        o.record(json!({"record": "summary", "ok": r.ok()}))?;
    } else {
        o.line(&format!(
            "{:<22} {:>9} {:>7} {:>20} {:>20}  status",
            "rule", "instances", "passed", "max deviation", "max scalar error"
        ))?;
        for rule in &r.rules {
            o.line(&format!(
                "{:<22} {:>9} {:>7} {:>20} {:>20}  {}",
                rule.rule.name(),
                rule.instances,
                rule.passed,
                num(rule.max_deviation),
                num(rule.max_scalar_error),
                if rule.ok() { "PASS" } else { "FAIL" }
            ))?;
            if let Some(f) = &rule.first_failure {
                o.line(&format!("    {f}"))?;
            }
        }
        o.line(if r.ok() {
            "all rules sound"
        } else {
            "soundness failures found"
        })?;
    }
    Ok(if r.ok() {
        0
    } else {
        Error::Soundness(String::new()).exit_code()
    })
}

fn tangles_value(t: &TangleReport) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn print_tangles(o: &mut Out, t: &TangleReport) -> Result<()> {
    for (name, v) in [
        ("tau_A(BC)", t.tau_a_bc),
        ("tau_B(CA)", t.tau_b_ca),
        ("tau_C(AB)", t.tau_c_ab),
        ("tau_AB", t.tau_ab),
        ("tau_AC", t.tau_ac),
        ("tau_BC", t.tau_bc),
        ("tau_ABC", t.tau_abc),
    ] {
        o.line(&format!("{name:<10} {}", num(v)))?;
    }
    Ok(())
}

fn cmd_classify(o: &mut Out, file: &Path) -> Result<i32> {
    let psi = normalize_state(&load_state(file)?)?;
    let class = classify_slocc(&psi, o.cfg.tolerance)?;
    let t = tangle_report(&psi)?;
    if o.machine() {
        o.record(
            json!({"record": "classification", "class": class, "tangles": tangles_value(&t)}),
        )?;
    } else {
        o.line(&format!("class      {class}"))?;
        print_tangles(o, &t)?;
    }
    Ok(0)
}

fn cmd_tangle(o: &mut Out, file: &Path) -> Result<i32> {
    let psi = normalize_state(&load_state(file)?)?;
    let t = tangle_report(&psi)?;
    let hyper = hyperdeterminant_tangle(&psi)?;
    if o.machine() {
        o.record(json!({
            "record": "tangles",
            "tangles": tangles_value(&t),
            "residuals": t.residuals(),
            "hyperdeterminant": hyper,
        }))?;
    } else {
        print_tangles(o, &t)?;
        let r = t.residuals();
        o.line(&format!(
            "residuals  {} {} {}",
            num(r[0]),
            num(r[1]),
            num(r[2])
        ))?;
        o.line(&format!("4|Det|     {}", num(hyper)))?;
    }
    Ok(0)
}

fn matrix_value(m: &QTensor) -> Value {
    Value::Array(m.data().iter().map(|&z| cjson(z)).collect())
}

fn cmd_witness(o: &mut Out, file: &Path) -> Result<i32> {
    let psi = normalize_state(&load_state(file)?)?;
    let w = ghz_witness(&psi)?;
    let residual = w.reconstruct().sub(&psi)?.norm();
    if o.machine() {
        o.record(json!({
            "record": "witness",
            "a1": matrix_value(&w.a1),
            "a2": matrix_value(&w.a2),
            "a3": matrix_value(&w.a3),
            "residual": residual,
        }))?;
    } else {
        for (name, m) in [("A1", &w.a1), ("A2", &w.a2), ("A3", &w.a3)] {
            let d = m.data();
            o.line(&format!(
                "{name} = [{} , {} ; {} , {}]",
                cnum(d[0]),
                cnum(d[1]),
                cnum(d[2]),
                cnum(d[3])
            ))?;
        }
        o.line(&format!("|(A1⊗A2⊗A3)GHZ − ψ| = {}", num(residual)))?;
    }
    Ok(0)
}

fn cmd_family(o: &mut Out, alpha: Phase, beta: Phase, gamma: Phase, report: bool) -> Result<i32> {
    let verdict = family_is_w_class(alpha, beta, gamma);
    let tangle = family_three_tangle(alpha, beta, gamma).ok();
    let conditions = family_conditions(alpha, beta, gamma);
    if o.machine() {
        o.record(json!({
            "record": "family",
            "alpha": alpha, "beta": beta, "gamma": gamma,
            "verdict": verdict,
            "tangle": tangle,
            "conditions": conditions,
        }))?;
    } else {
        o.line(&format!(
            "phases     alpha {alpha}  beta {beta}  gamma {gamma}  (units of pi)"
        ))?;
        o.line(&format!("verdict    {verdict}"))?;
        o.line(&format!("tangle     {}", opt_num(tangle)))?;
        o.line(&format!("conditions {conditions:?}  (a, b, c, d vanish)"))?;
    }
    if report {
        family_report(o, alpha, beta, gamma)?;
    }
    Ok(if verdict == FamilyVerdict::Degenerate {
        Error::Degenerate(String::new()).exit_code()
    } else {
        0
    })
}

fn family_report(o: &mut Out, alpha: Phase, beta: Phase, gamma: Phase) -> Result<()> {
    let amps = family_amplitudes(alpha, beta, gamma);
    let psi = evaluate(&crate::diagram::w_family_diagram(alpha, beta, gamma))?;
    let state = normalize_state(&psi).ok();
    let class = match &state {
        Some(s) => Some(classify_slocc(s, o.cfg.tolerance)?),
        None => None,
    };
    let tangles = match &state {
        Some(s) => Some(tangle_report(s)?),
        None => None,
    };
    let corners = (0..3)
        .map(|k| plug_corner_analysis(alpha, beta, gamma, k))
        .collect::<Result<Vec<_>>>()?;
    if o.machine() {
        o.record(json!({
            "record": "family-report",
            "amplitudes": {"a": cjson(amps.a), "b": cjson(amps.b), "c": cjson(amps.c), "d": cjson(amps.d)},
            "class": class,
            "tangles": tangles.as_ref().map(tangles_value),
        }))?;
        for c in &corners {
            o.record(json!({
                "record": "corner",
                "corner": c.corner,
                "phases": [c.phases.0, c.phases.1],
                "verdict": c.verdict,
                "rank": c.bipartite_rank,
                "consistent": c.consistent(),
            }))?;
        }
    } else {
        o.line(&format!("a |000>    {}", cnum(amps.a)))?;
        o.line(&format!("b |110>    {}", cnum(amps.b)))?;
        o.line(&format!("c |011>    {}", cnum(amps.c)))?;
        o.line(&format!("d |101>    {}", cnum(amps.d)))?;
        match (class, tangles) {
            (Some(cl), Some(t)) => {
                o.line(&format!("class      {cl}"))?;
                print_tangles(o, &t)?;
            }
            _ => o.line("class      - (zero state)")?,
        }
        for c in &corners {
            o.line(&format!(
                "corner {}   plug X(0): phases ({}, {})  {}  rank {}{}",
                c.corner,
                c.phases.0,
                c.phases.1,
                c.verdict,
                c.bipartite_rank,
                if c.consistent() { "" } else { "  MISMATCH" }
            ))?;
        }
    }
    Ok(())
}

fn cmd_scan(o: &mut Out, q: i64) -> Result<i32> {
    let r = scan_family(q)?;
    let frac = |p: i64| Phase::frac(p, q);
    if o.machine() {
        for p in &r.points {
            o.record(json!({
                "record": "scan-point",
                "alpha": frac(p.p[0]), "beta": frac(p.p[1]), "gamma": frac(p.p[2]),
                "verdict": p.verdict,
                "tangle": p.tangle,
                "numeric_tangle": p.numeric_tangle,
                "class": p.class,
                "flagged": p.flagged,
            }))?;
        }
    } else {
        o.line(&format!(
            "{:>8} {:>8} {:>8}  {:<12} {:>20} {:>20}  {:<10} flag",
            "alpha", "beta", "gamma", "verdict", "tangle", "numeric", "class"
        ))?;
        for p in &r.points {
            o.line(&format!(
                "{:>8} {:>8} {:>8}  {:<12} {:>20} {:>20}  {:<10} {}",
                frac(p.p[0]).to_string(),
                frac(p.p[1]).to_string(),
                frac(p.p[2]).to_string(),
                p.verdict.to_string(),
                opt_num(p.tangle),
                opt_num(p.numeric_tangle),
                p.class.map_or_else(|| "-".to_string(), |c| c.to_string()),
                if p.flagged { "*" } else { "" }
            ))?;
        }
    }
    let counts: Vec<(FamilyVerdict, usize)> = [
        FamilyVerdict::GhzClass,
        FamilyVerdict::WClass,
        FamilyVerdict::BiSepOrLess,
        FamilyVerdict::Degenerate,
    ]
    .into_iter()
    .map(|v| (v, r.count(v)))
    .collect();
    let mismatches = r.mismatches().len();
    let flagged = r.points.iter().filter(|p| p.flagged).count();
    if o.machine() {
        let c: serde_json::Map<String, Value> = counts
            .iter()
            .map(|(v, n)| (v.to_string(), json!(n)))
            .collect();
        o.record(json!({
            "record": "scan-summary",
            "denominator": q,
            "points": r.points.len(),
            "counts": c,
            "flagged": flagged,
            "mismatches": mismatches,
        }))?;
    } else {
        let c: Vec<String> = counts.iter().map(|(v, n)| format!("{v} {n}")).collect();
        o.line(&format!(
            "points {}  {}  flagged {flagged}  mismatches {mismatches}",
            r.points.len(),
            c.join("  ")
        ))?;
    }
    Ok(if mismatches == 0 {
        0
    } else {
        Error::Soundness(String::new()).exit_code()
    })
}

fn cmd_supp(o: &mut Out, xi: Phase, zeta: Phase) -> Result<i32> {
    let verdict = supplementarity(xi, zeta);
    let numeric = supplementarity_numeric(xi, zeta, o.cfg.tolerance);
    let p = point_mult(xi, zeta);
    if o.machine() {
        o.record(json!({
            "record": "supplementarity",
            "xi": xi, "zeta": zeta,
            "verdict": verdict,
            "numeric": numeric,
            "point": [cjson(p.data()[0]), cjson(p.data()[1])],
        }))?;
    } else {
        o.line(&format!("xi {xi}  zeta {zeta}  (units of pi)"))?;
        o.line(&format!("verdict    {verdict}"))?;
        o.line(&format!("numeric    {numeric}"))?;
        o.line(&format!(
            "xi•zeta    {} |0> , {} |1>",
            cnum(p.data()[0]),
            cnum(p.data()[1])
        ))?;
    }
    Ok(0)
}

fn cmd_square4(o: &mut Out, phases: [Phase; 4]) -> Result<i32> {
    let [a, b, g, d] = phases;
    let r = square4_analysis(a, b, g, d)?;
    let name = |k: usize| SQUARE_CORNERS[k];
    if o.machine() {
        for p in &r.patterns {
            o.record(json!({
                "record": "square4-pattern",
                "plugged": [name(p.plugged[0]), name(p.plugged[1])],
                "open": [name(p.open[0]), name(p.open[1])],
                "adjacent": p.adjacent,
                "paths": [p.paths.0, p.paths.1],
                "verdict": p.verdict,
                "rank": p.rank,
                "agrees": p.agrees,
            }))?;
        }
        o.record(json!({"record": "square4-summary", "all_agree": r.all_agree()}))?;
    } else {
        o.line(&format!(
            "phases     alpha {a}  beta {b}  gamma {g}  delta {d}  (units of pi)"
        ))?;
        for p in &r.patterns {
            o.line(&format!(
                "plug {}+{}  open {}+{}  {:<8}  paths ({}, {})  {:<16} rank {}  {}",
                name(p.plugged[0]),
                name(p.plugged[1]),
                name(p.open[0]),
                name(p.open[1]),
                if p.adjacent { "adjacent" } else { "opposite" },
                p.paths.0,
                p.paths.1,
                p.verdict.to_string(),
                p.rank,
                if p.agrees { "ok" } else { "MISMATCH" }
            ))?;
        }
    }
    Ok(if r.all_agree() {
        0
    } else {
        Error::Soundness(String::new()).exit_code()
    })
}

fn report_value(r: &FrobeniusReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn cmd_wfrob(o: &mut Out, fixtures: Option<&Path>) -> Result<i32> {
    let tol = o.cfg.tolerance;
    let mut ok = true;
    for color in [Color::Z, Color::X] {
        let p = basis_structure(color);
        let r = verify_frobenius(&p, tol);
        let class = loop_value(&p, tol).classification;
        if o.machine() {
            o.record(json!({"record": "basis-structure", "color": color, "axioms": report_value(&r), "loop": class}))?;
        } else {
            o.line(&format!(
                "{color} basis structure: axioms {}  special {}  loop {class}",
                r.axioms_hold(),
                r.special
            ))?;
        }
    }
    for reading in WReading::ALL {
        let w = match fixtures {
            Some(dir) => WDiagrams::load(&dir.join(reading.name()))?,
            None => w_algebra_diagrams(reading),
        };
        let p = w.evaluate()?;
        let r = verify_frobenius(&p, tol);
        let lv = loop_value(&p, tol);
        let orth = orthogonality_of(&w, reading)?;
        if reading == WReading::Literal {
            ok &= r.axioms_hold()
                && !r.special
                && r.special_margin > 0.1
                && lv.classification == LoopClass::RankOne
                && orth.holds;
        }
        if o.machine() {
            o.record(json!({
                "record": "w-algebra",
                "reading": reading,
                "axioms": report_value(&r),
                "axioms_hold": r.axioms_hold(),
                "loop": lv.classification,
                "pi_pairing": cjson(orth.pi_pairing),
                "zero_pairing": cjson(orth.zero_pairing),
                "orthogonal": orth.holds,
            }))?;
        } else {
            o.line(&format!("W algebra ({} reading)", reading.name()))?;
            for (name, v) in [
                ("associativity", r.associativity),
                ("commutativity", r.commutativity),
                ("unit law", r.unit_law),
                ("coassociativity", r.coassociativity),
                ("cocommutativity", r.cocommutativity),
                ("counit law", r.counit_law),
                ("Frobenius law", r.frobenius_law),
                ("special", r.special),
                ("dagger-compatible", r.dagger_compatible),
            ] {
                o.line(&format!("  {name:<18} {v}"))?;
            }
            o.line(&format!("  special margin     {}", num(r.special_margin)))?;
            o.line(&format!("  loop               {}", lv.classification))?;
            o.line(&format!("  <X(pi)| loop-point {}", cnum(orth.pi_pairing)))?;
            o.line(&format!("  <X(0)|  loop-point {}", cnum(orth.zero_pairing)))?;
            o.line(&format!("  orthogonal         {}", orth.holds))?;
        }
    }
    for color in [Color::Z, Color::X] {
        let pi = pi_loop_scalar(color);
        let zero = loop_scalar(color, Phase::ZERO);
        if o.machine() {
            o.record(json!({"record": "pi-loop", "loop_color": color, "pi": cjson(pi), "zero": cjson(zero)}))?;
        } else {
            o.line(&format!(
                "{color} loop through {} gate: pi {}   0 {}",
                color.other(),
                cnum(pi),
                cnum(zero)
            ))?;
        }
    }
    Ok(if ok {
        0
    } else {
        Error::Soundness(String::new()).exit_code()
    })
}

fn cmd_random_state(o: &mut Out, qubits: usize) -> Result<i32> {
    let t = random_state(o.cfg.seed, qubits)?;
    if o.machine() {
        o.record(json!({"record": "tensor", "tensor": tensor_value(&t)}))?;
    } else {
        o.text(&t.to_json())?;
    }
    Ok(0)
}
