//! `onsat`: solve Boolean systems and CNF formulas, enumerate solutions,
//! check expansion identities, and list points on binary elliptic curves.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use onsat_core::boolalg::{parse_expr, BoolFunc, Polarity, Symbols, VarId};
use onsat_core::cnf::{parse_dimacs_with, solve_sat};
use onsat_core::gf2k::{enumerate_curve_with, Curve, FieldElement, FieldSpec, Method};
use onsat_core::identities::{self, Report, IDENTITIES};
use onsat_core::onset::OnSet;
use onsat_core::solver::{bool_solve, parse_system};
use onsat_core::{Error, Mode, Solution, SolveOutcome, SolverConfig, Status};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_ERROR: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;

#[derive(Parser)]
#[command(name = "onsat", version, about = "Boolean system and CNF solver by orthonormal decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability (exit 10 SAT, 20 UNSAT).
    Solve(SolveArgs),
    /// List every solution (exit 10 SAT, 20 UNSAT).
    Enumerate(SolveArgs),
    /// Check the expansion identities on random or given functions.
    #[command(visible_alias = "verify-identities")]
    Verify(VerifyArgs),
    /// List the points of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over GF(2^k).
    Curve(CurveArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Decide,
    Enumerate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    Cnf,
    System,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Dimacs,
    Json,
}

#[derive(Args)]
struct SolverFlags {
    /// Variable count at or below which a subproblem is brute-forced.
    #[arg(long, default_value_t = 16)]
    n0: usize,
    /// Variables per splitting chain.
    #[arg(long, default_value_t = 3)]
    split_depth: usize,
    /// Worker threads; defaults to the available parallelism, or 1 with --seed.
    #[arg(long, env = "ONSAT_WORKERS")]
    workers: Option<usize>,
    /// Run single-threaded so output is reproducible.
    #[arg(long)]
    seed: Option<u64>,
}

impl SolverFlags {
    fn config(&self, mode: Mode) -> SolverConfig {
        let workers = match (self.workers, self.seed) {
            (Some(w), _) => w,
            (None, Some(_)) => 1,
            (None, None) => SolverConfig::default().workers,
        };
        SolverConfig {
            n0: self.n0,
            split_depth: self.split_depth,
            workers,
            mode,
            check_solutions: true,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Input file, or `-` for stdin.
    file: PathBuf,
    /// Overrides the subcommand's default mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Input format; `auto` picks cnf when a `p cnf` line is present.
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Defaults to dimacs for cnf input in solve mode and json otherwise.
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Treat DIMACS header mismatches as errors.
    #[arg(long)]
    strict_dimacs: bool,
    /// Print every total assignment instead of cubes with don't-cares.
    #[arg(long)]
    expand_dont_cares: bool,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct VerifyArgs {
    /// Variables per random case.
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check this function instead of random ones.
    #[arg(long)]
    function: Option<String>,
    /// ON set for --function: `chain: x, ~y` or `;`-separated functions.
    #[arg(long, requires = "function")]
    onset: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Field,
    Boolean,
}

#[derive(Args)]
struct CurveArgs {
    /// Field modulus as hex, including the leading term.
    #[arg(long, default_value = "b")]
    modulus: String,
    #[arg(long, default_value = "0")]
    a1: String,
    #[arg(long, default_value = "0")]
    a2: String,
    #[arg(long, default_value = "0")]
    a3: String,
    #[arg(long, default_value = "0")]
    a4: String,
    #[arg(long, default_value = "0")]
    a6: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Field)]
    method: MethodArg,
    #[command(flatten)]
    solver: SolverFlags,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = match cli.command {
        Command::Solve(a) => run_solve(a, Mode::Decide, &mut out),
        Command::Enumerate(a) => run_solve(a, Mode::Enumerate, &mut out),
        Command::Verify(a) => run_verify(a, &mut out),
        Command::Curve(a) => run_curve(a, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let broken_pipe = e
                .downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe);
            if !broken_pipe {
                eprintln!("onsat: {e}");
            }
            ExitCode::from(EXIT_ERROR)
        }
    }
}

type CliResult = Result<u8, Box<dyn std::error::Error>>;

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn looks_like_cnf(text: &str) -> bool {
    text.lines().any(|l| l.trim_start().starts_with("p cnf"))
}

fn run_solve(a: SolveArgs, default_mode: Mode, out: &mut impl Write) -> CliResult {
    let mode = match a.mode {
        Some(ModeArg::Decide) => Mode::Decide,
        Some(ModeArg::Enumerate) => Mode::Enumerate,
        None => default_mode,
    };
    let cfg = a.solver.config(mode);
    let text = read_input(&a.file)?;
    let cnf = match a.format {
        Format::Cnf => true,
        Format::System => false,
        Format::Auto => looks_like_cnf(&text),
    };
    let (outcome, names): (SolveOutcome, Box<dyn Fn(VarId) -> String>) = if cnf {
        let parsed = parse_dimacs_with(&text, a.strict_dimacs)?;
        for w in &parsed.warnings {
            log::warn!("{w}");
        }
        let outcome = solve_sat(&parsed.cnf, &cfg)?;
        (outcome, Box::new(|v: VarId| (v.0 + 1).to_string()))
    } else {
        let file = parse_system(&text)?;
        let outcome = bool_solve(&file.system, &cfg)?;
        let symbols = file.symbols;
        (outcome, Box::new(move |v: VarId| symbols.name(v)))
    };
    let output = a.output.unwrap_or(if cnf && mode == Mode::Decide { Output::Dimacs } else { Output::Json });
    let mut solutions = outcome.solutions.clone();
    solutions.sort();
    match output {
        Output::Dimacs => write_dimacs(out, outcome.status, &solutions, mode, a.expand_dont_cares, &*names, cnf)?,
        Output::Json => write_json(out, &solutions, a.expand_dont_cares, &*names)?,
    }
    Ok(match outcome.status {
        Status::Sat => EXIT_SAT,
        Status::Unsat => EXIT_UNSAT,
    })
}

fn dimacs_lit(v: VarId, b: bool, names: &dyn Fn(VarId) -> String) -> String {
    if b {
        names(v)
    } else {
        format!("-{}", names(v))
    }
}

fn write_dimacs(
    out: &mut impl Write,
    status: Status,
    solutions: &[Solution],
    mode: Mode,
    expand: bool,
    names: &dyn Fn(VarId) -> String,
    cnf: bool,
) -> io::Result<()> {
    match status {
        Status::Unsat => writeln!(out, "s UNSATISFIABLE")?,
        Status::Sat => writeln!(out, "s SATISFIABLE")?,
    }
    for s in solutions {
        let line = |a: &onsat_core::Assignment| {
            let lits: Vec<_> = a.iter().map(|(v, b)| dimacs_lit(v, b, names)).collect();
            format!("v {} 0", lits.join(" "))
        };
        if mode == Mode::Decide || !cnf {
            writeln!(out, "{}", line(&s.representative()))?;
        } else if expand {
            for a in s.expand() {
                writeln!(out, "{}", line(&a))?;
            }
        } else {
            let fixed: onsat_core::Assignment = s.assignment.clone().into();
            if !s.dont_care.is_empty() {
                let dc: Vec<_> = s.dont_care.iter().map(|&v| names(v)).collect();
                writeln!(out, "c dont-care {}", dc.join(" "))?;
            }
            writeln!(out, "{}", line(&fixed))?;
        }
    }
    Ok(())
}

fn write_json(out: &mut impl Write, solutions: &[Solution], expand: bool, names: &dyn Fn(VarId) -> String) -> io::Result<()> {
    let record = |pairs: &mut dyn Iterator<Item = (VarId, bool)>, dc: &[VarId]| {
        let assignment: Map<String, Value> = pairs.map(|(v, b)| (names(v), json!(b as u8))).collect();
        let dont_care: Vec<_> = dc.iter().map(|&v| names(v)).collect();
        json!({ "assignment": assignment, "dont_care": dont_care })
    };
    for s in solutions {
        if expand {
            for a in s.expand() {
                writeln!(out, "{}", record(&mut a.iter(), &[]))?;
            }
        } else {
            writeln!(out, "{}", record(&mut s.assignment.iter(), &s.dont_care))?;
        }
    }
    Ok(())
}

fn parse_onset(spec: &str, symbols: &mut Symbols) -> Result<OnSet, Error> {
    if let Some(list) = spec.trim().strip_prefix("chain:") {
        let mut lits = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let f = parse_expr(item, symbols)?;
            let lit = f.as_literal().ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("{item:?} is not a literal"),
            })?;
            lits.push(lit);
        }
        OnSet::term_chain(&lits)
    } else {
        let members = spec
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_expr(s, symbols))
            .collect::<Result<Vec<_>, _>>()?;
        OnSet::validate(members)
    }
}

fn run_verify(a: VerifyArgs, out: &mut impl Write) -> CliResult {
    let report = match &a.function {
        Some(text) => {
            let mut symbols = Symbols::new();
            let f = parse_expr(text, &mut symbols)?;
            let base = match &a.onset {
                Some(spec) => parse_onset(spec, &mut symbols)?,
                None => {
                    let v = f.vars().into_iter().next().unwrap_or(VarId(0));
                    OnSet::term_chain(&[(v, Polarity::Positive)])?
                }
            };
            let mut rng = StdRng::seed_from_u64(a.seed);
            let mut report = Report::default();
            let vs: Vec<_> = f.vars().into_iter().collect();
            let hv = [VarId(symbols.len() as u32 + 1), VarId(symbols.len() as u32 + 2)];
            for _ in 0..a.trials.max(1) {
                let g = if vs.is_empty() {
                    BoolFunc::constant(rng.gen())
                } else {
                    onsat_core::random::random_func(&mut rng, &vs, 3)
                };
                let h = onsat_core::random::random_func(&mut rng, &hv, 2);
                report.merge(&identities::check_case(&f, &g, &h, &base)?);
            }
            report
        }
        None => identities::run_random(a.n, a.trials, a.seed)?,
    };
    for name in IDENTITIES {
        match report.counts.get(name) {
            Some(&(pass, 0)) => writeln!(out, "PASS {name} ({pass} checks)")?,
            Some(&(pass, fail)) => writeln!(out, "FAIL {name} ({fail} of {} checks failed)", pass + fail)?,
            None => writeln!(out, "SKIP {name} (not applicable)")?,
        }
    }
    Ok(if report.passed() { 0 } else { EXIT_VERIFY_FAILED })
}

fn run_curve(a: CurveArgs, out: &mut impl Write) -> CliResult {
    let modulus = FieldElement::from_hex(&a.modulus)?.0;
    let field = FieldSpec::new(modulus)?;
    let coef = |s: &str| -> Result<FieldElement, Error> {
        let e = FieldElement::from_hex(s)?;
        if field.contains(e) {
            Ok(e)
        } else {
            Err(Error::InvalidHex(format!("{s} is outside the field")))
        }
    };
    let curve = Curve {
        a1: coef(&a.a1)?,
        a2: coef(&a.a2)?,
        a3: coef(&a.a3)?,
        a4: coef(&a.a4)?,
        a6: coef(&a.a6)?,
    };
    let method = match a.method {
        MethodArg::Field => Method::FieldDirect,
        MethodArg::Boolean => Method::BooleanSolver,
    };
    let points = enumerate_curve_with(&curve, &field, method, &a.solver.config(Mode::Enumerate))?;
    for (x, y) in &points {
        writeln!(out, "{x} {y}")?;
    }
    writeln!(out, "# {} points", points.len())?;
    Ok(0)
}
