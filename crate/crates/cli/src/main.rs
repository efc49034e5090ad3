use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ginv::io::parse_matrix;
use ginv::report::{class_report, inverse_report};
use ginv::suites::{run_on_pair, run_suite, Suite, SuiteConfig};
use ginv::weakdrazin::{certify_mrwd, sample_mrwd, WdCertificate};
use ginv::{fixtures, Error, Mat, Side, Tol};
use serde::Serialize;

/// Generalized inverses of square complex matrices: weak CMP, weak MPD/DMP,
/// CMP, DMP, MPD, Drazin and Moore–Penrose.
///
/// Exit status: 0 success, 1 IO/parse error, 2 validation failure.
#[derive(Parser)]
#[command(name = "ginv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Relative tolerance for matrix identities.
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Relative tolerance for numerical rank.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Machine-readable JSON instead of a text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Every inverse of A with the residuals of its defining identities.
    Compute {
        path: PathBuf,
        /// Left minimal rank weak Drazin inverse to use (certified first).
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Class predicates and every characterization checker on (A, X).
    Classify {
        path: PathBuf,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs a verification suite on generated pairs or on one injected pair.
    Verify {
        /// prop22, prop-mp, wmpd-mp, wmpd-wcmp, wcep, main, cd, bott-duffin,
        /// projector, pinv-relation or all.
        suite: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check this A only (X from --x, or sampled from --seed).
        #[arg(long, conflicts_with = "fixture")]
        a: Option<PathBuf>,
        #[arg(long, requires = "a")]
        x: Option<PathBuf>,
        /// Check a built-in fixture pair by name.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Samples minimal rank weak Drazin inverses; always prints JSON.
    Sample {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

enum Failure {
    Input(String),
    Validation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::EntryCount { .. }
            | Error::NonFinite
            | Error::Empty
            | Error::NotSquare { .. }
            | Error::ShapeMismatch { .. }
            | Error::InvalidTolerance(_) => Failure::Input(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

/// Rendered output and whether the command's checks all passed.
struct Output {
    text: String,
    ok: bool,
}

fn read_matrix(path: &Path) -> Result<Mat, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialize") + "\n"
}

fn fmt_matrix(out: &mut String, m: &Mat) {
    for i in 0..m.rows() {
        out.push_str("    [");
        for j in 0..m.cols() {
            let z = m.get(i, j);
            let sep = if j == 0 { "" } else { ", " };
            if z.im.abs() < 1e-14 * (1.0 + z.re.abs()) {
                let _ = write!(out, "{sep}{:.6}", z.re);
            } else {
                let _ = write!(out, "{sep}{:.6}{:+.6}i", z.re, z.im);
            }
        }
        out.push_str("]\n");
    }
}

fn compute(path: &Path, x: Option<&Path>, seed: u64, tol: Tol, json: bool) -> Result<Output, Failure> {
    let a = read_matrix(path)?;
    let x = x.map(read_matrix).transpose()?;
    let r = inverse_report(&a, x.as_ref(), seed, tol)?;
    let ok = r.all_ok();
    if json {
        return Ok(Output { text: to_json(&r), ok });
    }
    let f = r.fingerprint;
    let mut s = format!(
        "{}x{} rank {} index {}  (rank rtol {:e}, eq rtol {:e})\n",
        f.rows, f.cols, f.rank, f.index, tol.rank_rtol, tol.eq_rtol
    );
    let _ = writeln!(s, "X: {} left member, Z: sampled right member", if r.x.supplied { "supplied" } else { "sampled" });
    for e in &r.inverses {
        let _ = writeln!(s, "{:<14} residual {:.2e}  {}", e.name, e.residual, if e.ok { "ok" } else { "FAILED" });
        fmt_matrix(&mut s, &e.matrix);
    }
    let _ = writeln!(s, "classes: {}", serde_json::to_string(&r.classes).unwrap());
    Ok(Output { text: s, ok })
}

fn classify(path: &Path, x: Option<&Path>, seed: u64, tol: Tol, json: bool) -> Result<Output, Failure> {
    let a = read_matrix(path)?;
    let x = x.map(read_matrix).transpose()?;
    let r = class_report(&a, x.as_ref(), seed, tol)?;
    let ok = r.checks.all_agree();
    if json {
        return Ok(Output { text: to_json(&r), ok });
    }
    let f = r.fingerprint;
    let mut s = format!("{}x{} rank {} index {}\n", f.rows, f.cols, f.rank, f.index);
    let _ = writeln!(s, "classes: {}", serde_json::to_string(&r.classes).unwrap());
    let c = &r.checks;
    let rows: [(&str, bool, String); 6] = [
        ("prop22", c.prop22.agree(), serde_json::to_string(&c.prop22).unwrap()),
        ("prop-mp", c.prop_mp.agree(), serde_json::to_string(&c.prop_mp).unwrap()),
        ("wmpd-mp", c.wmpd_mp.agree(), serde_json::to_string(&c.wmpd_mp).unwrap()),
        ("wmpd-wcmp", c.wmpd_wcmp.agree(), serde_json::to_string(&c.wmpd_wcmp).unwrap()),
        ("wcep", c.wcep.agree(), serde_json::to_string(&c.wcep).unwrap()),
        ("main", c.main.agree(), serde_json::to_string(&c.main).unwrap()),
    ];
    for (name, agree, rec) in rows {
        let _ = writeln!(s, "{name:<10} {}  {rec}", if agree { "agree" } else { "DISAGREE" });
    }
    Ok(Output { text: s, ok })
}

#[derive(Serialize)]
struct PairCheck {
    suite: Suite,
    passed: bool,
    out_of_regime: bool,
    detail: serde_json::Value,
}

fn verify_pair(suite: Suite, a: &Mat, x: &Mat, tol: Tol, json: bool) -> Result<Output, Failure> {
    let checks: Vec<PairCheck> = run_on_pair(suite, a, x, tol)
        .into_iter()
        .map(|(suite, r)| match r {
            Ok((passed, out_of_regime, detail)) => PairCheck {
                suite,
                passed,
                out_of_regime,
                detail,
            },
            Err(e) => PairCheck {
                suite,
                passed: false,
                out_of_regime: false,
                detail: serde_json::Value::String(e.to_string()),
            },
        })
        .collect();
    let ok = checks.iter().all(|c| c.passed);
    if json {
        return Ok(Output { text: to_json(&checks), ok });
    }
    let mut s = String::new();
    for c in &checks {
        let status = if !c.passed {
            "FAIL"
        } else if c.out_of_regime {
            "pass (index 0, outside the ind=1 statement)"
        } else {
            "pass"
        };
        let _ = writeln!(s, "{:<14} {status}  {}", c.suite.name(), c.detail);
    }
    Ok(Output { text: s, ok })
}

fn verify(suite: Suite, cfg: &SuiteConfig, json: bool) -> Output {
    let reports = run_suite(suite, cfg);
    let ok = reports.iter().all(|r| r.ok());
    if json {
        return Output { text: to_json(&reports), ok };
    }
    let mut s = String::new();
    for r in &reports {
        let _ = writeln!(
            s,
            "{:<14} {}  {}/{} passed, {} outside regime",
            r.suite.name(),
            if r.ok() { "PASS" } else { "FAIL" },
            r.passed,
            r.trials,
            r.out_of_regime
        );
        for f in &r.failures {
            let _ = writeln!(s, "  counterexample: {}", serde_json::to_string(f).unwrap());
        }
    }
    Output { text: s, ok }
}

#[derive(Serialize)]
struct Sampled {
    seed: u64,
    matrix: Mat,
    certificate: WdCertificate,
}

fn sample(path: &Path, side: Side, seed: u64, count: usize, tol: Tol) -> Result<Output, Failure> {
    let a = read_matrix(path)?;
    let mut members = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let s = seed.wrapping_add(i);
        let matrix = sample_mrwd(&a, side, s, tol)?;
        let certificate = certify_mrwd(&a, &matrix, side, tol)?.into_result()?;
        members.push(Sampled {
            seed: s,
            matrix,
            certificate,
        });
    }
    Ok(Output {
        text: to_json(&members),
        ok: true,
    })
}

fn tolerance(cli: &Cli) -> Result<Tol, Failure> {
    let mut tol = Tol::default();
    if let Some(e) = cli.tol_eq {
        tol = tol.with_eq(e)?;
    }
    if let Some(r) = cli.tol_rank {
        tol = tol.with_rank(r)?;
    }
    Ok(tol)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Compute { path, x, seed } => compute(path, x.as_deref(), *seed, tol, cli.json),
        Command::Classify { path, x, seed } => classify(path, x.as_deref(), *seed, tol, cli.json),
        Command::Verify {
            suite,
            n,
            size,
            seed,
            a,
            x,
            fixture,
        } => {
            let suite: Suite = suite.parse().map_err(|_| {
                let known: Vec<&str> = Suite::INDIVIDUAL.iter().map(|s| s.name()).collect();
                Failure::Input(format!("unknown suite `{suite}` (known: {}, all)", known.join(", ")))
            })?;
            if let Some(name) = fixture {
                let f = fixtures::by_name(name).ok_or_else(|| {
                    let known: Vec<&str> = fixtures::all().iter().map(|f| f.name).collect();
                    Failure::Input(format!("unknown fixture `{name}` (known: {})", known.join(", ")))
                })?;
                return verify_pair(suite, &f.a, &f.x, tol, cli.json);
            }
            if let Some(a) = a {
                let a = read_matrix(a)?;
                let x = match x {
                    Some(p) => read_matrix(p)?,
                    None => sample_mrwd(&a, Side::Left, *seed, tol)?,
                };
                return verify_pair(suite, &a, &x, tol, cli.json);
            }
            let cfg = SuiteConfig {
                trials: *n,
                size: *size,
                seed: *seed,
                tol,
            };
            Ok(verify(suite, &cfg, cli.json))
        }
        Command::Sample {
            path,
            side,
            seed,
            count,
        } => sample(path, (*side).into(), *seed, *count, tol),
    }
}

fn main() -> ExitCode {
    // Usage errors are input errors (1); clap's own code 2 means validation here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (output, code) = match run(&cli) {
        Ok(o) => {
            let code = if o.ok { 0 } else { 2 };
            (o.text, code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("validation failed: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &output) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{output}"),
    }
    if code != 0 {
        eprintln!("validation failed");
    }
    ExitCode::from(code)
}
