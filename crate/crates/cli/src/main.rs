//! Command line front end for the algebra library.
//!
//! - `normalize`, `mul`, and `commutator` parse expressions in a chosen
//!   system and print canonical normal forms with deterministic term order.
//! - `eval` parses a scalar expression and prints its value under a
//!   parameter specialization.
//! - `verify` runs a named check suite, prints per-suite counts and any
//!   failing entries, and optionally writes a structured report.
//! - Exit codes: 0 success, 1 at least one failed check, 2 usage, parse,
//!   or specialization error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use heisenweyl_core::freealg::parser::{parse_expression, parse_scalar};
use heisenweyl_core::suites;
use heisenweyl_core::{
    apq_indep_gwa, hpq_as_gwa, Alphabet, BasePoly, FreeElement, GWAData, GWAElement, HpqRing,
    Letter, LocalElement, LocalRing, PBWElement, Scalar, Specialization, SuiteConfig, SuiteName,
    TwistChoice,
};

#[derive(Parser)]
#[command(name = "heisenweyl", version, about = "Exact computation in a two-parameter quantum Heisenberg algebra", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression.
    Normalize {
        /// Expression such as "y*x^2" or "(x + y)^2".
        expr: String,
        /// Algebra to work in: hpq, local, gwa:hpq, or gwa:apq.
        #[arg(long, default_value = "hpq")]
        system: String,
    },
    /// Multiply two expressions and print the normal form of the product.
    Mul {
        lhs: String,
        rhs: String,
        #[arg(long, default_value = "hpq")]
        system: String,
    },
    /// Print the commutator [f, g] = f*g - g*f.
    Commutator {
        lhs: String,
        rhs: String,
        #[arg(long, default_value = "hpq")]
        system: String,
    },
    /// Evaluate a scalar expression under a parameter specialization.
    Eval {
        /// Scalar expression; quantum integers are written "[4]_{p,q}".
        expr: String,
        /// generic, oneparam:R,S, cyclotomic:N:EP,EQ, or numeric:P,Q.
        #[arg(long, default_value = "generic")]
        spec: String,
    },
    /// Run a named verification suite and report the outcomes.
    Verify {
        /// Suite name, or "all" for every suite in canonical order.
        #[arg(default_value = "all")]
        suite: String,
        /// Parameter mode, same grammar as eval's --spec.
        #[arg(long, default_value = "generic")]
        mode: String,
        /// Write the line-delimited report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker thread cap; 0 uses the rayon default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Diamond suite only: z-x coefficient, pinv or p.
        #[arg(long)]
        pprime: Option<String>,
        /// Reorder-identity exponent range.
        #[arg(long)]
        range: Option<i64>,
        /// Fock monomial degree bound.
        #[arg(long)]
        degree: Option<u32>,
        /// Virasoro index window.
        #[arg(long)]
        virasoro: Option<i64>,
        /// Module basis window.
        #[arg(long)]
        window: Option<i64>,
        /// Oscillator matrix dimension.
        #[arg(long)]
        matrix: Option<usize>,
    },
}

/// Which algebra an expression command works in.
enum System {
    Hpq,
    Local,
    GwaHpq,
    GwaApq,
}

impl System {
    fn parse(s: &str) -> Result<System, String> {
        match s {
            "hpq" => Ok(System::Hpq),
            "local" => Ok(System::Local),
            "gwa:hpq" => Ok(System::GwaHpq),
            "gwa:apq" => Ok(System::GwaApq),
            other => Err(format!(
                "unknown system {other:?}; expected hpq, local, gwa:hpq, or gwa:apq"
            )),
        }
    }

    /// Generator alphabet the parser should accept for this system.
    fn alphabet(&self) -> Alphabet {
        match self {
            System::Hpq => Alphabet::xyz(),
            System::Local => Alphabet::xyz_localized(),
            System::GwaHpq => Alphabet::new(&['x', 'y', 'c', 'z'], &[false; 4]),
            System::GwaApq => Alphabet::xyzw(),
        }
    }
}

/// Expression commands share one shape: parse in the system's alphabet,
/// fold each word through the system's multiplication, then combine.
enum Op {
    Normalize,
    Mul,
    Commutator,
}

fn expression_command(
    op: Op,
    lhs: &str,
    rhs: Option<&str>,
    system: &str,
) -> Result<String, String> {
    let system = System::parse(system)?;
    let alphabet = system.alphabet();
    let parse = |src: &str| -> Result<FreeElement, String> {
        parse_expression(src, &alphabet).map_err(|e| format!("parse {src:?}: {e}"))
    };
    let a = parse(lhs)?;
    let b = match rhs {
        Some(src) => Some(parse(src)?),
        None => None,
    };
    match system {
        System::Hpq => {
            let h = HpqRing::standard();
            let fa = fold_hpq(&a, &h);
            Ok(match (op, b) {
                (Op::Normalize, _) => fa,
                (Op::Mul, Some(fb)) => h.mul(&fa, &fold_hpq(&fb, &h)),
                (Op::Commutator, Some(fb)) => h.commutator(&fa, &fold_hpq(&fb, &h)),
                _ => unreachable!("binary ops always receive two expressions"),
            }
            .to_string())
        }
        System::Local => {
            let lr = LocalRing::standard();
            let fa = fold_local(&a, &lr);
            Ok(match (op, b) {
                (Op::Normalize, _) => fa,
                (Op::Mul, Some(fb)) => lr.mul(&fa, &fold_local(&fb, &lr)),
                (Op::Commutator, Some(fb)) => lr.commutator(&fa, &fold_local(&fb, &lr)),
                _ => unreachable!("binary ops always receive two expressions"),
            }
            .to_string())
        }
        System::GwaHpq | System::GwaApq => {
            let data = match system {
                System::GwaHpq => hpq_as_gwa().0,
                _ => apq_indep_gwa().0,
            };
            let fa = fold_gwa(&a, &data)?;
            let out = match (op, b) {
                (Op::Normalize, _) => fa,
                (Op::Mul, Some(fb)) => data.mul(&fa, &fold_gwa(&fb, &data)?),
                (Op::Commutator, Some(fb)) => data.commutator(&fa, &fold_gwa(&fb, &data)?),
                _ => unreachable!("binary ops always receive two expressions"),
            };
            Ok(data.display(&out))
        }
    }
}

fn fold_hpq(e: &FreeElement, h: &HpqRing) -> PBWElement {
    let mut out = PBWElement::zero();
    for (w, c) in e.terms() {
        let mut acc = PBWElement::one();
        for l in &w.0 {
            let g = match l.rank {
                0 => PBWElement::x(),
                1 => PBWElement::y(),
                _ => PBWElement::z(),
            };
            acc = h.mul(&acc, &g);
        }
        out = out.add_ref(&acc.scale(c));
    }
    out
}

fn fold_local(e: &FreeElement, lr: &LocalRing) -> LocalElement {
    let mut out = LocalElement::zero();
    for (w, c) in e.terms() {
        let mut acc = LocalElement::one();
        for l in &w.0 {
            let e = if l.inv { -1 } else { 1 };
            let g = match l.rank {
                0 => LocalElement::monomial(e, 0, 0),
                1 => LocalElement::monomial(0, 1, 0),
                _ => LocalElement::monomial(0, 0, e),
            };
            acc = lr.mul(&acc, &g);
        }
        out = out.add_ref(&acc.scale(c));
    }
    out
}

/// Ranks 0 and 1 are the ladder pair; later ranks are base-ring
/// generators in declaration order.
fn gwa_letter(data: &GWAData<Scalar>, l: Letter) -> Result<GWAElement<Scalar>, String> {
    match l.rank {
        0 => Ok(data.x(0)),
        1 => Ok(data.y(0)),
        r => {
            let gen = BasePoly::gen(data.nvars(), (r - 2) as usize);
            let poly = if l.inv {
                gen.inv().ok_or("base generator is not invertible here")?
            } else {
                gen
            };
            Ok(data.base(poly))
        }
    }
}

fn fold_gwa(e: &FreeElement, data: &GWAData<Scalar>) -> Result<GWAElement<Scalar>, String> {
    let mut out = GWAElement::zero();
    for (w, c) in e.terms() {
        let mut acc = data.one();
        for l in &w.0 {
            acc = data.mul(&acc, &gwa_letter(data, *l)?);
        }
        out = out.add_ref(&acc.scale(c));
    }
    Ok(out)
}

fn cmd_eval(expr: &str, spec: &str) -> Result<String, String> {
    let scalar = parse_scalar(expr).map_err(|e| format!("parse {expr:?}: {e}"))?;
    let mode: Specialization = spec.parse()?;
    let value = mode.apply(&scalar).map_err(|e| e.to_string())?;
    Ok(value.to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    mode: &str,
    report_path: Option<&PathBuf>,
    jobs: usize,
    pprime: Option<&str>,
    range: Option<i64>,
    degree: Option<u32>,
    virasoro: Option<i64>,
    window: Option<i64>,
    matrix: Option<usize>,
) -> Result<ExitCode, String> {
    let suite: SuiteName = suite.parse()?;
    let mut cfg = SuiteConfig::new(suite);
    cfg.mode = mode.parse()?;
    cfg.jobs = jobs;
    if let Some(s) = pprime {
        cfg.pprime = Some(s.parse::<TwistChoice>()?);
    }
    if let Some(v) = range {
        cfg.bounds.range = v;
    }
    if let Some(v) = degree {
        cfg.bounds.degree = v;
    }
    if let Some(v) = virasoro {
        cfg.bounds.virasoro = v;
    }
    if let Some(v) = window {
        cfg.bounds.window = v;
    }
    if let Some(v) = matrix {
        cfg.bounds.matrix = v;
    }
    let report = suites::run(&cfg)?;
    for entry in report.failures() {
        let witness = entry.witness.as_deref().unwrap_or("-");
        println!(
            "FAIL {} {} [{}]: {}",
            entry.suite, entry.check, entry.params, witness
        );
    }
    for (suite, passed, failed) in report.suite_counts() {
        println!("{suite}: {passed} passed, {failed} failed");
    }
    println!("{}", report.summary());
    if let Some(path) = report_path {
        std::fs::write(path, report.serialize())
            .map_err(|e| format!("write report {}: {e}", path.display()))?;
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Normalize { expr, system } => {
            println!("{}", expression_command(Op::Normalize, expr, None, system)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mul { lhs, rhs, system } => {
            println!(
                "{}",
                expression_command(Op::Mul, lhs, Some(rhs), system)?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Commutator { lhs, rhs, system } => {
            println!(
                "{}",
                expression_command(Op::Commutator, lhs, Some(rhs), system)?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { expr, spec } => {
            println!("{}", cmd_eval(expr, spec)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            mode,
            report,
            jobs,
            pprime,
            range,
            degree,
            virasoro,
            window,
            matrix,
        } => cmd_verify(
            suite,
            mode,
            report.as_ref(),
            *jobs,
            pprime.as_deref(),
            *range,
            *degree,
            *virasoro,
            *window,
            *matrix,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
