//! Command-line front end: normalize expressions, apply quantum group
//! generators and braided operators, evaluate Maxwell columns, inspect the
//! R-matrix layer, and run the verification suites.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
//! parse errors.

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use qmink::algebra::AlgebraId;
use qmink::expr::parse_poly;
use qmink::fields::OpExpr;
use qmink::laplace::{maxwell, ModuleVector};
use qmink::linalg::Mat;
use qmink::qgroup::{act, ActionConfig, QGGen};
use qmink::rmatrix::{
    bc_operators, casimir, ch_relation, check_hecke, check_ybe, l_matrix, quantum_trace,
    skew_inverse, split_casimir_l, verify_skew_inverse, Braiding,
};
use qmink::scalar::Scalar;
use qmink::verify::{run_verify, Suite, VerifyConfig};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qmink",
    about = "Exact computation on the q-Minkowski space algebra, q-hyperboloids and their braided Laplace/Maxwell operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Algebra: r4, r3, h2, sl2, hyperboloid, so3, sphere, minkowski, r4c
    #[arg(long, default_value = "r3")]
    algebra: String,
    /// Integer coproduct parameter for the quantum group action
    #[arg(long, default_value_t = 0)]
    theta: i64,
    /// Evaluate scalars at a rational point, e.g. --eval q=3/2 or --eval q=2,r=1
    #[arg(long)]
    eval: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an expression to its canonical normal form
    Normalize {
        #[command(flatten)]
        common: CommonOpts,
        expr: String,
    },
    /// Apply a quantum group generator (--gen) or a braided operator (--op)
    Act {
        #[command(flatten)]
        common: CommonOpts,
        /// Quantum group generator: K, Kinv, X, Y
        #[arg(long, conflicts_with = "op")]
        gen: Option<String>,
        /// Braided operator: Bq, Hq, Cq, calB, calH, calC, dr, db, dh, dc, dl
        #[arg(long)]
        op: Option<String>,
        expr: String,
    },
    /// Apply the Maxwell operator to a column of expressions
    Maxwell {
        #[command(flatten)]
        common: CommonOpts,
        /// Column entries separated by `;`
        #[arg(long)]
        column: String,
    },
    /// R-matrix layer checks and data
    Rmatrix {
        /// One of: ybe, hecke, skew-inverse, traces, ch
        #[arg(long)]
        check: String,
    },
    /// Run a verification suite and emit a JSON report
    Verify {
        /// Suite: classical, quantum, all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Comma-separated coproduct parameters, e.g. 0,1,2
        #[arg(long, default_value = "0,1,2")]
        theta: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the JSON report to this path (stdout otherwise)
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}

fn usage_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_algebra(name: &str) -> Result<AlgebraId, String> {
    AlgebraId::parse_name(name).ok_or_else(|| format!("unknown algebra `{name}`"))
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n
        .trim()
        .parse()
        .map_err(|_| format!("bad rational `{s}`"))?;
    let d: num_bigint::BigInt = d
        .trim()
        .parse()
        .map_err(|_| format!("bad rational `{s}`"))?;
    if d == 0.into() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_eval(arg: &str) -> Result<(BigRational, BigRational), String> {
    let mut q0 = None;
    let mut r0 = None;
    for part in arg.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("bad --eval component `{part}`"))?;
        match k.trim() {
            "q" => q0 = Some(parse_rational(v)?),
            "r" => r0 = Some(parse_rational(v)?),
            other => return Err(format!("unknown --eval variable `{other}`")),
        }
    }
    let q0 = q0.ok_or("--eval must set q")?;
    Ok((q0, r0.unwrap_or_else(BigRational::one)))
}

use num_traits::One;

fn print_poly(p: &qmink::algebra::NCPoly, eval: &Option<String>) -> Result<(), String> {
    match eval {
        None => println!("{p}"),
        Some(arg) => {
            let (q0, r0) = parse_eval(arg)?;
            let mut out = qmink::algebra::NCPoly::zero(p.algebra());
            for (m, c) in p.terms() {
                let v = c.eval(&q0, &r0).map_err(|e| e.to_string())?;
                out.add_term(*m, Scalar::from_bigrational(&v));
            }
            println!("{out}");
        }
    }
    Ok(())
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Normalize { common, expr } => {
            let alg = parse_algebra(&common.algebra)?;
            let p = parse_poly(&expr, alg).map_err(|e| e.to_string())?;
            print_poly(&p, &common.eval)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Act {
            common,
            gen,
            op,
            expr,
        } => {
            let alg = parse_algebra(&common.algebra)?;
            let f = parse_poly(&expr, alg).map_err(|e| e.to_string())?;
            let cfg = ActionConfig {
                theta: common.theta,
            };
            let out = match (gen, op) {
                (Some(g), None) => {
                    let g = QGGen::parse_name(&g).ok_or(format!("unknown generator `{g}`"))?;
                    act(g, &f, cfg).map_err(|e| e.to_string())?
                }
                (None, Some(o)) => {
                    let o = OpExpr::parse_name(&o).ok_or(format!("unknown operator `{o}`"))?;
                    o.eval(&f, cfg).map_err(|e| e.to_string())?
                }
                _ => return Err("exactly one of --gen or --op is required".into()),
            };
            print_poly(&out, &common.eval)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Maxwell { common, column } => {
            let alg = parse_algebra(&common.algebra)?;
            let cfg = ActionConfig {
                theta: common.theta,
            };
            let entries = column
                .split(';')
                .map(|s| parse_poly(s.trim(), alg))
                .collect::<qmink::Result<Vec<_>>>()
                .map_err(|e| e.to_string())?;
            let v = ModuleVector::new(alg, entries).map_err(|e| e.to_string())?;
            let out = maxwell(alg, &v, cfg).map_err(|e| e.to_string())?;
            for (i, entry) in out.entries().iter().enumerate() {
                print!("[{i}] ");
                print_poly(entry, &common.eval)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rmatrix { check } => run_rmatrix(&check),
        Command::Verify {
            suite,
            max_degree,
            theta,
            seed,
            report,
        } => {
            let suite = Suite::parse_name(&suite).ok_or(format!("unknown suite `{suite}`"))?;
            let thetas = theta
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| format!("bad theta `{t}`"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = VerifyConfig {
                suite,
                max_degree,
                thetas,
                seed,
            };
            let doc = run_verify(&cfg);
            let json = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            match report {
                Some(path) => {
                    std::fs::write(&path, &json).map_err(|e| e.to_string())?;
                    for c in &doc.checks {
                        println!("{:?} {}", c.status, c.check_id);
                    }
                    println!("report written to {}", path.display());
                }
                None => println!("{json}"),
            }
            if doc.exit_code() == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn run_rmatrix(check: &str) -> Result<ExitCode, String> {
    let pass = |ok: bool| {
        println!("{}", if ok { "pass" } else { "fail" });
        if ok {
            Ok(ExitCode::SUCCESS)
        } else {
            Ok(ExitCode::from(1))
        }
    };
    match check {
        "ybe" => pass(check_ybe(&Braiding::standard())),
        "hecke" => pass(check_hecke(&Braiding::standard(), &Scalar::q())),
        "skew-inverse" => {
            let r = Braiding::standard();
            let psi = skew_inverse(&r).map_err(|e| e.to_string())?;
            let ok = verify_skew_inverse(&r, &psi);
            let (b, c) = bc_operators(&psi);
            for i in 0..4 {
                for j in 0..4 {
                    println!("psi[{i}][{j}] {}", psi.mat()[(i, j)]);
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    println!("B[{i}][{j}] {}", b[(i, j)]);
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    println!("C[{i}][{j}] {}", c[(i, j)]);
                }
            }
            pass(ok)
        }
        "traces" => {
            let l = l_matrix();
            let tr1 = quantum_trace(&l).map_err(|e| e.to_string())?;
            let tr2 =
                quantum_trace(&l.mul(&l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            println!("Tr_q L = {tr1}");
            println!("Tr_q L^2 = {tr2}");
            let lgen = qmink::algebra::NCPoly::generator_named(AlgebraId::R4, "l")
                .map_err(|e| e.to_string())?;
            let ok1 = tr1.scale(&Scalar::q_pow(2)) == lgen;
            let ok2 = tr2.scale(&Scalar::q_pow(2)) == casimir(AlgebraId::R4);
            println!("q^2 Tr_q L = l: {}", if ok1 { "pass" } else { "fail" });
            println!(
                "q^2 Tr_q L^2 = Cas_gl: {}",
                if ok2 { "pass" } else { "fail" }
            );
            pass(ok1 && ok2)
        }
        "ch" => {
            let mut all_ok = true;
            for alg in [AlgebraId::R3, AlgebraId::H2] {
                let l = split_casimir_l(&Mat::identity(3), alg).map_err(|e| e.to_string())?;
                match ch_relation(&l) {
                    Ok((c2, c1, c0)) => {
                        println!("{}: c2 = {c2}", alg.cli_name());
                        println!("{}: c1 = {c1}", alg.cli_name());
                        println!("{}: c0 = {c0}", alg.cli_name());
                    }
                    Err(e) => {
                        println!("{}: no central solution ({e})", alg.cli_name());
                        all_ok = false;
                    }
                }
            }
            pass(all_ok)
        }
        other => Err(format!("unknown rmatrix check `{other}`")),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => usage_err(msg),
    }
}
