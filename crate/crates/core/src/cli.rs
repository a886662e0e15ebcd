//! Command-line surface. Every command writes line-delimited JSON to stdout
//! and diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a checked law failed, 2 invalid input,
//! 3 target not approximable.

use std::io::Write;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::approx::{approximate, Target};
use crate::arith::PrimePower;
use crate::congruence::{eq216_sweep, lemma1_scan};
use crate::error::Error;
use crate::family::FamilyParams;
use crate::obstruction::survey;
use crate::sum::{dedekind_fast, dedekind_naive, DedekindPair};
use crate::ScanInt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_APPROXIMABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dedekind",
    version,
    about = "Exact Dedekind sums and p-adic approximation witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate S(m, n) = 12 s(m, n)
    #[command(allow_negative_numbers = true)]
    Sum {
        m: BigInt,
        n: BigInt,
        /// Use direct summation (n <= 100000)
        #[arg(long)]
        naive: bool,
    },
    /// Find (m, n) with v_p(S(m, n) - target) >= precision
    Approx {
        #[arg(long)]
        prime: u64,
        /// Rational target, "[-]num[/den]"
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long)]
        precision: u32,
    },
    /// Check the residue classes of n S(m, n) and q S(r, q) exhaustively
    Verify {
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Check that no Dedekind sum lies in a 2-adic or 3-adic unit class
    Obstruct {
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// List members of the family n = q(m^2 + 1) with m ≡ r (mod q)
    Family {
        #[arg(long)]
        q: BigInt,
        #[arg(long)]
        r: BigInt,
        #[arg(long)]
        count: u64,
    },
}

fn emit(out: &mut dyn Write, value: &Value) {
    // a closed stdout is not worth a panic
    let _ = writeln!(out, "{value}");
}

fn fail(err: &mut dyn Write, code: i32, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    code
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation(_) | Error::TheoremViolation { .. } => EXIT_FAILED,
        Error::NotApproximable { .. } => EXIT_NOT_APPROXIMABLE,
        _ => EXIT_INVALID,
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match command {
        Command::Sum { m, n, naive } => cmd_sum(m, n, naive, out, err),
        Command::Approx {
            prime,
            target,
            precision,
        } => cmd_approx(prime, &target, precision, out, err),
        Command::Verify { max_n } => cmd_verify(max_n, out, err),
        Command::Obstruct { max_n } => cmd_obstruct(max_n, out, err),
        Command::Family { q, r, count } => cmd_family(q, r, count, out, err),
    }
}

fn cmd_sum(m: BigInt, n: BigInt, naive: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let pair = match DedekindPair::new(m.clone(), n.clone()) {
        Ok(p) => p,
        Err(Error::InvalidArgument(msg)) => return fail(err, EXIT_INVALID, msg),
        Err(e) => return fail(err, error_code(&e), e),
    };
    let s = if naive {
        match dedekind_naive(&pair) {
            Ok(s) => s,
            Err(e) => return fail(err, error_code(&e), e),
        }
    } else {
        dedekind_fast(&pair)
    };
    let n_s = s.scale(pair.n());
    emit(
        out,
        &json!({
            "m": m.to_string(),
            "n": n.to_string(),
            "S": s.to_string(),
            "nS": n_s.to_string(),
            "method": if naive { "naive" } else { "fast" },
        }),
    );
    EXIT_OK
}

fn cmd_approx(
    prime: u64,
    target: &str,
    precision: u32,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let target = match Target::parse(prime, target, precision) {
        Ok(t) => t,
        Err(e) => return fail(err, EXIT_INVALID, e),
    };
    match approximate(&target) {
        Ok(w) => {
            emit(out, &w.to_json());
            EXIT_OK
        }
        Err(Error::NotApproximable { p }) => {
            emit(
                out,
                &json!({"error": "NotApproximable", "reason": "Theorem 1", "p": p}),
            );
            EXIT_NOT_APPROXIMABLE
        }
        Err(e) => fail(err, error_code(&e), e),
    }
}

fn cmd_verify(max_n: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if max_n < 2 {
        return fail(
            err,
            EXIT_INVALID,
            format!("--max-n must be at least 2, got {max_n}"),
        );
    }
    let scan = match lemma1_scan::<ScanInt>(max_n) {
        Ok(s) => s,
        Err(e) => return fail(err, error_code(&e), e),
    };
    for report in &scan.failures {
        emit(out, &report.to_json());
    }
    let sweep = match eq216_sweep(max_n) {
        Ok(s) => s,
        Err(e) => return fail(err, error_code(&e), e),
    };
    for (r, q) in &sweep.failures {
        emit(out, &json!({"r": r, "q": q, "eq216": false}));
    }
    let clean = scan.failures.is_empty() && sweep.failures.is_empty();
    emit(
        out,
        &json!({
            "max_n": max_n,
            "pairs": scan.pairs,
            "lemma1_failures": scan.failures.len(),
            "eq216_cases": sweep.cases,
            "eq216_failures": sweep.failures.len(),
            "holds": if clean { "all" } else { "violated" },
        }),
    );
    if clean {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_obstruct(max_n: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if max_n < 2 {
        return fail(
            err,
            EXIT_INVALID,
            format!("--max-n must be at least 2, got {max_n}"),
        );
    }
    let report = match survey::<ScanInt>(max_n) {
        Ok(r) => r,
        Err(e) => return fail(err, error_code(&e), e),
    };
    for (m, n) in &report.violations {
        emit(out, &json!({"m": m, "n": n, "violation": true}));
    }
    emit(out, &report.to_json());
    if report.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_family(q: BigInt, r: BigInt, count: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if count == 0 {
        return fail(err, EXIT_INVALID, "--count must be at least 1");
    }
    let params = match PrimePower::from_int(&q).and_then(|pp| FamilyParams::new(pp, r)) {
        Ok(p) => p,
        Err(e) => return fail(err, EXIT_INVALID, e),
    };
    for value in params.values().take(count as usize) {
        match value {
            Ok(v) => emit(out, &v.to_json()),
            Err(e) => return fail(err, error_code(&e), e),
        }
    }
    EXIT_OK
}
