//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{self, CliResult, EvalArgs, Report, SpecArgs, Status};

#[derive(Parser, Debug)]
#[command(name = "qreduce", version, about = "q-polynomial and q-rational reduction of q-hypergeometric multipliers")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `key: value`
    Text,
    /// `key=value`
    Kv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduce a polynomial multiplier modulo the difference space of (a, b).
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Reduce against a shift pair, producing a rational remainder p̃/D.
    RationalReduce {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// q-Gosper representation (a', b', c) of the quotient a/b.
    GosperRep {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Solve a(x)g(Qx) − b(x/Q)g(x) = c(x) for a Laurent polynomial g.
    GosperSolve {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Decide whether rnum/rden times the term is summable.
    Summable {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        rnum: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        rden: String,
        #[arg(long, default_value_t = 1)]
        step: u32,
    },
    /// Derive a new identity from a base identity file.
    Generate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long)]
        n1: u32,
        #[arg(long)]
        n2: u32,
        #[arg(long)]
        out: PathBuf,
        /// Name of the derived identity (defaults to the output file stem).
        #[arg(long)]
        name: Option<String>,
    },
    /// Re-check a derivation file's certificate and right-hand side.
    Verify {
        #[arg(long)]
        derivation: PathBuf,
    },
    /// Evaluate both sides of an identity numerically.
    Eval {
        #[arg(long)]
        identity: PathBuf,
        #[arg(long, default_value = "1/2")]
        q: String,
        #[arg(long, default_value_t = 128)]
        terms: usize,
        #[arg(long, default_value_t = 256)]
        bits: usize,
        /// Pass threshold 10^-D on the absolute difference.
        #[arg(long, default_value_t = 20)]
        tol_digits: usize,
    },
    /// Verify and evaluate every `.qid` file under a directory.
    Batch {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn dispatch(cmd: &Command) -> CliResult<Report> {
    use Command::*;
    match cmd {
        Reduce { a, b, p, step } => commands::reduce(a, b, p, *step),
        RationalReduce {
            a,
            b,
            a1,
            b1,
            n1,
            n2,
            p,
            step,
        } => {
            let spec = SpecArgs { a1, b1, n1: *n1, n2: *n2 };
            commands::rational_reduce_cmd(a, b, &spec, p, *step)
        }
        GosperRep { a, b, step } => commands::gosper_rep(a, b, *step),
        GosperSolve { a, b, c, step } => commands::gosper_solve_cmd(a, b, c, *step),
        Summable {
            a,
            b,
            rnum,
            rden,
            step,
        } => commands::summable(a, b, rnum, rden, *step),
        Generate {
            base,
            a1,
            b1,
            n1,
            n2,
            out,
            name,
        } => {
            let spec = SpecArgs { a1, b1, n1: *n1, n2: *n2 };
            commands::generate_cmd(base, &spec, out, name.as_deref())
        }
        Verify { derivation } => commands::verify(derivation),
        Eval {
            identity,
            q,
            terms,
            bits,
            tol_digits,
        } => {
            let args = EvalArgs {
                q0: commands::parse_rat(q)?,
                terms: *terms,
                bits: *bits,
                tol_digits: *tol_digits,
            };
            commands::eval(identity, &args)
        }
        Batch { dir, jobs } => commands::batch(dir, *jobs),
    }
}

/// Runs the driver and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Usage as i32 } else { 0 };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format == Format::Kv));
            report.status as i32
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.status() as i32
        }
    }
}
