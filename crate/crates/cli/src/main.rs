//! `shiftdim`: dimension groups, shift equivalence and graded K-theory
//! homomorphisms of nonnegative integer matrices, from the command line.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use shiftdim::Execution;

use io::{Failure, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "shiftdim", version, about = "Dimension groups and shift equivalence of nonnegative integer matrices")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Input file; repeat for commands taking two matrices.
    #[arg(long, short, global = true)]
    input: Vec<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Search bound (cone power, equality pair bound, zmod k range).
    #[arg(long, global = true)]
    bound: Option<u32>,
    #[arg(long, global = true, default_value_t = 3)]
    m_max: u32,
    #[arg(long, global = true, default_value_t = 3)]
    coeff_bound: u32,
    /// Worker threads for searches; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock time to the output (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order unit, eventual image and the Delta unit of a matrix.
    Dimgroup {
        /// Rational vector to test for membership in Delta_A.
        #[arg(long)]
        vector: Option<String>,
    },
    /// Equality of classes [v, k] and [w, l].
    Eq {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// Bounded positive cone test for [v, k].
    Cone {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Shift equivalence witnesses: verify, search, relaxed check
    #[command(subcommand)]
    Se(SeCommand),
    /// Strong shift equivalence chain check
    #[command(subcommand)]
    Sse(VerifyOnly),
    /// Whether R sends the order unit to the order unit.
    Unital,
    /// Lift a graded homomorphism description to a matrix R and a shift.
    Lift,
    /// K0 action of the bridging bimodule of R.
    Bridge {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Module shift equivalence check on bimodule data
    #[command(subcommand, name = "module-se")]
    ModuleSe(VerifyOnly),
    /// Aligned (optionally unital) module shift equivalence check
    #[command(subcommand)]
    Aligned(AlignedCommand),
    /// Cuntz splice at a vertex carrying a loop.
    Splice {
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Unital homomorphism obstruction between two matrices.
    Obstruct,
    /// Z/mZ-graded equality and intertwiner checks
    #[command(subcommand)]
    Zmod(ZmodCommand),
}

#[derive(Subcommand, Debug)]
enum SeCommand {
    /// Check a witness file {A, B, R, S, m}.
    Verify,
    /// Bounded search for a witness between two matrices.
    Search,
    /// Check {A, B, R, S, T, m, k}.
    Relaxed,
}

#[derive(Subcommand, Debug)]
enum VerifyOnly {
    /// Check the witness file.
    Verify,
}

#[derive(Subcommand, Debug)]
enum AlignedCommand {
    Verify {
        /// Also require R or S to be unital.
        #[arg(long)]
        unital: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ZmodCommand {
    /// Equality in the Z/mZ-graded group.
    Eq {
        #[arg(long)]
        modulus: u32,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long, default_value_t = 0)]
        l: u32,
    },
    /// A R B^(km) = B R for a given k, or the least k up to --bound.
    Check {
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        k: Option<u32>,
    },
}

impl Opts {
    fn execution(&self) -> Execution {
        match self.jobs {
            Some(1) => Execution::Sequential,
            _ => Execution::default(),
        }
    }
}

fn dispatch(cli: &Cli) -> io::Outcome<io::JobResult> {
    let o = &cli.opts;
    match &cli.command {
        Command::Dimgroup { vector } => commands::dimgroup(o, vector.as_deref()),
        Command::Eq { v, k, w, l } => commands::eq(o, v, *k, w, *l),
        Command::Cone { v, k } => commands::cone(o, v, *k),
        Command::Se(SeCommand::Verify) => commands::se_verify(o),
        Command::Se(SeCommand::Search) => commands::se_search(o),
        Command::Se(SeCommand::Relaxed) => commands::se_relaxed(o),
        Command::Sse(VerifyOnly::Verify) => commands::sse_verify(o),
        Command::Unital => commands::unital(o),
        Command::Lift => commands::lift(o),
        Command::Bridge { shift } => commands::bridge(o, *shift),
        Command::ModuleSe(VerifyOnly::Verify) => commands::module_se(o),
        Command::Aligned(AlignedCommand::Verify { unital }) => commands::aligned(o, *unital),
        Command::Splice { vertex } => commands::splice(o, *vertex),
        Command::Obstruct => commands::obstruct(o),
        Command::Zmod(ZmodCommand::Eq { modulus, v, k, w, l }) => commands::zmod_eq(o, *modulus, v, *k, w, *l),
        Command::Zmod(ZmodCommand::Check { modulus, k }) => commands::zmod_check(o, *modulus, *k),
    }
}

fn run(cli: &Cli) -> io::Outcome<io::JobResult> {
    let start = Instant::now();
    let mut job = match cli.opts.jobs {
        Some(0) => return Err(Failure::usage("--jobs must be at least 1")),
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::usage(e.to_string()))?
            .install(|| dispatch(cli))?,
        _ => dispatch(cli)?,
    };
    if cli.opts.timing {
        job.set("elapsed_ms", Value::from(start.elapsed().as_secs_f64() * 1e3));
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(job) => {
            let out = match cli.opts.format {
                Format::Json => job.to_json(),
                Format::Text => job.to_text(),
            };
            println!("{out}");
            ExitCode::from(job.exit as u8)
        }
        Err(f) => {
            eprintln!("shiftdim: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
