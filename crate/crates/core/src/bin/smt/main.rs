mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use smt_core::Error;

#[derive(Parser, Debug)]
#[command(name = "smt", version, about = "Standard monomial computations for orthogonal invariants")]
pub struct Cli {
    /// Seed for every random choice; echoed in the output.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    S,
    Dt,
    Rd,
    Kp,
}

#[derive(Args, Debug, Clone)]
pub struct Sizes {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Express a word in the standard monomial basis.
    Straighten {
        #[arg(long, value_enum, default_value_t = FamilyArg::S)]
        family: FamilyArg,
        #[command(flatten)]
        sizes: Sizes,
        /// JSON array of symbols, e.g. '[{"t":"u","I":[1,4]},{"t":"u","I":[2,3]}]'.
        #[arg(long)]
        word: String,
        /// Substitute catalog relations instead of solving directly (S only).
        #[arg(long)]
        rewrite: bool,
    },
    /// List the standard words of degree d.
    Enumerate {
        #[arg(long, value_enum, default_value_t = FamilyArg::S)]
        family: FamilyArg,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long)]
        d: usize,
    },
    /// Value of a Hilbert function at degree d.
    Hilbert {
        #[arg(long, value_enum, default_value_t = FamilyArg::S)]
        family: FamilyArg,
        #[command(flatten)]
        sizes: Sizes,
        #[arg(long)]
        d: usize,
    },
    /// Generators and relations.
    Presentation {
        #[arg(long, value_enum, default_value_t = FamilyArg::S)]
        family: FamilyArg,
        #[command(flatten)]
        sizes: Sizes,
    },
    /// Checks on the SO_n invariants.
    Invariants {
        #[command(subcommand)]
        op: InvOp,
    },
    /// Symmetric determinantal varieties.
    Detvar {
        #[command(subcommand)]
        op: DetOp,
    },
    /// Doset and doset-algebra checks.
    Doset {
        #[command(subcommand)]
        op: DosetOp,
    },
    /// SL₂ trace invariants.
    Sl2 {
        #[command(subcommand)]
        op: Sl2Op,
    },
    /// Run every property suite at the given sizes.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum InvOp {
    /// u(I)u(J) = p(I,J) for all I, J.
    Lemma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Words of length ≤ 2 under random orthogonal samples.
    Invariance {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// A random rational orthogonal matrix.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        det: i32,
    },
}

#[derive(Subcommand, Debug)]
pub enum DetOp {
    /// Jacobian rank against ½(t−1)(2m+2−t).
    Dim {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
    /// Jacobian ranks of the minors at generic and lower-rank points.
    Sing {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
    },
    /// Evaluation rank of the standard words of degree d.
    Independence {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum DosetOp {
    /// Doset and distributive lattice axioms.
    Axioms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Straightening axioms of a doset algebra on the degree-2 catalog.
    Dalg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Product in the discrete doset algebra.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Sl2Op {
    Trace2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
    Trace3 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        k: usize,
    },
    Transition {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    Basis {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// The two trace identities through θ.
    Theta {
        #[arg(long)]
        m: usize,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::TheoremViolation(_) | Error::IndependenceViolation(_) | Error::Sampling(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                for f in &out.failures {
                    eprintln!("{f}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
