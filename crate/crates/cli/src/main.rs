mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "rittkit", version, about = "Exact differential elimination toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A ring description plus a set of polynomials.
#[derive(Args, Debug, Clone)]
struct SetArgs {
    /// Ring description, e.g. `N=2,vars=y1,y2,params=u`.
    #[arg(long, default_value = "N=1,vars=y")]
    ring: String,

    /// A member of the set; repeat for several.
    #[arg(long = "set")]
    set: Vec<String>,

    /// File with one polynomial per line.
    #[arg(long)]
    set_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct SeedArgs {
    /// Random seed; the RITTKIT_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fully reduce a target against an autoreduced set and print the certificate.
    Reduce {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        target: String,
    },
    /// Compute a characteristic set of the given polynomials.
    Charset {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Decide saturation membership of a target.
    Member {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        target: String,
    },
    /// Run the coherence check on an autoreduced set.
    Coherent {
        #[command(flatten)]
        set: SetArgs,
    },
    /// Compute a witness, either for one step or for a presentation file.
    Witness {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, required_unless_present = "presentation")]
        target: Option<String>,
        /// Presentation in JSON; overrides the other inputs.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Specialize a system and run the consistency verifier.
    Check {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        target: String,
        /// Image of a parameter, e.g. `u=t1` or `u=(t1 + 1)/(t1^2)`; repeat for several.
        #[arg(long = "phi")]
        phi: Vec<String>,
        /// Generators of the target field; defaults to t1..tk with k = max(N, 1).
        #[arg(long, value_delimiter = ',')]
        tparams: Vec<String>,
    },
    /// Randomized specialization test of a witness.
    LiftTest {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        target: String,
        #[arg(long)]
        witness: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Wronskian of rational functions in `t`.
    Wronskian {
        /// A function; repeat for each column.
        #[arg(long = "f", required = true)]
        f: Vec<String>,
    },
    /// Fiber of `x - n` under `x -> x^2` in the difference ring (Q[x], x -> -x).
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        n: String,
    },
    /// Apply `x -> -x` to a polynomial in `x`.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Also decide whether `(poly)` is transformally prime.
        #[arg(long)]
        transprime: bool,
    },
    /// The degree-parity obstruction to lifting `x^2 -> target` into Q(y).
    DemoLiftfail {
        #[arg(long, default_value = "y", allow_hyphen_values = true)]
        target: String,
    },
}

fn seed(args: &SeedArgs) -> Result<u64, Failure> {
    match std::env::var("RITTKIT_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("RITTKIT_SEED is not an integer: `{v}`"))),
        Err(_) => Ok(args.seed),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Reduce { set, target } => commands::reduce(set, target),
        Command::Charset { set } => commands::charset(set),
        Command::Member { set, target } => commands::member(set, target),
        Command::Coherent { set } => commands::coherent(set),
        Command::Witness {
            set,
            target,
            presentation,
        } => commands::witness(set, target.as_deref(), presentation.as_deref()),
        Command::Check {
            set,
            target,
            phi,
            tparams,
        } => commands::check(set, target, phi, tparams),
        Command::LiftTest {
            set,
            target,
            witness,
            trials,
            seed: s,
        } => commands::lift_test(set, target, witness, *trials, seed(s)?),
        Command::Wronskian { f } => commands::wronskian(f),
        Command::Fiber { n } => commands::fiber(n),
        Command::Sigma { poly, transprime } => commands::sigma(poly, *transprime),
        Command::DemoLiftfail { target } => commands::demo_liftfail(target),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    match run(&cli) {
        Ok(out) => {
            if json {
                println!("{}", out.json_string());
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(f) => {
            if json {
                println!("{}", f.json_string());
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.exit)
        }
    }
}
