use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cmgeom::{DEtaFactor, RecurrenceKind};
use cmverify::{load_spec, run, Options, Suite};

/// Audits a contact metric manifold spec: frame, contact axioms, (k, mu)
/// identities, recurrence conditions. `<file>` is a path or the name of a
/// bundled spec (flat3, sphere3, example3d, example3d-vector).
#[derive(Parser, Debug)]
#[command(name = "cmverify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check suite.
    Check {
        suite: CheckSuite,
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Solve for unknown quantities.
    Solve {
        target: SolveTarget,
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Parametric walk through the bundled three-dimensional example.
    Pipeline {
        file: String,
        #[command(flatten)]
        common: Common,
    },
    /// Every suite that applies to the spec.
    All {
        file: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckSuite {
    Frame,
    Axioms,
    Identities,
    Theorems,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolveTarget {
    Recurrence,
    Kmu,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Full,
    Ricci,
    Phi,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Factor {
    #[default]
    Half,
    One,
}

#[derive(Args, Debug)]
struct Common {
    /// Recurrence kind; all applicable kinds when omitted.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Value of k, overriding any `declare k` in the spec.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Value of mu, overriding any `declare mu` in the spec.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample points for residual magnitudes.
    #[arg(long, default_value_t = 8)]
    points: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Convention for dη(X,Y).
    #[arg(long = "deta-factor", value_enum, default_value_t = Factor::Half)]
    deta_factor: Factor,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            kind: self.kind.map(|k| match k {
                Kind::Full => RecurrenceKind::Full,
                Kind::Ricci => RecurrenceKind::Ricci,
                Kind::Phi => RecurrenceKind::Phi,
            }),
            k: self.k.clone(),
            mu: self.mu.clone(),
            seed: self.seed,
            points: self.points,
            tol: self.tol,
            deta_factor: match self.deta_factor {
                Factor::Half => DEtaFactor::Half,
                Factor::One => DEtaFactor::One,
            },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, file, common) = match &cli.command {
        Command::Check { suite, file, common } => (
            match suite {
                CheckSuite::Frame => Suite::Frame,
                CheckSuite::Axioms => Suite::Axioms,
                CheckSuite::Identities => Suite::Identities,
                CheckSuite::Theorems => Suite::Theorems,
            },
            file,
            common,
        ),
        Command::Solve { target, file, common } => (
            match target {
                SolveTarget::Recurrence => Suite::Recurrence,
                SolveTarget::Kmu => Suite::Kmu,
            },
            file,
            common,
        ),
        Command::Pipeline { file, common } => (Suite::Pipeline, file, common),
        Command::All { file, common } => (Suite::All, file, common),
    };
    let result = load_spec(file).and_then(|text| run(suite, &text, &common.options()));
    match result {
        Ok(doc) => {
            match common.format {
                Format::Text => print!("{}", doc.to_text()),
                Format::Json => println!("{}", doc.to_json()),
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
