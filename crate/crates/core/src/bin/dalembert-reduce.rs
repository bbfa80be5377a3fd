use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dalembert_reduce::compat::Case;
use dalembert_reduce::frame::named_frame;
use dalembert_reduce::problem::{run_catalog_report, run_compat, run_lemmas, run_lift, run_reduce, ProblemFile};
use dalembert_reduce::report::Report;
use dalembert_reduce::symbolic::DEFAULT_SEED;
use dalembert_reduce::{parse, Error, SamplePlan, VariableSpace};

/// Verify two-variable reductions of the wave equation □u = F(u).
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Seed for the sampled identity tests.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count per identity test.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Profile, classify and reduce an ansatz pair.
    Reduce {
        #[arg(long, value_name = "FILE")]
        problem: PathBuf,
        #[arg(long, default_value = "standard", value_parser = ["standard", "boosted"])]
        frame: String,
    },
    /// Check the compatibility conditions of one canonical case.
    CheckCompat {
        #[arg(long)]
        case: Option<Case>,
        #[arg(long, value_name = "FILE")]
        problem: PathBuf,
    },
    /// Mixed-Hessian determinant, minor sums and trace identities.
    Lemmas {
        #[arg(long, value_name = "FILE")]
        problem: PathBuf,
        #[arg(long, value_name = "K")]
        kmax: usize,
    },
    /// The built-in example catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Lift a solution of the reduced equation and check □u - F(u).
    Lift {
        #[arg(long, value_name = "FILE")]
        problem: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Run {
        #[arg(long, default_value = "standard", value_parser = ["standard", "boosted"])]
        frame: String,
        /// Free function Φ(u) for entries that take one.
        #[arg(long, value_name = "EXPR")]
        phi: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let mut plan = SamplePlan::default().with_seed(cli.seed);
    if let Some(n) = cli.samples {
        plan = plan.with_count(n);
    }
    plan.validate()?;
    match &cli.command {
        Command::Reduce { problem, frame } => run_reduce(&ProblemFile::read(problem)?, &named_frame(frame)?, &plan),
        Command::CheckCompat { case, problem } => run_compat(&ProblemFile::read(problem)?, *case, &plan),
        Command::Lemmas { problem, kmax } => run_lemmas(&ProblemFile::read(problem)?, *kmax, &plan),
        Command::Lift { problem } => run_lift(&ProblemFile::read(problem)?, &plan),
        Command::Catalog { action: CatalogAction::Run { frame, phi } } => {
            let phi = phi.as_deref().map(|t| parse(t, &VariableSpace::default())).transpose()?;
            run_catalog_report(&named_frame(frame)?, phi.as_ref(), &plan)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", report.text());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json_string()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
