use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quatreg::suite::{check_config, configure_threads, run_suite, Report, SuiteConfig};
use quatreg::{list_catalog, Error};

/// Numerical checks of left-Cullen regularity for quaternionic functions.
#[derive(Parser)]
#[command(name = "quatreg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites described by a key = value configuration file.
    Run { config: PathBuf },
    /// List the standard catalog: id, flags, sampling domain.
    List,
    /// Run one suite on one function with default settings.
    Check {
        /// theorem1, lemma1, hyperholomorphy, fueter_theorem, integral or generalized
        suite: String,
        /// Catalog id such as power:3 or arctan_ex:1
        function: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Quadrature resolution for integral suites
        #[arg(long)]
        res: Option<usize>,
        /// jets, fd or both
        #[arg(long)]
        backend: Option<String>,
    },
}

fn config_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn finish(report: &Report, cfg: &SuiteConfig) -> ExitCode {
    let document = report.document();
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &document) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!(
                "wrote {} ({} records, {} unexpected)",
                path.display(),
                report.records.len(),
                report.unexpected()
            );
        }
        None => print!("{document}"),
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return config_error(e);
    }
    let cfg = match cli.command {
        Command::List => {
            print!("{}", list_catalog());
            return ExitCode::SUCCESS;
        }
        Command::Run { config } => {
            let text = match std::fs::read_to_string(&config) {
                Ok(t) => t,
                Err(e) => return config_error(Error::Config(format!("cannot read {}: {e}", config.display()))),
            };
            SuiteConfig::parse(&text)
        }
        Command::Check {
            suite,
            function,
            tol,
            seed,
            res,
            backend,
        } => check_config(&suite, &function, tol, seed, res, backend.as_deref()),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    match run_suite(&cfg) {
        Ok(report) => finish(&report, &cfg),
        Err(e) => config_error(e),
    }
}
