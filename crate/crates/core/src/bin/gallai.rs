use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gallai::constructions::{
    certify_no_mono_cycle_with_budget, CertificateReport, ConstructionSpec, Family,
};
use gallai::cycles::find_mono_cycle_with_budget;
use gallai::verify::{run_claim, run_suite, write_report, ClaimId, SuiteConfig};
use gallai::{
    decompose_full, gallai_partition, load_coloring, refine_connected, Color, ColoredKn, Error,
    DEFAULT_BUDGET,
};

/// Exit status for errors (bad input, I/O); 0..=2 carry command results.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gallai",
    version,
    about = "Gallai colorings: decomposition, cycle search, constructions, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gallai partition (or the full decomposition tree) of a coloring.
    Decompose {
        file: PathBuf,
        /// Recurse into every block and print the tree.
        #[arg(long)]
        full: bool,
        /// Refine so every between color spans the reduced graph.
        #[arg(long, conflicts_with = "full")]
        connected: bool,
    },
    /// Search for a monochromatic cycle. Exit 0 = found, 1 = absent, 2 = budget exceeded.
    FindCycle {
        file: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        color: Option<Color>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Write an extremal coloring to a file.
    Construct {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Certify that no color class contains a cycle of the given length.
    Certify {
        file: PathBuf,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run one claim check and write its report. Exit status follows the verdict.
    Verify {
        claim: ClaimId,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Order of the complete graph (gr-exact-small).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        slack: Option<usize>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
    /// Run every claim listed in a configuration file.
    Suite {
        #[arg(long)]
        config: PathBuf,
    },
}

fn read_coloring(path: &Path) -> Result<ColoredKn, Error> {
    load_coloring(BufReader::new(File::open(path)?))
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Decompose {
            file,
            full,
            connected,
        } => {
            let c = read_coloring(&file)?;
            if full {
                println!("{}", decompose_full(&c)?);
            } else {
                let p = gallai_partition(&c)?;
                let p = if connected {
                    refine_connected(&c, &p)?
                } else {
                    p
                };
                print!("{p}");
            }
            Ok(0)
        }
        Command::FindCycle {
            file,
            length,
            color,
            budget,
        } => {
            let c = read_coloring(&file)?;
            match find_mono_cycle_with_budget(&c, length, color, budget) {
                Ok(Some(w)) => {
                    println!("{w}");
                    Ok(0)
                }
                Ok(None) => {
                    println!("no monochromatic C_{length}");
                    Ok(1)
                }
                Err(Error::BudgetExceeded(b)) => {
                    println!("budget of {b} expansions exceeded");
                    Ok(2)
                }
                Err(e) => Err(e),
            }
        }
        Command::Construct { family, n, k, out } => {
            let spec = ConstructionSpec { family, n, k };
            let c = spec.build()?;
            fs::write(&out, c.to_text())?;
            println!(
                "wrote {} coloring of K_{} with {} colors (no monochromatic C_{}) to {}",
                family,
                c.order(),
                k,
                spec.target_length(),
                out.display()
            );
            Ok(0)
        }
        Command::Certify {
            file,
            length,
            out,
            budget,
        } => {
            let c = read_coloring(&file)?;
            match certify_no_mono_cycle_with_budget(&c, length, budget) {
                Ok(certs) => {
                    let report = CertificateReport::new(&c, length, certs)?;
                    fs::write(&out, serde_json::to_string_pretty(&report)?)?;
                    for (color, rec) in &report.colors {
                        println!(
                            "color {color}: {} (valid: {})",
                            rec.certificate.variant(),
                            rec.valid
                        );
                    }
                    Ok(if report.all_valid() { 0 } else { 1 })
                }
                Err(Error::CycleFound { color, witness }) => {
                    println!("color {color} contains C_{length}: {witness}");
                    Ok(1)
                }
                Err(Error::BudgetExceeded(b)) => {
                    println!("budget of {b} expansions exceeded");
                    Ok(2)
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify {
            claim,
            n,
            k,
            order,
            samples,
            seed,
            slack,
            workers,
            budget,
            out,
        } => {
            let mut cfg = SuiteConfig::default();
            if let Some(n) = n {
                cfg.theorem6_n = vec![n];
                cfg.gr_n = vec![n];
                cfg.lemma_n = vec![n];
                cfg.exact_n = n;
            } else {
                cfg.theorem6_n = vec![3];
            }
            if let Some(k) = k {
                cfg.gr_k = vec![k];
                cfg.exact_k = k;
            }
            if let Some(order) = order {
                cfg.exact_order = order;
            }
            if let Some(s) = samples {
                cfg.theorem6_samples = s;
                cfg.lemma_samples = s;
                cfg.roundtrip_samples = s;
            }
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.slack = slack.unwrap_or(cfg.slack);
            cfg.workers = workers.unwrap_or(cfg.workers);
            cfg.budget = budget.unwrap_or(cfg.budget);
            let report = run_claim(&cfg, claim)?;
            let path = write_report(&out, &report)?;
            println!(
                "{}: {} ({} instances, {} failures, {} ms) -> {}",
                report.claim_id,
                report.verdict,
                report.instances_run,
                report.failures.len(),
                report.wall_time_ms,
                path.display()
            );
            for f in &report.failures {
                println!("  {}", f.explanation);
            }
            Ok(report.verdict.exit_code() as u8)
        }
        Command::Suite { config } => {
            let cfg = SuiteConfig::load(&config)?;
            let (reports, summary) = run_suite(&cfg)?;
            for r in &reports {
                println!(
                    "{}: {} ({} instances)",
                    r.claim_id, r.verdict, r.instances_run
                );
            }
            match summary {
                Some(s) => {
                    println!(
                        "total instances: {}, worst verdict: {}",
                        s.total_instances, s.verdict
                    );
                    Ok(s.verdict.exit_code() as u8)
                }
                None => {
                    println!("no claims configured");
                    Ok(0)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
