use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use vr_lattice::homology::{betti_z2, BettiDocument};
use vr_lattice::reduce::{
    dismantle, explore_conjecture, prove_gamma_contractible, verify_certificate, Strategy,
};
use vr_lattice::{Caps, GammaSpec, GridSpec};
use vr_lattice_cli::{
    emit_json, exit, input_complex, load_report, render, run_suite, CliError, ParamRange,
    RunReport, Suite, SuiteParams, Timings,
};

#[derive(Parser)]
#[command(
    name = "vr-lattice",
    version,
    about = "Rips complexes of lattice boxes under the Manhattan metric"
)]
struct Cli {
    /// Resource caps, e.g. `vertices=5000,simplices=100000,poset=1000000,maximal=10000`.
    #[arg(long, global = true)]
    caps: Option<Caps>,
    /// Write JSON output to this file instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ComplexArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    r: u32,
    /// Use the link complex of the least vertex after `alpha` removals.
    #[arg(long, requires = "alpha")]
    gamma: bool,
    #[arg(long, requires = "gamma")]
    alpha: Option<usize>,
}

impl ComplexArgs {
    fn alpha(&self) -> Option<usize> {
        self.gamma.then_some(self.alpha).flatten()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the complex as a JSON document.
    Build(ComplexArgs),
    /// Run a verification suite over parameter ranges (`a..b` or `a`).
    Verify {
        #[arg(conflicts_with = "suite_flag", required_unless_present = "suite_flag")]
        suite: Option<Suite>,
        #[arg(long = "suite")]
        suite_flag: Option<Suite>,
        #[arg(long)]
        n: ParamRange,
        #[arg(long)]
        m: Option<ParamRange>,
        #[arg(long)]
        r: ParamRange,
        #[arg(long)]
        alpha: Option<ParamRange>,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long)]
        witnesses: bool,
    },
    /// Print a dismantling certificate.
    Dismantle(ComplexArgs),
    /// Print the critical-cell census of the anti-lex matching.
    Morse {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        dmax: Option<isize>,
        #[arg(long)]
        witnesses: bool,
    },
    /// Print Z/2 Betti numbers.
    Homology {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Explore the conjectured reduction target for one link complex.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        alpha: usize,
    },
    /// Render a saved run report.
    Report { path: PathBuf },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let caps = cli.caps.unwrap_or_default();
    let out = cli.json.as_deref();
    match cli.command {
        Command::Build(a) => {
            let k = input_complex(a.n, a.m, a.r, a.alpha(), &caps)?;
            emit_json(&k.to_document(), out)?;
            Ok(exit::PASS)
        }
        Command::Verify {
            suite,
            suite_flag,
            n,
            m,
            r,
            alpha,
            dmax,
            witnesses,
        } => {
            let suite = suite.or(suite_flag).expect("clap requires one of them");
            let params = SuiteParams {
                n,
                m,
                r,
                alpha,
                dmax,
                witnesses,
            };
            let t = Instant::now();
            let (cases, case_ms) = run_suite(suite, &params, &caps)?;
            let timings = Timings {
                total_ms: t.elapsed().as_millis() as u64,
                case_ms,
            };
            let report = RunReport::new(suite, params, caps, cases, timings)?;
            print!("{}", render(&report));
            if let Some(p) = out {
                emit_json(&report, Some(p))?;
            }
            Ok(if report.body.passed {
                exit::PASS
            } else {
                exit::FAILED
            })
        }
        Command::Dismantle(a) => {
            let k = input_complex(a.n, a.m, a.r, a.alpha(), &caps)?;
            let cert = match a.alpha() {
                Some(alpha) => {
                    let spec = GammaSpec::new(GridSpec::new(a.n, a.m, a.r)?, alpha)?;
                    prove_gamma_contractible(&spec, &caps)?.run.certificate
                }
                None => dismantle(&k, Strategy::GreedyAntilexMaxFirst),
            };
            emit_json(&cert, out)?;
            let valid = k.is_empty() || verify_certificate(&k, &cert).is_valid();
            Ok(if valid { exit::PASS } else { exit::FAILED })
        }
        Command::Morse {
            complex: a,
            dmax,
            witnesses,
        } => {
            let k = input_complex(a.n, a.m, a.r, a.alpha(), &caps)?;
            let dmax = dmax.unwrap_or(k.len() as isize - 1);
            let mu = vr_lattice::morse::build_matching_mu(&k, dmax, &caps)?;
            let doc = mu.to_document(witnesses);
            emit_json(&doc, out)?;
            Ok(if doc.acyclic {
                exit::PASS
            } else {
                exit::FAILED
            })
        }
        Command::Homology { complex: a, dmax } => {
            let k = input_complex(a.n, a.m, a.r, a.alpha(), &caps)?;
            let dmax = match dmax {
                Some(d) => d,
                None => k.all_simplices(&caps)?.max_size().saturating_sub(1),
            };
            let betti = betti_z2(&k, dmax, &caps)?;
            emit_json(&BettiDocument::new(&k, dmax, &betti), out)?;
            Ok(exit::PASS)
        }
        Command::Conjecture { n, m, r, alpha } => {
            let spec = GammaSpec::new(GridSpec::new(n, m, r)?, alpha)?;
            emit_json(&explore_conjecture(&spec, &caps)?, out)?;
            Ok(exit::PASS)
        }
        Command::Report { path } => {
            let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let report = load_report(&text)?;
            print!("{}", render(&report));
            Ok(exit::PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
