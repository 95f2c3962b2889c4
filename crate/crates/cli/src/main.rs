use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modsym::building::{estar_complex, gp_and_frame_complex, tits_building};
use modsym::chain::oriented_chains;
use modsym::harness::{building_size, run_suite, Suite, SuiteConfig};
use modsym::homology::full_homology;
use modsym::io::{complex_to_json, read_complex};
use modsym::simplicial::{skeleton, subdivision};
use modsym::steinberg::SteinbergContext;
use modsym::{BigInt, Error, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "modsym",
    version,
    about = "Tits buildings, Steinberg modules and modular symbols over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Instance {
    /// Dimension of V = F_q^n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Prime field size.
    #[arg(long, default_value_t = 2)]
    q: i64,
    /// Largest chain-group basis to materialize.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tits,
    Estar,
    Gp,
    Sd,
    Skeleton,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and print it as JSON.
    Build {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        instance: Instance,
        /// Complex to subdivide or truncate (default: the Tits building).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Skeleton dimension.
        #[arg(long, default_value_t = 0)]
        dim: usize,
    },
    /// Integral homology of a complex file or of the Tits building.
    Homology {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Homology coordinates of the modular symbol [v_0, ..., v_{n-1}].
    Symbol {
        #[command(flatten)]
        instance: Instance,
        /// Semicolon-separated vectors, e.g. "1,0;0,1".
        #[arg(long)]
        vectors: String,
    },
    /// Run a verification suite and emit its JSON report.
    Verify {
        suite: String,
        /// Run a single instance (requires --q as well); default is (2,2), (2,3), (3,2).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(value: &Value, out: Option<&Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_building_budget(inst: &Instance) -> modsym::Result<()> {
    let required = building_size(inst.n, inst.q);
    if required > inst.budget as u128 {
        return Err(Error::InstanceTooLarge {
            required: required.min(usize::MAX as u128) as usize,
            budget: inst.budget,
        });
    }
    Ok(())
}

fn base_complex(inst: &Instance, input: Option<&Path>) -> anyhow::Result<SimplicialComplex> {
    Ok(match input {
        Some(p) => read_complex(p)?,
        None => {
            check_building_budget(inst)?;
            tits_building(inst.n, inst.q)?.complex
        }
    })
}

fn parse_vectors(s: &str) -> anyhow::Result<Vec<Vec<i64>>> {
    s.split(';')
        .map(|v| {
            v.split(',')
                .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad coordinate {x:?}")))
                .collect()
        })
        .collect()
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Build {
            kind,
            instance,
            input,
            dim,
        } => {
            let complex = match kind {
                Kind::Tits => base_complex(&instance, None)?,
                Kind::Estar => {
                    check_building_budget(&instance)?;
                    estar_complex(instance.n, instance.q)?.complex
                }
                Kind::Gp => {
                    check_building_budget(&instance)?;
                    gp_and_frame_complex(instance.n, instance.q)?.gp
                }
                Kind::Sd => subdivision(&base_complex(&instance, input.as_deref())?),
                Kind::Skeleton => skeleton(&base_complex(&instance, input.as_deref())?, dim),
            };
            emit(&complex_to_json(&complex), instance.out.as_deref())?;
        }
        Command::Homology { instance, input } => {
            let complex = base_complex(&instance, input.as_deref())?;
            let h = full_homology(&oriented_chains::<BigInt>(&complex))?;
            emit(&h.to_json(), instance.out.as_deref())?;
        }
        Command::Symbol { instance, vectors } => {
            check_building_budget(&instance)?;
            let vs = parse_vectors(&vectors)?;
            let ctx = SteinbergContext::new(instance.n, instance.q)?;
            let sym = ctx.modular_symbol(&vs)?;
            let mut value = sym.to_json(ctx.chains.basis(instance.n - 2), &ctx.building.complex);
            value["instance"] = json!({"n": instance.n, "q": instance.q});
            value["vectors"] = json!(vs);
            value["steinberg_rank"] = json!(ctx.top().betti);
            emit(&value, instance.out.as_deref())?;
        }
        Command::Verify {
            suite,
            n,
            q,
            trials,
            seed,
            budget,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let instances = match (n, q) {
                (Some(n), Some(q)) => vec![(n, q)],
                (None, None) => SuiteConfig::default().instances,
                _ => bail!(Error::InvalidInput("--n and --q must be given together".into())),
            };
            let cfg = SuiteConfig {
                suite,
                instances,
                trials,
                seed,
                budget,
                out: out.clone(),
            };
            let outcome = run_suite(&cfg)?;
            if out.is_none() {
                emit(&outcome.json, None)?;
            }
            for r in &outcome.reports {
                let status = if r.passed() { "ok" } else { "FAILED" };
                eprintln!(
                    "{} ({}, {}): {}/{} {status}",
                    r.check,
                    r.n,
                    r.q,
                    r.total - r.failures.len(),
                    r.total
                );
            }
            return Ok(ExitCode::from(outcome.exit_status() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::InstanceTooLarge { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
