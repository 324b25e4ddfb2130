use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypnorm::error::{Error, Result};
use hypnorm::verify::{self, DeltaSource, PartialVerifyConfig, CAP_ENV};
use hypnorm::GroupModel;

#[derive(Parser)]
#[command(name = "hypnorm", version, about = "Numerical checks of Haagerup-type norm inequalities on hyperbolic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere sizes (and optionally elements) up to a radius.
    Spheres {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Print the elements of each sphere.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Four-point hyperbolicity estimate on balls of radius 1..=R.
    Delta {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run a seeded verification campaign.
    Verify(VerifyArgs),
    /// Table of the lower-bound family on free:2.
    Counterexample {
        #[arg(long, default_value_t = 10)]
        k_max: usize,
        #[arg(long, default_value_t = 1)]
        d_exponent: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive proof-trace check of one block.
    Trace {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// proven | estimate:R | override:N
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include every (x, y, z) record in the output.
        #[arg(long)]
        records: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Table,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Error::Usage(format!("cannot create {}: {e}", p.display())))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated: haagerup, buchholz, main, lemma-block, remark3, rd, counterexample.
    #[arg(long)]
    ineq: Option<String>,
    #[arg(long)]
    group: Option<String>,
    /// Single radius or range such as 1..3.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    density: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    radius: Option<usize>,
    /// proven | estimate:R | override:N
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    m_max: Option<usize>,
    /// Multiplier applied to every right-hand side.
    #[arg(long)]
    rhs_scale: Option<f64>,
    #[arg(long)]
    d_exponent: Option<u32>,
    /// TOML or JSON file with the same keys; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

fn group_arg(s: &str) -> Result<GroupModel> {
    let g: GroupModel = s.parse()?;
    match std::env::var(CAP_ENV) {
        Ok(v) => Ok(g.with_cap(
            v.trim()
                .parse()
                .map_err(|_| Error::Usage(format!("{CAP_ENV}={v} is not an integer")))?,
        )),
        Err(_) => Ok(g),
    }
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidInput(format!("write failed: {e}"))
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Spheres { group, radius, list, output } => {
            let g = group_arg(&group)?;
            let rows = verify::run_spheres(&g, radius, list)?;
            let mut w = output.writer()?;
            match output.format {
                Format::Jsonl => {
                    for r in &rows {
                        writeln!(w, "{}", serde_json::to_string(r).expect("serialisable")).map_err(io_err)?;
                    }
                }
                Format::Table => {
                    writeln!(w, "{:>3} {:>12}", "k", "#S_k").map_err(io_err)?;
                    for r in &rows {
                        write!(w, "{:>3} {:>12}", r.k, r.size).map_err(io_err)?;
                        if let Some(els) = &r.elements {
                            write!(w, "  {}", els.join(" ")).map_err(io_err)?;
                        }
                        writeln!(w).map_err(io_err)?;
                    }
                }
            }
            w.flush().map_err(io_err)?;
        }
        Command::Delta { group, radius, output } => {
            let g = group_arg(&group)?;
            let est = verify::run_delta(&g, radius)?;
            let mut w = output.writer()?;
            match output.format {
                Format::Jsonl => {
                    for e in &est {
                        writeln!(w, "{}", serde_json::to_string(e).expect("serialisable")).map_err(io_err)?;
                    }
                }
                Format::Table => verify::write_delta_table(&mut w, &g, &est).map_err(io_err)?,
            }
            w.flush().map_err(io_err)?;
        }
        Command::Verify(args) => {
            let flags = PartialVerifyConfig {
                ineq: args.ineq.map(|s| vec![s]),
                group: args.group,
                k: args.k,
                d: args.d,
                density: args.density,
                trials: args.trials,
                seed: args.seed,
                radius: args.radius,
                delta: args.delta,
                tol: args.tol,
                m_max: args.m_max,
                rhs_scale: args.rhs_scale,
                d_exponent: args.d_exponent,
            };
            let merged = match &args.config {
                Some(p) => flags.over(PartialVerifyConfig::from_file(p)?),
                None => flags,
            };
            let cfg = merged.resolve()?;
            let outcome = verify::run_verify(&cfg)?;
            let mut w = args.output.writer()?;
            match args.output.format {
                Format::Jsonl => verify::write_jsonl(&mut w, &outcome.reports),
                Format::Table => verify::write_table(&mut w, &outcome.reports),
            }
            .and_then(|_| w.flush())
            .map_err(io_err)?;
            return Ok(outcome.exit_code);
        }
        Command::Counterexample { k_max, d_exponent, output } => {
            let table = verify::run_counterexample(k_max, d_exponent)?;
            let mut w = output.writer()?;
            match output.format {
                Format::Jsonl => {
                    for r in &table.rows {
                        writeln!(w, "{}", serde_json::to_string(r).expect("serialisable")).map_err(io_err)?;
                    }
                }
                Format::Table => verify::write_counterexample_table(&mut w, &table).map_err(io_err)?,
            }
            w.flush().map_err(io_err)?;
        }
        Command::Trace { group, k, m, n, d, delta, seed, records, output } => {
            let g = group_arg(&group)?;
            let source: DeltaSource = match delta {
                Some(s) => s.parse()?,
                None if g.is_free() => DeltaSource::Proven,
                None => return Err(Error::Usage(format!("{g} needs an explicit --delta"))),
            };
            let resolved = source.resolve(&g)?;
            let mut trace = verify::run_trace(&g, k, m, n, d, resolved, seed)?;
            if !records {
                trace.records.clear();
            }
            let mut w = output.writer()?;
            match output.format {
                Format::Jsonl => {
                    writeln!(w, "{}", serde_json::to_string(&trace).expect("serialisable")).map_err(io_err)?
                }
                Format::Table => {
                    writeln!(w, "group {g}  k={k} m={m} n={n} p={} delta={}", trace.p, trace.delta).map_err(io_err)?;
                    writeln!(
                        w,
                        "u-length window {:?}, observed {:?}",
                        trace.u_window, trace.u_length_range
                    )
                    .map_err(io_err)?;
                    writeln!(
                        w,
                        "x multiplicity max {} (bound {})",
                        trace.max_x_multiplicity, trace.x_multiplicity_bound
                    )
                    .map_err(io_err)?;
                    for z in &trace.z_counts {
                        writeln!(w, "z count s={} max {} (bound {})", z.s, z.max_count, z.bound).map_err(io_err)?;
                    }
                    writeln!(w, "identity error {:.3e}", trace.identity_error).map_err(io_err)?;
                    writeln!(w, "tightest slack {}", trace.tightest_slack).map_err(io_err)?;
                    for v in &trace.violations {
                        writeln!(w, "VIOLATION {:?}: {}", v.check, v.detail).map_err(io_err)?;
                    }
                    if let Some(d) = &trace.diagnosis {
                        writeln!(w, "diagnosis {d:?}").map_err(io_err)?;
                    }
                    writeln!(w, "{}", if trace.passed() { "ok" } else { "FAILED" }).map_err(io_err)?;
                }
            }
            w.flush().map_err(io_err)?;
            if !trace.passed() {
                return Ok(verify::EXIT_VIOLATION);
            }
        }
    }
    Ok(verify::EXIT_OK)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { verify::EXIT_USAGE as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hypnorm: {e}");
            ExitCode::from(verify::exit_code_for(&e) as u8)
        }
    }
}
