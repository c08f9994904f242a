//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code:
//! 0 success, 1 invalid input, 2 size guard, 3 failed verification.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::cache::{ledger_for, LedgerCache};
use crate::constructions::{
    balloon, threshold_graph, two_terminal_balloon, variant, ThresholdSpec, VariantKind,
};
use crate::engine::{
    monte_carlo_sr, spanning_tree_count, split_coefficients_with, two_tree_count, RandomSource,
    SweepOptions, DEFAULT_GUARD_BITS,
};
use crate::enumeration::{enumerate_class, enumerate_two_terminal, uniform_check, ClassLedger};
use crate::error::{Error, Result};
use crate::graph::TwoTerminalGraph;
use crate::io::{read_document, GraphDocument};
use crate::poly::{format_rational, parse_rational};
use crate::report::Report;
use crate::signature::{sr_polynomial, SplitSignature};
use crate::verify::{Target, Verifier, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Directory for cached class ledgers.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Largest accepted log2 of the number of edge subsets in a sweep.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD_BITS)]
    guard_bits: u32,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100_000)]
    trials: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(
    name = "splitrel",
    version,
    about = "Exact split reliability of two-terminal graphs"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Balloon graph B(n,m).
    Balloon { n: usize, m: usize },
    /// Balloon graph with a diametral terminal pair.
    TwoTerminalBalloon { n: usize, m: usize },
    /// Bridge contraction followed by the subdivision of an edge of kind 0, 1 or 2.
    Variant { kind: u8, n: usize, m: usize },
    /// Threshold graph H(n; d_1, ..., d_k).
    Threshold { n: usize, degrees: Vec<usize> },
    /// Split subgraph counts N_i and F_i.
    SrCoeffs { graph: PathBuf },
    /// Exact split reliability at a rational p.
    SrEval { graph: PathBuf, p: String },
    /// Spanning tree count.
    Trees { graph: PathBuf },
    /// Split subgraphs made of two trees.
    T2 { graph: PathBuf },
    /// Connected graphs (or two-terminal graphs) up to isomorphism.
    Enumerate {
        n: usize,
        m: usize,
        #[arg(long)]
        two_terminal: bool,
    },
    /// Class ledger: signatures, refinement chain and verdict.
    Refine { n: usize, m: usize },
    /// Locally most split reliable members of T(n,m).
    LocallyMost { n: usize, m: usize },
    /// Uniformly most split reliable member of T(n,m), if any.
    UniformCheck { n: usize, m: usize },
    /// Run a verification target, or `all`.
    Verify {
        target: String,
        /// Largest vertex count for class enumeration.
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Monte Carlo estimate of the split reliability.
    McEstimate { graph: PathBuf, p: String },
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.jobs.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(outcome) => {
            let written = match &cli.common.out {
                Some(path) => fs::write(path, &outcome.body).map_err(Error::from),
                None => out.write_all(outcome.body.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            if let Some(line) = &outcome.headline {
                let sink: &mut dyn Write = if cli.common.out.is_some() { out } else { err };
                let _ = writeln!(sink, "{line}");
            }
            if outcome.verification_failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_guard() {
                2
            } else {
                1
            }
        }
    }
}

struct Outcome {
    body: String,
    /// Short summary printed next to a body written to a file.
    headline: Option<String>,
    verification_failed: bool,
}

impl Outcome {
    fn body(body: String) -> Self {
        Self {
            body,
            headline: None,
            verification_failed: false,
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn pretty(v: &impl serde::Serialize) -> String {
    with_newline(serde_json::to_string_pretty(v).expect("values serialize"))
}

fn graph_body(doc: GraphDocument, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => with_newline(doc.to_json()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["u", "v"])?;
            for [u, v] in &doc.edges {
                w.write_record([u.to_string(), v.to_string()])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                .expect("csv output is utf-8")
        }
    })
}

fn two_terminal_input(path: &PathBuf) -> Result<TwoTerminalGraph> {
    let doc = read_document(path)?;
    if doc.terminals.is_none() {
        return Err(Error::InvalidGraph(format!(
            "{} has no terminals",
            path.display()
        )));
    }
    doc.to_two_terminal()
}

fn probability(p: &str) -> Result<BigRational> {
    let value = parse_rational(p)?;
    if value < BigRational::from_integer(0.into()) || value > BigRational::from_integer(1.into()) {
        return Err(Error::Precondition(format!("p = {p} is outside [0, 1]")));
    }
    Ok(value)
}

fn ledger(cli: &Cli, n: usize, m: usize, opts: &SweepOptions) -> Result<ClassLedger> {
    let cache = cli
        .common
        .cache
        .as_ref()
        .map(LedgerCache::new)
        .transpose()?;
    ledger_for(n, m, cache.as_ref(), opts)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    let format = common.format.unwrap_or(Format::Json);
    let opts = SweepOptions {
        guard_bits: common.guard_bits,
    };
    match &cli.command {
        Command::Balloon { n, m } => Ok(Outcome::body(graph_body(
            GraphDocument::from_simple(&balloon(*n, *m)?),
            format,
        )?)),
        Command::TwoTerminalBalloon { n, m } => Ok(Outcome::body(graph_body(
            GraphDocument::from_two_terminal(&two_terminal_balloon(*n, *m)?),
            format,
        )?)),
        Command::Variant { kind, n, m } => {
            let h = variant(VariantKind::from_index(*kind)?, *n, *m)?;
            Ok(Outcome::body(graph_body(
                GraphDocument::from_two_terminal(&h),
                format,
            )?))
        }
        Command::Threshold { n, degrees } => {
            let spec = ThresholdSpec::new(*n, degrees.clone())?;
            Ok(Outcome::body(graph_body(
                GraphDocument::from_simple(&threshold_graph(&spec)?),
                format,
            )?))
        }
        Command::SrCoeffs { graph } => {
            let g = two_terminal_input(graph)?;
            let counts = split_coefficients_with(&g, &opts)?;
            Ok(Outcome::body(match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    counts.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("csv output is utf-8")
                }
                Format::Json => {
                    let sig = SplitSignature::new(g.n(), counts);
                    pretty(&json!({
                        "n": sig.n,
                        "m": sig.m,
                        "n_counts": sig.counts.counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "f_counts": sig.f_tuple().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }))
                }
            }))
        }
        Command::SrEval { graph, p } => {
            let g = two_terminal_input(graph)?;
            let p = probability(p)?;
            let poly = sr_polynomial(&SplitSignature::with_options(&g, &opts)?);
            let value = poly.evaluate(&p);
            Ok(Outcome::body(pretty(&json!({
                "p": format_rational(&p),
                "sr": format_rational(&value),
                "approx": value.to_f64(),
                "polynomial": poly.to_string(),
            }))))
        }
        Command::Trees { graph } => {
            let g = read_document(graph)?.to_simple()?;
            Ok(Outcome::body(pretty(
                &json!({"spanning_trees": spanning_tree_count(&g).to_string()}),
            )))
        }
        Command::T2 { graph } => {
            let g = two_terminal_input(graph)?;
            let formula = two_tree_count(&g);
            let swept = split_coefficients_with(&g, &opts)
                .ok()
                .map(|c| c.get(g.n() - 2).to_string());
            Ok(Outcome::body(pretty(&json!({
                "two_trees": formula.to_string(),
                "swept": swept,
            }))))
        }
        Command::Enumerate { n, m, two_terminal } => {
            let docs: Vec<GraphDocument> = if *two_terminal {
                enumerate_two_terminal(*n, *m)?
                    .iter()
                    .map(GraphDocument::from_two_terminal)
                    .collect()
            } else {
                enumerate_class(*n, *m)?
                    .graphs
                    .iter()
                    .map(|g| GraphDocument::from_simple(&g.graph))
                    .collect()
            };
            let headline = Some(format!("{} graphs", docs.len()));
            let body = match format {
                Format::Json => with_newline(serde_json::to_string(&docs)?),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "n", "edges", "terminals"])?;
                    for (i, d) in docs.iter().enumerate() {
                        let edges = d
                            .edges
                            .iter()
                            .map(|[u, v]| format!("{u}-{v}"))
                            .collect::<Vec<_>>()
                            .join(" ");
                        let terms = d
                            .terminals
                            .map(|[s, t]| format!("{s} {t}"))
                            .unwrap_or_default();
                        w.write_record([i.to_string(), d.n.to_string(), edges, terms])?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?)
                        .expect("csv output is utf-8")
                }
            };
            Ok(Outcome {
                body,
                headline,
                verification_failed: false,
            })
        }
        Command::Refine { n, m } => {
            let l = ledger(cli, *n, *m, &opts)?;
            let body = match format {
                Format::Json => with_newline(l.to_json()),
                Format::Csv => {
                    let mut buf = Vec::new();
                    l.write_csv(&mut buf)?;
                    String::from_utf8(buf).expect("csv output is utf-8")
                }
            };
            Ok(Outcome::body(body))
        }
        Command::LocallyMost { n, m } => {
            let l = ledger(cli, *n, *m, &opts)?;
            let rep = l.locally_most_representative();
            Ok(Outcome::body(pretty(&json!({
                "n": n,
                "m": m,
                "members": l.locally_most.iter().map(|&i| GraphDocument::from_two_terminal(&l.entries[i].graph)).collect::<Vec<_>>(),
                "f_counts": rep.signature.f_tuple().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "stop_level": l.stop_level(),
            }))))
        }
        Command::UniformCheck { n, m } => {
            let verdict = if common.cache.is_some() && *m + 1 != *n {
                ledger(cli, *n, *m, &opts)?.uniform
            } else {
                uniform_check(*n, *m)?
            };
            let body = pretty(&verdict);
            Ok(match common.out {
                Some(_) => Outcome {
                    body,
                    headline: Some(verdict.label().to_string()),
                    verification_failed: false,
                },
                None => Outcome::body(format!("{}\n{body}", verdict.label())),
            })
        }
        Command::Verify { target, max_n } => {
            let cache = common.cache.as_ref().map(LedgerCache::new).transpose()?;
            let mut verifier = Verifier::new(VerifyOptions {
                max_n: *max_n,
                sweep: opts,
                cache,
            });
            let targets: Vec<Target> = if target == "all" {
                Target::ALL.to_vec()
            } else {
                vec![target.parse()?]
            };
            let mut reports = Vec::new();
            for t in targets {
                let mut r = verifier.run(t)?;
                r.claim = format!("{t}: {}", r.claim);
                reports.push(r);
            }
            let failed = reports.iter().any(Report::failed);
            let headline = reports
                .iter()
                .map(|r| format!("{} {}", r.status.to_string().to_uppercase(), r.claim))
                .collect::<Vec<_>>()
                .join("\n");
            let body = if reports.len() == 1 {
                with_newline(reports[0].to_json())
            } else {
                pretty(&reports)
            };
            Ok(Outcome {
                body,
                headline: Some(headline),
                verification_failed: failed,
            })
        }
        Command::McEstimate { graph, p } => {
            let g = two_terminal_input(graph)?;
            let p = probability(p)?;
            let estimate = monte_carlo_sr(&g, &p, common.trials, RandomSource::new(common.seed))?;
            let mut doc = json!({
                "p": format_rational(&p),
                "seed": common.seed,
                "trials": estimate.trials,
                "successes": estimate.successes,
                "estimate": estimate.estimate,
                "std_error": estimate.std_error,
            });
            if let Ok(sig) = SplitSignature::with_options(&g, &opts) {
                let exact = sr_polynomial(&sig)
                    .evaluate(&p)
                    .to_f64()
                    .unwrap_or(f64::NAN);
                doc["exact"] = json!(exact);
                if estimate.std_error > 0.0 {
                    doc["z"] = json!((estimate.estimate - exact) / estimate.std_error);
                }
            }
            Ok(Outcome::body(pretty(&doc)))
        }
    }
}
