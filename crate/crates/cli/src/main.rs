use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use wpgraph_core::constructions::parse_graph_spec;
use wpgraph_core::criteria::product_lemma_check;
use wpgraph_core::harness::report::{write_table_header, write_table_row};
use wpgraph_core::harness::{
    classify, generate_records_up_to, ingest_corpus, sweep, write_json_line, ClassificationReport,
    CorpusError, SweepOptions, SweepSummary, Theorem,
};
use wpgraph_core::quasireg::CheckStatus;
use wpgraph_core::rational::format_ratio;
use wpgraph_core::{encode_graph6, Graph6Record, Lambda};

#[derive(Parser)]
#[command(
    name = "wpgraph",
    version,
    about = "W_p graph classification and independence polynomial audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one graph given as graph6 or a family spec (C5, K2*K1, P3+K2, ...).
    Analyze {
        spec: String,
        #[command(flatten)]
        params: Params,
        /// Print the report as one JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Print the independence polynomial coefficients s_0 .. s_α.
    Poly { spec: String },
    /// Classify and audit every graph of a corpus.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        run: RunOpts,
        /// Write line-JSON reports here ("-" for stdout).
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        /// Print a table row per graph.
        #[arg(long, conflicts_with = "json")]
        table: bool,
        /// Write the summary as JSON here.
        #[arg(long, value_name = "FILE")]
        summary_json: Option<PathBuf>,
    },
    /// Audit a single statement over a corpus.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Build a corona or disjoint union and print it as graph6.
    Construct {
        #[command(flatten)]
        what: ConstructArgs,
    },
}

#[derive(Args)]
struct Params {
    /// Comma-separated p values for W_p.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [1usize, 2])]
    p: Vec<usize>,
    /// Comma-separated expansion parameters, e.g. 1,3/2,2.
    #[arg(long, value_delimiter = ',', default_values = ["1", "3/2", "2"])]
    lambda: Vec<Lambda>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Newline-delimited graph6 file ("-" for stdin).
    #[arg(long, value_name = "FILE")]
    corpus: Option<PathBuf>,
    /// Use every labelled graph with 1..=N vertices (N ≤ 7).
    #[arg(long, value_name = "N")]
    gen_n: Option<usize>,
}

#[derive(Args)]
struct RunOpts {
    /// Keep only connected graphs from the generator.
    #[arg(long)]
    connected: bool,
    /// Worker threads.
    #[arg(long, env = "WPGRAPH_JOBS")]
    jobs: Option<usize>,
    /// Abort on the first malformed corpus line.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ConstructArgs {
    /// Corona expression, e.g. K2*K1.
    #[arg(long, value_name = "G*H")]
    corona: Option<String>,
    /// Union expression, e.g. C5+K2.
    #[arg(long, value_name = "G+H")]
    union: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn verdict_code(clean: bool) -> ExitCode {
    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn options(params: Option<&Params>, jobs: Option<usize>) -> Result<SweepOptions> {
    let mut opts = SweepOptions {
        jobs,
        ..SweepOptions::default()
    };
    if let Some(params) = params {
        anyhow::ensure!(params.p.iter().all(|&p| p >= 1), "p must be at least 1");
        opts.p_values = params.p.clone();
        opts.lambdas = params.lambda.clone();
    }
    Ok(opts)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { spec, params, json } => {
            let g = parse_graph_spec(&spec)?;
            let record = Graph6Record::from_graph(g)?;
            let report = classify(0, &record, &options(Some(&params), None)?);
            let mut out = io::stdout().lock();
            if json {
                write_json_line(&mut out, &report)?;
            } else {
                print_analysis(&mut out, &report)?;
            }
            Ok(verdict_code(report.violations.is_empty()))
        }
        Command::Poly { spec } => {
            let g = parse_graph_spec(&spec)?;
            let poly = wpgraph_core::enumeration::independence_polynomial(&g);
            println!("{poly}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            source,
            params,
            run,
            json,
            table,
            summary_json,
        } => {
            let opts = options(Some(&params), run.jobs)?;
            let mut sink: Box<dyn Write> = match &json {
                Some(p) if p.as_os_str() == "-" => Box::new(io::stdout().lock()),
                Some(p) => Box::new(BufWriter::new(
                    File::create(p).with_context(|| format!("creating {}", p.display()))?,
                )),
                None if table => Box::new(io::stdout().lock()),
                None => Box::new(io::sink()),
            };
            if table {
                write_table_header(&mut sink)?;
            }
            let summary = sweep_source(&source, &run, &opts, |r| {
                if json.is_some() {
                    write_json_line(&mut sink, r)
                } else if table {
                    write_table_row(&mut sink, r)
                } else {
                    Ok(())
                }
            })?;
            sink.flush()?;
            drop(sink);
            let to_stdout = json.as_ref().is_some_and(|p| p.as_os_str() == "-") || table;
            if to_stdout {
                print_summary(&mut io::stderr().lock(), &summary)?;
            } else {
                print_summary(&mut io::stdout().lock(), &summary)?;
            }
            if let Some(path) = summary_json {
                let f =
                    File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                serde_json::to_writer_pretty(f, &summary)?;
            }
            Ok(verdict_code(summary.is_clean()))
        }
        Command::Verify {
            theorem,
            source,
            run,
        } => {
            let opts = options(None, run.jobs)?;
            let mut applicable = 0usize;
            let mut pair_checks = 0usize;
            let mut pair_violations = 0usize;
            let mut previous: Option<Vec<_>> = None;
            let summary = sweep_source(&source, &run, &opts, |r| {
                if audit_status(r, theorem) != CheckStatus::NotApplicable {
                    applicable += 1;
                }
                if theorem == Theorem::ProductLemma {
                    let coeffs = r.polynomial.coeffs().to_vec();
                    if let Some(prev) = &previous {
                        if let Ok(report) = product_lemma_check(prev, &coeffs) {
                            pair_checks += 1;
                            pair_violations += report.violation() as usize;
                        }
                    }
                    previous = Some(coeffs);
                }
                Ok(())
            })?;
            let count = summary.violations[&theorem] + pair_violations;
            println!(
                "{theorem}: {count} violations over {} graphs ({applicable} applicable)",
                summary.graphs
            );
            if theorem == Theorem::ProductLemma {
                println!("product-lemma: {pair_checks} consecutive polynomial pairs checked, {pair_violations} violations");
            }
            if summary.parse_errors > 0 {
                println!("parse errors: {}", summary.parse_errors);
            }
            Ok(verdict_code(count == 0))
        }
        Command::Construct { what } => {
            let expr = what.corona.or(what.union).expect("clap enforces one");
            let g = parse_graph_spec(&expr)?;
            println!("{}", encode_graph6(&g)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Status of the audit most closely tied to `theorem`.
fn audit_status(r: &ClassificationReport, theorem: Theorem) -> CheckStatus {
    match theorem {
        Theorem::LocalExpansion => r.local_expansion,
        Theorem::Threshold => r.threshold_equivalence,
        Theorem::W2Facts => r.w2_facts,
        Theorem::CoefIneq => r.audits.coef_ineq,
        Theorem::CriteriaSoundness => r.audits.criteria_soundness,
        Theorem::UnimodalityChains => r.audits.unimodality_chains,
        Theorem::WpCrossCheck => r.audits.wp_cross_check,
        Theorem::PThreshold => r.audits.p_threshold,
        Theorem::ProductLemma => r.audits.product_lemma,
        Theorem::InternalConsistency => CheckStatus::Pass,
    }
}

fn sweep_source<F>(
    source: &Source,
    run: &RunOpts,
    opts: &SweepOptions,
    sink: F,
) -> Result<SweepSummary>
where
    F: FnMut(&ClassificationReport) -> io::Result<()>,
{
    if let Some(n) = source.gen_n {
        let id = format!(
            "labelled n≤{n}{}",
            if run.connected { ", connected" } else { "" }
        );
        let records = generate_records_up_to(n, run.connected)?;
        return Ok(sweep(&id, records, opts, sink)?);
    }
    let path = source.corpus.as_ref().expect("clap enforces a source");
    let reader: Box<dyn io::BufRead> = if path.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(
            File::open(path).with_context(|| format!("opening {}", path.display()))?,
        ))
    };
    let mut fatal: Option<CorpusError> = None;
    let mut parse_errors = 0;
    let records = ingest_corpus(reader, run.strict).filter_map(|entry| match entry {
        Ok(e) => (!run.connected || e.record.graph.is_connected()).then_some(e.record),
        Err(e @ CorpusError::Parse { .. }) if !run.strict => {
            eprintln!("warning: skipping {e}");
            parse_errors += 1;
            None
        }
        Err(e) => {
            fatal.get_or_insert(e);
            None
        }
    });
    let mut summary = sweep(&path.display().to_string(), records, opts, sink)?;
    if let Some(e) = fatal {
        return Err(e).context("reading corpus");
    }
    summary.parse_errors = parse_errors;
    Ok(summary)
}

fn print_summary<W: Write>(out: &mut W, s: &SweepSummary) -> io::Result<()> {
    writeln!(out, "corpus: {}", s.corpus)?;
    writeln!(
        out,
        "graphs: {}  connected: {}  well-covered: {}  W_2: {} ({} connected)  2-quasi-regularizable: {}  n ≥ 3α: {}",
        s.graphs, s.connected, s.well_covered, s.w2, s.connected_w2, s.quasi_regularizable_2, s.n_at_least_3_alpha
    )?;
    if !s.connected_w2_cells.is_empty() {
        let cells: Vec<String> = s
            .connected_w2_cells
            .iter()
            .map(|(k, v)| format!("{k}: {v}"))
            .collect();
        writeln!(out, "connected W_2 cells: {}", cells.join("  "))?;
    }
    let violations: Vec<String> = s
        .violations
        .iter()
        .map(|(t, c)| format!("{t} {c}"))
        .collect();
    writeln!(out, "violations: {}", violations.join(", "))?;
    writeln!(
        out,
        "caps hit: {}  parse errors: {}  wall time: {} ms",
        s.caps_hit, s.parse_errors, s.wall_time_ms
    )?;
    writeln!(
        out,
        "status: {}",
        if s.is_clean() {
            "clean"
        } else {
            "VIOLATIONS FOUND"
        }
    )
}

fn print_analysis<W: Write>(out: &mut W, r: &ClassificationReport) -> io::Result<()> {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "graph6       {}", r.graph6)?;
    writeln!(out, "n            {}", r.n)?;
    writeln!(out, "alpha        {}", r.alpha)?;
    writeln!(out, "connected    {}", yes_no(r.connected))?;
    writeln!(out, "polynomial   {}", r.polynomial)?;
    if let Some(wc) = r.well_covered {
        writeln!(out, "well-covered {}", yes_no(wc))?;
    }
    for (p, e) in &r.wp {
        let verdict = match e.member {
            Some(true) => "member".to_string(),
            Some(false) => match &e.failing_tuple {
                Some(t) => {
                    let sets: Vec<String> = t.iter().map(|s| s.to_string()).collect();
                    format!("not a member, failing tuple ({})", sets.join(", "))
                }
                None => "not a member".to_string(),
            },
            None => "unknown (cap exceeded)".to_string(),
        };
        writeln!(
            out,
            "W_{p:<10} {verdict} [{}]",
            serde_json::to_string(&e.method)
                .unwrap_or_default()
                .trim_matches('"')
        )?;
    }
    for (l, e) in &r.quasireg {
        let verdict = match (e.holds, e.witness, e.neighborhood_size) {
            (Some(true), _, _) => "quasi-regularizable".to_string(),
            (Some(false), Some(w), Some(nb)) => format!(
                "not quasi-regularizable, witness {w} with |A| = {}, |N(A)| = {nb}",
                w.len()
            ),
            (Some(false), _, _) => "not quasi-regularizable".to_string(),
            (None, _, _) => "unknown (cap exceeded)".to_string(),
        };
        writeln!(out, "λ = {:<8} {verdict}", l.to_string())?;
    }
    if let Some(m) = &r.min_expansion {
        writeln!(
            out,
            "min |N(A)|/|A| {} at {}",
            format_ratio(&m.ratio),
            m.witness
        )?;
    }
    writeln!(
        out,
        "n ≥ 3α       {} ({} vs {})",
        yes_no(r.n_at_least_3_alpha),
        r.n,
        3 * r.alpha
    )?;
    let status = |s: CheckStatus| {
        serde_json::to_string(&s)
            .unwrap_or_default()
            .trim_matches('"')
            .to_string()
    };
    writeln!(out, "local expansion        {}", status(r.local_expansion))?;
    writeln!(
        out,
        "threshold equivalence  {}",
        status(r.threshold_equivalence)
    )?;
    writeln!(out, "W_2 facts              {}", status(r.w2_facts))?;
    writeln!(
        out,
        "direct       log-concave {}, unimodal {}",
        yes_no(r.direct.log_concave),
        yes_no(r.direct.unimodal)
    )?;
    for v in &r.criteria {
        let name = serde_json::to_string(&v.name).unwrap_or_default();
        writeln!(
            out,
            "criterion    {} p = {}, λ = {}: {}{}",
            name.trim_matches('"'),
            v.params.p,
            v.params.lambda,
            if v.fired { "fired" } else { "not fired" },
            v.bounds
                .map(|(l, r)| format!(" (L = {l}, R = {r})"))
                .unwrap_or_default()
        )?;
    }
    if r.violations.is_empty() {
        writeln!(out, "violations   none")?;
    } else {
        for v in &r.violations {
            writeln!(out, "VIOLATION    {}: {}", v.theorem, v.detail)?;
        }
    }
    Ok(())
}
