//! `subk`: degree-sequence bounds, exact k-domination and criticality scans
//! over streams of graphs.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use subk_core::bench;
use subk_core::criticality::CriticalityReport;
use subk_core::enumerate::{graphs_up_to, MAX_ENUMERATION_ORDER};
use subk_core::invariants::all_stratified_bounds;
use subk_core::io::{
    csv_header, emit_record, encode_graph6, parse_graph6, EdgeList, EdgeListReader, Graph6Record,
    Record, RecordFormat,
};
use subk_core::{BoundReport, DegreeSequence, Graph, Oracle};

/// Graphs handed to the worker pool at a time.
const CHUNK: usize = 2048;

#[derive(Parser)]
#[command(name = "subk", version, about = "Sub-k-domination bounds and exact k-domination over graph corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// sub_k, the Fink-Jacobson bound and the best stratified bound, from degrees only.
    Compute(RunArgs),
    /// Like compute, plus the stratified bound for every admissible t.
    Bounds(RunArgs),
    /// Adds gamma_k, a minimum witness and the equality flag.
    Exact(RunArgs),
    /// Edge-deletion, edge-addition and vertex-deletion criticality with structural checks.
    Critical(RunArgs),
    /// Exact values and criticality together, filtered, with a summary on stderr.
    Scan(ScanArgs),
    /// Times sub_k on synthetic degree sequences and checks linear scaling.
    Bench(BenchArgs),
    /// Writes every non-isomorphic graph in a range of orders as graph6.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Input file; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Value of k; repeat for several.
    #[arg(long = "k", default_values_t = [1u64], value_parser = clap::value_parser!(u64).range(1..))]
    ks: Vec<u64>,
    #[arg(long, value_enum, default_value_t = InputFormat::Graph6)]
    format: InputFormat,
    #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
    output: OutputFormat,
    /// Largest order the exact oracle accepts (at most 64).
    #[arg(long)]
    oracle_cap: Option<usize>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Keep only matching records; repeated filters must all match.
    #[arg(long, value_enum)]
    filter: Vec<Filter>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long = "k", default_values_t = [1u64], value_parser = clap::value_parser!(u64).range(1..))]
    ks: Vec<u64>,
    /// Comma-separated sequence lengths.
    #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_SIZES)]
    bench_sizes: Vec<usize>,
    /// Timed runs per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Jsonl)]
    output: OutputFormat,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long)]
    max_n: usize,
    /// Only graphs regular of this degree.
    #[arg(long)]
    regular: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Jsonl,
    Csv,
}

impl From<OutputFormat> for RecordFormat {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Jsonl => RecordFormat::Jsonl,
            OutputFormat::Csv => RecordFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    Equality,
    Critical,
    Violations,
}

impl Filter {
    fn accepts(self, r: &Record) -> bool {
        match self {
            Filter::Equality => r.equality == Some(true),
            Filter::Critical => {
                let nonvacuous = |crit: Option<bool>, vac: Option<bool>| crit == Some(true) && vac != Some(true);
                nonvacuous(r.ed_critical, r.ed_vacuous)
                    || nonvacuous(r.ea_critical, r.ea_vacuous)
                    || r.vd_critical == Some(true)
            }
            Filter::Violations => r.violation,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Compute,
    Bounds,
    Exact,
    Critical,
    Scan,
}

enum Source {
    Graph6(String),
    Edges(EdgeList),
}

struct Item {
    id: u64,
    parsed: std::result::Result<Source, String>,
}

impl Source {
    fn degrees(&self) -> subk_core::Result<DegreeSequence> {
        match self {
            Source::Graph6(line) => Ok(Graph6Record::parse(line)?.degree_sequence()),
            Source::Edges(list) => DegreeSequence::from_degrees(&list.degrees()),
        }
    }

    fn graph(&self) -> subk_core::Result<Graph> {
        match self {
            Source::Graph6(line) => parse_graph6(line),
            Source::Edges(list) => list.to_graph(),
        }
    }
}

fn open_input(path: Option<&PathBuf>) -> Result<Box<dyn BufRead>> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let f = File::open(p).with_context(|| format!("cannot open {}", p.display()))?;
            Ok(Box::new(BufReader::new(f)))
        }
        _ => Ok(Box::new(BufReader::new(io::stdin().lock()))),
    }
}

fn items(reader: Box<dyn BufRead>, format: InputFormat) -> Box<dyn Iterator<Item = Item>> {
    match format {
        InputFormat::Graph6 => Box::new(
            reader
                .split(b'\n')
                .enumerate()
                .filter_map(|(i, bytes)| {
                    let lineno = i + 1;
                    let parsed = match bytes {
                        Err(e) => Err(format!("line {lineno}: {e}")),
                        Ok(b) => match String::from_utf8(b) {
                            Err(_) => Err(format!("line {lineno}: not valid UTF-8")),
                            Ok(s) => {
                                let s = s.trim_end_matches('\r');
                                if s.trim().is_empty() {
                                    return None;
                                }
                                // Validate eagerly so the message can carry the line.
                                match Graph6Record::parse(s) {
                                    Ok(_) => Ok(Source::Graph6(s.to_string())),
                                    Err(e) => Err(format!("line {lineno}: {e}")),
                                }
                            }
                        },
                    };
                    Some(parsed)
                })
                .zip(1u64..)
                .map(|(parsed, id)| Item { id, parsed }),
        ),
        InputFormat::Edgelist => Box::new(EdgeListReader::new(reader).zip(1u64..).map(|((_, block), id)| Item {
            id,
            parsed: block.map(Source::Edges).map_err(|e| e.to_string()),
        })),
    }
}

fn process(item: &Item, mode: Mode, ks: &[u64], oracle: &Oracle) -> Vec<Record> {
    let source = match &item.parsed {
        Ok(s) => s,
        Err(msg) => {
            return ks
                .iter()
                .map(|&k| Record { id: item.id, k, error: Some(msg.clone()), ..Default::default() })
                .collect()
        }
    };
    let seq = source.degrees();
    let graph = match mode {
        Mode::Compute | Mode::Bounds => None,
        _ => Some(source.graph()),
    };
    ks.iter()
        .map(|&k| {
            let fail = |e: &subk_core::Error| Record::error(item.id, k, e);
            let seq = match &seq {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let mut rec = match BoundReport::compute(seq, k) {
                Ok(rep) => Record::from_bounds(item.id, &rep),
                Err(e) => return fail(&e),
            };
            if mode == Mode::Bounds {
                match all_stratified_bounds(seq, k) {
                    Ok(all) => rec = rec.with_stratified_by_t(&all),
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            let Some(graph) = &graph else { return rec };
            let g = match graph {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            if matches!(mode, Mode::Exact | Mode::Scan) {
                match oracle.gamma_k(g, k) {
                    Ok(w) => rec = rec.with_gamma(w.gamma_k as u64, &w.witness),
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            if matches!(mode, Mode::Critical | Mode::Scan) {
                match CriticalityReport::analyze(g, k) {
                    Ok(c) => rec = rec.with_criticality(&c),
                    Err(e) => rec.error = Some(e.to_string()),
                }
            }
            rec
        })
        .collect()
}

#[derive(Default)]
struct Summary {
    graphs: u64,
    records: u64,
    emitted: u64,
    equality: u64,
    ed_critical: u64,
    ea_critical: u64,
    vd_critical: u64,
    check_failures: u64,
    violations: u64,
    errors: u64,
}

impl Summary {
    fn add(&mut self, r: &Record) {
        self.records += 1;
        self.equality += u64::from(r.equality == Some(true));
        self.ed_critical += u64::from(r.ed_critical == Some(true) && r.ed_vacuous != Some(true));
        self.ea_critical += u64::from(r.ea_critical == Some(true) && r.ea_vacuous != Some(true));
        self.vd_critical += u64::from(r.vd_critical == Some(true));
        self.check_failures += [&r.tail_independent, &r.ed_floor_gap, &r.low_degree_clique, &r.ea_gap, &r.tail_attachment]
            .iter()
            .filter(|c| c.as_deref() == Some("fail"))
            .count() as u64;
        self.violations += u64::from(r.violation);
        self.errors += u64::from(r.error.is_some());
    }
}

fn write_line(out: &mut impl Write, line: &str) -> io::Result<()> {
    out.write_all(line.as_bytes())?;
    out.write_all(b"\n")
}

fn run_records(args: &RunArgs, mode: Mode, filters: &[Filter]) -> Result<Summary> {
    let oracle = match args.oracle_cap {
        Some(cap) => Oracle::with_cap(cap)?,
        None => Oracle::default(),
    };
    let format = RecordFormat::from(args.output);
    let mut out = BufWriter::new(io::stdout().lock());
    if format == RecordFormat::Csv {
        write_line(&mut out, &csv_header())?;
    }
    let mut summary = Summary::default();
    let mut stream = items(open_input(args.input.as_ref())?, args.format);
    loop {
        let chunk: Vec<Item> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Vec<Record>> = chunk.par_iter().map(|it| process(it, mode, &args.ks, &oracle)).collect();
        summary.graphs += chunk.len() as u64;
        for rec in results.iter().flatten() {
            summary.add(rec);
            let keep = rec.error.is_some() || filters.iter().all(|f| f.accepts(rec));
            if keep {
                summary.emitted += 1;
                write_line(&mut out, &emit_record(rec, format))?;
            }
        }
    }
    out.flush()?;
    Ok(summary)
}

fn run_bench(args: &BenchArgs) -> Result<bool> {
    if args.bench_sizes.contains(&0) {
        bail!("benchmark sizes must be positive");
    }
    let mut out = BufWriter::new(io::stdout().lock());
    if args.output == OutputFormat::Csv {
        write_line(&mut out, "n,k,sub_k,seconds")?;
    }
    let mut ok = true;
    for &k in &args.ks {
        let report = bench::run(&args.bench_sizes, k, args.repetitions)?;
        for row in &report.rows {
            let secs = row.elapsed.as_secs_f64();
            let line = match args.output {
                OutputFormat::Csv => format!("{},{},{},{secs:.6}", row.n, row.k, row.sub_k),
                OutputFormat::Jsonl => format!(
                    "{{\"n\":{},\"k\":{},\"sub_k\":{},\"seconds\":{secs:.6}}}",
                    row.n, row.k, row.sub_k
                ),
            };
            write_line(&mut out, &line)?;
        }
        for &(small, large, ratio) in &report.ratios {
            let limit = bench::SCALING_SLACK * large as f64 / small as f64;
            eprintln!("k={k}: time ratio {small} -> {large} is {ratio:.2} (limit {limit:.1})");
        }
        ok &= report.scaling_ok;
    }
    out.flush()?;
    if !ok {
        eprintln!("scaling exceeded the linear allowance");
    }
    Ok(ok)
}

fn run_corpus(args: &CorpusArgs) -> Result<()> {
    if args.max_n > MAX_ENUMERATION_ORDER {
        bail!("corpus generation supports orders up to {MAX_ENUMERATION_ORDER}");
    }
    let mut out = BufWriter::new(io::stdout().lock());
    for g in graphs_up_to(args.max_n).iter().skip(args.min_n.saturating_sub(1)).flatten() {
        if args.regular.is_none_or(|r| g.regular_degree() == Some(r)) {
            write_line(&mut out, &encode_graph6(g))?;
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let (args, mode, filters) = match &cli.command {
        Command::Compute(a) => (a, Mode::Compute, &[][..]),
        Command::Bounds(a) => (a, Mode::Bounds, &[][..]),
        Command::Exact(a) => (a, Mode::Exact, &[][..]),
        Command::Critical(a) => (a, Mode::Critical, &[][..]),
        Command::Scan(s) => (&s.run, Mode::Scan, s.filter.as_slice()),
        Command::Bench(b) => return run_bench(b),
        Command::Corpus(c) => return run_corpus(c).map(|()| true),
    };
    let s = run_records(args, mode, filters)?;
    if mode == Mode::Scan {
        eprintln!(
            "scan: graphs {} records {} emitted {} equality {} ed-critical {} ea-critical {} \
             vd-critical {} check-failures {} violations {} errors {}",
            s.graphs,
            s.records,
            s.emitted,
            s.equality,
            s.ed_critical,
            s.ea_critical,
            s.vd_critical,
            s.check_failures,
            s.violations,
            s.errors
        );
    }
    Ok(s.errors == 0 && s.violations == 0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            if e.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe) {
                return ExitCode::SUCCESS;
            }
            eprintln!("subk: {e:#}");
            ExitCode::from(2)
        }
    }
}
