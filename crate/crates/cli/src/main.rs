use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bei_core::cutsets::enumerate_cut_sets;
use bei_core::geometry::dual_graph;
use bei_core::graph::{parse_edge_list, parse_graph6, Graph};
use bei_core::linalg::{parse_fields, Field};
use bei_core::poset::build_poset;
use bei_core::survey::{
    check_record, connected_graphs_up_to, run_survey, Analyzer, AssertionSet, SurveyConfig, MAX_GENERATED_ORDER,
};
use bei_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Cut sets, unmixedness, accessibility and Cohen-Macaulayness of binomial
/// edge ideals, decided combinatorially.
#[derive(Parser)]
#[command(name = "bei", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one graph, printed as JSON.
    Analyze(AnalyzeArgs),
    /// Analyze many graphs and check the implication chain.
    Survey(SurveyArgs),
    /// Print the cut sets of one graph.
    Cutsets(InputArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Edge-list file, `-` for stdin.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// A graph6 string.
    #[arg(long)]
    graph6: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PosetFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AssertMode {
    Theorems,
    None,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated fields: `q` or primes.
    #[arg(long, env = "BEI_FIELDS", default_value = "q,2,3")]
    fields: String,
    /// Include the cut sets.
    #[arg(long)]
    cutsets: bool,
    /// Include the poset of primes.
    #[arg(long, value_enum)]
    poset: Option<PosetFormat>,
    /// Include the dual graph.
    #[arg(long)]
    dual_graph: bool,
    #[arg(long, env = "BEI_MEMO_MAX", default_value_t = 0)]
    memo_max: usize,
}

#[derive(Args)]
struct SurveyArgs {
    /// Every connected graph on `--min-n..=N` vertices.
    #[arg(long, conflicts_with = "graph6_stream", required_unless_present = "graph6_stream")]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    /// File with one graph6 string per line, `-` for stdin.
    #[arg(long)]
    graph6_stream: Option<PathBuf>,
    /// Append records to this JSONL file.
    #[arg(long)]
    jsonl: Option<PathBuf>,
    /// Keep records already in `--jsonl` and skip those graphs.
    #[arg(long, requires = "jsonl")]
    resume: bool,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long = "assert", value_enum, default_value = "theorems")]
    assertions: AssertMode,
    #[arg(long, env = "BEI_FIELDS", default_value = "q,2,3")]
    fields: String,
    #[arg(long, env = "BEI_MEMO_MAX", default_value_t = 0)]
    memo_max: usize,
}

enum Failure {
    Input(String),
    Bound(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_bound() {
            Failure::Bound(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load_graph(input: &InputArgs) -> Result<Graph, Failure> {
    match (&input.edges, &input.graph6) {
        (Some(path), _) => Ok(parse_edge_list(&read_source(path)?)?),
        (_, Some(s)) => Ok(parse_graph6(s.as_bytes())?),
        (None, None) => Err(Failure::Input("one of --edges or --graph6 is required".into())),
    }
}

fn fields(list: &str) -> Result<Vec<Field>, Failure> {
    Ok(parse_fields(list)?)
}

fn emit(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn print(value: &Value) {
    emit(&serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let g = load_graph(&args.input)?;
    let analyzer = Analyzer::new(fields(&args.fields)?, args.memo_max);
    let record = analyzer.analyze(&g)?;
    let broken = check_record(&record);
    let mut out = json!({ "record": record });
    if args.cutsets {
        out["cut_sets"] = serde_json::to_value(enumerate_cut_sets(&g)?).expect("cut sets serialize");
    }
    match args.poset {
        Some(PosetFormat::Json) => out["poset"] = serde_json::to_value(build_poset(&g)?).expect("poset serializes"),
        Some(PosetFormat::Dot) => out["poset"] = Value::String(build_poset(&g)?.to_dot()),
        None => {}
    }
    if args.dual_graph {
        out["dual_graph"] = serde_json::to_value(dual_graph(&g)?).expect("dual graph serializes");
    }
    print(&out);
    if broken.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("{broken:?}")))
    }
}

fn survey(args: &SurveyArgs) -> Result<(), Failure> {
    let config = SurveyConfig {
        fields: fields(&args.fields)?,
        assertions: match args.assertions {
            AssertMode::Theorems => AssertionSet::Theorems,
            AssertMode::None => AssertionSet::None,
        },
        jobs: args.jobs,
        memo_max: args.memo_max,
        jsonl: args.jsonl.clone(),
        resume: args.resume,
        ..SurveyConfig::default()
    };
    let summary = if let Some(path) = &args.graph6_stream {
        let reader: Box<dyn BufRead> = if path == Path::new("-") {
            Box::new(BufReader::new(io::stdin()))
        } else {
            let file = fs::File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Box::new(BufReader::new(file))
        };
        let source = reader.lines().enumerate().filter_map(|(i, line)| match line {
            Err(e) => Some(Err(Error::Io(e))),
            Ok(l) if l.trim().is_empty() => None,
            Ok(l) => Some(parse_graph6(l.trim().as_bytes()).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })),
        });
        run_survey(source, &config)?
    } else {
        let max_n = args.max_n.expect("clap enforces a source");
        if max_n > MAX_GENERATED_ORDER {
            return Err(Failure::Bound(format!(
                "--max-n {max_n} exceeds {MAX_GENERATED_ORDER}; use --graph6-stream"
            )));
        }
        run_survey(connected_graphs_up_to(args.min_n, max_n)?.into_iter().map(Ok), &config)?
    };
    print(&serde_json::to_value(&summary).expect("summary serializes"));
    eprintln!("{}", summary.conjecture_status);
    if summary.violations.is_empty() {
        Ok(())
    } else {
        for v in &summary.violations {
            eprintln!("counterexample {:?}: {}", v.assertion, v.record.graph6);
        }
        Err(Failure::Violation(format!("{} violation(s)", summary.violations.len())))
    }
}

fn cutsets(input: &InputArgs) -> Result<(), Failure> {
    let g = load_graph(input)?;
    emit(&serde_json::to_string(&enumerate_cut_sets(&g)?).expect("cut sets serialize"));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Survey(s) => survey(s),
        Command::Cutsets(i) => cutsets(i),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            log::error!("assertion violated: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(m)) => {
            eprintln!("resource bound: {m}");
            ExitCode::from(3)
        }
    }
}
