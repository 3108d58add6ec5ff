//! The `rigidlink` command line: argument grammar, dispatch and output.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::combinatorial::{stress_linked_1, stress_linked_2};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matroid::{Matroid, MatroidOracle};
use crate::rigidity::{bridges, is_circuit, is_independent, is_linked, is_rigid, m_components, rank_d, Framework};
use crate::rng::Rng;
use crate::stress::{gauss_fiber_dim, is_globally_rigid, is_stress_linked, shared_stress_nullity};
use crate::stress_matroid::{affine_matroid_oracle, conic_at_infinity, stress_matroid_oracle};
use crate::verify::{run_suite, Item, Report, Status, SuiteParams, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

const DEFAULT_DIM: usize = 2;

#[derive(Parser, Debug)]
#[command(name = "rigidlink", version, about = "Generic rigidity, stress-linked pairs and stress matroids over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args, Debug)]
struct Common {
    /// Dimension (default 2; suites pick their own when omitted).
    #[arg(long, value_name = "N")]
    d: Option<usize>,
    #[arg(long, env = "RIGIDLINK_SEED", default_value_t = 0)]
    seed: u64,
    /// Independent random frameworks per randomized query.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 1 unless the boolean answer equals this value.
    #[arg(long, value_name = "BOOL")]
    expect: Option<bool>,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    common: Common,
    /// Edge-list file, or `-` for standard input.
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    u: usize,
    #[arg(long)]
    v: usize,
    #[command(flatten)]
    graph: GraphArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatroidQuery {
    Rank,
    Loops,
    Components,
    Circuits,
}

#[derive(Args, Debug)]
struct MatroidArgs {
    #[arg(value_enum)]
    query: MatroidQuery,
    /// Largest circuit size listed by `circuits`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[command(flatten)]
    graph: GraphArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    suite: String,
    #[command(flatten)]
    common: Common,
    /// Largest vertex count of the canonical catalog.
    #[arg(long, value_name = "N")]
    n_max: Option<usize>,
    /// Number of random samples.
    #[arg(long, value_name = "K")]
    random: Option<usize>,
    /// Directory receiving one edge-list file per failed item or finding.
    #[arg(long, value_name = "DIR")]
    counterexample_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generic rank of the rigidity matroid.
    Rank(GraphArgs),
    /// Generic rigidity in dimension d.
    Rigid(GraphArgs),
    /// Edge set independent in the rigidity matroid.
    Independent(GraphArgs),
    /// Edge set is a rigidity circuit.
    Circuit(GraphArgs),
    /// Adding uv does not raise the rank.
    Linked(PairArgs),
    /// Edges in no rigidity circuit.
    Bridges(GraphArgs),
    /// Rigidity-matroid components, one per line.
    Components(GraphArgs),
    /// Shared stress nullity.
    Nullity(GraphArgs),
    /// Generic global rigidity.
    GloballyRigid(GraphArgs),
    /// Whether u and v are stress-linked.
    StressLinked(PairArgs),
    /// Deterministic stress-linked decider for d in {1, 2}.
    StressLinkedComb(PairArgs),
    /// Dimension of the Gauss fiber.
    GaussDim(GraphArgs),
    /// Queries on the generic stress matroid.
    StressMatroid(MatroidArgs),
    /// Queries on the affine matroid of edge directions.
    AffineMatroid(MatroidArgs),
    /// Whether a random framework's edge directions lie on a conic at infinity.
    Conic(GraphArgs),
    /// Runs a verification suite.
    Verify(VerifyArgs),
}

/// Answer to a single query: its text rendering, its record, and its
/// boolean value when it has one.
struct Answer {
    text: String,
    item: Item,
    boolean: Option<bool>,
}

struct Context {
    graph: Graph,
    label: String,
    d: usize,
    rng: Rng,
    reps: usize,
}

impl Context {
    fn answer(&self, query: &str, args: String, value: String, text: String, boolean: Option<bool>) -> Answer {
        let mut item = Item {
            graph_id: self.label.clone(),
            query: query.to_string(),
            args,
            value,
            witness: String::new(),
            status: Status::Pass,
            graph: self.graph.clone(),
        };
        if let Some(false) = boolean {
            item.status = Status::Fail;
        }
        Answer { text, item, boolean }
    }

    fn boolean(&self, query: &str, b: bool) -> Answer {
        self.answer(query, format!("d={}", self.d), b.to_string(), b.to_string(), Some(b))
    }

    fn number(&self, query: &str, x: usize) -> Answer {
        self.answer(query, format!("d={}", self.d), x.to_string(), x.to_string(), None)
    }

    fn edge_list(&self, edges: &[usize]) -> String {
        edges.iter().map(|&e| fmt_edge(self.graph.edge(e))).collect::<Vec<_>>().join(" ")
    }

    /// Edge sets rendered one per line for text and `;`-separated for records.
    fn edge_sets(&self, query: &str, sets: &[Vec<usize>]) -> Answer {
        let rendered: Vec<String> = sets.iter().map(|s| self.edge_list(s)).collect();
        self.answer(query, format!("d={}", self.d), rendered.join(";"), rendered.join("\n"), None)
    }
}

fn fmt_edge((u, v): Edge) -> String {
    format!("{u}-{v}")
}

fn read_graph(file: &str, stdin: &mut dyn Read) -> Result<(Graph, String)> {
    if file == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text)?;
        Ok((Graph::parse(&text)?, "stdin".to_string()))
    } else {
        let text = std::fs::read_to_string(file)?;
        Ok((Graph::parse(&text)?, file.to_string()))
    }
}

fn context(args: &GraphArgs, stdin: &mut dyn Read) -> Result<Context> {
    let (graph, label) = read_graph(&args.file, stdin)?;
    let d = args.common.d.unwrap_or(DEFAULT_DIM);
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    Ok(Context {
        graph,
        label,
        d,
        rng: Rng::new(args.common.seed),
        reps: args.common.reps as usize,
    })
}

fn matroid_answer(cx: &Context, name: &str, oracle: &MatroidOracle, a: &MatroidArgs) -> Result<Answer> {
    Ok(match a.query {
        MatroidQuery::Rank => cx.number(&format!("{name}-rank"), oracle.rank()),
        MatroidQuery::Loops => {
            let loops = oracle.loops();
            let list = cx.edge_list(&loops);
            cx.answer(&format!("{name}-loops"), format!("d={}", cx.d), list.clone(), list, None)
        }
        MatroidQuery::Components => cx.edge_sets(&format!("{name}-components"), &oracle.components()?),
        MatroidQuery::Circuits => {
            let mut answer = cx.edge_sets(&format!("{name}-circuits"), &oracle.circuits_up_to(a.k)?);
            answer.item.args = format!("d={} k={}", cx.d, a.k);
            answer
        }
    })
}

fn pair_answer(cx: &mut Context, query: &str, a: &PairArgs, linked: bool, witness: Option<String>) -> Answer {
    let mut answer = cx.answer(query, format!("d={} u={} v={}", cx.d, a.u, a.v), linked.to_string(), linked.to_string(), Some(linked));
    if let Some(w) = witness {
        answer.text.push_str(&format!("\nwitness: {w}"));
        answer.item.witness = w;
    }
    answer
}

fn query(command: &Command, stdin: &mut dyn Read) -> Result<Answer> {
    match command {
        Command::Rank(a) => {
            let mut cx = context(a, stdin)?;
            let r = rank_d(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.number("rank", r))
        }
        Command::Rigid(a) => {
            let mut cx = context(a, stdin)?;
            let b = is_rigid(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.boolean("rigid", b))
        }
        Command::Independent(a) => {
            let mut cx = context(a, stdin)?;
            let b = is_independent(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.boolean("independent", b))
        }
        Command::Circuit(a) => {
            let mut cx = context(a, stdin)?;
            let b = is_circuit(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.boolean("circuit", b))
        }
        Command::Linked(a) => {
            let mut cx = context(&a.graph, stdin)?;
            let b = is_linked(&cx.graph, a.u, a.v, cx.d, &mut cx.rng, cx.reps)?;
            Ok(pair_answer(&mut cx, "linked", a, b, None))
        }
        Command::Bridges(a) => {
            let mut cx = context(a, stdin)?;
            let b = bridges(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            let list = cx.edge_list(&b);
            Ok(cx.answer("bridges", format!("d={}", cx.d), list.clone(), list, None))
        }
        Command::Components(a) => {
            let mut cx = context(a, stdin)?;
            let c = m_components(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.edge_sets("components", &c))
        }
        Command::Nullity(a) => {
            let mut cx = context(a, stdin)?;
            let k = shared_stress_nullity(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.number("nullity", k))
        }
        Command::GloballyRigid(a) => {
            let mut cx = context(a, stdin)?;
            let b = is_globally_rigid(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.boolean("globally-rigid", b))
        }
        Command::StressLinked(a) => {
            let mut cx = context(&a.graph, stdin)?;
            let b = is_stress_linked(&cx.graph, a.u, a.v, cx.d, &mut cx.rng, cx.reps)?;
            Ok(pair_answer(&mut cx, "stress-linked", a, b, None))
        }
        Command::StressLinkedComb(a) => {
            let mut cx = context(&a.graph, stdin)?;
            match cx.d {
                1 => {
                    let b = stress_linked_1(&cx.graph, a.u, a.v)?;
                    Ok(pair_answer(&mut cx, "stress-linked-comb", a, b, None))
                }
                2 => {
                    let linkage = stress_linked_2(&cx.graph, a.u, a.v)?;
                    let witness = linkage.witness.map(|w| w.into_iter().map(fmt_edge).collect::<Vec<_>>().join(" "));
                    Ok(pair_answer(&mut cx, "stress-linked-comb", a, linkage.linked, witness))
                }
                d => Err(Error::UnsupportedDimension { operation: "stress-linked-comb", d }),
            }
        }
        Command::GaussDim(a) => {
            let mut cx = context(a, stdin)?;
            let k = gauss_fiber_dim(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            Ok(cx.number("gauss-dim", k))
        }
        Command::StressMatroid(a) => {
            let mut cx = context(&a.graph, stdin)?;
            let oracle = stress_matroid_oracle(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            matroid_answer(&cx, "stress-matroid", &oracle, a)
        }
        Command::AffineMatroid(a) => {
            let mut cx = context(&a.graph, stdin)?;
            let oracle = affine_matroid_oracle(&cx.graph, cx.d, &mut cx.rng, cx.reps)?;
            matroid_answer(&cx, "affine-matroid", &oracle, a)
        }
        Command::Conic(a) => {
            let mut cx = context(a, stdin)?;
            let f = Framework::random(&cx.graph, cx.d, &mut cx.rng)?;
            Ok(cx.boolean("conic", conic_at_infinity(&f)))
        }
        Command::Verify(_) => unreachable!("handled by run"),
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Rank(a)
        | Command::Rigid(a)
        | Command::Independent(a)
        | Command::Circuit(a)
        | Command::Bridges(a)
        | Command::Components(a)
        | Command::Nullity(a)
        | Command::GloballyRigid(a)
        | Command::GaussDim(a)
        | Command::Conic(a) => &a.common,
        Command::Linked(a) | Command::StressLinked(a) | Command::StressLinkedComb(a) => &a.graph.common,
        Command::StressMatroid(a) | Command::AffineMatroid(a) => &a.graph.common,
        Command::Verify(a) => &a.common,
    }
}

fn verify(a: &VerifyArgs, command_line: &str) -> Result<Report> {
    let params = SuiteParams {
        d: a.common.d,
        n_max: a.n_max,
        random: a.random,
        seed: a.common.seed,
        reps: a.common.reps as usize,
    };
    let report = run_suite(&a.suite, command_line, &params)?;
    if let Some(dir) = &a.counterexample_dir {
        report.write_counterexamples(dir)?;
    }
    Ok(report)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let c = common(&cli.command);
    let (format, expect) = (c.format, c.expect);
    let command_line = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");

    let outcome = if let Command::Verify(a) = &cli.command {
        verify(a, &command_line).map(|report| {
            let text = match format {
                Format::Text => report.to_text(),
                Format::Records => report.to_records(true),
            };
            (text, Some(report.all_passed()))
        })
    } else {
        query(&cli.command, stdin).and_then(|answer| {
            if expect.is_some() && answer.boolean.is_none() {
                return Err(Error::Usage(format!("--expect needs a boolean query, {} is not one", answer.item.query)));
            }
            let text = match format {
                Format::Text => format!("{}\n", answer.text),
                Format::Records => {
                    let mut report = Report::new(command_line.clone(), c.seed, c.reps as usize);
                    report.items.push(answer.item);
                    report.to_records(false)
                }
            };
            Ok((text, answer.boolean))
        })
    };
    match outcome {
        Ok((text, boolean)) => {
            let _ = write!(out, "{text}");
            let is_verify = matches!(cli.command, Command::Verify(_));
            match (expect, boolean) {
                (Some(want), Some(got)) if want != got => EXIT_FALSE,
                (None, Some(false)) if is_verify => EXIT_FALSE,
                _ => EXIT_OK,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
