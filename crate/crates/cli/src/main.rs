use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use sqcolor::color::{color_square_17, parse_sqc, to_sqc, verify_square_coloring, ColorError};
use sqcolor::discharge::{audit, DischargeError};
use sqcolor::embed::{parse_epg, to_epg};
use sqcolor::gen::{generate, GenError, GenSpec};
use sqcolor::metrics::{n2_upper_bound, vertex_profile, VertexProfile};
use sqcolor::reduce::{find_reduction, ReduceError};
use sqcolor::square::{chi2_exact, DEFAULT_VERTEX_LIMIT};
use sqcolor::EmbeddedGraph;

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_IRREDUCIBLE: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(
    name = "sqcolor",
    version,
    about = "Distance-two coloring of plane graphs with maximum degree five"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color the square of a graph with at most 17 colors.
    Color {
        /// EPG file, or `-` for standard input.
        input: String,
    },
    /// Check a coloring; exits 1 if two vertices within distance two share a color.
    Verify {
        graph: String,
        /// sqc file, or `-` for standard input.
        coloring: String,
    },
    /// Exact chromatic number of the square.
    Chi2 {
        input: String,
        #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
        limit: usize,
    },
    /// First reduction the colorer would apply.
    Reduce { input: String },
    /// Charges before and after redistribution, with forbidden structures.
    Audit { input: String },
    /// Local statistics for one vertex or all of them.
    Profile {
        input: String,
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Emit a named or seeded random graph.
    #[command(group(ArgGroup::new("source").required(true).args(["name", "random"])))]
    Gen {
        #[arg(long)]
        name: Option<String>,
        /// Vertex count and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        random: Option<Vec<u64>>,
    },
}

/// A failed run: exit code and message for standard error.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = run(&cli.command).and_then(|(text, code)| {
        emit(cli.output.as_deref(), &text)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprint!("{}", f.message);
            if !f.message.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Color { input } => color(&read_graph(input)?),
        Command::Verify { graph, coloring } => {
            if graph == "-" && coloring == "-" {
                return Err(Failure::new(
                    EXIT_USAGE,
                    "only one input can be standard input",
                ));
            }
            let g = read_graph(graph)?;
            let colors = parse_sqc(&read_input(coloring)?)
                .map_err(|e| Failure::new(EXIT_DATA, format!("{coloring}: {e}")))?;
            let violations = verify_square_coloring(&g, &colors)
                .map_err(|e| Failure::new(EXIT_DATA, e.to_string()))?;
            let mut out = String::new();
            for v in &violations {
                writeln!(out, "violation {} {} distance {}", v.u, v.v, v.distance).unwrap();
            }
            if violations.is_empty() {
                let k = colors.iter().max().copied().unwrap_or(0);
                writeln!(out, "ok {} vertices, {k} colors", g.vertex_count()).unwrap();
                Ok((out, 0))
            } else {
                Ok((out, EXIT_VIOLATIONS))
            }
        }
        Command::Chi2 { input, limit } => {
            let chi = chi2_exact(&read_graph(input)?, *limit)
                .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
            Ok((format!("{chi}\n"), 0))
        }
        Command::Reduce { input } => match find_reduction(&read_graph(input)?) {
            Ok(w) => Ok((format!("{w}\n"), 0)),
            Err(e) => Err(reduce_failure(e)),
        },
        Command::Audit { input } => match audit(&read_graph(input)?) {
            Ok(report) => Ok((report.to_string(), 0)),
            Err(e @ DischargeError::NotConnected(_)) => {
                Err(Failure::new(EXIT_PRECONDITION, e.to_string()))
            }
        },
        Command::Profile { input, vertex } => {
            let g = read_graph(input)?;
            let vertices: Vec<usize> = match vertex {
                Some(v) if *v >= g.vertex_count() => {
                    return Err(Failure::new(EXIT_USAGE, format!("no vertex {v}")))
                }
                Some(v) => vec![*v],
                None => (0..g.vertex_count()).collect(),
            };
            let mut out = String::new();
            for v in vertices {
                let p = vertex_profile(&g, v).unwrap();
                out.push_str(&profile_line(&g, &p));
            }
            Ok((out, 0))
        }
        Command::Gen { name, random } => {
            let spec = match (name, random.as_deref()) {
                (Some(name), _) => GenSpec::Named(name.clone()),
                (None, Some(&[n, seed])) => GenSpec::random(n as usize, seed),
                _ => return Err(Failure::new(EXIT_USAGE, "give --name or --random N SEED")),
            };
            let g = generate(&spec).map_err(|e| match e {
                GenError::UnknownName(_) | GenError::Unsatisfiable(_) => {
                    Failure::new(EXIT_USAGE, e.to_string())
                }
                GenError::Embed(_) => Failure::new(EXIT_DATA, e.to_string()),
            })?;
            Ok((to_epg(&g), 0))
        }
    }
}

/// Colors each component on its own and merges under the original ids.
fn color(g: &EmbeddedGraph) -> Outcome {
    let mut colors = vec![0; g.vertex_count()];
    for (part, ids) in g.component_subgraphs() {
        let k = color_square_17(&part).map_err(|e| match e {
            ColorError::Reduce(r) => reduce_failure(r),
            other => Failure::new(EXIT_PRECONDITION, other.to_string()),
        })?;
        for (local, &orig) in ids.iter().enumerate() {
            colors[orig] = k.color(local);
        }
    }
    Ok((to_sqc(&colors), 0))
}

fn reduce_failure(e: ReduceError) -> Failure {
    match e {
        ReduceError::IrreducibleGraph(report) => Failure::new(
            EXIT_IRREDUCIBLE,
            format!("no reducible configuration found\n{report}"),
        ),
        other => Failure::new(EXIT_DATA, other.to_string()),
    }
}

fn profile_line(g: &EmbeddedGraph, p: &VertexProfile) -> String {
    let counts = |m: &std::collections::BTreeMap<usize, usize>| {
        m.iter()
            .map(|(d, c)| format!("{d}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let corners = if p.corners.is_empty() {
        "-".to_string()
    } else {
        p.corners
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let bound = match n2_upper_bound(g, p.vertex) {
        Ok(b) => b.to_string(),
        Err(_) => "degenerate".to_string(),
    };
    format!(
        "vertex {} degree {} n2 {} bound {} faces [{}] neighbours [{}] bad5 {} corners {} t5 {}\n",
        p.vertex,
        p.degree,
        p.n2_size,
        bound,
        counts(&p.f_counts),
        counts(&p.n_counts),
        p.is_bad5,
        corners,
        p.t5
    )
}

fn read_input(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::new(EXIT_IO, format!("{path}: {e}")))?;
    Ok(text)
}

fn read_graph(path: &str) -> Result<EmbeddedGraph, Failure> {
    parse_epg(&read_input(path)?).map_err(|e| Failure::new(EXIT_DATA, format!("{path}: {e}")))
}

/// Writes all of `text` or nothing: files are replaced by rename.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let io_fail = |e: io::Error| Failure::new(EXIT_IO, e.to_string());
    let Some(path) = path else {
        return io::stdout().write_all(text.as_bytes()).map_err(io_fail);
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_fail)?;
    tmp.write_all(text.as_bytes()).map_err(io_fail)?;
    tmp.persist(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}
