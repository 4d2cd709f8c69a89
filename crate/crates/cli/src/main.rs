//! `qentropy`: topological and quotient-topological entropy from the command
//! line.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (or `true` for `check-morphism` / `iso`) |
//! | 1 | `false` for `check-morphism` / `iso` |
//! | 2 | usage, I/O, parse or dimension error |
//! | 3 | empty subshift, no section, or a violated horseshoe / quotient condition |
//! | 4 | enumeration, state or size cap exceeded |
//! | 5 | no compatible selection for the interval quotient |
//! | 6 | power iteration did not converge |

mod report;

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qentropy::formats::{parse_adj, parse_pam, parse_vmap, write_adj};
use qentropy::{
    compatible_selection, entropy, enumerate_image_words, enumerate_words, find_right_inverse, graph_isomorphic,
    growth_rate, image_word_counts, is_graph_morphism, kronecker_product, quotient_entropy, quotient_entropy_interval,
    quotient_graph, validate_good_quotient, validate_horseshoe, word_counts, AdjacencyMatrix, Config, Error,
    QuotientMethod,
};

use crate::report::{Output, Scale};

#[derive(Debug, Parser)]
#[command(
    name = "qentropy",
    version,
    about = "Entropy of topological Markov chains and their quotients"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Emit one JSON object on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report entropies in bits instead of nats.
    #[arg(long, global = true)]
    log2: bool,
    /// Convergence tolerance of the spectral radius bracket.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Power-iteration budget per strongly connected component.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_iterations: usize,
    /// Largest number of words an enumeration may produce.
    #[arg(long, global = true, env = "QE_ENUM_CAP", default_value_t = 10_000_000)]
    enum_cap: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Topological entropy of a graph.
    Entropy { graph: PathBuf },
    /// Entropy of a graph observed through a vertex labeling.
    Quotient {
        graph: PathBuf,
        labels: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Longest word length for the bruteforce method.
        #[arg(long, default_value_t = 25)]
        nmax: usize,
    },
    /// Markov graph and entropy of a piecewise affine horseshoe.
    Horseshoe {
        dynamics: PathBuf,
        /// Good quotient map to reduce by.
        #[arg(long)]
        quotient: Option<PathBuf>,
    },
    /// Whether a vertex map sends every edge of A to an edge of B.
    CheckMorphism { a: PathBuf, b: PathBuf, map: PathBuf },
    /// Lexicographically least right inverse of a labeling onto its quotient graph.
    FindSection { graph: PathBuf, labels: PathBuf },
    /// Exact count of words of length N with growth diagnostics.
    Words {
        graph: PathBuf,
        #[arg(short = 'n', long = "length")]
        n: usize,
        /// Count image words under this labeling instead.
        #[arg(long)]
        labels: Option<PathBuf>,
        /// List the words themselves, subject to the enumeration cap.
        #[arg(long)]
        list: bool,
    },
    /// Kronecker product of two graphs, written in .adj format.
    Product { a: PathBuf, b: PathBuf },
    /// Whether two graphs are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Section,
    Sofic,
    Bruteforce,
}

/// Failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EmptySubshift
            | Error::SectionAbsent
            | Error::ZeroCount { .. }
            | Error::GridNotInvariant { .. }
            | Error::ConstantPiece { .. }
            | Error::SinkInMarkovGraph { .. }
            | Error::GridMismatch { .. }
            | Error::NotMonotone { .. }
            | Error::NotSurjective { .. } => 3,
            Error::SizeLimitExceeded { .. } | Error::CapExceeded { .. } | Error::StateCapExceeded { .. } => 4,
            Error::NoCompatibleSelection(_) => 5,
            Error::NonConvergence { .. } => 6,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_input(path: &Path) -> CliResult<String> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load<T>(path: &Path, parse: fn(&str) -> qentropy::Result<T>) -> CliResult<T> {
    let text = read_input(path)?;
    parse(&text).map_err(|e| {
        let mut failure = Failure::from(e);
        failure.message = format!("{}: {}", path.display(), failure.message);
        failure
    })
}

fn load_graph(path: &Path) -> CliResult<AdjacencyMatrix> {
    load(path, parse_adj)
}

fn config(global: &GlobalArgs) -> CliResult<Config> {
    if !(global.tolerance > 0.0 && global.tolerance.is_finite()) {
        return Err(Failure::usage("--tolerance must be a positive number"));
    }
    if global.max_iterations == 0 || global.enum_cap == 0 {
        return Err(Failure::usage("--max-iterations and --enum-cap must be positive"));
    }
    Ok(Config {
        tolerance: global.tolerance,
        max_iterations: global.max_iterations,
        enumeration_cap: global.enum_cap,
        ..Config::default()
    })
}

fn run(cli: Cli) -> CliResult<u8> {
    let cfg = config(&cli.global)?;
    let out = Output {
        json: cli.global.json,
        scale: if cli.global.log2 { Scale::Bits } else { Scale::Nats },
    };
    match cli.command {
        Command::Entropy { graph } => {
            let a = load_graph(&graph)?;
            out.entropy(&entropy(&a, &cfg)?, a.n());
        }
        Command::Quotient {
            graph,
            labels,
            method,
            nmax,
        } => {
            let a = load_graph(&graph)?;
            let f = load(&labels, parse_vmap)?;
            let method = match method {
                MethodArg::Auto => QuotientMethod::Auto,
                MethodArg::Section => QuotientMethod::Section,
                MethodArg::Sofic => QuotientMethod::Sofic,
                MethodArg::Bruteforce => QuotientMethod::Bruteforce { n_max: nmax },
            };
            out.quotient(&quotient_entropy(&a, &f, method, &cfg)?, a.n());
        }
        Command::Horseshoe { dynamics, quotient } => {
            let spec = load(&dynamics, parse_pam)?;
            let markov = validate_horseshoe(&spec)?;
            let h = entropy(&markov, &cfg)?;
            let reduction = match quotient {
                None => None,
                Some(path) => {
                    let q = load(&path, parse_pam)?;
                    validate_good_quotient(&spec, &q)?;
                    let selection = compatible_selection(&spec, &q)?;
                    let report = quotient_entropy_interval(&spec, &q, &cfg)?;
                    Some((selection, report))
                }
            };
            out.horseshoe(&markov, &h, reduction.as_ref());
        }
        Command::CheckMorphism { a, b, map } => {
            let (a, b) = (load_graph(&a)?, load_graph(&b)?);
            let f = load(&map, parse_vmap)?;
            let holds = is_graph_morphism(&a, &b, &f)?;
            out.boolean("morphism", holds);
            return Ok(if holds { 0 } else { 1 });
        }
        Command::FindSection { graph, labels } => {
            let a = load_graph(&graph)?;
            let f = load(&labels, parse_vmap)?;
            let b = quotient_graph(&a, &f)?;
            let g = find_right_inverse(&a, &b, &f)?.ok_or(Error::SectionAbsent)?;
            out.section(&g);
        }
        Command::Words { graph, n, labels, list } => {
            let a = load_graph(&graph)?;
            if n == 0 {
                return Err(Failure::usage("word length must be at least 1"));
            }
            let labels = labels.map(|path| load(&path, parse_vmap)).transpose()?;
            if list {
                let words = match &labels {
                    Some(f) => enumerate_image_words(&a, f, n, &cfg)?.into_iter().collect(),
                    None => enumerate_words(&a, n, &cfg)?,
                };
                out.word_list(&words);
                return Ok(0);
            }
            let counts = match labels {
                Some(f) => image_word_counts(&a, &f, n, &cfg)?,
                None => word_counts(&a, n)?,
            };
            let growth = if n >= 2 { Some(growth_rate(&counts)?) } else { None };
            let counts: Vec<String> = counts.iter().map(ToString::to_string).collect();
            out.words(&counts, growth.as_ref());
        }
        Command::Product { a, b } => {
            let product = kronecker_product(&load_graph(&a)?, &load_graph(&b)?);
            out.matrix(&product, &write_adj(&product));
        }
        Command::Iso { a, b } => {
            let holds = graph_isomorphic(&load_graph(&a)?, &load_graph(&b)?)?;
            out.boolean("isomorphic", holds);
            return Ok(if holds { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("qentropy: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
