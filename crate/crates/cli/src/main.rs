//! `bookembed`: embed, verify, solve, generate and render.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 hypothesis failed (not cubic,
//! not bipartite, not planar), 3 search exhausted, 4 parse or input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bookembed::book::{exact_mbt, verify_matching_book_embedding, SearchError, DEFAULT_NODE_LIMIT};
use bookembed::corpus::{
    gen_doubled_c4, gen_prism, gen_random_glued, gen_theta, read_embedding, read_mel, write_embedding, write_mel,
    PieceKind, STANDARD_MENU,
};
use bookembed::dispersable::{embed_dispersable_with, EmbedError, EmbedOptions};
use bookembed::render::render_svg;
use bookembed::{CyclicOrder, Multigraph, PageColoring};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bookembed", version, about = "Dispersable book embeddings of cubic planar bipartite multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a 3-page matching, subhamiltonian book embedding.
    Embed {
        /// MEL files (`-` for standard input).
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Output file for a single input; default is standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Worker threads when several inputs are given.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check an embedding against a graph.
    Verify { graph: String, embedding: String },
    /// Exact matching book thickness.
    Mbt {
        graph: String,
        /// Largest page count to try.
        #[arg(long, default_value_t = 8)]
        pages: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Print a generated instance in MEL format.
    Gen {
        kind: GenKind,
        /// Prism parameter k (the prism has 4k vertices).
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        pieces: usize,
    },
    /// Print an SVG arc diagram of an embedding.
    Render {
        graph: String,
        embedding: String,
        /// Render even if the embedding fails verification.
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Theta,
    Prism,
    DoubledC4,
    Glued,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::new(4, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::new(4, format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<Multigraph, Failure> {
    read_mel(&read_input(path)?).map_err(|e| Failure::new(4, format!("{path}: {e}")))
}

fn load_embedding(g: &Multigraph, path: &str) -> Result<(CyclicOrder, PageColoring), Failure> {
    read_embedding(&read_input(path)?)
        .and_then(|f| f.resolve(g))
        .map_err(|e| Failure::new(4, format!("{path}: {e}")))
}

fn embed_error(e: EmbedError) -> Failure {
    match e {
        EmbedError::NotCubic { .. } | EmbedError::NotBipartite { .. } => Failure::new(2, e.to_string()),
        EmbedError::NotPlanar { ref witness } => {
            let detail = witness
                .as_ref()
                .map(|w| format!(" ({:?} subdivision on {:?})", w.kind, w.branch_vertices))
                .unwrap_or_default();
            Failure::new(2, format!("not planar{detail}"))
        }
        EmbedError::BaseCaseExhausted { .. } => Failure::new(3, e.to_string()),
        _ => Failure::new(1, e.to_string()),
    }
}

/// Embedding text plus the one-line summary.
fn embed_one(g: &Multigraph, opts: EmbedOptions) -> Result<(String, String), Failure> {
    let e = embed_dispersable_with(g, opts).map_err(embed_error)?;
    let report = verify_matching_book_embedding(g, &e.order, &e.coloring);
    let summary = format!(
        "pages={} crossings_per_page={} subhamiltonian={}",
        report.page_count,
        report.crossing_count(),
        report.subhamiltonian
    );
    Ok((write_embedding(g, &e.order, &e.coloring), summary))
}

fn cmd_embed(inputs: &[String], output: Option<&Path>, node_limit: u64, jobs: usize) -> CmdResult {
    let opts = EmbedOptions { node_limit };
    if inputs.len() == 1 {
        let g = load_graph(&inputs[0])?;
        let (text, summary) = embed_one(&g, opts)?;
        match output {
            Some(path) => {
                fs::write(path, text).map_err(|e| Failure::new(4, format!("{}: {e}", path.display())))?;
                println!("{summary}");
            }
            None => {
                print!("{text}");
                eprintln!("{summary}");
            }
        }
        return Ok(());
    }
    if output.is_some() {
        return Err(Failure::new(4, "--output needs exactly one input"));
    }
    // several inputs: each embedding goes next to its input as `<input>.emb`
    let run = |path: &String| -> Result<String, Failure> {
        let g = load_graph(path)?;
        let (text, summary) = embed_one(&g, opts)?;
        let out = format!("{path}.emb");
        fs::write(&out, text).map_err(|e| Failure::new(4, format!("{out}: {e}")))?;
        Ok(summary)
    };
    let jobs = jobs.max(1).min(inputs.len());
    let mut results: Vec<Option<Result<String, Failure>>> = (0..inputs.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let chunk = inputs.len().div_ceil(jobs);
        for (paths, slots) in inputs.chunks(chunk).zip(results.chunks_mut(chunk)) {
            let run = &run;
            s.spawn(move || {
                for (p, slot) in paths.iter().zip(slots.iter_mut()) {
                    *slot = Some(run(p));
                }
            });
        }
    });
    let mut code = 0;
    for (path, r) in inputs.iter().zip(results) {
        match r.unwrap() {
            Ok(summary) => println!("{path}: {summary}"),
            Err(f) => {
                println!("{path}: error: {}", f.message);
                code = code.max(f.code);
            }
        }
    }
    if code == 0 {
        Ok(())
    } else {
        Err(Failure::new(code, "some inputs failed"))
    }
}

fn cmd_verify(graph: &str, embedding: &str) -> CmdResult {
    let g = load_graph(graph)?;
    let (order, coloring) = load_embedding(&g, embedding)?;
    let report = verify_matching_book_embedding(&g, &order, &coloring);
    print!("{report}");
    if report.ok {
        Ok(())
    } else {
        Err(Failure::new(1, "verification failed"))
    }
}

fn cmd_mbt(graph: &str, pages: usize, node_limit: u64) -> CmdResult {
    let g = load_graph(graph)?;
    match exact_mbt(&g, pages, node_limit) {
        Ok(r) => {
            println!("mbt={} nodes={}", r.value, r.nodes);
            print!("{}", write_embedding(&g, &r.witness.order, &r.witness.coloring));
            Ok(())
        }
        Err(SearchError::NoneWithinBudget { budget }) => {
            println!("mbt>{budget}");
            Err(Failure::new(1, format!("no embedding within {budget} pages")))
        }
        Err(e @ SearchError::Exhausted { .. }) => Err(Failure::new(3, e.to_string())),
        Err(e) => Err(Failure::new(4, e.to_string())),
    }
}

fn cmd_gen(kind: GenKind, k: Option<usize>, seed: u64, pieces: usize) -> CmdResult {
    let g = match kind {
        GenKind::Theta => gen_theta(),
        GenKind::DoubledC4 => gen_doubled_c4(),
        GenKind::Prism => {
            let k = k.ok_or_else(|| Failure::new(4, "prism needs a parameter k"))?;
            gen_prism(k).map_err(|e| Failure::new(4, e.to_string()))?
        }
        GenKind::Glued => {
            let inst = gen_random_glued(seed, pieces, &STANDARD_MENU).map_err(|e| Failure::new(4, e.to_string()))?;
            println!("# glued seed={seed} pieces={}", describe_pieces(&inst.pieces));
            inst.graph
        }
    };
    print!("{}", write_mel(&g));
    Ok(())
}

fn describe_pieces(pieces: &[PieceKind]) -> String {
    pieces
        .iter()
        .map(|p| match p {
            PieceKind::Theta => "theta".to_string(),
            PieceKind::DoubledC4 => "doubled-c4".to_string(),
            PieceKind::Prism(k) => format!("prism{k}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_render(graph: &str, embedding: &str, force: bool) -> CmdResult {
    let g = load_graph(graph)?;
    let (order, coloring) = load_embedding(&g, embedding)?;
    let report = verify_matching_book_embedding(&g, &order, &coloring);
    if !report.ok && !force {
        eprint!("{report}");
        return Err(Failure::new(1, "embedding fails verification; use --force to render anyway"));
    }
    print!("{}", render_svg(&g, &order, &coloring, !report.ok));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Embed { inputs, output, node_limit, jobs } => cmd_embed(inputs, output.as_deref(), *node_limit, *jobs),
        Command::Verify { graph, embedding } => cmd_verify(graph, embedding),
        Command::Mbt { graph, pages, node_limit } => cmd_mbt(graph, *pages, *node_limit),
        Command::Gen { kind, k, seed, pieces } => cmd_gen(*kind, *k, *seed, *pieces),
        Command::Render { graph, embedding, force } => cmd_render(graph, embedding, *force),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
