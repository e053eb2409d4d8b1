//! Command-line surface: solve, enumerate, verify, generate, benchmark.
//!
//! Every command writes byte-identical output for identical arguments
//! (including randomized mode under a fixed seed): components and cut triples
//! are emitted sorted, JSON object keys are ordered, and the cut tree is
//! serialized in node-id order.
//!
//! Exit codes: 0 ok, 2 input error, 3 precondition violation, 4 verification
//! mismatch.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fourecc::cuts::{enumerate_3cuts, Mode};
use fourecc::cuttree::{build_cut_tree, part_sizes};
use fourecc::dfs::build_dfs;
use fourecc::gen::{k4_chain, random_multi, three_cycles};
use fourecc::hashing::assign_compressed_hashes;
use fourecc::oracle::{is_three_edge_connected, verify_all};
use fourecc::reduction::{four_ecc_with, PipelineConfig};
use fourecc::{Error, Multigraph};

#[derive(Parser)]
#[command(name = "fourecc", version, about = "edge-connectivity toolkit for undirected multigraphs")]
struct Cli {
    /// Cut-enumeration strategy.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Deterministic)]
    mode: ModeArg,
    /// Seed for randomized mode and for generators.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Re-verify every candidate exactly (slow; exhaustive preconditions).
    #[arg(long, global = true)]
    paranoid: bool,
    /// Output format; each command supports a subset (see its help).
    /// Defaults to json, except gen and bench which default to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Deterministic,
    Randomized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// 4-edge-connected components of the input graph (json or text).
    Components4 { input: Option<PathBuf> },
    /// All 3-edge-cuts of a 3-edge-connected input (json or text).
    Cuts3 { input: Option<PathBuf> },
    /// The rooted tree of 3-edge-cuts (json or dot).
    CutTree { input: Option<PathBuf> },
    /// Cross-check every stage against the brute-force oracles (small inputs).
    Verify { input: Option<PathBuf> },
    /// Emit a generated instance as edge-list text.
    Gen {
        /// three_cycles, k4_chain, or random_multi
        family: String,
        #[arg(long)]
        n: usize,
        /// Degree for random_multi.
        #[arg(long, default_value_t = 4)]
        d: usize,
    },
    /// Time cut enumeration across instance sizes; prints n, m, seconds, cuts.
    Bench {
        /// Edge counts to target, comma-separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize<<14, 1<<15, 1<<16, 1<<17, 1<<18, 1<<19, 1<<20])]
        sizes: Vec<usize>,
        #[arg(long, default_value = "k4_chain")]
        family: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into() }
    }

    fn precondition(msg: impl Into<String>) -> Self {
        Failure { code: 3, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, output) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    std::process::exit(2);
                }
            } else {
                print!("{output}");
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let mode = match cli.mode {
        ModeArg::Deterministic => Mode::Deterministic,
        ModeArg::Randomized => Mode::Randomized { seed: cli.seed },
    };
    match &cli.cmd {
        Cmd::Components4 { input } => cmd_components4(cli, mode, input.as_deref()),
        Cmd::Cuts3 { input } => cmd_cuts3(cli, mode, input.as_deref()),
        Cmd::CutTree { input } => cmd_cut_tree(cli, mode, input.as_deref()),
        Cmd::Verify { input } => cmd_verify(mode, input.as_deref()),
        Cmd::Gen { family, n, d } => cmd_gen(cli, family, *n, *d),
        Cmd::Bench { sizes, family } => cmd_bench(cli, mode, sizes, family),
    }
}

fn read_graph(input: Option<&std::path::Path>) -> Result<Multigraph, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    Ok(Multigraph::parse(&text)?)
}

fn cmd_components4(
    cli: &Cli,
    mode: Mode,
    input: Option<&std::path::Path>,
) -> Result<String, Failure> {
    let g = read_graph(input)?;
    let labels = four_ecc_with(&g, PipelineConfig { mode, paranoid: cli.paranoid })?;
    // labels are dense and ordered by each class's minimum vertex
    let mut components = vec![Vec::new(); labels.class_count];
    for (v, &c) in labels.label.iter().enumerate() {
        components[c].push(v);
    }
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => Ok(format!(
            "{}\n",
            serde_json::json!({ "components": components })
        )),
        Format::Text => {
            let mut s = String::new();
            for comp in &components {
                let row: Vec<String> = comp.iter().map(|v| v.to_string()).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Dot => Err(Failure::input("components4 supports --format json|text")),
    }
}

/// Rejects inputs that are visibly not 3-edge-connected: degree < 3 gives the
/// incident edge set as a cut, a zero tree-edge hash is a bridge, and two
/// tree edges hashing alike form a 2-cut. Exhaustive only under --paranoid.
fn require_3ecc(g: &Multigraph, seed: u64, paranoid: bool) -> Result<(), Failure> {
    if g.vertex_count() > 1 {
        for v in 0..g.vertex_count() {
            let inc: Vec<usize> = g
                .adj(v)
                .iter()
                .map(|&(_, e)| e as usize)
                .collect();
            if inc.len() < 3 {
                return Err(Failure::precondition(format!(
                    "not 3-edge-connected: vertex {v} has degree {}; edges {inc:?} form a cut",
                    inc.len()
                )));
            }
        }
    }
    let dfs = build_dfs(g, 0)?;
    let h = assign_compressed_hashes(g, &dfs, seed);
    let mut tree_hashes: Vec<(u64, usize)> = (0..g.edge_count())
        .filter(|&e| dfs.is_tree_edge(e))
        .map(|e| (h.ch[e], e))
        .collect();
    for &(hash, e) in &tree_hashes {
        if hash == 0 {
            return Err(Failure::precondition(format!(
                "not 3-edge-connected: edge {e} is a bridge (1-cut [{e}])"
            )));
        }
    }
    tree_hashes.sort_unstable();
    for w in tree_hashes.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Failure::precondition(format!(
                "not 3-edge-connected: edges {} and {} form a 2-cut",
                w[0].1, w[1].1
            )));
        }
    }
    if paranoid && !is_three_edge_connected(g) {
        return Err(Failure::precondition(
            "not 3-edge-connected (exact check failed)",
        ));
    }
    Ok(())
}

fn cmd_cuts3(cli: &Cli, mode: Mode, input: Option<&std::path::Path>) -> Result<String, Failure> {
    let g = read_graph(input)?;
    require_3ecc(&g, cli.seed, cli.paranoid)?;
    let cuts = enumerate_3cuts(&g, mode)?;
    let mut triples: Vec<[usize; 3]> = cuts.iter().map(|c| c.0).collect();
    triples.sort_unstable();
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => Ok(format!("{}\n", serde_json::json!(triples))),
        Format::Text => {
            let mut s = String::new();
            for t in &triples {
                s.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
            }
            Ok(s)
        }
        Format::Dot => Err(Failure::input("cuts3 supports --format json|text")),
    }
}

fn cmd_cut_tree(cli: &Cli, mode: Mode, input: Option<&std::path::Path>) -> Result<String, Failure> {
    let g = read_graph(input)?;
    require_3ecc(&g, cli.seed, cli.paranoid)?;
    let cuts = enumerate_3cuts(&g, mode)?;
    let dfs = build_dfs(&g, 0)?;
    let sizes = part_sizes(&dfs, &cuts)?;
    let tree = build_cut_tree(&dfs, &cuts, &sizes)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => Ok(format!("{}\n", tree.to_json(&cuts))),
        Format::Dot => Ok(tree.to_dot(&cuts)),
        Format::Text => Err(Failure::input("cut-tree supports --format json|dot")),
    }
}

fn cmd_verify(mode: Mode, input: Option<&std::path::Path>) -> Result<String, Failure> {
    let g = read_graph(input)?;
    let reports = verify_all(&g, mode);
    let mut s = String::new();
    let mut failed = false;
    for r in &reports {
        if r.ok() {
            s.push_str(&format!("{}: ok\n", r.stage));
        } else {
            failed = true;
            s.push_str(&format!("{}: {} mismatches\n", r.stage, r.mismatches.len()));
            for m in &r.mismatches {
                s.push_str(&format!("  {m}\n"));
            }
        }
    }
    if failed {
        // still print the report before signalling the mismatch
        print!("{s}");
        return Err(Failure { code: 4, message: "verification mismatch".into() });
    }
    Ok(s)
}

fn make_family(family: &str, n: usize, d: usize, seed: u64) -> Result<Multigraph, Failure> {
    match family {
        "three_cycles" => Ok(three_cycles(n, seed)),
        "k4_chain" => Ok(k4_chain(n)),
        "random_multi" => Ok(random_multi(n, d, seed)),
        _ => Err(Failure::input(format!(
            "unknown family {family:?}; expected three_cycles, k4_chain, or random_multi"
        ))),
    }
}

fn cmd_gen(cli: &Cli, family: &str, n: usize, d: usize) -> Result<String, Failure> {
    let g = make_family(family, n, d, cli.seed)?;
    match cli.format.unwrap_or(Format::Text) {
        Format::Json => Ok(format!("{}\n", g.to_json())),
        Format::Text => Ok(g.to_text()),
        Format::Dot => Err(Failure::input("gen supports --format json|text")),
    }
}

fn cmd_bench(cli: &Cli, mode: Mode, sizes: &[usize], family: &str) -> Result<String, Failure> {
    let mut s = String::from("n m seconds cuts\n");
    for &m in sizes {
        // invert each family's edge count to hit the target m
        let n = match family {
            "k4_chain" => 4 * ((m + 3).div_ceil(9)),
            "three_cycles" => m.div_ceil(3),
            "random_multi" => (2 * m).div_ceil(4),
            _ => 0,
        };
        let g = make_family(family, n.max(4), 4, cli.seed)?;
        let t = Instant::now();
        let cuts = enumerate_3cuts(&g, mode)?;
        let secs = t.elapsed().as_secs_f64();
        s.push_str(&format!(
            "{} {} {:.3} {}\n",
            g.vertex_count(),
            g.edge_count(),
            secs,
            cuts.len()
        ));
    }
    Ok(s)
}
