//! Command-line front end: decide em-width, validate decompositions,
//! generate corpora and gadgets, and report matching bounds.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use emw_core::{
    decide_emwidth, decide_emwidth_traced, exact_emwidth_capped, generate_gadget,
    matching_no_nice_family, matching_no_r_family, maximum_matching, parse_pg, parse_td, print_pg,
    print_td, validate_em_decomposition, GadgetSpec, PlaneGraph, TreeDecomposition,
};
use emw_cli::random_plane_graph;

#[derive(Parser)]
#[command(name = "emwidth", about = "Embedded-width tools for plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the em-width is at most k (or search for it)
    Emw(EmwArgs),
    /// Validate a tree decomposition against a plane graph
    Validate(ValidateArgs),
    /// Generate gadget or random corpus graphs
    Generate(GenerateArgs),
    /// Compute a matching and report the guaranteed bound as CSV
    Matching(MatchingArgs),
}

#[derive(Args)]
struct EmwArgs {
    /// input .pg file
    #[arg(long)]
    input: PathBuf,
    /// witness .td output path
    #[arg(long)]
    output: Option<PathBuf>,
    /// decision threshold
    #[arg(long)]
    k: Option<usize>,
    /// binary-search the exact em-width instead of deciding one k
    #[arg(long)]
    search: bool,
    /// write the per-level reduction trace to this file
    #[arg(long)]
    trace: Option<PathBuf>,
    /// size cap for the exact oracle when cross-checking
    #[arg(long, default_value_t = emw_core::DEFAULT_EXACT_CAP)]
    exact_cap: usize,
}

#[derive(Args)]
struct ValidateArgs {
    /// input .pg file
    #[arg(long)]
    input: PathBuf,
    /// decomposition .td file
    #[arg(long)]
    td: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    /// output .pg path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// gadget parameters p,q,k[,n]
    #[arg(long, value_delimiter = ',')]
    gadget: Option<Vec<usize>>,
    /// generate a seeded random connected plane graph
    #[arg(long)]
    random: bool,
    /// vertex count for --random
    #[arg(long)]
    n: Option<usize>,
    /// seed for --random
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// minimum degree preserved by random edge deletion
    #[arg(long, default_value_t = 1)]
    min_degree: usize,
}

#[derive(Args)]
struct MatchingArgs {
    /// input .pg file
    #[arg(long)]
    input: PathBuf,
    /// max | no-family | no-nice-family
    #[arg(long, default_value = "max")]
    mode: String,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

fn read_graph(path: &PathBuf) -> anyhow::Result<PlaneGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(path: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_witness(args: &EmwArgs, t: &TreeDecomposition) -> anyhow::Result<()> {
    if let Some(out) = &args.output {
        fs::write(out, print_td(t)).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(())
}

fn cmd_emw(args: &EmwArgs) -> anyhow::Result<u8> {
    let g = read_graph(&args.input)?;
    if args.search {
        let n = g.vertex_count();
        if n <= args.exact_cap {
            let (w, t) = exact_emwidth_capped(&g, args.exact_cap)?;
            println!("emw = {w}");
            emit_witness(args, &t)?;
            return Ok(0);
        }
        let mut lo = g.faces().max_bounded_length().saturating_sub(1).max(1);
        let mut hi = n.max(2) - 1;
        let mut best: Option<(usize, TreeDecomposition)> = None;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match decide_emwidth(&g, mid)?.decomposition {
                Some(t) => {
                    hi = mid;
                    best = Some((mid, t));
                }
                None => lo = mid + 1,
            }
        }
        let (k, t) = match best.filter(|(k, _)| *k == lo) {
            Some(kt) => kt,
            None => {
                let a = decide_emwidth(&g, lo)?;
                (lo, a.decomposition.context("search window excluded the answer")?)
            }
        };
        println!("emw = {k}");
        emit_witness(args, &t)?;
        return Ok(0);
    }
    let k = args.k.context("either --k or --search is required")?;
    let (answer, trace) = decide_emwidth_traced(&g, k)?;
    if let Some(path) = &args.trace {
        let mut out = String::new();
        for (i, lvl) in trace.iter().enumerate() {
            out.push_str(&format!(
                "level {i}: n {} -> {}, m {} -> {}, events {}\n",
                lvl.vertices,
                lvl.reduced_vertices,
                lvl.edges,
                lvl.reduced_edges,
                lvl.script.events.len()
            ));
            for ev in &lvl.script.events {
                out.push_str(&format!("  {ev:?}\n"));
            }
        }
        fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    if answer.decision {
        println!("yes (width {})", answer.certificate_width.unwrap_or(k));
        emit_witness(args, answer.decomposition.as_ref().unwrap())?;
        Ok(0)
    } else {
        println!("no");
        Ok(1)
    }
}

fn cmd_validate(args: &ValidateArgs) -> anyhow::Result<u8> {
    let g = read_graph(&args.input)?;
    let text = fs::read_to_string(&args.td)
        .with_context(|| format!("reading {}", args.td.display()))?;
    let t = parse_td(&text).with_context(|| format!("parsing {}", args.td.display()))?;
    let report = validate_em_decomposition(&g, &t)?;
    if report.all_properties_hold() {
        println!("width {}, properties 1-4: ok", report.width);
        Ok(0)
    } else {
        println!("{report:?}");
        Ok(1)
    }
}

fn cmd_generate(args: &GenerateArgs) -> anyhow::Result<u8> {
    let g = if let Some(parts) = &args.gadget {
        let spec = match parts.as_slice() {
            [p, q, k] => GadgetSpec { p: *p, q: *q, k: *k, n: None },
            [p, q, k, n] => GadgetSpec { p: *p, q: *q, k: *k, n: Some(*n) },
            _ => bail!("--gadget expects p,q,k or p,q,k,n"),
        };
        generate_gadget(&spec)?
    } else if args.random {
        let n = args.n.context("--random requires --n")?;
        random_plane_graph(n, args.seed, args.min_degree)
    } else {
        bail!("nothing to generate: pass --gadget or --random");
    };
    write_or_print(&args.output, &print_pg(&g))?;
    Ok(0)
}

fn cmd_matching(args: &MatchingArgs) -> anyhow::Result<u8> {
    let g = read_graph(&args.input)?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let (value, bound) = match args.mode.as_str() {
        "max" => (maximum_matching(&g.to_abstract()).edges.len(), 0),
        "no-family" => {
            let (matching, _) = matching_no_r_family(&g, 3)?;
            (matching.edges.len(), n.div_ceil(33))
        }
        "no-nice-family" => {
            let (matching, _) = matching_no_nice_family(&g)?;
            (matching.edges.len(), n.div_ceil(37))
        }
        other => bail!("unknown mode {other:?}"),
    };
    let pass = value >= bound;
    let instance = args.input.display();
    let line = format!("instance,n,m,mode,value,bound,pass\n{instance},{n},{m},{},{value},{bound},{pass}\n", args.mode);
    write_or_print(&args.output, &line)?;
    Ok(if pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Emw(a) => cmd_emw(a),
        Command::Validate(a) => cmd_validate(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Matching(a) => cmd_matching(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
