use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use randic::bmatching::Objective;
use randic::connector::connect_by_two_switches;
use randic::experiments::{self, EnsembleParams, GraphType};
use randic::generators::{erdos_renyi, geometric, scale_free, seeded_rng};
use randic::graph::{randic_index_exact, Sign, SimpleGraph};
use randic::graphic::{havel_hakimi, havel_hakimi_random};
use randic::io;
use randic::oracle;
use randic::randic_opt::{
    format_percent, maximize_randic, optimize_directed_randic, optimize_randic_alpha, optimize_randic,
};

#[derive(Parser)]
#[command(name = "randic", version, about = "Degree-sequence realizations with extremal Randić index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Edgelist,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    Edgelist,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenType {
    Er,
    Geo,
    Sf,
}

impl From<GenType> for GraphType {
    fn from(t: GenType) -> Self {
        match t {
            GenType::Er => GraphType::Er,
            GenType::Geo => GraphType::Geo,
            GenType::Sf => GraphType::Sf,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Realization with minimum index
    Min(OptArgs),
    /// Realization with maximum index
    Max(OptArgs),
    /// Havel-Hakimi realization
    Realize {
        file: PathBuf,
        #[arg(long)]
        hh_random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "edgelist")]
        out: OutFormat,
    },
    /// Directed index optimum for a file of `out in` pairs
    Directed {
        file: PathBuf,
        #[arg(long, default_value = "++")]
        pq: String,
        #[arg(long)]
        max: bool,
    },
    /// Index divided by the maximum over realizations of the same degrees
    Normalize {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        format: InFormat,
    },
    /// Join the components of a graph with two-switches
    Connect {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "auto")]
        format: InFormat,
    },
    /// Random graph as an edge list
    Gen {
        #[arg(value_enum)]
        kind: GenType,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        mindeg: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// Output file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ensemble run writing records.csv, summary.csv and boxplot.csv
    Experiment {
        #[arg(long = "type", value_enum)]
        kind: GenType,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        mindeg: Option<usize>,
    },
    /// Brute-force optimum by enumerating every realization
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max: bool,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        i_know_this_is_slow: bool,
    },
}

#[derive(clap::Args)]
struct OptArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "edgelist")]
    out: OutFormat,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path, format: InFormat) -> Result<SimpleGraph> {
    let text = read(path)?;
    Ok(match format {
        InFormat::Auto => io::parse_graph_auto(&text)?,
        InFormat::Edgelist => io::parse_edge_list(&text)?,
        InFormat::Matrix => io::parse_adjacency_matrix(&text)?,
    })
}

fn render(g: &SimpleGraph, out: OutFormat) -> String {
    match out {
        OutFormat::Edgelist => io::format_edge_list(g),
        OutFormat::Matrix => io::format_adjacency_matrix(g),
    }
}

fn optimize(args: &OptArgs, objective: Objective) -> Result<()> {
    let d = io::parse_degree_sequence(&read(&args.file)?)?;
    if args.alpha == 1.0 {
        let res = optimize_randic(&d, objective, &Default::default())?;
        println!("{}", res.index_value);
        print!("{}", render(&res.realization, args.out));
    } else {
        let res = optimize_randic_alpha(&d, args.alpha, objective)?;
        println!("{}", res.index_value);
        print!("{}", render(&res.realization, args.out));
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Min(args) => optimize(&args, Objective::Min)?,
        Command::Max(args) => optimize(&args, Objective::Max)?,
        Command::Realize { file, hh_random, seed, out } => {
            let d = io::parse_degree_sequence(&read(&file)?)?;
            let g = if hh_random { havel_hakimi_random(&d, &mut seeded_rng(seed)) } else { havel_hakimi(&d) };
            let Some(g) = g else { bail!("degree sequence {d} is not graphic") };
            println!("{}", randic_index_exact(&g)?);
            print!("{}", render(&g, out));
        }
        Command::Directed { file, pq, max } => {
            let d = io::parse_pairs(&read(&file)?)?;
            let (p, q) = Sign::parse_pair(&pq)?;
            let objective = if max { Objective::Max } else { Objective::Min };
            let res = optimize_directed_randic(&d, p, q, objective)?;
            println!("{}", res.index_value);
            print!("{}", io::format_directed_edge_list(&res.realization));
        }
        Command::Normalize { file, format } => {
            let g = read_graph(&file, format)?;
            if g.edge_count() == 0 {
                bail!("graph has no edges; nothing to normalize");
            }
            let r = randic_index_exact(&g)?;
            let max = maximize_randic(&g.degree_sequence())?.index_value;
            let ratio = r as f64 / max as f64;
            println!("{ratio}");
            println!("R={r} max={max} normalized={}", format_percent(ratio));
        }
        Command::Connect { file, seed, format } => {
            let g = read_graph(&file, format)?;
            let rep = connect_by_two_switches(&g, &mut seeded_rng(seed))?;
            print!("{}", io::format_edge_list(&rep.graph));
            println!("{}", rep.summary_line());
        }
        Command::Gen { kind, n, p, r, mindeg, seed, out } => {
            let mut rng = seeded_rng(seed);
            let params = EnsembleParams { p, r, min_degree: mindeg };
            let g = match kind {
                GenType::Er => erdos_renyi(n, params.er_p(n), &mut rng)?,
                GenType::Geo => geometric(n, params.geo_r(n), &mut rng)?,
                GenType::Sf => scale_free(n, params.sf_min_degree(), &mut rng)?,
            };
            let text = io::format_edge_list(&g);
            match out {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Experiment { kind, n, trials, seed, out, p, r, mindeg } => {
            if trials == 0 {
                bail!("--trials must be positive");
            }
            let ty = GraphType::from(kind);
            let params = EnsembleParams { p, r, min_degree: mindeg };
            let records = experiments::run_ensemble(ty, n, trials, seed, &params)?;
            let s = experiments::write_outputs(&out, ty, n, &records)?;
            println!(
                "connected={} disconnected={} no_connected_realization={}",
                s.connected, s.disconnected, s.no_connected_realization
            );
            if let Some(b) = s.pct_orig_vs_min {
                println!("mean_pct_orig_vs_min={:.4}", b.mean);
            }
            match s.pct_heur_vs_min {
                Some(b) => println!("mean_pct_heur_vs_min={:.4}", b.mean),
                None => println!("{}", s.heuristic_note()),
            }
        }
        Command::Oracle { file, max, connected, i_know_this_is_slow } => {
            if !i_know_this_is_slow {
                bail!("the oracle enumerates every realization; pass --i-know-this-is-slow to run it");
            }
            let d = io::parse_degree_sequence(&read(&file)?)?;
            let count = oracle::enumerate_realizations(&d)?.count();
            let objective = if max { Objective::Max } else { Objective::Min };
            match oracle::brute_optimum(&d, objective, connected)? {
                Some((r, g)) => {
                    println!("{r}");
                    print!("{}", io::format_edge_list(&g));
                }
                None => println!("infeasible"),
            }
            eprintln!("realizations={count}");
        }
    }
    Ok(())
}
