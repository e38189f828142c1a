mod report;
mod spec;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use targetctl::controllability::{falsify_strong_tc, RealizationDocument};
use targetctl::io::{export_bipartite_dot, export_dot, load_graph, Decorations, GraphFormat, LoadedGraph};
use targetctl::leader_selection::{all_min_root_sets, greedy_root_set, DEFAULT_EXACT_THRESHOLD};
use targetctl::partition::build_layer_graphs;
use targetctl::{
    build_cover, check_necessary, check_sufficient, combined_verdict, derived_set, min_root_set, partition_targets,
    sample_qd, select_leaders, DiGraph, Policy, RationalMatrix, Realization, RootSet, SelectOptions, Status,
    VertexSet,
};

use report::*;
use spec::parse_vertex_spec;

#[derive(Parser)]
#[command(name = "targetctl", version, about = "Strong targeted controllability of leader-follower networks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Graph file; reads stdin when absent or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input format; guessed from the content when absent.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Leader vertices, e.g. `1,2` or `1..3`. Overrides the file.
    #[arg(long, global = true)]
    leaders: Option<String>,
    /// Target vertices, e.g. `1..8`. Overrides the file.
    #[arg(long, global = true)]
    targets: Option<String>,
    #[arg(long, global = true, env = "TARGETCTL_SEED", default_value_t = 0)]
    seed: u64,
    /// Realizations to sample before giving up.
    #[arg(long, global = true, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Emit one JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Largest vertex count for the exact root-set solver.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_THRESHOLD)]
    exact_threshold: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Adjacency,
    Laplacian,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Derived set and chronological force list of the leaders.
    Zf {
        /// Exit 1 unless the leaders form a zero forcing set.
        #[arg(long)]
        check: bool,
    },
    /// Distance layers of the targets and their bipartite graphs.
    Layers {
        /// Write one DOT file per layer into this directory.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
    },
    /// Controllability verdict.
    Check {
        #[arg(long, conflicts_with_all = ["necessary", "full"])]
        sufficient: bool,
        #[arg(long, conflicts_with = "full")]
        necessary: bool,
        /// Both graph conditions plus a sampling search (the default).
        #[arg(long)]
        full: bool,
    },
    /// Output controllability rank of one sampled realization.
    Rank {
        #[arg(long, value_enum, default_value = "random")]
        policy: PolicyArg,
    },
    /// Search for a rank-deficient realization and print it.
    Witness,
    /// Minimum set of vertices reaching every target.
    Rootset {
        /// Enumerate every minimum root set.
        #[arg(long)]
        all_optima: bool,
        /// Use the greedy cover instead of the exact solver.
        #[arg(long)]
        heuristic: bool,
    },
    /// Leader selection: minimum root set plus greedy layer repair.
    Select {
        /// Re-check the result with the full verdict.
        #[arg(long)]
        verify: bool,
        /// Write the selection trace as JSON.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        #[arg(long)]
        heuristic: bool,
    },
    /// Graphviz drawing with leaders filled and targets double circled.
    ExportDot {
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

struct Input {
    graph: DiGraph,
    leaders: Option<VertexSet>,
    targets: Option<VertexSet>,
}

impl Input {
    fn leaders(&self) -> Result<VertexSet> {
        self.leaders
            .clone()
            .context("no leaders given; pass --leaders or include them in the input file")
    }

    fn targets(&self) -> Result<VertexSet> {
        self.targets
            .clone()
            .context("no targets given; pass --targets or include them in the input file")
    }
}

fn read_input(g: &Global) -> Result<Input> {
    let bytes = match g.input.as_deref() {
        Some(p) if p != Path::new("-") => std::fs::read(p).with_context(|| format!("reading {}", p.display()))?,
        _ => {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).context("reading stdin")?;
            buf
        }
    };
    let format = match g.format {
        Some(Format::Json) => GraphFormat::Json,
        Some(Format::Edgelist) => GraphFormat::EdgeList,
        None if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') => GraphFormat::Json,
        None => GraphFormat::EdgeList,
    };
    let LoadedGraph {
        graph,
        leaders,
        targets,
    } = load_graph(&bytes, format).context("malformed graph")?;
    let pick = |flag: &Option<String>, file: Option<VertexSet>, what: &str| -> Result<Option<VertexSet>> {
        let set = match flag {
            Some(s) => Some(parse_vertex_spec(s).with_context(|| format!("bad --{what}"))?),
            None => file,
        };
        if let Some(s) = &set {
            s.check_within(graph.n()).with_context(|| format!("bad {what}"))?;
        }
        Ok(set)
    };
    let leaders = pick(&g.leaders, leaders, "leaders")?;
    let targets = pick(&g.targets, targets, "targets")?;
    Ok(Input {
        graph,
        leaders,
        targets,
    })
}

fn nonempty(set: VertexSet, what: &str) -> Result<VertexSet> {
    if set.is_empty() {
        bail!("the {what} set is empty");
    }
    Ok(set)
}

fn emit<R: Report>(r: &R, json: bool) -> Result<u8> {
    if json {
        println!("{}", serde_json::to_string(r)?);
    } else {
        print!("{}", r.human());
    }
    Ok(u8::from(r.failed()))
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    let input = read_input(g)?;
    let graph = &input.graph;
    let budget = g.budget as usize;
    match cli.command {
        Command::Zf { check } => {
            let initial = input.leaders.clone().unwrap_or_default();
            let state = derived_set(graph, &initial)?;
            let report = ZfReport {
                zero_forcing: state.black.len() == graph.n(),
                initial,
                derived: state.black,
                forces: state.forces,
                check,
            };
            emit(&report, g.json)
        }
        Command::Layers { dot } => {
            let leaders = nonempty(input.leaders()?, "leader")?;
            let targets = nonempty(input.targets()?, "target")?;
            let derived = derived_set(graph, &leaders)?.black;
            let part = partition_targets(graph, &derived, &targets)?;
            let graphs = build_layer_graphs(graph, &part)?;
            let mut dot_files = Vec::new();
            if let Some(dir) = &dot {
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, b) in graphs.iter().enumerate() {
                    let path = dir.join(format!("layer_{}.dot", i + 1));
                    std::fs::write(&path, export_bipartite_dot(b, &format!("G{}", i + 1)))
                        .with_context(|| format!("writing {}", path.display()))?;
                    dot_files.push(path.display().to_string());
                }
            }
            let layers = graphs
                .iter()
                .enumerate()
                .map(|(i, b)| LayerRow {
                    index: i + 1,
                    vertices: b.right().clone(),
                    arcs: b.arcs().map(|(u, v)| [u, v]).collect(),
                    forced: b.run_forcing().all_forced(),
                })
                .collect();
            let report = LayersReport {
                derived,
                inside_derived: part.inside_base,
                unreachable: part.unreachable,
                layers,
                dot_files,
            };
            emit(&report, g.json)
        }
        Command::Check {
            sufficient,
            necessary,
            full: _,
        } => {
            let leaders = input.leaders()?;
            let targets = input.targets()?;
            let mut verdict = if sufficient {
                check_sufficient(graph, &leaders, &targets)?
            } else if necessary {
                check_necessary(graph, &leaders, &targets)?
            } else {
                combined_verdict(graph, &leaders, &targets, budget, g.seed)?
            };
            verdict.seed.get_or_insert(g.seed);
            emit(&CheckReport(verdict), g.json)
        }
        Command::Rank { policy } => {
            let leaders = nonempty(input.leaders()?, "leader")?;
            let targets = nonempty(input.targets()?, "target")?;
            let policy = match policy {
                PolicyArg::Adjacency => Policy::Adjacency,
                PolicyArg::Laplacian => Policy::Laplacian,
                PolicyArg::Random => Policy::Random,
            };
            let x: RationalMatrix = sample_qd(graph, g.seed, policy)?;
            let real = Realization::new(graph.clone(), x, leaders, targets)?;
            let rank = real.output_ctrb_rank();
            let report = RankReport {
                policy,
                seed: g.seed,
                rank,
                p: real.p(),
                full_rank: rank == real.p(),
                realization: RealizationDocument::from(&real),
            };
            emit(&report, g.json)
        }
        Command::Witness => {
            let leaders = nonempty(input.leaders()?, "leader")?;
            let targets = nonempty(input.targets()?, "target")?;
            let found = falsify_strong_tc(graph, &leaders, &targets, budget, g.seed)?;
            let report = WitnessReport {
                status: if found.witness.is_some() {
                    Status::Negative
                } else {
                    Status::Unknown
                },
                samples: found.samples,
                seed: g.seed,
                witness: found.witness.map(|w| WitnessFound {
                    policy: w.policy,
                    sample: w.sample,
                    rank: w.rank,
                    p: w.realization.p(),
                    realization: RealizationDocument::from(&w.realization),
                }),
            };
            emit(&report, g.json)
        }
        Command::Rootset {
            all_optima,
            heuristic,
        } => {
            let targets = input.targets()?;
            let cover = build_cover(graph, &targets)?;
            let root = if heuristic {
                RootSet {
                    members: greedy_root_set(&cover),
                    optimal: false,
                }
            } else {
                min_root_set(&cover, g.exact_threshold)
            };
            let report = RootsetReport {
                optima: all_optima.then(|| all_min_root_sets(&cover)),
                targets,
                cover: cover.rows,
                root_set: root.members,
                optimal: root.optimal,
            };
            emit(&report, g.json)
        }
        Command::Select {
            verify,
            trace,
            heuristic,
        } => {
            let targets = input.targets()?;
            let options = SelectOptions {
                exact_threshold: g.exact_threshold,
                heuristic,
            };
            let sel = select_leaders(graph, &targets, options)?;
            if let Some(path) = &trace {
                let doc = serde_json::to_string_pretty(&sel.trace)?;
                std::fs::write(path, doc).with_context(|| format!("writing {}", path.display()))?;
            }
            let verification = if verify {
                let mut v = combined_verdict(graph, &sel.leaders, &targets, budget, g.seed)?;
                v.seed.get_or_insert(g.seed);
                if v.status != Status::Positive {
                    eprintln!("verification disagrees with the selection: {}", v.status);
                }
                Some(v)
            } else {
                None
            };
            let report = SelectReport {
                additions: sel.additions(),
                targets,
                root_set: sel.root_set.members,
                optimal: sel.root_set.optimal,
                leaders: sel.leaders,
                verification,
                trace: sel.trace,
            };
            emit(&report, g.json)
        }
        Command::ExportDot { output } => {
            let deco = Decorations {
                leaders: input.leaders.clone().unwrap_or_default(),
                targets: input.targets.clone().unwrap_or_default(),
                name: None,
            };
            let dot = export_dot(graph, &deco);
            let written_to = match &output {
                Some(path) => {
                    std::fs::write(path, &dot).with_context(|| format!("writing {}", path.display()))?;
                    Some(path.display().to_string())
                }
                None => None,
            };
            emit(&DotReport { dot, written_to }, g.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
