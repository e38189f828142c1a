//! Result values of the subcommands. Each one is serialized as-is for
//! `--json` and rendered by [`Report::human`] otherwise.

use std::fmt::Write;

use serde::Serialize;
use targetctl::controllability::{Policy, RealizationDocument};
use targetctl::leader_selection::TraceEvent;
use targetctl::zero_forcing::Force;
use targetctl::{Certificate, Status, Verdict, VertexSet};

pub trait Report: Serialize {
    fn human(&self) -> String;

    /// Whether the run should exit with status 1.
    fn failed(&self) -> bool {
        false
    }
}

fn force_lines(out: &mut String, forces: &[Force]) {
    for f in forces {
        let _ = writeln!(out, "  {f}");
    }
}

#[derive(Serialize)]
pub struct ZfReport {
    pub initial: VertexSet,
    pub derived: VertexSet,
    pub zero_forcing: bool,
    pub forces: Vec<Force>,
    #[serde(skip)]
    pub check: bool,
}

impl Report for ZfReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "initial: {}", self.initial);
        let _ = writeln!(out, "derived: {}", self.derived);
        let _ = writeln!(out, "zero forcing: {}", if self.zero_forcing { "yes" } else { "no" });
        let _ = writeln!(out, "forces:");
        force_lines(&mut out, &self.forces);
        out
    }

    fn failed(&self) -> bool {
        self.check && !self.zero_forcing
    }
}

#[derive(Serialize)]
pub struct LayerRow {
    pub index: usize,
    pub vertices: VertexSet,
    pub arcs: Vec<[usize; 2]>,
    pub forced: bool,
}

#[derive(Serialize)]
pub struct LayersReport {
    pub derived: VertexSet,
    pub inside_derived: VertexSet,
    pub unreachable: VertexSet,
    pub layers: Vec<LayerRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dot_files: Vec<String>,
}

impl Report for LayersReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "derived: {}", self.derived);
        if !self.inside_derived.is_empty() {
            let _ = writeln!(out, "targets already derived: {}", self.inside_derived);
        }
        for l in &self.layers {
            let arcs: Vec<String> = l.arcs.iter().map(|[u, v]| format!("{u}->{v}")).collect();
            let _ = writeln!(
                out,
                "V_{} = {}  forced: {}  arcs: {}",
                l.index,
                l.vertices,
                if l.forced { "yes" } else { "no" },
                arcs.join(" ")
            );
        }
        if !self.unreachable.is_empty() {
            let _ = writeln!(out, "unreachable targets: {}", self.unreachable);
        }
        for f in &self.dot_files {
            let _ = writeln!(out, "wrote {f}");
        }
        out
    }
}

#[derive(Serialize)]
#[serde(transparent)]
pub struct CheckReport(pub Verdict);

fn describe(out: &mut String, c: &Certificate) {
    match c {
        Certificate::LayersForced {
            derived, layers, ..
        } => {
            let _ = writeln!(out, "every distance layer is forced by D(V_L) = {derived}");
            for l in layers {
                let _ = writeln!(out, "  V_{} = {}", l.index, l.vertices);
            }
        }
        Certificate::LayerNotForced {
            derived,
            layer,
            vertices,
            first_unforced,
        } => {
            let _ = writeln!(
                out,
                "layer V_{layer} = {vertices} is not forced by D(V_L) = {derived}; {first_unforced} stays white"
            );
        }
        Certificate::UnreachableTargets { targets, .. } => {
            let _ = writeln!(out, "targets {targets} are not reachable from the leaders");
        }
        Certificate::NotZeroForcing { set, derived } => {
            let _ = writeln!(out, "{set} is not zero forcing; its derived set is {derived}");
        }
        Certificate::ZeroForcing { set, forces } => {
            let _ = writeln!(out, "{set} is zero forcing:");
            force_lines(out, forces);
        }
        Certificate::RankDeficient {
            policy,
            sample,
            rank,
            p,
            ..
        } => {
            let _ = writeln!(
                out,
                "{} realization (sample {sample}) has output rank {rank} < {p}",
                policy_name(*policy)
            );
        }
        Certificate::Inconclusive {
            sufficient,
            necessary,
            full_rank_samples,
        } => {
            describe(out, sufficient);
            describe(out, necessary);
            let _ = writeln!(out, "{full_rank_samples} samples had full output rank");
        }
    }
}

pub fn policy_name(p: Policy) -> &'static str {
    match p {
        Policy::Adjacency => "adjacency",
        Policy::Laplacian => "laplacian",
        Policy::Random => "random",
        Policy::NullVector => "null-vector",
    }
}

impl Report for CheckReport {
    fn human(&self) -> String {
        let v = &self.0;
        let mut out = format!("status: {}\n", v.status);
        describe(&mut out, &v.certificate);
        let _ = writeln!(out, "samples: {}", v.samples);
        if let Some(seed) = v.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        out
    }

    fn failed(&self) -> bool {
        self.0.status == Status::Negative
    }
}

#[derive(Serialize)]
pub struct RankReport {
    pub policy: Policy,
    pub seed: u64,
    pub rank: usize,
    pub p: usize,
    pub full_rank: bool,
    pub realization: RealizationDocument,
}

impl Report for RankReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "policy: {}", policy_name(self.policy));
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "output rank: {} of {}", self.rank, self.p);
        let _ = writeln!(out, "matrix:");
        for row in &self.realization.matrix {
            let _ = writeln!(out, "  {}", row.join(" "));
        }
        out
    }
}

#[derive(Serialize)]
pub struct WitnessFound {
    pub policy: Policy,
    pub sample: usize,
    pub rank: usize,
    pub p: usize,
    pub realization: RealizationDocument,
}

#[derive(Serialize)]
pub struct WitnessReport {
    pub status: Status,
    pub samples: usize,
    pub seed: u64,
    pub witness: Option<WitnessFound>,
}

impl Report for WitnessReport {
    fn human(&self) -> String {
        let mut out = String::new();
        match &self.witness {
            Some(w) => {
                let _ = writeln!(
                    out,
                    "status: NEGATIVE ({} sample {}, rank {} < {})",
                    policy_name(w.policy),
                    w.sample,
                    w.rank,
                    w.p
                );
                let json = serde_json::to_string(&w.realization).expect("serializable");
                let _ = writeln!(out, "{json}");
            }
            None => {
                let _ = writeln!(out, "no witness in {} samples", self.samples);
            }
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        out
    }

    fn failed(&self) -> bool {
        self.witness.is_some()
    }
}

#[derive(Serialize)]
pub struct RootsetReport {
    pub targets: VertexSet,
    pub cover: Vec<Vec<u8>>,
    pub root_set: VertexSet,
    pub optimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optima: Option<Vec<VertexSet>>,
}

impl Report for RootsetReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cover matrix (rows = targets {}):", self.targets);
        for (t, row) in self.targets.iter().zip(&self.cover) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  {t:>3}: {}", cells.join(" "));
        }
        let kind = if self.optimal { "minimum" } else { "greedy" };
        let _ = writeln!(out, "root set ({kind}): {}", self.root_set);
        if let Some(optima) = &self.optima {
            let _ = writeln!(out, "{} optima:", optima.len());
            for o in optima {
                let _ = writeln!(out, "  {o}");
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct SelectReport {
    pub targets: VertexSet,
    pub root_set: VertexSet,
    pub optimal: bool,
    pub additions: Vec<usize>,
    pub leaders: VertexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verdict>,
    #[serde(skip)]
    pub trace: Vec<TraceEvent>,
}

impl Report for SelectReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let kind = if self.optimal { "minimum" } else { "greedy" };
        let _ = writeln!(out, "root set ({kind}): {}", self.root_set);
        for e in &self.trace {
            match e {
                TraceEvent::LayerFail {
                    layer,
                    vertices,
                    unforced,
                } => {
                    let _ = writeln!(out, "  layer {layer} {vertices} not forced, adding {unforced}");
                }
                TraceEvent::LayerPass { layer, vertices } => {
                    let _ = writeln!(out, "  layer {layer} {vertices} forced");
                }
                _ => {}
            }
        }
        let _ = writeln!(out, "leaders: {}", self.leaders);
        if let Some(v) = &self.verification {
            let _ = writeln!(out, "verification: {}", v.status);
        }
        out
    }

    fn failed(&self) -> bool {
        self.verification
            .as_ref()
            .is_some_and(|v| v.status != Status::Positive)
    }
}

#[derive(Serialize)]
pub struct DotReport {
    pub dot: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub written_to: Option<String>,
}

impl Report for DotReport {
    fn human(&self) -> String {
        match &self.written_to {
            Some(path) => format!("wrote {path}\n"),
            None => self.dot.clone(),
        }
    }
}
