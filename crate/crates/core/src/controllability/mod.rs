//! Verdicts on strong targeted controllability over the class of
//! distance-information preserving state matrices.
//!
//! * [`check_sufficient`]: the graph condition: the derived set of the
//!   leaders must force every distance layer of the remaining targets.
//! * [`check_necessary`]: `V_L ∪ (V \ V_T)` must be zero forcing.
//! * [`falsify_strong_tc`]: seeded search for a rank-deficient realization.
//! * [`combined_verdict`]: all of the above, in that order.

mod realization;
mod sampling;

pub use realization::{check_support, is_distance_preserving, Realization, RealizationDocument};
pub use sampling::{
    falsify_strong_tc, sample_null_vector, sample_qd, sample_rng, FalsifyReport, Policy, Witness, RETRY_CAP,
    WEIGHT_BOUND,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};
use crate::partition::{build_layer_graphs, partition_targets};
use crate::zero_forcing::{derived_set, Force};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Positive,
    Negative,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Positive => "POSITIVE",
            Status::Negative => "NEGATIVE",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerEvidence {
    pub index: usize,
    pub vertices: VertexSet,
    pub arcs: Vec<[usize; 2]>,
    pub forces: Vec<Force>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every layer graph is forced by the derived set.
    LayersForced {
        derived: VertexSet,
        derived_forces: Vec<Force>,
        layers: Vec<LayerEvidence>,
    },
    /// Layer `layer` is not forced; `first_unforced` stays white.
    LayerNotForced {
        derived: VertexSet,
        layer: usize,
        vertices: VertexSet,
        first_unforced: usize,
    },
    /// No leader reaches these targets.
    UnreachableTargets { derived: VertexSet, targets: VertexSet },
    /// `set = V_L ∪ (V \ V_T)` is not zero forcing; `derived` is its closure.
    NotZeroForcing { set: VertexSet, derived: VertexSet },
    /// `set` is zero forcing, so the necessary condition holds.
    ZeroForcing { set: VertexSet, forces: Vec<Force> },
    /// A concrete distance-preserving realization with rank below `p`.
    RankDeficient {
        policy: Policy,
        sample: usize,
        rank: usize,
        p: usize,
        realization: RealizationDocument,
    },
    /// Neither graph condition decided and no witness was found.
    Inconclusive {
        sufficient: Box<Certificate>,
        necessary: Box<Certificate>,
        full_rank_samples: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    /// Realizations examined to reach the verdict.
    pub samples: usize,
    pub seed: Option<u64>,
}

impl Verdict {
    fn graph_only(status: Status, certificate: Certificate) -> Self {
        Verdict {
            status,
            certificate,
            samples: 0,
            seed: None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdicts always serialize")
    }
}

fn check_sets(g: &DiGraph, leaders: &VertexSet, targets: &VertexSet) -> Result<()> {
    if leaders.is_empty() || targets.is_empty() {
        return Err(Error::EmptySet);
    }
    leaders.check_within(g.n())?;
    targets.check_within(g.n())
}

/// Sufficient graph condition. `POSITIVE` when every layer graph
/// `(D(V_L), V_i)` is forced by `D(V_L)`; `NEGATIVE` when some target is
/// unreachable from the leaders; `UNKNOWN` otherwise, naming the first
/// failing layer and its smallest unforced vertex.
pub fn check_sufficient(g: &DiGraph, leaders: &VertexSet, targets: &VertexSet) -> Result<Verdict> {
    check_sets(g, leaders, targets)?;
    let derived = derived_set(g, leaders)?;
    let part = partition_targets(g, &derived.black, targets)?;
    if !part.unreachable.is_empty() {
        return Ok(Verdict::graph_only(
            Status::Negative,
            Certificate::UnreachableTargets {
                derived: derived.black,
                targets: part.unreachable,
            },
        ));
    }
    let mut layers = Vec::with_capacity(part.depth());
    for (idx, bip) in build_layer_graphs(g, &part)?.into_iter().enumerate() {
        let forcing = bip.run_forcing();
        if let Some(v) = forcing.first_unforced {
            return Ok(Verdict::graph_only(
                Status::Unknown,
                Certificate::LayerNotForced {
                    derived: derived.black,
                    layer: idx + 1,
                    vertices: bip.right().clone(),
                    first_unforced: v,
                },
            ));
        }
        layers.push(LayerEvidence {
            index: idx + 1,
            vertices: bip.right().clone(),
            arcs: bip.arcs().map(|(u, v)| [u, v]).collect(),
            forces: forcing.forces,
        });
    }
    Ok(Verdict::graph_only(
        Status::Positive,
        Certificate::LayersForced {
            derived: derived.black,
            derived_forces: derived.forces,
            layers,
        },
    ))
}

/// Necessary graph condition: `NEGATIVE` iff `V_L ∪ (V \ V_T)` is not zero
/// forcing, `UNKNOWN` otherwise.
pub fn check_necessary(g: &DiGraph, leaders: &VertexSet, targets: &VertexSet) -> Result<Verdict> {
    check_sets(g, leaders, targets)?;
    let set = leaders.union(&VertexSet::full(g.n()).difference(targets));
    let state = derived_set(g, &set)?;
    if state.black.len() == g.n() {
        Ok(Verdict::graph_only(
            Status::Unknown,
            Certificate::ZeroForcing {
                set,
                forces: state.forces,
            },
        ))
    } else {
        Ok(Verdict::graph_only(
            Status::Negative,
            Certificate::NotZeroForcing {
                set,
                derived: state.black,
            },
        ))
    }
}

fn witness_certificate(w: &Witness) -> Certificate {
    Certificate::RankDeficient {
        policy: w.policy,
        sample: w.sample,
        rank: w.rank,
        p: w.realization.p(),
        realization: RealizationDocument::from(&w.realization),
    }
}

/// Sufficient check, then unreachable targets, then the necessary check,
/// then a falsification search of `budget` samples.
///
/// A failed necessary check is still accompanied by a concrete witness when
/// the search finds one within the budget.
pub fn combined_verdict(
    g: &DiGraph,
    leaders: &VertexSet,
    targets: &VertexSet,
    budget: usize,
    seed: u64,
) -> Result<Verdict> {
    let sufficient = check_sufficient(g, leaders, targets)?;
    match sufficient.status {
        Status::Positive | Status::Negative => return Ok(sufficient),
        Status::Unknown => {}
    }
    let necessary = check_necessary(g, leaders, targets)?;
    let report = falsify_strong_tc(g, leaders, targets, budget, seed)?;
    let verdict = |status, certificate| Verdict {
        status,
        certificate,
        samples: report.samples,
        seed: Some(seed),
    };
    Ok(match (&report.witness, necessary.status) {
        (Some(w), _) => verdict(Status::Negative, witness_certificate(w)),
        (None, Status::Negative) => verdict(Status::Negative, necessary.certificate),
        (None, _) => verdict(
            Status::Unknown,
            Certificate::Inconclusive {
                sufficient: Box::new(sufficient.certificate),
                necessary: Box::new(necessary.certificate),
                full_rank_samples: report.full_rank,
            },
        ),
    })
}
