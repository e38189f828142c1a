//! Two-phase leader selection: a minimum root set of the targets, then a
//! greedy extension until every distance layer is forced.

mod cover;

pub use cover::{
    all_min_root_sets, build_cover, greedy_root_set, min_root_set, CoverInstance, RootSet,
    DEFAULT_EXACT_THRESHOLD,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};
use crate::partition::{build_layer_graph, partition_targets};
use crate::zero_forcing::derived_set;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectOptions {
    pub exact_threshold: usize,
    /// Use the greedy root set even for small graphs.
    pub heuristic: bool,
}

impl Default for SelectOptions {
    fn default() -> Self {
        SelectOptions {
            exact_threshold: DEFAULT_EXACT_THRESHOLD,
            heuristic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Derived { leaders: VertexSet, derived: VertexSet },
    LayerPass { layer: usize, vertices: VertexSet },
    LayerFail { layer: usize, vertices: VertexSet, unforced: usize },
    AddLeader { vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub root_set: RootSet,
    pub leaders: VertexSet,
    pub trace: Vec<TraceEvent>,
}

impl Selection {
    /// Leaders added on top of the root set, in order.
    pub fn additions(&self) -> Vec<usize> {
        self.trace
            .iter()
            .filter_map(|e| match e {
                TraceEvent::AddLeader { vertex } => Some(*vertex),
                _ => None,
            })
            .collect()
    }
}

/// Computes a leader set for which every distance layer of the targets is
/// forced by the derived set.
///
/// Starting from a minimum root set, layer `i = 1, 2, ...` is checked; on a
/// failure the smallest unforced vertex of that layer becomes a leader, the
/// derived set is recomputed and `i` resets to 1. The loop ends once `i`
/// exceeds the largest distance from the derived set to a target.
pub fn select_leaders(g: &DiGraph, targets: &VertexSet, options: SelectOptions) -> Result<Selection> {
    let cover = build_cover(g, targets)?;
    let root_set = if options.heuristic {
        RootSet {
            members: greedy_root_set(&cover),
            optimal: false,
        }
    } else {
        min_root_set(&cover, options.exact_threshold)
    };

    let mut trace = Vec::new();
    let mut leaders = root_set.members.clone();
    let mut derived = derived_set(g, &leaders)?.black;
    trace.push(TraceEvent::Derived {
        leaders: leaders.clone(),
        derived: derived.clone(),
    });
    let mut part = partition_targets(g, &derived, targets)?;
    if !part.unreachable.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: format!("targets {} are not reachable from the root set", part.unreachable),
        });
    }
    let mut i = 1;
    loop {
        let layer = part.layer(i);
        let bip = build_layer_graph(g, &derived, &layer, i)?;
        match bip.run_forcing().first_unforced {
            None => {
                trace.push(TraceEvent::LayerPass {
                    layer: i,
                    vertices: layer,
                });
                i += 1;
            }
            Some(v) => {
                trace.push(TraceEvent::LayerFail {
                    layer: i,
                    vertices: layer,
                    unforced: v,
                });
                leaders.insert(v);
                trace.push(TraceEvent::AddLeader { vertex: v });
                derived = derived_set(g, &leaders)?.black;
                trace.push(TraceEvent::Derived {
                    leaders: leaders.clone(),
                    derived: derived.clone(),
                });
                part = partition_targets(g, &derived, targets)?;
                i = 1;
            }
        }
        // every target is at distance < i from the derived set
        if part.depth() < i {
            break;
        }
    }
    Ok(Selection {
        root_set,
        leaders,
        trace,
    })
}
