//! Distance layers of the target vertices outside a derived set, and the
//! bipartite layer graphs built from them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, Distance, VertexSet};
use crate::zero_forcing::BipartiteGraph;

/// Targets outside `base`, grouped by their distance from `base`.
///
/// `layers[i - 1]` holds the targets at distance exactly `i`. Trailing empty
/// layers are trimmed; intermediate ones are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistancePartition {
    pub base: VertexSet,
    pub layers: Vec<VertexSet>,
    pub unreachable: VertexSet,
    /// Targets already inside `base` (distance zero).
    pub inside_base: VertexSet,
}

impl DistancePartition {
    /// Largest finite layer index (0 when no layer is populated).
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Layer `i`, 1-based. Layers past the depth are empty.
    pub fn layer(&self, i: usize) -> VertexSet {
        assert!(i >= 1, "layers are numbered from 1");
        self.layers.get(i - 1).cloned().unwrap_or_default()
    }

    /// Union of layers `1..i`.
    pub fn closer_than(&self, i: usize) -> VertexSet {
        self.layers
            .iter()
            .take(i.saturating_sub(1))
            .flat_map(|l| l.iter())
            .collect()
    }

    /// Union of layers `i+1..=d`.
    pub fn farther_than(&self, i: usize) -> VertexSet {
        self.layers.iter().skip(i).flat_map(|l| l.iter()).collect()
    }

    /// Every partitioned target in layer order, then ascending id.
    pub fn layered_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.layers.iter().flat_map(|l| l.iter())
    }
}

pub fn partition_targets(g: &DiGraph, derived: &VertexSet, targets: &VertexSet) -> Result<DistancePartition> {
    targets.check_within(g.n())?;
    let dist = g.distances_from_set(derived)?;
    let mut layers: Vec<VertexSet> = Vec::new();
    let mut unreachable = VertexSet::new();
    let mut inside_base = VertexSet::new();
    for t in targets.iter() {
        match dist[t - 1] {
            Distance::Finite(0) => {
                inside_base.insert(t);
            }
            Distance::Finite(i) => {
                if layers.len() < i {
                    layers.resize(i, VertexSet::new());
                }
                layers[i - 1].insert(t);
            }
            Distance::Infinite => {
                unreachable.insert(t);
            }
        }
    }
    Ok(DistancePartition {
        base: derived.clone(),
        layers,
        unreachable,
        inside_base,
    })
}

/// Bipartite graph `(derived, layer)` with arc `(j, k)` iff `d(j, k) == i`.
pub fn build_layer_graph(g: &DiGraph, derived: &VertexSet, layer: &VertexSet, i: usize) -> Result<BipartiteGraph> {
    if i == 0 {
        return Err(Error::Parse {
            line: 0,
            msg: "layer index must be positive".into(),
        });
    }
    layer.check_within(g.n())?;
    let tables = base_distances(g, derived)?;
    layer_graph_from(derived, layer, i, &tables)
}

/// All layer graphs `G_1..G_d` of a partition, sharing one BFS per base vertex.
pub fn build_layer_graphs(g: &DiGraph, part: &DistancePartition) -> Result<Vec<BipartiteGraph>> {
    let tables = base_distances(g, &part.base)?;
    part.layers
        .iter()
        .enumerate()
        .map(|(idx, layer)| layer_graph_from(&part.base, layer, idx + 1, &tables))
        .collect()
}

fn base_distances(g: &DiGraph, derived: &VertexSet) -> Result<Vec<Vec<Distance>>> {
    if derived.is_empty() {
        return Err(Error::EmptySet);
    }
    derived.iter().map(|j| g.distances_from(j)).collect()
}

fn layer_graph_from(
    derived: &VertexSet,
    layer: &VertexSet,
    i: usize,
    tables: &[Vec<Distance>],
) -> Result<BipartiteGraph> {
    let mut arcs = Vec::new();
    for (row, j) in derived.iter().enumerate() {
        for k in layer.iter() {
            if tables[row][k - 1] == Distance::Finite(i) {
                arcs.push((j, k));
            }
        }
    }
    BipartiteGraph::new(derived.clone(), layer.clone(), arcs)
}
