//! Strong targeted controllability of leader-follower networks.
//!
//! A network is a simple directed graph; a state matrix `X` lives on it when
//! its off-diagonal nonzeros are exactly the transposed arcs. Given leaders
//! (actuated vertices) and targets (vertices whose states must be
//! steerable), this crate
//!
//! * runs zero forcing and builds distance layers of the targets,
//! * decides the sufficient and the necessary graph conditions for target
//!   control over all distance-information preserving `X`,
//! * cross-checks verdicts with exact rational ranks of concrete
//!   realizations, and
//! * selects leaders: an exact minimum root set followed by a greedy
//!   extension that forces every layer.
//!
//! Matrix code is generic over [`Scalar`]; the aliases below fix the
//! scalar types used by the verdict pipeline.

pub mod controllability;
pub mod error;
pub mod graph;
pub mod io;
pub mod leader_selection;
pub mod linalg;
pub mod partition;
pub mod scalar;
pub mod zero_forcing;

pub use controllability::{
    check_necessary, check_sufficient, combined_verdict, falsify_strong_tc, sample_qd, Certificate, Policy,
    Realization, Status, Verdict,
};
pub use error::{Error, Result};
pub use graph::{DiGraph, Distance, SelectionMatrix, VertexSet};
pub use leader_selection::{build_cover, min_root_set, select_leaders, CoverInstance, RootSet, SelectOptions};
pub use linalg::Matrix;
pub use partition::{build_layer_graph, partition_targets, DistancePartition};
pub use scalar::{ExactScalar, Scalar};
pub use zero_forcing::{bipartite_forces_all, derived_set, is_zero_forcing_set, BipartiteGraph, ForcingState};

/// Exact rationals used for every rank decision.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = Matrix<Rational>;
/// Floating point matrices, only used for cross-checks.
pub type FloatMatrix = Matrix<f64>;
pub type SingleMatrix = Matrix<f32>;
pub type RationalRealization = Realization<Rational>;
