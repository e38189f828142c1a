//! Seeded sampling of distance-information preserving state matrices and
//! the search for rank-deficient witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};
use crate::linalg::Matrix;
use crate::scalar::ExactScalar;
use crate::zero_forcing::derived_set;
use crate::Rational;

use super::realization::{is_distance_preserving, Realization};

/// Magnitude bound for random integer weights.
pub const WEIGHT_BOUND: i64 = 10;
/// Attempts at a diagonal rescaling before a random sample gives up.
pub const RETRY_CAP: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Unit weights, zero diagonal.
    Adjacency,
    /// Unit weights minus the out-degree diagonal.
    Laplacian,
    /// Random nonzero weights and diagonal, times a random nonzero diagonal
    /// scaling chosen so the product is distance preserving.
    Random,
    /// Random weights arranged so that the indicator of the vertices left
    /// white by `V_L ∪ (V \ V_T)` is a left null vector, then rescaled as in
    /// `Random`. Only meaningful when that set is not zero forcing.
    NullVector,
}

/// Deterministic RNG for sample `index` under `seed`: one ChaCha stream per
/// sample, so results do not depend on evaluation order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Draws one matrix of the requested policy and verifies it is distance
/// preserving. `NullVector` needs leader/target sets; use
/// [`sample_null_vector`] for it.
pub fn sample_qd<T: ExactScalar>(g: &DiGraph, seed: u64, policy: Policy) -> Result<Matrix<T>> {
    let mut rng = sample_rng(seed, 0);
    sample_qd_with(g, &mut rng, seed, policy)
}

pub(crate) fn sample_qd_with<T: ExactScalar>(
    g: &DiGraph,
    rng: &mut ChaCha8Rng,
    seed: u64,
    policy: Policy,
) -> Result<Matrix<T>> {
    match policy {
        Policy::Adjacency => verified(g, g.pattern_matrix(), seed),
        Policy::Laplacian => {
            let mut x: Matrix<T> = g.pattern_matrix();
            for v in g.vertices() {
                x[(v - 1, v - 1)] = T::from_int(-(g.out_neighbors(v).len() as i64));
            }
            verified(g, x, seed)
        }
        Policy::Random => {
            let mut x = Matrix::zeros(g.n(), g.n());
            for (u, v) in g.arcs() {
                x[(v - 1, u - 1)] = T::from_int(nonzero(rng));
            }
            for v in 0..g.n() {
                x[(v, v)] = T::from_int(rng.random_range(-WEIGHT_BOUND..=WEIGHT_BOUND));
            }
            rescale_into_qd(g, &x, rng, seed)
        }
        Policy::NullVector => Err(Error::Parse {
            line: 0,
            msg: "the null-vector policy needs leader and target sets".into(),
        }),
    }
}

fn verified<T: ExactScalar>(g: &DiGraph, x: Matrix<T>, seed: u64) -> Result<Matrix<T>> {
    if is_distance_preserving(g, &x)? {
        Ok(x)
    } else {
        Err(Error::SamplingExhausted { attempts: 1, seed })
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.random_range(1..=WEIGHT_BOUND);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Multiplies `x` on the right by random nonzero diagonals until the product
/// is distance preserving.
fn rescale_into_qd<T: ExactScalar>(g: &DiGraph, x: &Matrix<T>, rng: &mut ChaCha8Rng, seed: u64) -> Result<Matrix<T>> {
    for _ in 0..RETRY_CAP {
        let scale: Vec<T> = (0..g.n()).map(|_| T::from_int(nonzero(rng))).collect();
        let scaled = Matrix::from_fn(g.n(), g.n(), |i, j| x[(i, j)].clone() * scale[j].clone());
        if is_distance_preserving(g, &scaled)? {
            return Ok(scaled);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: RETRY_CAP,
        seed,
    })
}

/// Builds a distance-preserving matrix `X` with `z^T X = 0`, where `z` is the
/// indicator of the vertices outside the derived set of
/// `leaders ∪ (V \ targets)`. Returns `None` when that set is zero forcing.
///
/// Every black vertex of the derived set has zero or at least two white
/// out-neighbours; weights on its arcs into white vertices are chosen to sum
/// to zero, and each white vertex gets the diagonal entry cancelling its
/// column over the white rows. Right-multiplying by a diagonal keeps `z` in
/// the left kernel.
pub fn sample_null_vector<T: ExactScalar>(
    g: &DiGraph,
    leaders: &VertexSet,
    targets: &VertexSet,
    seed: u64,
    index: u64,
) -> Result<Option<Matrix<T>>> {
    let closed = leaders.union(&VertexSet::full(g.n()).difference(targets));
    let derived = derived_set(g, &closed)?.black;
    if derived.len() == g.n() {
        return Ok(None);
    }
    let mut rng = sample_rng(seed, index);
    let white = |v: usize| !derived.contains(v);
    let mut x: Matrix<T> = Matrix::zeros(g.n(), g.n());
    for u in g.vertices() {
        let (to_white, to_black): (Vec<usize>, Vec<usize>) =
            g.out_neighbors(u).iter().partition(|&&v| white(v));
        for v in to_black {
            x[(v - 1, u - 1)] = T::from_int(nonzero(&mut rng));
        }
        if white(u) {
            let mut col_sum = 0i64;
            for &v in &to_white {
                let w = nonzero(&mut rng);
                col_sum += w;
                x[(v - 1, u - 1)] = T::from_int(w);
            }
            x[(u - 1, u - 1)] = T::from_int(-col_sum);
        } else {
            if !to_white.is_empty() {
                debug_assert!(to_white.len() >= 2, "derived set is a fixed point");
                let weights = zero_sum_weights(to_white.len(), &mut rng);
                for (&v, w) in to_white.iter().zip(weights) {
                    x[(v - 1, u - 1)] = T::from_int(w);
                }
            }
            x[(u - 1, u - 1)] = T::from_int(rng.random_range(-WEIGHT_BOUND..=WEIGHT_BOUND));
        }
    }
    rescale_into_qd(g, &x, &mut rng, seed).map(Some)
}

/// `count >= 2` nonzero integers summing to zero.
fn zero_sum_weights(count: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let mut w: Vec<i64> = (0..count - 1).map(|_| nonzero(rng)).collect();
        let last = -w.iter().sum::<i64>();
        if last != 0 {
            w.push(last);
            return w;
        }
    }
}

/// A realization whose output controllability matrix is rank deficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub realization: Realization<Rational>,
    pub policy: Policy,
    /// Position of the sample in the search (0-based).
    pub sample: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FalsifyReport {
    pub witness: Option<Witness>,
    /// Samples drawn, including the one that produced the witness.
    pub samples: usize,
    /// Samples whose output controllability matrix had full row rank.
    pub full_rank: usize,
}

/// Searches the distance-preserving class for a matrix that breaks target
/// controllability. Tries the adjacency matrix, then the Laplacian, then
/// (when `V_L ∪ (V \ V_T)` is not zero forcing) a null-vector construction,
/// then random samples, for at most `budget` samples in total.
pub fn falsify_strong_tc(
    g: &DiGraph,
    leaders: &VertexSet,
    targets: &VertexSet,
    budget: usize,
    seed: u64,
) -> Result<FalsifyReport> {
    leaders.check_within(g.n())?;
    targets.check_within(g.n())?;
    let p = targets.len();
    let mut report = FalsifyReport {
        witness: None,
        samples: 0,
        full_rank: 0,
    };
    let try_matrix = |x: Matrix<Rational>, policy: Policy, report: &mut FalsifyReport| -> Result<bool> {
        let real = Realization::new(g.clone(), x, leaders.clone(), targets.clone())?;
        let rank = real.output_ctrb_rank();
        let sample = report.samples;
        report.samples += 1;
        if rank < p {
            report.witness = Some(Witness {
                realization: real,
                policy,
                sample,
                rank,
            });
            return Ok(true);
        }
        report.full_rank += 1;
        Ok(false)
    };

    for policy in [Policy::Adjacency, Policy::Laplacian] {
        if report.samples >= budget {
            return Ok(report);
        }
        let x = sample_qd(g, seed, policy)?;
        if try_matrix(x, policy, &mut report)? {
            return Ok(report);
        }
    }
    if report.samples < budget {
        if let Some(x) = sample_null_vector(g, leaders, targets, seed, report.samples as u64)? {
            if try_matrix(x, Policy::NullVector, &mut report)? {
                return Ok(report);
            }
        }
    }
    while report.samples < budget {
        let mut rng = sample_rng(seed, report.samples as u64);
        let x = sample_qd_with(g, &mut rng, seed, Policy::Random)?;
        if try_matrix(x, Policy::Random, &mut report)? {
            return Ok(report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_adjacency() {
        let g = DiGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let x: Matrix<i64> = sample_qd(&g, 0, Policy::Adjacency).unwrap();
        assert_eq!(
            x,
            Matrix::from_rows(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]])
        );
    }

    #[test]
    fn laplacian_diagonal_is_negative_out_degree() {
        let g = DiGraph::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let x: Matrix<i64> = sample_qd(&g, 0, Policy::Laplacian).unwrap();
        assert_eq!(x[(0, 0)], -2);
        assert_eq!(x[(1, 1)], -1);
        assert_eq!(x[(2, 2)], 0);
    }

    #[test]
    fn random_is_seed_deterministic() {
        let g = DiGraph::new(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]).unwrap();
        let a: Matrix<Rational> = sample_qd(&g, 42, Policy::Random).unwrap();
        let b: Matrix<Rational> = sample_qd(&g, 42, Policy::Random).unwrap();
        let c: Matrix<Rational> = sample_qd(&g, 43, Policy::Random).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn null_vector_policy_needs_sets() {
        let g = DiGraph::new(2, [(1, 2)]).unwrap();
        assert!(sample_qd::<i64>(&g, 0, Policy::NullVector).is_err());
    }

    #[test]
    fn null_vector_absent_when_zero_forcing() {
        let g = DiGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let x = sample_null_vector::<Rational>(&g, &VertexSet::from([1]), &VertexSet::full(3), 0, 0).unwrap();
        assert!(x.is_none());
    }

    #[test]
    fn zero_sum_weights_are_nonzero() {
        let mut rng = sample_rng(7, 0);
        for count in 2..6 {
            let w = zero_sum_weights(count, &mut rng);
            assert_eq!(w.len(), count);
            assert_eq!(w.iter().sum::<i64>(), 0);
            assert!(w.iter().all(|&v| v != 0));
        }
    }
}
