//! Simple directed graphs on vertices `1..=n`, shortest-path distances and
//! vertex subsets.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Graphs up to this order also keep a bitmask adjacency for O(1) arc tests.
pub const DENSE_LIMIT: usize = 64;

/// Shortest-path length, with unreachability as its own variant.
///
/// `Finite(_) < Infinite`, so `min` over distances behaves as expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// Extended addition; `Infinite` absorbs.
    pub fn plus(self, other: Distance) -> Distance {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A sorted, duplicate-free set of vertex ids.
///
/// Ascending order matters: tie-breaks in leader selection pick the first
/// member.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Position of `v` within the sorted members.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// The full vertex set `1..=n`.
    pub fn full(n: usize) -> VertexSet {
        VertexSet((1..=n).collect())
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v > n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => match self.0.first() {
                Some(0) => Err(Error::VertexOutOfRange { vertex: 0, n }),
                _ => Ok(()),
            },
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Simple directed graph without self-loops on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    /// Out-neighbour bitmasks, present when `n <= DENSE_LIMIT`.
    dense: Option<Vec<u64>>,
    arc_count: usize,
}

impl DiGraph {
    /// Validates and builds a graph. Rejects self-loops, duplicate arcs and
    /// endpoints outside `1..=n`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut arc_count = 0;
        for (u, v) in arcs {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out[u - 1].push(v);
            inn[v - 1].push(u);
            arc_count += 1;
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateArc(u + 1, w[0]));
            }
        }
        for list in inn.iter_mut() {
            list.sort_unstable();
        }
        let dense = (n <= DENSE_LIMIT).then(|| {
            out.iter()
                .map(|list| list.iter().fold(0u64, |acc, &v| acc | (1u64 << (v - 1))))
                .collect()
        });
        Ok(DiGraph {
            n,
            out,
            inn,
            dense,
            arc_count,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u + 1, v)))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v - 1]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v - 1]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return false;
        }
        match &self.dense {
            Some(bits) => bits[u - 1] >> (v - 1) & 1 == 1,
            None => self.out[u - 1].binary_search(&v).is_ok(),
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Shortest-path length from `u` to `v`.
    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs(std::iter::once(u))[v - 1])
    }

    /// `min` over `s` of `distance(i, j)`.
    pub fn set_distance(&self, s: &VertexSet, j: usize) -> Result<Distance> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.check_within(self.n)?;
        self.check_vertex(j)?;
        Ok(self.bfs(s.iter())[j - 1])
    }

    /// Distances from `u` to every vertex, indexed by `v - 1`.
    pub fn distances_from(&self, u: usize) -> Result<Vec<Distance>> {
        self.check_vertex(u)?;
        Ok(self.bfs(std::iter::once(u)))
    }

    /// Multi-source distances from a set to every vertex, indexed by `v - 1`.
    pub fn distances_from_set(&self, s: &VertexSet) -> Result<Vec<Distance>> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        s.check_within(self.n)?;
        Ok(self.bfs(s.iter()))
    }

    /// All-pairs distances; entry `[u - 1][v - 1]` is `d(u, v)`.
    pub fn distance_table(&self) -> Vec<Vec<Distance>> {
        self.vertices().map(|u| self.bfs(std::iter::once(u))).collect()
    }

    /// `reach[u - 1]` is true iff `d(u, v) < ∞` (search along reversed arcs).
    pub fn reaching(&self, v: usize) -> Result<Vec<bool>> {
        self.check_vertex(v)?;
        let mut seen = vec![false; self.n];
        seen[v - 1] = true;
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            for &u in &self.inn[w - 1] {
                if !seen[u - 1] {
                    seen[u - 1] = true;
                    stack.push(u);
                }
            }
        }
        Ok(seen)
    }

    fn bfs(&self, sources: impl Iterator<Item = usize>) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; self.n];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s - 1] == Distance::Infinite {
                dist[s - 1] = Distance::Finite(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u - 1] else {
                unreachable!()
            };
            for &v in &self.out[u - 1] {
                if dist[v - 1] == Distance::Infinite {
                    dist[v - 1] = Distance::Finite(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// The 0/1 pattern matrix with entry `(i, j)` set iff arc `(j, i)`.
    pub fn pattern_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.n, self.n);
        for (u, v) in self.arcs() {
            m[(v - 1, u - 1)] = T::one();
        }
        m
    }
}

impl fmt::Debug for DiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiGraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// The `n x r` selection matrix `P(V; V')`: column `j` is the unit vector
/// of the `j`-th member of `V'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMatrix {
    n: usize,
    members: VertexSet,
}

impl SelectionMatrix {
    pub fn new(n: usize, members: VertexSet) -> Result<Self> {
        members.check_within(n)?;
        Ok(SelectionMatrix { n, members })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    /// Input matrix `U = P(V; V_L)`.
    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut m = Matrix::zeros(self.n, self.members.len());
        for (j, v) in self.members.iter().enumerate() {
            m[(v - 1, j)] = T::one();
        }
        m
    }

    /// Output matrix `H = P(V; V_T)^T`.
    pub fn to_transposed_matrix<T: Scalar>(&self) -> Matrix<T> {
        self.to_matrix().transpose()
    }
}
