//! Color-change rule: a black vertex with exactly one white out-neighbour
//! forces that neighbour black. The closure of a set under this rule is its
//! derived set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};

/// Order in which the eligible black vertices of a round are processed.
///
/// The derived set does not depend on this; the force list does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Ascending,
    Descending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Force {
    pub forcer: usize,
    pub forced: usize,
}

impl std::fmt::Display for Force {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {}", self.forcer, self.forced)
    }
}

/// Result of running the color-change rule to a fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcingState {
    pub initial: VertexSet,
    pub black: VertexSet,
    /// Chronological list of forces.
    pub forces: Vec<Force>,
}

impl ForcingState {
    /// Replays the force list from `initial` and checks every step is a
    /// legal application of the rule, and that the end state is `black`.
    pub fn replays_on(&self, g: &DiGraph) -> bool {
        replay_is_valid(g, &self.initial, &self.forces, &self.black)
    }
}

/// Checks a chronological list of forces step by step.
pub fn replay_is_valid(g: &DiGraph, initial: &VertexSet, forces: &[Force], black: &VertexSet) -> bool {
    let n = g.n();
    if initial.check_within(n).is_err() {
        return false;
    }
    let mut is_black = vec![false; n + 1];
    for v in initial.iter() {
        is_black[v] = true;
    }
    for f in forces {
        if f.forcer == 0 || f.forcer > n || f.forced == 0 || f.forced > n {
            return false;
        }
        if !is_black[f.forcer] || is_black[f.forced] {
            return false;
        }
        let mut whites = g.out_neighbors(f.forcer).iter().filter(|&&w| !is_black[w]);
        if whites.next() != Some(&f.forced) || whites.next().is_some() {
            return false;
        }
        is_black[f.forced] = true;
    }
    let end: VertexSet = (1..=n).filter(|&v| is_black[v]).collect();
    &end == black
}

/// Derived set of `c` with the default (ascending) schedule.
pub fn derived_set(g: &DiGraph, c: &VertexSet) -> Result<ForcingState> {
    derived_set_with(g, c, Schedule::Ascending)
}

/// Runs the color-change rule in rounds. Each round processes the black
/// vertices that had exactly one white out-neighbour when the round began,
/// in `schedule` order, skipping any whose count changed meanwhile.
/// Forces are recorded in the order they are performed.
pub fn derived_set_with(g: &DiGraph, c: &VertexSet, schedule: Schedule) -> Result<ForcingState> {
    let n = g.n();
    c.check_within(n)?;
    let mut black = vec![false; n + 1];
    for v in c.iter() {
        black[v] = true;
    }
    let mut white_out = vec![0usize; n + 1];
    for v in g.vertices() {
        white_out[v] = g.out_neighbors(v).iter().filter(|&&w| !black[w]).count();
    }
    let mut pending: Vec<usize> = c.iter().filter(|&v| white_out[v] == 1).collect();
    let mut forces = Vec::new();
    while !pending.is_empty() {
        match schedule {
            Schedule::Ascending => pending.sort_unstable(),
            Schedule::Descending => pending.sort_unstable_by(|a, b| b.cmp(a)),
        }
        pending.dedup();
        let mut next = Vec::new();
        for u in pending {
            if white_out[u] != 1 {
                continue;
            }
            let w = *g
                .out_neighbors(u)
                .iter()
                .find(|&&w| !black[w])
                .expect("white count is one");
            black[w] = true;
            forces.push(Force { forcer: u, forced: w });
            for &x in g.in_neighbors(w) {
                white_out[x] -= 1;
                if black[x] && white_out[x] == 1 {
                    next.push(x);
                }
            }
            if white_out[w] == 1 {
                next.push(w);
            }
        }
        pending = next;
    }
    Ok(ForcingState {
        initial: c.clone(),
        black: (1..=n).filter(|&v| black[v]).collect(),
        forces,
    })
}

pub fn is_zero_forcing_set(g: &DiGraph, c: &VertexSet) -> Result<bool> {
    Ok(derived_set(g, c)?.black.len() == g.n())
}

/// Bipartite graph with every arc going from `left` to `right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteGraph {
    left: VertexSet,
    right: VertexSet,
    /// Out-lists aligned with `left`, each sorted ascending.
    out: Vec<Vec<usize>>,
}

/// Outcome of forcing in a bipartite graph with `left` black initially.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteForcing {
    pub forced: VertexSet,
    pub forces: Vec<Force>,
    /// Smallest right vertex left white, if any.
    pub first_unforced: Option<usize>,
}

impl BipartiteForcing {
    pub fn all_forced(&self) -> bool {
        self.first_unforced.is_none()
    }
}

impl BipartiteGraph {
    pub fn new(left: VertexSet, right: VertexSet, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if let Some(v) = left.intersection(&right).first() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("vertex {v} is on both sides of a bipartite graph"),
            });
        }
        let mut out = vec![Vec::new(); left.len()];
        for (u, v) in arcs {
            let (Some(i), true) = (left.position(u), right.contains(v)) else {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("arc ({u}, {v}) does not go from left to right"),
                });
            };
            out[i].push(v);
        }
        for (i, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateArc(left.as_slice()[i], w[0]));
            }
        }
        Ok(BipartiteGraph { left, right, out })
    }

    pub fn left(&self) -> &VertexSet {
        &self.left
    }

    pub fn right(&self) -> &VertexSet {
        &self.right
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .zip(&self.out)
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        self.left.position(u).map_or(&[], |i| &self.out[i])
    }

    /// Forcing with `left` black and `right` white. Only left vertices have
    /// out-arcs, so every force goes left to right.
    pub fn run_forcing(&self) -> BipartiteForcing {
        let r = self.right.len();
        let idx = |v: usize| self.right.position(v).expect("arc heads lie in right");
        let mut in_lists: Vec<Vec<usize>> = vec![Vec::new(); r];
        for (i, list) in self.out.iter().enumerate() {
            for &v in list {
                in_lists[idx(v)].push(i);
            }
        }
        let mut black = vec![false; r];
        let mut white_out: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let mut pending: Vec<usize> = (0..self.left.len()).filter(|&i| white_out[i] == 1).collect();
        let mut forces = Vec::new();
        while !pending.is_empty() {
            pending.sort_unstable();
            pending.dedup();
            let mut next = Vec::new();
            for i in pending {
                if white_out[i] != 1 {
                    continue;
                }
                let w = *self.out[i]
                    .iter()
                    .find(|&&w| !black[idx(w)])
                    .expect("white count is one");
                let wi = idx(w);
                black[wi] = true;
                forces.push(Force {
                    forcer: self.left.as_slice()[i],
                    forced: w,
                });
                for &x in &in_lists[wi] {
                    white_out[x] -= 1;
                    if white_out[x] == 1 {
                        next.push(x);
                    }
                }
            }
            pending = next;
        }
        let forced: VertexSet = self.right.iter().filter(|&v| black[idx(v)]).collect();
        let first_unforced = self.right.iter().find(|&v| !black[idx(v)]);
        BipartiteForcing {
            forced,
            forces,
            first_unforced,
        }
    }

    /// The same graph as a `DiGraph` on `1..=n`.
    pub fn embed(&self, n: usize) -> Result<DiGraph> {
        DiGraph::new(n, self.arcs())
    }
}

/// Whether `left` forces all of `right`; if not, the smallest right vertex
/// that stays white.
pub fn bipartite_forces_all(b: &BipartiteGraph) -> (bool, Option<usize>) {
    let res = b.run_forcing();
    (res.all_forced(), res.first_unforced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_forcing() -> DiGraph {
        DiGraph::new(5, [(1, 3), (2, 4), (4, 5), (1, 4)]).unwrap()
    }

    #[test]
    fn two_forcing_chains() {
        let st = derived_set(&small_forcing(), &VertexSet::from([2])).unwrap();
        assert_eq!(st.black, VertexSet::from([2, 4, 5]));
        assert_eq!(
            st.forces,
            vec![Force { forcer: 2, forced: 4 }, Force { forcer: 4, forced: 5 }]
        );
        assert!(st.replays_on(&small_forcing()));
        assert!(is_zero_forcing_set(&small_forcing(), &VertexSet::from([1, 2])).unwrap());
    }

    #[test]
    fn full_set_needs_no_forces() {
        let g = small_forcing();
        let st = derived_set(&g, &VertexSet::full(5)).unwrap();
        assert_eq!(st.black, VertexSet::full(5));
        assert!(st.forces.is_empty());
    }

    #[test]
    fn empty_set_is_not_zero_forcing() {
        assert!(!is_zero_forcing_set(&small_forcing(), &VertexSet::new()).unwrap());
        let edgeless = DiGraph::new(0, []).unwrap();
        assert!(is_zero_forcing_set(&edgeless, &VertexSet::new()).unwrap());
    }

    #[test]
    fn out_of_range_initial_set() {
        assert!(derived_set(&small_forcing(), &VertexSet::from([6])).is_err());
    }

    #[test]
    fn replay_rejects_illegal_force() {
        let g = small_forcing();
        let bogus = [Force { forcer: 1, forced: 3 }];
        // vertex 1 has two white out-neighbours (3 and 4)
        assert!(!replay_is_valid(&g, &VertexSet::from([1]), &bogus, &VertexSet::from([1, 3])));
    }

    #[test]
    fn bipartite_case_study_layers() {
        let b = BipartiteGraph::new(
            VertexSet::from([4, 13]),
            VertexSet::from([2, 3, 17]),
            [(4, 2), (4, 3), (13, 17)],
        )
        .unwrap();
        assert_eq!(bipartite_forces_all(&b), (false, Some(2)));

        let b = BipartiteGraph::new(
            VertexSet::from([2, 4, 13]),
            VertexSet::from([3, 17]),
            [(4, 3), (13, 17)],
        )
        .unwrap();
        assert_eq!(bipartite_forces_all(&b), (true, None));
    }

    #[test]
    fn bipartite_empty_right() {
        let b = BipartiteGraph::new(VertexSet::from([1, 2]), VertexSet::new(), []).unwrap();
        assert_eq!(bipartite_forces_all(&b), (true, None));
    }

    #[test]
    fn bipartite_rejects_malformed() {
        assert!(BipartiteGraph::new(VertexSet::from([1]), VertexSet::from([1]), []).is_err());
        assert!(BipartiteGraph::new(VertexSet::from([1]), VertexSet::from([2]), [(2, 1)]).is_err());
    }
}
