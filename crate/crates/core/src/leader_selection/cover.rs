//! Minimum root sets as a 0/1 covering program: rows are targets, columns
//! are vertices, and a column covers a row when the vertex reaches the
//! target. The solver is an exact branch and bound for small instances and
//! the greedy cover otherwise.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, VertexSet};

/// Largest vertex count solved exactly by default.
pub const DEFAULT_EXACT_THRESHOLD: usize = 40;

/// Reachability matrix: `rows[i][j - 1] == 1` iff vertex `j` reaches the
/// `i`-th smallest target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverInstance {
    pub targets: VertexSet,
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSet {
    pub members: VertexSet,
    /// True when the solver proved minimum cardinality.
    pub optimal: bool,
}

pub fn build_cover(g: &DiGraph, targets: &VertexSet) -> Result<CoverInstance> {
    if targets.is_empty() {
        return Err(Error::EmptySet);
    }
    targets.check_within(g.n())?;
    let rows = targets
        .iter()
        .map(|t| {
            g.reaching(t)
                .map(|reach| reach.into_iter().map(u8::from).collect())
        })
        .collect::<Result<_>>()?;
    Ok(CoverInstance {
        targets: targets.clone(),
        n: g.n(),
        rows,
    })
}

impl CoverInstance {
    pub fn p(&self) -> usize {
        self.rows.len()
    }

    /// Whether the indicator vector of `set` satisfies `A x >= 1`.
    pub fn is_covered_by(&self, set: &VertexSet) -> bool {
        self.rows
            .iter()
            .all(|row| set.iter().any(|j| j >= 1 && j <= self.n && row[j - 1] == 1))
    }
}

impl fmt::Display for CoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Bitset view of an instance, 0-based rows and columns.
struct Bits {
    p: usize,
    n: usize,
    /// Columns covering each row.
    row_cols: Vec<FixedBitSet>,
    /// Rows covered by each column.
    col_rows: Vec<FixedBitSet>,
}

impl Bits {
    fn new(c: &CoverInstance) -> Self {
        let (p, n) = (c.p(), c.n);
        let mut row_cols = vec![FixedBitSet::with_capacity(n); p];
        let mut col_rows = vec![FixedBitSet::with_capacity(p); n];
        for (i, row) in c.rows.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                if a == 1 {
                    row_cols[i].insert(j);
                    col_rows[j].insert(i);
                }
            }
        }
        Bits {
            p,
            n,
            row_cols,
            col_rows,
        }
    }

    fn all_rows(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.p);
        s.insert_range(..);
        s
    }

    /// Columns of row `r` that are still allowed.
    fn allowed(&self, r: usize, allowed_cols: &FixedBitSet) -> FixedBitSet {
        let mut s = self.row_cols[r].clone();
        s.intersect_with(allowed_cols);
        s
    }

    /// Lower bound on the columns still needed: uncovered rows whose allowed
    /// column sets are pairwise disjoint each need their own column.
    fn packing_bound(&self, uncovered: &FixedBitSet, allowed_cols: &FixedBitSet) -> Option<usize> {
        let mut rows: Vec<(usize, FixedBitSet)> = uncovered
            .ones()
            .map(|r| (r, self.allowed(r, allowed_cols)))
            .collect();
        if rows.iter().any(|(_, s)| s.is_clear()) {
            return None;
        }
        rows.sort_by_key(|(r, s)| (s.count_ones(..), *r));
        let mut used = FixedBitSet::with_capacity(self.n);
        let mut bound = 0;
        for (_, s) in rows {
            if s.is_disjoint(&used) {
                used.union_with(&s);
                bound += 1;
            }
        }
        Some(bound)
    }
}

/// Greedy cover: repeatedly take the column covering the most uncovered
/// rows, ties to the smallest vertex id.
pub fn greedy_root_set(c: &CoverInstance) -> VertexSet {
    let bits = Bits::new(c);
    let mut uncovered = bits.all_rows();
    let mut chosen = VertexSet::new();
    while !uncovered.is_clear() {
        let (best, gain) = (0..bits.n)
            .map(|j| (j, bits.col_rows[j].intersection_count(&uncovered)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        assert!(gain > 0, "every target covers itself");
        chosen.insert(best + 1);
        uncovered.difference_with(&bits.col_rows[best]);
    }
    chosen
}

/// Exact minimum cardinality by branch and bound: branch on the uncovered
/// row with the fewest allowed columns (rows with a single allowed column
/// fix that column), excluding earlier siblings so no set is visited twice;
/// prune with the disjoint-row packing bound against the incumbent, which
/// starts at the greedy cover.
fn optimum_size(bits: &Bits, upper: usize) -> usize {
    fn search(bits: &Bits, uncovered: &FixedBitSet, allowed: &mut FixedBitSet, chosen: usize, best: &mut usize) {
        if uncovered.is_clear() {
            *best = (*best).min(chosen);
            return;
        }
        let Some(lb) = bits.packing_bound(uncovered, allowed) else {
            return;
        };
        if chosen + lb >= *best {
            return;
        }
        let row = uncovered
            .ones()
            .min_by_key(|&r| (bits.allowed(r, allowed).count_ones(..), r))
            .expect("nonempty");
        let candidates: Vec<usize> = bits.allowed(row, allowed).ones().collect();
        let mut excluded = Vec::new();
        for col in candidates {
            let mut next = uncovered.clone();
            next.difference_with(&bits.col_rows[col]);
            search(bits, &next, allowed, chosen + 1, best);
            allowed.remove(col);
            excluded.push(col);
        }
        for col in excluded {
            allowed.insert(col);
        }
    }

    let mut best = upper;
    let mut allowed = FixedBitSet::with_capacity(bits.n);
    allowed.insert_range(..);
    search(bits, &bits.all_rows(), &mut allowed, 0, &mut best);
    best
}

/// Visits covers of exactly `size` columns in lexicographic order of their
/// sorted member lists. `visit` returns false to stop.
fn lexicographic_covers(bits: &Bits, size: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn walk(
        bits: &Bits,
        size: usize,
        col: usize,
        uncovered: &FixedBitSet,
        chosen: &mut Vec<usize>,
        suffix: &[FixedBitSet],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if uncovered.is_clear() {
            return chosen.len() != size || visit(chosen);
        }
        if chosen.len() == size || col == bits.n {
            return true;
        }
        match bits.packing_bound(uncovered, &suffix[col]) {
            Some(lb) if chosen.len() + lb <= size => {}
            _ => return true,
        }
        // A minimum cover has no redundant column, so only take columns that
        // cover something new.
        if bits.col_rows[col].intersection_count(uncovered) > 0 {
            let mut next = uncovered.clone();
            next.difference_with(&bits.col_rows[col]);
            chosen.push(col);
            let go_on = walk(bits, size, col + 1, &next, chosen, suffix, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        walk(bits, size, col + 1, uncovered, chosen, suffix, visit)
    }

    let suffix: Vec<FixedBitSet> = (0..=bits.n)
        .map(|j| {
            let mut s = FixedBitSet::with_capacity(bits.n);
            s.insert_range(j..);
            s
        })
        .collect();
    walk(bits, size, 0, &bits.all_rows(), &mut Vec::new(), &suffix, visit);
}

fn to_vertex_set(cols: &[usize]) -> VertexSet {
    cols.iter().map(|c| c + 1).collect()
}

/// Minimum root set. Exact (and lexicographically smallest among optima)
/// when `n <= exact_threshold`, greedy otherwise.
pub fn min_root_set(c: &CoverInstance, exact_threshold: usize) -> RootSet {
    if c.n > exact_threshold {
        return RootSet {
            members: greedy_root_set(c),
            optimal: false,
        };
    }
    let bits = Bits::new(c);
    let size = optimum_size(&bits, greedy_root_set(c).len());
    let mut first = None;
    lexicographic_covers(&bits, size, &mut |cols| {
        first = Some(to_vertex_set(cols));
        false
    });
    RootSet {
        members: first.expect("an optimum of the computed size exists"),
        optimal: true,
    }
}

/// Every minimum root set, in lexicographic order.
pub fn all_min_root_sets(c: &CoverInstance) -> Vec<VertexSet> {
    let bits = Bits::new(c);
    let size = optimum_size(&bits, greedy_root_set(c).len());
    let mut all = Vec::new();
    lexicographic_covers(&bits, size, &mut |cols| {
        all.push(to_vertex_set(cols));
        true
    });
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_instance(n: usize) -> CoverInstance {
        CoverInstance {
            targets: VertexSet::full(n),
            n,
            rows: (0..n)
                .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
                .collect(),
        }
    }

    #[test]
    fn identity_needs_every_column() {
        let c = identity_instance(6);
        let r = min_root_set(&c, DEFAULT_EXACT_THRESHOLD);
        assert_eq!(r.members, VertexSet::full(6));
        assert!(r.optimal);
        assert_eq!(all_min_root_sets(&c), vec![VertexSet::full(6)]);
    }

    #[test]
    fn single_target_on_edgeless_graph() {
        let g = DiGraph::new(4, []).unwrap();
        let c = build_cover(&g, &VertexSet::from([3])).unwrap();
        assert_eq!(c.rows, vec![vec![0, 0, 1, 0]]);
        assert_eq!(min_root_set(&c, 40).members, VertexSet::from([3]));
    }

    #[test]
    fn threshold_switches_to_greedy() {
        let g = DiGraph::new(3, [(1, 2), (1, 3)]).unwrap();
        let c = build_cover(&g, &VertexSet::full(3)).unwrap();
        let r = min_root_set(&c, 2);
        assert!(!r.optimal);
        assert_eq!(r.members, VertexSet::from([1]));
    }

    #[test]
    fn greedy_ties_go_to_smallest_id() {
        // 1 and 2 both reach {3}; 3 reaches itself only.
        let g = DiGraph::new(3, [(1, 3), (2, 3)]).unwrap();
        let c = build_cover(&g, &VertexSet::from([3])).unwrap();
        assert_eq!(greedy_root_set(&c), VertexSet::from([1]));
    }

    #[test]
    fn empty_targets_rejected() {
        let g = DiGraph::new(2, []).unwrap();
        assert!(build_cover(&g, &VertexSet::new()).is_err());
    }
}
