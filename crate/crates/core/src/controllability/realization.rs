use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiGraph, Distance, SelectionMatrix, VertexSet};
use crate::linalg::Matrix;
use crate::scalar::{ExactScalar, Scalar};
use crate::Rational;

/// A concrete state matrix on a graph together with leader and target sets.
///
/// Row/column `i` of `matrix` is vertex `i + 1`. For `i != j` the entry
/// `(i, j)` is nonzero exactly when the graph has the arc `(j, i)`; the
/// diagonal is free.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization<T = Rational> {
    graph: DiGraph,
    matrix: Matrix<T>,
    leaders: VertexSet,
    targets: VertexSet,
}

impl<T: Scalar> Realization<T> {
    pub fn new(graph: DiGraph, matrix: Matrix<T>, leaders: VertexSet, targets: VertexSet) -> Result<Self> {
        check_support(&graph, &matrix)?;
        leaders.check_within(graph.n())?;
        targets.check_within(graph.n())?;
        Ok(Realization {
            graph,
            matrix,
            leaders,
            targets,
        })
    }

    pub fn graph(&self) -> &DiGraph {
        &self.graph
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn leaders(&self) -> &VertexSet {
        &self.leaders
    }

    pub fn targets(&self) -> &VertexSet {
        &self.targets
    }

    /// Number of outputs, `|V_T|`.
    pub fn p(&self) -> usize {
        self.targets.len()
    }

    /// Number of inputs, `|V_L|`.
    pub fn m(&self) -> usize {
        self.leaders.len()
    }

    /// Same matrix with a different leader set.
    pub fn with_leaders(&self, leaders: VertexSet) -> Result<Self> {
        leaders.check_within(self.graph.n())?;
        Ok(Realization {
            leaders,
            ..self.clone()
        })
    }

    pub fn input_matrix(&self) -> Matrix<T> {
        SelectionMatrix::new(self.graph.n(), self.leaders.clone())
            .expect("validated on construction")
            .to_matrix()
    }

    pub fn output_matrix(&self) -> Matrix<T> {
        SelectionMatrix::new(self.graph.n(), self.targets.clone())
            .expect("validated on construction")
            .to_transposed_matrix()
    }

    /// The full `p x (n m)` matrix `[HU, HXU, ..., HX^(n-1)U]`.
    pub fn output_ctrb_matrix(&self) -> Matrix<T> {
        let rows = self.target_rows();
        let mut block = self.input_matrix();
        let mut acc = block.select_rows(&rows);
        for _ in 1..self.graph.n() {
            block = self.matrix.mul_mat(&block);
            acc = acc.hstack(&block.select_rows(&rows));
        }
        acc
    }

    fn target_rows(&self) -> Vec<usize> {
        self.targets.iter().map(|v| v - 1).collect()
    }
}

impl<T: ExactScalar> Realization<T> {
    /// Exact rank of the output controllability matrix.
    ///
    /// Blocks `H X^k U` are appended for `k = 0, 1, ...` and elimination
    /// stops as soon as the rank reaches `p`.
    pub fn output_ctrb_rank(&self) -> usize {
        let p = self.p();
        if p == 0 || self.m() == 0 {
            return 0;
        }
        let rows = self.target_rows();
        let mut block = self.input_matrix();
        let mut acc = block.select_rows(&rows);
        let mut rank = acc.rank();
        let mut k = 1;
        while rank < p && k < self.graph.n() {
            block = self.matrix.mul_mat(&block);
            let hb = block.select_rows(&rows);
            if !hb.is_zero_matrix() {
                acc = acc.hstack(&hb);
                rank = acc.rank();
            }
            k += 1;
        }
        rank
    }

    pub fn is_target_controllable(&self) -> bool {
        self.output_ctrb_rank() == self.p()
    }

    /// Whether the matrix is distance-information preserving: for distinct
    /// `i, j` with `d(j, i) = k` finite, `(X^k)_{ij} != 0`.
    ///
    /// Also asserts the converse zero pattern `d(j, i) > k => (X^k)_{ij} = 0`,
    /// which holds for every matrix with the graph's support; a violation is
    /// reported as [`Error::ZeroPattern`].
    pub fn is_distance_preserving(&self) -> Result<bool> {
        is_distance_preserving(&self.graph, &self.matrix)
    }
}

/// Checks that off-diagonal nonzeros of `x` are exactly the transposed arcs.
pub fn check_support<T: Scalar>(g: &DiGraph, x: &Matrix<T>) -> Result<()> {
    let n = g.n();
    if x.rows() != n || x.cols() != n {
        return Err(Error::Dimension {
            rows: x.rows(),
            cols: x.cols(),
            n,
        });
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && x[(i, j)].is_zero() == g.has_arc(j + 1, i + 1) {
                return Err(Error::Support { row: i + 1, col: j + 1 });
            }
        }
    }
    Ok(())
}

/// Matrix-level form of [`Realization::is_distance_preserving`].
pub fn is_distance_preserving<T: ExactScalar>(g: &DiGraph, x: &Matrix<T>) -> Result<bool> {
    check_support(g, x)?;
    let n = g.n();
    let dist = g.distance_table();
    // Past the longest finite distance nothing is required and the zero
    // pattern only repeats.
    let reach = dist
        .iter()
        .flatten()
        .filter_map(|d| d.finite())
        .max()
        .unwrap_or(0);
    let mut preserving = true;
    let mut power = Matrix::identity(n);
    for k in 1..=reach.min(n.saturating_sub(1)) {
        power = power.mul_mat(x);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let zero = power[(i, j)].is_zero();
                match dist[j][i] {
                    Distance::Finite(d) if d == k => preserving &= !zero,
                    Distance::Finite(d) if d < k => {}
                    _ if !zero => {
                        return Err(Error::ZeroPattern {
                            row: i + 1,
                            col: j + 1,
                            power: k,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(preserving)
}

/// Serialized realization with entries as exact fraction strings
/// (`"3"`, `"-1/2"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDocument {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
    pub leaders: Vec<usize>,
    pub targets: Vec<usize>,
    pub matrix: Vec<Vec<String>>,
}

impl From<&Realization<Rational>> for RealizationDocument {
    fn from(r: &Realization<Rational>) -> Self {
        RealizationDocument {
            n: r.graph.n(),
            arcs: r.graph.arcs().map(|(u, v)| [u, v]).collect(),
            leaders: r.leaders.as_slice().to_vec(),
            targets: r.targets.as_slice().to_vec(),
            matrix: r
                .matrix
                .to_rows()
                .into_iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

impl RealizationDocument {
    pub fn into_realization(self) -> Result<Realization<Rational>> {
        let graph = DiGraph::new(self.n, self.arcs.iter().map(|a| (a[0], a[1])))?;
        let mut rows = Vec::with_capacity(self.matrix.len());
        for (i, row) in self.matrix.iter().enumerate() {
            let parsed = row
                .iter()
                .map(|s| {
                    s.parse::<Rational>().map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: format!("matrix entry `{s}`: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        if rows.iter().any(|r| r.len() != self.n) || rows.len() != self.n {
            return Err(Error::Dimension {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                n: self.n,
            });
        }
        Realization::new(graph, Matrix::from_rows(rows), self.leaders.into(), self.targets.into())
    }
}
