//! Tropical hyperplane arrangements: covectors, the covector complex and its
//! bounded pieces.
//!
//! Column `j` of a `d × n` matrix `A` gives the tropical hyperplane of the
//! linear form `min_i (x_i + a_ij)` on `ℝ^d / ℝ𝟙`. The covector of a point
//! records, column by column, which rows attain that minimum.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::bipartite::{dragon_condition, min_matchings, BipartiteGraph};
use crate::geom::{strict_feasible, LinearSystem, Polyhedron, Row};
use crate::trop::{TropMatrix, TropScalar, TropVector};
use crate::{Error, IndexSet, Rational, Result};

/// A covector, as a bipartite graph on rows `[d]` and columns `[n]`.
pub type Covector = BipartiteGraph;

fn finite(a: &TropMatrix, i: usize, j: usize) -> &Rational {
    a.get(i, j).finite().expect("entry on the support")
}

/// `(i,j) ∈ tc(x)` iff `x_i + a_ij` is finite and minimal in column `j`.
pub fn covector_of_point(a: &TropMatrix, x: &TropVector) -> Result<Covector> {
    if x.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: x.len() });
    }
    a.require_no_empty_column()?;
    let x = x.to_finite()?;
    Ok(covector_of_finite_point(a, &x))
}

pub(crate) fn covector_of_finite_point(a: &TropMatrix, x: &[Rational]) -> Covector {
    let mut tau = BipartiteGraph::empty(a.rows(), a.cols());
    for j in 0..a.cols() {
        let vals: Vec<(usize, Rational)> =
            (0..a.rows()).filter_map(|i| a.get(i, j).finite().map(|v| (i, &x[i] + v))).collect();
        if let Some(min) = vals.iter().map(|(_, v)| v).min() {
            for (i, v) in &vals {
                if v == min {
                    tau.insert(*i, j);
                }
            }
        }
    }
    tau
}

/// `{(i, j₀) : a_ij₀ + y_j₀ = min_j (a_ij + y_j)}`.
pub fn transpose_covector(a: &TropMatrix, y: &TropVector) -> Result<BipartiteGraph> {
    if y.len() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: y.len() });
    }
    a.require_no_empty_row()?;
    let y = y.to_finite()?;
    Ok(covector_of_finite_point(&a.transpose(), &y).transpose())
}

/// Equalities and inequalities on `x ∈ ℝ^d` describing the closure of
/// `{x : tc(x) = τ}`, i.e. `{x : tc(x) ⊇ τ}`.
///
/// The inequalities are exactly the rows that are strict on the relative
/// interior.
pub fn covector_rows(a: &TropMatrix, tau: &Covector) -> (Vec<Row>, Vec<Row>) {
    let d = a.rows();
    let diff = |p: usize, q: usize| {
        let mut v = vec![Rational::zero(); d];
        v[p] += Rational::one();
        v[q] -= Rational::one();
        v
    };
    let (mut eqs, mut ineqs) = (Vec::new(), Vec::new());
    for j in 0..a.cols() {
        let ties = tau.column(j);
        let Some(i0) = ties.first() else { continue };
        for i in (0..d).filter(|&i| i != i0 && a.get(i, j).is_finite()) {
            // x_i + a_ij versus x_i0 + a_i0j
            let row = Row::new(diff(i, i0), finite(a, i0, j) - finite(a, i, j));
            if ties.contains(i) {
                eqs.push(row);
            } else {
                ineqs.push(row);
            }
        }
    }
    (eqs, ineqs)
}

fn gauge(d: usize) -> Row {
    let mut e = vec![Rational::zero(); d];
    e[0] = Rational::one();
    Row::new(e, Rational::zero())
}

/// The closed cell of `τ` in the chart `x_1 = 0`.
pub fn cell_polyhedron(a: &TropMatrix, tau: &Covector) -> Polyhedron {
    let (mut eqs, ineqs) = covector_rows(a, tau);
    eqs.push(gauge(a.rows()));
    Polyhedron { dim: a.rows(), eqs, ineqs }
}

/// `{x : tc(x) = τ, x_1 = 0}`.
pub fn cell_relint_system(a: &TropMatrix, tau: &Covector) -> LinearSystem {
    let (mut eqs, strict) = covector_rows(a, tau);
    eqs.push(gauge(a.rows()));
    LinearSystem { dim: a.rows(), eqs, weak: Vec::new(), strict }
}

/// A cell of the arrangement with its dimension in `ℝ^d / ℝ𝟙` and a point of
/// its relative interior (with `x_1 = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub covector: Covector,
    pub dim: usize,
    pub relint: Vec<Rational>,
}

/// All cells of the arrangement, ordered by covector edge list.
#[derive(Debug, Clone)]
pub struct ArrangementComplex {
    matrix: TropMatrix,
    cells: Vec<Cell>,
}

impl ArrangementComplex {
    pub fn matrix(&self) -> &TropMatrix {
        &self.matrix
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn covectors(&self) -> impl Iterator<Item = &Covector> {
        self.cells.iter().map(|c| &c.covector)
    }

    pub fn get(&self, tau: &Covector) -> Option<&Cell> {
        self.cells.binary_search_by(|c| c.covector.cmp(tau)).ok().map(|k| &self.cells[k])
    }

    pub fn contains(&self, tau: &Covector) -> bool {
        self.get(tau).is_some()
    }

    /// Cells whose covector is not strictly contained in another covector.
    pub fn maximal_cells(&self) -> Vec<&Cell> {
        self.cells
            .iter()
            .filter(|c| !self.cells.iter().any(|o| o.covector != c.covector && c.covector.is_subgraph_of(&o.covector)))
            .collect()
    }

    pub fn polyhedron(&self, cell: &Cell) -> Polyhedron {
        cell_polyhedron(&self.matrix, &cell.covector)
    }
}

/// The covector complex `TC(A)`.
///
/// Full-dimensional cells are found by a depth-first search over choice
/// functions `j ↦ i(j) ∈ I_j(supp A)`, pruned by strict feasibility. Every
/// face of every such cell is then labelled by the covector of a point in its
/// relative interior.
pub fn enumerate_covectors(a: &TropMatrix, budget: u64) -> Result<ArrangementComplex> {
    a.require_no_empty_column()?;
    let (d, n) = (a.rows(), a.cols());
    let supp = a.support();
    let mut steps = 0u64;
    let mut tick = |k: u64| {
        steps += k;
        if steps > budget {
            Err(Error::BudgetExceeded { what: "covector enumeration", budget })
        } else {
            Ok(())
        }
    };

    // depth-first search over choices for columns with two or more rows
    let walls: Vec<usize> = (0..n).filter(|&j| supp.column(j).len() > 1).collect();
    let mut leaves: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, LinearSystem)> = Vec::new();
    let mut root = LinearSystem::new(d);
    root.eqs.push(gauge(d));
    stack.push((0, Vec::new(), root));
    while let Some((depth, choice, sys)) = stack.pop() {
        if depth == walls.len() {
            leaves.push(choice);
            continue;
        }
        let j = walls[depth];
        for i in supp.column(j).iter().collect::<Vec<_>>().into_iter().rev() {
            tick(1)?;
            let mut next = sys.clone();
            let mut tau = BipartiteGraph::empty(d, n);
            tau.insert(i, j);
            next.strict.extend(covector_rows(a, &tau).1);
            if strict_feasible(&next).is_some() {
                let mut c = choice.clone();
                c.push(i);
                stack.push((depth + 1, c, next));
            }
        }
    }

    let mut found: BTreeMap<Covector, Cell> = BTreeMap::new();
    for choice in leaves {
        let mut tau = BipartiteGraph::empty(d, n);
        for j in 0..n {
            if let Some(pos) = walls.iter().position(|&w| w == j) {
                tau.insert(choice[pos], j);
            } else {
                tau.insert(supp.column(j).first().expect("nonempty column"), j);
            }
        }
        let faces = cell_polyhedron(a, &tau).enumerate_faces(budget)?;
        tick(faces.len() as u64)?;
        for f in faces {
            let label = covector_of_finite_point(a, &f.relint);
            found.entry(label.clone()).or_insert(Cell { covector: label, dim: f.dim as usize, relint: f.relint });
        }
    }
    Ok(ArrangementComplex { matrix: a.clone(), cells: found.into_values().collect() })
}

/// Every row is covered.
pub fn in_b(tau: &Covector) -> bool {
    (0..tau.left_size()).all(|i| !tau.row(i).is_empty())
}

/// `|J_I(τ)| ≥ |I| + 1` for every nonempty set of rows.
pub fn in_k(tau: &Covector) -> bool {
    dragon_condition(tau)
}

/// The tropical determinant is `∞` or attained by at least two permutations.
pub fn is_trop_singular(b: &TropMatrix) -> Result<bool> {
    if b.rows() != b.cols() {
        return Err(Error::DimensionMismatch { expected: b.rows(), found: b.cols() });
    }
    let (value, argmins) = min_matchings(b, IndexSet::full(b.cols()))?;
    Ok(value == TropScalar::Infinity || argmins.len() >= 2)
}
