//! Regular matroid subdivisions of hypersimplices induced by Plücker vectors.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arrangement::{enumerate_covectors, ArrangementComplex};
use crate::bipartite::{max_matching, transversal_matroid, BipartiteGraph, Matroid};
use crate::geom::Polyhedron;
use crate::plucker::PluckerVector;
use crate::trop::{TropMatrix, TropVector};
use crate::{rat, Error, IndexSet, Rational, Result};

/// The cell of `D(p)` picked out by `y`: the `J` minimizing `p_J − Σ_{j∈J} y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectedMatroid {
    pub matroid: Matroid,
    pub y: Vec<Rational>,
    pub value: Rational,
}

pub fn select_matroid(p: &PluckerVector, y: &TropVector) -> Result<SelectedMatroid> {
    if y.len() != p.ground_size() {
        return Err(Error::DimensionMismatch { expected: p.ground_size(), found: y.len() });
    }
    let y = y.to_finite()?;
    Ok(select_matroid_finite(p, &y))
}

pub(crate) fn select_matroid_finite(p: &PluckerVector, y: &[Rational]) -> SelectedMatroid {
    let mut best: Option<Rational> = None;
    let mut bases = Vec::new();
    for (key, v) in p.iter() {
        let Some(v) = v.finite() else { continue };
        let val = key.iter().fold(v.clone(), |acc, j| acc - &y[j]);
        match &best {
            Some(b) if val > *b => {}
            Some(b) if val == *b => bases.push(key),
            _ => {
                best = Some(val);
                bases = vec![key];
            }
        }
    }
    SelectedMatroid {
        matroid: Matroid::from_bases(p.ground_size(), p.rank(), bases),
        y: y.to_vec(),
        value: best.expect("a Plücker vector has a finite entry"),
    }
}

pub(crate) fn require_matching(a: &TropMatrix) -> Result<()> {
    let supp = a.support();
    if max_matching(&supp, IndexSet::full(a.rows()), IndexSet::full(a.cols())) < a.rows() {
        return Err(Error::NoMatchingInSupport);
    }
    Ok(())
}

/// The facets of `D(A)`, sorted.
///
/// Every facet is the transversal matroid of a maximal covector. A maximal
/// covector can also give a lower-dimensional cell (or the empty matroid),
/// so only the matroids not contained in another one are kept.
pub fn facets_of_d(a: &TropMatrix, budget: u64) -> Result<Vec<Matroid>> {
    require_matching(a)?;
    facets_from_complex(&enumerate_covectors(a, budget)?)
}

pub fn facets_from_complex(tc: &ArrangementComplex) -> Result<Vec<Matroid>> {
    let mut found = BTreeSet::new();
    for cell in tc.maximal_cells() {
        let m = transversal_matroid(&cell.covector)?;
        if !m.is_empty() {
            found.insert(m);
        }
    }
    Ok(maximal_matroids(found))
}

/// Matroids whose basis set is not strictly contained in another one's.
pub fn maximal_matroids(ms: impl IntoIterator<Item = Matroid>) -> Vec<Matroid> {
    let all: BTreeSet<Matroid> = ms.into_iter().collect();
    all.iter().filter(|m| !all.iter().any(|o| o != *m && m.is_submatroid_of(o))).cloned().collect()
}

/// `{x ∈ ℝ^n : Σ x_j = d, 0 ≤ x_j ≤ 1, Σ_{j ∈ J_I} x_j ≥ |I| for all I ⊆ [d]}`.
pub fn transversal_polytope_ineqs(g: &BipartiteGraph) -> Polyhedron {
    let (d, n) = (g.left_size(), g.right_size());
    let indicator = |s: IndexSet| -> Vec<Rational> {
        (0..n).map(|j| if s.contains(j) { Rational::one() } else { Rational::zero() }).collect()
    };
    let mut p = Polyhedron::new(n);
    p.add_eq(indicator(IndexSet::full(n)), rat(d as i64));
    for j in 0..n {
        let e = indicator(IndexSet::singleton(j));
        p.add_ge(e.clone(), Rational::zero());
        p.add_le(e, Rational::one());
    }
    for rows in IndexSet::full(d).nonempty_subsets() {
        p.add_ge(indicator(g.rows_neighbourhood(rows)), rat(rows.len() as i64));
    }
    p
}

/// No loops and no coloops.
pub fn is_interior_cell(m: &Matroid) -> Result<bool> {
    if m.is_empty() {
        return Err(Error::Precondition("the empty matroid is not a cell"));
    }
    Ok(m.loops().is_empty() && m.coloops().is_empty())
}

pub fn subdivisions_equal(a: &TropMatrix, b: &TropMatrix, budget: u64) -> Result<bool> {
    Ok(facets_of_d(a, budget)? == facets_of_d(b, budget)?)
}

/// The dual graph of the interior of a subdivision: one node per facet, and
/// an edge when two facets share an interior face of codimension one.
///
/// For rank 2 this is the bounded part of the tropical line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetGraph {
    pub facets: Vec<Matroid>,
    pub edges: Vec<(usize, usize)>,
}

impl FacetGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Every node has at most two neighbours, so a tree is a path.
    pub fn is_caterpillar(&self) -> bool {
        (0..self.facets.len()).all(|v| self.degree(v) <= 2)
    }
}

/// Links facets whose common bases form a loopless, coloopless matroid with
/// exactly two components (a face of codimension one in the interior).
pub fn bounded_tree_from_facets(facets: &[Matroid]) -> FacetGraph {
    let mut edges = Vec::new();
    for (u, f) in facets.iter().enumerate() {
        for (v, g) in facets.iter().enumerate().skip(u + 1) {
            let common = f.common_bases(g);
            if common.is_empty() {
                continue;
            }
            let m = Matroid::from_bases(f.ground_size(), f.rank(), common);
            if m.loops().is_empty() && m.coloops().is_empty() && m.components().len() == 2 {
                edges.push((u, v));
            }
        }
    }
    FacetGraph { facets: facets.to_vec(), edges }
}
