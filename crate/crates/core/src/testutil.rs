//! Shared fixtures and proptest strategies for unit tests.

use alloc::format;
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::bipartite::{enumerate_support_sets, BipartiteGraph};
use crate::trop::{TropMatrix, TropScalar};
use crate::{IndexSet, Rational, DEFAULT_BUDGET};

/// 1-based sets.
pub fn set(v: &[usize]) -> IndexSet {
    v.iter().map(|&k| k - 1).collect()
}

/// The 3 × 4 matrix of the standard tropical plane.
pub fn standard_plane() -> TropMatrix {
    TropMatrix::from_strs(&[&["0", "0", "inf", "inf"], &["inf", "0", "0", "inf"], &["inf", "inf", "0", "0"]]).unwrap()
}

/// The 3 × 5 matrix whose arrangement is drawn with covector labels.
pub fn labelled_matrix() -> TropMatrix {
    TropMatrix::from_strs(&[
        &["0", "3", "0", "inf", "inf"],
        &["inf", "0", "0", "2", "inf"],
        &["inf", "inf", "0", "0", "0"],
    ])
    .unwrap()
}

/// The 4 × 6 family whose multifield does not depend on `t` for `|t| < 1`.
pub fn family(t: Rational) -> TropMatrix {
    let t = format!("{t}");
    TropMatrix::from_strs(&[
        &["inf", "0", "0", "0", "inf", "inf"],
        &["0", "inf", "0", "inf", "0", "inf"],
        &[t.as_str(), "0", "inf", "inf", "inf", "0"],
        &["0", "1", "2", "inf", "inf", "inf"],
    ])
    .unwrap()
}

/// Rows `(0,0,0,0)` and `(0,0,1,1)`: a tree with a bounded segment.
pub fn segment_matrix() -> TropMatrix {
    TropMatrix::from_strs(&[&["0", "0", "0", "0"], &["0", "0", "1", "1"]]).unwrap()
}

/// Rows `(0,∞,0,0)` and `(∞,0,1,1)`, supported on a support set.
pub fn sparse_segment_matrix() -> TropMatrix {
    TropMatrix::from_strs(&[&["0", "inf", "0", "0"], &["inf", "0", "1", "1"]]).unwrap()
}

fn entry() -> impl Strategy<Value = TropScalar> {
    prop_oneof![5 => (-3i64..4).prop_map(TropScalar::int), 1 => Just(TropScalar::Infinity)]
}

/// Small integer matrices with occasional infinite entries.
pub fn matrix_strategy(max_d: usize, max_n: usize) -> impl Strategy<Value = TropMatrix> {
    (1..=max_d, 1..=max_n).prop_flat_map(|(d, n)| {
        proptest::collection::vec(entry(), d * n).prop_map(move |e| TropMatrix::new(d, n, e).unwrap())
    })
}

/// Matrices with `d ≤ n` whose support contains a matching.
pub fn matching_matrix_strategy(max_d: usize, max_n: usize) -> impl Strategy<Value = TropMatrix> {
    matrix_strategy(max_d, max_n)
        .prop_filter("needs d ≤ n and a matching", |a| a.rows() <= a.cols() && crate::plucker::stiefel_map(a).is_ok())
}

/// Integer matrices supported exactly on a support set.
pub fn support_set_matrix_strategy(max_d: usize, max_n: usize) -> impl Strategy<Value = TropMatrix> {
    (1..=max_d, 1..=max_n)
        .prop_filter("d < n", |(d, n)| d < n)
        .prop_flat_map(|(d, n)| {
            let sets = enumerate_support_sets(d, n, DEFAULT_BUDGET).unwrap();
            (proptest::sample::select(sets), proptest::collection::vec(-4i64..5, d * n))
        })
        .prop_map(|(g, vals)| on_support(&g, &vals))
}

/// Fills the edges of `g` with the given integers (row-major), others `∞`.
pub fn on_support(g: &BipartiteGraph, vals: &[i64]) -> TropMatrix {
    let (d, n) = (g.left_size(), g.right_size());
    let e: Vec<TropScalar> = (0..d * n)
        .map(|k| if g.contains(k / n, k % n) { TropScalar::int(vals[k]) } else { TropScalar::Infinity })
        .collect();
    TropMatrix::new(d, n, e).unwrap()
}
