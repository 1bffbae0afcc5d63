//! Bipartite graphs on `[d] ⊔ [n]`, matchings, matching multifields,
//! support sets and transversal matroids.

mod matching;
mod matroid;
mod support;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, IndexSet, Result};

pub use matching::{
    has_matching_on, is_coherent, matching_multifield, matchings_within, max_matching, min_matchings,
    min_matchings_brute_force, min_matchings_hungarian, Matching, MatchingMultifield,
};
pub use matroid::Matroid;
pub use support::{
    colwise_dragon_condition, dragon_condition, enumerate_support_sets, hall_surplus_check, is_support_set,
    spanning_tree_no_left_leaves, support_face_dimension, transversal_matroid, transversal_rank,
    transversal_rank_by_matching,
};

/// A simple graph with left vertices `[d]` and right vertices `[n]`, stored
/// as the right neighbourhood `J_i` of every left vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    d: usize,
    n: usize,
    rows: Vec<IndexSet>,
}

impl BipartiteGraph {
    pub fn empty(d: usize, n: usize) -> Self {
        assert!(n <= 64, "at most 64 right vertices");
        BipartiteGraph { d, n, rows: vec![IndexSet::EMPTY; d] }
    }

    pub fn full(d: usize, n: usize) -> Self {
        let mut g = Self::empty(d, n);
        g.rows.iter_mut().for_each(|r| *r = IndexSet::full(n));
        g
    }

    /// From 0-based edges.
    pub fn from_edges(d: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(d, n);
        for &(i, j) in edges {
            if i >= d {
                return Err(Error::IndexOutOfRange { index: i + 1, bound: d });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, bound: n });
            }
            g.insert(i, j);
        }
        Ok(g)
    }

    /// From the right neighbourhoods `J_1, …, J_d`.
    pub fn from_rows(n: usize, rows: Vec<IndexSet>) -> Self {
        assert!(rows.iter().all(|r| r.is_subset(IndexSet::full(n))));
        BipartiteGraph { d: rows.len(), n, rows }
    }

    /// From the tuple `(I_1, …, I_n)` of left neighbourhoods.
    pub fn from_columns(d: usize, cols: &[IndexSet]) -> Self {
        let mut g = Self::empty(d, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in c.iter() {
                g.insert(i, j);
            }
        }
        g
    }

    pub fn left_size(&self) -> usize {
        self.d
    }

    pub fn right_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i < self.d && j < self.n);
        self.rows[i].insert(j);
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.rows[i].remove(j);
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.d && self.rows[i].contains(j)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// `J_i`.
    pub fn row(&self, i: usize) -> IndexSet {
        self.rows[i]
    }

    /// `I_j`.
    pub fn column(&self, j: usize) -> IndexSet {
        (0..self.d).filter(|&i| self.rows[i].contains(j)).collect()
    }

    /// `(I_1, …, I_n)`.
    pub fn columns(&self) -> Vec<IndexSet> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    /// `J_I`.
    pub fn rows_neighbourhood(&self, rows: IndexSet) -> IndexSet {
        rows.iter().fold(IndexSet::EMPTY, |acc, i| acc.union(self.rows[i]))
    }

    /// `I_J`.
    pub fn columns_neighbourhood(&self, cols: IndexSet) -> IndexSet {
        (0..self.d).filter(|&i| !self.rows[i].intersection(cols).is_empty()).collect()
    }

    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.d == other.d && self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    pub fn union(&self, other: &BipartiteGraph) -> BipartiteGraph {
        assert!(self.d == other.d && self.n == other.n);
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(*b)).collect();
        BipartiteGraph { d: self.d, n: self.n, rows }
    }

    pub fn transpose(&self) -> BipartiteGraph {
        assert!(self.d <= 64);
        BipartiteGraph { d: self.n, n: self.d, rows: self.columns() }
    }

    /// Restriction to the given columns, keeping their original labels.
    pub fn restrict_columns(&self, cols: IndexSet) -> BipartiteGraph {
        let rows = self.rows.iter().map(|r| r.intersection(cols)).collect();
        BipartiteGraph { d: self.d, n: self.n, rows }
    }

    /// Connected components over all `d + n` vertices; left vertex `i` is
    /// numbered `i` and right vertex `j` is numbered `d + j`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let total = self.d + self.n;
        let mut comp = vec![usize::MAX; total];
        let mut out = Vec::new();
        for start in 0..total {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut k = 0;
            while k < members.len() {
                let v = members[k];
                k += 1;
                let nbrs: Vec<usize> = if v < self.d {
                    self.rows[v].iter().map(|j| self.d + j).collect()
                } else {
                    self.column(v - self.d).iter().collect()
                };
                for u in nbrs {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Acyclic and connected.
    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.d + self.n
    }

    /// Sorted 0-based edge list.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }
}

/// Lexicographic on sorted edge lists.
impl Ord for BipartiteGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges().cmp(other.edges()).then(self.d.cmp(&other.d)).then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for BipartiteGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The tuple `(I_1, …, I_n)` with 1-based labels, e.g. `({1},{1,2},{3})`.
impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for j in 0..self.n {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{{}}}", self.column(j))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph{self}")
    }
}
