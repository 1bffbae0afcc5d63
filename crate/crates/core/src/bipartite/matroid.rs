use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{subsets_of_size, IndexSet};

/// A matroid on `[n]` given by its list of bases.
///
/// The list may be empty (the matroid with no bases). Bases are kept sorted,
/// so equal matroids compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<IndexSet>,
}

impl Matroid {
    pub fn from_bases(n: usize, rank: usize, mut bases: Vec<IndexSet>) -> Self {
        assert!(bases.iter().all(|b| b.len() == rank && b.is_subset(IndexSet::full(n))));
        bases.sort_unstable();
        bases.dedup();
        let m = Matroid { n, rank, bases };
        debug_assert!(m.satisfies_exchange(), "basis exchange fails for {m:?}");
        m
    }

    pub fn uniform(rank: usize, n: usize) -> Self {
        Matroid { n, rank, bases: subsets_of_size(n, rank) }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[IndexSet] {
        &self.bases
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_basis(&self, b: IndexSet) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    /// Elements in no basis.
    pub fn loops(&self) -> IndexSet {
        let used = self.bases.iter().fold(IndexSet::EMPTY, |acc, b| acc.union(*b));
        IndexSet::full(self.n).difference(used)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> IndexSet {
        if self.bases.is_empty() {
            return IndexSet::EMPTY;
        }
        self.bases.iter().fold(IndexSet::full(self.n), |acc, b| acc.intersection(*b))
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: IndexSet) -> usize {
        self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
    }

    /// Whether every basis of `self` is a basis of `other`.
    pub fn is_submatroid_of(&self, other: &Matroid) -> bool {
        self.n == other.n && self.rank == other.rank && self.bases.iter().all(|b| other.is_basis(*b))
    }

    /// Connected components. Two elements are related when one can replace
    /// the other in some basis, which means they share a circuit; loops and
    /// coloops are singletons.
    pub fn components(&self) -> Vec<IndexSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for b in &self.bases {
            for e in b.iter() {
                for f in IndexSet::full(self.n).difference(*b).iter() {
                    if self.is_basis(b.without(e).with(f)) {
                        let (re, rf) = (find(&mut parent, e), find(&mut parent, f));
                        parent[re] = rf;
                    }
                }
            }
        }
        let mut comps: Vec<IndexSet> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for e in 0..self.n {
            let r = find(&mut parent, e);
            if slot[r] == usize::MAX {
                slot[r] = comps.len();
                comps.push(IndexSet::EMPTY);
            }
            comps[slot[r]].insert(e);
        }
        comps
    }

    /// Nonempty, with a single component.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// The basis exchange axiom, checked exhaustively.
    pub fn satisfies_exchange(&self) -> bool {
        self.bases.iter().all(|a| {
            self.bases.iter().all(|b| {
                a.difference(*b).iter().all(|x| b.difference(*a).iter().any(|y| self.is_basis(a.without(x).with(y))))
            })
        })
    }

    /// Bases shared with `other`, in sorted order.
    pub fn common_bases(&self, other: &Matroid) -> Vec<IndexSet> {
        self.bases.iter().copied().filter(|b| other.is_basis(*b)).collect()
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, r={}, [", self.n, self.rank)?;
        for (k, b) in self.bases.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            for i in b.iter() {
                write!(f, "{}", i + 1)?;
            }
        }
        f.write_str("])")
    }
}
