use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use super::BipartiteGraph;
use crate::geom::{strict_feasible, LinearSystem};
use crate::trop::{TropMatrix, TropScalar};
use crate::{subsets_of_size, Error, IndexSet, Rational, Result};

/// A matching `{(1, j_1), …, (d, j_d)}` with distinct `j`'s, stored as the
/// column chosen by each row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    cols: Vec<usize>,
}

impl Matching {
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        let set: IndexSet = cols.iter().copied().collect();
        if set.len() != cols.len() {
            return Err(Error::InvalidMultifield("a matching uses a column twice"));
        }
        Ok(Matching { cols })
    }

    /// The column matched to row `i`.
    pub fn column_of(&self, i: usize) -> usize {
        self.cols[i]
    }

    pub fn columns(&self) -> &[usize] {
        &self.cols
    }

    pub fn column_set(&self) -> IndexSet {
        self.cols.iter().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().copied().enumerate()
    }

    /// `Σ a_ij` over the edges.
    pub fn weight(&self, a: &TropMatrix) -> TropScalar {
        self.edges().fold(TropScalar::zero(), |acc, (i, j)| &acc + a.get(i, j))
    }

    pub fn is_within(&self, g: &BipartiteGraph) -> bool {
        self.edges().all(|(i, j)| g.contains(i, j))
    }

    pub fn to_graph(&self, n: usize) -> BipartiteGraph {
        let mut g = BipartiteGraph::empty(self.cols.len(), n);
        for (i, j) in self.edges() {
            g.insert(i, j);
        }
        g
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, j) in self.edges() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Size of a maximum matching between `rows` and `cols` inside `g`.
pub fn max_matching(g: &BipartiteGraph, rows: IndexSet, cols: IndexSet) -> usize {
    fn augment(g: &BipartiteGraph, i: usize, cols: IndexSet, seen: &mut IndexSet, owner: &mut [Option<usize>]) -> bool {
        for j in g.row(i).intersection(cols).iter() {
            if seen.contains(j) {
                continue;
            }
            seen.insert(j);
            if owner[j].is_none_or(|k| augment(g, k, cols, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; g.right_size()];
    rows.iter()
        .filter(|&i| {
            let mut seen = IndexSet::EMPTY;
            augment(g, i, cols, &mut seen, &mut owner)
        })
        .count()
}

/// Whether `g` contains a matching with column set `cols`.
pub fn has_matching_on(g: &BipartiteGraph, cols: IndexSet) -> bool {
    let d = g.left_size();
    cols.len() == d && max_matching(g, IndexSet::full(d), cols) == d
}

/// All matchings with column set `cols` inside `g`.
pub fn matchings_within(g: &BipartiteGraph, cols: IndexSet) -> Vec<Matching> {
    fn rec(g: &BipartiteGraph, i: usize, free: IndexSet, cur: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if i == g.left_size() {
            out.push(Matching { cols: cur.clone() });
            return;
        }
        for j in g.row(i).intersection(free).iter() {
            cur.push(j);
            rec(g, i + 1, free.without(j), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if cols.len() == g.left_size() {
        rec(g, 0, cols, &mut Vec::new(), &mut out);
    }
    out
}

/// The `([d], J)` tropical minor of `A` and all matchings attaining it.
///
/// The value is `∞` with no argmins when the support has no matching on `J`.
pub fn min_matchings(a: &TropMatrix, cols: IndexSet) -> Result<(TropScalar, Vec<Matching>)> {
    if cols.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: cols.len() });
    }
    if let Some(j) = cols.iter().find(|&j| j >= a.cols()) {
        return Err(Error::IndexOutOfRange { index: j + 1, bound: a.cols() });
    }
    Ok(if a.rows() <= 8 { min_matchings_brute_force(a, cols) } else { min_matchings_hungarian(a, cols) })
}

/// Enumerates every supported matching on `cols`.
pub fn min_matchings_brute_force(a: &TropMatrix, cols: IndexSet) -> (TropScalar, Vec<Matching>) {
    let support = a.support();
    let mut best = TropScalar::Infinity;
    let mut argmins = Vec::new();
    for m in matchings_within(&support, cols) {
        let w = m.weight(a);
        if w < best {
            best = w;
            argmins.clear();
            argmins.push(m);
        } else if w == best {
            argmins.push(m);
        }
    }
    argmins.sort();
    (best, argmins)
}

/// Shortest-augmenting-path assignment with exact dual potentials; the
/// argmins are the matchings inside the subgraph of tight edges.
pub fn min_matchings_hungarian(a: &TropMatrix, cols: IndexSet) -> (TropScalar, Vec<Matching>) {
    let d = a.rows();
    let colv = cols.to_vec();
    // infinite entries get a cost exceeding any finite assignment
    let total: Rational = (0..d)
        .flat_map(|i| colv.iter().map(move |&j| (i, j)))
        .filter_map(|(i, j)| a.get(i, j).finite().map(Signed::abs))
        .fold(Rational::zero(), |acc, v| acc + v);
    let big = &total + &total + Rational::from_integer(1.into());
    let cost = |i: usize, k: usize| a.get(i, colv[k]).finite().cloned().unwrap_or_else(|| big.clone());

    // 1-based arrays, index 0 is the sentinel
    let mut u = vec![Rational::zero(); d + 1];
    let mut v = vec![Rational::zero(); d + 1];
    let mut p = vec![0usize; d + 1];
    let mut way = vec![0usize; d + 1];
    for i in 1..=d {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<Rational>> = vec![None; d + 1];
        let mut used = vec![false; d + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0;
            for j in 1..=d {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|dl| mj < dl) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("an unused column remains");
            for j in 0..=d {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let uses_infinity = (1..=d).any(|j| a.get(p[j] - 1, colv[j - 1]).is_infinite());
    if uses_infinity {
        return (TropScalar::Infinity, Vec::new());
    }
    let mut tight = BipartiteGraph::empty(d, a.cols());
    for i in 1..=d {
        for k in 1..=d {
            if let Some(c) = a.get(i - 1, colv[k - 1]).finite() {
                if (c - &u[i] - &v[k]).is_zero() {
                    tight.insert(i - 1, colv[k - 1]);
                }
            }
        }
    }
    let mut argmins = matchings_within(&tight, cols);
    argmins.sort();
    let value = argmins[0].weight(a);
    (value, argmins)
}

/// A choice of a nonempty set of matchings on every `d`-subset of `[n]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingMultifield {
    d: usize,
    n: usize,
    fields: BTreeMap<IndexSet, BTreeSet<Matching>>,
}

impl MatchingMultifield {
    pub fn new(d: usize, n: usize, fields: BTreeMap<IndexSet, BTreeSet<Matching>>) -> Result<Self> {
        let keys = subsets_of_size(n, d);
        if fields.len() != keys.len() || keys.iter().any(|k| !fields.contains_key(k)) {
            return Err(Error::InvalidMultifield("every d-subset of columns needs an entry"));
        }
        for (cols, ms) in &fields {
            if ms.is_empty() {
                return Err(Error::InvalidMultifield("empty set of matchings"));
            }
            if ms.iter().any(|m| m.cols.len() != d || m.column_set() != *cols) {
                return Err(Error::InvalidMultifield("a matching does not sit on its column set"));
            }
        }
        Ok(MatchingMultifield { d, n, fields })
    }

    pub fn left_size(&self) -> usize {
        self.d
    }

    pub fn right_size(&self) -> usize {
        self.n
    }

    pub fn get(&self, cols: IndexSet) -> Option<&BTreeSet<Matching>> {
        self.fields.get(&cols)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexSet, &BTreeSet<Matching>)> {
        self.fields.iter()
    }

    /// Every matching appearing in the multifield.
    pub fn all_matchings(&self) -> BTreeSet<Matching> {
        self.fields.values().flatten().cloned().collect()
    }

    /// Union of the edges of all matchings.
    pub fn support(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::empty(self.d, self.n);
        for m in self.fields.values().flatten() {
            for (i, j) in m.edges() {
                g.insert(i, j);
            }
        }
        g
    }
}

/// `Λ(A)`: the optimal matchings of `A` on every column set.
pub fn matching_multifield(a: &TropMatrix) -> Result<MatchingMultifield> {
    let mut fields = BTreeMap::new();
    for cols in subsets_of_size(a.cols(), a.rows()) {
        let (_, argmins) = min_matchings(a, cols)?;
        if argmins.is_empty() {
            return Err(Error::NoMatchingOnColumns(cols));
        }
        fields.insert(cols, argmins.into_iter().collect());
    }
    MatchingMultifield::new(a.rows(), a.cols(), fields)
}

/// Looks for a matrix `A` with `Λ(A) = Λ`.
///
/// The unknowns are the entries on the support of `Λ`; on each column set the
/// chosen matchings must have equal weight, strictly below every other
/// supported matching. The witness has zero row minima.
pub fn is_coherent(lambda: &MatchingMultifield) -> Option<TropMatrix> {
    let (d, n) = (lambda.d, lambda.n);
    let support = lambda.support();
    let vars: Vec<(usize, usize)> = support.edge_list();
    let index = |i: usize, j: usize| vars.binary_search(&(i, j)).expect("edge of the support");
    let form = |m: &Matching| {
        let mut a = vec![Rational::zero(); vars.len()];
        for (i, j) in m.edges() {
            a[index(i, j)] += Rational::from_integer(1.into());
        }
        a
    };
    let diff = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>();

    let mut sys = LinearSystem::new(vars.len());
    for (&cols, chosen) in &lambda.fields {
        let mut it = chosen.iter();
        let base = form(it.next().expect("nonempty"));
        for m in it {
            sys.add_eq(diff(&form(m), &base), Rational::zero());
        }
        for m in matchings_within(&support, cols) {
            if !chosen.contains(&m) {
                sys.add_gt(diff(&form(&m), &base), Rational::zero());
            }
        }
    }
    let x = strict_feasible(&sys)?;
    let mut entries = vec![TropScalar::Infinity; d * n];
    for (k, &(i, j)) in vars.iter().enumerate() {
        entries[i * n + j] = TropScalar::Finite(x[k].clone());
    }
    let witness = TropMatrix::new(d, n, entries).expect("shape");
    let shifts: Vec<Rational> = (0..d)
        .map(|i| witness.row(i).iter().filter_map(TropScalar::finite).min().map_or_else(Rational::zero, |m| -m.clone()))
        .collect();
    let witness = witness.with_row_shifts(&shifts);
    debug_assert_eq!(matching_multifield(&witness).as_ref().ok(), Some(lambda));
    Some(witness)
}
