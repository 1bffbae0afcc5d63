//! Tropical Plücker vectors (valuated matroids) and the Stiefel map.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::bipartite::{is_support_set, min_matchings, BipartiteGraph, Matroid};
use crate::trop::{TropMatrix, TropScalar, TropVector};
use crate::{subsets_of_size, Error, IndexSet, Rational, Result};

static INFINITY: TropScalar = TropScalar::Infinity;

/// A point of the tropical Grassmannian candidate space: one value per
/// `d`-subset of `[n]`, not all infinite.
///
/// Equality is projective: two vectors are equal when they have the same
/// finite support and differ by a global constant there.
#[derive(Clone)]
pub struct PluckerVector {
    d: usize,
    n: usize,
    values: BTreeMap<IndexSet, TropScalar>,
}

impl PluckerVector {
    /// Missing `d`-subsets are set to `∞`.
    pub fn new(d: usize, n: usize, values: BTreeMap<IndexSet, TropScalar>) -> Result<Self> {
        if n > 64 {
            return Err(Error::TooLarge);
        }
        if d > n {
            return Err(Error::RankCondition("rank exceeds ground set"));
        }
        let full = IndexSet::full(n);
        if let Some(bad) = values.keys().find(|k| k.len() != d || !k.is_subset(full)) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
        }
        let mut all = BTreeMap::new();
        for key in subsets_of_size(n, d) {
            all.insert(key, values.get(&key).cloned().unwrap_or(TropScalar::Infinity));
        }
        if all.values().all(TropScalar::is_infinite) {
            return Err(Error::AllInfinite);
        }
        Ok(PluckerVector { d, n, values: all })
    }

    /// Builds a vector from values listed in lexicographic order of `d`-subsets.
    pub fn from_lex_values(d: usize, n: usize, vals: Vec<TropScalar>) -> Result<Self> {
        let keys = subsets_of_size(n, d);
        if keys.len() != vals.len() {
            return Err(Error::DimensionMismatch { expected: keys.len(), found: vals.len() });
        }
        Self::new(d, n, keys.into_iter().zip(vals).collect())
    }

    /// The rank-0 vector with the single entry `p_∅ = 0`.
    pub fn rank_zero(n: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(IndexSet::EMPTY, TropScalar::zero());
        PluckerVector { d: 0, n, values }
    }

    /// The rank-1 vector `q_j = v_j`.
    pub fn from_vector(v: &TropVector) -> Result<Self> {
        let values = (0..v.len()).map(|j| (IndexSet::singleton(j), v.get(j).clone())).collect();
        Self::new(1, v.len(), values)
    }

    /// Row `i` of `A` as a rank-1 vector.
    pub fn from_row(a: &TropMatrix, i: usize) -> Result<Self> {
        Self::from_vector(&TropVector::new(a.row(i).to_vec()))
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// `p_J`, which is `∞` for sets of the wrong size.
    pub fn get(&self, key: IndexSet) -> &TropScalar {
        self.values.get(&key).unwrap_or(&INFINITY)
    }

    /// All `(J, p_J)` in lexicographic order of `J`.
    pub fn iter(&self) -> impl Iterator<Item = (IndexSet, &TropScalar)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    /// `d`-subsets with finite value.
    pub fn support(&self) -> Vec<IndexSet> {
        self.iter().filter(|(_, v)| v.is_finite()).map(|(k, _)| k).collect()
    }

    /// Subtracts the value at the lexicographically least finite coordinate.
    pub fn normalized(&self) -> PluckerVector {
        let base = self.values.values().find_map(|v| v.finite()).cloned().unwrap_or_else(Rational::zero);
        self.shifted(&-base)
    }

    /// Adds `c` to every finite coordinate.
    pub fn shifted(&self, c: &Rational) -> PluckerVector {
        let values = self.values.iter().map(|(k, v)| (*k, v.shifted(c))).collect();
        PluckerVector { d: self.d, n: self.n, values }
    }
}

impl PartialEq for PluckerVector {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n && self.normalized().values == other.normalized().values
    }
}

impl Eq for PluckerVector {}

impl fmt::Debug for PluckerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PluckerVector(d={}, n={}, {{", self.d, self.n)?;
        for (k, (key, v)) in self.values.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{key}: {v}")?;
        }
        f.write_str("})")
    }
}

/// `p_J` = tropical maximal minor of `A` on columns `J`.
pub fn stiefel_map(a: &TropMatrix) -> Result<PluckerVector> {
    let (d, n) = (a.rows(), a.cols());
    if d > n {
        return Err(Error::NoMatchingInSupport);
    }
    let mut values = BTreeMap::new();
    for cols in subsets_of_size(n, d) {
        values.insert(cols, min_matchings(a, cols)?.0);
    }
    PluckerVector::new(d, n, values).map_err(|e| match e {
        Error::AllInfinite => Error::NoMatchingInSupport,
        e => e,
    })
}

/// Whether `values` has a minimum that is `∞` or attained at least twice.
pub(crate) fn min_attained_twice(values: impl Iterator<Item = TropScalar>) -> bool {
    let mut best: Option<TropScalar> = None;
    let mut count = 0;
    for v in values {
        match &best {
            Some(b) if v > *b => {}
            Some(b) if v == *b => count += 1,
            _ => {
                best = Some(v);
                count = 1;
            }
        }
    }
    match best {
        None => true,
        Some(b) => b.is_infinite() || count >= 2,
    }
}

/// The three-term relations: for every `|S| = d − 1` and `|T| = d + 1`,
/// `min_{i ∈ T∖S} (p_{S∪i} + p_{T∖i})` is `∞` or attained at least twice.
pub fn check_plucker(p: &PluckerVector) -> bool {
    let (d, n) = (p.d, p.n);
    if d == 0 || d == n {
        return true;
    }
    let small = subsets_of_size(n, d - 1);
    let large = subsets_of_size(n, d + 1);
    small.iter().all(|&s| {
        large.iter().all(|&t| {
            let terms = t.difference(s).iter().map(|i| p.get(s.with(i)) + p.get(t.without(i)));
            min_attained_twice(terms)
        })
    })
}

/// `p*_S = p_{[n]∖S}`.
pub fn dual(p: &PluckerVector) -> PluckerVector {
    let full = IndexSet::full(p.n);
    let values = p.values.iter().map(|(k, v)| (full.difference(*k), v.clone())).collect();
    PluckerVector { d: p.n - p.d, n: p.n, values }
}

/// `r_T = min_{R ∩ S = T} p_R + q_S`, of rank `d + e − n`.
pub fn stable_intersection(p: &PluckerVector, q: &PluckerVector) -> Result<PluckerVector> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n });
    }
    let n = p.n;
    if p.d + q.d < n {
        return Err(Error::RankCondition("stable intersection needs d + e ≥ n"));
    }
    let mut values: BTreeMap<IndexSet, TropScalar> = BTreeMap::new();
    for (r, pv) in p.iter().filter(|(_, v)| v.is_finite()) {
        for (s, qv) in q.iter().filter(|(_, v)| v.is_finite()) {
            if r.union(s) != IndexSet::full(n) {
                continue;
            }
            let slot = values.entry(r.intersection(s)).or_insert(TropScalar::Infinity);
            *slot = slot.oplus(&(pv + qv));
        }
    }
    PluckerVector::new(p.d + q.d - n, n, values)
}

/// `r_T = min_{R ∪ S = T} p_R + q_S`, of rank `d + e`.
pub fn stable_union(p: &PluckerVector, q: &PluckerVector) -> Result<PluckerVector> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch { expected: p.n, found: q.n });
    }
    let n = p.n;
    if p.d + q.d > n {
        return Err(Error::RankCondition("stable union needs d + e ≤ n"));
    }
    let mut values: BTreeMap<IndexSet, TropScalar> = BTreeMap::new();
    for (r, pv) in p.iter().filter(|(_, v)| v.is_finite()) {
        for (s, qv) in q.iter().filter(|(_, v)| v.is_finite()) {
            if !r.intersection(s).is_empty() {
                continue;
            }
            let slot = values.entry(r.union(s)).or_insert(TropScalar::Infinity);
            *slot = slot.oplus(&(pv + qv));
        }
    }
    PluckerVector::new(p.d + q.d, n, values)
}

/// The matroid whose bases are the `J` with `p_J` finite.
pub fn underlying_matroid(p: &PluckerVector) -> Matroid {
    Matroid::from_bases(p.n, p.d, p.support())
}

/// The cocircuit `c_j = p_{S∪j}` (and `∞` on `S`) for a `(d − 1)`-subset `S`.
pub fn cocircuit(p: &PluckerVector, s: IndexSet) -> Result<TropVector> {
    if p.d == 0 || s.len() != p.d - 1 {
        return Err(Error::DimensionMismatch { expected: p.d.saturating_sub(1), found: s.len() });
    }
    let c: Vec<TropScalar> =
        (0..p.n).map(|j| if s.contains(j) { TropScalar::Infinity } else { p.get(s.with(j)).clone() }).collect();
    if c.iter().all(TropScalar::is_infinite) {
        return Err(Error::AllInfinite);
    }
    Ok(TropVector::new(c))
}

/// Row `i` is the cocircuit for `[n] ∖ J_i(Σ)`.
///
/// When `p` is the Stiefel image of a matrix supported on `Σ`, this returns
/// that matrix up to one additive constant per row.
pub fn recover_matrix(p: &PluckerVector, sigma: &BipartiteGraph) -> Result<TropMatrix> {
    if sigma.left_size() != p.d || sigma.right_size() != p.n || !is_support_set(sigma) {
        return Err(Error::NotSupportSet);
    }
    if p.values.values().any(TropScalar::is_infinite) {
        return Err(Error::NotUniform);
    }
    let full = IndexSet::full(p.n);
    let mut rows = Vec::with_capacity(p.d);
    for i in 0..p.d {
        rows.push(cocircuit(p, full.difference(sigma.row(i)))?.into_entries());
    }
    TropMatrix::from_rows(rows)
}
