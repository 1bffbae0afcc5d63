//! The min-plus semiring over exact rationals.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;
use core::str::FromStr;

use num_traits::Zero;

use crate::bipartite::BipartiteGraph;
use crate::{Error, IndexSet, Rational, Result};

/// An element of `ℝ ∪ {∞}`.
///
/// The derived order puts every finite value below `Infinity`, so `min` is
/// tropical addition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TropScalar {
    Finite(Rational),
    Infinity,
}

impl TropScalar {
    pub fn zero() -> Self {
        TropScalar::Finite(Rational::zero())
    }

    pub fn int(v: i64) -> Self {
        TropScalar::Finite(crate::rat(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TropScalar::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropScalar::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropScalar::Finite(v) => Some(v),
            TropScalar::Infinity => None,
        }
    }

    /// Tropical addition.
    pub fn oplus(&self, other: &Self) -> Self {
        core::cmp::min(self, other).clone()
    }

    /// Shifts a finite value by `c`; `∞` is unchanged.
    pub fn shifted(&self, c: &Rational) -> Self {
        match self {
            TropScalar::Finite(v) => TropScalar::Finite(v + c),
            TropScalar::Infinity => TropScalar::Infinity,
        }
    }
}

impl From<Rational> for TropScalar {
    fn from(v: Rational) -> Self {
        TropScalar::Finite(v)
    }
}

/// Tropical multiplication: ordinary addition with `∞` absorbing.
impl Add for &TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: &TropScalar) -> TropScalar {
        match (self, rhs) {
            (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
            _ => TropScalar::Infinity,
        }
    }
}

impl Add for TropScalar {
    type Output = TropScalar;

    fn add(self, rhs: TropScalar) -> TropScalar {
        &self + &rhs
    }
}

impl fmt::Display for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::Finite(v) => write!(f, "{v}"),
            TropScalar::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse tropical scalar from {0:?}")]
pub struct ParseScalarError(pub String);

/// Accepts integers, `p/q` and `inf`.
impl FromStr for TropScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let t = s.trim();
        if t == "inf" {
            return Ok(TropScalar::Infinity);
        }
        t.parse::<Rational>().map(TropScalar::Finite).map_err(|_| ParseScalarError(String::from(s)))
    }
}

/// Points of `ℝ∞^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TropVector(Vec<TropScalar>);

impl TropVector {
    pub fn new(entries: Vec<TropScalar>) -> Self {
        TropVector(entries)
    }

    pub fn from_rationals(entries: Vec<Rational>) -> Self {
        TropVector(entries.into_iter().map(TropScalar::Finite).collect())
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        TropVector(entries.iter().map(|&v| TropScalar::int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<TropScalar> {
        self.0
    }

    pub fn get(&self, i: usize) -> &TropScalar {
        &self.0[i]
    }

    pub fn support(&self) -> IndexSet {
        self.0.iter().enumerate().filter(|(_, v)| v.is_finite()).map(|(i, _)| i).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(TropScalar::is_finite)
    }

    /// The finite coordinates, or the index of the first infinite one.
    pub fn to_finite(&self) -> Result<Vec<Rational>> {
        self.0.iter().enumerate().map(|(i, v)| v.finite().cloned().ok_or(Error::NonFinite(i))).collect()
    }

    /// Adds `c` to every finite coordinate.
    pub fn shifted(&self, c: &Rational) -> Self {
        TropVector(self.0.iter().map(|v| v.shifted(c)).collect())
    }

    /// Canonical representative in tropical projective space: the first finite
    /// coordinate is moved to zero.
    pub fn normalized(&self) -> Self {
        match self.0.iter().find_map(TropScalar::finite) {
            Some(first) => self.shifted(&-first.clone()),
            None => self.clone(),
        }
    }

    /// Equality in tropical projective space.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.normalized() == other.normalized()
    }
}

impl fmt::Display for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A `d × n` matrix over `ℝ∞`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TropMatrix {
    d: usize,
    n: usize,
    entries: Vec<TropScalar>,
}

impl TropMatrix {
    /// Semiring-level constructor: only the shape is validated.
    pub fn new(d: usize, n: usize, entries: Vec<TropScalar>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::EmptyShape);
        }
        if d > 64 || n > 64 {
            return Err(Error::TooLarge);
        }
        if entries.len() != d * n {
            return Err(Error::DimensionMismatch { expected: d * n, found: entries.len() });
        }
        Ok(TropMatrix { d, n, entries })
    }

    /// Constructor for arrangement and linear-space work: additionally rejects
    /// columns whose entries are all infinite.
    pub fn new_checked(d: usize, n: usize, entries: Vec<TropScalar>) -> Result<Self> {
        let m = Self::new(d, n, entries)?;
        m.require_no_empty_column()?;
        Ok(m)
    }

    pub fn from_rows(rows: Vec<Vec<TropScalar>>) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(d * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Self::new(d, n, entries)
    }

    /// Parses rows of scalar literals (`"3"`, `"-1/2"`, `"inf"`).
    ///
    /// # Panics
    /// Panics on a malformed literal; intended for fixtures.
    pub fn from_strs(rows: &[&[&str]]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|s| s.parse().expect("bad scalar literal")).collect()).collect(),
        )
    }

    /// Integer rows with `None` for `∞`.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Result<Self> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|v| v.map_or(TropScalar::Infinity, TropScalar::int)).collect()).collect(),
        )
    }

    pub fn zero(d: usize, n: usize) -> Result<Self> {
        Self::new(d, n, alloc::vec![TropScalar::zero(); d * n])
    }

    pub fn rows(&self) -> usize {
        self.d
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &TropScalar {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TropScalar) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[TropScalar] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.entries
    }

    /// `supp(A)`, recomputed from the entries.
    pub fn support(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph::empty(self.d, self.n);
        for i in 0..self.d {
            for j in 0..self.n {
                if self.get(i, j).is_finite() {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    pub fn require_no_empty_column(&self) -> Result<()> {
        match (0..self.n).find(|&j| (0..self.d).all(|i| self.get(i, j).is_infinite())) {
            Some(j) => Err(Error::EmptyColumn(j)),
            None => Ok(()),
        }
    }

    pub fn require_no_empty_row(&self) -> Result<()> {
        match (0..self.d).find(|&i| self.row(i).iter().all(TropScalar::is_infinite)) {
            Some(i) => Err(Error::EmptyRow(i)),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> TropMatrix {
        let mut entries = Vec::with_capacity(self.d * self.n);
        for j in 0..self.n {
            for i in 0..self.d {
                entries.push(self.get(i, j).clone());
            }
        }
        TropMatrix { d: self.n, n: self.d, entries }
    }

    /// Submatrix on the given rows and columns, in increasing order.
    pub fn submatrix(&self, rows: IndexSet, cols: IndexSet) -> Result<TropMatrix> {
        let mut entries = Vec::new();
        for i in rows.iter() {
            for j in cols.iter() {
                entries.push(self.get(i, j).clone());
            }
        }
        TropMatrix::new(rows.len(), cols.len(), entries)
    }

    /// Adds `shift[i]` to every finite entry of row `i`.
    pub fn with_row_shifts(&self, shift: &[Rational]) -> TropMatrix {
        let mut m = self.clone();
        for i in 0..self.d {
            for j in 0..self.n {
                let v = m.get(i, j).shifted(&shift[i]);
                m.set(i, j, v);
            }
        }
        m
    }

    /// Adds `shift[j]` to every finite entry of column `j`.
    pub fn with_col_shifts(&self, shift: &[Rational]) -> TropMatrix {
        let mut m = self.clone();
        for i in 0..self.d {
            for j in 0..self.n {
                let v = m.get(i, j).shifted(&shift[j]);
                m.set(i, j, v);
            }
        }
        m
    }

    /// Whether `other` arises from `self` by adding one constant per row.
    pub fn eq_up_to_row_shifts(&self, other: &TropMatrix) -> bool {
        if self.d != other.d || self.n != other.n {
            return false;
        }
        (0..self.d).all(|i| {
            let mut shift: Option<Rational> = None;
            self.row(i).iter().zip(other.row(i)).all(|(a, b)| match (a, b) {
                (TropScalar::Infinity, TropScalar::Infinity) => true,
                (TropScalar::Finite(a), TropScalar::Finite(b)) => {
                    let s = b - a;
                    match &shift {
                        Some(t) => *t == s,
                        None => {
                            shift = Some(s);
                            true
                        }
                    }
                }
                _ => false,
            })
        })
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// Tropical right multiplication `x ⊙ A`: `(x ⊙ A)_j = min_i (x_i + a_ij)`.
pub fn vec_mat_mul(x: &TropVector, a: &TropMatrix) -> Result<TropVector> {
    if x.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: x.len() });
    }
    let out = (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| x.get(i) + a.get(i, j)).min().unwrap_or(TropScalar::Infinity))
        .collect();
    Ok(TropVector::new(out))
}

/// Residuation of `y` through `A`: `x_i = max_{j ∈ J_i} (y_j − a_ij)`.
///
/// This is the largest `x` with `x ⊙ A ≥ y`... in the sense that `x ⊙ A`
/// dominates `y`; when `y` lies in the image of `⊙A` it is the unique preimage
/// covering every row.
pub fn residuation(y: &TropVector, a: &TropMatrix) -> Result<TropVector> {
    if y.len() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: y.len() });
    }
    let y = y.to_finite()?;
    let mut out = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let best = a
            .row(i)
            .iter()
            .zip(&y)
            .filter_map(|(aij, yj)| aij.finite().map(|v| yj - v))
            .max()
            .ok_or(Error::EmptyRow(i))?;
        out.push(TropScalar::Finite(best));
    }
    Ok(TropVector::new(out))
}

/// Componentwise `u ≥ v`.
pub fn dominates(u: &TropVector, v: &TropVector) -> bool {
    u.len() == v.len() && u.entries().iter().zip(v.entries()).all(|(a, b)| a.cmp(b) != Ordering::Less)
}
