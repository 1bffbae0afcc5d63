//! Exact linear feasibility and small polyhedra.
//!
//! Rows are written `a·x ≥ b`, `a·x > b` or `a·x = b`. Systems built only from
//! differences of coordinates (the cells of hyperplane arrangements) are
//! decided by a shortest-path routine; everything else goes through an exact
//! simplex.

mod diff;
pub mod linalg;
pub mod lp;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};
use lp::{Lp, LpOutcome};

/// The affine form `a·x − b`, read against zero by the containing structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Row {
    pub fn new(a: Vec<Rational>, b: Rational) -> Self {
        Row { a, b }
    }

    /// `a·x − b`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        linalg::dot(&self.a, x) - &self.b
    }

    pub fn negated(&self) -> Row {
        Row { a: self.a.iter().map(|v| -v.clone()).collect(), b: -self.b.clone() }
    }

    fn is_trivial(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Scales so that the first nonzero coefficient has absolute value one.
    fn normalized(&self) -> Row {
        match self.a.iter().find(|v| !v.is_zero()) {
            Some(lead) => {
                let s = lead.abs().recip();
                Row { a: self.a.iter().map(|v| v * &s).collect(), b: &self.b * &s }
            }
            None => self.clone(),
        }
    }
}

/// Equalities, weak and strict inequalities in `dim` unknowns.
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    pub dim: usize,
    pub eqs: Vec<Row>,
    pub weak: Vec<Row>,
    pub strict: Vec<Row>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, ..Default::default() }
    }

    pub fn add_eq(&mut self, a: Vec<Rational>, b: Rational) {
        self.eqs.push(Row::new(a, b));
    }

    pub fn add_ge(&mut self, a: Vec<Rational>, b: Rational) {
        self.weak.push(Row::new(a, b));
    }

    pub fn add_gt(&mut self, a: Vec<Rational>, b: Rational) {
        self.strict.push(Row::new(a, b));
    }

    /// Exact check of a candidate point, strict rows strictly.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.eqs.iter().all(|r| r.eval(x).is_zero())
            && self.weak.iter().all(|r| !r.eval(x).is_negative())
            && self.strict.iter().all(|r| r.eval(x).is_positive())
    }
}

/// Returns a point satisfying every row of `sys` (strict rows strictly), or
/// `None` if there is none.
///
/// Strict rows are relaxed to `a·x − ε ≥ b` with `ε ≤ 1`, and `ε` is
/// maximized; the system is feasible iff the optimum is positive.
pub fn strict_feasible(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let found = match diff::solve(sys) {
        Some(answer) => answer,
        None => strict_feasible_lp(sys),
    };
    debug_assert!(found.as_ref().is_none_or(|x| sys.is_satisfied_by(x)));
    found
}

fn strict_feasible_lp(sys: &LinearSystem) -> Option<Vec<Rational>> {
    let dim = sys.dim;
    let widen = |r: &Row, eps: Rational| {
        let mut a = r.a.clone();
        a.push(eps);
        Row::new(a, r.b.clone())
    };
    let mut lp = Lp::new(dim + 1);
    lp.eqs = sys.eqs.iter().map(|r| widen(r, Rational::zero())).collect();
    lp.ges = sys.weak.iter().map(|r| widen(r, Rational::zero())).collect();
    if !sys.strict.is_empty() {
        lp.ges.extend(sys.strict.iter().map(|r| widen(r, -Rational::one())));
        let mut cap = vec![Rational::zero(); dim + 1];
        cap[dim] = -Rational::one();
        lp.ges.push(Row::new(cap, -Rational::one()));
        lp.objective[dim] = Rational::one();
    }
    match lp.solve() {
        LpOutcome::Optimal { value, mut point } => {
            if !sys.strict.is_empty() && !value.is_positive() {
                return None;
            }
            point.truncate(dim);
            Some(point)
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("bounded objective"),
    }
}

/// A face of a polyhedron, identified by the set of inequalities that hold
/// with equality on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub tight: Vec<usize>,
    pub dim: i64,
    pub relint: Vec<Rational>,
}

/// `{x : eqs, ineqs}` with every inequality read as `a·x ≥ b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Polyhedron {
    pub dim: usize,
    pub eqs: Vec<Row>,
    pub ineqs: Vec<Row>,
}

impl Polyhedron {
    /// The whole space.
    pub fn new(dim: usize) -> Self {
        Polyhedron { dim, ..Default::default() }
    }

    pub fn add_eq(&mut self, a: Vec<Rational>, b: Rational) {
        debug_assert_eq!(a.len(), self.dim);
        self.eqs.push(Row::new(a, b));
    }

    pub fn add_ge(&mut self, a: Vec<Rational>, b: Rational) {
        debug_assert_eq!(a.len(), self.dim);
        self.ineqs.push(Row::new(a, b));
    }

    pub fn add_le(&mut self, a: Vec<Rational>, b: Rational) {
        self.add_ge(a, b);
        let r = self.ineqs.pop().expect("just pushed").negated();
        self.ineqs.push(r);
    }

    pub fn system(&self) -> LinearSystem {
        LinearSystem { dim: self.dim, eqs: self.eqs.clone(), weak: self.ineqs.clone(), strict: Vec::new() }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.system().is_satisfied_by(x)
    }

    pub fn is_empty(&self) -> bool {
        strict_feasible(&self.system()).is_none()
    }

    pub fn intersection(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.dim, other.dim);
        let mut p = self.clone();
        p.eqs.extend(other.eqs.iter().cloned());
        p.ineqs.extend(other.ineqs.iter().cloned());
        p
    }

    /// The face on which the listed inequalities are tight. The listed rows
    /// are added as equalities and kept as inequalities, so indices stay valid.
    pub fn with_tight(&self, tight: &[usize]) -> Polyhedron {
        let mut p = self.clone();
        p.eqs.extend(tight.iter().map(|&k| self.ineqs[k].clone()));
        p
    }

    fn is_difference_system(&self) -> bool {
        self.eqs.iter().chain(&self.ineqs).all(diff::is_difference_row)
    }

    /// Indices of inequalities that hold with equality on all of the
    /// polyhedron, or `None` if it is empty.
    pub fn implicit_equalities(&self) -> Option<Vec<usize>> {
        if self.is_difference_system() {
            let base = self.system();
            strict_feasible(&base)?;
            let implicit = (0..self.ineqs.len())
                .filter(|&k| {
                    let mut sys = base.clone();
                    let row = sys.weak.remove(k);
                    sys.strict.push(row);
                    strict_feasible(&sys).is_none()
                })
                .collect();
            return Some(implicit);
        }
        self.implicit_equalities_lp()
    }

    /// Maximizes the total capped slack `Σ t_k` over the candidates; every
    /// candidate with positive slack is not implicit. Repeats until no
    /// candidate can be made slack.
    fn implicit_equalities_lp(&self) -> Option<Vec<usize>> {
        let dim = self.dim;
        let mut candidates: Vec<usize> = (0..self.ineqs.len()).collect();
        let mut first = true;
        loop {
            let nt = candidates.len();
            let mut lp = Lp::new(dim + nt);
            for v in 0..nt {
                lp.nonneg[dim + v] = true;
                lp.objective[dim + v] = Rational::one();
            }
            let widen = |r: &Row| {
                let mut a = r.a.clone();
                a.resize(dim + nt, Rational::zero());
                a
            };
            lp.eqs = self.eqs.iter().map(|r| Row::new(widen(r), r.b.clone())).collect();
            for (k, r) in self.ineqs.iter().enumerate() {
                let mut a = widen(r);
                if let Ok(pos) = candidates.binary_search(&k) {
                    a[dim + pos] = -Rational::one();
                    let mut cap = vec![Rational::zero(); dim + nt];
                    cap[dim + pos] = -Rational::one();
                    lp.ges.push(Row::new(cap, -Rational::one()));
                }
                lp.ges.push(Row::new(a, r.b.clone()));
            }
            match lp.solve() {
                LpOutcome::Infeasible => {
                    debug_assert!(first);
                    return None;
                }
                LpOutcome::Unbounded => unreachable!("capped slacks"),
                LpOutcome::Optimal { value, point } => {
                    if value.is_zero() {
                        return Some(candidates);
                    }
                    let before = candidates.len();
                    let mut pos = 0;
                    candidates.retain(|_| {
                        let keep = point[dim + pos].is_zero();
                        pos += 1;
                        keep
                    });
                    debug_assert!(candidates.len() < before);
                }
            }
            first = false;
        }
    }

    /// Dimension of the affine hull, or −1 if empty.
    pub fn affine_dimension(&self) -> i64 {
        match self.implicit_equalities() {
            None => -1,
            Some(imp) => self.dim_with_equalities(&imp),
        }
    }

    fn dim_with_equalities(&self, implicit: &[usize]) -> i64 {
        let rows: Vec<Vec<Rational>> =
            self.eqs.iter().map(|r| r.a.clone()).chain(implicit.iter().map(|&k| self.ineqs[k].a.clone())).collect();
        self.dim as i64 - linalg::rank(&rows) as i64
    }

    /// A point in the relative interior, or `None` if empty.
    pub fn relint_point(&self) -> Option<Vec<Rational>> {
        let implicit = self.implicit_equalities()?;
        Some(self.relint_given(&implicit))
    }

    fn relint_given(&self, implicit: &[usize]) -> Vec<Rational> {
        let mut sys = LinearSystem::new(self.dim);
        sys.eqs = self.eqs.clone();
        for (k, r) in self.ineqs.iter().enumerate() {
            if implicit.binary_search(&k).is_ok() {
                sys.eqs.push(r.clone());
            } else {
                sys.strict.push(r.clone());
            }
        }
        strict_feasible(&sys).expect("relative interior of a nonempty polyhedron")
    }

    /// All nonempty faces, starting with the polyhedron itself, each with an
    /// exact relative-interior point.
    pub fn enumerate_faces(&self, budget: u64) -> Result<Vec<Face>> {
        let Some(top) = self.implicit_equalities() else {
            return Ok(Vec::new());
        };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(top.clone());
        queue.push_back(top);
        let mut faces = Vec::new();
        while let Some(tight) = queue.pop_front() {
            if faces.len() as u64 >= budget {
                return Err(Error::BudgetExceeded { what: "face enumeration", budget });
            }
            let face =
                Face { dim: self.dim_with_equalities(&tight), relint: self.relint_given(&tight), tight: tight.clone() };
            for k in 0..self.ineqs.len() {
                if tight.binary_search(&k).is_ok() {
                    continue;
                }
                let mut t = tight.clone();
                t.push(k);
                t.sort_unstable();
                if let Some(child) = self.with_tight(&t).implicit_equalities() {
                    if seen.insert(child.clone()) {
                        queue.push_back(child);
                    }
                }
            }
            faces.push(face);
        }
        Ok(faces)
    }

    /// Vertices, or an empty list if the polyhedron has none.
    pub fn vertices(&self, budget: u64) -> Result<Vec<Vec<Rational>>> {
        let mut v: Vec<Vec<Rational>> =
            self.enumerate_faces(budget)?.into_iter().filter(|f| f.dim == 0).map(|f| f.relint).collect();
        v.sort();
        Ok(v)
    }

    /// `{x : eqs and ineqs with zero right-hand sides}`.
    pub fn recession_cone(&self) -> Polyhedron {
        let homog = |r: &Row| Row::new(r.a.clone(), Rational::zero());
        Polyhedron {
            dim: self.dim,
            eqs: self.eqs.iter().map(homog).collect(),
            ineqs: self.ineqs.iter().map(homog).collect(),
        }
    }

    /// Directions of the extreme rays of a pointed polyhedron.
    pub fn extreme_rays(&self, budget: u64) -> Result<Vec<Vec<Rational>>> {
        let mut v: Vec<Vec<Rational>> = self
            .recession_cone()
            .enumerate_faces(budget)?
            .into_iter()
            .filter(|f| f.dim == 1)
            .map(|f| f.relint)
            .collect();
        v.sort();
        Ok(v)
    }

    /// Whether every point of `other` lies in `self`.
    pub fn includes(&self, other: &Polyhedron) -> bool {
        assert_eq!(self.dim, other.dim);
        if other.is_empty() {
            return true;
        }
        let below = |r: &Row| {
            // is min a·x over `other` at least b?
            let mut lp = Lp::new(other.dim);
            lp.eqs = other.eqs.clone();
            lp.ges = other.ineqs.clone();
            lp.objective = r.a.iter().map(|v| -v.clone()).collect();
            match lp.solve() {
                LpOutcome::Optimal { value, .. } => -value >= r.b,
                _ => false,
            }
        };
        self.ineqs.iter().all(below) && self.eqs.iter().all(|r| below(r) && below(&r.negated()))
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.includes(other) && other.includes(self)
    }

    /// Drops inequalities implied by the others.
    pub fn remove_redundant(&mut self) {
        let mut k = 0;
        while k < self.ineqs.len() {
            let mut sys = self.system();
            let row = sys.weak.remove(k);
            sys.strict.push(row.negated());
            if strict_feasible(&sys).is_none() {
                self.ineqs.remove(k);
            } else {
                k += 1;
            }
        }
    }

    /// Image under the coordinate projection onto `keep` (in the given
    /// order). Equalities are used for substitution first; remaining
    /// variables are removed by Fourier–Motzkin elimination.
    pub fn project(&self, keep: &[usize]) -> Polyhedron {
        let mut eqs = self.eqs.clone();
        let mut ineqs = self.ineqs.clone();
        let mut elim: Vec<usize> = (0..self.dim).filter(|v| !keep.contains(v)).collect();

        let mut kept_eqs = Vec::new();
        while let Some(eq) = eqs.pop() {
            let Some(&v) = elim.iter().find(|&&v| !eq.a[v].is_zero()) else {
                kept_eqs.push(eq);
                continue;
            };
            let substitute = |r: &mut Row| {
                if r.a[v].is_zero() {
                    return;
                }
                let f = &r.a[v] / &eq.a[v];
                for (c, e) in r.a.iter_mut().zip(&eq.a) {
                    *c -= &f * e;
                }
                r.b -= &f * &eq.b;
            };
            eqs.iter_mut().for_each(substitute);
            ineqs.iter_mut().for_each(substitute);
            kept_eqs.iter_mut().for_each(substitute);
            elim.retain(|&u| u != v);
        }

        for &v in &elim {
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in ineqs {
                if r.a[v].is_positive() {
                    pos.push(r);
                } else if r.a[v].is_negative() {
                    neg.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &pos {
                for q in &neg {
                    let (fp, fq) = (-q.a[v].clone(), p.a[v].clone());
                    let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &fp + y * &fq).collect();
                    rest.push(Row::new(a, &p.b * &fp + &q.b * &fq));
                }
            }
            ineqs = dedupe(rest);
            let mut tmp = Polyhedron { dim: self.dim, eqs: kept_eqs.clone(), ineqs };
            tmp.remove_redundant();
            ineqs = tmp.ineqs;
        }

        let mut out = Polyhedron::new(keep.len());
        let restrict = |r: &Row| Row::new(keep.iter().map(|&v| r.a[v].clone()).collect(), r.b.clone());
        let mut empty = false;
        for r in &kept_eqs {
            if r.is_trivial() {
                empty |= !r.b.is_zero();
            } else {
                out.eqs.push(restrict(r).normalized());
            }
        }
        for r in dedupe(ineqs) {
            if r.is_trivial() {
                empty |= r.b.is_positive();
            } else {
                out.ineqs.push(restrict(&r));
            }
        }
        if empty {
            out.ineqs = vec![Row::new(vec![Rational::zero(); keep.len()], Rational::one())];
            out.eqs.clear();
        } else {
            out.remove_redundant();
        }
        out
    }
}

/// Normalizes and keeps the strongest copy of each direction.
fn dedupe(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for r in rows {
        let r = r.normalized();
        best.entry(r.a)
            .and_modify(|b| {
                if r.b > *b {
                    *b = r.b.clone();
                }
            })
            .or_insert(r.b);
    }
    best.into_iter().map(|(a, b)| Row::new(a, b)).collect()
}
