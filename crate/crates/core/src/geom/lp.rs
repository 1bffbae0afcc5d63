//! Dense two-phase simplex over exact rationals with Bland's rule.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::Row;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

/// A linear program `max c·x` subject to `a·x = b` and `a·x ≥ b` rows.
///
/// Variables are free unless flagged nonnegative.
#[derive(Debug, Clone)]
pub struct Lp {
    pub dim: usize,
    pub nonneg: Vec<bool>,
    pub eqs: Vec<Row>,
    pub ges: Vec<Row>,
    pub objective: Vec<Rational>,
}

impl Lp {
    pub fn new(dim: usize) -> Self {
        Lp { dim, nonneg: vec![false; dim], eqs: Vec::new(), ges: Vec::new(), objective: vec![Rational::zero(); dim] }
    }

    pub fn solve(&self) -> LpOutcome {
        // column layout: one or two columns per variable, then slacks, then artificials
        let mut var_cols = Vec::with_capacity(self.dim);
        let mut ncols = 0;
        for &nn in &self.nonneg {
            var_cols.push(ncols);
            ncols += if nn { 1 } else { 2 };
        }
        let nslack = self.ges.len();
        let slack0 = ncols;
        ncols += nslack;
        let nrows = self.eqs.len() + self.ges.len();
        let art0 = ncols;
        ncols += nrows;

        let mut rows = Vec::with_capacity(nrows);
        for (k, (row, is_ge)) in
            self.eqs.iter().map(|r| (r, false)).chain(self.ges.iter().map(|r| (r, true))).enumerate()
        {
            let mut t = vec![Rational::zero(); ncols + 1];
            for (v, c) in row.a.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                t[var_cols[v]] = c.clone();
                if !self.nonneg[v] {
                    t[var_cols[v] + 1] = -c.clone();
                }
            }
            if is_ge {
                t[slack0 + k - self.eqs.len()] = -Rational::one();
            }
            t[ncols] = row.b.clone();
            if row.b.is_negative() {
                for v in t.iter_mut() {
                    *v = -v.clone();
                }
            }
            t[art0 + k] = Rational::one();
            rows.push(t);
        }

        let mut tab = Tableau {
            rows,
            obj: vec![Rational::zero(); ncols + 1],
            basis: (art0..art0 + nrows).collect(),
            ncols,
            blocked: vec![false; ncols],
        };
        // phase one: maximize the negated sum of artificials
        for j in 0..art0 {
            tab.obj[j] = -tab.rows.iter().fold(Rational::zero(), |acc, r| acc + &r[j]);
        }
        tab.obj[ncols] = -tab.rows.iter().fold(Rational::zero(), |acc, r| acc + &r[ncols]);
        tab.optimize();
        if tab.obj[ncols].is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis, dropping redundant rows
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= art0 {
                match (0..art0).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(c) => tab.pivot(r, c),
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for b in tab.blocked.iter_mut().skip(art0) {
            *b = true;
        }

        // phase two
        let mut cost = vec![Rational::zero(); ncols];
        for (v, c) in self.objective.iter().enumerate() {
            cost[var_cols[v]] = c.clone();
            if !self.nonneg[v] {
                cost[var_cols[v] + 1] = -c.clone();
            }
        }
        for j in 0..=ncols {
            let mut z = tab
                .rows
                .iter()
                .zip(&tab.basis)
                .filter(|(row, &b)| !cost[b].is_zero() && !row[j].is_zero())
                .fold(Rational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[j]);
            if j < ncols {
                z -= &cost[j];
            }
            tab.obj[j] = z;
        }
        if !tab.optimize() {
            return LpOutcome::Unbounded;
        }

        let mut colval = vec![Rational::zero(); ncols];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            colval[b] = row[ncols].clone();
        }
        let point = (0..self.dim)
            .map(|v| {
                let c = var_cols[v];
                if self.nonneg[v] {
                    colval[c].clone()
                } else {
                    &colval[c] - &colval[c + 1]
                }
            })
            .collect();
        LpOutcome::Optimal { value: tab.obj[ncols].clone(), point }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `z_j − c_j`; the last entry holds the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    blocked: Vec<bool>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        if !piv.is_one() {
            let inv = piv.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let prow = core::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();
        for row in self.rows.iter_mut().chain(core::iter::once(&mut self.obj)) {
            if row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &k in &nz {
                row[k] -= &f * &prow[k];
            }
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs simplex iterations; returns `false` when the objective is unbounded.
    fn optimize(&mut self) -> bool {
        loop {
            let Some(c) = (0..self.ncols).find(|&j| !self.blocked[j] && self.obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}
