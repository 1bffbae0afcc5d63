//! Feasibility of systems whose rows only involve differences `x_u − x_v`
//! and single variables.
//!
//! Such systems are decided by shortest paths. Strictness is tracked
//! symbolically as weights `w + k·ε` compared lexicographically, and a
//! concrete `ε` is chosen only when the witness is built.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{LinearSystem, Row};
use crate::Rational;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Weight {
    value: Rational,
    eps: i64,
}

impl Weight {
    fn zero() -> Self {
        Weight { value: Rational::zero(), eps: 0 }
    }

    fn add(&self, other: &Weight) -> Weight {
        Weight { value: &self.value + &other.value, eps: self.eps + other.eps }
    }

    fn sub(&self, other: &Weight) -> Weight {
        Weight { value: &self.value - &other.value, eps: self.eps - other.eps }
    }
}

/// `x_to − x_from ≤ value + eps·ε`, node 0 being the constant zero.
struct Edge {
    from: usize,
    to: usize,
    w: Weight,
}

enum Parsed {
    Edge(usize, usize, Rational),
    Constant(Rational),
}

/// Reads `a·x ≥ b` as `x_p − x_q ≥ c` (nodes shifted by one), or as the
/// constant test `0 ≥ b`.
fn parse(row: &Row) -> Option<Parsed> {
    let nz: Vec<usize> = (0..row.a.len()).filter(|&k| !row.a[k].is_zero()).collect();
    match nz.as_slice() {
        [] => Some(Parsed::Constant(row.b.clone())),
        [u] => {
            let alpha = &row.a[*u];
            let c = &row.b / alpha.abs();
            if alpha.is_positive() {
                Some(Parsed::Edge(u + 1, 0, c))
            } else {
                Some(Parsed::Edge(0, u + 1, c))
            }
        }
        [u, v] => {
            let (alpha, beta) = (&row.a[*u], &row.a[*v]);
            if *alpha != -beta.clone() {
                return None;
            }
            let c = &row.b / alpha.abs();
            if alpha.is_positive() {
                Some(Parsed::Edge(u + 1, v + 1, c))
            } else {
                Some(Parsed::Edge(v + 1, u + 1, c))
            }
        }
        _ => None,
    }
}

pub(super) fn is_difference_row(row: &Row) -> bool {
    parse(row).is_some()
}

fn negated(row: &Row) -> Row {
    Row { a: row.a.iter().map(|v| -v.clone()).collect(), b: -row.b.clone() }
}

/// Solves the system if all of its rows are difference rows; `None` means the
/// system is not of that shape.
pub(super) fn solve(sys: &LinearSystem) -> Option<Option<Vec<Rational>>> {
    let mut edges = Vec::new();
    let mut feasible = true;
    let mut push = |row: &Row, strict: bool| -> bool {
        match parse(row) {
            None => false,
            Some(Parsed::Constant(b)) => {
                let zero = Rational::zero();
                if (strict && zero <= b) || (!strict && zero < b) {
                    feasible = false;
                }
                true
            }
            // x_p − x_q ≥ c  ⇔  x_q − x_p ≤ −c
            Some(Parsed::Edge(p, q, c)) => {
                edges.push(Edge { from: p, to: q, w: Weight { value: -c, eps: -i64::from(strict) } });
                true
            }
        }
    };
    for r in &sys.eqs {
        if !push(r, false) || !push(&negated(r), false) {
            return None;
        }
    }
    for r in &sys.weak {
        if !push(r, false) {
            return None;
        }
    }
    for r in &sys.strict {
        if !push(r, true) {
            return None;
        }
    }
    if !feasible {
        return Some(None);
    }
    let nodes = sys.dim + 1;
    let mut dist: Vec<Vec<Option<Weight>>> = vec![vec![None; nodes]; nodes];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(Weight::zero());
    }
    for e in &edges {
        let slot = &mut dist[e.from][e.to];
        if slot.as_ref().is_none_or(|w| e.w < *w) {
            *slot = Some(e.w.clone());
        }
    }
    for k in 0..nodes {
        for i in 0..nodes {
            let Some(dik) = dist[i][k].clone() else { continue };
            for j in 0..nodes {
                let Some(dkj) = &dist[k][j] else { continue };
                let cand = dik.add(dkj);
                if dist[i][j].as_ref().is_none_or(|w| cand < *w) {
                    dist[i][j] = Some(cand);
                }
            }
        }
        if (0..nodes).any(|i| dist[i][i].as_ref().is_some_and(|w| *w < Weight::zero())) {
            return Some(None);
        }
    }

    // potentials from a virtual source joined to every node by zero edges
    let pot: Vec<Weight> = (0..nodes)
        .map(|v| {
            (0..nodes)
                .filter_map(|u| dist[u][v].clone())
                .chain(core::iter::once(Weight::zero()))
                .min()
                .expect("nonempty")
        })
        .collect();
    let x: Vec<Weight> = pot.iter().map(|p| p.sub(&pot[0])).collect();

    let mut eps = Rational::one();
    for e in &edges {
        let delta = x[e.to].sub(&x[e.from]);
        if delta.value < e.w.value {
            let coeff = delta.eps - e.w.eps;
            if coeff > 0 {
                let bound = (&e.w.value - &delta.value) / Rational::from_integer(coeff.into());
                if bound < eps {
                    eps = bound;
                }
            }
        }
    }
    let point = x[1..].iter().map(|w| &w.value + &eps * Rational::from_integer(w.eps.into())).collect();
    Some(Some(point))
}
