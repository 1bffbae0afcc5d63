//! Stiefel tropical linear spaces: membership, decomposition into images of
//! arrangement cells, and the bounded part.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arrangement::{covector_rows, enumerate_covectors, in_b, in_k, ArrangementComplex, Covector};
use crate::bipartite::{colwise_dragon_condition, hall_surplus_check};
use crate::geom::{strict_feasible, LinearSystem, Polyhedron, Row};
use crate::plucker::{min_attained_twice, PluckerVector};
use crate::subdivision::{require_matching, select_matroid_finite};
use crate::trop::{vec_mat_mul, TropMatrix, TropVector};
use crate::{subsets_of_size, Error, IndexSet, Rational, Result};

/// For every `(d+1)`-subset `J`, `min_{j∈J} (p_{J∖j} + y_j)` is `∞` or
/// attained at least twice.
///
/// # Panics
/// Panics if `y` does not have `n` entries.
pub fn contains(p: &PluckerVector, y: &TropVector) -> bool {
    assert_eq!(y.len(), p.ground_size(), "point has the wrong length");
    subsets_of_size(p.ground_size(), p.rank() + 1)
        .into_iter()
        .all(|set| min_attained_twice(set.iter().map(|j| p.get(set.without(j)) + y.get(j))))
}

/// The selected matroid `M_y` is loopless.
pub fn contains_via_matroid(p: &PluckerVector, y: &TropVector) -> Result<bool> {
    if y.len() != p.ground_size() {
        return Err(Error::DimensionMismatch { expected: p.ground_size(), found: y.len() });
    }
    let y = y.to_finite()?;
    Ok(select_matroid_finite(p, &y).matroid.loops().is_empty())
}

/// Whether `y − ε e_k` lies in `L(p)` for all small enough `ε > 0`, decided
/// symbolically with values `a + bε` compared lexicographically.
pub fn contains_perturbed(p: &PluckerVector, y: &[Rational], k: usize) -> bool {
    let (d, n) = (p.rank(), p.ground_size());
    subsets_of_size(n, d + 1).into_iter().all(|set| {
        let terms: Vec<(Rational, i64)> = set
            .iter()
            .filter_map(|j| p.get(set.without(j)).finite().map(|v| (v + &y[j], -i64::from(j == k))))
            .collect();
        match terms.iter().min() {
            None => true,
            Some(m) => terms.iter().filter(|t| *t == m).count() >= 2,
        }
    })
}

fn require_uniform(p: &PluckerVector) -> Result<()> {
    if p.iter().any(|(_, v)| v.is_infinite()) {
        return Err(Error::NotUniform);
    }
    Ok(())
}

/// `y` lies in the bounded part of `L(p)`: it is in `L(p)` and `M_y` has no
/// coloops.
pub fn bounded_membership(p: &PluckerVector, y: &TropVector) -> Result<bool> {
    require_uniform(p)?;
    if y.len() != p.ground_size() {
        return Err(Error::DimensionMismatch { expected: p.ground_size(), found: y.len() });
    }
    let y = y.to_finite()?;
    let m = select_matroid_finite(p, &y).matroid;
    Ok(m.loops().is_empty() && m.coloops().is_empty())
}

/// The same test read off perturbations: `y ∈ L(p)` and `y − ε e_k ∉ L(p)`
/// for every `k`.
pub fn bounded_membership_by_perturbation(p: &PluckerVector, y: &TropVector) -> Result<bool> {
    require_uniform(p)?;
    let yf = y.to_finite()?;
    Ok(contains(p, y) && (0..p.ground_size()).all(|k| !contains_perturbed(p, &yf, k)))
}

/// A witness for `y ∈ F ⊙ A + ℝ_{≥0}{e_j : j ∈ J}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub covector: Covector,
    pub x: Vec<Rational>,
    pub cols: IndexSet,
    /// `y − x ⊙ A`, zero off `cols` and positive on `cols`.
    pub slack: Vec<Rational>,
}

fn unit(d: usize, i: usize, s: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::from_integer(s.into());
    v
}

/// `{x : tc(x) = τ}` together with `x_i + a_ij (=|<) y_j` for a representative
/// `i ∈ I_j(τ)`; `strict` selects which columns carry positive slack. With
/// `strict = None` every column only gets `x_i + a_ij ≤ y_j`.
fn decomposition_system(a: &TropMatrix, tau: &Covector, y: &[Rational], strict: Option<IndexSet>) -> LinearSystem {
    let d = a.rows();
    let (eqs, ineqs) = covector_rows(a, tau);
    let mut sys = LinearSystem { dim: d, eqs, weak: Vec::new(), strict: ineqs };
    for (j, yj) in y.iter().enumerate() {
        let i = tau.column(j).first().expect("covector meets every column");
        let aij = a.get(i, j).finite().expect("covector edge is supported");
        // −x_i ≥ a_ij − y_j
        let row = Row::new(unit(d, i, -1), aij - yj);
        match strict {
            None => sys.weak.push(row),
            Some(cols) if cols.contains(j) => sys.strict.push(row),
            Some(_) => sys.eqs.push(row),
        }
    }
    sys
}

/// All subsets of `[n]` in lexicographic order of their element lists.
fn subsets_lex(n: usize) -> Vec<IndexSet> {
    let mut all: Vec<IndexSet> = (0u64..1 << n).map(IndexSet::from_bits).collect();
    all.sort();
    all
}

/// Searches `(F, J)` with `F ∈ TC(A)` covering every row and `J` satisfying
/// the column dragon condition, in lexicographic order, for
/// `y ∈ relint(F) ⊙ A + ℝ_{>0}{e_j : j ∈ J}`.
pub fn decompose(a: &TropMatrix, y: &TropVector, budget: u64) -> Result<Option<DecompositionCertificate>> {
    require_matching(a)?;
    decompose_in(&enumerate_covectors(a, budget)?, y)
}

/// As [`decompose`], reusing a computed covector complex.
pub fn decompose_in(tc: &ArrangementComplex, y: &TropVector) -> Result<Option<DecompositionCertificate>> {
    let a = tc.matrix();
    if y.len() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.cols(), found: y.len() });
    }
    let y = y.to_finite()?;
    let families = subsets_lex(a.cols());
    for cell in tc.cells().iter().filter(|c| in_b(&c.covector)) {
        let tau = &cell.covector;
        if strict_feasible(&decomposition_system(a, tau, &y, None)).is_none() {
            continue;
        }
        for &cols in families.iter().filter(|&&c| colwise_dragon_condition(tau, c)) {
            if let Some(x) = strict_feasible(&decomposition_system(a, tau, &y, Some(cols))) {
                let image = vec_mat_mul(&TropVector::from_rationals(x.clone()), a)?.to_finite()?;
                let slack = y.iter().zip(&image).map(|(u, v)| u - v).collect();
                return Ok(Some(DecompositionCertificate { covector: tau.clone(), x, cols, slack }));
            }
        }
    }
    Ok(None)
}

/// Lifted description `(y, x, s)` of `y_j = x_i + a_ij + s_j` over the closed
/// cell of `τ`, with `s_j ≥ 0` on `cols` and `s_j = 0` elsewhere, projected to
/// `y`. No gauge is fixed, so the result contains the line `ℝ𝟙`.
pub fn decomposition_cone(a: &TropMatrix, tau: &Covector, cols: IndexSet) -> Polyhedron {
    let (d, n) = (a.rows(), a.cols());
    let slack: Vec<usize> = cols.iter().collect();
    let dim = n + d + slack.len();
    let widen = |r: &Row| {
        let mut v = vec![Rational::zero(); n];
        v.extend(r.a.iter().cloned());
        v.resize(dim, Rational::zero());
        Row::new(v, r.b.clone())
    };
    let (eqs, ineqs) = covector_rows(a, tau);
    let mut p = Polyhedron { dim, eqs: eqs.iter().map(widen).collect(), ineqs: ineqs.iter().map(widen).collect() };
    for j in 0..n {
        let i = tau.column(j).first().expect("covector meets every column");
        let mut row = vec![Rational::zero(); dim];
        row[j] = Rational::one();
        row[n + i] = -Rational::one();
        if let Some(pos) = slack.iter().position(|&c| c == j) {
            row[n + d + pos] = -Rational::one();
            let mut s = vec![Rational::zero(); dim];
            s[n + d + pos] = Rational::one();
            p.add_ge(s, Rational::zero());
        }
        p.add_eq(row, a.get(i, j).finite().expect("covector edge is supported").clone());
    }
    p.project(&(0..n).collect::<Vec<_>>())
}

/// A cell of `K(A)` with its image under `⊙A`.
#[derive(Debug, Clone)]
pub struct BoundedCell {
    pub covector: Covector,
    pub dim: usize,
    /// Image of the closed cell (taken in the chart `x_1 = 0`).
    pub image: Polyhedron,
    /// Image of the cell's relative-interior point.
    pub image_point: Vec<Rational>,
}

/// `{x ⊙ A : x in the closed cell of τ, x_1 = 0}`, as a polyhedron in `ℝ^n`.
pub fn cell_image(a: &TropMatrix, tau: &Covector) -> Polyhedron {
    let (d, n) = (a.rows(), a.cols());
    let dim = n + d;
    let widen = |r: &Row| {
        let mut v = vec![Rational::zero(); n];
        v.extend(r.a.iter().cloned());
        Row::new(v, r.b.clone())
    };
    let (eqs, ineqs) = covector_rows(a, tau);
    let mut lifted = Polyhedron { dim, eqs: eqs.iter().map(widen).collect(), ineqs: ineqs.iter().map(widen).collect() };
    lifted.add_eq(unit(dim, n, 1), Rational::zero());
    for j in 0..n {
        let i = tau.column(j).first().expect("covector meets every column");
        let mut row = unit(dim, j, 1);
        row[n + i] = -Rational::one();
        lifted.add_eq(row, a.get(i, j).finite().expect("covector edge is supported").clone());
    }
    lifted.project(&(0..n).collect::<Vec<_>>())
}

/// The cells of `K(A)` with their images, which together form the bounded
/// part of `L(A)`.
pub fn bounded_complex(a: &TropMatrix, budget: u64) -> Result<Vec<BoundedCell>> {
    if !hall_surplus_check(&a.support()) {
        return Err(Error::Precondition("the support must contain a support set"));
    }
    bounded_complex_in(&enumerate_covectors(a, budget)?)
}

pub fn bounded_complex_in(tc: &ArrangementComplex) -> Result<Vec<BoundedCell>> {
    let a = tc.matrix();
    let mut out = Vec::new();
    for cell in tc.cells().iter().filter(|c| in_k(&c.covector)) {
        let image_point = vec_mat_mul(&TropVector::from_rationals(cell.relint.clone()), a)?.to_finite()?;
        out.push(BoundedCell {
            covector: cell.covector.clone(),
            dim: cell.dim,
            image: cell_image(a, &cell.covector),
            image_point,
        });
    }
    Ok(out)
}

/// For `d = 2`: the bounded part of `L(A)` is a point or a path, i.e. every
/// vertex of `K(A)` lies on at most two bounded edges.
pub fn caterpillar_check(a: &TropMatrix, budget: u64) -> Result<bool> {
    if a.rows() != 2 {
        return Err(Error::Precondition("the caterpillar check needs two rows"));
    }
    require_matching(a)?;
    let tc = enumerate_covectors(a, budget)?;
    let k: Vec<&Covector> = tc.cells().iter().filter(|c| in_k(&c.covector)).map(|c| &c.covector).collect();
    let dim = |t: &Covector| tc.get(t).expect("listed").dim;
    let vertices = k.iter().filter(|t| dim(t) == 0);
    let edges: Vec<&Covector> = k.iter().copied().filter(|t| dim(t) == 1).collect();
    Ok(vertices.map(|v| edges.iter().filter(|e| e.is_subgraph_of(v)).count()).all(|deg| deg <= 2))
}

/// `x ⊙ A` for every `x`, as a convenience for sampling the image.
pub fn image_point(a: &TropMatrix, x: &[Rational]) -> Result<Vec<Rational>> {
    vec_mat_mul(&TropVector::from_rationals(x.to_vec()), a)?.to_finite()
}
