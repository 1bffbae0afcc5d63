use alloc::vec::Vec;

use num_traits::Zero;

use crate::Rational;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn row_reduce(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

pub fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).filter(|(c, _)| !c.is_zero()).fold(Rational::zero(), |acc, (c, v)| acc + c * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use alloc::vec;

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(6)], vec![rat(0), rat(1), rat(1)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![rat(0), rat(0)]]), 0);
    }

    #[test]
    fn rref_pivots() {
        let mut rows = vec![vec![rat(0), rat(2), rat(4)], vec![rat(1), rat(1), rat(1)]];
        let piv = row_reduce(&mut rows);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[1], vec![rat(0), rat(1), rat(2)]);
        assert_eq!(rows[0], vec![rat(1), rat(0), rat(-1)]);
    }
}
