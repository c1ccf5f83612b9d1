//! Exact Gaussian elimination.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Solves the square system `a x = b`; `None` when `a` is singular.
pub(crate) fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &p;
        }
        b[col] /= &p;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let (pivot_row, row) = if r < col {
                let (lo, hi) = a.split_at_mut(col);
                (&hi[0], &mut lo[r])
            } else {
                let (lo, hi) = a.split_at_mut(r);
                (&lo[col], &mut hi[0])
            };
            for (v, pv) in row.iter_mut().zip(pivot_row) {
                *v -= &f * pv;
            }
            let bc = b[col].clone();
            b[r] -= f * bc;
        }
    }
    Some(b)
}

/// Indices of a maximal linearly independent subset of rows, chosen greedily
/// in order.
pub(crate) fn independent_rows(a: &[Vec<Rational>]) -> Vec<usize> {
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut kept = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let mut v = row.clone();
        for (pc, e) in &echelon {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone() / &e[*pc];
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((pc, v));
            kept.push(i);
        }
    }
    kept
}

pub(crate) fn is_nonnegative(x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn small_systems() {
        let a = vec![vec![int(0), int(2)], vec![int(3), int(1)]];
        assert_eq!(solve(a, vec![int(4), int(5)]), Some(vec![int(1), int(2)]));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(solve(singular, vec![int(1), int(2)]), None);
        let rows = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(0), int(1)],
            vec![int(1), int(1), int(1)],
            vec![ratio(1, 2), int(0), int(0)],
        ];
        assert_eq!(independent_rows(&rows), vec![0, 1, 3]);
    }
}
