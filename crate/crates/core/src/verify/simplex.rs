//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in equality form `A x = b, x ≥ 0`. Phase one finds a feasible
//! basis once; any number of objectives can then be optimised from it.

use num_traits::{One, Signed, Zero};

use super::linalg::solve;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A feasible basis of `A x = b, x ≥ 0` with redundant rows removed.
#[derive(Debug, Clone)]
pub(crate) struct FeasibleBasis {
    a: Vec<Vec<Rational>>,
    /// Canonical tableau rows: `ncols` coefficients then the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Original rows kept after dropping linearly dependent ones.
    kept: Vec<usize>,
    ncols: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    pub basis: Vec<usize>,
    /// One dual value per original row; dropped rows get 0.
    pub duals: Vec<Rational>,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[j].is_zero() {
                let f = row[j].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
            }
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (v, pv) in self.obj.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = j;
    }

    /// Maximises until every reduced cost among the first `allowed` columns
    /// is non-negative.
    fn run(&mut self, allowed: usize) -> Result<()> {
        let rhs = self.rhs();
        while let Some(j) = (0..allowed).find(|&j| self.obj[j].is_negative()) {
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let (r, _) = best.ok_or_else(|| Error::Lp("objective is unbounded".into()))?;
            self.pivot(r, j);
        }
        Ok(())
    }
}

impl FeasibleBasis {
    /// Phase one. Returns `None` when the system is infeasible.
    pub(crate) fn new(a: &[Vec<Rational>], b: &[Rational]) -> Result<Option<Self>> {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        for (r, (row, rhs)) in a.iter().zip(b).enumerate() {
            let sign = if rhs.is_negative() { -Rational::one() } else { Rational::one() };
            let mut t: Vec<Rational> = row.iter().map(|v| v * &sign).collect();
            t.extend((0..m).map(|k| if k == r { Rational::one() } else { Rational::zero() }));
            t.push(rhs * &sign);
            rows.push(t);
        }
        let width = n + m + 1;
        let mut obj = vec![Rational::zero(); width];
        for row in &rows {
            for j in 0..n {
                obj[j] -= &row[j];
            }
            obj[width - 1] -= &row[width - 1];
        }
        let mut t = Tableau {
            rows,
            obj,
            basis: (n..n + m).collect(),
        };
        t.run(n + m)?;
        if !t.obj[width - 1].is_zero() {
            return Ok(None);
        }
        let mut dropped = Vec::new();
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n {
                if let Some(j) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, j);
                    r += 1;
                } else {
                    dropped.push(t.basis[r] - n);
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            } else {
                r += 1;
            }
        }
        for row in t.rows.iter_mut() {
            let rhs = row[width - 1].clone();
            row.truncate(n);
            row.push(rhs);
        }
        let kept = (0..m).filter(|k| !dropped.contains(k)).collect();
        Ok(Some(FeasibleBasis {
            a: a.to_vec(),
            rows: t.rows,
            basis: t.basis,
            kept,
            ncols: n,
        }))
    }

    /// Maximises `c · x` over the feasible set, starting from this basis.
    pub(crate) fn maximize(&self, c: &[Rational]) -> Result<LpSolution> {
        let n = self.ncols;
        let mut obj = vec![Rational::zero(); n + 1];
        for (j, o) in obj.iter_mut().enumerate().take(n) {
            *o = -c[j].clone();
        }
        for (row, &bj) in self.rows.iter().zip(&self.basis) {
            if c[bj].is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                *o += &c[bj] * v;
            }
        }
        let mut t = Tableau {
            rows: self.rows.clone(),
            obj,
            basis: self.basis.clone(),
        };
        t.run(n)?;
        let mut x = vec![Rational::zero(); n];
        for (row, &bj) in t.rows.iter().zip(&t.basis) {
            x[bj] = row[n].clone();
        }
        let value = t.obj[n].clone();
        let square: Vec<Vec<Rational>> = t
            .basis
            .iter()
            .map(|&j| self.kept.iter().map(|&r| self.a[r][j].clone()).collect())
            .collect();
        let c_b: Vec<Rational> = t.basis.iter().map(|&j| c[j].clone()).collect();
        let y_kept = solve(square, c_b).ok_or_else(|| Error::Lp("singular basis".into()))?;
        let mut duals = vec![Rational::zero(); self.a.len()];
        for (&r, y) in self.kept.iter().zip(y_kept) {
            duals[r] = y;
        }
        Ok(LpSolution {
            x,
            value,
            basis: t.basis,
            duals,
        })
    }
}

/// Checks primal feasibility, dual feasibility `Aᵀy ≥ c` and a zero duality
/// gap for a maximisation problem, by substitution.
pub(crate) fn certify_max(a: &[Vec<Rational>], b: &[Rational], c: &[Rational], sol: &LpSolution) -> bool {
    let primal = a.iter().zip(b).all(|(row, rhs)| {
        row.iter().zip(&sol.x).map(|(p, q)| p * q).sum::<Rational>() == *rhs
    }) && sol.x.iter().all(|v| !v.is_negative());
    let dual = (0..c.len()).all(|j| {
        a.iter().zip(&sol.duals).map(|(row, y)| &row[j] * y).sum::<Rational>() >= c[j]
    });
    let cx: Rational = c.iter().zip(&sol.x).map(|(p, q)| p * q).sum();
    let by: Rational = b.iter().zip(&sol.duals).map(|(p, q)| p * q).sum();
    primal && dual && cx == sol.value && by == sol.value
}
