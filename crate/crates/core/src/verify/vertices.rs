//! Brute-force vertex enumeration of the representation polytope.

use std::collections::BTreeSet;

use itertools::Itertools;

use super::linalg::{independent_rows, is_nonnegative, solve};
use super::polytope::build_polytope;
use crate::error::{Error, Result};
use crate::model::{Instance, TypeDistribution};
use crate::rational::Rational;

/// Largest type space [`enumerate_representations`] accepts.
pub const VERTEX_TYPE_CAP: usize = 12;

/// Every vertex of the representation polytope with at most `max_support`
/// types in its support, in canonical order of their mass vectors.
///
/// Vertices are the basic feasible solutions: for each choice of
/// `rank(A)` columns whose square subsystem is nonsingular, the unique
/// solution is kept when it is non-negative.
pub fn enumerate_representations(instance: &Instance, max_support: usize) -> Result<Vec<TypeDistribution>> {
    let count = instance.type_count();
    if count > VERTEX_TYPE_CAP as u128 {
        return Err(Error::TooLarge {
            types: count,
            cap: VERTEX_TYPE_CAP as u128,
        });
    }
    let polytope = build_polytope(instance)?;
    let (a, b) = polytope.dense();
    let rows = independent_rows(&a);
    let n = polytope.variables.len();
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for cols in (0..n).combinations(rows.len()) {
        let square: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| a[r][c].clone()).collect())
            .collect();
        let rhs: Vec<Rational> = rows.iter().map(|&r| b[r].clone()).collect();
        let Some(xb) = solve(square, rhs) else {
            continue;
        };
        if !is_nonnegative(&xb) {
            continue;
        }
        let mut x = vec![Rational::default(); n];
        for (&c, v) in cols.iter().zip(xb) {
            x[c] = v;
        }
        debug_assert!(polytope.contains(&x));
        found.insert(x);
    }
    Ok(found
        .into_iter()
        .map(|x| polytope.distribution(&x))
        .filter(|pi| pi.len() <= max_support)
        .collect())
}
