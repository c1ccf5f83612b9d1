//! Copula and quasi-copula axioms on finite grids.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::CopulaSpec;
use crate::error::{Error, Result};
use crate::lattice::{difference_in_place, strides_for};
use crate::rational::{in_unit_interval, Rational};

/// Largest grid [`check_axioms`] accepts.
pub const GRID_CAP: usize = 1_000_000;

/// A function tabulated on a product grid `A_1 × … × A_n ⊆ [0,1]^n`.
///
/// Each axis is strictly increasing and contains 0 and 1. Values are laid
/// out in mixed radix with axis 0 most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFunction {
    axes: Vec<Vec<Rational>>,
    radices: Vec<usize>,
    strides: Vec<usize>,
    values: Vec<Rational>,
}

impl GridFunction {
    /// Tabulates `spec` on the grid after sorting and deduplicating each axis.
    pub fn tabulate(spec: &CopulaSpec, axes: &[Vec<Rational>]) -> Result<Self> {
        let axes = normalize_axes(axes)?;
        spec.check_arity(axes.len())?;
        let radices: Vec<usize> = axes.iter().map(Vec::len).collect();
        let strides = strides_for(&radices);
        let len = grid_len(&radices)?;
        let mut g = GridFunction {
            axes,
            radices,
            strides,
            values: Vec::new(),
        };
        g.values = (0..len)
            .into_par_iter()
            .map(|idx| spec.eval_unchecked(&g.point(idx)))
            .collect();
        Ok(g)
    }

    pub(crate) fn from_parts(axes: Vec<Vec<Rational>>, values: Vec<Rational>) -> Self {
        let radices: Vec<usize> = axes.iter().map(Vec::len).collect();
        let strides = strides_for(&radices);
        debug_assert_eq!(values.len(), radices.iter().product::<usize>());
        GridFunction {
            axes,
            radices,
            strides,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<Rational>] {
        &self.axes
    }

    /// Values in grid order.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn digit(&self, idx: usize, axis: usize) -> usize {
        (idx / self.strides[axis]) % self.radices[axis]
    }

    /// Coordinates of the grid point at `idx`.
    pub fn point(&self, idx: usize) -> Vec<Rational> {
        (0..self.dim())
            .map(|axis| self.axes[axis][self.digit(idx, axis)].clone())
            .collect()
    }

    /// Value at a grid point given by coordinates.
    pub fn at(&self, u: &[Rational]) -> Option<&Rational> {
        if u.len() != self.dim() {
            return None;
        }
        let mut idx = 0;
        for (axis, v) in u.iter().enumerate() {
            idx += self.axes[axis].binary_search(v).ok()? * self.strides[axis];
        }
        Some(&self.values[idx])
    }

    /// Checks groundedness, uniform margins, the Lipschitz condition on
    /// adjacent grid points and non-negative volume of every grid cell.
    ///
    /// Cell volumes suffice: any grid-aligned box is a disjoint union of cells
    /// and volume is additive.
    pub fn axiom_report(&self) -> GridAxiomReport {
        let n = self.dim();
        let len = self.len();
        let mut report = GridAxiomReport {
            grounded: true,
            uniform_margins: true,
            lipschitz: true,
            rectangle_nonneg: true,
            negative_cells: 0,
            witnesses: Vec::new(),
        };

        let grounding = (0..len).find(|&idx| {
            (0..n).any(|a| self.digit(idx, a) == 0) && !self.values[idx].is_zero()
        });
        if let Some(idx) = grounding {
            report.grounded = false;
            report.witnesses.push(AxiomViolation::Grounding {
                point: self.point(idx),
                value: self.values[idx].clone(),
            });
        }

        'margins: for axis in 0..n {
            for (d, expected) in self.axes[axis].iter().enumerate() {
                let idx: usize = (0..n)
                    .map(|a| {
                        let digit = if a == axis { d } else { self.radices[a] - 1 };
                        digit * self.strides[a]
                    })
                    .sum();
                if self.values[idx] != *expected {
                    report.uniform_margins = false;
                    report.witnesses.push(AxiomViolation::Margin {
                        point: self.point(idx),
                        expected: expected.clone(),
                        value: self.values[idx].clone(),
                    });
                    break 'margins;
                }
            }
        }

        let lipschitz = (0..len).find_map(|idx| {
            (0..n).find_map(|axis| {
                let d = self.digit(idx, axis);
                if d + 1 >= self.radices[axis] {
                    return None;
                }
                let next = idx + self.strides[axis];
                let change = (&self.values[next] - &self.values[idx]).abs();
                let bound = &self.axes[axis][d + 1] - &self.axes[axis][d];
                (change > bound).then(|| AxiomViolation::Lipschitz {
                    from: self.point(idx),
                    to: self.point(next),
                    change,
                    bound,
                })
            })
        });
        if let Some(v) = lipschitz {
            report.lipschitz = false;
            report.witnesses.push(v);
        }

        let mut volumes = self.values.clone();
        difference_in_place(&mut volumes, &self.radices, &self.strides);
        let offset: usize = self.strides.iter().sum();
        for (idx, volume) in volumes.iter().enumerate() {
            if volume.is_negative() && (0..n).all(|a| self.digit(idx, a) > 0) {
                report.negative_cells += 1;
                if report.rectangle_nonneg {
                    report.rectangle_nonneg = false;
                    report.witnesses.push(AxiomViolation::Rectangle {
                        lower: self.point(idx - offset),
                        upper: self.point(idx),
                        volume: volume.clone(),
                    });
                }
            }
        }
        report
    }
}

fn normalize_axes(axes: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    if axes.is_empty() {
        return Err(Error::EmptyGrid("no axes".into()));
    }
    axes.iter()
        .enumerate()
        .map(|(i, axis)| {
            if let Some(v) = axis.iter().find(|v| !in_unit_interval(v)) {
                return Err(Error::OutOfUnitInterval {
                    index: i,
                    value: v.clone(),
                });
            }
            let mut axis = axis.clone();
            axis.sort();
            axis.dedup();
            if axis.first().is_none_or(|v| !v.is_zero()) || axis.last().is_none_or(|v| !v.is_one()) {
                return Err(Error::EmptyGrid(format!("axis {} must contain 0 and 1", i + 1)));
            }
            Ok(axis)
        })
        .collect()
}

fn grid_len(radices: &[usize]) -> Result<usize> {
    let len = radices
        .iter()
        .try_fold(1usize, |acc, &r| acc.checked_mul(r))
        .filter(|&l| l <= GRID_CAP);
    len.ok_or_else(|| Error::TooLarge {
        types: radices.iter().fold(1u128, |a, &r| a.saturating_mul(r as u128)),
        cap: GRID_CAP as u128,
    })
}

/// Result of [`check_axioms`]: one flag per axiom and, for each failing axiom,
/// the first violation in grid order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAxiomReport {
    pub grounded: bool,
    pub uniform_margins: bool,
    pub lipschitz: bool,
    pub rectangle_nonneg: bool,
    /// Number of grid cells with negative volume.
    pub negative_cells: usize,
    pub witnesses: Vec<AxiomViolation>,
}

impl GridAxiomReport {
    /// All four axioms hold on the grid.
    pub fn is_copula(&self) -> bool {
        self.grounded && self.uniform_margins && self.lipschitz && self.rectangle_nonneg
    }

    /// Grounded, uniform margins and Lipschitz.
    pub fn is_quasi_copula(&self) -> bool {
        self.grounded && self.uniform_margins && self.lipschitz
    }

    pub fn witness(&self) -> Option<&AxiomViolation> {
        self.witnesses.first()
    }
}

/// A concrete axiom failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// Nonzero value at a point with a zero coordinate.
    Grounding { point: Vec<Rational>, value: Rational },
    /// `C(1,…,u_i,…,1) ≠ u_i`.
    Margin {
        point: Vec<Rational>,
        expected: Rational,
        value: Rational,
    },
    /// `|C(to) − C(from)| > |to − from|` along one axis.
    Lipschitz {
        from: Vec<Rational>,
        to: Vec<Rational>,
        change: Rational,
        bound: Rational,
    },
    /// Negative volume of the box `[lower, upper]`.
    Rectangle {
        lower: Vec<Rational>,
        upper: Vec<Rational>,
        volume: Rational,
    },
}

impl AxiomViolation {
    /// Re-evaluates the violation directly from `spec`; true when it is a
    /// strict violation.
    pub fn replay(&self, spec: &CopulaSpec) -> Result<bool> {
        Ok(match self {
            AxiomViolation::Grounding { point, .. } => {
                point.iter().any(Zero::is_zero) && !spec.eval(point)?.is_zero()
            }
            AxiomViolation::Margin { point, expected, .. } => {
                let ones = point.iter().filter(|v| v.is_one()).count();
                ones + 1 >= point.len() && spec.eval(point)? != *expected
            }
            AxiomViolation::Lipschitz { from, to, .. } => {
                let delta: Rational = from.iter().zip(to).map(|(a, b)| (a - b).abs()).sum();
                (spec.eval(to)? - spec.eval(from)?).abs() > delta
            }
            AxiomViolation::Rectangle { lower, upper, .. } => {
                spec.check_arity(lower.len())?;
                rectangle_volume(|u| spec.eval(u), lower, upper)?.is_negative()
            }
        })
    }
}

/// `Σ_{A ⊆ N} (−1)^{|A|} C(a_A, b_{N∖A})` for the box `[a, b]`, by explicit
/// enumeration of its `2^n` corners.
pub fn rectangle_volume<E>(
    mut c: impl FnMut(&[Rational]) -> std::result::Result<Rational, E>,
    lower: &[Rational],
    upper: &[Rational],
) -> std::result::Result<Rational, E> {
    let n = lower.len();
    let mut total = Rational::zero();
    let mut corner = upper.to_vec();
    for mask in 0u64..(1u64 << n) {
        for (i, slot) in corner.iter_mut().enumerate() {
            *slot = if mask >> i & 1 == 1 { lower[i].clone() } else { upper[i].clone() };
        }
        let v = c(&corner)?;
        if mask.count_ones() % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total)
}

/// Tabulates `spec` on `grid` and checks the axioms there.
pub fn check_axioms(spec: &CopulaSpec, grid: &[Vec<Rational>]) -> Result<GridAxiomReport> {
    Ok(GridFunction::tabulate(spec, grid)?.axiom_report())
}
