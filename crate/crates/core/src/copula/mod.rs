//! (Quasi-)copulas as expression trees.
//!
//! A [`CopulaSpec`] is either one of the named families, valid in any
//! dimension, or a [`Composite`] that groups coordinates under an outer `M` or
//! `W`. Evaluation is exact.

mod axioms;
mod parse;
mod sklar;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_unit_interval, Rational};

pub use axioms::{
    check_axioms, rectangle_volume, AxiomViolation, GridAxiomReport, GridFunction,
};
pub use parse::parse_spec;
pub use sklar::{subcopula_from_representation, Subcopula};

/// A named (quasi-)copula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CopulaSpec {
    /// `M(u) = min u_i`.
    Min,
    /// `W(u) = max(Σ u_i + 1 − n, 0)`.
    FhLower,
    /// `Π(u) = Π u_i`.
    Independent,
    /// `α·M + (1 − α)·W`.
    Frechet(Rational),
    /// `max(Σ u_i + 1 − n, t)` when every `u_i ≥ t`, otherwise `M(u)`.
    Threshold(Rational),
    Composite(Composite),
}

/// Outer combiner of a composite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combiner {
    Min,
    FhLower,
}

/// One argument of a composite: a single coordinate (zero-based) or a nested
/// composite over a contiguous block of coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Coord(usize),
    Nested(Composite),
}

/// `outer(children…)`, where the leaves read left to right are consecutive
/// coordinates. A top-level composite starts at coordinate 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    outer: Combiner,
    children: Vec<Component>,
    first: usize,
    arity: usize,
}

impl Composite {
    /// Validates that the leaves are consecutive coordinates read left to
    /// right.
    pub fn new(outer: Combiner, children: Vec<Component>) -> Result<Self> {
        fn leaves(c: &Composite, out: &mut Vec<usize>) {
            for child in &c.children {
                match child {
                    Component::Coord(k) => out.push(*k),
                    Component::Nested(inner) => leaves(inner, out),
                }
            }
        }
        if children.is_empty() {
            return Err(Error::InvalidCopula {
                offset: 0,
                reason: "composite has no arguments".into(),
            });
        }
        let mut probe = Composite {
            outer,
            children,
            first: 0,
            arity: 0,
        };
        let mut found = Vec::new();
        leaves(&probe, &mut found);
        let first = found[0];
        if let Some(pos) = found.iter().enumerate().position(|(i, &k)| first + i != k) {
            return Err(Error::InvalidCopula {
                offset: 0,
                reason: format!(
                    "coordinates must be consecutive left to right; found {} after {}",
                    found[pos] + 1,
                    found[pos - 1] + 1
                ),
            });
        }
        probe.first = first;
        probe.arity = found.len();
        Ok(probe)
    }

    /// Zero-based index of the leftmost coordinate.
    pub fn first(&self) -> usize {
        self.first
    }

    pub fn outer(&self) -> Combiner {
        self.outer
    }

    pub fn children(&self) -> &[Component] {
        &self.children
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn eval(&self, u: &[Rational]) -> Rational {
        let values: Vec<Rational> = self
            .children
            .iter()
            .map(|c| match c {
                Component::Coord(k) => u[*k].clone(),
                Component::Nested(inner) => inner.eval(u),
            })
            .collect();
        match self.outer {
            Combiner::Min => min_copula(&values),
            Combiner::FhLower => fh_lower(&values),
        }
    }
}

fn min_copula(u: &[Rational]) -> Rational {
    u.iter().min().cloned().unwrap_or_else(Rational::one)
}

fn lukasiewicz_sum(u: &[Rational]) -> Rational {
    let sum: Rational = u.iter().sum();
    sum + Rational::one() - Rational::from_integer(u.len().into())
}

fn fh_lower(u: &[Rational]) -> Rational {
    let s = lukasiewicz_sum(u);
    if s.is_positive() {
        s
    } else {
        Rational::zero()
    }
}

impl CopulaSpec {
    /// A top-level composite; its coordinates must start at 0.
    pub fn composite(outer: Combiner, children: Vec<Component>) -> Result<Self> {
        let c = Composite::new(outer, children)?;
        if c.first != 0 {
            return Err(Error::InvalidCopula {
                offset: 0,
                reason: format!("coordinates must start at 1, not {}", c.first + 1),
            });
        }
        Ok(CopulaSpec::Composite(c))
    }

    /// `Frechet(α)` with `α ∈ [0, 1]`.
    pub fn frechet(alpha: Rational) -> Result<Self> {
        unit_parameter("Frechet", &alpha)?;
        Ok(CopulaSpec::Frechet(alpha))
    }

    /// `Threshold(t)` with `t ∈ [0, 1]`.
    pub fn threshold(t: Rational) -> Result<Self> {
        unit_parameter("Threshold", &t)?;
        Ok(CopulaSpec::Threshold(t))
    }

    /// Fixed dimension of a composite; `None` for the named families.
    pub fn arity(&self) -> Option<usize> {
        match self {
            CopulaSpec::Composite(c) => Some(c.arity),
            _ => None,
        }
    }

    /// Checks that the spec can be evaluated in dimension `n`.
    pub fn check_arity(&self, n: usize) -> Result<()> {
        match self.arity() {
            Some(k) if k != n => Err(Error::ArityMismatch {
                expected: k,
                got: n,
            }),
            _ if n == 0 => Err(Error::ArityMismatch {
                expected: 1,
                got: 0,
            }),
            _ => Ok(()),
        }
    }

    /// Evaluates at `u`, validating dimension and range.
    pub fn eval(&self, u: &[Rational]) -> Result<Rational> {
        self.check_arity(u.len())?;
        if let Some((index, value)) = u.iter().enumerate().find(|(_, v)| !in_unit_interval(v)) {
            return Err(Error::OutOfUnitInterval {
                index,
                value: value.clone(),
            });
        }
        Ok(self.eval_unchecked(u))
    }

    /// Evaluates without validation. The caller guarantees a valid point.
    pub(crate) fn eval_unchecked(&self, u: &[Rational]) -> Rational {
        match self {
            CopulaSpec::Min => min_copula(u),
            CopulaSpec::FhLower => fh_lower(u),
            CopulaSpec::Independent => u.iter().product(),
            CopulaSpec::Frechet(alpha) => {
                alpha * min_copula(u) + (Rational::one() - alpha) * fh_lower(u)
            }
            CopulaSpec::Threshold(t) => {
                if u.iter().all(|v| v >= t) {
                    lukasiewicz_sum(u).max(t.clone())
                } else {
                    min_copula(u)
                }
            }
            CopulaSpec::Composite(c) => c.eval(u),
        }
    }
}

fn unit_parameter(family: &str, value: &Rational) -> Result<()> {
    if in_unit_interval(value) {
        Ok(())
    } else {
        Err(Error::InvalidCopula {
            offset: 0,
            reason: format!("{family} parameter {value} outside [0, 1]"),
        })
    }
}

/// `eval(spec, u)`.
pub fn eval(spec: &CopulaSpec, u: &[Rational]) -> Result<Rational> {
    spec.eval(u)
}

impl fmt::Display for CopulaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopulaSpec::Min => f.write_str("M"),
            CopulaSpec::FhLower => f.write_str("W"),
            CopulaSpec::Independent => f.write_str("Pi"),
            CopulaSpec::Frechet(a) => write!(f, "Frechet({a})"),
            CopulaSpec::Threshold(t) => write!(f, "Threshold({t})"),
            CopulaSpec::Composite(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.outer {
            Combiner::Min => "M(",
            Combiner::FhLower => "W(",
        })?;
        for (i, child) in self.children.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match child {
                Component::Coord(k) => write!(f, "{}", k + 1)?,
                Component::Nested(inner) => write!(f, "{inner}")?,
            }
        }
        f.write_str(")")
    }
}

impl std::str::FromStr for CopulaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}
