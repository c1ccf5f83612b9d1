//! Type distributions induced by (quasi-)copulas.
//!
//! For a spec `C`, the candidate CDF over types is
//! `F(s) = C(P_1(s_1), …, P_n(s_n))` and the candidate mass of `s` is its
//! Möbius inversion `m(s) = Σ_{A ⊆ N} (−1)^{|A|} F([s−1]_A s_{N∖A})`, where
//! `[s−1]_i` is the next-worse element of menu `i` and stepping below the
//! worst element contributes 0.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::copula::CopulaSpec;
use crate::error::{Error, Result};
use crate::lattice::difference_in_place;
use crate::model::{ChoiceType, Instance, TypeDistribution, TypeSpace, DEFAULT_TYPE_CAP};
use crate::rational::Rational;

/// Default limit on the number of menus for [`identify`].
pub const DEFAULT_COORDINATE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentifyOptions {
    pub max_types: usize,
    pub max_coordinates: usize,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions {
            max_types: DEFAULT_TYPE_CAP,
            max_coordinates: DEFAULT_COORDINATE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationResult {
    pub outcome: Outcome,
    pub stats: IdentifyStats,
}

impl IdentificationResult {
    pub fn distribution(&self) -> Option<&TypeDistribution> {
        match &self.outcome {
            Outcome::Identified(pi) => Some(pi),
            Outcome::NotIdentified(_) => None,
        }
    }

    pub fn is_identified(&self) -> bool {
        matches!(self.outcome, Outcome::Identified(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentifyStats {
    pub types_enumerated: usize,
    /// Types with positive candidate mass.
    pub support_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Identified(TypeDistribution),
    NotIdentified(Obstruction),
}

/// Why the candidate masses are not a distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// The canonically smallest type with negative candidate mass.
    NegativeMass { witness: ChoiceType, mass: Rational },
    /// All candidate masses are non-negative but do not sum to one.
    DefectiveTotal { total: Rational },
}

/// Identifies with default caps.
pub fn identify(spec: &CopulaSpec, instance: &Instance) -> Result<IdentificationResult> {
    identify_with(spec, instance, &IdentifyOptions::default())
}

pub fn identify_with(
    spec: &CopulaSpec,
    instance: &Instance,
    options: &IdentifyOptions,
) -> Result<IdentificationResult> {
    let (space, masses) = candidate_masses_in(spec, instance, options)?;
    let mut positive = BTreeMap::new();
    let mut total = Rational::zero();
    let mut negative = None;
    for (idx, m) in masses.into_iter().enumerate() {
        if m.is_negative() {
            negative.get_or_insert((idx, m));
        } else if m.is_positive() {
            total += &m;
            positive.insert(space.type_at(idx), m);
        }
    }
    let stats = IdentifyStats {
        types_enumerated: space.len(),
        support_size: positive.len(),
    };
    let outcome = match negative {
        Some((idx, mass)) => Outcome::NotIdentified(Obstruction::NegativeMass {
            witness: space.type_at(idx),
            mass,
        }),
        None if !total.is_one() => Outcome::NotIdentified(Obstruction::DefectiveTotal { total }),
        None => Outcome::Identified(TypeDistribution::from_positive(positive)),
    };
    Ok(IdentificationResult { outcome, stats })
}

/// Candidate mass of every type, in canonical order.
pub fn candidate_masses(spec: &CopulaSpec, instance: &Instance) -> Result<Vec<(ChoiceType, Rational)>> {
    let (space, masses) = candidate_masses_in(spec, instance, &IdentifyOptions::default())?;
    Ok(masses
        .into_iter()
        .enumerate()
        .map(|(idx, m)| (space.type_at(idx), m))
        .collect())
}

fn candidate_masses_in<'a>(
    spec: &CopulaSpec,
    instance: &'a Instance,
    options: &IdentifyOptions,
) -> Result<(TypeSpace<'a>, Vec<Rational>)> {
    let n = instance.n();
    spec.check_arity(n)?;
    if n > options.max_coordinates {
        return Err(Error::TooLarge {
            types: instance.type_count(),
            cap: options.max_types as u128,
        });
    }
    let space = TypeSpace::new(instance, options.max_types)?;
    let menus = instance.menus();
    let mut values: Vec<Rational> = (0..space.len())
        .into_par_iter()
        .map(|idx| {
            let u: Vec<Rational> = (0..n)
                .map(|axis| menus[axis].cumulative()[space.digit(idx, axis)].clone())
                .collect();
            spec.eval_unchecked(&u)
        })
        .collect();
    difference_in_place(&mut values, space.radices(), space.strides());
    Ok((space, values))
}

/// `m(s)` by the explicit `2^n`-term alternating sum.
pub fn mobius_mass(spec: &CopulaSpec, instance: &Instance, s: &ChoiceType) -> Result<Rational> {
    instance.check_type(s)?;
    spec.check_arity(instance.n())?;
    let n = instance.n();
    if n > 63 {
        return Err(Error::TooLarge {
            types: instance.type_count(),
            cap: DEFAULT_TYPE_CAP as u128,
        });
    }
    let positions: Vec<usize> = s
        .selections()
        .iter()
        .zip(instance.menus())
        .map(|(alt, m)| m.position(*alt).expect("checked"))
        .collect();
    let mut total = Rational::zero();
    let mut u = Vec::with_capacity(n);
    'corners: for mask in 0u64..(1u64 << n) {
        u.clear();
        for (i, &p) in positions.iter().enumerate() {
            let p = if mask >> i & 1 == 1 {
                match p.checked_sub(1) {
                    Some(q) => q,
                    None => continue 'corners,
                }
            } else {
                p
            };
            u.push(instance.menu(i).cumulative()[p].clone());
        }
        let f = spec.eval_unchecked(&u);
        if mask.count_ones() % 2 == 0 {
            total += f;
        } else {
            total -= f;
        }
    }
    Ok(total)
}

/// The comonotone (min-copula) representation, built by merging the
/// cumulative breakpoints of all menus.
///
/// For each gap `(b_{k−1}, b_k]` between consecutive distinct breakpoints the
/// type selecting, in every menu, the worst `x` with `P_i(x) ≥ b_k` receives
/// mass `b_k − b_{k−1}`.
pub fn identify_min(instance: &Instance) -> TypeDistribution {
    let menus = instance.menus();
    let mut ptr: Vec<usize> = menus
        .iter()
        .map(|m| m.masses().iter().position(|p| p.is_positive()).expect("unit mass"))
        .collect();
    let mut current = ChoiceType(menus.iter().zip(&ptr).map(|(m, &p)| m.elements()[p]).collect());
    let mut events: Vec<(&Rational, usize)> = menus
        .iter()
        .enumerate()
        .flat_map(|(i, m)| {
            m.masses()
                .iter()
                .zip(m.cumulative())
                .filter(|(p, _)| p.is_positive())
                .map(move |(_, c)| (c, i))
        })
        .collect();
    events.sort();
    let mut mass = BTreeMap::new();
    let mut prev = Rational::zero();
    let mut k = 0;
    while k < events.len() {
        let level = events[k].0;
        mass.insert(current.clone(), level - &prev);
        prev = level.clone();
        while k < events.len() && events[k].0 == level {
            let i = events[k].1;
            let m = &menus[i];
            if let Some(next) = (ptr[i] + 1..m.len()).find(|&p| m.masses()[p].is_positive()) {
                ptr[i] = next;
                current.0[i] = m.elements()[next];
            }
            k += 1;
        }
    }
    TypeDistribution::from_positive(mass)
}

/// The one-mistake representation around the best type `s̄`:
/// `π(s^i) = ρ_i(s_i)` for every single deviation `s_i ≠ s̄_i` and
/// `π(s̄) = 1 − Σ_i (1 − ρ_i(s̄_i))`.
pub fn identify_onemistake(instance: &Instance) -> Result<TypeDistribution> {
    let best = instance.best_type();
    let deficit: Rational = instance
        .menus()
        .iter()
        .map(|m| Rational::one() - m.masses().last().expect("non-empty"))
        .sum();
    if deficit > Rational::one() {
        return Err(Error::NotOneMistake { deficit });
    }
    let mut mass = BTreeMap::new();
    for (i, menu) in instance.menus().iter().enumerate() {
        for (alt, p) in menu.elements().iter().zip(menu.masses()) {
            if *alt != best.0[i] && p.is_positive() {
                let mut s = best.clone();
                s.0[i] = *alt;
                mass.insert(s, p.clone());
            }
        }
    }
    let rest = Rational::one() - deficit;
    if rest.is_positive() {
        mass.insert(best, rest);
    }
    Ok(TypeDistribution::from_positive(mass))
}
