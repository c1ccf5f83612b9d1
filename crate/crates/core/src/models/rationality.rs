use std::collections::BTreeSet;

use num_traits::Zero;
use petgraph::algo::is_cyclic_directed;
use petgraph::graphmap::DiGraphMap;

use crate::identify::identify_min;
use crate::model::{Alt, ChoiceType, Instance};
use crate::rational::Rational;

/// Whether some strict preference over alternatives makes `s_i` the best
/// element of every menu `i`: the revealed relation `s_i ≻ y` for
/// `y ∈ S_i ∖ {s_i}` must be acyclic.
pub fn is_rational_type(instance: &Instance, s: &ChoiceType) -> bool {
    let mut g: DiGraphMap<usize, ()> = DiGraphMap::new();
    for (menu, chosen) in instance.menus().iter().zip(s.selections()) {
        g.add_node(chosen.rank());
        for &y in menu.elements() {
            if y != *chosen {
                g.add_edge(chosen.rank(), y.rank(), ());
            }
        }
    }
    !is_cyclic_directed(&g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    /// The menu family contains no pattern the axiom speaks about.
    NotApplicable,
    Satisfied { checks: usize },
    Violated(AxiomViolationDetail),
}

impl AxiomStatus {
    pub fn is_violated(&self) -> bool {
        matches!(self, AxiomStatus::Violated(_))
    }
}

/// Menu indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolationDetail {
    /// `ρ(x, larger) > ρ(x, smaller)` although `smaller ⊆ larger`.
    Regularity {
        alt: Alt,
        larger: usize,
        smaller: usize,
        in_larger: Rational,
        in_smaller: Rational,
    },
    /// For a menu `{x, y, z}` with `x ⊳ y ⊳ z` and `ρ(y) > 0`, the pair menu
    /// `{x, y}` (or `{y, z}`) gives `alt = x` (or `z`) a different
    /// probability.
    Centrality {
        alt: Alt,
        triple: usize,
        pair: usize,
        in_triple: Rational,
        in_pair: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrumReport {
    /// Every type in the comonotone representation is rational.
    pub member: bool,
    /// Support types of the comonotone representation that are not rational.
    pub irrational_support: Vec<ChoiceType>,
    pub regularity: AxiomStatus,
    pub centrality: AxiomStatus,
    /// The menu family is every subset (of size at least two) of at most three
    /// alternatives. Only then are the two axioms expected to settle
    /// membership.
    pub decisive: bool,
}

/// Membership in single-crossing random utility with respect to the
/// reference order, with regularity and centrality checked independently.
pub fn scrum_membership(instance: &Instance) -> ScrumReport {
    let irrational_support: Vec<ChoiceType> = identify_min(instance)
        .support()
        .filter(|s| !is_rational_type(instance, s))
        .cloned()
        .collect();
    let sets: Vec<BTreeSet<Alt>> = instance
        .menus()
        .iter()
        .map(|m| m.elements().iter().copied().collect())
        .collect();
    ScrumReport {
        member: irrational_support.is_empty(),
        irrational_support,
        regularity: regularity(instance, &sets),
        centrality: centrality(instance, &sets),
        decisive: is_full_small_domain(&sets),
    }
}

fn mass(instance: &Instance, menu: usize, alt: Alt) -> Rational {
    instance.menu(menu).mass_of(alt).cloned().unwrap_or_else(Rational::zero)
}

fn regularity(instance: &Instance, sets: &[BTreeSet<Alt>]) -> AxiomStatus {
    let mut checks = 0;
    let mut applicable = false;
    for (larger, a) in sets.iter().enumerate() {
        for (smaller, b) in sets.iter().enumerate() {
            if larger == smaller || !b.is_subset(a) {
                continue;
            }
            applicable = true;
            for &alt in b {
                checks += 1;
                let in_larger = mass(instance, larger, alt);
                let in_smaller = mass(instance, smaller, alt);
                if in_larger > in_smaller {
                    return AxiomStatus::Violated(AxiomViolationDetail::Regularity {
                        alt,
                        larger,
                        smaller,
                        in_larger,
                        in_smaller,
                    });
                }
            }
        }
    }
    if applicable {
        AxiomStatus::Satisfied { checks }
    } else {
        AxiomStatus::NotApplicable
    }
}

fn centrality(instance: &Instance, sets: &[BTreeSet<Alt>]) -> AxiomStatus {
    let mut checks = 0;
    let mut applicable = false;
    for (triple, t) in sets.iter().enumerate() {
        if t.len() != 3 {
            continue;
        }
        // Ascending `Alt` order is worst first.
        let v: Vec<Alt> = t.iter().copied().collect();
        let (z, y, x) = (v[0], v[1], v[2]);
        let middle_chosen = !mass(instance, triple, y).is_zero();
        for outer in [x, z] {
            let pair_set: BTreeSet<Alt> = [outer, y].into_iter().collect();
            for (pair, p) in sets.iter().enumerate() {
                if *p != pair_set {
                    continue;
                }
                applicable = true;
                if !middle_chosen {
                    continue;
                }
                checks += 1;
                let in_triple = mass(instance, triple, outer);
                let in_pair = mass(instance, pair, outer);
                if in_triple != in_pair {
                    return AxiomStatus::Violated(AxiomViolationDetail::Centrality {
                        alt: outer,
                        triple,
                        pair,
                        in_triple,
                        in_pair,
                    });
                }
            }
        }
    }
    if applicable {
        AxiomStatus::Satisfied { checks }
    } else {
        AxiomStatus::NotApplicable
    }
}

fn is_full_small_domain(sets: &[BTreeSet<Alt>]) -> bool {
    let universe: BTreeSet<Alt> = sets.iter().flatten().copied().collect();
    if universe.len() > 3 {
        return false;
    }
    let items: Vec<Alt> = universe.into_iter().collect();
    (1u32..(1 << items.len()))
        .filter(|mask| mask.count_ones() >= 2)
        .all(|mask| {
            let subset: BTreeSet<Alt> = (0..items.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| items[k])
                .collect();
            sets.contains(&subset)
        })
}
