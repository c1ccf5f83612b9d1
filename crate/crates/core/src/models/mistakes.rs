use num_traits::{One, Zero};

use crate::copula::CopulaSpec;
use crate::identify::{identify, Obstruction, Outcome};
use crate::model::{ChoiceType, Instance, DEFAULT_TYPE_CAP};
use crate::rational::Rational;

/// Side of the core on which a near-optimal type may deviate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MistakeDirection {
    /// Deviations to elements worse than the core's selection.
    Downward,
    /// Deviations to elements better than the core's selection.
    Upward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneMistakeCheck {
    pub member: bool,
    /// `Σ_i (1 − ρ_i(s̄_i))` with `s̄_i` the best element of menu `i`.
    pub deficit: Rational,
}

/// Membership in the one-mistake model.
pub fn is_one_mistake(instance: &Instance) -> OneMistakeCheck {
    let deficit = deficit_around(instance, &instance.best_type());
    OneMistakeCheck {
        member: deficit <= Rational::one(),
        deficit,
    }
}

/// `Σ_i (1 − ρ_i(core_i))`.
pub fn deficit_around(instance: &Instance, core: &ChoiceType) -> Rational {
    instance
        .menus()
        .iter()
        .zip(core.selections())
        .map(|(m, alt)| Rational::one() - m.mass_of(*alt).cloned().unwrap_or_else(Rational::zero))
        .sum()
}

/// `core` together with every type that differs from it in exactly one menu,
/// on the given side, in canonical order.
pub fn near_optimal_types(instance: &Instance, core: &ChoiceType, direction: MistakeDirection) -> Vec<ChoiceType> {
    let mut out = vec![core.clone()];
    for (i, menu) in instance.menus().iter().enumerate() {
        let c = core.0[i];
        for &alt in menu.elements() {
            let side = match direction {
                MistakeDirection::Downward => alt < c,
                MistakeDirection::Upward => alt > c,
            };
            if side {
                let mut s = core.clone();
                s.0[i] = alt;
                out.push(s);
            }
        }
    }
    out.sort();
    out
}

/// When the FH-lower bound identifies the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FhLowerVerdict {
    /// A distribution over types one mistake away from `core`, deviating in
    /// `direction`, represents the data.
    CondI { core: ChoiceType, direction: MistakeDirection },
    /// Every menu other than `i` and `j` (zero-based) is degenerate.
    CondII { i: usize, j: usize },
    /// Neither condition holds. The witness is a type with negative induced
    /// mass when the type space is small enough to enumerate.
    No { witness: Option<ChoiceType> },
}

impl FhLowerVerdict {
    pub fn is_identified(&self) -> bool {
        !matches!(self, FhLowerVerdict::No { .. })
    }
}

/// Decides identifiability by the FH-lower bound. Condition I is tried first,
/// around the support-best type with downward mistakes and then around the
/// support-worst type with upward mistakes.
pub fn fh_lower_identifiable(instance: &Instance) -> FhLowerVerdict {
    for (core, direction) in [
        (instance.support_best_type(), MistakeDirection::Downward),
        (instance.support_worst_type(), MistakeDirection::Upward),
    ] {
        if deficit_around(instance, &core) <= Rational::one() {
            return FhLowerVerdict::CondI { core, direction };
        }
    }
    let spread: Vec<usize> = (0..instance.n())
        .filter(|&k| !instance.menu(k).is_degenerate())
        .collect();
    if spread.len() <= 2 {
        let mut pair: Vec<usize> = spread;
        for k in 0..instance.n() {
            if pair.len() == 2 {
                break;
            }
            if !pair.contains(&k) {
                pair.push(k);
            }
        }
        pair.sort_unstable();
        let i = pair[0];
        let j = *pair.get(1).unwrap_or(&i);
        return FhLowerVerdict::CondII { i, j };
    }
    let witness = if instance.type_count() <= DEFAULT_TYPE_CAP as u128 {
        match identify(&CopulaSpec::FhLower, instance).map(|r| r.outcome) {
            Ok(Outcome::NotIdentified(Obstruction::NegativeMass { witness, .. })) => Some(witness),
            _ => None,
        }
    } else {
        None
    };
    FhLowerVerdict::No { witness }
}
