use crate::model::{ChoiceType, Instance, TypeDistribution};
use crate::error::Result;

/// Pairwise structure of a support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDiagnostics {
    /// No support type strictly dominates another in every menu.
    pub antichain_ok: bool,
    /// Any two support types differ in at most two menus, and when they differ
    /// in exactly two, each is better in one of them.
    pub two_diff_ok: bool,
    /// `(s, t)` with `s` strictly dominating `t`.
    pub antichain_witness: Option<(ChoiceType, ChoiceType)>,
    pub two_diff_witness: Option<(ChoiceType, ChoiceType)>,
}

/// Checks the support of `pi` pairwise.
///
/// The antichain witness pairs the canonically largest dominating type with
/// the canonically smallest type it dominates; the two-difference witness is
/// the first failing pair in canonical order.
pub fn support_diagnostics(instance: &Instance, pi: &TypeDistribution) -> Result<SupportDiagnostics> {
    pi.check_against(instance)?;
    let support: Vec<&ChoiceType> = pi.support().collect();
    let antichain_witness = support.iter().rev().find_map(|s| {
        support
            .iter()
            .find(|t| s.strictly_dominates(t))
            .map(|t| ((*s).clone(), (*t).clone()))
    });
    let two_diff_witness = support.iter().enumerate().find_map(|(a, s)| {
        support[a + 1..]
            .iter()
            .find(|t| !two_diff_compatible(s, t))
            .map(|t| ((*s).clone(), (*t).clone()))
    });
    Ok(SupportDiagnostics {
        antichain_ok: antichain_witness.is_none(),
        two_diff_ok: two_diff_witness.is_none(),
        antichain_witness,
        two_diff_witness,
    })
}

fn two_diff_compatible(s: &ChoiceType, t: &ChoiceType) -> bool {
    match s.differing(t).as_slice() {
        [] | [_] => true,
        [j, k] => (s.0[*j] > t.0[*j]) != (s.0[*k] > t.0[*k]),
        _ => false,
    }
}
