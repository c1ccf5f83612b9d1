use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{ChoiceType, Instance};

fn validate(instance: &Instance, types: &[ChoiceType]) -> Result<()> {
    for t in types {
        instance.check_type(t)?;
    }
    let distinct: BTreeSet<&ChoiceType> = types.iter().collect();
    if distinct.len() != types.len() {
        return Err(Error::InvalidType("type list contains duplicates".into()));
    }
    Ok(())
}

/// Whether the types can be ordered into a dominance chain.
pub fn is_progressive(instance: &Instance, types: &[ChoiceType]) -> Result<bool> {
    validate(instance, types)?;
    let mut sorted = types.to_vec();
    sorted.sort();
    Ok(sorted.windows(2).all(|w| w[1].dominates(&w[0])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
}

/// `op(a, b) = missing` is not in the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDefect {
    pub a: ChoiceType,
    pub b: ChoiceType,
    pub op: LatticeOp,
    pub missing: ChoiceType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCheck {
    pub is_lattice: bool,
    pub defect: Option<LatticeDefect>,
}

/// Whether the set is closed under componentwise join and meet. Pairs are
/// scanned in input order; the first failure is reported, join before meet.
pub fn is_lattice(instance: &Instance, types: &[ChoiceType]) -> Result<LatticeCheck> {
    validate(instance, types)?;
    let set: BTreeSet<&ChoiceType> = types.iter().collect();
    for (k, a) in types.iter().enumerate() {
        for b in &types[k + 1..] {
            for (op, value) in [(LatticeOp::Join, a.join(b)), (LatticeOp::Meet, a.meet(b))] {
                if !set.contains(&value) {
                    return Ok(LatticeCheck {
                        is_lattice: false,
                        defect: Some(LatticeDefect {
                            a: a.clone(),
                            b: b.clone(),
                            op,
                            missing: value,
                        }),
                    });
                }
            }
        }
    }
    Ok(LatticeCheck {
        is_lattice: true,
        defect: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::CopulaSpec;
    use crate::fixtures::{two_menu_example, three_menus_xyz};
    use crate::identify::{identify, identify_min};
    use crate::model::TypeSpace;

    #[test]
    fn two_menu_example_supports() {
        let inst = two_menu_example();
        let m: Vec<_> = identify_min(&inst).support().cloned().collect();
        assert!(is_progressive(&inst, &m).unwrap());
        assert!(is_lattice(&inst, &m).unwrap().is_lattice);
        let w: Vec<_> = identify(&CopulaSpec::FhLower, &inst)
            .unwrap()
            .distribution()
            .unwrap()
            .support()
            .cloned()
            .collect();
        assert!(!is_progressive(&inst, &w).unwrap());
        assert!(is_progressive(&inst, &w[..1]).unwrap());
    }

    #[test]
    fn near_optimal_set_is_not_a_lattice() {
        let inst = three_menus_xyz();
        let types: Vec<_> = [["x", "x", "x"], ["y", "x", "x"], ["z", "x", "x"], ["x", "y", "x"], ["x", "x", "z"]]
            .iter()
            .map(|t| inst.choice_type(t).unwrap())
            .collect();
        let check = is_lattice(&inst, &types).unwrap();
        assert_eq!(
            check.defect,
            Some(LatticeDefect {
                a: types[1].clone(),
                b: types[3].clone(),
                op: LatticeOp::Meet,
                missing: inst.choice_type(&["y", "y", "x"]).unwrap(),
            })
        );
    }

    #[test]
    fn full_space_is_a_lattice() {
        let inst = three_menus_xyz();
        let all: Vec<_> = TypeSpace::new(&inst, 100).unwrap().types().collect();
        assert!(is_lattice(&inst, &all).unwrap().is_lattice);
        let dup = vec![all[0].clone(), all[0].clone()];
        assert!(is_lattice(&inst, &dup).is_err());
    }
}
