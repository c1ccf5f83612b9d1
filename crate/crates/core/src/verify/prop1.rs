//! The comonotone representation maximises every up-set and down-set mass.

use rayon::prelude::*;

use super::polytope::{PolytopeSolver, Sense, Target};
use crate::error::Result;
use crate::identify::identify_min;
use crate::model::{ChoiceType, Instance, TypeDistribution};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Failure {
    pub target: Target,
    /// Mass of the target under the comonotone representation.
    pub prc_mass: Rational,
    pub lp_max: Rational,
    /// A representation attaining `lp_max`.
    pub counter_witness: TypeDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop1Report {
    /// Number of targets compared (two per sampled type).
    pub checked: usize,
    pub failures: Vec<Prop1Failure>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each sampled `s`, compares the comonotone mass of the up-set and the
/// down-set of `s` with the exact LP maximum over all representations.
pub fn verify_prop1(instance: &Instance, samples: &[ChoiceType]) -> Result<Prop1Report> {
    for s in samples {
        instance.check_type(s)?;
    }
    let prc = identify_min(instance);
    let solver = PolytopeSolver::new(instance)?;
    let outcomes: Vec<Vec<Option<Prop1Failure>>> = samples
        .par_iter()
        .map(|s| {
            [Target::UpSet(s.clone()), Target::DownSet(s.clone())]
                .into_iter()
                .map(|target| {
                    let best = solver.extremal(&target, Sense::Max)?;
                    let prc_mass = target.mass(&prc);
                    Ok((prc_mass != best.optimum).then_some(Prop1Failure {
                        target,
                        prc_mass,
                        lp_max: best.optimum,
                        counter_witness: best.argmax,
                    }))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Prop1Report {
        checked: samples.len() * 2,
        failures: outcomes.into_iter().flatten().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_menu_example;
    use crate::model::TypeSpace;

    #[test]
    fn two_menu_example_all_types() {
        let inst = two_menu_example();
        let all: Vec<_> = TypeSpace::new(&inst, 100).unwrap().types().collect();
        let r = verify_prop1(&inst, &all).unwrap();
        assert_eq!(r.checked, 18);
        assert!(r.passed());
    }
}
