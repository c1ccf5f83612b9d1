mod common;

use ordchoice::fixtures::two_menu_example;
use ordchoice::identify::{identify, identify_min};
use ordchoice::rational::{ratio, Rational};
use ordchoice::verify::{
    enumerate_representations, extremal_mass, feasible_on_support, sample_types, verify_prop1, PolytopeSolver, Sense,
    Target,
};
use ordchoice::{represents, CopulaSpec, Instance, TypeDistribution, TypeSpace};
use proptest::prelude::*;

fn small(max_menus: usize) -> impl Strategy<Value = Instance> {
    common::arbitrary(max_menus, 3).prop_filter("at most 12 types", |i| i.type_count() <= 12)
}

/// Induced CDF at every type: the down-set mass.
fn cdf(inst: &Instance, pi: &TypeDistribution) -> Vec<Rational> {
    TypeSpace::new(inst, 1_000).unwrap().types().map(|s| pi.down_set_mass(&s)).collect()
}

fn copula_cdf(inst: &Instance, spec: &CopulaSpec) -> Vec<Rational> {
    TypeSpace::new(inst, 1_000)
        .unwrap()
        .types()
        .map(|s| {
            let u: Vec<Rational> = s.0.iter().enumerate().map(|(i, &a)| inst.cumulative(i, a).unwrap().clone()).collect();
            spec.eval(&u).unwrap()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lp_optimum_equals_the_best_vertex(inst in small(3)) {
        let vertices = enumerate_representations(&inst, usize::MAX).unwrap();
        prop_assert!(!vertices.is_empty());
        prop_assert!(vertices.iter().all(|v| represents(&inst, v)));
        let solver = PolytopeSolver::new(&inst).unwrap();
        for s in TypeSpace::new(&inst, 100).unwrap().types() {
            for target in [Target::UpSet(s.clone()), Target::DownSet(s)] {
                for sense in [Sense::Max, Sense::Min] {
                    let lp = solver.extremal(&target, sense).unwrap();
                    prop_assert!(lp.verify(solver.spec(), &target, sense));
                    prop_assert!(represents(&inst, &lp.argmax));
                    let masses = vertices.iter().map(|v| target.mass(v));
                    let brute = match sense {
                        Sense::Max => masses.max(),
                        Sense::Min => masses.min(),
                    };
                    prop_assert_eq!(brute, Some(lp.optimum));
                }
            }
        }
    }

    #[test]
    fn comonotone_representation_is_extremal(inst in common::arbitrary(4, 3), seed in any::<u64>()) {
        let samples = sample_types(&inst, 6, seed).unwrap();
        let report = verify_prop1(&inst, &samples).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures);
        prop_assert_eq!(report.checked, 2 * samples.len());
    }

    #[test]
    fn down_set_maximum_is_the_smallest_cumulative(inst in common::arbitrary(4, 3), seed in any::<u64>()) {
        for s in sample_types(&inst, 4, seed).unwrap() {
            let best = extremal_mass(&inst, &Target::DownSet(s.clone()), Sense::Max).unwrap();
            let smallest = s.0.iter().enumerate().map(|(i, &a)| inst.cumulative(i, a).unwrap().clone()).min().unwrap();
            prop_assert_eq!(best.optimum, smallest);
        }
    }

    #[test]
    fn identity_pins_the_representation(inst in small(3)) {
        for spec in [CopulaSpec::Min, CopulaSpec::FhLower] {
            let target = copula_cdf(&inst, &spec);
            let result = identify(&spec, &inst).unwrap();
            for v in enumerate_representations(&inst, usize::MAX).unwrap() {
                if cdf(&inst, &v) == target {
                    prop_assert_eq!(result.distribution(), Some(&v));
                }
            }
        }
    }

    #[test]
    fn identified_supports_are_feasible_supports(inst in common::arbitrary(3, 3)) {
        for spec in [CopulaSpec::Min, CopulaSpec::FhLower, CopulaSpec::Independent] {
            if let Some(pi) = identify(&spec, &inst).unwrap().distribution() {
                let support: Vec<_> = pi.support().cloned().collect();
                let found = feasible_on_support(&inst, &support).unwrap();
                prop_assert!(found.is_some_and(|f| represents(&inst, &f)));
            }
        }
    }
}

#[test]
fn two_menu_example_extremal_values() {
    let inst = two_menu_example();
    let yy = inst.choice_type(&["y", "y'"]).unwrap();
    let up = extremal_mass(&inst, &Target::UpSet(yy.clone()), Sense::Max).unwrap();
    assert_eq!(up.optimum, Target::UpSet(yy.clone()).mass(&identify_min(&inst)));
    assert_eq!(up.optimum, ratio(3, 5));
    let down = extremal_mass(&inst, &Target::DownSet(yy.clone()), Sense::Max).unwrap();
    assert_eq!(down.optimum, ratio(1, 2));
    let low = extremal_mass(&inst, &Target::DownSet(yy), Sense::Min).unwrap();
    let w = identify(&CopulaSpec::FhLower, &inst).unwrap();
    assert!(low.optimum <= Target::DownSet(inst.choice_type(&["y", "y'"]).unwrap()).mass(w.distribution().unwrap()));
    assert_eq!(low.optimum, ratio(1, 4));
}

#[test]
fn vertex_enumeration_refuses_large_spaces() {
    let inst = common::instance(vec![4, 4], None, 1, ordchoice::verify::GenMode::Arbitrary);
    assert_eq!(
        enumerate_representations(&inst, usize::MAX).unwrap_err().code(),
        "E_TOO_LARGE"
    );
}
