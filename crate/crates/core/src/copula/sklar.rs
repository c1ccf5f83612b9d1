//! The grid subcopula of a representation.

use num_traits::Zero;

use super::axioms::{GridAxiomReport, GridFunction};
use crate::error::{Error, Result};
use crate::lattice::accumulate_in_place;
use crate::model::{represents, Instance, TypeDistribution, TypeSpace, DEFAULT_TYPE_CAP};
use crate::rational::Rational;

/// `C(P_1(s_1), …, P_n(s_n)) := F_π(s)` on `Range(P_1) × … × Range(P_n)`,
/// each range extended with 0, together with its axiom report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcopula {
    pub grid: GridFunction,
    pub report: GridAxiomReport,
}

pub fn subcopula_from_representation(instance: &Instance, pi: &TypeDistribution) -> Result<Subcopula> {
    if !represents(instance, pi) {
        return Err(Error::NotARepresentation(
            "marginals differ from the instance's choice probabilities".into(),
        ));
    }
    let space = TypeSpace::new(instance, DEFAULT_TYPE_CAP)?;
    let mut cdf = vec![Rational::zero(); space.len()];
    for (t, m) in pi.iter() {
        cdf[space.index_of(t).expect("checked by represents")] = m.clone();
    }
    accumulate_in_place(&mut cdf, space.radices(), space.strides());

    let axes: Vec<Vec<Rational>> = instance
        .menus()
        .iter()
        .map(|m| {
            let mut axis: Vec<Rational> = std::iter::once(Rational::zero())
                .chain(m.cumulative().iter().cloned())
                .collect();
            axis.dedup();
            axis
        })
        .collect();
    let positions: Vec<Vec<usize>> = instance
        .menus()
        .iter()
        .zip(&axes)
        .map(|(m, axis)| {
            m.cumulative()
                .iter()
                .map(|p| axis.binary_search(p).expect("axis holds every cumulative value"))
                .collect()
        })
        .collect();
    let radices: Vec<usize> = axes.iter().map(Vec::len).collect();
    let strides = crate::lattice::strides_for(&radices);
    let mut values = vec![Rational::zero(); radices.iter().product()];
    for (idx, value) in cdf.into_iter().enumerate() {
        let g: usize = (0..instance.n())
            .map(|axis| positions[axis][space.digit(idx, axis)] * strides[axis])
            .sum();
        values[g] = value;
    }
    let grid = GridFunction::from_parts(axes, values);
    let report = grid.axiom_report();
    Ok(Subcopula { grid, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::CopulaSpec;
    use crate::fixtures::two_menu_example;
    use crate::rational::ratio;
    use num_traits::One;

    fn row(inst: &Instance, entries: &[(&str, &str, (i64, i64))]) -> TypeDistribution {
        TypeDistribution::new(
            entries
                .iter()
                .map(|(a, b, (p, q))| (inst.choice_type(&[a, b]).unwrap(), ratio(*p, *q))),
        )
        .unwrap()
    }

    #[test]
    fn example_rows_recover_the_bounds() {
        let inst = two_menu_example();
        let m_row = row(
            &inst,
            &[("z", "z'", (1, 5)), ("y", "z'", (1, 5)), ("y", "y'", (1, 10)), ("x", "y'", (1, 4)), ("x", "x'", (1, 4))],
        );
        let w_row = row(
            &inst,
            &[("z", "x'", (1, 5)), ("y", "x'", (1, 20)), ("y", "y'", (1, 4)), ("x", "y'", (1, 10)), ("x", "z'", (2, 5))],
        );
        for (pi, spec) in [(m_row, CopulaSpec::Min), (w_row, CopulaSpec::FhLower)] {
            let sub = subcopula_from_representation(&inst, &pi).unwrap();
            assert_eq!(sub.grid.len(), 16);
            assert!(sub.report.is_copula());
            for idx in 0..sub.grid.len() {
                let u = sub.grid.point(idx);
                assert_eq!(sub.grid.values()[idx], spec.eval(&u).unwrap(), "{spec} at {u:?}");
            }
        }
    }

    #[test]
    fn point_mass_gives_a_zero_one_grid() {
        let inst = crate::fixtures::binary_menus(&["0", "0"]);
        let pi = TypeDistribution::point_mass(inst.best_type());
        let sub = subcopula_from_representation(&inst, &pi).unwrap();
        assert!(sub.grid.values().iter().all(|v| v.is_zero() || v.is_one()));
    }

    #[test]
    fn non_representations_are_rejected() {
        let inst = two_menu_example();
        let pi = TypeDistribution::point_mass(inst.best_type());
        assert!(matches!(
            subcopula_from_representation(&inst, &pi),
            Err(Error::NotARepresentation(_))
        ));
    }
}
