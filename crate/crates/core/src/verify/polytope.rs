//! The set of all representations of an instance as a polytope, and linear
//! functionals over it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::simplex::{certify_max, FeasibleBasis, LpSolution};
use crate::error::{Error, Result};
use crate::model::{Alt, ChoiceType, Instance, TypeDistribution, TypeSpace, DEFAULT_TYPE_CAP};
use crate::rational::Rational;

/// `Σ_{s : s_i = x} π(s) = ρ_i(x)` for one menu and alternative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    /// Zero-based menu index.
    pub menu: usize,
    pub alt: Alt,
    /// Indices into [`PolytopeSpec::variables`] with coefficient 1.
    pub variables: Vec<usize>,
    pub rhs: Rational,
}

/// One non-negative variable per type, one equality per menu element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSpec {
    /// In canonical order.
    pub variables: Vec<ChoiceType>,
    pub equalities: Vec<Equality>,
}

impl PolytopeSpec {
    /// Dense `(A, b)`.
    pub fn dense(&self) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let n = self.variables.len();
        let a = self
            .equalities
            .iter()
            .map(|e| {
                let mut row = vec![Rational::zero(); n];
                for &k in &e.variables {
                    row[k] = Rational::one();
                }
                row
            })
            .collect();
        let b = self.equalities.iter().map(|e| e.rhs.clone()).collect();
        (a, b)
    }

    /// Whether `x` (indexed like `variables`) satisfies every constraint.
    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.variables.len()
            && x.iter().all(|v| *v >= Rational::zero())
            && self
                .equalities
                .iter()
                .all(|e| e.variables.iter().map(|&k| &x[k]).sum::<Rational>() == e.rhs)
    }

    pub(crate) fn distribution(&self, x: &[Rational]) -> TypeDistribution {
        let mass: BTreeMap<ChoiceType, Rational> = self
            .variables
            .iter()
            .zip(x)
            .filter(|(_, v)| !v.is_zero())
            .map(|(t, v)| (t.clone(), v.clone()))
            .collect();
        TypeDistribution::new(mass).expect("feasible points are distributions")
    }
}

pub fn build_polytope(instance: &Instance) -> Result<PolytopeSpec> {
    let space = TypeSpace::new(instance, DEFAULT_TYPE_CAP)?;
    let variables: Vec<ChoiceType> = space.types().collect();
    let mut equalities = Vec::new();
    for (i, menu) in instance.menus().iter().enumerate() {
        for (p, (&alt, rho)) in menu.elements().iter().zip(menu.masses()).enumerate() {
            equalities.push(Equality {
                menu: i,
                alt,
                variables: (0..space.len()).filter(|&k| space.digit(k, i) == p).collect(),
                rhs: rho.clone(),
            });
        }
    }
    Ok(PolytopeSpec { variables, equalities })
}

/// A set of types whose total mass is optimised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// `{t : t ⊵ s}`.
    UpSet(ChoiceType),
    /// `{t : s ⊵ t}`.
    DownSet(ChoiceType),
}

impl Target {
    pub fn contains(&self, t: &ChoiceType) -> bool {
        match self {
            Target::UpSet(s) => t.dominates(s),
            Target::DownSet(s) => s.dominates(t),
        }
    }

    pub fn mass(&self, pi: &TypeDistribution) -> Rational {
        match self {
            Target::UpSet(s) => pi.up_set_mass(s),
            Target::DownSet(s) => pi.down_set_mass(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// Basis and dual values proving optimality.
///
/// For `Max` the duals satisfy `Aᵀy ≥ c`, for `Min` they satisfy `Aᵀy ≤ c`;
/// in both cases `b · y` equals the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub basis: Vec<ChoiceType>,
    /// One value per equality.
    pub duals: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub optimum: Rational,
    /// An optimal representation.
    pub argmax: TypeDistribution,
    pub certificate: Certificate,
}

impl ExtremalResult {
    /// Re-checks feasibility, dual feasibility and the zero duality gap by
    /// substitution.
    pub fn verify(&self, polytope: &PolytopeSpec, target: &Target, sense: Sense) -> bool {
        let x: Vec<Rational> = polytope.variables.iter().map(|t| self.argmax.mass(t)).collect();
        if !polytope.contains(&x) {
            return false;
        }
        let c: Vec<Rational> = polytope.variables.iter().map(|t| indicator(target.contains(t))).collect();
        let cx: Rational = c.iter().zip(&x).map(|(p, q)| p * q).sum();
        let by: Rational = polytope
            .equalities
            .iter()
            .zip(&self.certificate.duals)
            .map(|(e, y)| &e.rhs * y)
            .sum();
        let dual_ok = polytope.variables.iter().enumerate().all(|(k, _)| {
            let aty: Rational = polytope
                .equalities
                .iter()
                .zip(&self.certificate.duals)
                .filter(|(e, _)| e.variables.binary_search(&k).is_ok())
                .map(|(_, y)| y)
                .sum();
            match sense {
                Sense::Max => aty >= c[k],
                Sense::Min => aty <= c[k],
            }
        });
        dual_ok && cx == self.optimum && by == self.optimum
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// A polytope with a feasible basis computed once, for repeated solves.
#[derive(Debug, Clone)]
pub struct PolytopeSolver {
    spec: PolytopeSpec,
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    start: FeasibleBasis,
}

impl PolytopeSolver {
    pub fn new(instance: &Instance) -> Result<Self> {
        let spec = build_polytope(instance)?;
        let (a, b) = spec.dense();
        let start = FeasibleBasis::new(&a, &b)?
            .ok_or_else(|| Error::Lp("representation polytope is empty".into()))?;
        Ok(PolytopeSolver { spec, a, b, start })
    }

    pub fn spec(&self) -> &PolytopeSpec {
        &self.spec
    }

    /// Optimises the mass of `target`; the certificate is re-checked before
    /// returning.
    pub fn extremal(&self, target: &Target, sense: Sense) -> Result<ExtremalResult> {
        let sign = match sense {
            Sense::Max => Rational::one(),
            Sense::Min => -Rational::one(),
        };
        let c: Vec<Rational> = self
            .spec
            .variables
            .iter()
            .map(|t| indicator(target.contains(t)) * &sign)
            .collect();
        let sol: LpSolution = self.start.maximize(&c)?;
        if !certify_max(&self.a, &self.b, &c, &sol) {
            return Err(Error::Lp("optimality certificate failed".into()));
        }
        let result = ExtremalResult {
            optimum: &sol.value * &sign,
            argmax: self.spec.distribution(&sol.x),
            certificate: Certificate {
                basis: sol.basis.iter().map(|&k| self.spec.variables[k].clone()).collect(),
                duals: sol.duals.iter().map(|y| y * &sign).collect(),
            },
        };
        Ok(result)
    }
}

/// Optimal mass of `target` over all representations of `instance`.
pub fn extremal_mass(instance: &Instance, target: &Target, sense: Sense) -> Result<ExtremalResult> {
    PolytopeSolver::new(instance)?.extremal(target, sense)
}

/// A representation supported on `types`, if one exists.
pub fn feasible_on_support(instance: &Instance, types: &[ChoiceType]) -> Result<Option<TypeDistribution>> {
    for t in types {
        instance.check_type(t)?;
    }
    let mut cols: Vec<ChoiceType> = types.to_vec();
    cols.sort();
    cols.dedup();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, menu) in instance.menus().iter().enumerate() {
        for (&alt, rho) in menu.elements().iter().zip(menu.masses()) {
            a.push(cols.iter().map(|t| indicator(t.0[i] == alt)).collect::<Vec<_>>());
            b.push(rho.clone());
        }
    }
    let Some(start) = FeasibleBasis::new(&a, &b)? else {
        return Ok(None);
    };
    let sol = start.maximize(&vec![Rational::zero(); cols.len()])?;
    let pi = TypeDistribution::new(cols.into_iter().zip(sol.x))?;
    Ok(Some(pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_menu_example;
    use crate::identify::identify_min;
    use crate::rational::ratio;

    #[test]
    fn two_menu_example_polytope_shape() {
        let p = build_polytope(&two_menu_example()).unwrap();
        assert_eq!(p.variables.len(), 9);
        assert_eq!(p.equalities.len(), 6);
    }

    #[test]
    fn two_menu_example_extremal_values() {
        let inst = two_menu_example();
        let solver = PolytopeSolver::new(&inst).unwrap();
        let zz = inst.choice_type(&["z", "z'"]).unwrap();
        let xx = inst.choice_type(&["x", "x'"]).unwrap();
        let down = Target::DownSet(zz);
        let r = solver.extremal(&down, Sense::Max).unwrap();
        assert_eq!(r.optimum, ratio(1, 5));
        assert!(r.verify(solver.spec(), &down, Sense::Max));
        let up = Target::UpSet(xx);
        let r = solver.extremal(&up, Sense::Max).unwrap();
        assert_eq!(r.optimum, ratio(1, 4));
        assert_eq!(up.mass(&identify_min(&inst)), ratio(1, 4));
        let r = solver.extremal(&up, Sense::Min).unwrap();
        assert_eq!(r.optimum, ratio(0, 1));
        assert!(r.verify(solver.spec(), &up, Sense::Min));
    }

    #[test]
    fn restricted_support() {
        let inst = two_menu_example();
        let m: Vec<_> = identify_min(&inst).support().cloned().collect();
        assert_eq!(feasible_on_support(&inst, &m).unwrap(), Some(identify_min(&inst)));
        assert_eq!(feasible_on_support(&inst, &m[..3]).unwrap(), None);
    }
}
