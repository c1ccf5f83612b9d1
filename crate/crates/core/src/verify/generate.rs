//! Seeded random instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{aggregate, build_instance, ChoiceType, Instance, MenuSpec, ReferenceOrder, TypeDistribution};
use crate::model::{Pcf, TypeSpace, DEFAULT_TYPE_CAP};
use crate::rational::Rational;
use std::collections::BTreeMap;

/// Menu sizes, drawn as subsets of a ground set of `ground` alternatives
/// named `a, b, c, …` and ranked in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceShape {
    pub menu_sizes: Vec<usize>,
    /// Defaults to the largest menu size.
    pub ground: Option<usize>,
}

impl InstanceShape {
    pub fn new(menu_sizes: Vec<usize>) -> Self {
        InstanceShape {
            menu_sizes,
            ground: None,
        }
    }

    /// `"3,3,2"` or `"3x4"` (four menus of size 3), optionally followed by
    /// `"/k"` for a ground set of `k` alternatives.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidDistribution(format!("shape `{text}`: {why}"));
        let (sizes, ground) = match text.split_once('/') {
            Some((s, g)) => (s, Some(g.trim().parse::<usize>().map_err(|_| bad("bad ground size"))?)),
            None => (text, None),
        };
        let menu_sizes = if let Some((size, count)) = sizes.split_once('x') {
            let size: usize = size.trim().parse().map_err(|_| bad("bad menu size"))?;
            let count: usize = count.trim().parse().map_err(|_| bad("bad menu count"))?;
            vec![size; count]
        } else {
            sizes
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad("bad menu size")))
                .collect::<Result<_>>()?
        };
        Ok(InstanceShape { menu_sizes, ground })
    }

    fn validate(&self) -> Result<usize> {
        let bad = |why: String| Error::InvalidDistribution(format!("shape: {why}"));
        if self.menu_sizes.is_empty() || self.menu_sizes.contains(&0) {
            return Err(bad("menus must be non-empty".into()));
        }
        let largest = *self.menu_sizes.iter().max().expect("non-empty");
        let ground = self.ground.unwrap_or(largest);
        if ground < largest {
            return Err(bad(format!("ground set of {ground} is smaller than a menu of {largest}")));
        }
        let count = self.menu_sizes.iter().fold(1u128, |a, &s| a.saturating_mul(s as u128));
        if count > DEFAULT_TYPE_CAP as u128 {
            return Err(Error::TooLarge {
                types: count,
                cap: DEFAULT_TYPE_CAP as u128,
            });
        }
        Ok(ground)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenMode {
    /// Independent random masses per menu.
    Arbitrary,
    /// Masses with total deficit from the best elements at most one.
    OneMistake,
    /// The aggregate of a random distribution over a dominance chain.
    ProgressiveSource,
    /// The aggregate of a random distribution over the given types, each a
    /// list of worst-first positions, one per menu.
    LatticeSource(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub instance: Instance,
    /// The generating distribution, for source modes.
    pub source: Option<TypeDistribution>,
}

/// Largest integer weight drawn per element or type.
const MAX_WEIGHT: u32 = 4;

fn label(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("a{k}")
    }
}

fn normalize(weights: &[u32], total: u32) -> Vec<Rational> {
    weights
        .iter()
        .map(|&w| Rational::new((w as i64).into(), (total as i64).into()))
        .collect()
}

pub fn gen_random(shape: &InstanceShape, seed: u64, mode: &GenMode) -> Result<Generated> {
    let ground = shape.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..ground).map(label).collect();
    let order = ReferenceOrder::new(names.iter().cloned())?;
    let specs: Vec<MenuSpec> = shape
        .menu_sizes
        .iter()
        .enumerate()
        .map(|(i, &size)| {
            let mut picked = sample(&mut rng, ground, size).into_vec();
            picked.sort_unstable();
            let elements: Vec<String> = picked.iter().map(|&k| names[k].clone()).collect();
            let best = elements[0].clone();
            MenuSpec {
                index: i + 1,
                elements,
                masses: BTreeMap::from([(best, Rational::from_integer(1.into()))]),
            }
        })
        .collect();
    let base = build_instance(order, specs)?;
    let sizes: Vec<usize> = base.menus().iter().map(|m| m.len()).collect();

    let (pcf, source) = match mode {
        GenMode::Arbitrary => {
            let pcf = sizes
                .iter()
                .map(|&s| {
                    let mut w: Vec<u32> = (0..s).map(|_| rng.random_range(0..=MAX_WEIGHT)).collect();
                    if w.iter().all(|&v| v == 0) {
                        w[rng.random_range(0..s)] = 1;
                    }
                    let total = w.iter().sum();
                    normalize(&w, total)
                })
                .collect();
            (Pcf(pcf), None)
        }
        GenMode::OneMistake => {
            // Worst-first, so the best element is last.
            let mistakes: Vec<Vec<u32>> = sizes
                .iter()
                .map(|&s| (0..s - 1).map(|_| rng.random_range(0..=MAX_WEIGHT)).collect())
                .collect();
            let mut slack = rng.random_range(0..=MAX_WEIGHT);
            let spent: u32 = mistakes.iter().flatten().sum();
            if spent + slack == 0 {
                slack = 1;
            }
            let total = spent + slack;
            let pcf = mistakes
                .iter()
                .map(|w| {
                    let mut masses = normalize(w, total);
                    let rest: Rational = Rational::from_integer(1.into()) - masses.iter().sum::<Rational>();
                    masses.push(rest);
                    masses
                })
                .collect();
            (Pcf(pcf), None)
        }
        GenMode::ProgressiveSource => {
            let mut digits = vec![0usize; sizes.len()];
            let mut chain = vec![digits.clone()];
            loop {
                let open: Vec<usize> = (0..sizes.len()).filter(|&i| digits[i] + 1 < sizes[i]).collect();
                if open.is_empty() || rng.random_range(0..4) == 0 {
                    break;
                }
                let i = open[rng.random_range(0..open.len())];
                digits[i] += rng.random_range(1..sizes[i] - digits[i]);
                chain.push(digits.clone());
            }
            source_pcf(&base, &chain, &mut rng)?
        }
        GenMode::LatticeSource(types) => {
            for t in types {
                if t.len() != sizes.len() || t.iter().zip(&sizes).any(|(d, s)| d >= s) {
                    return Err(Error::InvalidType(format!("positions {t:?} do not fit the shape")));
                }
            }
            if types.is_empty() {
                return Err(Error::InvalidType("empty source set".into()));
            }
            source_pcf(&base, types, &mut rng)?
        }
    };
    Ok(Generated {
        instance: base.with_pcf(&pcf)?,
        source,
    })
}

/// `k` distinct types drawn uniformly without replacement, in canonical
/// order. All types when `k` is at least the size of the type space.
pub fn sample_types(instance: &Instance, k: usize, seed: u64) -> Result<Vec<ChoiceType>> {
    let space = TypeSpace::new(instance, DEFAULT_TYPE_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, space.len(), k.min(space.len())).into_vec();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|i| space.type_at(i)).collect())
}

fn source_pcf(base: &Instance, positions: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Result<(Pcf, Option<TypeDistribution>)> {
    let mut w: Vec<u32> = positions.iter().map(|_| rng.random_range(0..=MAX_WEIGHT)).collect();
    if w.iter().all(|&v| v == 0) {
        let k = rng.random_range(0..w.len());
        w[k] = 1;
    }
    let total = w.iter().sum();
    let entries = positions.iter().zip(normalize(&w, total)).map(|(d, m)| {
        let t = ChoiceType(d.iter().enumerate().map(|(i, &p)| base.menu(i).elements()[p]).collect());
        (t, m)
    });
    let pi = TypeDistribution::new(entries)?;
    let pcf = aggregate(base, &pi)?;
    Ok((pcf, Some(pi)))
}
