//! Instances of ordered probabilistic choice.
//!
//! An [`Instance`] bundles a strict reference order over alternatives, a
//! family of menus (choice sets) and, for each menu, the probability of every
//! element being chosen. Cumulative choice probabilities are computed once at
//! construction.
//!
//! Alternatives are interned as [`Alt`] values whose ordering *is* the
//! reference order: `a > b` exactly when `a` is ranked above `b`. Menus keep
//! their elements sorted worst-first, which makes cumulative values plain
//! prefix sums and makes the derived lexicographic order on [`ChoiceType`] a
//! linear extension of dominance.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

/// Default cap on the number of choice types an enumerating operation accepts.
pub const DEFAULT_TYPE_CAP: usize = 100_000;

/// An alternative, stored as its rank in the reference order (0 = best).
///
/// `Ord` follows the reference order, so `a > b` iff `a` ⊳ `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alt(u32);

impl Alt {
    pub fn rank(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_rank(rank: usize) -> Self {
        Alt(rank as u32)
    }
}

impl Ord for Alt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Alt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A strict total order over alternative identifiers, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceOrder {
    names: Vec<String>,
    lookup: HashMap<String, Alt>,
}

impl ReferenceOrder {
    /// Builds the order from identifiers listed best first. Repeated or empty
    /// identifiers are rejected: ties are not broken silently.
    pub fn new<S: Into<String>>(ranked: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = ranked.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidOrder("no alternatives".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (rank, name) in names.iter().enumerate() {
            if name.trim().is_empty() {
                return Err(Error::InvalidOrder(format!("empty identifier at position {rank}")));
            }
            if lookup.insert(name.clone(), Alt::from_rank(rank)).is_some() {
                return Err(Error::InvalidOrder(format!("`{name}` is ranked twice")));
            }
        }
        Ok(ReferenceOrder { names, lookup })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn alt(&self, name: &str) -> Option<Alt> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, alt: Alt) -> &str {
        &self.names[alt.rank()]
    }

    /// Identifiers, best first.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The inverse order: the worst alternative becomes the best.
    pub fn reversed(&self) -> ReferenceOrder {
        ReferenceOrder::new(self.names.iter().rev().cloned()).expect("reversal keeps distinct names")
    }

    fn flip(&self, alt: Alt) -> Alt {
        Alt::from_rank(self.names.len() - 1 - alt.rank())
    }
}

/// One choice set together with its choice probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Menu {
    /// Sorted worst first.
    elements: Vec<Alt>,
    mass: Vec<Rational>,
    cumulative: Vec<Rational>,
}

impl Menu {
    fn new(mut pairs: Vec<(Alt, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let (elements, mass): (Vec<Alt>, Vec<Rational>) = pairs.into_iter().unzip();
        let mut running = Rational::zero();
        let cumulative = mass
            .iter()
            .map(|m| {
                running += m;
                running.clone()
            })
            .collect();
        Menu {
            elements,
            mass,
            cumulative,
        }
    }

    /// Elements, worst first.
    pub fn elements(&self) -> &[Alt] {
        &self.elements
    }

    /// Choice probabilities aligned with [`Menu::elements`].
    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    /// Cumulative choice probabilities aligned with [`Menu::elements`].
    pub fn cumulative(&self) -> &[Rational] {
        &self.cumulative
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Position of `alt` in worst-first order.
    pub fn position(&self, alt: Alt) -> Option<usize> {
        self.elements.binary_search(&alt).ok()
    }

    pub fn contains(&self, alt: Alt) -> bool {
        self.position(alt).is_some()
    }

    pub fn best(&self) -> Alt {
        *self.elements.last().expect("menus are non-empty")
    }

    pub fn worst(&self) -> Alt {
        self.elements[0]
    }

    pub fn mass_of(&self, alt: Alt) -> Option<&Rational> {
        self.position(alt).map(|p| &self.mass[p])
    }

    /// Best element chosen with positive probability.
    pub fn support_best(&self) -> Alt {
        let p = self.mass.iter().rposition(|m| m.is_positive()).expect("masses sum to one");
        self.elements[p]
    }

    /// Worst element chosen with positive probability.
    pub fn support_worst(&self) -> Alt {
        let p = self.mass.iter().position(|m| m.is_positive()).expect("masses sum to one");
        self.elements[p]
    }

    /// True when a single element carries all the mass.
    pub fn is_degenerate(&self) -> bool {
        self.mass.iter().any(|m| m.is_one())
    }
}

/// Input form of a menu for [`build_instance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenuSpec {
    /// One-based menu index.
    pub index: usize,
    pub elements: Vec<String>,
    /// Choice probabilities by identifier. Elements without an entry get mass 0.
    pub masses: BTreeMap<String, Rational>,
}

/// Per-menu choice probabilities aligned with each menu's worst-first elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcf(pub Vec<Vec<Rational>>);

/// A validated, immutable instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    order: ReferenceOrder,
    menus: Vec<Menu>,
}

/// Validates and assembles an instance.
///
/// Menu indices must be exactly `1..=n` (in any order), every menu element
/// must be ranked, masses must be non-negative and sum to one per menu.
pub fn build_instance(order: ReferenceOrder, menus: Vec<MenuSpec>) -> Result<Instance> {
    let n = menus.len();
    if n == 0 {
        return Err(Error::InvalidMenu {
            menu: 0,
            reason: "instance has no menus".into(),
        });
    }
    let mut slots: Vec<Option<Menu>> = vec![None; n];
    for (pos, spec) in menus.into_iter().enumerate() {
        if spec.index == 0 || spec.index > n {
            return Err(Error::InvalidMenu {
                menu: pos,
                reason: format!("index {} outside 1..={n}", spec.index),
            });
        }
        let i = spec.index - 1;
        if slots[i].is_some() {
            return Err(Error::InvalidMenu {
                menu: i,
                reason: format!("duplicate menu index {}", spec.index),
            });
        }
        slots[i] = Some(build_menu(&order, i, spec)?);
    }
    Ok(Instance {
        order,
        menus: slots.into_iter().map(|m| m.expect("all indices filled")).collect(),
    })
}

fn build_menu(order: &ReferenceOrder, i: usize, spec: MenuSpec) -> Result<Menu> {
    if spec.elements.is_empty() {
        return Err(Error::InvalidMenu {
            menu: i,
            reason: "menu is empty".into(),
        });
    }
    let mut pairs = Vec::with_capacity(spec.elements.len());
    for name in &spec.elements {
        let alt = order.alt(name).ok_or_else(|| Error::UnknownAlternative {
            name: name.clone(),
            menu: Some(i),
        })?;
        if pairs.iter().any(|(a, _)| *a == alt) {
            return Err(Error::InvalidMenu {
                menu: i,
                reason: format!("`{name}` listed twice"),
            });
        }
        let mass = spec.masses.get(name).cloned().unwrap_or_else(Rational::zero);
        if mass.is_negative() {
            return Err(Error::InvalidMass {
                menu: i,
                reason: format!("negative mass {mass} on `{name}`"),
            });
        }
        pairs.push((alt, mass));
    }
    if let Some(stray) = spec.masses.keys().find(|k| !spec.elements.contains(k)) {
        return Err(Error::UnknownAlternative {
            name: stray.clone(),
            menu: Some(i),
        });
    }
    let total: Rational = pairs.iter().map(|(_, m)| m).sum();
    if !total.is_one() {
        return Err(Error::InvalidMass {
            menu: i,
            reason: format!("masses sum to {total}, not 1"),
        });
    }
    Ok(Menu::new(pairs))
}

impl Instance {
    /// Compact constructor: `order` best first, and per menu the
    /// `(identifier, mass)` pairs with masses as decimal or `a/b` strings.
    pub fn from_strs(order: &[&str], menus: &[&[(&str, &str)]]) -> Result<Instance> {
        let order = ReferenceOrder::new(order.iter().copied())?;
        let specs = menus
            .iter()
            .enumerate()
            .map(|(i, pairs)| {
                let mut masses = BTreeMap::new();
                for (name, mass) in pairs.iter() {
                    masses.insert(name.to_string(), parse_rational(mass)?);
                }
                Ok(MenuSpec {
                    index: i + 1,
                    elements: pairs.iter().map(|(name, _)| name.to_string()).collect(),
                    masses,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        build_instance(order, specs)
    }

    pub fn order(&self) -> &ReferenceOrder {
        &self.order
    }

    pub fn menus(&self) -> &[Menu] {
        &self.menus
    }

    pub fn menu(&self, i: usize) -> &Menu {
        &self.menus[i]
    }

    /// Number of menus.
    pub fn n(&self) -> usize {
        self.menus.len()
    }

    pub fn alt(&self, name: &str) -> Option<Alt> {
        self.order.alt(name)
    }

    pub fn name(&self, alt: Alt) -> &str {
        self.order.name(alt)
    }

    pub fn pcf(&self) -> Pcf {
        Pcf(self.menus.iter().map(|m| m.mass.clone()).collect())
    }

    /// `ρ_i(x)`.
    pub fn rho(&self, i: usize, alt: Alt) -> Result<&Rational> {
        self.menus[i].mass_of(alt).ok_or_else(|| self.unknown(i, alt))
    }

    /// Cumulative choice probability `P_i(x)`: the mass on elements of menu
    /// `i` that are weakly worse than `x`.
    pub fn cumulative(&self, i: usize, alt: Alt) -> Result<&Rational> {
        let menu = &self.menus[i];
        menu.position(alt).map(|p| &menu.cumulative[p]).ok_or_else(|| self.unknown(i, alt))
    }

    fn unknown(&self, i: usize, alt: Alt) -> Error {
        Error::UnknownAlternative {
            name: self.order.name(alt).to_string(),
            menu: Some(i),
        }
    }

    /// `Π |S_i|`, saturating.
    pub fn type_count(&self) -> u128 {
        self.menus
            .iter()
            .fold(1u128, |acc, m| acc.saturating_mul(m.len() as u128))
    }

    /// The type choosing every menu's best element.
    pub fn best_type(&self) -> ChoiceType {
        ChoiceType(self.menus.iter().map(Menu::best).collect())
    }

    /// The type choosing every menu's worst element.
    pub fn worst_type(&self) -> ChoiceType {
        ChoiceType(self.menus.iter().map(Menu::worst).collect())
    }

    /// Per menu, the best element with positive probability.
    pub fn support_best_type(&self) -> ChoiceType {
        ChoiceType(self.menus.iter().map(Menu::support_best).collect())
    }

    /// Per menu, the worst element with positive probability.
    pub fn support_worst_type(&self) -> ChoiceType {
        ChoiceType(self.menus.iter().map(Menu::support_worst).collect())
    }

    /// Checks that `s` selects one element of each menu.
    pub fn check_type(&self, s: &ChoiceType) -> Result<()> {
        if s.len() != self.n() {
            return Err(Error::InvalidType(format!(
                "type has {} selections, instance has {} menus",
                s.len(),
                self.n()
            )));
        }
        for (i, (alt, menu)) in s.0.iter().zip(&self.menus).enumerate() {
            if !menu.contains(*alt) {
                return Err(Error::InvalidType(format!(
                    "`{}` is not in menu {}",
                    self.order.name(*alt),
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Builds a type from identifiers, one per menu.
    pub fn choice_type(&self, names: &[&str]) -> Result<ChoiceType> {
        let alts = names
            .iter()
            .map(|name| {
                self.alt(name).ok_or_else(|| Error::UnknownAlternative {
                    name: name.to_string(),
                    menu: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let s = ChoiceType(alts);
        self.check_type(&s)?;
        Ok(s)
    }

    pub fn format_type(&self, s: &ChoiceType) -> String {
        let names: Vec<&str> = s.0.iter().map(|a| self.order.name(*a)).collect();
        format!("[{}]", names.join(","))
    }

    /// The same data under the inverse reference order.
    pub fn reversed(&self) -> Instance {
        Instance {
            order: self.order.reversed(),
            menus: self
                .menus
                .iter()
                .map(|m| {
                    Menu::new(
                        m.elements
                            .iter()
                            .zip(&m.mass)
                            .map(|(a, p)| (self.order.flip(*a), p.clone()))
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// Maps a type of this instance to the same selections in [`Instance::reversed`].
    pub fn reverse_type(&self, s: &ChoiceType) -> ChoiceType {
        ChoiceType(s.0.iter().map(|a| self.order.flip(*a)).collect())
    }

    /// Instance with the same menus but a different pcf.
    pub fn with_pcf(&self, pcf: &Pcf) -> Result<Instance> {
        if pcf.0.len() != self.n() {
            return Err(Error::ArityMismatch {
                expected: self.n(),
                got: pcf.0.len(),
            });
        }
        let menus = self
            .menus
            .iter()
            .zip(&pcf.0)
            .enumerate()
            .map(|(i, (m, masses))| {
                if masses.len() != m.len() || masses.iter().any(|p| p.is_negative()) {
                    return Err(Error::InvalidMass {
                        menu: i,
                        reason: "mass vector does not fit the menu".into(),
                    });
                }
                let total: Rational = masses.iter().sum();
                if !total.is_one() {
                    return Err(Error::InvalidMass {
                        menu: i,
                        reason: format!("masses sum to {total}, not 1"),
                    });
                }
                Ok(Menu::new(m.elements.iter().copied().zip(masses.iter().cloned()).collect()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Instance {
            order: self.order.clone(),
            menus,
        })
    }
}

/// One selection per menu.
///
/// The derived `Ord` is lexicographic by menu index with each coordinate
/// compared along the reference order, worst first. It extends dominance:
/// `s ⊵ t` implies `s >= t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChoiceType(pub Vec<Alt>);

impl ChoiceType {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn selections(&self) -> &[Alt] {
        &self.0
    }

    /// `self ⊵ other`: weakly better in every menu.
    pub fn dominates(&self, other: &ChoiceType) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Strictly better in every menu.
    pub fn strictly_dominates(&self, other: &ChoiceType) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a > b)
    }

    /// Componentwise better choices.
    pub fn join(&self, other: &ChoiceType) -> ChoiceType {
        ChoiceType(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise worse choices.
    pub fn meet(&self, other: &ChoiceType) -> ChoiceType {
        ChoiceType(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Menus (zero-based) where the two types differ.
    pub fn differing(&self, other: &ChoiceType) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != other.0[i]).collect()
    }
}

impl fmt::Display for ChoiceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks: Vec<String> = self.0.iter().map(|a| a.rank().to_string()).collect();
        write!(f, "[{}]", ranks.join(","))
    }
}

/// `s ⊵ t`.
pub fn dominates(s: &ChoiceType, t: &ChoiceType) -> bool {
    s.dominates(t)
}

/// `s_i ⊳ t_i` for every menu.
pub fn strict_dominates(s: &ChoiceType, t: &ChoiceType) -> bool {
    s.strictly_dominates(t)
}

/// A probability distribution over choice types, stored sparsely.
///
/// Only positive masses are kept and the total is exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TypeDistribution {
    mass: BTreeMap<ChoiceType, Rational>,
}

impl TypeDistribution {
    /// Collects `(type, mass)` entries, summing repeats and dropping zeros.
    pub fn new(entries: impl IntoIterator<Item = (ChoiceType, Rational)>) -> Result<Self> {
        let mut mass: BTreeMap<ChoiceType, Rational> = BTreeMap::new();
        for (t, m) in entries {
            if m.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative mass {m} on {t}")));
            }
            *mass.entry(t).or_insert_with(Rational::zero) += m;
        }
        mass.retain(|_, m| m.is_positive());
        let total: Rational = mass.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("total mass is {total}")));
        }
        Ok(TypeDistribution { mass })
    }

    pub(crate) fn from_positive(mass: BTreeMap<ChoiceType, Rational>) -> Self {
        debug_assert!(mass.values().all(|m| m.is_positive()));
        TypeDistribution { mass }
    }

    pub fn point_mass(t: ChoiceType) -> Self {
        TypeDistribution {
            mass: BTreeMap::from([(t, Rational::one())]),
        }
    }

    /// Support in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&ChoiceType, &Rational)> {
        self.mass.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ChoiceType> {
        self.mass.keys()
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self, t: &ChoiceType) -> Rational {
        self.mass.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, t: &ChoiceType) -> bool {
        self.mass.contains_key(t)
    }

    /// Mass of `{t : s ⊵ t}`, the multivariate CDF at `s`.
    pub fn down_set_mass(&self, s: &ChoiceType) -> Rational {
        self.mass.iter().filter(|(t, _)| s.dominates(t)).map(|(_, m)| m).sum()
    }

    /// Mass of `{t : t ⊵ s}`.
    pub fn up_set_mass(&self, s: &ChoiceType) -> Rational {
        self.mass.iter().filter(|(t, _)| t.dominates(s)).map(|(_, m)| m).sum()
    }

    /// Checks that every support type belongs to the instance's type space.
    pub fn check_against(&self, instance: &Instance) -> Result<()> {
        self.mass.keys().try_for_each(|t| instance.check_type(t))
    }

    /// Image under [`Instance::reverse_type`].
    pub fn reversed(&self, instance: &Instance) -> TypeDistribution {
        TypeDistribution {
            mass: self
                .mass
                .iter()
                .map(|(t, m)| (instance.reverse_type(t), m.clone()))
                .collect(),
        }
    }
}

/// Per-menu marginals of `pi`: `ρ_i(x) = Σ_{s : s_i = x} π(s)`.
pub fn aggregate(instance: &Instance, pi: &TypeDistribution) -> Result<Pcf> {
    pi.check_against(instance)?;
    let mut pcf: Vec<Vec<Rational>> = instance
        .menus
        .iter()
        .map(|m| vec![Rational::zero(); m.len()])
        .collect();
    for (t, m) in pi.iter() {
        for (i, alt) in t.0.iter().enumerate() {
            let p = instance.menus[i].position(*alt).expect("checked above");
            pcf[i][p] += m;
        }
    }
    Ok(Pcf(pcf))
}

/// Whether `pi` reproduces the instance's choice probabilities exactly.
pub fn represents(instance: &Instance, pi: &TypeDistribution) -> bool {
    aggregate(instance, pi).is_ok_and(|pcf| pcf == instance.pcf())
}

/// Mixed-radix enumeration of the full type space.
///
/// Index 0 is the worst type; coordinate 0 is the most significant digit, so
/// index order coincides with the canonical order on [`ChoiceType`].
#[derive(Debug, Clone)]
pub struct TypeSpace<'a> {
    instance: &'a Instance,
    radices: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl<'a> TypeSpace<'a> {
    pub fn new(instance: &'a Instance, cap: usize) -> Result<Self> {
        let count = instance.type_count();
        if count > cap as u128 {
            return Err(Error::TooLarge {
                types: count,
                cap: cap as u128,
            });
        }
        let radices: Vec<usize> = instance.menus.iter().map(Menu::len).collect();
        let mut strides = vec![1usize; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radices[i + 1];
        }
        Ok(TypeSpace {
            instance,
            radices,
            strides,
            size: count as usize,
        })
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Worst-first position of the selection in menu `axis`.
    pub fn digit(&self, index: usize, axis: usize) -> usize {
        (index / self.strides[axis]) % self.radices[axis]
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        (0..self.radices.len()).map(|axis| self.digit(index, axis)).collect()
    }

    pub fn index_of_digits(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn type_at(&self, index: usize) -> ChoiceType {
        ChoiceType(
            self.instance
                .menus
                .iter()
                .enumerate()
                .map(|(axis, m)| m.elements[self.digit(index, axis)])
                .collect(),
        )
    }

    pub fn digits_of(&self, s: &ChoiceType) -> Option<Vec<usize>> {
        if s.len() != self.radices.len() {
            return None;
        }
        s.0.iter()
            .zip(&self.instance.menus)
            .map(|(alt, m)| m.position(*alt))
            .collect()
    }

    pub fn index_of(&self, s: &ChoiceType) -> Option<usize> {
        self.digits_of(s).map(|d| self.index_of_digits(&d))
    }

    pub fn types(&self) -> impl Iterator<Item = ChoiceType> + '_ {
        (0..self.size).map(|i| self.type_at(i))
    }
}
