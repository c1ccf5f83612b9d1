//! JSON file formats.
//!
//! Probabilities are always strings holding an exact rational (`"7/20"`) or a
//! finite decimal (`"0.35"`); JSON numbers are rejected so no value passes
//! through floating point. Errors carry a machine-readable code and either a
//! line/column (syntax) or a path such as `rho[0].z` (validation).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::identify::{IdentificationResult, Obstruction, Outcome};
use crate::model::{build_instance, ChoiceType, Instance, MenuSpec, ReferenceOrder, TypeDistribution};
use crate::models::SupportDiagnostics;
use crate::rational::{format_decimal, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Position { line: usize, column: usize },
    Path(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Position { line, column } => write!(f, "line {line}, column {column}"),
            Location::Path(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{code} at {location}: {message}")]
pub struct FileError {
    pub code: &'static str,
    pub location: Location,
    pub message: String,
}

impl FileError {
    pub fn at(error: Error, path: impl Into<String>) -> Self {
        FileError {
            code: error.code(),
            location: Location::Path(path.into()),
            message: error.to_string(),
        }
    }

    fn syntax(err: serde_json::Error) -> Self {
        FileError {
            code: "E_PARSE",
            location: Location::Position {
                line: err.line(),
                column: err.column(),
            },
            message: err.to_string(),
        }
    }

    fn invalid(code: &'static str, path: impl Into<String>, message: impl Into<String>) -> Self {
        FileError {
            code,
            location: Location::Path(path.into()),
            message: message.into(),
        }
    }
}

pub type FileResult<T> = std::result::Result<T, FileError>;

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> FileResult<T> {
    serde_json::from_str(text).map_err(FileError::syntax)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

/// `{ "order": [...], "menus": [[...], ...], "rho": [{id: prob}, ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    /// Best first.
    pub order: Vec<String>,
    pub menus: Vec<Vec<String>>,
    /// One map per menu; elements without an entry get probability 0.
    pub rho: Vec<BTreeMap<String, String>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> FileResult<Self> {
        parse_json(text)
    }

    /// Canonical form: menus best first, every element listed in `rho`,
    /// probabilities as reduced fractions.
    pub fn from_instance(instance: &Instance) -> Self {
        let name = |a| instance.name(a).to_string();
        InstanceFile {
            order: instance.order().names().to_vec(),
            menus: instance
                .menus()
                .iter()
                .map(|m| m.elements().iter().rev().map(|&a| name(a)).collect())
                .collect(),
            rho: instance
                .menus()
                .iter()
                .map(|m| {
                    m.elements()
                        .iter()
                        .zip(m.masses())
                        .map(|(&a, p)| (name(a), p.to_string()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn to_instance(&self) -> FileResult<Instance> {
        let order = check_order(&self.order)?;
        check_menus(&order, &self.menus)?;
        if self.rho.len() != self.menus.len() {
            return Err(FileError::invalid(
                "E_INVALID_MENU",
                "rho",
                format!("{} probability maps for {} menus", self.rho.len(), self.menus.len()),
            ));
        }
        let mut specs = Vec::with_capacity(self.menus.len());
        for (i, (menu, rho)) in self.menus.iter().zip(&self.rho).enumerate() {
            let mut masses = BTreeMap::new();
            let mut total = Rational::zero();
            for (name, text) in rho {
                let path = format!("rho[{i}].{name}");
                if !menu.contains(name) {
                    return Err(FileError::at(
                        Error::UnknownAlternative {
                            name: name.clone(),
                            menu: Some(i),
                        },
                        path,
                    ));
                }
                let p = parse_rational(text).map_err(|e| FileError::at(e, &path))?;
                if p.is_negative() {
                    return Err(FileError::invalid("E_INVALID_MASS", path, format!("negative probability {p}")));
                }
                total += &p;
                masses.insert(name.clone(), p);
            }
            if !total.is_one() {
                return Err(FileError::invalid(
                    "E_INVALID_MASS",
                    format!("rho[{i}]"),
                    format!("probabilities sum to {total}, not 1"),
                ));
            }
            specs.push(MenuSpec {
                index: i + 1,
                elements: menu.clone(),
                masses,
            });
        }
        build_instance(order, specs).map_err(|e| FileError::at(e, "$"))
    }
}

fn check_order(order: &[String]) -> FileResult<ReferenceOrder> {
    for (k, name) in order.iter().enumerate() {
        if name.trim().is_empty() || order[..k].contains(name) {
            return Err(FileError::invalid(
                "E_INVALID_ORDER",
                format!("order[{k}]"),
                format!("`{name}` is empty or ranked twice"),
            ));
        }
    }
    ReferenceOrder::new(order.iter().cloned()).map_err(|e| FileError::at(e, "order"))
}

fn check_menus(order: &ReferenceOrder, menus: &[Vec<String>]) -> FileResult<()> {
    if menus.is_empty() {
        return Err(FileError::invalid("E_INVALID_MENU", "menus", "no menus"));
    }
    for (i, menu) in menus.iter().enumerate() {
        if menu.is_empty() {
            return Err(FileError::invalid("E_INVALID_MENU", format!("menus[{i}]"), "menu is empty"));
        }
        for (j, name) in menu.iter().enumerate() {
            let path = format!("menus[{i}][{j}]");
            if order.alt(name).is_none() {
                return Err(FileError::at(
                    Error::UnknownAlternative {
                        name: name.clone(),
                        menu: Some(i),
                    },
                    path,
                ));
            }
            if menu[..j].contains(name) {
                return Err(FileError::invalid("E_INVALID_MENU", path, format!("`{name}` listed twice")));
            }
        }
    }
    Ok(())
}

/// An instance over `order` and `menus` whose probabilities are placeholders,
/// for reading types before the data is known.
fn skeleton(order: &[String], menus: &[Vec<String>]) -> FileResult<Instance> {
    let order = check_order(order)?;
    check_menus(&order, menus)?;
    let specs = menus
        .iter()
        .enumerate()
        .map(|(i, m)| MenuSpec {
            index: i + 1,
            elements: m.clone(),
            masses: BTreeMap::from([(m[0].clone(), Rational::one())]),
        })
        .collect();
    build_instance(order, specs).map_err(|e| FileError::at(e, "$"))
}

fn read_type(instance: &Instance, names: &[String], path: &str) -> FileResult<ChoiceType> {
    if names.len() != instance.n() {
        return Err(FileError::invalid(
            "E_INVALID_TYPE",
            path,
            format!("{} selections for {} menus", names.len(), instance.n()),
        ));
    }
    let mut alts = Vec::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        let alt = instance
            .alt(name)
            .filter(|&a| instance.menu(i).contains(a))
            .ok_or_else(|| {
                FileError::invalid("E_INVALID_TYPE", format!("{path}[{i}]"), format!("`{name}` is not in menu {}", i + 1))
            })?;
        alts.push(alt);
    }
    Ok(ChoiceType(alts))
}

fn write_type(instance: &Instance, t: &ChoiceType) -> Vec<String> {
    t.selections().iter().map(|&a| instance.name(a).to_string()).collect()
}

/// `{ "type": [ids...], "mass": "a/b" }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportEntry {
    #[serde(rename = "type")]
    pub choice: Vec<String>,
    pub mass: String,
}

fn render(value: &Rational, decimals: Option<usize>) -> String {
    match decimals {
        Some(places) => format_decimal(value, places),
        None => value.to_string(),
    }
}

/// Support of a distribution, canonically sorted.
pub fn support_entries(instance: &Instance, pi: &TypeDistribution, decimals: Option<usize>) -> Vec<SupportEntry> {
    pi.iter()
        .map(|(t, m)| SupportEntry {
            choice: write_type(instance, t),
            mass: render(m, decimals),
        })
        .collect()
}

/// A distribution over types together with the menus it lives on. Result
/// files are accepted as well; their extra keys are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub order: Vec<String>,
    pub menus: Vec<Vec<String>>,
    pub support: Vec<SupportEntry>,
}

impl DistributionFile {
    pub fn parse(text: &str) -> FileResult<Self> {
        parse_json(text)
    }

    /// The menus as a placeholder instance and the distribution over them.
    pub fn read(&self) -> FileResult<(Instance, TypeDistribution)> {
        let inst = skeleton(&self.order, &self.menus)?;
        let mut entries = Vec::with_capacity(self.support.len());
        for (k, e) in self.support.iter().enumerate() {
            let t = read_type(&inst, &e.choice, &format!("support[{k}].type"))?;
            let m = parse_rational(&e.mass).map_err(|err| FileError::at(err, format!("support[{k}].mass")))?;
            if m.is_negative() {
                return Err(FileError::invalid(
                    "E_INVALID_DISTRIBUTION",
                    format!("support[{k}].mass"),
                    format!("negative mass {m}"),
                ));
            }
            entries.push((t, m));
        }
        let pi = TypeDistribution::new(entries).map_err(|e| FileError::at(e, "support"))?;
        Ok((inst, pi))
    }
}

/// `{ "order", "menus", "types": [[ids...], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypesFile {
    pub order: Vec<String>,
    pub menus: Vec<Vec<String>>,
    pub types: Vec<Vec<String>>,
}

impl TypesFile {
    pub fn parse(text: &str) -> FileResult<Self> {
        parse_json(text)
    }

    pub fn read(&self) -> FileResult<(Instance, Vec<ChoiceType>)> {
        let inst = skeleton(&self.order, &self.menus)?;
        let types = self
            .types
            .iter()
            .enumerate()
            .map(|(k, t)| read_type(&inst, t, &format!("types[{k}]")))
            .collect::<FileResult<_>>()?;
        Ok((inst, types))
    }
}

/// A grid file: one list of values per axis, e.g. `[["0","1/2","1"], ...]`.
pub fn parse_grid(text: &str) -> FileResult<Vec<Vec<Rational>>> {
    let raw: Vec<Vec<String>> = parse_json(text)?;
    raw.iter()
        .enumerate()
        .map(|(i, axis)| {
            axis.iter()
                .enumerate()
                .map(|(j, v)| parse_rational(v).map_err(|e| FileError::at(e, format!("[{i}][{j}]"))))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsBlock {
    pub types_enumerated: usize,
    pub support_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticsBlock {
    pub progressive: bool,
    pub antichain_ok: bool,
    pub two_diff_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antichain_witness: Option<[Vec<String>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_diff_witness: Option<[Vec<String>; 2]>,
}

impl DiagnosticsBlock {
    pub fn new(instance: &Instance, progressive: bool, d: &SupportDiagnostics) -> Self {
        let pair = |p: &Option<(ChoiceType, ChoiceType)>| {
            p.as_ref().map(|(a, b)| [write_type(instance, a), write_type(instance, b)])
        };
        DiagnosticsBlock {
            progressive,
            antichain_ok: d.antichain_ok,
            two_diff_ok: d.two_diff_ok,
            antichain_witness: pair(&d.antichain_witness),
            two_diff_witness: pair(&d.two_diff_witness),
        }
    }
}

/// Output of `identify`: the input echoed, the copula, the status and the
/// identified support or the obstruction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub order: Vec<String>,
    pub menus: Vec<Vec<String>>,
    pub rho: Vec<BTreeMap<String, String>>,
    /// Absent for constructions that use no copula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copula: Option<String>,
    pub method: String,
    /// `identified` or `not_identified`.
    pub status: String,
    pub support: Vec<SupportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<SupportEntry>,
    /// Total candidate mass when it differs from one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsBlock>,
}

impl ResultFile {
    pub fn identified(
        instance: &Instance,
        copula: Option<&str>,
        method: &str,
        pi: &TypeDistribution,
        decimals: Option<usize>,
    ) -> Self {
        let echo = InstanceFile::from_instance(instance);
        ResultFile {
            order: echo.order,
            menus: echo.menus,
            rho: echo.rho,
            copula: copula.map(str::to_string),
            method: method.to_string(),
            status: "identified".into(),
            support: support_entries(instance, pi, decimals),
            witness: None,
            total: None,
            stats: None,
            diagnostics: None,
        }
    }

    pub fn from_identification(
        instance: &Instance,
        copula: &str,
        result: &IdentificationResult,
        decimals: Option<usize>,
    ) -> Self {
        let stats = Some(StatsBlock {
            types_enumerated: result.stats.types_enumerated,
            support_size: result.stats.support_size,
        });
        match &result.outcome {
            Outcome::Identified(pi) => ResultFile {
                stats,
                ..ResultFile::identified(instance, Some(copula), "mobius", pi, decimals)
            },
            Outcome::NotIdentified(obstruction) => {
                let mut r = ResultFile::identified(instance, Some(copula), "mobius", &TypeDistribution::default(), decimals);
                r.status = "not_identified".into();
                r.stats = stats;
                match obstruction {
                    Obstruction::NegativeMass { witness, mass } => {
                        r.witness = Some(SupportEntry {
                            choice: write_type(instance, witness),
                            mass: render(mass, decimals),
                        });
                    }
                    Obstruction::DefectiveTotal { total } => r.total = Some(render(total, decimals)),
                }
                r
            }
        }
    }

    pub fn parse(text: &str) -> FileResult<Self> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::CopulaSpec;
    use crate::fixtures::two_menu_example;
    use crate::identify::identify;

    const TWO_MENUS: &str = r#"{
        "order": ["x", "y", "z", "x'", "y'", "z'"],
        "menus": [["x", "y", "z"], ["x'", "y'", "z'"]],
        "rho": [{"x": "0.50", "y": "0.30", "z": "0.20"}, {"x'": "0.25", "y'": "0.35", "z'": "0.40"}]
    }"#;

    #[test]
    fn instance_round_trip() {
        let f = InstanceFile::parse(TWO_MENUS).unwrap();
        let inst = f.to_instance().unwrap();
        assert_eq!(inst, two_menu_example());
        let canonical = InstanceFile::from_instance(&inst);
        assert_eq!(canonical.rho[1]["y'"], "7/20");
        let text = canonical.to_json();
        let again = InstanceFile::parse(&text).unwrap();
        assert_eq!(again, canonical);
        assert_eq!(again.to_instance().unwrap(), inst);
        assert_eq!(InstanceFile::from_instance(&again.to_instance().unwrap()).to_json(), text);
    }

    fn err(text: &str) -> FileError {
        InstanceFile::parse(text).and_then(|f| f.to_instance()).unwrap_err()
    }

    #[test]
    fn positioned_errors() {
        let e = err("{\n  \"order\": [\"x\",\n}");
        assert_eq!(e.code, "E_PARSE");
        assert!(matches!(e.location, Location::Position { line: 3, .. }));

        let e = err(r#"{"order":["x","y"],"menus":[["x","y"]],"rho":[{"x":"0.5","y":"0.4"}]}"#);
        assert_eq!((e.code, e.location), ("E_INVALID_MASS", Location::Path("rho[0]".into())));

        let e = err(r#"{"order":["x","y"],"menus":[["x","y"]],"rho":[{"x":"0.5","y":"half"}]}"#);
        assert_eq!((e.code, e.location), ("E_INVALID_RATIONAL", Location::Path("rho[0].y".into())));

        let e = err(r#"{"order":["x","y","x"],"menus":[["x"]],"rho":[{"x":"1"}]}"#);
        assert_eq!((e.code, e.location), ("E_INVALID_ORDER", Location::Path("order[2]".into())));

        let e = err(r#"{"order":["x"],"menus":[["x","q"]],"rho":[{"x":"1"}]}"#);
        assert_eq!((e.code, e.location), ("E_UNKNOWN_ALTERNATIVE", Location::Path("menus[0][1]".into())));

        let e = err(r#"{"order":["x"],"menus":[["x"]],"rho":[{"x":1}]}"#);
        assert_eq!(e.code, "E_PARSE");
        assert!(e.to_string().starts_with("E_PARSE at line 1"));
    }

    #[test]
    fn result_and_distribution_files() {
        let inst = two_menu_example();
        let r = identify(&CopulaSpec::Min, &inst).unwrap();
        let file = ResultFile::from_identification(&inst, "M", &r, None);
        assert_eq!(file.status, "identified");
        assert_eq!(file.support.len(), 5);
        assert_eq!(file.support[0].choice, vec!["z", "z'"]);
        let text = file.to_json();
        assert_eq!(ResultFile::parse(&text).unwrap(), file);
        let (skel, pi) = DistributionFile::parse(&text).unwrap().read().unwrap();
        assert_eq!(&pi, r.distribution().unwrap());
        assert_eq!(skel.order(), inst.order());
    }

    #[test]
    fn types_and_grids() {
        let f = TypesFile::parse(r#"{"order":["x","y"],"menus":[["x","y"],["y"]],"types":[["x","y"],["y","y"]]}"#).unwrap();
        let (_, types) = f.read().unwrap();
        assert_eq!(types.len(), 2);
        let bad = TypesFile::parse(r#"{"order":["x","y"],"menus":[["x","y"],["y"]],"types":[["x","x"]]}"#).unwrap();
        assert_eq!(bad.read().unwrap_err().location, Location::Path("types[0][1]".into()));
        let g = parse_grid(r#"[["0","1/2","1"],["0","1"]]"#).unwrap();
        assert_eq!(g[0].len(), 3);
        assert!(parse_grid(r#"[["0","x"]]"#).is_err());
    }
}
