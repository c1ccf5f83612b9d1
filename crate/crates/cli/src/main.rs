//! `ordchoice`: identify type distributions from ordered choice data.
//!
//! Reports are JSON on stdout. Errors go to stderr as
//! `error: <CODE> at <location>: <message>`.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 not identified or a
//! check that does not hold, 3 size cap exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ordchoice::copula::{check_axioms, AxiomViolation, GridAxiomReport};
use ordchoice::identify::{identify, identify_min, identify_onemistake};
use ordchoice::io::{
    parse_grid, support_entries, DiagnosticsBlock, DistributionFile, FileError, InstanceFile, ResultFile,
    TypesFile,
};
use ordchoice::models::{
    fh_lower_identifiable, is_lattice, is_one_mistake, is_progressive, scrum_membership, support_diagnostics,
    AxiomStatus, AxiomViolationDetail, FhLowerVerdict, LatticeOp, MistakeDirection,
};
use ordchoice::rational::{parse_rational, Rational};
use ordchoice::verify::{gen_random, sample_types, verify_prop1, GenMode, InstanceShape, Target};
use ordchoice::{aggregate, ChoiceType, CopulaSpec, Error, Instance, TypeDistribution};

/// Largest support for which pairwise diagnostics are attached to results.
const DIAGNOSTICS_LIMIT: usize = 2_000;

#[derive(Parser)]
#[command(name = "ordchoice", version, about = "Copula-based identification of choice-type distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Identify the distribution over choice types induced by a copula.
    Identify(IdentifyArgs),
    /// Model membership and structural checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Evaluate copulas and check their axioms.
    #[command(subcommand)]
    Copula(CopulaCommand),
    /// Exact LP verification.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Per-menu marginals of a distribution over types.
    Aggregate {
        /// Distribution file (or an identify result).
        file: PathBuf,
        #[arg(long)]
        decimals: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Möbius inversion of the copula-induced CDF.
    Mobius,
    /// Merge of cumulative breakpoints; requires `--copula M`.
    Comonotone,
    /// Single-deviation construction around the best type; no copula.
    OneMistake,
}

#[derive(Args)]
struct IdentifyArgs {
    /// Copula spec, e.g. `M`, `W`, `Pi`, `Frechet(1/3)`, `M(W(1,2),3)`.
    #[arg(long)]
    copula: Option<String>,
    #[arg(long, value_enum, default_value = "mobius")]
    method: Method,
    /// Render masses as decimals with this many places (display only).
    #[arg(long)]
    decimals: Option<usize>,
    instance: PathBuf,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Total deficit from the best elements is at most one.
    OneMistake { instance: PathBuf },
    /// Whether the FH-lower bound identifies the instance, and why.
    FhLower { instance: PathBuf },
    /// Single-crossing random utility membership and its axioms.
    Scrum { instance: PathBuf },
    /// Whether the listed types form a dominance chain.
    Progressive { types: PathBuf },
    /// Whether the listed types are closed under join and meet.
    Lattice { types: PathBuf },
}

#[derive(Subcommand)]
enum CopulaCommand {
    /// Evaluate a copula at a point.
    Eval {
        spec: String,
        #[arg(allow_hyphen_values = true, required = true)]
        u: Vec<String>,
    },
    /// Check the copula axioms on a grid.
    Axioms {
        spec: String,
        /// Grid file, or `auto`.
        #[arg(long)]
        grid: String,
        /// With `--grid auto`: use the attained cumulative values of this instance.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// With `--grid auto`: dimension of a uniform grid.
        #[arg(long)]
        dim: Option<usize>,
        /// With `--grid auto`: uniform grid {0, 1/k, …, 1}.
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The comonotone representation attains the largest up-set and down-set masses.
    Prop1 {
        instance: PathBuf,
        /// Check every type (the default).
        #[arg(long, conflicts_with = "sample")]
        all_types: bool,
        /// Check this many types drawn at random.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Arbitrary,
    OneMistake,
    Progressive,
    Lattice,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    seed: u64,
    /// Menu sizes: `3,3,2`, or `3x4` for four menus of three; append `/k` for
    /// a ground set of k alternatives.
    #[arg(long)]
    shape: String,
    /// Lattice mode: source types as worst-first positions, e.g. `0,0;1,0;1,1`.
    #[arg(long)]
    source: Option<String>,
    /// Print the generating distribution instead of the instance.
    #[arg(long)]
    emit_source: bool,
}

struct Failure {
    code: &'static str,
    location: String,
    message: String,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        if self.code == "E_TOO_LARGE" {
            3
        } else {
            1
        }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure {
            code: e.code,
            location: e.location.to_string(),
            message: e.message,
        }
    }
}

fn located(e: Error, location: impl Into<String>) -> Failure {
    Failure {
        code: e.code(),
        location: location.into(),
        message: e.to_string(),
    }
}

/// What a command produced: the report and whether its verdict is positive.
struct Report {
    body: String,
    ok: bool,
}

impl Report {
    fn json(value: &Value, ok: bool) -> Self {
        Report {
            body: pretty(value),
            ok,
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.body);
            ExitCode::from(if report.ok { 0 } else { 2 })
        }
        Err(f) => {
            eprintln!("error: {} at {}: {}", f.code, f.location, f.message);
            ExitCode::from(f.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: "E_IO",
        location: path.display().to_string(),
        message: e.to_string(),
    })
}

fn with_file<T>(path: &Path, r: Result<T, FileError>) -> Result<T, Failure> {
    r.map_err(|e| Failure {
        code: e.code,
        location: format!("{}: {}", path.display(), e.location),
        message: e.message,
    })
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    with_file(path, InstanceFile::parse(&text).and_then(|f| f.to_instance()))
}

fn parse_copula(text: &str) -> Result<CopulaSpec, Failure> {
    text.parse::<CopulaSpec>().map_err(|e| match &e {
        Error::InvalidCopula { offset, .. } => located(e.clone(), format!("--copula, byte {offset}")),
        _ => located(e, "--copula"),
    })
}

fn names(inst: &Instance, t: &ChoiceType) -> Vec<String> {
    t.selections().iter().map(|&a| inst.name(a).to_string()).collect()
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Identify(args) => run_identify(args),
        Command::Check(c) => run_check(c),
        Command::Copula(c) => run_copula(c),
        Command::Verify(VerifyCommand::Prop1 {
            instance,
            all_types: _,
            sample,
            seed,
        }) => run_prop1(&instance, sample, seed),
        Command::Gen(args) => run_gen(args),
        Command::Aggregate { file, decimals } => {
            let text = read(&file)?;
            let (skeleton, pi) = with_file(&file, DistributionFile::parse(&text).and_then(|f| f.read()))?;
            let pcf = aggregate(&skeleton, &pi).map_err(|e| located(e, file.display().to_string()))?;
            let inst = skeleton.with_pcf(&pcf).map_err(|e| located(e, file.display().to_string()))?;
            let mut out = InstanceFile::from_instance(&inst);
            if let Some(places) = decimals {
                for map in out.rho.iter_mut() {
                    for v in map.values_mut() {
                        *v = ordchoice::rational::format_decimal(&parse_rational(v).expect("canonical"), places);
                    }
                }
            }
            Ok(Report {
                body: out.to_json(),
                ok: true,
            })
        }
    }
}

fn run_identify(args: IdentifyArgs) -> Result<Report, Failure> {
    let inst = load_instance(&args.instance)?;
    let loc = args.instance.display().to_string();
    let spec = args.copula.as_deref().map(parse_copula).transpose()?;
    let decimals = args.decimals;
    let (mut file, pi) = match (args.method, &spec) {
        (Method::OneMistake, _) => {
            let pi = identify_onemistake(&inst).map_err(|e| located(e, &loc))?;
            (ResultFile::identified(&inst, None, "one-mistake", &pi, decimals), Some(pi))
        }
        (_, None) => return Err(usage("--copula", "a copula spec is required")),
        (Method::Comonotone, Some(spec)) => {
            if *spec != CopulaSpec::Min {
                return Err(usage("--method", "the comonotone construction needs --copula M"));
            }
            let pi = identify_min(&inst);
            (ResultFile::identified(&inst, Some("M"), "comonotone", &pi, decimals), Some(pi))
        }
        (Method::Mobius, Some(spec)) => {
            let result = identify(spec, &inst).map_err(|e| located(e, &loc))?;
            let file = ResultFile::from_identification(&inst, &spec.to_string(), &result, decimals);
            (file, result.distribution().cloned())
        }
    };
    let identified = pi.is_some();
    if let Some(pi) = pi.filter(|p| p.len() <= DIAGNOSTICS_LIMIT) {
        let types: Vec<ChoiceType> = pi.support().cloned().collect();
        let progressive = is_progressive(&inst, &types).map_err(|e| located(e, "support"))?;
        let diag = support_diagnostics(&inst, &pi).map_err(|e| located(e, "support"))?;
        file.diagnostics = Some(DiagnosticsBlock::new(&inst, progressive, &diag));
    }
    Ok(Report {
        body: file.to_json(),
        ok: identified,
    })
}

fn usage(location: &str, message: &str) -> Failure {
    Failure {
        code: "E_USAGE",
        location: location.into(),
        message: message.into(),
    }
}

fn run_check(command: CheckCommand) -> Result<Report, Failure> {
    match command {
        CheckCommand::OneMistake { instance } => {
            let inst = load_instance(&instance)?;
            let c = is_one_mistake(&inst);
            Ok(Report::json(
                &json!({ "check": "one-mistake", "member": c.member, "deficit": c.deficit.to_string() }),
                c.member,
            ))
        }
        CheckCommand::FhLower { instance } => {
            let inst = load_instance(&instance)?;
            let verdict = fh_lower_identifiable(&inst);
            let body = match &verdict {
                FhLowerVerdict::CondI { core, direction } => json!({
                    "check": "fh-lower",
                    "identified": true,
                    "verdict": "condition-i",
                    "core": names(&inst, core),
                    "direction": match direction {
                        MistakeDirection::Downward => "downward",
                        MistakeDirection::Upward => "upward",
                    },
                }),
                FhLowerVerdict::CondII { i, j } => json!({
                    "check": "fh-lower",
                    "identified": true,
                    "verdict": "condition-ii",
                    "menus": [i + 1, j + 1],
                }),
                FhLowerVerdict::No { witness } => json!({
                    "check": "fh-lower",
                    "identified": false,
                    "verdict": "no",
                    "witness": witness.as_ref().map(|w| names(&inst, w)),
                }),
            };
            Ok(Report::json(&body, verdict.is_identified()))
        }
        CheckCommand::Scrum { instance } => {
            let inst = load_instance(&instance)?;
            let r = scrum_membership(&inst);
            let irrational: Vec<Vec<String>> = r.irrational_support.iter().map(|t| names(&inst, t)).collect();
            let body = json!({
                "check": "scrum",
                "member": r.member,
                "irrational_support": irrational,
                "regularity": axiom_json(&inst, &r.regularity),
                "centrality": axiom_json(&inst, &r.centrality),
                "decisive": r.decisive,
            });
            Ok(Report::json(&body, r.member))
        }
        CheckCommand::Progressive { types } => {
            let (inst, list) = load_types(&types)?;
            let ok = is_progressive(&inst, &list).map_err(|e| located(e, types.display().to_string()))?;
            Ok(Report::json(&json!({ "check": "progressive", "progressive": ok }), ok))
        }
        CheckCommand::Lattice { types } => {
            let (inst, list) = load_types(&types)?;
            let c = is_lattice(&inst, &list).map_err(|e| located(e, types.display().to_string()))?;
            let defect = c.defect.as_ref().map(|d| {
                json!({
                    "a": names(&inst, &d.a),
                    "b": names(&inst, &d.b),
                    "operation": match d.op { LatticeOp::Join => "join", LatticeOp::Meet => "meet" },
                    "missing": names(&inst, &d.missing),
                })
            });
            Ok(Report::json(
                &json!({ "check": "lattice", "lattice": c.is_lattice, "defect": defect }),
                c.is_lattice,
            ))
        }
    }
}

fn load_types(path: &Path) -> Result<(Instance, Vec<ChoiceType>), Failure> {
    let text = read(path)?;
    with_file(path, TypesFile::parse(&text).and_then(|f| f.read()))
}

fn axiom_json(inst: &Instance, status: &AxiomStatus) -> Value {
    match status {
        AxiomStatus::NotApplicable => json!({ "status": "not-applicable" }),
        AxiomStatus::Satisfied { checks } => json!({ "status": "satisfied", "checks": checks }),
        AxiomStatus::Violated(AxiomViolationDetail::Regularity {
            alt,
            larger,
            smaller,
            in_larger,
            in_smaller,
        }) => json!({
            "status": "violated",
            "alternative": inst.name(*alt),
            "larger_menu": larger + 1,
            "smaller_menu": smaller + 1,
            "in_larger": in_larger.to_string(),
            "in_smaller": in_smaller.to_string(),
        }),
        AxiomStatus::Violated(AxiomViolationDetail::Centrality {
            alt,
            triple,
            pair,
            in_triple,
            in_pair,
        }) => json!({
            "status": "violated",
            "alternative": inst.name(*alt),
            "triple_menu": triple + 1,
            "pair_menu": pair + 1,
            "in_triple": in_triple.to_string(),
            "in_pair": in_pair.to_string(),
        }),
    }
}

fn point(u: &[Rational]) -> Vec<String> {
    u.iter().map(ToString::to_string).collect()
}

fn axioms_json(spec: &CopulaSpec, report: &GridAxiomReport) -> Value {
    let witness = report.witness().map(|w| match w {
        AxiomViolation::Grounding { point: p, value } => {
            json!({ "axiom": "grounded", "point": point(p), "value": value.to_string() })
        }
        AxiomViolation::Margin { point: p, expected, value } => json!({
            "axiom": "uniform_margins", "point": point(p),
            "expected": expected.to_string(), "value": value.to_string(),
        }),
        AxiomViolation::Lipschitz { from, to, change, bound } => json!({
            "axiom": "lipschitz", "from": point(from), "to": point(to),
            "change": change.to_string(), "bound": bound.to_string(),
        }),
        AxiomViolation::Rectangle { lower, upper, volume } => json!({
            "axiom": "rectangle_nonneg", "lower": point(lower), "upper": point(upper),
            "volume": volume.to_string(),
        }),
    });
    json!({
        "copula": spec.to_string(),
        "grounded": report.grounded,
        "uniform_margins": report.uniform_margins,
        "lipschitz": report.lipschitz,
        "rectangle_nonneg": report.rectangle_nonneg,
        "negative_cells": report.negative_cells,
        "witness": witness,
    })
}

fn run_copula(command: CopulaCommand) -> Result<Report, Failure> {
    match command {
        CopulaCommand::Eval { spec, u } => {
            let spec = parse_copula(&spec)?;
            let u: Vec<Rational> = u
                .iter()
                .enumerate()
                .map(|(i, v)| parse_rational(v).map_err(|e| located(e, format!("u[{i}]"))))
                .collect::<Result<_, _>>()?;
            let value = spec.eval(&u).map_err(|e| located(e, "u"))?;
            Ok(Report {
                body: format!("{value}\n"),
                ok: true,
            })
        }
        CopulaCommand::Axioms {
            spec,
            grid,
            instance,
            dim,
            steps,
        } => {
            let spec = parse_copula(&spec)?;
            let axes = if grid == "auto" {
                auto_grid(&spec, instance.as_deref(), dim, steps)?
            } else {
                let path = PathBuf::from(&grid);
                let text = read(&path)?;
                with_file(&path, parse_grid(&text))?
            };
            let report = check_axioms(&spec, &axes).map_err(|e| located(e, "--grid"))?;
            Ok(Report::json(&axioms_json(&spec, &report), report.is_copula()))
        }
    }
}

fn auto_grid(
    spec: &CopulaSpec,
    instance: Option<&Path>,
    dim: Option<usize>,
    steps: usize,
) -> Result<Vec<Vec<Rational>>, Failure> {
    if let Some(path) = instance {
        let inst = load_instance(path)?;
        return Ok(inst
            .menus()
            .iter()
            .map(|m| {
                let mut axis = vec![Rational::default()];
                axis.extend(m.cumulative().iter().cloned());
                axis.dedup();
                axis
            })
            .collect());
    }
    let n = dim.or(spec.arity()).ok_or_else(|| Failure {
        code: "E_USAGE",
        location: "--grid".into(),
        message: "`--grid auto` needs --instance or --dim".into(),
    })?;
    if steps == 0 {
        return Err(Failure {
            code: "E_USAGE",
            location: "--steps".into(),
            message: "steps must be positive".into(),
        });
    }
    let axis: Vec<Rational> = (0..=steps)
        .map(|k| Rational::new((k as i64).into(), (steps as i64).into()))
        .collect();
    Ok(vec![axis; n])
}

fn run_prop1(path: &Path, sample: Option<usize>, seed: u64) -> Result<Report, Failure> {
    let inst = load_instance(path)?;
    let loc = path.display().to_string();
    let k = sample.unwrap_or(usize::MAX);
    let samples = sample_types(&inst, k, seed).map_err(|e| located(e, &loc))?;
    let report = verify_prop1(&inst, &samples).map_err(|e| located(e, &loc))?;
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            let (kind, s) = match &f.target {
                Target::UpSet(s) => ("up-set", s),
                Target::DownSet(s) => ("down-set", s),
            };
            json!({
                "target": kind,
                "type": names(&inst, s),
                "prc_mass": f.prc_mass.to_string(),
                "lp_max": f.lp_max.to_string(),
                "counter_witness": support_entries(&inst, &f.counter_witness, None),
            })
        })
        .collect();
    let body = json!({
        "check": "prop1",
        "types": samples.len(),
        "targets": report.checked,
        "passed": report.passed(),
        "failures": failures,
    });
    Ok(Report::json(&body, report.passed()))
}

fn run_gen(args: GenArgs) -> Result<Report, Failure> {
    let shape = InstanceShape::parse(&args.shape).map_err(|e| located(e, "--shape"))?;
    let mode = match args.mode {
        ModeArg::Arbitrary => GenMode::Arbitrary,
        ModeArg::OneMistake => GenMode::OneMistake,
        ModeArg::Progressive => GenMode::ProgressiveSource,
        ModeArg::Lattice => {
            let text = args.source.as_deref().ok_or_else(|| Failure {
                code: "E_USAGE",
                location: "--source".into(),
                message: "lattice mode needs --source".into(),
            })?;
            GenMode::LatticeSource(parse_positions(text)?)
        }
    };
    let g = gen_random(&shape, args.seed, &mode).map_err(|e| located(e, "--shape"))?;
    let body = if args.emit_source {
        let pi: TypeDistribution = g.source.clone().ok_or_else(|| Failure {
            code: "E_USAGE",
            location: "--emit-source".into(),
            message: "this mode has no generating distribution".into(),
        })?;
        let inst = InstanceFile::from_instance(&g.instance);
        let file = DistributionFile {
            order: inst.order,
            menus: inst.menus,
            support: support_entries(&g.instance, &pi, None),
        };
        serde_json::to_string_pretty(&file).expect("serialisable") + "\n"
    } else {
        InstanceFile::from_instance(&g.instance).to_json()
    };
    Ok(Report { body, ok: true })
}

fn parse_positions(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .enumerate()
        .map(|(k, t)| {
            t.split(',')
                .map(|d| d.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure {
                    code: "E_USAGE",
                    location: format!("--source, type {}", k + 1),
                    message: e.to_string(),
                })
        })
        .collect()
}

