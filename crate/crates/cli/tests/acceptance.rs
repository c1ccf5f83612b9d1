//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use ordchoice::fixtures::{binary_menus, two_menu_example, three_menus_xyz};
use ordchoice::identify::{identify, identify_min, Outcome};
use ordchoice::models::{
    fh_lower_identifiable, is_one_mistake, near_optimal_types, scrum_membership, support_diagnostics,
    MistakeDirection,
};
use ordchoice::rational::{parse_rational, ratio, Rational};
use ordchoice::verify::{
    enumerate_representations, gen_random, GenMode, InstanceShape, PolytopeSolver, Sense, Target,
};
use ordchoice::{aggregate, CopulaSpec, Instance, TypeSpace};

struct Verdict {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: false,
        detail: detail.into(),
    }
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_ordchoice"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(bin()).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn support_of(report: &Value) -> Vec<(Vec<String>, Rational)> {
    report["support"]
        .as_array()
        .expect("support")
        .iter()
        .map(|e| {
            let t = e["type"]
                .as_array()
                .expect("type")
                .iter()
                .map(|v| v.as_str().expect("id").to_string())
                .collect();
            (t, parse_rational(e["mass"].as_str().expect("mass")).expect("exact mass"))
        })
        .collect()
}

fn expected(rows: &[(&str, &str, (i64, i64))]) -> BTreeSet<(Vec<String>, Rational)> {
    rows.iter()
        .map(|(a, b, (p, q))| (vec![a.to_string(), b.to_string()], ratio(*p, *q)))
        .collect()
}

fn c1() -> Verdict {
    let two = data("two-menus.json");
    let two = two.to_str().expect("path");
    let m_row = expected(&[
        ("z", "z'", (1, 5)),
        ("y", "z'", (1, 5)),
        ("y", "y'", (1, 10)),
        ("x", "y'", (1, 4)),
        ("x", "x'", (1, 4)),
    ]);
    let w_row = expected(&[
        ("z", "x'", (1, 5)),
        ("y", "x'", (1, 20)),
        ("y", "y'", (1, 4)),
        ("x", "y'", (1, 10)),
        ("x", "z'", (2, 5)),
    ]);
    let mut slowest = Duration::ZERO;
    for (spec, want) in [("M", &m_row), ("W", &w_row)] {
        let start = Instant::now();
        let (code, stdout) = run_cli(&["identify", "--copula", spec, two]);
        slowest = slowest.max(start.elapsed());
        if code != 0 {
            return fail(format!("{spec}: exit {code}"));
        }
        let report: Value = serde_json::from_str(&stdout).expect("json report");
        let got: BTreeSet<_> = support_of(&report).into_iter().collect();
        if &got != want {
            return fail(format!("{spec}: support {got:?}"));
        }
    }
    if slowest >= Duration::from_secs(1) {
        return fail(format!("slowest run {slowest:?}"));
    }
    pass(format!("M and W rows exact, slowest run {slowest:.2?}"))
}

fn c2() -> Verdict {
    let inst = two_menu_example();
    let p = |menu: usize, name: &str| inst.cumulative(menu, inst.alt(name).expect("alt")).expect("in menu").clone();
    let checks = [
        ("P1(z)", p(0, "z"), ratio(1, 5)),
        ("P1(y)", p(0, "y"), ratio(1, 2)),
        ("P2(z')", p(1, "z'"), ratio(2, 5)),
        ("P2(y')", p(1, "y'"), ratio(3, 4)),
        ("M(1/2,2/5)", CopulaSpec::Min.eval(&[ratio(1, 2), ratio(2, 5)]).expect("eval"), ratio(2, 5)),
        ("W(1/2,2/5)", CopulaSpec::FhLower.eval(&[ratio(1, 2), ratio(2, 5)]).expect("eval"), ratio(0, 1)),
    ];
    for (label, got, want) in &checks {
        if got != want {
            return fail(format!("{label} = {got}, expected {want}"));
        }
    }
    let (code, out) = run_cli(&["copula", "eval", "W", "0.5", "0.4"]);
    if code != 0 || out.trim() != "0" {
        return fail(format!("`copula eval W 0.5 0.4` printed {out:?}"));
    }
    pass("6 values exact; CLI eval prints 0")
}

fn c3() -> Verdict {
    let grid = data("w3-grid.json");
    let (code, stdout) = run_cli(&["copula", "axioms", "W", "--grid", grid.to_str().expect("path")]);
    let report: Value = serde_json::from_str(&stdout).expect("json report");
    let half = Value::from("1/2");
    let one = Value::from("1");
    let w = &report["witness"];
    let ok = code == 2
        && report["rectangle_nonneg"] == Value::Bool(false)
        && w["lower"] == Value::from(vec![half.clone(), half.clone(), half])
        && w["upper"] == Value::from(vec![one.clone(), one.clone(), one]);
    if !ok {
        return fail(format!("exit {code}, report {report}"));
    }
    let reported = parse_rational(w["volume"].as_str().expect("volume")).expect("exact");
    // Alternating sum over the eight corners of [1/2,1]^3.
    let w3 = |u: [Rational; 3]| -> Rational {
        let s: Rational = u.iter().sum::<Rational>() - Rational::from_integer(2.into());
        s.max(Rational::from_integer(0.into()))
    };
    let (lo, hi) = (ratio(1, 2), ratio(1, 1));
    let mut direct = Rational::from_integer(0.into());
    for mask in 0..8u32 {
        let corner = [0, 1, 2].map(|k| if mask >> k & 1 == 1 { hi.clone() } else { lo.clone() });
        let lows = 3 - mask.count_ones();
        let sign = if lows % 2 == 0 { 1 } else { -1 };
        direct += w3(corner) * Rational::from_integer(sign.into());
    }
    if reported != direct || direct != ratio(-1, 2) {
        return fail(format!("reported {reported}, direct sum {direct}"));
    }
    pass("witness [1/2,1]^3, volume -1/2 (matches direct alternating sum)")
}

/// Every margin vector over `values` for `n` binary menus.
fn binary_family(n: usize, values: &[&str]) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let masses: Vec<&str> = idx.iter().map(|&k| values[k]).collect();
        out.push(binary_menus(&masses));
        let mut axis = 0;
        loop {
            if axis == n {
                return out;
            }
            idx[axis] += 1;
            if idx[axis] < values.len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}

const MARGINS: [&str; 5] = ["0", "1/4", "1/2", "3/4", "1"];

fn c4() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for n in [2, 3, 4] {
        for inst in binary_family(n, &MARGINS) {
            checked += 1;
            let verdict = fh_lower_identifiable(&inst).is_identified();
            let by_w = identify(&CopulaSpec::FhLower, &inst).expect("identify").is_identified();
            if verdict != by_w {
                return fail(format!("mismatch on {:?}: fh_lower {verdict}, identify(W) {by_w}", inst.pcf()));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(300) {
        return fail(format!("{elapsed:?}"));
    }
    pass(format!("{checked} instances (n = 2, 3 and 4), 0 mismatches, {elapsed:.2?}"))
}

fn one_mistake_shape(seed: u64) -> InstanceShape {
    let n = 2 + (seed % 4) as usize;
    let sizes = (0..n).map(|i| 2 + ((seed / 5 + i as u64 * 7) % 3) as usize).collect();
    InstanceShape::new(sizes)
}

fn one_mistake_corpus() -> Vec<Instance> {
    (0..1000u64)
        .map(|seed| {
            gen_random(&one_mistake_shape(seed), seed, &GenMode::OneMistake)
                .expect("generate")
                .instance
        })
        .collect()
}

fn c5(corpus: &[Instance]) -> Verdict {
    for (seed, inst) in corpus.iter().enumerate() {
        if !is_one_mistake(inst).member {
            return fail(format!("seed {seed}: not one-mistake"));
        }
        let result = identify(&CopulaSpec::FhLower, inst).expect("identify");
        let Some(pi) = result.distribution() else {
            return fail(format!("seed {seed}: identify(W) = {:?}", result.outcome));
        };
        let near: BTreeSet<_> = near_optimal_types(inst, &inst.best_type(), MistakeDirection::Downward)
            .into_iter()
            .collect();
        if let Some(t) = pi.support().find(|t| !near.contains(*t)) {
            return fail(format!("seed {seed}: {} outside the near-optimal set", inst.format_type(t)));
        }
        let d = support_diagnostics(inst, pi).expect("diagnostics");
        if !d.antichain_ok || !d.two_diff_ok {
            return fail(format!("seed {seed}: support diagnostics {d:?}"));
        }
    }
    pass(format!("{} instances, 0 failures", corpus.len()))
}

/// Menu-size vectors with at most 81 types.
const SHAPES: [&[usize]; 10] = [
    &[3, 3, 3, 3],
    &[4, 4, 4],
    &[3, 3, 3],
    &[2, 2, 2, 2, 2, 2],
    &[4, 4, 5],
    &[3, 3, 9],
    &[2, 3, 4, 3],
    &[5, 4, 4],
    &[9, 9],
    &[2, 2, 2, 2, 5],
];

fn arbitrary_corpus() -> Vec<Instance> {
    (0..200u64)
        .map(|seed| {
            let shape = InstanceShape::new(SHAPES[seed as usize % SHAPES.len()].to_vec());
            gen_random(&shape, 1_000 + seed, &GenMode::Arbitrary)
                .expect("generate")
                .instance
        })
        .collect()
}

fn all_types(inst: &Instance) -> Vec<ordchoice::ChoiceType> {
    TypeSpace::new(inst, 100_000).expect("small").types().collect()
}

fn c6(corpus: &[Instance]) -> Verdict {
    let start = Instant::now();
    let mut targets = 0;
    for (k, inst) in corpus.iter().enumerate() {
        let prc = identify_min(inst);
        let solver = PolytopeSolver::new(inst).expect("polytope");
        for s in all_types(inst) {
            for target in [Target::UpSet(s.clone()), Target::DownSet(s)] {
                targets += 1;
                let best = solver.extremal(&target, Sense::Max).expect("lp");
                if best.optimum != target.mass(&prc) {
                    return fail(format!(
                        "instance {k}: {target:?} comonotone {} vs LP {}",
                        target.mass(&prc),
                        best.optimum
                    ));
                }
                if !best.verify(solver.spec(), &target, Sense::Max) {
                    return fail(format!("instance {k}: certificate for {target:?} does not verify"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(600) {
        return fail(format!("{elapsed:?}"));
    }
    pass(format!("{} instances, {targets} LP targets, 0 gaps, {elapsed:.2?}", corpus.len()))
}

fn c7(corpus: &[Instance]) -> Verdict {
    for (k, inst) in corpus.iter().enumerate() {
        let by_mobius = identify(&CopulaSpec::Min, inst).expect("identify");
        if by_mobius.distribution() != Some(&identify_min(inst)) {
            return fail(format!("instance {k}: identify(M) differs from identify_min"));
        }
    }
    let small: Vec<&Instance> = corpus.iter().filter(|i| i.type_count() <= 12).collect();
    let mut lp_checks = 0;
    for (k, inst) in small.iter().enumerate() {
        let vertices = enumerate_representations(inst, usize::MAX).expect("vertices");
        let solver = PolytopeSolver::new(inst).expect("polytope");
        for s in all_types(inst) {
            for target in [Target::UpSet(s.clone()), Target::DownSet(s)] {
                for sense in [Sense::Max, Sense::Min] {
                    lp_checks += 1;
                    let lp = solver.extremal(&target, sense).expect("lp").optimum;
                    let masses = vertices.iter().map(|v| target.mass(v));
                    let brute = match sense {
                        Sense::Max => masses.max(),
                        Sense::Min => masses.min(),
                    };
                    if brute.as_ref() != Some(&lp) {
                        return fail(format!("small instance {k}: {target:?} {sense:?} LP {lp} vs vertices {brute:?}"));
                    }
                }
            }
        }
    }
    pass(format!(
        "identify(M) = identify_min on {} instances; LP = vertex optimum on {} instances ({lp_checks} optima)",
        corpus.len(),
        small.len()
    ))
}

fn c8(corpus: &[Instance]) -> Verdict {
    for (k, inst) in corpus.iter().enumerate() {
        let reversed = inst.reversed();
        let direct = identify(&CopulaSpec::Min, inst).expect("identify");
        let flipped = identify(&CopulaSpec::Min, &reversed).expect("identify");
        let (Some(a), Some(b)) = (direct.distribution(), flipped.distribution()) else {
            return fail(format!("instance {k}: M not identified"));
        };
        if &a.reversed(inst) != b {
            return fail(format!("instance {k}: reversed order changes the M representation"));
        }
    }
    pass(format!("{} instances, identical (type, mass) sets", corpus.len()))
}

fn c9(corpus: &[Instance]) -> Verdict {
    let specs: Vec<CopulaSpec> = ["M", "W", "Pi", "Frechet(1/3)", "Threshold(1/2)"]
        .iter()
        .map(|s| s.parse().expect("spec"))
        .collect();
    let mut identified = vec![0usize; specs.len()];
    for (k, inst) in corpus.iter().enumerate() {
        for (j, spec) in specs.iter().enumerate() {
            let result = identify(spec, inst).expect("identify");
            if let Outcome::Identified(pi) = &result.outcome {
                identified[j] += 1;
                if aggregate(inst, pi).expect("aggregate") != inst.pcf() {
                    return fail(format!("instance {k}: aggregate(identify({spec})) differs from rho"));
                }
            }
        }
    }
    let counts: Vec<String> = specs
        .iter()
        .zip(&identified)
        .map(|(s, c)| format!("{s}:{c}"))
        .collect();
    pass(format!("{} instances, identified counts {}", corpus.len(), counts.join(" ")))
}

fn c10() -> Verdict {
    let regularity = Instance::from_strs(
        &["x", "y", "z"],
        &[&[("x", "3/10"), ("y", "7/10")], &[("x", "2/5"), ("y", "1/5"), ("z", "2/5")]],
    )
    .expect("instance");
    let centrality = Instance::from_strs(
        &["x", "y", "z"],
        &[&[("x", "1/2"), ("y", "1/2")], &[("x", "2/5"), ("y", "1/5"), ("z", "2/5")]],
    )
    .expect("instance");
    let best = Instance::from_strs(
        &["x", "y", "z"],
        &[
            &[("x", "1"), ("y", "0")],
            &[("y", "1"), ("z", "0")],
            &[("x", "1"), ("z", "0")],
            &[("x", "1"), ("y", "0"), ("z", "0")],
        ],
    )
    .expect("instance");
    let r = scrum_membership(&regularity);
    if r.member || !r.regularity.is_violated() {
        return fail(format!("regularity instance: {r:?}"));
    }
    let c = scrum_membership(&centrality);
    if c.member || !c.centrality.is_violated() {
        return fail(format!("centrality instance: {c:?}"));
    }
    let b = scrum_membership(&best);
    if !b.member || b.regularity.is_violated() || b.centrality.is_violated() {
        return fail(format!("deterministic instance: {b:?}"));
    }
    pass("regularity and centrality violators rejected; deterministic best-choice instance accepted")
}

type Check<'a> = Box<dyn Fn() -> Verdict + 'a>;

fn main() {
    let one_mistake = one_mistake_corpus();
    let arbitrary = arbitrary_corpus();
    let mut corpus: Vec<Instance> = vec![two_menu_example(), three_menus_xyz()];
    for n in [2, 3] {
        corpus.extend(binary_family(n, &MARGINS));
    }
    corpus.extend(one_mistake.iter().cloned());
    corpus.extend(arbitrary.iter().cloned());
    for seed in 0..50u64 {
        let shape = InstanceShape::new(vec![2 + (seed % 3) as usize; 2 + (seed % 2) as usize]);
        corpus.push(gen_random(&shape, seed, &GenMode::ProgressiveSource).expect("generate").instance);
    }
    corpus.push(
        gen_random(
            &InstanceShape::new(vec![2, 2, 2]),
            7,
            &GenMode::LatticeSource(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 1, 1]]),
        )
        .expect("generate")
        .instance,
    );

    let criteria: Vec<(&str, Check)> = vec![
        ("two-menu example through the CLI", Box::new(c1)),
        ("cumulative and copula values", Box::new(c2)),
        ("W is not a copula for n = 3", Box::new(c3)),
        ("FH-lower characterisation = identify(W)", Box::new(c4)),
        ("one-mistake chain", Box::new(|| c5(&one_mistake))),
        ("comonotone extremality vs exact LP", Box::new(|| c6(&arbitrary))),
        ("cross-implementation oracles", Box::new(|| c7(&corpus))),
        ("reversed-order invariance of M", Box::new(|| c8(&corpus))),
        ("aggregate round trip", Box::new(|| c9(&corpus))),
        ("SCRUM detection", Box::new(c10)),
    ];

    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failures += 1;
        }
        println!(
            "{status} {:>2} {name}: {} [{:.2?}]",
            k + 1,
            outcome.detail,
            start.elapsed()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
