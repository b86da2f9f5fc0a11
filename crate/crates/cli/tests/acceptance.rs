//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Time limits are wall-clock and include setup.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dwtl_core::constructions::{ripple_adder, weighted_sum_gate};
use dwtl_core::tsolve::enumerate_threshold_functions;
use dwtl_core::{
    parse_netlist, print_netlist, solve_threshold, AdderSpec, CheckMethod, Classification,
    Equivalence, EquivalenceOptions, GateError, Netlist, SpinMinorityGate, TableReference,
    TruthTable,
};

const LIMIT_FULL_ADDER: Duration = Duration::from_secs(1);
const LIMIT_ADDER3: Duration = Duration::from_secs(1);
const LIMIT_N3: Duration = Duration::from_secs(10);
const LIMIT_N4: Duration = Duration::from_secs(300);
const LIMIT_PROPS: Duration = Duration::from_secs(30);
const LIMIT_SCALE: Duration = Duration::from_secs(5);

const THRESHOLD_COUNT_N3: usize = 104;
const THRESHOLD_COUNT_N4: usize = 1882;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dwtl").chain(args.iter().copied());
    let code = dwtl_cli::run(argv, &mut out, &mut err);
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

fn gen_and_check(
    dir: &Path,
    bits: usize,
    style: &str,
    baseline: u64,
) -> Result<(String, String, Netlist), String> {
    let path = dir.join(format!("{style}{bits}.dwtl"));
    let p = path.to_str().unwrap();
    let (code, text) = cli(&[
        "gen",
        "adder",
        "--bits",
        &bits.to_string(),
        "--style",
        style,
        "-o",
        p,
    ]);
    ensure(code == 0, || format!("gen failed: {text}"))?;
    let net = parse_netlist(&std::fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
    let (code, verify) = cli(&["verify", p, "--spec", &format!("adder:{bits}")]);
    ensure(code == 0, || format!("verify failed: {verify}"))?;
    let (code, report) = cli(&["report", p, "--baseline", &baseline.to_string()]);
    ensure(code == 0, || format!("report failed: {report}"))?;
    Ok((verify.trim().to_string(), report.trim().to_string(), net))
}

/// Full adder by plain integer addition, independent of the library's spec.
fn add_oracle(n: usize, row: u64) -> Vec<bool> {
    let a = row & ((1 << n) - 1);
    let b = (row >> n) & ((1 << n) - 1);
    let cin = (row >> (2 * n)) & 1;
    let total = a + b + cin;
    (0..=n).map(|i| total >> i & 1 == 1).collect()
}

fn oracle_adder_check(net: &Netlist, n: usize) -> Result<(), String> {
    let tables: Vec<(String, TruthTable)> = net.truth_tables().map_err(|e| e.to_string())?;
    for row in 0..1u64 << (2 * n + 1) {
        let want = add_oracle(n, row);
        for (i, (name, t)) in tables.iter().enumerate() {
            ensure(t.get(row as usize) == want[i], || {
                format!("{name} wrong at row {row}")
            })?;
        }
    }
    Ok(())
}

fn criterion_1() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let (verify, report, net) = gen_and_check(dir.path(), 1, "minority", 15)?;
    ensure(net.gate_count() == 3, || {
        format!("{} gates", net.gate_count())
    })?;
    ensure(verify == "EQUIVALENT (8/8 rows exhaustive)", || {
        verify.clone()
    })?;
    oracle_adder_check(&net, 1)?;
    ensure(report.contains("reduction=80.0%"), || report.clone())?;
    Ok(format!("3 gates, 8/8 rows, {report}"))
}

fn criterion_2() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let (verify, report, net) = gen_and_check(dir.path(), 3, "weighted", 45)?;
    ensure(net.gate_count() == 6, || {
        format!("{} gates", net.gate_count())
    })?;
    ensure(verify == "EQUIVALENT (128/128 rows exhaustive)", || {
        verify.clone()
    })?;
    oracle_adder_check(&net, 3)?;
    ensure(report.contains("reduction=86.7% (≈87%)"), || {
        report.clone()
    })?;
    Ok(format!("6 gates, 128/128 rows, {report}"))
}

fn criterion_3() -> Check {
    let gate = weighted_sum_gate();
    ensure(gate.weights() == [-1, -1, -1, -2], || format!("{gate}"))?;
    let mut net = Netlist::new();
    net.add_input("a").add_input("b").add_input("cin");
    net.add_gate("carry", SpinMinorityGate::minority3(), ["a", "b", "cin"]);
    net.add_gate("s", gate, ["a", "b", "cin", "carry"]);
    net.add_output("y", "s", false);
    let got = net.truth_tables().map_err(|e| e.to_string())?[0]
        .1
        .as_u64()
        .unwrap();
    // not(a xor b xor cin), computed row by row
    let want = (0..8u64).fold(0, |acc, r| {
        let parity = (r ^ r >> 1 ^ r >> 2) & 1;
        acc | (1 - parity) << r
    });
    ensure(want == 0x69, || format!("oracle gave {want:#x}"))?;
    ensure(got == want, || {
        format!("composed table {got:#x}, want {want:#x}")
    })?;
    Ok(format!("weights (-1,-1,-1,-2), composed table {got:#04x}"))
}

/// Every table realizable as `Σ wⱼxⱼ >= T` with `|wⱼ| <= bound`, by direct
/// enumeration of weights.
fn bounded_oracle(n: usize, bound: i64) -> BTreeSet<u64> {
    let rows = 1usize << n;
    let mut found = BTreeSet::new();
    let span = (2 * bound + 1) as usize;
    for code in 0..span.pow(n as u32) {
        let w: Vec<i64> = (0..n)
            .map(|j| (code / span.pow(j as u32) % span) as i64 - bound)
            .collect();
        let sums: Vec<i64> = (0..rows)
            .map(|r| (0..n).filter(|j| r >> j & 1 == 1).map(|j| w[j]).sum())
            .collect();
        let mut cuts = sums.clone();
        cuts.push(i64::MAX);
        for t in cuts {
            found.insert((0..rows).fold(0u64, |acc, r| acc | ((sums[r] >= t) as u64) << r));
        }
    }
    found
}

fn census_check(n: usize, bound: i64, expected: usize, tables: &[u64]) -> Result<(), String> {
    let lp: BTreeSet<u64> = tables.iter().copied().collect();
    let oracle = bounded_oracle(n, bound);
    ensure(lp.len() == expected, || format!("LP found {}", lp.len()))?;
    ensure(oracle.len() == expected, || {
        format!("oracle found {}", oracle.len())
    })?;
    ensure(lp == oracle, || "LP and oracle disagree".into())
}

fn criterion_4() -> Check {
    let mut positives = Vec::new();
    for value in 0..256u64 {
        let tt = TruthTable::from_u64(3, value).unwrap();
        match solve_threshold(&tt).map_err(|e| e.to_string())? {
            Classification::Threshold(r) => {
                let back = r.gate.truth_table().map_err(|e| e.to_string())?;
                ensure(back == tt, || {
                    format!("{tt}: realization {} re-evaluates to {back}", r.gate)
                })?;
                positives.push(value);
            }
            Classification::NotThreshold(nt) => {
                ensure(nt.certificate.verify(&tt), || {
                    format!("{tt}: bad certificate")
                })?;
            }
        }
    }
    census_check(3, 3, THRESHOLD_COUNT_N3, &positives)?;
    Ok(format!(
        "{} of 256 threshold, LP = oracle, realizations re-evaluated",
        positives.len()
    ))
}

fn criterion_5() -> Check {
    let census = enumerate_threshold_functions(4).map_err(|e| e.to_string())?;
    let tables: Vec<u64> = census.tables.iter().map(|t| t.as_u64().unwrap()).collect();
    census_check(4, 4, THRESHOLD_COUNT_N4, &tables)?;
    Ok(format!(
        "{} of {} threshold, LP = oracle",
        census.count, census.examined
    ))
}

fn random_gate(rng: &mut ChaCha8Rng) -> SpinMinorityGate {
    let fan_in = rng.random_range(1..=8);
    let weights = (0..fan_in)
        .map(|_| {
            let m = rng.random_range(1..=4);
            if rng.random() {
                m
            } else {
                -m
            }
        })
        .collect();
    SpinMinorityGate::new(weights).unwrap()
}

fn rows(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << n).map(move |r| (0..n).map(|j| r >> j & 1 == 1).collect())
}

fn random_netlist(rng: &mut ChaCha8Rng) -> Netlist {
    let ni = rng.random_range(1..=5);
    let ng = rng.random_range(0..=6);
    let mut net = Netlist::new();
    let mut names: Vec<String> = (0..ni).map(|i| format!("in{i}")).collect();
    for n in &names {
        net.add_input(n.clone());
    }
    for g in 0..ng {
        let fan_in = rng.random_range(1..=4);
        let mut weights: Vec<i32> = (0..fan_in)
            .map(|_| rng.random_range(1..=3) * if rng.random() { 1 } else { -1 })
            .collect();
        if weights.iter().map(|w| w.abs()).sum::<i32>() % 2 == 0 {
            weights[0] += weights[0].signum();
        }
        let sources: Vec<String> = (0..fan_in)
            .map(|_| names[rng.random_range(0..names.len())].clone())
            .collect();
        let name = format!("n{g}");
        net.add_gate(&name, SpinMinorityGate::new(weights).unwrap(), sources);
        names.push(name);
    }
    for k in 0..rng.random_range(1..=3) {
        let src = names[rng.random_range(0..names.len())].clone();
        net.add_output(format!("out{k}"), src, rng.random());
    }
    net
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut parity_gates = 0;
    for _ in 0..10_000 {
        let g = random_gate(&mut rng);
        let th = g.to_threshold_form();
        for x in rows(g.fan_in()) {
            let sum = g.spin_sum(&x).unwrap();
            match g.eval(&x) {
                Ok(v) => {
                    ensure(v == (sum > 0), || format!("{g} at {x:?}"))?;
                    ensure(th.eval(&x).unwrap() == v, || {
                        format!("{g} vs {th} at {x:?}")
                    })?;
                }
                Err(GateError::Tie { .. }) => ensure(sum == 0, || format!("{g}: false tie"))?,
                Err(e) => return Err(e.to_string()),
            }
        }
        if g.abs_weight_sum() % 2 == 1 {
            parity_gates += 1;
            ensure(g.tie_rows().unwrap().is_empty(), || {
                format!("{g}: odd total but ties")
            })?;
            let tt = g.truth_table().map_err(|e| e.to_string())?;
            let c = g.complement().map_err(|e| e.to_string())?;
            ensure(c.truth_table().unwrap() == !&tt, || {
                format!("{g}: complement table")
            })?;
            ensure(c.complement().unwrap() == g, || format!("{g}: involution"))?;
            for k in 1..=5 {
                ensure(g.scaled(k).truth_table().unwrap() == tt, || {
                    format!("{g}: scale {k}")
                })?;
            }
        }
    }
    for i in 0..1_000 {
        let net = random_netlist(&mut rng);
        let text = print_netlist(&net);
        let back = parse_netlist(&text).map_err(|e| format!("netlist {i}: {e}\n{text}"))?;
        ensure(back == net, || {
            format!("netlist {i} round-trip differs\n{text}")
        })?;
        let reference =
            TableReference::new(net.truth_tables().map_err(|e| e.to_string())?).unwrap();
        let eq = net
            .check_equivalence(&reference, &EquivalenceOptions::default())
            .map_err(|e| e.to_string())?;
        ensure(eq.is_equivalent(), || {
            format!("netlist {i} not equivalent to itself")
        })?;
    }
    Ok(format!(
        "10000 gates ({parity_gates} odd-total), 1000 round-trips and self-checks"
    ))
}

fn criterion_7() -> Check {
    let net = ripple_adder(32).map_err(|e| e.to_string())?;
    ensure(net.gate_count() == 64, || {
        format!("{} gates", net.gate_count())
    })?;
    let spec = AdderSpec::new(32).unwrap();
    let eq = net
        .check_equivalence(&spec, &EquivalenceOptions::default())
        .map_err(|e| e.to_string())?;
    match eq {
        Equivalence::Equivalent {
            rows_checked,
            method:
                CheckMethod::Sampled {
                    seed,
                    random_vectors,
                    corner_vectors,
                },
        } => {
            ensure(random_vectors == 100_000, || {
                format!("{random_vectors} random vectors")
            })?;
            ensure(corner_vectors == 2 + 65, || {
                format!("{corner_vectors} corners")
            })?;
            Ok(format!(
                "64 gates, {rows_checked} vectors ({corner_vectors} corner + {random_vectors} random, seed {seed:#x}), 0 mismatches"
            ))
        }
        other => Err(format!("{other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("1 minority full adder", LIMIT_FULL_ADDER, criterion_1),
        ("2 weighted 3-bit adder", LIMIT_ADDER3, criterion_2),
        ("3 weighted sum gate", Duration::MAX, criterion_3),
        ("4 three-input census", LIMIT_N3, criterion_4),
        ("5 four-input census", LIMIT_N4, criterion_5),
        ("6 property suites", LIMIT_PROPS, criterion_6),
        ("7 32-bit scale check", LIMIT_SCALE, criterion_7),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(detail) if elapsed <= limit => format!("PASS {detail}"),
            Ok(detail) => format!("FAIL over time limit {limit:?}: {detail}"),
            Err(e) => format!("FAIL {e}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!(
            "criterion {name}: {verdict} [{:.3}s]",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
