//! Acceptance suite. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use grasshopper::census::{run_census, CensusConfig, CensusReport};
use grasshopper::experiments::{delta_equivalence, random_triples};
use grasshopper::generator::count_instances;
use grasshopper::lemmas::LemmaName;
use grasshopper::report::render_census;
use grasshopper::Mode;

const CENSUS_N_MAX: usize = 5;
const V_OFFSET: u64 = 3;
const LEMMA_N_MAX: usize = 4;
const JOBS: usize = 4;
const TIME_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_TRIPLES: u64 = 100_000;
const RANDOM_N_MAX: usize = 12;
const RANDOM_SWAPS: u64 = 100_000;

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id}: {name} -- {detail}");
        if !ok {
            self.failed += 1;
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn census_instances_up_to(n_max: usize) -> u64 {
    (1..=n_max)
        .map(|n| count_instances(n, n as u64 + V_OFFSET, Mode::Classic) as u64)
        .sum()
}

fn census(gate: &mut Gate) -> CensusReport {
    let cfg = CensusConfig {
        n_max: CENSUS_N_MAX,
        v_offset: V_OFFSET,
        mode: Mode::Classic,
        jobs: JOBS,
        lemma_n_max: LEMMA_N_MAX,
        probe_n_max: LEMMA_N_MAX,
        profile_n_max: CENSUS_N_MAX,
        ..CensusConfig::default()
    };
    let start = Instant::now();
    let report = run_census(&cfg).expect("census runs");
    let elapsed = start.elapsed();
    print!("{}", render_census(&report));

    let witnesses: u64 = report.sizes.iter().map(|s| s.exhaustive_witnesses).sum();
    gate.check(
        1,
        "desk-scale census, n in 1..=5, V = n+3, classic",
        report.instances_processed == report.expected_instances
            && witnesses == report.instances_processed
            && report.counterexamples.is_empty()
            && elapsed < TIME_LIMIT,
        format!(
            "{} instances, {} with exhaustive witness, {} counterexamples, {:.1?} (limit {:?})",
            report.instances_processed,
            witnesses,
            report.counterexamples.len(),
            elapsed,
            TIME_LIMIT
        ),
    );
    report
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    let report = census(&mut gate);

    // 2: random triples plus exhaustive coverage of census instances n <= 4
    let triples = random_triples(RANDOM_TRIPLES, 2009, RANDOM_N_MAX).expect("triples run");
    let profile_lemmas = [LemmaName::PsLast, LemmaName::PsSwap, LemmaName::PsSwapEq];
    let random_fail: u64 = profile_lemmas.iter().map(|&l| triples.summary.row(l).fail).sum();
    let random_cases = triples.summary.row(LemmaName::PsLast).cases;
    let census_fail: u64 = profile_lemmas.iter().map(|&l| report.lemmas.row(l).fail).sum();
    let census_cases: u64 = profile_lemmas.iter().map(|&l| report.lemmas.row(l).cases).sum();
    let lemma_instances = census_instances_up_to(LEMMA_N_MAX);
    gate.check(
        2,
        "PS_last / PS_swap / PS_swap_eq, exact equality",
        random_cases == RANDOM_TRIPLES
            && random_fail == 0
            && report.lemma_instances == lemma_instances
            && census_fail == 0,
        format!(
            "{random_cases} random triples (n <= {RANDOM_N_MAX}) with {random_fail} failures; \
             {census_cases} exhaustive checks over {} census instances with {census_fail} failures",
            report.lemma_instances
        ),
    );

    let max_row = report.lemmas.row(LemmaName::MaximizerSwapInM);
    gate.check(
        3,
        "maximizer_swap_in_M over exact argmax sets, n <= 4",
        report.lemma_instances == lemma_instances && max_row.fail == 0,
        format!(
            "{} (maximizer, k) cases: {} applicable and forced value in M, {} vacuous, {} failures",
            max_row.cases, max_row.pass, max_row.vacuous, max_row.fail
        ),
    );

    let expected_profiles: u64 = report
        .sizes
        .iter()
        .map(|s| s.instances * factorial(s.n))
        .sum();
    gate.check(
        4,
        "strict monotonicity and endpoint invariance",
        report.profiles.profiles == expected_profiles
            && report.profiles.non_monotone == 0
            && report.profiles.endpoint_mismatches == 0
            && triples.non_monotone == 0,
        format!(
            "{} census profiles ({} non-monotone, {} endpoint mismatches); {} random profiles ({} non-monotone)",
            report.profiles.profiles,
            report.profiles.non_monotone,
            report.profiles.endpoint_mismatches,
            random_cases,
            triples.non_monotone
        ),
    );

    let delta = delta_equivalence(RANDOM_SWAPS, 6, RANDOM_N_MAX).expect("delta walk runs");
    gate.check(
        5,
        "incremental swap update equals recomputation",
        delta.swaps == RANDOM_SWAPS && delta.mismatches == 0,
        format!("{} swaps, {} mismatches", delta.swaps, delta.mismatches),
    );

    let climbs = report.hill_climb_successes();
    let fallbacks = report.exhaustive_fallbacks();
    let fallback_ok = report.fallback_successes();
    gate.check(
        6,
        "solver pipeline soundness on the census family",
        report.solver_failures.is_empty()
            && climbs + fallback_ok == report.instances_processed
            && fallback_ok == fallbacks,
        format!(
            "hill climb {climbs}/{} ({:.4}%, informational); exhaustive fallback {fallback_ok}/{fallbacks} correct",
            report.instances_processed,
            100.0 * climbs as f64 / report.instances_processed as f64
        ),
    );

    let c = &report.closure;
    gate.check(
        7,
        "counting probe on census instances n <= 4",
        c.instances_probed == lemma_instances
            && c.subset_failures == 0
            && c.g_constancy_failures == 0
            && c.histogram.values().sum::<u64>() == c.instances_probed,
        format!(
            "{} probed, {} components, {} instances with unsafe maximizer, histogram {:?}",
            c.instances_probed, c.components, c.unsafe_maximizer_instances, c.histogram
        ),
    );

    let (ok, detail) = determinism();
    gate.check(8, "byte-identical reports on repeated CLI runs", ok, detail);

    if gate.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}

fn determinism() -> (bool, String) {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("inst.json");
    fs::write(&instance, r#"{ "jumps": [1,2,4], "forbidden": [1,3], "mode": "classic" }"#).unwrap();
    let inst = instance.to_str().unwrap();

    let runs: Vec<(&str, Vec<&str>)> = vec![
        ("solve", vec!["solve", inst, "--seed", "3"]),
        ("check-lemmas", vec!["check-lemmas", "--random", "300", "--seed", "7"]),
        ("census", vec!["census", "--n-max", "4", "--v-offset", "3", "--jobs", "4"]),
        ("closure", vec!["closure", inst, "--strict"]),
        ("gen", vec!["gen", "--n", "5", "--max-jump", "12", "--seed", "9", "--mode", "classic"]),
    ];
    let mut mismatched = Vec::new();
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("{name}-{rep}.json"));
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_grasshopper"));
            cmd.args(args).arg("--out").arg(&out);
            let status = cmd.output().expect("binary runs");
            if !status.status.success() {
                mismatched.push(format!("{name} exited {:?}", status.status.code()));
            }
            outputs.push((fs::read(&out).unwrap_or_default(), status.stdout));
        }
        if outputs[0] != outputs[1] || outputs[0].0.is_empty() {
            mismatched.push(name.to_string());
        }
    }
    let detail = if mismatched.is_empty() {
        format!("{} subcommands repeated, reports identical", runs.len())
    } else {
        format!("differences in {mismatched:?}")
    };
    (mismatched.is_empty(), detail)
}
