//! Exhaustive desk-scale census.
//!
//! For each `n` in `1..=n_max` every instance with jumps drawn from
//! `{1..n + v_offset}` is enumerated. Each instance gets the exhaustive
//! oracle, the solver pipeline, and (below configurable size limits) the
//! lemma sweep, profile invariants and the counting probe. Workers run on a
//! rayon pool; results are merged in enumeration order.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::counting_probe;
use crate::error::{Error, Result};
use crate::generator::{count_instances, enumerate_instances};
use crate::instance::{Instance, Mode, RawInstance};
use crate::lemmas::{lemma_sweep, SweepConfig, SweepSummary};
use crate::partial_sums::profile_unchecked;
use crate::scoring::is_safe_permutation;
use crate::search::{exhaustive_search, for_each_permutation, solve, SolveConfig, Strategy};

pub const DEFAULT_CAP: u128 = 5_000_000;
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusConfig {
    pub n_max: usize,
    pub v_offset: u64,
    pub mode: Mode,
    /// Not echoed into reports; results do not depend on it.
    #[serde(skip)]
    pub jobs: usize,
    pub solve: SolveConfig,
    /// Lemma sweep runs for `n <= lemma_n_max`.
    pub lemma_n_max: usize,
    /// Monotonicity and endpoint checks over all orderings for `n <= profile_n_max`.
    pub profile_n_max: usize,
    /// Counting probe runs for `n <= probe_n_max`.
    pub probe_n_max: usize,
    pub cap: u128,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            n_max: 3,
            v_offset: 3,
            mode: Mode::Classic,
            jobs: 1,
            solve: SolveConfig::default(),
            lemma_n_max: 4,
            profile_n_max: 5,
            probe_n_max: 4,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeRow {
    pub n: usize,
    pub max_jump: u64,
    pub instances: u64,
    pub exhaustive_witnesses: u64,
    pub hill_climb_successes: u64,
    pub exhaustive_fallbacks: u64,
    pub fallback_successes: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProfileTally {
    pub profiles: u64,
    pub non_monotone: u64,
    pub endpoint_mismatches: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClosureTally {
    pub instances_probed: u64,
    pub unsafe_maximizer_instances: u64,
    pub components: u64,
    pub subset_failures: u64,
    pub g_constancy_failures: u64,
    pub reaches_n: u64,
    /// Largest forced count per instance → number of instances.
    pub histogram: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub config: CensusConfig,
    pub instances_processed: u64,
    pub expected_instances: u64,
    pub sizes: Vec<SizeRow>,
    /// Validated instances with no safe ordering.
    pub counterexamples: Vec<RawInstance>,
    /// Solver witnesses that failed independent verification, or
    /// instances the solver could not settle.
    pub solver_failures: Vec<RawInstance>,
    pub lemma_instances: u64,
    pub lemmas: SweepSummary,
    pub profiles: ProfileTally,
    pub closure: ClosureTally,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CensusReport {
    pub fn hill_climb_successes(&self) -> u64 {
        self.sizes.iter().map(|s| s.hill_climb_successes).sum()
    }

    pub fn exhaustive_fallbacks(&self) -> u64 {
        self.sizes.iter().map(|s| s.exhaustive_fallbacks).sum()
    }

    pub fn fallback_successes(&self) -> u64 {
        self.sizes.iter().map(|s| s.fallback_successes).sum()
    }

    /// Exit criterion: no counterexample, no solver failure, no lemma failure.
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
            && self.solver_failures.is_empty()
            && self.lemmas.failures() == 0
            && self.instances_processed == self.expected_instances
    }
}

#[derive(Debug, Default)]
struct InstanceResult {
    exhaustive_witness: bool,
    strategy: Option<Strategy>,
    solver_ok: bool,
    sweep: Option<SweepSummary>,
    profiles: ProfileTally,
    probe: Option<ProbeSummary>,
}

#[derive(Debug)]
struct ProbeSummary {
    unsafe_maximizer: bool,
    components: u64,
    subset_failures: u64,
    g_constancy_failures: u64,
    reaches_n: u64,
    max_forced: usize,
}

fn process(inst: &Instance, cfg: &CensusConfig) -> Result<InstanceResult> {
    let n = inst.n();
    let mut out = InstanceResult {
        exhaustive_witness: exhaustive_search(inst, cfg.solve.exhaustive_bound)?
            .witness
            .is_some(),
        ..InstanceResult::default()
    };

    match solve(inst, &cfg.solve) {
        Ok(outcome) => {
            out.strategy = Some(outcome.strategy);
            out.solver_ok = match &outcome.witness {
                Some(w) => is_safe_permutation(inst, w)?,
                None => false,
            };
        }
        Err(Error::Unsolved { .. }) => out.solver_ok = false,
        Err(e) => return Err(e),
    }

    if n <= cfg.lemma_n_max {
        out.sweep = Some(lemma_sweep(
            inst,
            &SweepConfig {
                exhaustive_bound: cfg.solve.exhaustive_bound,
                ..SweepConfig::default()
            },
        )?);
    }

    if n <= cfg.profile_n_max {
        for_each_permutation(n, |order| {
            let p = profile_unchecked(inst, order);
            out.profiles.profiles += 1;
            if !p.is_strictly_increasing() {
                out.profiles.non_monotone += 1;
            }
            if p.at(n) != inst.total() {
                out.profiles.endpoint_mismatches += 1;
            }
            true
        });
    }

    if n <= cfg.probe_n_max {
        let probe = counting_probe(inst, cfg.solve.exhaustive_bound)?;
        let subset_failures = probe
            .components
            .iter()
            .filter(|c| !c.forced_values.iter().all(|&v| inst.is_forbidden(v)))
            .count() as u64;
        out.probe = Some(ProbeSummary {
            unsafe_maximizer: probe.unsafe_maximizer,
            components: probe.components.len() as u64,
            subset_failures,
            g_constancy_failures: probe.components.iter().filter(|c| !c.g_constant).count() as u64,
            reaches_n: probe.components.iter().filter(|c| c.verdict.reaches_n).count() as u64,
            max_forced: probe.max_forced(),
        });
    }
    Ok(out)
}

fn absorb(report: &mut CensusReport, row: &mut SizeRow, inst: &Instance, r: InstanceResult) {
    report.instances_processed += 1;
    row.instances += 1;
    if r.exhaustive_witness {
        row.exhaustive_witnesses += 1;
    } else {
        report.counterexamples.push(inst.to_raw());
    }
    match r.strategy {
        Some(Strategy::HillClimb) => row.hill_climb_successes += usize::from(r.solver_ok) as u64,
        Some(Strategy::Exhaustive) => {
            row.exhaustive_fallbacks += 1;
            row.fallback_successes += usize::from(r.solver_ok) as u64;
        }
        _ => {}
    }
    if !r.solver_ok {
        report.solver_failures.push(inst.to_raw());
    }
    if let Some(sweep) = &r.sweep {
        report.lemma_instances += 1;
        report.lemmas.merge(sweep);
    }
    report.profiles.profiles += r.profiles.profiles;
    report.profiles.non_monotone += r.profiles.non_monotone;
    report.profiles.endpoint_mismatches += r.profiles.endpoint_mismatches;
    if let Some(p) = r.probe {
        let c = &mut report.closure;
        c.instances_probed += 1;
        c.unsafe_maximizer_instances += u64::from(p.unsafe_maximizer);
        c.components += p.components;
        c.subset_failures += p.subset_failures;
        c.g_constancy_failures += p.g_constancy_failures;
        c.reaches_n += p.reaches_n;
        *c.histogram.entry(p.max_forced).or_default() += 1;
    }
}

/// Total number of instances the census will enumerate.
pub fn census_size(cfg: &CensusConfig) -> u128 {
    (1..=cfg.n_max)
        .map(|n| count_instances(n, n as u64 + cfg.v_offset, cfg.mode))
        .sum()
}

pub fn run_census(cfg: &CensusConfig) -> Result<CensusReport> {
    let start = Instant::now();
    let expected = census_size(cfg);
    if expected > cfg.cap {
        return Err(Error::BudgetExceeded {
            estimated: expected,
            cap: cfg.cap,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");

    let mut report = CensusReport {
        config: *cfg,
        instances_processed: 0,
        expected_instances: expected as u64,
        sizes: Vec::new(),
        counterexamples: Vec::new(),
        solver_failures: Vec::new(),
        lemma_instances: 0,
        lemmas: SweepSummary::default(),
        profiles: ProfileTally::default(),
        closure: ClosureTally::default(),
        wall_time: Duration::ZERO,
    };

    for n in 1..=cfg.n_max {
        let max_jump = n as u64 + cfg.v_offset;
        let mut row = SizeRow {
            n,
            max_jump,
            ..SizeRow::default()
        };
        let mut stream = enumerate_instances(n, max_jump, cfg.mode, cfg.cap)?;
        loop {
            let chunk: Vec<Instance> = stream.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let results: Vec<Result<InstanceResult>> =
                pool.install(|| chunk.par_iter().map(|inst| process(inst, cfg)).collect());
            for (inst, r) in chunk.iter().zip(results) {
                absorb(&mut report, &mut row, inst, r?);
            }
        }
        report.sizes.push(row);
    }
    report.wall_time = start.elapsed();
    Ok(report)
}
