//! Searching for safe orderings and for G-maximal orderings.
//!
//! Three tools: lexicographic exhaustive enumeration (the oracle for small
//! `n`), a best-improvement hill climb over adjacent swaps, and the
//! [`solve`] pipeline that chains them.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{check_size, next_permutation, Instance, Permutation};
use crate::partial_sums::{delta_from_profile, profile_unchecked};
use crate::scoring::{g_of_profile, score_g, swap_gain};

pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 8;
pub const DEFAULT_RESTARTS: usize = 8;
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    HillClimb,
    Exhaustive,
    Vacuous,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::HillClimb => "hill_climb",
            Strategy::Exhaustive => "exhaustive",
            Strategy::Vacuous => "vacuous",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub permutations_examined: u64,
    pub swaps_applied: u64,
    /// Not serialized, so reports stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub witness: Option<Permutation>,
    pub strategy: Strategy,
    pub stats: SearchStats,
}

/// Visits every ordering of `0..n` in lexicographic order until `f` returns
/// false. Returns the number of orderings visited.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> u64 {
    let mut order: Vec<usize> = (0..n).collect();
    let mut visited = 0u64;
    loop {
        visited += 1;
        if !f(&order) || !next_permutation(&mut order) {
            return visited;
        }
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Ok(())
}

/// First safe ordering in lexicographic order, or none. On a validated
/// instance a `None` witness would be a counterexample to the theorem.
pub fn exhaustive_search(inst: &Instance, bound: usize) -> Result<SearchOutcome> {
    check_bound(inst.n(), bound)?;
    let start = Instant::now();
    let mut witness = None;
    let examined = for_each_permutation(inst.n(), |order| {
        if safe_order(inst, order) {
            witness = Some(Permutation::from_order_unchecked(order.to_vec()));
            false
        } else {
            true
        }
    });
    Ok(SearchOutcome {
        witness,
        strategy: Strategy::Exhaustive,
        stats: SearchStats {
            permutations_examined: examined,
            swaps_applied: 0,
            wall_time: start.elapsed(),
        },
    })
}

fn safe_order(inst: &Instance, order: &[usize]) -> bool {
    let mut acc = 0u64;
    for &i in order {
        acc += inst.jump(i);
        if inst.is_forbidden(acc) {
            return false;
        }
    }
    true
}

/// Orderings attaining the maximum of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSet {
    pub g_max: u128,
    /// Lexicographically sorted. Exact mode: the full argmax. Heuristic
    /// mode: one adjacent-swap local maximum.
    pub argmax: Vec<Permutation>,
    /// False for a heuristic local maximum.
    pub exact: bool,
}

impl MaximalSet {
    pub fn is_local(&self) -> bool {
        !self.exact
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.argmax.binary_search(sigma).is_ok()
    }
}

/// Exact `max G` and the complete argmax by enumeration.
pub fn g_maximal_exact(inst: &Instance, bound: usize) -> Result<MaximalSet> {
    check_bound(inst.n(), bound)?;
    let mut g_max = 0u128;
    let mut argmax: Vec<Permutation> = Vec::new();
    for_each_permutation(inst.n(), |order| {
        let g = g_of_profile(&profile_unchecked(inst, order));
        if g > g_max || argmax.is_empty() {
            g_max = g;
            argmax.clear();
        }
        if g == g_max {
            argmax.push(Permutation::from_order_unchecked(order.to_vec()));
        }
        true
    });
    Ok(MaximalSet {
        g_max,
        argmax,
        exact: true,
    })
}

/// Local maximum reached by [`hill_climb`] from the descending seed.
pub fn g_maximal_heuristic(inst: &Instance, budget: usize) -> MaximalSet {
    let climb = climb_order(inst, descending_seed(inst).into_order(), budget);
    MaximalSet {
        g_max: climb.g_value,
        argmax: vec![climb.permutation],
        exact: false,
    }
}

/// Outcome of one hill climb.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClimbResult {
    pub permutation: Permutation,
    pub g_value: u128,
    /// Improving swaps applied.
    pub steps: usize,
    /// True when the step budget ran out while an improving swap remained.
    pub budget_exhausted: bool,
    /// `G` before each step and after the last one.
    pub trace: Vec<u128>,
}

/// Best-improvement climb under adjacent swaps. Each step applies the swap
/// with the largest strictly positive gain in `G`, ties to the smallest `k`.
pub fn hill_climb(inst: &Instance, start: &Permutation, budget: usize) -> Result<ClimbResult> {
    check_size(inst, start)?;
    Ok(climb_order(inst, start.order().to_vec(), budget))
}

fn climb_order(inst: &Instance, mut order: Vec<usize>, budget: usize) -> ClimbResult {
    let n = order.len();
    let mut profile = profile_unchecked(inst, &order);
    let mut g = g_of_profile(&profile);
    let mut trace = vec![g];
    let mut steps = 0;
    let mut budget_exhausted = false;
    loop {
        let mut best: Option<(i128, crate::partial_sums::SwapDelta)> = None;
        for k in 1..n {
            let delta = delta_from_profile(inst, &order, &profile, k);
            let gain = swap_gain(inst, &delta);
            if gain > 0 && best.is_none_or(|(b, _)| gain > b) {
                best = Some((gain, delta));
            }
        }
        let Some((gain, delta)) = best else { break };
        if steps == budget {
            budget_exhausted = true;
            break;
        }
        order.swap(delta.position - 1, delta.position);
        profile.apply_swap(&delta, inst);
        g = (g as i128 + gain) as u128;
        trace.push(g);
        steps += 1;
    }
    ClimbResult {
        permutation: Permutation::from_order_unchecked(order),
        g_value: g,
        steps,
        budget_exhausted,
        trace,
    }
}

/// Jump indices sorted by decreasing length.
pub fn descending_seed(inst: &Instance) -> Permutation {
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inst.jump(i)));
    Permutation::from_order_unchecked(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveConfig {
    pub exhaustive_bound: usize,
    pub restarts: usize,
    pub budget: usize,
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            exhaustive_bound: DEFAULT_EXHAUSTIVE_BOUND,
            restarts: DEFAULT_RESTARTS,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

/// Vacuity check, then hill climbs from the descending seed and from
/// `restarts` seeded shuffles, then exhaustive fallback within the bound.
pub fn solve(inst: &Instance, cfg: &SolveConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    if inst.is_vacuous() {
        return Ok(SearchOutcome {
            witness: Some(Permutation::identity(0)),
            strategy: Strategy::Vacuous,
            stats: SearchStats {
                wall_time: start.elapsed(),
                ..SearchStats::default()
            },
        });
    }

    let mut stats = SearchStats::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<ClimbResult> = None;
    for attempt in 0..=cfg.restarts {
        let seed = if attempt == 0 {
            descending_seed(inst).into_order()
        } else {
            let mut order: Vec<usize> = (0..inst.n()).collect();
            order.shuffle(&mut rng);
            order
        };
        let climb = climb_order(inst, seed, cfg.budget);
        stats.permutations_examined += 1 + climb.steps as u64;
        stats.swaps_applied += climb.steps as u64;
        if safe_order(inst, climb.permutation.order()) {
            stats.wall_time = start.elapsed();
            return Ok(SearchOutcome {
                witness: Some(climb.permutation),
                strategy: Strategy::HillClimb,
                stats,
            });
        }
        if best.as_ref().is_none_or(|b| climb.g_value > b.g_value) {
            best = Some(climb);
        }
    }

    if inst.n() > cfg.exhaustive_bound {
        let best = best.expect("at least one climb runs");
        let unsafe_positions = score_g(inst, &best.permutation)?.unsafe_positions;
        return Err(Error::Unsolved {
            best: best.permutation.into_order(),
            unsafe_positions,
        });
    }
    let mut outcome = exhaustive_search(inst, cfg.exhaustive_bound)?;
    outcome.stats.permutations_examined += stats.permutations_examined;
    outcome.stats.swaps_applied = stats.swaps_applied;
    outcome.stats.wall_time = start.elapsed();
    Ok(outcome)
}
