//! Swap-closure exploration around G-maximal orderings.
//!
//! A swap at an unsafe position `k` whose new landing is also forbidden
//! leaves `G` unchanged, so from an exact maximizer it stays inside the
//! argmax. Breadth-first search over such swaps collects every forbidden
//! landing the maximizer class is forced to hit. The counting step would
//! need these values to number at least `n`; this module only measures them.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{check_size, Instance, Permutation};
use crate::partial_sums::{delta_from_profile, profile_unchecked};
use crate::scoring::g_of_profile;
use crate::search::{g_maximal_exact, MaximalSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// The start must be a certified exact maximizer.
    Strict,
    /// Any start; results carry no maximality hypothesis.
    Exploratory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureVerdict {
    pub forced_count: usize,
    pub n: usize,
    pub forbidden_count: usize,
    /// `forced_count >= n`; never true on a validated instance.
    pub reaches_n: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub mode: ClosureMode,
    pub start: Permutation,
    pub g_value: u128,
    pub visited: usize,
    /// Ascending forbidden landings hit across the closure.
    pub forced_values: Vec<u64>,
    /// Every visited ordering had the start's `G`.
    pub g_constant: bool,
    pub verdict: ClosureVerdict,
}

/// BFS over G-preserving swaps from `start`. Strict mode requires `maximal`
/// to be the exact argmax containing `start`.
pub fn g_preserving_closure(
    inst: &Instance,
    start: &Permutation,
    mode: ClosureMode,
    maximal: Option<&MaximalSet>,
) -> Result<ClosureReport> {
    check_size(inst, start)?;
    if mode == ClosureMode::Strict {
        match maximal {
            Some(m) if m.exact && m.contains(start) => {}
            _ => {
                return Err(Error::NotMaximal {
                    order: start.order().to_vec(),
                })
            }
        }
    }
    Ok(explore(inst, start, mode).0)
}

fn explore(inst: &Instance, start: &Permutation, mode: ClosureMode) -> (ClosureReport, Vec<Permutation>) {
    let n = inst.n();
    let start_g = g_of_profile(&profile_unchecked(inst, start.order()));
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut members = Vec::new();
    let mut forced = BTreeSet::new();
    let mut g_constant = true;

    seen.insert(start.order().to_vec());
    queue.push_back(start.order().to_vec());
    while let Some(order) = queue.pop_front() {
        let profile = profile_unchecked(inst, &order);
        if g_of_profile(&profile) != start_g {
            g_constant = false;
        }
        for (&s, &safe) in profile.sums().iter().zip(profile.safety()) {
            if !safe {
                assert!(inst.is_forbidden(s));
                forced.insert(s);
            }
        }
        for k in 1..n {
            if profile.is_safe_at(k) {
                continue;
            }
            let delta = delta_from_profile(inst, &order, &profile, k);
            if !inst.is_forbidden(delta.new_landing()) {
                continue;
            }
            let mut next = order.clone();
            next.swap(k - 1, k);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        members.push(Permutation::from_order_unchecked(order));
    }
    if mode == ClosureMode::Strict {
        assert!(g_constant, "G changed inside a strict closure");
    }

    let forced_values: Vec<u64> = forced.into_iter().collect();
    let verdict = ClosureVerdict {
        forced_count: forced_values.len(),
        n,
        forbidden_count: inst.forbidden().len(),
        reaches_n: forced_values.len() >= n,
    };
    let report = ClosureReport {
        mode,
        start: start.clone(),
        g_value: start_g,
        visited: members.len(),
        forced_values,
        g_constant,
        verdict,
    };
    (report, members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub g_max: u128,
    pub argmax_size: usize,
    /// One report per G-preserving component of the argmax, in order of
    /// each component's lexicographically smallest member.
    pub components: Vec<ClosureReport>,
    /// Some exact maximizer has a forbidden landing.
    pub unsafe_maximizer: bool,
}

impl ProbeReport {
    pub fn max_forced(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.verdict.forced_count)
            .max()
            .unwrap_or(0)
    }
}

/// Splits the exact argmax into G-preserving components and reports the
/// closure of each.
pub fn counting_probe(inst: &Instance, bound: usize) -> Result<ProbeReport> {
    if inst.is_vacuous() {
        return Ok(ProbeReport {
            g_max: 0,
            argmax_size: 0,
            components: Vec::new(),
            unsafe_maximizer: false,
        });
    }
    let maximal = g_maximal_exact(inst, bound)?;
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut components = Vec::new();
    for sigma in &maximal.argmax {
        if covered.contains(sigma) {
            continue;
        }
        let (report, members) = explore(inst, sigma, ClosureMode::Strict);
        debug_assert!(members.iter().all(|m| maximal.contains(m)));
        covered.extend(members);
        components.push(report);
    }
    let unsafe_maximizer = components.iter().any(|c| !c.forced_values.is_empty());
    Ok(ProbeReport {
        g_max: maximal.g_max,
        argmax_size: maximal.argmax.len(),
        components,
        unsafe_maximizer,
    })
}
