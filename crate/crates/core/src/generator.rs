//! Seeded random instances and exhaustive instance families.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Instance, Mode};

/// How the forbidden set is drawn.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MPolicy {
    /// Uniform over `{1..Σ-1}`.
    #[default]
    Uniform,
    /// Prefer landings of the ascending and descending orderings.
    Adversarial,
}

impl fmt::Display for MPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MPolicy::Uniform => "uniform",
            MPolicy::Adversarial => "adversarial",
        })
    }
}

impl std::str::FromStr for MPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(MPolicy::Uniform),
            "adversarial" => Ok(MPolicy::Adversarial),
            other => Err(format!("unknown policy {other:?} (expected uniform or adversarial)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub n: usize,
    pub max_jump: u64,
    pub mode: Mode,
    pub seed: u64,
    pub m_policy: MPolicy,
}

impl GenConfig {
    pub fn new(n: usize, max_jump: u64, mode: Mode, seed: u64) -> Self {
        Self {
            n,
            max_jump,
            mode,
            seed,
            m_policy: MPolicy::Uniform,
        }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InfeasibleConfig(
                "n = 0 admits no forbidden set of the required size".into(),
            ));
        }
        if self.max_jump < self.n as u64 {
            return Err(Error::InfeasibleConfig(format!(
                "max jump {} < n = {}: not enough distinct positive values",
                self.max_jump, self.n
            )));
        }
        if (self.n as u128) * (self.max_jump as u128) > u64::MAX as u128 {
            return Err(Error::InfeasibleConfig(
                "n * max jump may overflow 64-bit sums".into(),
            ));
        }
        Ok(())
    }
}

/// `count` distinct values from `lo..=hi`, in sampling order.
fn sample_distinct(rng: &mut ChaCha8Rng, lo: u64, hi: u64, count: usize) -> Vec<u64> {
    let span = hi - lo + 1;
    debug_assert!(count as u64 <= span);
    if span <= 1 << 20 {
        return index::sample(rng, span as usize, count)
            .into_iter()
            .map(|i| lo + i as u64)
            .collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = rng.gen_range(lo..=hi);
        if seen.insert(v) {
            out.push(v);
        }
    }
    out
}

fn prefix_landings(jumps: &[u64]) -> Vec<u64> {
    jumps
        .iter()
        .scan(0u64, |acc, &a| {
            *acc += a;
            Some(*acc)
        })
        .collect()
}

/// A validated instance drawn deterministically from `cfg.seed`. Jumps are
/// sorted ascending.
pub fn random_instance(cfg: &GenConfig) -> Result<Instance> {
    cfg.check()?;
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut jumps = sample_distinct(&mut rng, 1, cfg.max_jump, n);
    jumps.sort_unstable();
    let total: u64 = jumps.iter().sum();

    let size = match cfg.mode {
        Mode::Classic => n - 1,
        Mode::Generalized => rng.gen_range(0..n),
    };
    // |{1..Σ-1}| = Σ - 1 >= n - 1 for distinct positive jumps
    let forbidden = match cfg.m_policy {
        MPolicy::Uniform if size == 0 => Vec::new(),
        MPolicy::Uniform => sample_distinct(&mut rng, 1, total - 1, size),
        MPolicy::Adversarial => {
            let mut desc = jumps.clone();
            desc.reverse();
            let mut pool: Vec<u64> = prefix_landings(&jumps)
                .into_iter()
                .chain(prefix_landings(&desc))
                .filter(|&v| v != total)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            pool.shuffle(&mut rng);
            pool.truncate(size);
            let mut chosen: BTreeSet<u64> = pool.into_iter().collect();
            while chosen.len() < size {
                chosen.insert(rng.gen_range(1..total));
            }
            chosen.into_iter().collect()
        }
    };
    Instance::new(jumps, forbidden, cfg.mode)
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn m_sizes(n: usize, mode: Mode) -> std::ops::Range<usize> {
    match mode {
        Mode::Classic if n == 0 => 0..0,
        Mode::Classic => n - 1..n,
        Mode::Generalized => 0..n,
    }
}

/// Number of instances [`enumerate_instances`] yields.
pub fn count_instances(n: usize, max_jump: u64, mode: Mode) -> u128 {
    (1..=max_jump)
        .combinations(n)
        .map(|jumps| {
            let total: u64 = jumps.iter().sum();
            m_sizes(n, mode)
                .map(|s| binomial(total.saturating_sub(1), s as u64))
                .sum::<u128>()
        })
        .sum()
}

/// Every instance whose jumps form an ascending `n`-subset of
/// `{1..max_jump}` and whose forbidden set is a subset of `{1..Σ-1}` of an
/// admissible size. Jump sets come in lexicographic order, then forbidden
/// sets by size and lexicographically.
pub fn enumerate_instances(
    n: usize,
    max_jump: u64,
    mode: Mode,
    cap: u128,
) -> Result<impl Iterator<Item = Instance>> {
    let estimated = count_instances(n, max_jump, mode);
    if estimated > cap {
        return Err(Error::BudgetExceeded { estimated, cap });
    }
    Ok((1..=max_jump).combinations(n).flat_map(move |jumps| {
        let total: u64 = jumps.iter().sum();
        m_sizes(n, mode).flat_map(move |size| {
            let jumps = jumps.clone();
            (1..total).combinations(size).map(move |forbidden| {
                Instance::new(jumps.clone(), forbidden, mode)
                    .expect("enumerated instances satisfy every hypothesis")
            })
        })
    }))
}
