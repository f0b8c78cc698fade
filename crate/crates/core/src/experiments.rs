//! Seeded randomized batches over the lemma checks and the swap delta.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::generator::{random_instance, GenConfig, MPolicy};
use crate::instance::{Instance, Mode, Permutation};
use crate::lemmas::{lemma_ps_last, lemma_ps_swap, lemma_ps_swap_eq, lemma_sweep, SweepConfig, SweepSummary};
use crate::partial_sums::{delta_from_profile, partial_sums, swap_delta};

/// Draws a random instance with `n` in `n_min..=n_max`.
pub fn random_config(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize) -> GenConfig {
    let n = rng.gen_range(n_min..=n_max);
    let max_jump = n as u64 + rng.gen_range(0..=3 * n as u64);
    GenConfig {
        n,
        max_jump,
        mode: if rng.gen_bool(0.5) {
            Mode::Classic
        } else {
            Mode::Generalized
        },
        seed: rng.gen(),
        m_policy: if rng.gen_bool(0.5) {
            MPolicy::Uniform
        } else {
            MPolicy::Adversarial
        },
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Permutation::from_order(order).expect("shuffle of identity")
}

/// `count` random instances with `n <= n_max`, each fully swept.
pub fn random_lemma_batch(count: u64, seed: u64, n_max: usize, cfg: &SweepConfig) -> Result<SweepSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = SweepSummary::default();
    for _ in 0..count {
        let inst = random_instance(&random_config(&mut rng, 1, n_max))?;
        let sweep_cfg = SweepConfig {
            seed: rng.gen(),
            ..*cfg
        };
        total.merge(&lemma_sweep(&inst, &sweep_cfg)?);
    }
    Ok(total)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub summary: SweepSummary,
    /// Profiles that were not strictly increasing.
    pub non_monotone: u64,
}

/// `count` random `(instance, σ, k)` triples, `2 <= n <= n_max`, each checked
/// against `PS_last`, `PS_swap` and `PS_swap_eq`.
pub fn random_triples(count: u64, seed: u64, n_max: usize) -> Result<TripleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = TripleReport::default();
    for _ in 0..count {
        let inst = random_instance(&random_config(&mut rng, 2, n_max))?;
        let sigma = random_permutation(&mut rng, inst.n());
        let k = rng.gen_range(1..inst.n());
        if !partial_sums(&inst, &sigma)?.is_strictly_increasing() {
            report.non_monotone += 1;
        }
        report.summary.record(&lemma_ps_last(&inst, &sigma)?);
        report.summary.record(&lemma_ps_swap(&inst, &sigma, k)?);
        report.summary.record(&lemma_ps_swap_eq(&inst, &sigma, k)?);
    }
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub swaps: u64,
    pub mismatches: u64,
}

/// Random walks of adjacent swaps: after each swap the O(1)-updated profile
/// and delta are compared with full recomputation. Stops after `swaps`.
pub fn delta_equivalence(swaps: u64, seed: u64, n_max: usize) -> Result<DeltaReport> {
    const WALK: u64 = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DeltaReport::default();
    while report.swaps < swaps {
        let inst: Instance = random_instance(&random_config(&mut rng, 2, n_max))?;
        let mut order = random_permutation(&mut rng, inst.n()).into_order();
        let mut profile = partial_sums(&inst, &Permutation::from_order_unchecked(order.clone()))?;
        for _ in 0..WALK.min(swaps - report.swaps) {
            let k = rng.gen_range(1..inst.n());
            let sigma = Permutation::from_order_unchecked(order.clone());
            let fast = delta_from_profile(&inst, &order, &profile, k);
            let slow = swap_delta(&inst, &sigma, k)?;
            profile.apply_swap(&fast, &inst);
            order.swap(k - 1, k);
            let fresh = partial_sums(&inst, &Permutation::from_order_unchecked(order.clone()))?;
            if fast != slow || profile != fresh {
                report.mismatches += 1;
                profile = fresh;
            }
            report.swaps += 1;
        }
    }
    Ok(report)
}
