//! Landing positions `S_1..S_n` and the adjacent-swap calculus.
//!
//! Swapping the jumps at positions `k` and `k + 1` changes only `S_k`: with
//! `P = S_{k-1}` (and `S_0 = 0`), the old landing is `P + x` and the new one
//! is `P + y`, where `x` and `y` are the swapped jump lengths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{check_size, Instance, Permutation};

/// Landing positions of one ordering together with their safety flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSumProfile {
    sums: Vec<u64>,
    safety: Vec<bool>,
}

impl PartialSumProfile {
    /// `sums()[k - 1]` is `S_k`.
    pub fn sums(&self) -> &[u64] {
        &self.sums
    }

    /// `safety()[k - 1]` is `S_k ∉ M`.
    pub fn safety(&self) -> &[bool] {
        &self.safety
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// `S_k` for 1-based `k`; `S_0 = 0`.
    #[inline]
    pub fn at(&self, k: usize) -> u64 {
        if k == 0 {
            0
        } else {
            self.sums[k - 1]
        }
    }

    #[inline]
    pub fn is_safe_at(&self, k: usize) -> bool {
        self.safety[k - 1]
    }

    /// 1-based positions whose landing is forbidden.
    pub fn unsafe_positions(&self) -> Vec<usize> {
        self.safety
            .iter()
            .enumerate()
            .filter(|(_, &safe)| !safe)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.sums.windows(2).all(|w| w[0] < w[1])
    }

    /// O(1) update after the swap described by `delta`. Only `S_k` and its
    /// flag change.
    pub fn apply_swap(&mut self, delta: &SwapDelta, inst: &Instance) {
        let new = delta.new_landing();
        self.sums[delta.position - 1] = new;
        self.safety[delta.position - 1] = !inst.is_forbidden(new);
    }
}

/// Bookkeeping of one adjacent transposition at position `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SwapDelta {
    /// `k`: positions `k` and `k + 1` are exchanged.
    pub position: usize,
    /// `P = S_{k-1}`.
    pub prev_sum: u64,
    /// `x = a_{σ(k)}`.
    pub first: u64,
    /// `y = a_{σ(k+1)}`.
    pub second: u64,
}

impl SwapDelta {
    pub fn old_landing(&self) -> u64 {
        self.prev_sum + self.first
    }

    pub fn new_landing(&self) -> u64 {
        self.prev_sum + self.second
    }
}

/// Computes `S_1..S_n` of `sigma` from scratch.
pub fn partial_sums(inst: &Instance, sigma: &Permutation) -> Result<PartialSumProfile> {
    check_size(inst, sigma)?;
    Ok(profile_unchecked(inst, sigma.order()))
}

pub(crate) fn profile_unchecked(inst: &Instance, order: &[usize]) -> PartialSumProfile {
    let mut sums = Vec::with_capacity(order.len());
    let mut safety = Vec::with_capacity(order.len());
    let mut acc = 0u64;
    for &i in order {
        // cannot overflow: acc <= total, checked at validation
        acc += inst.jump(i);
        sums.push(acc);
        safety.push(!inst.is_forbidden(acc));
    }
    PartialSumProfile { sums, safety }
}

/// `S_n`, which equals `Σ a_i` for every ordering.
pub fn ps_last(inst: &Instance, sigma: &Permutation) -> Result<u64> {
    if inst.n() == 0 {
        return Err(Error::EmptyInstance);
    }
    let profile = partial_sums(inst, sigma)?;
    let last = profile.at(inst.n());
    assert_eq!(last, inst.total(), "final landing differs from the total");
    Ok(last)
}

fn check_position(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::PositionOutOfRange {
            position: k,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// Exchanges the jumps at positions `k` and `k + 1`.
pub fn swap_adjacent(sigma: &Permutation, k: usize) -> Result<Permutation> {
    check_position(sigma.len(), k)?;
    let mut order = sigma.order().to_vec();
    order.swap(k - 1, k);
    Ok(Permutation::from_order_unchecked(order))
}

/// `(P, x, y)` for a swap at `k`.
pub fn swap_delta(inst: &Instance, sigma: &Permutation, k: usize) -> Result<SwapDelta> {
    check_size(inst, sigma)?;
    check_position(inst.n(), k)?;
    let order = sigma.order();
    let prev_sum = order[..k - 1].iter().map(|&i| inst.jump(i)).sum();
    Ok(SwapDelta {
        position: k,
        prev_sum,
        first: inst.jump(order[k - 1]),
        second: inst.jump(order[k]),
    })
}

/// Delta read off an existing profile in O(1).
pub(crate) fn delta_from_profile(
    inst: &Instance,
    order: &[usize],
    profile: &PartialSumProfile,
    k: usize,
) -> SwapDelta {
    SwapDelta {
        position: k,
        prev_sum: profile.at(k - 1),
        first: inst.jump(order[k - 1]),
        second: inst.jump(order[k]),
    }
}

/// One landing before and after a swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexChange {
    pub index: usize,
    pub old: u64,
    pub new: u64,
    pub changed: bool,
}

/// Result of comparing the profiles of `σ` and its swap at `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapVerdict {
    pub position: usize,
    pub entries: Vec<IndexChange>,
    /// `S_k - a_{σ(k)} + a_{σ(k+1)}`.
    pub predicted: u64,
    /// Indices whose behaviour contradicts the locality claim or the
    /// predicted value.
    pub violations: Vec<usize>,
}

impl SwapVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Recomputed `S'_k` of the swapped ordering.
    pub fn recomputed(&self) -> u64 {
        self.entries[self.position - 1].new
    }
}

/// Recomputes both profiles independently and checks that exactly `S_k`
/// moved, to `S_k - a_{σ(k)} + a_{σ(k+1)}`.
pub fn check_ps_swap(inst: &Instance, sigma: &Permutation, k: usize) -> Result<SwapVerdict> {
    check_size(inst, sigma)?;
    let swapped = swap_adjacent(sigma, k)?;
    let before = partial_sums(inst, sigma)?;
    let after = partial_sums(inst, &swapped)?;
    let s_k = before.at(k);
    let predicted = s_k - inst.jump(sigma.apply(k)) + inst.jump(sigma.apply(k + 1));

    let mut entries = Vec::with_capacity(inst.n());
    let mut violations = Vec::new();
    for j in 1..=inst.n() {
        let (old, new) = (before.at(j), after.at(j));
        let changed = old != new;
        let ok = if j == k {
            changed && new == predicted
        } else {
            !changed
        };
        if !ok {
            violations.push(j);
        }
        entries.push(IndexChange {
            index: j,
            old,
            new,
            changed,
        });
    }
    Ok(SwapVerdict {
        position: k,
        entries,
        predicted,
        violations,
    })
}
