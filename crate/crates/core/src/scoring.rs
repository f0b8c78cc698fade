//! The score `G(σ)`: the sum of the landings that avoid `M`.

use serde::Serialize;

use crate::error::Result;
use crate::instance::{Instance, Permutation};
use crate::partial_sums::{partial_sums, PartialSumProfile, SwapDelta};

/// `G(σ)` and the unsafe positions of one ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreCard {
    pub g_value: u128,
    /// Ascending 1-based positions `k` with `S_k ∈ M`.
    pub unsafe_positions: Vec<usize>,
}

impl ScoreCard {
    pub fn is_safe(&self) -> bool {
        self.unsafe_positions.is_empty()
    }
}

pub fn score_g(inst: &Instance, sigma: &Permutation) -> Result<ScoreCard> {
    let profile = partial_sums(inst, sigma)?;
    Ok(score_profile(&profile))
}

pub fn score_profile(profile: &PartialSumProfile) -> ScoreCard {
    ScoreCard {
        g_value: g_of_profile(profile),
        unsafe_positions: profile.unsafe_positions(),
    }
}

pub(crate) fn g_of_profile(profile: &PartialSumProfile) -> u128 {
    profile
        .sums()
        .iter()
        .zip(profile.safety())
        .filter(|(_, &safe)| safe)
        .map(|(&s, _)| s as u128)
        .sum()
}

/// True iff no landing of `sigma` is forbidden. Vacuously true for `n = 0`.
pub fn is_safe_permutation(inst: &Instance, sigma: &Permutation) -> Result<bool> {
    Ok(partial_sums(inst, sigma)?.safety().iter().all(|&s| s))
}

/// `G(σ') - G(σ)` for the swap `delta`: `c'·S'_k - c·S_k` where `c`, `c'`
/// are the safety indicators of the old and new landing.
pub fn swap_gain(inst: &Instance, delta: &SwapDelta) -> i128 {
    let contrib = |v: u64| -> i128 {
        if inst.is_forbidden(v) {
            0
        } else {
            v as i128
        }
    };
    contrib(delta.new_landing()) - contrib(delta.old_landing())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Mode;
    use crate::partial_sums::swap_delta;

    fn small() -> Instance {
        Instance::new(vec![1, 2, 4], vec![1, 3], Mode::Classic).unwrap()
    }

    #[test]
    fn identity_score() {
        let card = score_g(&small(), &Permutation::identity(3)).unwrap();
        assert_eq!(card.g_value, 7);
        assert_eq!(card.unsafe_positions, vec![1, 2]);
    }

    #[test]
    fn descending_score() {
        let inst = small();
        let s = inst.ordering_from_values(&[4, 2, 1]).unwrap();
        let card = score_g(&inst, &s).unwrap();
        assert_eq!(card.g_value, 17);
        assert!(card.is_safe());
    }

    #[test]
    fn empty_forbidden_sums_everything() {
        let inst = Instance::new(vec![3, 1, 2], vec![], Mode::Generalized).unwrap();
        let s = Permutation::from_order(vec![1, 2, 0]).unwrap();
        let card = score_g(&inst, &s).unwrap();
        assert_eq!(card.g_value, 1 + 3 + 6);
        assert!(card.unsafe_positions.is_empty());
    }

    #[test]
    fn safety_checks() {
        let inst = small();
        let s = inst.ordering_from_values(&[2, 4, 1]).unwrap();
        assert!(is_safe_permutation(&inst, &s).unwrap());
        assert!(!is_safe_permutation(&inst, &Permutation::identity(3)).unwrap());
        let empty = Instance::empty(Mode::Generalized);
        assert!(is_safe_permutation(&empty, &Permutation::identity(0)).unwrap());
        assert_eq!(score_g(&empty, &Permutation::identity(0)).unwrap().g_value, 0);
    }

    #[test]
    fn gain_matches_recompute() {
        let inst = small();
        let id = Permutation::identity(3);
        // k=2: 3∈M -> 5∉M, gain +5; k=1: 1∈M -> 2∉M, gain +2
        assert_eq!(swap_gain(&inst, &swap_delta(&inst, &id, 2).unwrap()), 5);
        assert_eq!(swap_gain(&inst, &swap_delta(&inst, &id, 1).unwrap()), 2);
    }
}
