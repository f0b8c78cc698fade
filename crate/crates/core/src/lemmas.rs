//! Executable checks for the four local lemmas of the exchange argument:
//! `PS_last`, `PS_swap`, `PS_swap_eq` and `maximizer_swap_in_M`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{check_size, Instance, Permutation};
use crate::partial_sums::{check_ps_swap, partial_sums, swap_adjacent};
use crate::search::{for_each_permutation, g_maximal_exact, MaximalSet, DEFAULT_EXHAUSTIVE_BOUND};
use crate::scoring::score_g;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaName {
    #[serde(rename = "PS_last")]
    PsLast,
    #[serde(rename = "PS_swap")]
    PsSwap,
    #[serde(rename = "PS_swap_eq")]
    PsSwapEq,
    #[serde(rename = "maximizer_swap_in_M")]
    MaximizerSwapInM,
}

impl LemmaName {
    pub const ALL: [LemmaName; 4] = [
        LemmaName::PsLast,
        LemmaName::PsSwap,
        LemmaName::PsSwapEq,
        LemmaName::MaximizerSwapInM,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaName::PsLast => "PS_last",
            LemmaName::PsSwap => "PS_swap",
            LemmaName::PsSwapEq => "PS_swap_eq",
            LemmaName::MaximizerSwapInM => "maximizer_swap_in_M",
        }
    }
}

impl fmt::Display for LemmaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    /// The lemma's hypothesis does not hold here, so it asserts nothing.
    VacuousPass,
    Fail,
}

/// One lemma instantiated at one `(σ, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: LemmaName,
    pub outcome: Outcome,
    pub position: Option<usize>,
    /// Value the lemma claims.
    pub expected: Option<u64>,
    /// Value observed by recomputation.
    pub observed: Option<u64>,
    /// Positions whose landing broke the claim.
    pub violations: Vec<usize>,
}

impl LemmaCheck {
    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

/// `S_n(σ) = Σ a_i`.
pub fn lemma_ps_last(inst: &Instance, sigma: &Permutation) -> Result<LemmaCheck> {
    if inst.n() == 0 {
        return Err(Error::EmptyInstance);
    }
    let profile = partial_sums(inst, sigma)?;
    let observed = profile.at(inst.n());
    let ok = observed == inst.total();
    Ok(LemmaCheck {
        lemma: LemmaName::PsLast,
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        position: Some(inst.n()),
        expected: Some(inst.total()),
        observed: Some(observed),
        violations: if ok { vec![] } else { vec![inst.n()] },
    })
}

/// Only `S_k` changes under the swap at `k`.
pub fn lemma_ps_swap(inst: &Instance, sigma: &Permutation, k: usize) -> Result<LemmaCheck> {
    let verdict = check_ps_swap(inst, sigma, k)?;
    let violations: Vec<usize> = verdict
        .entries
        .iter()
        .filter(|e| e.changed != (e.index == k))
        .map(|e| e.index)
        .collect();
    Ok(LemmaCheck {
        lemma: LemmaName::PsSwap,
        outcome: if violations.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        position: Some(k),
        expected: None,
        observed: None,
        violations,
    })
}

/// The swapped `S'_k` equals `S_k - a_{σ(k)} + a_{σ(k+1)}`.
pub fn lemma_ps_swap_eq(inst: &Instance, sigma: &Permutation, k: usize) -> Result<LemmaCheck> {
    let swapped = swap_adjacent(sigma, k)?;
    check_size(inst, sigma)?;
    let before = partial_sums(inst, sigma)?;
    let after = partial_sums(inst, &swapped)?;
    // S_k >= a_{σ(k)}, so the subtraction is exact
    let expected = before.at(k) - inst.jump(sigma.apply(k)) + inst.jump(sigma.apply(k + 1));
    let observed = after.at(k);
    let ok = expected == observed;
    Ok(LemmaCheck {
        lemma: LemmaName::PsSwapEq,
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        position: Some(k),
        expected: Some(expected),
        observed: Some(observed),
        violations: if ok { vec![] } else { vec![k] },
    })
}

/// For an exactly G-maximal `σ*` with `S_k(σ*) ∈ M`, the swapped value
/// `S_k - a_{σ*(k)} + a_{σ*(k+1)}` lies in `M` too. When `S_k ∉ M` the check
/// is a vacuous pass.
///
/// `maximal` must be the exact argmax of `inst`; heuristic local maxima are
/// refused with [`Error::NotMaximal`].
pub fn lemma_maximizer_swap_in_m(
    inst: &Instance,
    maximal: &MaximalSet,
    sigma_star: &Permutation,
    k: usize,
) -> Result<LemmaCheck> {
    check_size(inst, sigma_star)?;
    let not_maximal = || Error::NotMaximal {
        order: sigma_star.order().to_vec(),
    };
    if maximal.is_local() || !maximal.contains(sigma_star) {
        return Err(not_maximal());
    }
    if score_g(inst, sigma_star)?.g_value != maximal.g_max {
        return Err(not_maximal());
    }
    let swapped = swap_adjacent(sigma_star, k)?;
    let s_k = partial_sums(inst, sigma_star)?.at(k);
    let forced = s_k - inst.jump(sigma_star.apply(k)) + inst.jump(sigma_star.apply(k + 1));
    debug_assert_eq!(forced, partial_sums(inst, &swapped)?.at(k));

    let outcome = if !inst.is_forbidden(s_k) {
        Outcome::VacuousPass
    } else if inst.is_forbidden(forced) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(LemmaCheck {
        lemma: LemmaName::MaximizerSwapInM,
        outcome,
        position: Some(k),
        expected: Some(forced),
        observed: Some(s_k),
        violations: if outcome == Outcome::Fail { vec![k] } else { vec![] },
    })
}

/// Per-lemma tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaRow {
    pub lemma: LemmaName,
    pub cases: u64,
    pub pass: u64,
    pub vacuous: u64,
    pub fail: u64,
}

impl LemmaRow {
    pub fn new(lemma: LemmaName) -> Self {
        Self {
            lemma,
            cases: 0,
            pass: 0,
            vacuous: 0,
            fail: 0,
        }
    }

    pub fn record(&mut self, check: &LemmaCheck) {
        debug_assert_eq!(check.lemma, self.lemma);
        self.cases += 1;
        match check.outcome {
            Outcome::Pass => self.pass += 1,
            Outcome::VacuousPass => self.vacuous += 1,
            Outcome::Fail => self.fail += 1,
        }
    }

    pub fn merge(&mut self, other: &LemmaRow) {
        self.cases += other.cases;
        self.pass += other.pass;
        self.vacuous += other.vacuous;
        self.fail += other.fail;
    }

    /// `vacuous` when the lemma never applied non-vacuously.
    pub fn status(&self) -> &'static str {
        if self.fail > 0 {
            "FAIL"
        } else if self.pass == 0 {
            "vacuous"
        } else {
            "ok"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub rows: [LemmaRow; 4],
    /// True when permutations were sampled rather than enumerated.
    pub sampled: bool,
}

impl Default for SweepSummary {
    fn default() -> Self {
        Self {
            rows: LemmaName::ALL.map(LemmaRow::new),
            sampled: false,
        }
    }
}

impl SweepSummary {
    pub fn row(&self, lemma: LemmaName) -> &LemmaRow {
        &self.rows[lemma as usize]
    }

    fn row_mut(&mut self, lemma: LemmaName) -> &mut LemmaRow {
        &mut self.rows[lemma as usize]
    }

    pub fn record(&mut self, check: &LemmaCheck) {
        self.row_mut(check.lemma).record(check);
    }

    pub fn merge(&mut self, other: &SweepSummary) {
        for (a, b) in self.rows.iter_mut().zip(other.rows.iter()) {
            a.merge(b);
        }
        self.sampled |= other.sampled;
    }

    pub fn failures(&self) -> u64 {
        self.rows.iter().map(|r| r.fail).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    /// Above this `n`, orderings are sampled instead of enumerated.
    pub sample_above: usize,
    pub sample_size: usize,
    /// `maximizer_swap_in_M` runs only for `n` up to this bound.
    pub exhaustive_bound: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            sample_above: 7,
            sample_size: 256,
            exhaustive_bound: DEFAULT_EXHAUSTIVE_BOUND,
            seed: 0,
        }
    }
}

/// Runs the three profile lemmas over every ordering (or a seeded sample)
/// and every swap position, and `maximizer_swap_in_M` over every member of
/// the exact argmax.
pub fn lemma_sweep(inst: &Instance, cfg: &SweepConfig) -> Result<SweepSummary> {
    let mut summary = SweepSummary::default();
    let n = inst.n();
    if n == 0 {
        return Ok(summary);
    }

    let mut visit = |sigma: &Permutation| -> Result<()> {
        summary.record(&lemma_ps_last(inst, sigma)?);
        for k in 1..n {
            summary.record(&lemma_ps_swap(inst, sigma, k)?);
            summary.record(&lemma_ps_swap_eq(inst, sigma, k)?);
        }
        Ok(())
    };

    let sampled = n > cfg.sample_above;
    if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..cfg.sample_size {
            order.shuffle(&mut rng);
            visit(&Permutation::from_order_unchecked(order.clone()))?;
        }
    } else {
        let mut result = Ok(());
        for_each_permutation(n, |order| {
            result = visit(&Permutation::from_order_unchecked(order.to_vec()));
            result.is_ok()
        });
        result?;
    }
    summary.sampled = sampled;

    if n <= cfg.exhaustive_bound {
        let maximal = g_maximal_exact(inst, cfg.exhaustive_bound)?;
        for sigma in &maximal.argmax {
            for k in 1..n {
                summary.record(&lemma_maximizer_swap_in_m(inst, &maximal, sigma, k)?);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Mode;
    use crate::search::g_maximal_heuristic;

    fn small() -> Instance {
        Instance::new(vec![1, 2, 4], vec![1, 3], Mode::Classic).unwrap()
    }

    #[test]
    fn names_match_table() {
        let names: Vec<_> = LemmaName::ALL.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["PS_last", "PS_swap", "PS_swap_eq", "maximizer_swap_in_M"]);
    }

    #[test]
    fn ps_last_examples() {
        let inst = small();
        for_each_permutation(3, |o| {
            let c = lemma_ps_last(&inst, &Permutation::from_order(o.to_vec()).unwrap()).unwrap();
            assert_eq!(c.outcome, Outcome::Pass);
            assert_eq!(c.observed, Some(7));
            true
        });
        let one = Instance::new(vec![5], vec![], Mode::Classic).unwrap();
        assert_eq!(
            lemma_ps_last(&one, &Permutation::identity(1)).unwrap().observed,
            Some(5)
        );
        assert_eq!(
            lemma_ps_last(&Instance::empty(Mode::Generalized), &Permutation::identity(0)).unwrap_err(),
            Error::EmptyInstance
        );
    }

    #[test]
    fn swap_eq_examples() {
        let inst = small();
        let id = Permutation::identity(3);
        let c = lemma_ps_swap_eq(&inst, &id, 2).unwrap();
        assert_eq!((c.expected, c.observed), (Some(5), Some(5)));
        let c = lemma_ps_swap_eq(&inst, &id, 1).unwrap();
        assert_eq!((c.expected, c.observed), (Some(2), Some(2)));
        assert!(lemma_ps_swap(&inst, &id, 1).unwrap().passed());
        assert!(matches!(
            lemma_ps_swap(&inst, &id, 3),
            Err(Error::PositionOutOfRange { .. })
        ));
    }

    #[test]
    fn maximizer_refuses_uncertified() {
        let inst = small();
        let exact = g_maximal_exact(&inst, 8).unwrap();
        let id = Permutation::identity(3);
        assert!(matches!(
            lemma_maximizer_swap_in_m(&inst, &exact, &id, 1),
            Err(Error::NotMaximal { .. })
        ));
        let local = g_maximal_heuristic(&inst, 100);
        let top = local.argmax[0].clone();
        assert!(matches!(
            lemma_maximizer_swap_in_m(&inst, &local, &top, 1),
            Err(Error::NotMaximal { .. })
        ));
    }

    #[test]
    fn maximizer_vacuous_on_safe_maximum() {
        let inst = small();
        let exact = g_maximal_exact(&inst, 8).unwrap();
        for k in 1..3 {
            let c = lemma_maximizer_swap_in_m(&inst, &exact, &exact.argmax[0], k).unwrap();
            assert_eq!(c.outcome, Outcome::VacuousPass);
        }
    }

    #[test]
    fn sweep_counts() {
        let s = lemma_sweep(&small(), &SweepConfig::default()).unwrap();
        let counts: Vec<_> = s.rows.iter().map(|r| (r.cases, r.pass, r.vacuous, r.fail)).collect();
        assert_eq!(counts, vec![(6, 6, 0, 0), (12, 12, 0, 0), (12, 12, 0, 0), (2, 0, 2, 0)]);
        assert_eq!(s.row(LemmaName::MaximizerSwapInM).status(), "vacuous");

        let one = Instance::new(vec![3], vec![], Mode::Classic).unwrap();
        let s = lemma_sweep(&one, &SweepConfig::default()).unwrap();
        assert_eq!(s.row(LemmaName::PsLast).cases, 1);
        assert!(s.rows[1..].iter().all(|r| r.cases == 0));

        let pair = Instance::new(vec![1, 2], vec![2], Mode::Classic).unwrap();
        let s = lemma_sweep(&pair, &SweepConfig::default()).unwrap();
        assert_eq!(s.row(LemmaName::PsSwap).cases, 2);
        assert_eq!(s.row(LemmaName::PsLast).cases, 2);
    }
}
