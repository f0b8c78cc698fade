//! Problem instances and jump orderings.
//!
//! An [`Instance`] holds `n` distinct positive jump lengths and a finite
//! forbidden set `M`. A [`Permutation`] orders the jump indices. Positions are
//! 1-based (`S_1..S_n`); jump indices are 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which cardinality hypothesis the forbidden set must satisfy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `|M| = n - 1`, the original competition form.
    Classic,
    /// `|M| < n`.
    #[default]
    Generalized,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Classic => "classic",
            Mode::Generalized => "generalized",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "classic" => Ok(Mode::Classic),
            "generalized" | "generalised" => Ok(Mode::Generalized),
            other => Err(format!("unknown mode {other:?} (expected classic or generalized)")),
        }
    }
}

/// Unvalidated instance data, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInstance {
    pub jumps: Vec<u64>,
    #[serde(default)]
    pub forbidden: Vec<u64>,
    #[serde(default)]
    pub mode: Mode,
}

impl RawInstance {
    pub fn new(jumps: Vec<u64>, forbidden: Vec<u64>, mode: Mode) -> Self {
        Self {
            jumps,
            forbidden,
            mode,
        }
    }
}

/// Threshold under which membership queries go through a bitset.
const BITSET_LIMIT: u64 = 1 << 16;

/// The forbidden set `M`: sorted, duplicate-free, with an optional bitset
/// index when every member is small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenSet {
    values: Vec<u64>,
    bits: Option<Vec<u64>>,
}

impl ForbiddenSet {
    pub fn new(mut values: Vec<u64>) -> Self {
        values.sort_unstable();
        values.dedup();
        let bits = match values.last() {
            Some(&max) if max < BITSET_LIMIT => {
                let mut words = vec![0u64; (max as usize) / 64 + 1];
                for &v in &values {
                    words[(v / 64) as usize] |= 1 << (v % 64);
                }
                Some(words)
            }
            _ => None,
        };
        Self { values, bits }
    }

    #[inline]
    pub fn contains(&self, value: u64) -> bool {
        match &self.bits {
            Some(words) => words
                .get((value / 64) as usize)
                .is_some_and(|w| w & (1 << (value % 64)) != 0),
            None => self.values.binary_search(&value).is_ok(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Members in ascending order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// A validated problem instance.
///
/// Immutable once built. Every constructor enforces `ha_pos`, `ha_inj`, `hS`
/// and 64-bit overflow freedom of the total; only [`Instance::validate`]
/// additionally enforces the cardinality hypothesis `hM_card`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(into = "RawInstance")]
pub struct Instance {
    jumps: Vec<u64>,
    forbidden: ForbiddenSet,
    mode: Mode,
    total: u64,
}

impl From<Instance> for RawInstance {
    fn from(inst: Instance) -> Self {
        RawInstance {
            jumps: inst.jumps,
            forbidden: inst.forbidden.values,
            mode: inst.mode,
        }
    }
}

impl Instance {
    /// Full validation. Hypotheses are checked in the order
    /// `ha_pos`, `ha_inj`, `hM_card`, `hS`; the first failure is returned.
    pub fn validate(raw: &RawInstance) -> Result<Self> {
        check_positive(&raw.jumps)?;
        check_distinct(&raw.jumps)?;
        let forbidden = ForbiddenSet::new(raw.forbidden.clone());
        check_cardinality(raw.jumps.len(), forbidden.len(), raw.mode)?;
        Self::finish(raw.jumps.clone(), forbidden, raw.mode)
    }

    /// Validation that skips `hM_card`. Used to build the degenerate `n = 0`
    /// input, which no cardinality hypothesis admits.
    pub fn validate_relaxed(raw: &RawInstance) -> Result<Self> {
        check_positive(&raw.jumps)?;
        check_distinct(&raw.jumps)?;
        let forbidden = ForbiddenSet::new(raw.forbidden.clone());
        Self::finish(raw.jumps.clone(), forbidden, raw.mode)
    }

    fn finish(jumps: Vec<u64>, forbidden: ForbiddenSet, mode: Mode) -> Result<Self> {
        let total = jumps
            .iter()
            .try_fold(0u64, |acc, &a| acc.checked_add(a))
            .ok_or(Error::SumOverflow)?;
        if forbidden.contains(total) {
            return Err(Error::TotalSumForbidden { total });
        }
        Ok(Self {
            jumps,
            forbidden,
            mode,
            total,
        })
    }

    /// Convenience constructor running full validation.
    pub fn new(jumps: Vec<u64>, forbidden: Vec<u64>, mode: Mode) -> Result<Self> {
        Self::validate(&RawInstance::new(jumps, forbidden, mode))
    }

    /// The empty instance (`n = 0`, `M = ∅`). It never passes
    /// [`Instance::validate`].
    pub fn empty(mode: Mode) -> Self {
        Self {
            jumps: Vec::new(),
            forbidden: ForbiddenSet::new(Vec::new()),
            mode,
            total: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.jumps.len()
    }

    pub fn jumps(&self) -> &[u64] {
        &self.jumps
    }

    #[inline]
    pub fn jump(&self, index: usize) -> u64 {
        self.jumps[index]
    }

    pub fn forbidden(&self) -> &ForbiddenSet {
        &self.forbidden
    }

    #[inline]
    pub fn is_forbidden(&self, value: u64) -> bool {
        self.forbidden.contains(value)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Σ a_i.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// True iff `n = 0`, where `|M| < n` cannot hold and the theorem is
    /// vacuous.
    pub fn is_vacuous(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn to_raw(&self) -> RawInstance {
        self.clone().into()
    }

    /// Builds the ordering whose successive jumps have the given lengths.
    pub fn ordering_from_values(&self, values: &[u64]) -> Result<Permutation> {
        let mut order = Vec::with_capacity(values.len());
        for &v in values {
            let idx = self
                .jumps
                .iter()
                .position(|&a| a == v)
                .ok_or_else(|| Error::NotABijection {
                    n: self.n(),
                    reason: format!("value {v} is not a jump length"),
                })?;
            order.push(idx);
        }
        let sigma = Permutation::from_order(order)?;
        check_size(self, &sigma)?;
        Ok(sigma)
    }

    /// Jump lengths in the order given by `sigma`.
    pub fn ordered_values(&self, sigma: &Permutation) -> Vec<u64> {
        sigma.order().iter().map(|&i| self.jumps[i]).collect()
    }
}

/// Tests `is_vacuous` on an instance.
pub fn is_vacuous(inst: &Instance) -> bool {
    inst.is_vacuous()
}

pub(crate) fn check_size(inst: &Instance, sigma: &Permutation) -> Result<()> {
    if sigma.len() != inst.n() {
        return Err(Error::IndexRangeMismatch {
            expected: inst.n(),
            got: sigma.len(),
        });
    }
    Ok(())
}

fn check_positive(jumps: &[u64]) -> Result<()> {
    match jumps.iter().position(|&a| a == 0) {
        Some(index) => Err(Error::NonPositiveJump { index, value: 0 }),
        None => Ok(()),
    }
}

fn check_distinct(jumps: &[u64]) -> Result<()> {
    let mut seen: Vec<(u64, usize)> = jumps.iter().copied().zip(0..).collect();
    seen.sort_unstable();
    for pair in seen.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::DuplicateJump {
                value: pair[0].0,
                first: pair[0].1,
                second: pair[1].1,
            });
        }
    }
    Ok(())
}

fn check_cardinality(n: usize, forbidden: usize, mode: Mode) -> Result<()> {
    let ok = match mode {
        Mode::Classic => n >= 1 && forbidden == n - 1,
        Mode::Generalized => forbidden < n,
    };
    if ok {
        return Ok(());
    }
    let requirement = match mode {
        Mode::Classic if n == 0 => "|M| = n - 1, impossible for n = 0".to_string(),
        Mode::Classic => format!("|M| = {}", n - 1),
        Mode::Generalized => format!("|M| < {n}"),
    };
    Err(Error::CardinalityViolation {
        n,
        forbidden,
        mode: mode.as_str(),
        requirement,
    })
}

/// An ordering of jump indices: position `k` (1-based) takes jump `order[k-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    order: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
        }
    }

    /// Accepts `order` iff it is a bijection on `0..order.len()`.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n {
                return Err(Error::NotABijection {
                    n,
                    reason: format!("index {i} out of range"),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotABijection {
                    n,
                    reason: format!("index {i} repeated"),
                });
            }
        }
        Ok(Self { order })
    }

    pub(crate) fn from_order_unchecked(order: Vec<usize>) -> Self {
        debug_assert!(Self::from_order(order.clone()).is_ok());
        Self { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    /// Jump index at 1-based `position`.
    ///
    /// # Panics
    /// If `position` is 0 or exceeds `n`.
    pub fn apply(&self, position: usize) -> usize {
        assert!(
            (1..=self.len()).contains(&position),
            "position {position} outside 1..={}",
            self.len()
        );
        self.order[position - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`, both read as maps on `0..n`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::IndexRangeMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Self {
            order: other.order.iter().map(|&i| self.order[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (pos, &i) in self.order.iter().enumerate() {
            inv[i] = pos;
        }
        Self { order: inv }
    }

    /// Advances to the next ordering in lexicographic order. Returns false
    /// (leaving `self` unchanged) at the last one.
    pub fn next_lexicographic(&mut self) -> bool {
        next_permutation(&mut self.order)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Self::from_order(order)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.order
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, idx) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
