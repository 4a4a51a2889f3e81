//! Prefix counts of a target set and the branch probabilities derived from them.
//!
//! Splitting the targets by their leading bit, then each half by the next bit,
//! and so on, gives a binary tree whose node at depth `m` and prefix `α` holds
//! the number of targets starting with `α`. Every rotation angle of the state
//! preparation circuit is a function of two adjacent levels of this tree.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::targets::TargetSet;

/// Exact probability `count / total`.
pub type Probability = Ratio<u64>;

/// Sparse table of `|S_m(α)|`: for each depth only prefixes with at least one
/// target are stored, so the key set at depth `m` is the support `A_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixTable {
    n: usize,
    total: u64,
    // depth m lives at index m - 1
    levels: Vec<BTreeMap<u64, u64>>,
}

impl PrefixTable {
    pub fn build(targets: &TargetSet) -> Self {
        let n = targets.n();
        let mut levels = Vec::with_capacity(n);
        for m in 1..=n {
            let mut level = BTreeMap::new();
            for &x in targets.labels() {
                *level.entry(targets.prefix(x, m)).or_insert(0u64) += 1;
            }
            levels.push(level);
        }
        Self {
            n,
            total: targets.len() as u64,
            levels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|S|`.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Nonzero counts at depth `m` keyed by prefix. Depth 0 is the root.
    pub fn level(&self, m: usize) -> Result<&BTreeMap<u64, u64>> {
        self.check_depth(m, 1)?;
        Ok(&self.levels[m - 1])
    }

    /// `|S_m(α)|`; zero outside the support. Depth 0 with `α = 0` is `|S|`.
    pub fn count(&self, m: usize, alpha: u64) -> u64 {
        if m == 0 {
            return if alpha == 0 { self.total } else { 0 };
        }
        self.levels
            .get(m - 1)
            .and_then(|l| l.get(&alpha))
            .copied()
            .unwrap_or(0)
    }

    /// Prefixes with at least one target at depth `m`, ascending.
    pub fn support(&self, m: usize) -> impl Iterator<Item = u64> + '_ {
        let level = if m == 0 { None } else { self.levels.get(m - 1) };
        let root = (m == 0).then_some(0u64);
        root.into_iter()
            .chain(level.into_iter().flat_map(|l| l.keys().copied()))
    }

    /// `p_m(α) = |S_m(α)| / |S|`.
    pub fn marginal_prob(&self, m: usize, alpha: u64) -> Result<Probability> {
        self.check_depth(m, 1)?;
        self.check_prefix(m, alpha)?;
        Ok(Ratio::new(self.count(m, alpha), self.total))
    }

    /// `p_{m+1}(i | α) = |S_{m+1}(2α + i)| / |S_m(α)|`. Depth 0 conditions on
    /// the empty prefix and yields `p_1(i)`.
    pub fn conditional_prob(&self, m: usize, bit: u8, alpha: u64) -> Result<Probability> {
        if m >= self.n {
            return Err(Error::OutOfRange {
                what: "conditioning depth",
                value: m as u64,
                allowed: format!("0..{}", self.n),
            });
        }
        if bit > 1 {
            return Err(Error::OutOfRange {
                what: "branch bit",
                value: bit as u64,
                allowed: "0..=1".into(),
            });
        }
        self.check_prefix(m, alpha)?;
        let parent = self.count(m, alpha);
        if parent == 0 {
            return Err(Error::ConditionalOnEmptyBranch { depth: m, alpha });
        }
        let child = self.count(m + 1, 2 * alpha + bit as u64);
        Ok(Ratio::new(child, parent))
    }

    /// Branch probabilities `(p(0|α), p(1|α))` as floats.
    pub fn branch_probs(&self, m: usize, alpha: u64) -> Result<(f64, f64)> {
        let parent = self.count(m, alpha);
        if m >= self.n || parent == 0 {
            // route through conditional_prob for the error
            self.conditional_prob(m, 0, alpha)?;
        }
        let c0 = self.count(m + 1, 2 * alpha);
        let c1 = self.count(m + 1, 2 * alpha + 1);
        let parent = parent as f64;
        Ok((c0 as f64 / parent, c1 as f64 / parent))
    }

    fn check_depth(&self, m: usize, min: usize) -> Result<()> {
        if m < min || m > self.n {
            return Err(Error::OutOfRange {
                what: "depth",
                value: m as u64,
                allowed: format!("{min}..={}", self.n),
            });
        }
        Ok(())
    }

    fn check_prefix(&self, m: usize, alpha: u64) -> Result<()> {
        if alpha >> m != 0 {
            return Err(Error::OutOfRange {
                what: "prefix",
                value: alpha,
                allowed: format!("0..2^{m}"),
            });
        }
        Ok(())
    }
}

/// Float value of an exact probability.
pub fn to_f64(p: Probability) -> f64 {
    *p.numer() as f64 / *p.denom() as f64
}
