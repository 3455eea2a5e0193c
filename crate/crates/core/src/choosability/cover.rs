//! Minimum covers of a range family by `k`-sets.
//!
//! A `k`-set `S` covers a range `R` when `S ⊆ R`; a `y` with list `S` then
//! rules `R` out. Ranges smaller than `k` cannot be covered, and a cover of
//! the inclusion-minimal ranges covers the rest.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::engine::ColorMask;

/// Shared limit on branch-and-bound nodes across all workers.
pub(crate) struct NodeBudget {
    used: AtomicU64,
    limit: u64,
}

impl NodeBudget {
    pub(crate) fn new(limit: u64) -> Self {
        Self { used: AtomicU64::new(0), limit }
    }

    fn spend(&self) -> Result<(), Exhausted> {
        if self.used.fetch_add(1, Ordering::Relaxed) >= self.limit {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Inclusion-minimal members, sorted by size then value.
pub(crate) fn minimal_ranges(ranges: &[ColorMask]) -> Vec<ColorMask> {
    let mut sorted = ranges.to_vec();
    sorted.sort_unstable_by_key(|m| (m.count_ones(), *m));
    sorted.dedup();
    let mut out: Vec<ColorMask> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if !out.iter().any(|&s| s & !m == 0) {
            out.push(m);
        }
    }
    out
}

pub(crate) fn k_subsets(mask: ColorMask, k: u32) -> Vec<ColorMask> {
    let bits: Vec<u32> = crate::engine::palette::bits(mask).map(|b| b as u32).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k as usize).collect();
    if idx.len() > bits.len() {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0, |m, &i| m | 1u128 << bits[i]));
        let mut i = idx.len();
        while i > 0 && idx[i - 1] == bits.len() - idx.len() + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..idx.len() {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Greedy packing of ranges no `k`-set can cover two of at once; its size
/// bounds every cover from below.
fn packing_bound(uncovered: &[ColorMask], k: u32) -> usize {
    let mut picked: Vec<ColorMask> = Vec::new();
    for &r in uncovered {
        if picked.iter().all(|&p| (p & r).count_ones() < k) {
            picked.push(r);
        }
    }
    picked.len()
}

struct Search<'a> {
    k: u32,
    budget: &'a NodeBudget,
    bound: usize,
    best: Option<Vec<ColorMask>>,
}

impl Search<'_> {
    fn run(&mut self, uncovered: &[ColorMask], chosen: &mut Vec<ColorMask>) -> Result<(), Exhausted> {
        self.budget.spend()?;
        if uncovered.is_empty() {
            if chosen.len() < self.bound {
                self.bound = chosen.len();
                self.best = Some(chosen.clone());
            }
            return Ok(());
        }
        if chosen.len() + packing_bound(uncovered, self.k) >= self.bound {
            return Ok(());
        }
        // uncovered is sorted by size, so the first range has the fewest candidate subsets
        let pivot = uncovered[0];
        let words = uncovered.len().div_ceil(64);
        let mut candidates: Vec<(ColorMask, Vec<u64>, u32)> = k_subsets(pivot, self.k)
            .into_iter()
            .map(|s| {
                let mut cov = vec![0u64; words];
                for (i, &r) in uncovered.iter().enumerate() {
                    if r & s == s {
                        cov[i / 64] |= 1 << (i % 64);
                    }
                }
                let n = cov.iter().map(|w| w.count_ones()).sum();
                (s, cov, n)
            })
            .collect();
        candidates.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)));
        // a candidate whose coverage lies inside an earlier one's is never needed
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..candidates.len() {
            let dominated = kept.iter().any(|&j| {
                candidates[i].1.iter().zip(&candidates[j].1).all(|(a, b)| a & !b == 0)
            });
            if !dominated {
                kept.push(i);
            }
        }
        for i in kept {
            let s = candidates[i].0;
            let rest: Vec<ColorMask> = uncovered.iter().copied().filter(|&r| r & s != s).collect();
            chosen.push(s);
            self.run(&rest, chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// A minimum cover with fewer than `bound` sets, if one exists.
pub(crate) fn min_cover(
    ranges: &[ColorMask],
    k: u32,
    bound: usize,
    budget: &NodeBudget,
) -> Result<Option<Vec<ColorMask>>, Exhausted> {
    let minimal = minimal_ranges(ranges);
    if minimal.iter().any(|r| r.count_ones() < k) || bound == 0 {
        return Ok(None);
    }
    let mut search = Search { k, budget, bound, best: None };
    search.run(&minimal, &mut Vec::new())?;
    Ok(search.best)
}
