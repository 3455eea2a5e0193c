//! Canonical `k`-assignments up to color renaming.
//!
//! Colors are renamed by first appearance over a fixed vertex order, so the
//! list of the next vertex is some `j` of the `u` colors used so far plus the
//! next `k - j` fresh colors `u, u+1, ...`. Every assignment renames to one
//! of these sequences (equivalent sequences may still differ in which old
//! colors they reuse).

use itertools::Itertools;

use crate::bounds::arith::checked_binomial;
use crate::engine::ColorMask;

/// All canonical lists for the next vertex when `used` colors have appeared.
pub(crate) fn next_lists(used: u32, k: u32) -> Vec<ColorMask> {
    let mut out = Vec::new();
    for j in (0..=k.min(used)).rev() {
        let fresh: ColorMask = ((1u128 << (k - j)) - 1) << used;
        for old in (0..used).combinations(j as usize) {
            out.push(old.iter().fold(fresh, |m, &c| m | 1 << c));
        }
    }
    out
}

/// Colors in use after appending `list`.
pub(crate) fn used_after(used: u32, list: ColorMask) -> u32 {
    used.max(128 - list.leading_zeros())
}

/// Number of canonical assignments of `n` further vertices, saturating at `u128::MAX`.
pub(crate) fn count(n: usize, k: u32, start_used: u32) -> u128 {
    let mut ways = vec![0u128; start_used as usize + n * k as usize + 1];
    ways[start_used as usize] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; ways.len()];
        for (u, &w) in ways.iter().enumerate().filter(|(_, &w)| w > 0) {
            for j in 0..=k.min(u as u32) {
                let c = checked_binomial(u as u64, j as u64).unwrap_or(u128::MAX);
                let slot = &mut next[u + (k - j) as usize];
                *slot = slot.saturating_add(w.saturating_mul(c));
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &w| a.saturating_add(w))
}

/// Every canonical extension of `prefix` by `depth` more lists, in enumeration order.
pub(crate) fn prefixes(prefix: Vec<ColorMask>, used: u32, k: u32, depth: usize) -> Vec<(Vec<ColorMask>, u32)> {
    let mut level = vec![(prefix, used)];
    for _ in 0..depth {
        level = level
            .into_iter()
            .flat_map(|(p, u)| {
                next_lists(u, k).into_iter().map(move |l| {
                    let mut q = p.clone();
                    q.push(l);
                    (q, used_after(u, l))
                })
            })
            .collect();
    }
    level
}

/// Calls `visit` on every canonical completion of `lists` to `n` lists; stops when it returns `false`.
pub(crate) fn for_each_completion(
    lists: &mut Vec<ColorMask>,
    used: u32,
    k: u32,
    n: usize,
    visit: &mut dyn FnMut(&[ColorMask]) -> bool,
) -> bool {
    if lists.len() == n {
        return visit(lists);
    }
    for l in next_lists(used, k) {
        lists.push(l);
        let go_on = for_each_completion(lists, used_after(used, l), k, n, visit);
        lists.pop();
        if !go_on {
            return false;
        }
    }
    true
}
