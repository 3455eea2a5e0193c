//! Brute-force `k`-choosability of small generic graphs, used as an oracle
//! against the join-aware search.

use serde::Serialize;

use super::canonical;
use super::ChoosabilityError;
use crate::engine::{find_proper_coloring, palette::bits};
use crate::model::{Adjacency, Color, GenericGraph, ListAssignment};

pub const NAIVE_MAX_VERTICES: usize = 8;
pub const NAIVE_MAX_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaiveVerdict {
    pub choosable: bool,
    /// The first uncolorable assignment in enumeration order.
    pub witness: Option<ListAssignment>,
    /// Canonical assignments examined.
    pub assignments: u64,
}

/// Tries every canonical `k`-assignment of `g` (colors renamed by first
/// appearance over vertices `0, 1, ...`) with the generic backtracking solver.
///
/// Refuses when `|V| > 8`, `k > 3`, or the assignment count exceeds `max_assignments`.
pub fn is_k_choosable_naive(g: &GenericGraph, k: usize, max_assignments: u64) -> Result<NaiveVerdict, ChoosabilityError> {
    let n = g.order();
    if n > NAIVE_MAX_VERTICES || k > NAIVE_MAX_K || k == 0 {
        return Err(ChoosabilityError::Precondition(format!(
            "the brute-force oracle needs |V| <= {NAIVE_MAX_VERTICES} and 1 <= k <= {NAIVE_MAX_K} (got |V| = {n}, k = {k})"
        )));
    }
    let total = canonical::count(n, k as u32, 0);
    if total > max_assignments as u128 {
        return Err(ChoosabilityError::BudgetExceeded {
            what: "the brute-force oracle",
            needed: format!("{total} assignments"),
            limit: max_assignments,
            partial: None,
        });
    }
    let mut witness = None;
    let mut error = None;
    let mut seen = 0u64;
    canonical::for_each_completion(&mut Vec::new(), 0, k as u32, n, &mut |masks| {
        seen += 1;
        let lists: Vec<Vec<Color>> = masks.iter().map(|&m| bits(m).map(|c| c as Color + 1).collect()).collect();
        let la = ListAssignment::new(lists).expect("canonical lists are nonempty");
        match find_proper_coloring(g, &la) {
            Ok(Some(_)) => true,
            Ok(None) => {
                witness = Some(la);
                false
            }
            Err(e) => {
                error = Some(e);
                false
            }
        }
    });
    if let Some(e) = error {
        return Err(e.into());
    }
    Ok(NaiveVerdict { choosable: witness.is_none(), witness, assignments: seen })
}
