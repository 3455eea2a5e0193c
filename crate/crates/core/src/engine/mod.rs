//! L-colorability decisions, range enumeration and the join-aware fast path.
//!
//! Every `y ∈ Y` sees all of `W ∪ X`, so `K_p ∨ K_{a,b}` is L-colorable iff
//! some range `R` of a proper coloring of `G[W ∪ X]` leaves every `L(y)` with
//! a color outside `R`. [`is_colorable_join_fast`] decides exactly that.

mod backtrack;
pub mod palette;
mod ranges;

use thiserror::Error;

use crate::model::{Coloring, JoinGraph, ListAssignment, ModelError};

pub use backtrack::find_proper_coloring;
pub use palette::{ColorMask, Palette};
pub(crate) use ranges::core_range_masks;
pub use ranges::{
    coloring_with_range, enumerate_core_ranges, enumerate_ranges, RangeSet, MAX_RANGE_VERTICES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("range enumeration is limited to {limit} vertices (got {vertices})")]
    Oversize { vertices: usize, limit: usize },
    #[error("more than {} distinct colors on the enumerated vertices", palette::PALETTE_CAPACITY)]
    TooManyColors,
}

/// Outcome of [`is_colorable_join_fast`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinVerdict {
    pub colorable: bool,
    pub witness: Option<Coloring>,
    /// `|𝓡(G[W ∪ X], L)|`.
    pub core_ranges: usize,
}

/// Decides L-colorability of `K_p ∨ K_{a,b}` through the ranges of `G[W ∪ X]`.
///
/// The witness fixes the first surviving range, realizes it on `W ∪ X`, then
/// gives each `y` its smallest color outside that range.
pub fn is_colorable_join_fast(g: &JoinGraph, lists: &ListAssignment) -> Result<JoinVerdict, EngineError> {
    let ranges = enumerate_core_ranges(g, lists)?;
    let palette = ranges.palette();
    // A list with a color off the core palette can never be swallowed by a range.
    let mut blockers: Vec<ColorMask> = g.large_side().filter_map(|y| palette.mask_of(lists.list(y))).collect();
    blockers.sort_unstable_by_key(|m| (m.count_ones(), *m));
    blockers.dedup();
    let mut minimal: Vec<ColorMask> = Vec::with_capacity(blockers.len());
    for m in blockers {
        if !minimal.iter().any(|&s| s & !m == 0) {
            minimal.push(m);
        }
    }

    let survivor = ranges.masks().iter().copied().find(|&r| minimal.iter().all(|&y| y & !r != 0));
    let witness = survivor.map(|r| {
        let range = palette.colors_of(r);
        let core: Vec<_> = g.core().collect();
        let core_graph = CoreGraph(*g);
        let core_lists = lists.restrict(&core);
        let Coloring(mut colors) = coloring_with_range(&core_graph, &core_lists, &range)
            .expect("every enumerated range has a realizing coloring");
        for y in g.large_side() {
            let c = lists
                .list(y)
                .iter()
                .copied()
                .find(|c| range.binary_search(c).is_err())
                .expect("surviving range leaves every y a color");
            colors.push(c);
        }
        Coloring(colors)
    });
    Ok(JoinVerdict { colorable: survivor.is_some(), witness, core_ranges: ranges.len() })
}

/// `G[W ∪ X]` of a join graph, without materializing `Y`.
struct CoreGraph(JoinGraph);

impl crate::model::Adjacency for CoreGraph {
    fn order(&self) -> usize {
        self.0.p() + self.0.a()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.0.adjacent(u, v)
    }
}

/// `p + a + 1`. Starts from `χ_ℓ(K_{a,b}) ≤ a + 1`; joining one more clique
/// vertex never increases `χ_ℓ - χ`, so each of the `p` vertices adds at most one.
pub fn list_chromatic_upper_bound_join(g: &JoinGraph) -> usize {
    g.p() + g.a() + 1
}
