//! Enumeration of `𝓡(G, L) = { f(V(G)) : f a proper L-coloring of G }`.

use crate::model::{Adjacency, Color, Coloring, GenericGraph, JoinGraph, ListAssignment, Vertex};

use super::palette::{bits, ColorMask, Palette};
use super::EngineError;

/// Largest subgraph the range enumerators accept.
pub const MAX_RANGE_VERTICES: usize = 16;

/// The distinct ranges of all proper L-colorings of a small graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeSet {
    palette: Palette,
    masks: Vec<ColorMask>,
}

impl RangeSet {
    pub(crate) fn from_masks(palette: Palette, mut masks: Vec<ColorMask>) -> Self {
        masks.sort_unstable();
        masks.dedup();
        Self { palette, masks }
    }

    /// `|𝓡(G, L)|`.
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn masks(&self) -> &[ColorMask] {
        &self.masks
    }

    /// Each range as a sorted color list.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Color>> + '_ {
        self.masks.iter().map(|&m| self.palette.colors_of(m))
    }

    pub fn contains(&self, colors: &[Color]) -> bool {
        self.palette.mask_of(colors).is_some_and(|m| self.masks.binary_search(&m).is_ok())
    }

    /// Size of the smallest and largest range.
    pub fn size_span(&self) -> Option<(usize, usize)> {
        let sizes = self.masks.iter().map(|m| m.count_ones() as usize);
        Some((sizes.clone().min()?, sizes.max()?))
    }
}

fn palette_for(lists: &ListAssignment, vertices: impl IntoIterator<Item = Vertex>) -> Result<Palette, EngineError> {
    let vs: Vec<Vertex> = vertices.into_iter().collect();
    Palette::from_lists(vs.iter().map(|&v| lists.list(v))).ok_or(EngineError::TooManyColors)
}

/// Depth-first over all proper colorings of a generic graph; ranges are
/// projected from the colorings.
pub fn enumerate_ranges(g: &GenericGraph, lists: &ListAssignment) -> Result<RangeSet, EngineError> {
    let n = g.order();
    if n > MAX_RANGE_VERTICES {
        return Err(EngineError::Oversize { vertices: n, limit: MAX_RANGE_VERTICES });
    }
    lists.check_covers(n)?;
    let palette = palette_for(lists, 0..n)?;
    let list_masks: Vec<ColorMask> =
        (0..n).map(|v| palette.mask_of(lists.list(v)).expect("palette covers lists")).collect();
    let earlier: Vec<Vec<Vertex>> =
        (0..n).map(|v| g.neighbors(v).into_iter().filter(|&u| u < v).collect()).collect();

    fn go(
        v: usize,
        acc: ColorMask,
        col: &mut [usize],
        list_masks: &[ColorMask],
        earlier: &[Vec<Vertex>],
        out: &mut Vec<ColorMask>,
    ) {
        if v == list_masks.len() {
            out.push(acc);
            return;
        }
        let forbidden = earlier[v].iter().fold(0, |m, &u| m | 1u128 << col[u]);
        for c in bits(list_masks[v] & !forbidden) {
            col[v] = c;
            go(v + 1, acc | 1 << c, col, list_masks, earlier, out);
        }
    }

    let mut out = Vec::new();
    go(0, 0, &mut vec![0; n], &list_masks, &earlier, &mut out);
    Ok(RangeSet::from_masks(palette, out))
}

/// Ranges of `K_p ∨ K_{a,0}` given `W` list masks and `X` list masks.
///
/// `W` colors are pairwise distinct and `X` colors avoid them, so the state
/// after each vertex is just (colors used on `W`, colors used so far).
pub(crate) fn core_range_masks(w: &[ColorMask], x: &[ColorMask]) -> Vec<ColorMask> {
    let mut clique_states: Vec<ColorMask> = vec![0];
    for &lw in w {
        let mut next = Vec::with_capacity(clique_states.len() * lw.count_ones() as usize);
        for &s in &clique_states {
            next.extend(bits(lw & !s).map(|c| s | 1 << c));
        }
        next.sort_unstable();
        next.dedup();
        clique_states = next;
    }
    let mut out = Vec::new();
    for &sw in &clique_states {
        let mut accs: Vec<ColorMask> = vec![sw];
        for &lx in x {
            let allowed = lx & !sw;
            let mut next = Vec::with_capacity(accs.len() * allowed.count_ones() as usize);
            for &acc in &accs {
                next.extend(bits(allowed).map(|c| acc | 1 << c));
            }
            next.sort_unstable();
            next.dedup();
            accs = next;
        }
        out.extend(accs);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `𝓡(G[W ∪ X], L)` for a join graph, using the class structure instead of
/// generic backtracking. `lists` may cover the whole graph; only `W ∪ X` is read.
pub fn enumerate_core_ranges(g: &JoinGraph, lists: &ListAssignment) -> Result<RangeSet, EngineError> {
    let core = g.core().len();
    if core > MAX_RANGE_VERTICES {
        return Err(EngineError::Oversize { vertices: core, limit: MAX_RANGE_VERTICES });
    }
    lists.check_covers(g.order())?;
    let palette = palette_for(lists, g.core())?;
    let mask = |v| palette.mask_of(lists.list(v)).expect("palette covers core lists");
    let w: Vec<_> = g.clique().map(mask).collect();
    let x: Vec<_> = g.small_side().map(mask).collect();
    let masks = core_range_masks(&w, &x);
    Ok(RangeSet::from_masks(palette, masks))
}

/// A proper coloring of `g` from `lists` whose range is exactly `range`.
pub fn coloring_with_range<G: Adjacency + ?Sized>(
    g: &G,
    lists: &ListAssignment,
    range: &[Color],
) -> Option<Coloring> {
    let n = g.order();
    let restricted: Vec<Vec<Color>> = (0..n)
        .map(|v| lists.list(v).iter().copied().filter(|c| range.binary_search(c).is_ok()).collect())
        .collect();
    let neighbors: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v)).collect();

    fn go(
        v: usize,
        col: &mut Vec<Color>,
        restricted: &[Vec<Color>],
        neighbors: &[Vec<Vertex>],
        range: &[Color],
    ) -> bool {
        let n = restricted.len();
        let missing = range.iter().filter(|c| !col.contains(c)).count();
        if missing > n - v {
            return false;
        }
        if v == n {
            return true;
        }
        for &c in &restricted[v] {
            if neighbors[v].iter().any(|&u| u < v && col[u] == c) {
                continue;
            }
            col.push(c);
            if go(v + 1, col, restricted, neighbors, range) {
                return true;
            }
            col.pop();
        }
        false
    }

    let mut col = Vec::with_capacity(n);
    go(0, &mut col, &restricted, &neighbors, range).then_some(Coloring(col))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_join;

    fn star(leaves: usize) -> GenericGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        GenericGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn k2_single_range() {
        let g = GenericGraph::complete(2).unwrap();
        let la = ListAssignment::new(vec![vec![1, 2], vec![1, 2]]).unwrap();
        let r = enumerate_ranges(&g, &la).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![vec![1, 2]]);
    }

    #[test]
    fn star_with_disjoint_lists_has_27_ranges() {
        let la = ListAssignment::new(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let r = enumerate_ranges(&star(2), &la).unwrap();
        assert_eq!(r.len(), 27);
        assert!(r.contains(&[1, 5, 9]));
    }

    #[test]
    fn oversize_is_rejected() {
        let g = GenericGraph::empty(17).unwrap();
        let la = ListAssignment::new(vec![vec![1]; 17]).unwrap();
        assert!(matches!(enumerate_ranges(&g, &la), Err(EngineError::Oversize { .. })));
    }

    #[test]
    fn core_ranges_agree_with_generic_enumeration() {
        let g = build_join(2, 3, 3).unwrap();
        let la = ListAssignment::new(vec![
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![1, 5, 6],
            vec![4, 5, 7],
            vec![1, 4, 6],
            vec![1],
            vec![1],
            vec![1],
        ])
        .unwrap();
        let core: Vec<_> = g.core().collect();
        let generic = g.to_generic().unwrap().induced(&core);
        let a = enumerate_core_ranges(&g, &la).unwrap();
        let b = enumerate_ranges(&generic, &la.restrict(&core)).unwrap();
        assert_eq!(a.iter().collect::<Vec<_>>(), b.iter().collect::<Vec<_>>());
        let (lo, hi) = a.size_span().unwrap();
        assert!(lo >= 3 && hi <= 5);
    }

    #[test]
    fn witness_reconstruction_hits_every_range() {
        let g = star(2);
        let la = ListAssignment::new(vec![vec![1, 2, 3], vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let r = enumerate_ranges(&g, &la).unwrap();
        for range in r.iter() {
            let f = coloring_with_range(&g, &la, &range).expect("witness exists");
            f.validate(&g, &la).unwrap();
            assert_eq!(f.range_on(0..3), range);
        }
        assert!(coloring_with_range(&g, &la, &[1, 2]).is_none());
    }
}
