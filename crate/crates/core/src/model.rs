//! Graph, list-assignment and coloring types shared by every other module.
//!
//! Vertices are dense indices. For a [`JoinGraph`] the order is always
//! `w_1..w_p, x_1..x_a, y_1..y_b`, so the class of a vertex is recoverable
//! from its index alone.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A color. Colors carry no meaning beyond equality.
pub type Color = u32;

/// A dense vertex index.
pub type Vertex = usize;

/// Largest vertex count a [`GenericGraph`] can hold (one `u64` per row).
pub const GENERIC_MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("partite sets must satisfy 1 <= a <= b (got a = {a}, b = {b})")]
    BadPartiteSizes { a: usize, b: usize },
    #[error("generic graphs are limited to {GENERIC_MAX_VERTICES} vertices (got {0})")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("list for vertex {0} is empty")]
    EmptyList(Vertex),
    #[error("list assignment covers {lists} vertices but the graph has {order}")]
    WrongListCount { lists: usize, order: usize },
    #[error("list for vertex {vertex} has {len} colors, expected {k}")]
    WrongListSize { vertex: Vertex, len: usize, k: usize },
}

/// Which part of `K_p ∨ K_{a,b}` a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    /// The clique `W`.
    Clique,
    /// The small partite set `X`.
    Small,
    /// The large partite set `Y`.
    Large,
}

/// Anything with a symmetric, irreflexive adjacency relation on `0..order()`.
pub trait Adjacency {
    fn order(&self) -> usize;

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.order()).filter(|&u| u != v && self.adjacent(u, v)).collect()
    }

    fn edge_count(&self) -> usize {
        let n = self.order();
        (0..n).map(|u| (u + 1..n).filter(|&v| self.adjacent(u, v)).count()).sum()
    }
}

/// The join `K_p ∨ K_{a,b}`.
///
/// Edges: every pair inside `W`, every `W`-`X` and `W`-`Y` pair, and every
/// `X`-`Y` pair. `X` and `Y` are independent sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JoinGraph {
    p: usize,
    a: usize,
    b: usize,
}

impl JoinGraph {
    pub fn new(p: usize, a: usize, b: usize) -> Result<Self, ModelError> {
        if a == 0 || a > b {
            return Err(ModelError::BadPartiteSizes { a, b });
        }
        Ok(Self { p, a, b })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn clique(&self) -> Range<Vertex> {
        0..self.p
    }

    pub fn small_side(&self) -> Range<Vertex> {
        self.p..self.p + self.a
    }

    pub fn large_side(&self) -> Range<Vertex> {
        self.p + self.a..self.p + self.a + self.b
    }

    /// `W ∪ X`, the vertices every `y` is adjacent to.
    pub fn core(&self) -> Range<Vertex> {
        0..self.p + self.a
    }

    /// Index of `w_i` (1-based `i`).
    pub fn w(&self, i: usize) -> Vertex {
        debug_assert!((1..=self.p).contains(&i));
        i - 1
    }

    /// Index of `x_i` (1-based `i`).
    pub fn x(&self, i: usize) -> Vertex {
        debug_assert!((1..=self.a).contains(&i));
        self.p + i - 1
    }

    /// Index of `y_i` (1-based `i`).
    pub fn y(&self, i: usize) -> Vertex {
        debug_assert!((1..=self.b).contains(&i));
        self.p + self.a + i - 1
    }

    pub fn class_of(&self, v: Vertex) -> VertexClass {
        if v < self.p {
            VertexClass::Clique
        } else if v < self.p + self.a {
            VertexClass::Small
        } else {
            VertexClass::Large
        }
    }

    /// Human label such as `w1`, `x3`, `y12`.
    pub fn label(&self, v: Vertex) -> String {
        match self.class_of(v) {
            VertexClass::Clique => format!("w{}", v + 1),
            VertexClass::Small => format!("x{}", v - self.p + 1),
            VertexClass::Large => format!("y{}", v - self.p - self.a + 1),
        }
    }

    /// Inverse of [`JoinGraph::label`].
    pub fn parse_label(&self, label: &str) -> Option<Vertex> {
        let (class, rest) = label.split_at(label.char_indices().nth(1)?.0);
        let i: usize = rest.parse().ok()?;
        if i == 0 {
            return None;
        }
        match class {
            "w" if i <= self.p => Some(self.w(i)),
            "x" if i <= self.a => Some(self.x(i)),
            "y" if i <= self.b => Some(self.y(i)),
            _ => None,
        }
    }

    /// `C(p,2) + p(a+b) + ab`.
    pub fn closed_form_edge_count(&self) -> usize {
        self.p * self.p.saturating_sub(1) / 2 + self.p * (self.a + self.b) + self.a * self.b
    }

    pub fn degree(&self, v: Vertex) -> usize {
        match self.class_of(v) {
            VertexClass::Clique => self.order() - 1,
            VertexClass::Small => self.p + self.b,
            VertexClass::Large => self.p + self.a,
        }
    }

    /// The same graph as a [`GenericGraph`], when it fits.
    pub fn to_generic(&self) -> Result<GenericGraph, ModelError> {
        let n = self.order();
        let mut g = GenericGraph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if self.adjacent(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }
}

impl Adjacency for JoinGraph {
    fn order(&self) -> usize {
        self.p + self.a + self.b
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        use VertexClass::*;
        match (self.class_of(u), self.class_of(v)) {
            (Clique, _) | (_, Clique) => true,
            (Small, Large) | (Large, Small) => true,
            _ => false,
        }
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match self.class_of(v) {
            VertexClass::Clique => (0..self.order()).filter(|&u| u != v).collect(),
            VertexClass::Small => self.clique().chain(self.large_side()).collect(),
            VertexClass::Large => self.core().collect(),
        }
    }

    fn edge_count(&self) -> usize {
        self.closed_form_edge_count()
    }
}

impl fmt::Display for JoinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{} v K_{{{},{}}}", self.p, self.a, self.b)
    }
}

/// `K_p ∨ K_{a,b}` with vertex order `w_1..w_p, x_1..x_a, y_1..y_b`.
pub fn build_join(p: usize, a: usize, b: usize) -> Result<JoinGraph, ModelError> {
    JoinGraph::new(p, a, b)
}

/// `χ(K_p ∨ K_{a,b}) = p + 2`: joining a clique adds its size to the chromatic number.
pub fn chromatic_number_join(g: &JoinGraph) -> usize {
    g.p() + 2
}

/// A small simple graph stored as one neighbor bitmask per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenericGraph {
    adj: Vec<u64>,
}

impl GenericGraph {
    pub fn empty(n: usize) -> Result<Self, ModelError> {
        if n > GENERIC_MAX_VERTICES {
            return Err(ModelError::TooManyVertices(n));
        }
        Ok(Self { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, ModelError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, ModelError> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), ModelError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(ModelError::VertexOutOfRange { vertex: w, order: n });
            }
        }
        if u == v {
            return Err(ModelError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn is_independent(&self, set: &[Vertex]) -> bool {
        let mask = set.iter().fold(0u64, |m, &v| m | (1 << v));
        set.iter().all(|&v| self.adj[v] & mask == 0)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.adj.len();
        (0..n)
            .flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| (u, v)))
            .collect()
    }

    /// Subgraph induced by `vertices`, reindexed in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> GenericGraph {
        let mut adj = vec![0u64; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.adj[u] >> v & 1 == 1 {
                    adj[i] |= 1 << j;
                }
            }
        }
        GenericGraph { adj }
    }
}

impl Adjacency for GenericGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut m = self.adj[v];
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

/// A list of allowed colors for every vertex, each stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
    k: Option<usize>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<Self, ModelError> {
        let mut lists = lists;
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(ModelError::EmptyList(v));
            }
        }
        let k = lists.first().map(Vec::len).filter(|&k| lists.iter().all(|l| l.len() == k));
        Ok(Self { lists, k })
    }

    /// Like [`ListAssignment::new`] but requires every list to have exactly `k` colors.
    pub fn uniform(lists: Vec<Vec<Color>>, k: usize) -> Result<Self, ModelError> {
        let la = Self::new(lists)?;
        if let Some(v) = la.lists.iter().position(|l| l.len() != k) {
            return Err(ModelError::WrongListSize { vertex: v, len: la.lists[v].len(), k });
        }
        Ok(la)
    }

    /// The same list `colors` on each of `n` vertices.
    pub fn constant(n: usize, colors: &[Color]) -> Result<Self, ModelError> {
        Self::new(vec![colors.to_vec(); n])
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    /// `Some(k)` when this is a k-assignment.
    pub fn uniform_size(&self) -> Option<usize> {
        self.k
    }

    pub fn check_covers(&self, order: usize) -> Result<(), ModelError> {
        if self.lists.len() != order {
            return Err(ModelError::WrongListCount { lists: self.lists.len(), order });
        }
        Ok(())
    }

    /// Lists restricted to `vertices`, in that order.
    pub fn restrict(&self, vertices: &[Vertex]) -> ListAssignment {
        let lists: Vec<_> = vertices.iter().map(|&v| self.lists[v].clone()).collect();
        ListAssignment::new(lists).expect("restriction of valid lists is valid")
    }
}

/// A color for each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring(pub Vec<Color>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringViolation {
    #[error("coloring has {got} entries, graph has {order} vertices")]
    WrongLength { got: usize, order: usize },
    #[error("adjacent vertices {0} and {1} share color {2}")]
    Improper(Vertex, Vertex, Color),
    #[error("vertex {0} has color {1} outside its list")]
    OffList(Vertex, Color),
}

impl Coloring {
    pub fn color(&self, v: Vertex) -> Color {
        self.0[v]
    }

    /// Sorted set of colors used on `vertices`.
    pub fn range_on(&self, vertices: impl IntoIterator<Item = Vertex>) -> Vec<Color> {
        let mut r: Vec<Color> = vertices.into_iter().map(|v| self.0[v]).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Checks properness and list membership from scratch.
    pub fn validate<G: Adjacency + ?Sized>(
        &self,
        g: &G,
        lists: &ListAssignment,
    ) -> Result<(), ColoringViolation> {
        let n = g.order();
        if self.0.len() != n {
            return Err(ColoringViolation::WrongLength { got: self.0.len(), order: n });
        }
        for v in 0..n {
            if lists.list(v).binary_search(&self.0[v]).is_err() {
                return Err(ColoringViolation::OffList(v, self.0[v]));
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if self.0[u] == self.0[v] && g.adjacent(u, v) {
                    return Err(ColoringViolation::Improper(u, v, self.0[u]));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_join_examples() {
        let g = build_join(0, 2, 4).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 8));
        let g = build_join(1, 2, 2).unwrap();
        assert_eq!((g.order(), g.edge_count()), (5, 8));
        let g = build_join(2, 3, 3).unwrap();
        assert_eq!((g.order(), g.edge_count()), (8, 22));
    }

    #[test]
    fn build_join_rejects_bad_sizes() {
        assert!(build_join(1, 3, 2).is_err());
        assert!(build_join(1, 0, 2).is_err());
    }

    #[test]
    fn chromatic_number_examples() {
        assert_eq!(chromatic_number_join(&build_join(0, 2, 4).unwrap()), 2);
        assert_eq!(chromatic_number_join(&build_join(1, 3, 96).unwrap()), 3);
        assert_eq!(chromatic_number_join(&build_join(3, 2, 9).unwrap()), 5);
    }

    #[test]
    fn edge_count_matches_adjacency() {
        for p in 0..=4 {
            for a in 1..=4 {
                for b in a..=6 {
                    let g = build_join(p, a, b).unwrap();
                    let generic = g.to_generic().unwrap();
                    assert_eq!(generic.edges().len(), g.closed_form_edge_count(), "{g}");
                    for v in 0..g.order() {
                        assert_eq!(generic.neighbors(v).len(), g.degree(v));
                        assert_eq!(g.neighbors(v), generic.neighbors(v));
                    }
                }
            }
        }
    }

    #[test]
    fn labels_round_trip() {
        let g = build_join(2, 3, 5).unwrap();
        for v in 0..g.order() {
            assert_eq!(g.parse_label(&g.label(v)), Some(v));
        }
        assert_eq!(g.parse_label("w3"), None);
        assert_eq!(g.parse_label("y0"), None);
        assert_eq!(g.parse_label("z1"), None);
    }

    #[test]
    fn generic_graph_rejects_loops_and_oversize() {
        assert!(GenericGraph::empty(65).is_err());
        let mut g = GenericGraph::empty(3).unwrap();
        assert_eq!(g.add_edge(1, 1), Err(ModelError::SelfLoop(1)));
        assert!(g.add_edge(0, 3).is_err());
    }

    #[test]
    fn list_assignment_canonical_storage() {
        let la = ListAssignment::new(vec![vec![3, 1, 2, 1], vec![5, 4, 6]]).unwrap();
        assert_eq!(la.list(0), &[1, 2, 3]);
        assert_eq!(la.uniform_size(), Some(3));
        assert!(ListAssignment::new(vec![vec![]]).is_err());
        assert!(ListAssignment::uniform(vec![vec![1, 2], vec![1]], 2).is_err());
    }

    #[test]
    fn validate_catches_violations() {
        let g = GenericGraph::complete(2).unwrap();
        let la = ListAssignment::new(vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert!(Coloring(vec![1, 2]).validate(&g, &la).is_ok());
        assert_eq!(
            Coloring(vec![1, 1]).validate(&g, &la),
            Err(ColoringViolation::Improper(0, 1, 1))
        );
        assert_eq!(Coloring(vec![3, 1]).validate(&g, &la), Err(ColoringViolation::OffList(0, 3)));
    }
}
