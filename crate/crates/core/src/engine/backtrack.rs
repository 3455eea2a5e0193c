//! Generic exact L-colorability by backtracking with forward checking.
//!
//! The branching vertex is the uncolored vertex with the fewest remaining
//! colors (ties broken by lowest index); its colors are tried in ascending
//! order. For a fixed input the returned witness is therefore fixed.

use crate::model::{Adjacency, Color, Coloring, ListAssignment, Vertex};

use super::EngineError;

struct Search<'a> {
    neighbors: Vec<Vec<Vertex>>,
    lists: &'a [Vec<Color>],
    /// `blocked[v][i]`: colored neighbors of `v` that use `lists[v][i]`.
    blocked: Vec<Vec<u32>>,
    avail: Vec<usize>,
    color: Vec<Option<Color>>,
}

impl Search<'_> {
    fn pick(&self) -> Option<Vertex> {
        (0..self.color.len())
            .filter(|&v| self.color[v].is_none())
            .min_by_key(|&v| (self.avail[v], v))
    }

    fn assign(&mut self, v: Vertex, c: Color) {
        self.color[v] = Some(c);
        for &u in &self.neighbors[v] {
            if let Ok(j) = self.lists[u].binary_search(&c) {
                if self.blocked[u][j] == 0 {
                    self.avail[u] -= 1;
                }
                self.blocked[u][j] += 1;
            }
        }
    }

    fn unassign(&mut self, v: Vertex, c: Color) {
        self.color[v] = None;
        for &u in &self.neighbors[v] {
            if let Ok(j) = self.lists[u].binary_search(&c) {
                self.blocked[u][j] -= 1;
                if self.blocked[u][j] == 0 {
                    self.avail[u] += 1;
                }
            }
        }
    }

    fn run(&mut self) -> bool {
        let Some(v) = self.pick() else { return true };
        if self.avail[v] == 0 {
            return false;
        }
        for i in 0..self.lists[v].len() {
            if self.blocked[v][i] != 0 {
                continue;
            }
            let c = self.lists[v][i];
            self.assign(v, c);
            if self.run() {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// A proper L-coloring of `g`, if one exists.
pub fn find_proper_coloring<G: Adjacency + ?Sized>(
    g: &G,
    lists: &ListAssignment,
) -> Result<Option<Coloring>, EngineError> {
    let n = g.order();
    lists.check_covers(n)?;
    let mut search = Search {
        neighbors: (0..n).map(|v| g.neighbors(v)).collect(),
        lists: lists.lists(),
        blocked: lists.lists().iter().map(|l| vec![0; l.len()]).collect(),
        avail: lists.lists().iter().map(Vec::len).collect(),
        color: vec![None; n],
    };
    Ok(search
        .run()
        .then(|| Coloring(search.color.into_iter().map(|c| c.expect("all vertices colored")).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_join, GenericGraph};

    #[test]
    fn k2_with_equal_singletons_is_uncolorable() {
        let g = GenericGraph::complete(2).unwrap();
        let la = ListAssignment::new(vec![vec![1], vec![1]]).unwrap();
        assert_eq!(find_proper_coloring(&g, &la).unwrap(), None);
    }

    #[test]
    fn k24_transversal_instance_is_uncolorable() {
        // Every choice on {x1, x2} is blocked by the y whose list is exactly that choice.
        let g = build_join(0, 2, 4).unwrap();
        let la = ListAssignment::new(vec![
            vec![1, 2],
            vec![3, 4],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
        ])
        .unwrap();
        assert_eq!(find_proper_coloring(&g, &la).unwrap(), None);
        let la3 = la.restrict(&[0, 1, 2, 3, 4]);
        let g3 = build_join(0, 2, 3).unwrap();
        let f = find_proper_coloring(&g3, &la3).unwrap().unwrap();
        f.validate(&g3, &la3).unwrap();
    }

    #[test]
    fn witness_is_deterministic_and_valid() {
        let g = GenericGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let la = ListAssignment::new(vec![vec![1, 2]; 4]).unwrap();
        let f = find_proper_coloring(&g, &la).unwrap().unwrap();
        f.validate(&g, &la).unwrap();
        assert_eq!(f, Coloring(vec![1, 2, 1, 2]));
        assert_eq!(find_proper_coloring(&g, &la).unwrap().unwrap(), f);
    }

    #[test]
    fn missing_lists_are_rejected() {
        let g = GenericGraph::complete(3).unwrap();
        let la = ListAssignment::new(vec![vec![1, 2]; 2]).unwrap();
        assert!(find_proper_coloring(&g, &la).is_err());
    }
}
