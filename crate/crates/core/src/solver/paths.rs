//! Vertex-disjoint paths by iterative-deepening backtracking.

use std::collections::VecDeque;

use crate::graph::{MultiGraph, NodeIx};

struct Search<'a> {
    g: &'a MultiGraph,
    pairs: &'a [(NodeIx, NodeIx)],
    used: Vec<bool>,
    limit: usize,
    hit_limit: bool,
    paths: Vec<Vec<NodeIx>>,
}

impl Search<'_> {
    /// Every pair from `i` on can still be joined through unused vertices.
    fn feasible(&self, i: usize) -> bool {
        self.pairs[i..].iter().all(|&(x, y)| {
            let mut seen = vec![false; self.g.node_count()];
            seen[x] = true;
            let mut q = VecDeque::from([x]);
            while let Some(v) = q.pop_front() {
                for w in self.g.neighbors(v) {
                    if w == y {
                        return true;
                    }
                    if !seen[w] && !self.used[w] {
                        seen[w] = true;
                        q.push_back(w);
                    }
                }
            }
            false
        })
    }

    fn route(&mut self, i: usize) -> bool {
        if i == self.pairs.len() {
            return true;
        }
        if !self.feasible(i) {
            return false;
        }
        let (x, y) = self.pairs[i];
        self.paths.push(vec![x]);
        let found = self.extend(i, x, y);
        if !found {
            self.paths.pop();
        }
        found
    }

    fn extend(&mut self, i: usize, v: NodeIx, y: NodeIx) -> bool {
        let len = self.paths[i].len() - 1;
        for w in self.g.neighbors(v) {
            if w == y {
                self.paths[i].push(y);
                if self.route(i + 1) {
                    return true;
                }
                self.paths[i].pop();
                continue;
            }
            if self.used[w] {
                continue;
            }
            if len + 2 > self.limit {
                self.hit_limit = true;
                continue;
            }
            self.used[w] = true;
            self.paths[i].push(w);
            if self.extend(i, w, y) {
                return true;
            }
            self.paths[i].pop();
            self.used[w] = false;
        }
        false
    }
}

/// Pairwise vertex-disjoint paths joining each `(x, y)`, as vertex
/// sequences. The endpoints must be pairwise distinct. Path lengths are
/// capped at 2, 3, ... edges until a solution appears or a search finishes
/// without touching the cap, so `None` is a proof of absence.
pub fn disjoint_paths(g: &MultiGraph, pairs: &[(NodeIx, NodeIx)]) -> Option<Vec<Vec<NodeIx>>> {
    let mut ends = vec![false; g.node_count()];
    for &(x, y) in pairs {
        assert!(x != y && !ends[x] && !ends[y], "endpoints must be distinct");
        ends[x] = true;
        ends[y] = true;
    }
    let mut limit = 1;
    loop {
        let mut s = Search { g, pairs, used: ends.clone(), limit, hit_limit: false, paths: Vec::new() };
        if s.route(0) {
            return Some(s.paths);
        }
        if !s.hit_limit {
            return None;
        }
        limit += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> MultiGraph {
        // a1 a2 a3
        // b1 b2 b3
        MultiGraph::new(
            ["a1", "a2", "a3", "b1", "b2", "b3"],
            [
                ("h1", "a1", "a2"),
                ("h2", "a2", "a3"),
                ("h3", "b1", "b2"),
                ("h4", "b2", "b3"),
                ("v1", "a1", "b1"),
                ("v2", "a2", "b2"),
                ("v3", "a3", "b3"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_pair() {
        let g = MultiGraph::new(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")]).unwrap();
        let p = disjoint_paths(&g, &[(0, 1)]).unwrap();
        assert_eq!(p, vec![vec![0, 1]]);
    }

    #[test]
    fn twins_through_one_middle_vertex() {
        let g = MultiGraph::new(
            ["a1", "a2", "m", "b1", "b2"],
            [("p", "a1", "m"), ("q", "a2", "m"), ("s", "m", "b1"), ("t", "m", "b2")],
        )
        .unwrap();
        assert!(disjoint_paths(&g, &[(0, 3), (1, 4)]).is_none());
    }

    #[test]
    fn grid_crossings() {
        let g = grid();
        let ix = |s: &str| g.node_ix(s).unwrap();
        // Opposite corners crossing: a1-b3 and a3-b1 cannot both be routed.
        assert!(disjoint_paths(&g, &[(ix("a1"), ix("b3")), (ix("a3"), ix("b1"))]).is_none());
        let p = disjoint_paths(&g, &[(ix("a1"), ix("a3")), (ix("b1"), ix("b3"))]).unwrap();
        assert_eq!(p[0], vec![ix("a1"), ix("a2"), ix("a3")]);
    }
}
