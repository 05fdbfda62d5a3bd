//! Exhaustive enumeration of R-Steiner trees.
//!
//! Every R-Steiner tree decomposes uniquely, for a fixed terminal order
//! `r0, r1, ...`, into a path from each not-yet-covered terminal to the tree
//! spanned by the earlier ones. Growing exactly those paths visits each tree
//! once.

use std::ops::ControlFlow;

use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};

struct Walker<'a, F> {
    g: &'a MultiGraph,
    r: &'a TerminalSet,
    order: Vec<NodeIx>,
    pendant_only: bool,
    in_tree: Vec<bool>,
    on_path: Vec<bool>,
    edges: Vec<EdgeIx>,
    path: Vec<EdgeIx>,
    path_vertices: Vec<NodeIx>,
    visit: F,
    scratch: Vec<EdgeIx>,
}

impl<F: FnMut(&[EdgeIx]) -> ControlFlow<()>> Walker<'_, F> {
    fn next_terminal(&mut self, i: usize) -> ControlFlow<()> {
        if i == self.order.len() {
            self.scratch.clear();
            self.scratch.extend_from_slice(&self.edges);
            self.scratch.sort_unstable();
            return (self.visit)(&self.scratch);
        }
        let t = self.order[i];
        if self.in_tree[t] {
            return self.next_terminal(i + 1);
        }
        self.on_path[t] = true;
        self.path_vertices.push(t);
        let flow = self.extend(i, t);
        self.path_vertices.pop();
        self.on_path[t] = false;
        flow
    }

    /// Extends the current path, whose free end is `x`, one edge at a time.
    fn extend(&mut self, i: usize, x: NodeIx) -> ControlFlow<()> {
        for k in 0..self.g.incident(x).len() {
            let e = self.g.incident(x)[k];
            let y = self.g.edge(e).other(x);
            if self.in_tree[y] {
                let attach_ok = !self.pendant_only || !self.r.contains(y) || self.edges.is_empty();
                if !attach_ok {
                    continue;
                }
                self.path.push(e);
                let path = std::mem::take(&mut self.path);
                self.edges.extend_from_slice(&path);
                let newly = std::mem::take(&mut self.path_vertices);
                for &v in &newly {
                    self.in_tree[v] = true;
                    self.on_path[v] = false;
                }
                let flow = self.next_terminal(i + 1);
                for &v in &newly {
                    self.in_tree[v] = false;
                    self.on_path[v] = true;
                }
                self.path_vertices = newly;
                self.edges.truncate(self.edges.len() - path.len());
                self.path = path;
                self.path.pop();
                flow?;
            } else if !self.on_path[y] {
                if self.pendant_only && self.r.contains(y) {
                    continue;
                }
                self.on_path[y] = true;
                self.path_vertices.push(y);
                self.path.push(e);
                let flow = self.extend(i, y);
                self.path.pop();
                self.path_vertices.pop();
                self.on_path[y] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the sorted edge set of every R-Steiner tree of `g`
/// (only pendant ones if `pendant_only`). Stops early on `Break`.
pub fn for_each_steiner_tree<F>(g: &MultiGraph, r: &TerminalSet, pendant_only: bool, visit: F) -> ControlFlow<()>
where
    F: FnMut(&[EdgeIx]) -> ControlFlow<()>,
{
    let order = r.sorted();
    let mut w = Walker {
        g,
        r,
        order,
        pendant_only,
        in_tree: vec![false; g.node_count()],
        on_path: vec![false; g.node_count()],
        edges: Vec::new(),
        path: Vec::new(),
        path_vertices: Vec::new(),
        visit,
        scratch: Vec::new(),
    };
    let r0 = w.order[0];
    w.in_tree[r0] = true;
    w.next_terminal(1)
}

/// All R-Steiner trees as sorted edge lists, in enumeration order.
pub fn steiner_trees(g: &MultiGraph, r: &TerminalSet, pendant_only: bool) -> Vec<Vec<EdgeIx>> {
    let mut out = Vec::new();
    let _ = for_each_steiner_tree(g, r, pendant_only, |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{SteinerTree, TreeKind};
    use std::collections::HashSet;

    fn complete(n: usize) -> MultiGraph {
        let ids: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((format!("e{}-{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
            }
        }
        MultiGraph::new(ids.clone(), edges).unwrap()
    }

    /// Independent count: every edge subset that is an R-Steiner tree.
    fn brute(g: &MultiGraph, r: &TerminalSet, pendant_only: bool) -> HashSet<Vec<EdgeIx>> {
        let m = g.edge_count();
        let mut out = HashSet::new();
        for mask in 1u32..(1 << m) {
            let edges: Vec<EdgeIx> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            if let Ok(t) = SteinerTree::new(g, edges.clone()) {
                let c = t.classify(g, r);
                if c.is_steiner && (!pendant_only || c.kind == Some(TreeKind::Pendant)) {
                    out.insert(edges);
                }
            }
        }
        out
    }

    #[test]
    fn spanning_trees_of_k4() {
        let g = complete(4);
        let r = TerminalSet::all(&g).unwrap();
        assert_eq!(steiner_trees(&g, &r, false).len(), 16);
    }

    #[test]
    fn matches_subset_brute_force() {
        let mut g = complete(5);
        g = g.subdivide_edge("e1-2").unwrap();
        for ids in [vec!["1", "2"], vec!["1", "3", "5"], vec!["2", "3", "4", "5"], vec!["1", "e1-2.x"]] {
            let r = TerminalSet::new(&g, &ids).unwrap();
            for pendant in [false, true] {
                let got = steiner_trees(&g, &r, pendant);
                let set: HashSet<Vec<EdgeIx>> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len(), "duplicates for {ids:?}");
                assert_eq!(set, brute(&g, &r, pendant), "mismatch for {ids:?} pendant={pendant}");
            }
        }
    }

    #[test]
    fn parallel_edges_give_distinct_trees() {
        let g = MultiGraph::new(["u", "x", "v"], [("a", "u", "x"), ("b", "u", "x"), ("c", "x", "v")]).unwrap();
        let r = TerminalSet::new(&g, &["u", "v"]).unwrap();
        assert_eq!(steiner_trees(&g, &r, false).len(), 2);
    }
}
