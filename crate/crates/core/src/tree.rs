//! Subtrees of a host multigraph, identified by their edge sets.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};

/// A tree in a host graph, stored only as its sorted edge set. Vertex sets,
/// degrees, interiors and leaves are always derived from the host.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteinerTree {
    edges: Vec<EdgeIx>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeKind {
    Pendant,
    NonPendant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerCheck {
    pub is_steiner: bool,
    pub kind: Option<TreeKind>,
    /// Why the tree fails, when it does.
    pub reason: Option<String>,
}

impl SteinerTree {
    pub fn new(g: &MultiGraph, mut edges: Vec<EdgeIx>) -> Result<Self> {
        edges.sort_unstable();
        if edges.is_empty() {
            return Err(Error::NotATree("no edges".into()));
        }
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotATree("repeated edge".into()));
        }
        if let Some(&bad) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::UnknownEdge(format!("#{bad}")));
        }
        // union-find over the touched vertices: a forest with |V| = |E| + 1 is a tree
        let mut parent: Vec<NodeIx> = (0..g.node_count()).collect();
        fn find(p: &mut [NodeIx], mut x: NodeIx) -> NodeIx {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut touched = vec![false; g.node_count()];
        for &e in &edges {
            let [a, b] = g.edge(e).ends;
            touched[a] = true;
            touched[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::NotATree(format!("edge `{}` closes a cycle", g.edge_id(e))));
            }
            parent[ra] = rb;
        }
        let vcount = touched.iter().filter(|&&t| t).count();
        if vcount != edges.len() + 1 {
            return Err(Error::NotATree("edges are not connected".into()));
        }
        Ok(SteinerTree { edges })
    }

    pub fn from_ids<S: AsRef<str>>(g: &MultiGraph, ids: &[S]) -> Result<Self> {
        let edges = ids.iter().map(|id| g.require_edge(id.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(g, edges)
    }

    pub fn edges(&self) -> &[EdgeIx] {
        &self.edges
    }

    pub fn edge_ids(&self, g: &MultiGraph) -> Vec<String> {
        self.edges.iter().map(|&e| g.edge_id(e).to_string()).collect()
    }

    pub fn contains_edge(&self, e: EdgeIx) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Degree of every host vertex within the tree (0 when absent).
    pub fn degrees(&self, g: &MultiGraph) -> Vec<u32> {
        let mut deg = vec![0u32; g.node_count()];
        for &e in &self.edges {
            let [a, b] = g.edge(e).ends;
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn vertices(&self, g: &MultiGraph) -> Vec<NodeIx> {
        self.degrees(g).iter().enumerate().filter(|(_, &d)| d > 0).map(|(v, _)| v).collect()
    }

    pub fn interior(&self, g: &MultiGraph) -> Vec<NodeIx> {
        self.degrees(g).iter().enumerate().filter(|(_, &d)| d >= 2).map(|(v, _)| v).collect()
    }

    pub fn leaves(&self, g: &MultiGraph) -> Vec<NodeIx> {
        self.degrees(g).iter().enumerate().filter(|(_, &d)| d == 1).map(|(v, _)| v).collect()
    }

    /// The unique path from `u` to `v` in the tree, as edges in walking order.
    pub fn path(&self, g: &MultiGraph, u: NodeIx, v: NodeIx) -> Result<Vec<EdgeIx>> {
        let deg = self.degrees(g);
        for w in [u, v] {
            if w >= deg.len() || deg[w] == 0 {
                let name = if w < g.node_count() { g.node_id(w).to_string() } else { format!("#{w}") };
                return Err(Error::VertexNotInTree(name));
            }
        }
        if u == v {
            return Ok(Vec::new());
        }
        let mut adj: Vec<Vec<EdgeIx>> = vec![Vec::new(); g.node_count()];
        for &e in &self.edges {
            let [a, b] = g.edge(e).ends;
            adj[a].push(e);
            adj[b].push(e);
        }
        let mut via: Vec<Option<EdgeIx>> = vec![None; g.node_count()];
        let mut seen = vec![false; g.node_count()];
        seen[u] = true;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &e in &adj[x] {
                let y = g.edge(e).other(x);
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut x = v;
        while x != u {
            let e = via[x].expect("tree is connected");
            out.push(e);
            x = g.edge(e).other(x);
        }
        out.reverse();
        Ok(out)
    }

    pub fn path_ids(&self, g: &MultiGraph, u: &str, v: &str) -> Result<Vec<String>> {
        let p = self.path(g, g.require_node(u)?, g.require_node(v)?)?;
        Ok(p.into_iter().map(|e| g.edge_id(e).to_string()).collect())
    }

    /// Is this an R-Steiner tree (all of R present, every leaf a terminal),
    /// and if so, is it pendant (no terminal is internal)?
    pub fn classify(&self, g: &MultiGraph, r: &TerminalSet) -> SteinerCheck {
        let deg = self.degrees(g);
        if let Some(&t) = r.members().iter().find(|&&t| deg[t] == 0) {
            return SteinerCheck {
                is_steiner: false,
                kind: None,
                reason: Some(format!("terminal `{}` is not covered", g.node_id(t))),
            };
        }
        if let Some(v) = (0..deg.len()).find(|&v| deg[v] == 1 && !r.contains(v)) {
            return SteinerCheck {
                is_steiner: false,
                kind: None,
                reason: Some(format!("leaf `{}` is not a terminal", g.node_id(v))),
            };
        }
        let pendant = r.members().iter().all(|&t| deg[t] < 2);
        SteinerCheck {
            is_steiner: true,
            kind: Some(if pendant { TreeKind::Pendant } else { TreeKind::NonPendant }),
            reason: None,
        }
    }

    pub fn is_steiner(&self, g: &MultiGraph, r: &TerminalSet) -> bool {
        self.classify(g, r).is_steiner
    }
}

/// An ordered, nonempty list of trees over one host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFamily {
    trees: Vec<SteinerTree>,
}

impl TreeFamily {
    pub fn new(trees: Vec<SteinerTree>) -> Result<Self> {
        if trees.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(TreeFamily { trees })
    }

    pub fn from_id_lists<S: AsRef<str>>(g: &MultiGraph, lists: &[Vec<S>]) -> Result<Self> {
        let trees = lists.iter().map(|l| SteinerTree::from_ids(g, l)).collect::<Result<Vec<_>>>()?;
        Self::new(trees)
    }

    pub fn trees(&self) -> &[SteinerTree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<SteinerTree> {
        self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SteinerTree> {
        self.trees.iter()
    }

    pub fn id_lists(&self, g: &MultiGraph) -> Vec<Vec<String>> {
        self.trees.iter().map(|t| t.edge_ids(g)).collect()
    }

    /// Index of the first member that is not an R-Steiner tree, with the reason.
    pub fn first_non_steiner(&self, g: &MultiGraph, r: &TerminalSet) -> Option<(usize, String)> {
        self.trees.iter().enumerate().find_map(|(i, t)| {
            let c = t.classify(g, r);
            (!c.is_steiner).then(|| (i, c.reason.unwrap_or_default()))
        })
    }

    pub fn require_steiner(&self, g: &MultiGraph, r: &TerminalSet) -> Result<()> {
        match self.first_non_steiner(g, r) {
            Some((tree, reason)) => Err(Error::NotSteiner { tree, reason }),
            None => Ok(()),
        }
    }

    /// Pendant and non-pendant member counts. Members must be R-Steiner trees.
    pub fn kind_counts(&self, g: &MultiGraph, r: &TerminalSet) -> (usize, usize) {
        let pendant = self
            .trees
            .iter()
            .filter(|t| t.classify(g, r).kind == Some(TreeKind::Pendant))
            .count();
        (pendant, self.trees.len() - pendant)
    }
}

impl<'a> IntoIterator for &'a TreeFamily {
    type Item = &'a SteinerTree;
    type IntoIter = std::slice::Iter<'a, SteinerTree>;

    fn into_iter(self) -> Self::IntoIter {
        self.trees.iter()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn k4() -> MultiGraph {
        MultiGraph::new(
            ["1", "2", "3", "4"],
            [
                ("e12", "1", "2"),
                ("e13", "1", "3"),
                ("e14", "1", "4"),
                ("e23", "2", "3"),
                ("e24", "2", "4"),
                ("e34", "3", "4"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn path_in_k4() {
        let g = k4();
        let t = SteinerTree::from_ids(&g, &["e13", "e12", "e24"]).unwrap();
        assert_eq!(t.path_ids(&g, "3", "4").unwrap(), vec!["e13", "e12", "e24"]);
        assert!(t.path_ids(&g, "1", "1").unwrap().is_empty());
        let r = TerminalSet::all(&g).unwrap();
        let c = t.classify(&g, &r);
        assert!(c.is_steiner);
        assert_eq!(c.kind, Some(TreeKind::NonPendant));
    }

    #[test]
    fn star_is_pendant_and_paths_cross_the_centre() {
        let g = MultiGraph::new(
            ["a", "b", "c", "d"],
            [("ac", "a", "c"), ("bc", "b", "c"), ("dc", "d", "c")],
        )
        .unwrap();
        let t = SteinerTree::from_ids(&g, &["ac", "bc", "dc"]).unwrap();
        assert_eq!(t.path_ids(&g, "a", "b").unwrap(), vec!["ac", "bc"]);
        let r = TerminalSet::new(&g, &["a", "b", "d"]).unwrap();
        assert_eq!(t.classify(&g, &r).kind, Some(TreeKind::Pendant));
        let r2 = TerminalSet::new(&g, &["a", "b"]).unwrap();
        assert!(!t.is_steiner(&g, &r2));
    }

    #[test]
    fn rejects_cycles_and_forests() {
        let g = k4();
        assert!(matches!(SteinerTree::from_ids(&g, &["e12", "e23", "e13"]), Err(Error::NotATree(_))));
        assert!(matches!(SteinerTree::from_ids(&g, &["e12", "e34"]), Err(Error::NotATree(_))));
        assert!(matches!(SteinerTree::from_ids(&g, &["zz"]), Err(Error::UnknownEdge(_))));
        let t = SteinerTree::from_ids(&g, &["e12"]).unwrap();
        assert!(matches!(t.path_ids(&g, "1", "3"), Err(Error::VertexNotInTree(v)) if v == "3"));
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(TreeFamily::new(vec![]), Err(Error::EmptyFamily)));
    }
}
