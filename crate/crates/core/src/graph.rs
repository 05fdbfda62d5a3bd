//! Undirected multigraphs with stable string identifiers.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

pub type NodeIx = usize;
pub type EdgeIx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: [NodeIx; 2],
}

impl Edge {
    pub fn other(&self, v: NodeIx) -> NodeIx {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn touches(&self, v: NodeIx) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }
}

/// A finite multigraph. Parallel edges are allowed, self-loops are not.
/// Vertices and edges keep the order they were supplied in.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
    node_index: HashMap<String, NodeIx>,
    edge_index: HashMap<String, EdgeIx>,
    incidence: Vec<Vec<EdgeIx>>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl MultiGraph {
    /// Builds a graph from vertex ids and `(edge id, end, end)` triples.
    /// Connectivity is not checked here; see [`MultiGraph::require_connected`].
    pub fn new<N, E, S1, S2, S3>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (S1, S2, S3)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
    {
        let mut g = MultiGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            node_index: HashMap::new(),
            edge_index: HashMap::new(),
            incidence: Vec::new(),
        };
        for v in nodes {
            g.push_node(v.into())?;
        }
        for (id, a, b) in edges {
            let (id, a, b) = (id.into(), a.into(), b.into());
            g.push_edge(id, &a, &b)?;
        }
        Ok(g)
    }

    pub(crate) fn empty() -> Self {
        MultiGraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            node_index: HashMap::new(),
            edge_index: HashMap::new(),
            incidence: Vec::new(),
        }
    }

    pub(crate) fn push_node(&mut self, id: String) -> Result<NodeIx> {
        if self.node_index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let ix = self.nodes.len();
        self.node_index.insert(id.clone(), ix);
        self.nodes.push(id);
        self.incidence.push(Vec::new());
        Ok(ix)
    }

    pub(crate) fn push_edge(&mut self, id: String, a: &str, b: &str) -> Result<EdgeIx> {
        if self.edge_index.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        let lookup = |v: &str| {
            self.node_index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                item: id.clone(),
                vertex: v.to_string(),
            })
        };
        let (ua, ub) = (lookup(a)?, lookup(b)?);
        if ua == ub {
            return Err(Error::SelfLoop(id));
        }
        let ix = self.edges.len();
        self.edge_index.insert(id.clone(), ix);
        self.edges.push(Edge { id, ends: [ua, ub] });
        self.incidence[ua].push(ix);
        self.incidence[ub].push(ix);
        Ok(ix)
    }

    pub(crate) fn push_edge_ix(&mut self, id: String, a: NodeIx, b: NodeIx) -> Result<EdgeIx> {
        let (a, b) = (self.nodes[a].clone(), self.nodes[b].clone());
        self.push_edge(id, &a, &b)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_id(&self, v: NodeIx) -> &str {
        &self.nodes[v]
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, e: EdgeIx) -> &str {
        &self.edges[e].id
    }

    pub fn node_ix(&self, id: &str) -> Option<NodeIx> {
        self.node_index.get(id).copied()
    }

    pub fn edge_ix(&self, id: &str) -> Option<EdgeIx> {
        self.edge_index.get(id).copied()
    }

    pub fn require_node(&self, id: &str) -> Result<NodeIx> {
        self.node_ix(id).ok_or_else(|| Error::UnknownVertex {
            item: "query".into(),
            vertex: id.into(),
        })
    }

    pub fn require_edge(&self, id: &str) -> Result<EdgeIx> {
        self.edge_ix(id).ok_or_else(|| Error::UnknownEdge(id.into()))
    }

    pub fn incident(&self, v: NodeIx) -> &[EdgeIx] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: NodeIx) -> usize {
        self.incidence[v].len()
    }

    /// Distinct neighbours of `v`, sorted by index.
    pub fn neighbors(&self, v: NodeIx) -> Vec<NodeIx> {
        let mut out: Vec<NodeIx> = self.incidence[v].iter().map(|&e| self.edges[e].other(v)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn edges_between(&self, u: NodeIx, v: NodeIx) -> Vec<EdgeIx> {
        self.incidence[u]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].other(u) == v)
            .collect()
    }

    pub fn adjacent(&self, u: NodeIx, v: NodeIx) -> bool {
        self.incidence[u].iter().any(|&e| self.edges[e].other(u) == v)
    }

    /// Connected components of the subgraph induced by `keep`.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<NodeIx>> {
        let mut seen = vec![false; self.nodes.len()];
        let mut comps = Vec::new();
        for s in 0..self.nodes.len() {
            if !keep[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    let w = self.edges[e].other(v);
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.nodes.is_empty() || self.components_within(&vec![true; self.nodes.len()]).len() == 1
    }

    pub fn induces_connected(&self, set: &[NodeIx]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut keep = vec![false; self.nodes.len()];
        for &v in set {
            keep[v] = true;
        }
        self.components_within(&keep).len() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Ok(());
        }
        let comps = self.components_within(&vec![true; self.nodes.len()]);
        if comps.len() > 1 {
            let first = comps[1][0];
            return Err(Error::Disconnected(self.nodes[first].clone()));
        }
        Ok(())
    }

    /// Number of edges whose unordered ends are `{u, v}`, keyed by the sorted pair.
    pub fn multiplicities(&self) -> HashMap<(NodeIx, NodeIx), usize> {
        let mut out = HashMap::new();
        for e in &self.edges {
            let key = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicities().values().all(|&m| m == 1)
    }

    /// Replaces edge `uv` by a path `u - x - v`. The new vertex is called
    /// `<e>.x` and the two halves `<e>.a` (at the first end) and `<e>.b`.
    pub fn subdivide_edge(&self, edge_id: &str) -> Result<MultiGraph> {
        let e = self.require_edge(edge_id)?;
        let x = format!("{edge_id}.x");
        self.subdivide_edge_as(e, &x)
    }

    /// As [`MultiGraph::subdivide_edge`] but with a caller-chosen vertex id.
    pub fn subdivide_edge_with(&self, edge_id: &str, new_vertex: &str) -> Result<MultiGraph> {
        let e = self.require_edge(edge_id)?;
        self.subdivide_edge_as(e, new_vertex)
    }

    fn subdivide_edge_as(&self, e: EdgeIx, x: &str) -> Result<MultiGraph> {
        let edge = &self.edges[e];
        let mut g = MultiGraph::empty();
        for v in &self.nodes {
            g.push_node(v.clone())?;
        }
        let xi = g.push_node(x.to_string())?;
        for (i, f) in self.edges.iter().enumerate() {
            if i == e {
                g.push_edge_ix(format!("{}.a", edge.id), edge.ends[0], xi)?;
                g.push_edge_ix(format!("{}.b", edge.id), xi, edge.ends[1])?;
            } else {
                g.push_edge_ix(f.id.clone(), f.ends[0], f.ends[1])?;
            }
        }
        Ok(g)
    }

    /// Removes a degree-2 non-terminal `v` and joins its two neighbours.
    /// If the two incident edges are `<p>.a` and `<p>.b` the merged edge gets
    /// back the id `<p>`; otherwise it is named `<e1>~<e2>`.
    pub fn smooth_vertex(&self, v: &str, terminals: &TerminalSet) -> Result<MultiGraph> {
        let vi = self.require_node(v)?;
        let fail = |reason: &str| Error::NotSmoothable {
            vertex: v.to_string(),
            reason: reason.to_string(),
        };
        if terminals.contains(vi) {
            return Err(fail("vertex is a terminal"));
        }
        if self.degree(vi) != 2 {
            return Err(fail(&format!("degree is {}, not 2", self.degree(vi))));
        }
        let (e1, e2) = (self.incidence[vi][0], self.incidence[vi][1]);
        let (a, b) = (self.edges[e1].other(vi), self.edges[e2].other(vi));
        if a == b {
            return Err(fail("both edges lead to the same neighbour"));
        }
        let (id1, id2) = (&self.edges[e1].id, &self.edges[e2].id);
        let merged = match (id1.strip_suffix(".a"), id2.strip_suffix(".b")) {
            (Some(p), Some(q)) if p == q && self.edge_ix(p).is_none() => p.to_string(),
            _ => match (id1.strip_suffix(".b"), id2.strip_suffix(".a")) {
                (Some(p), Some(q)) if p == q && self.edge_ix(p).is_none() => p.to_string(),
                _ => format!("{id1}~{id2}"),
            },
        };
        let mut g = MultiGraph::empty();
        for (i, name) in self.nodes.iter().enumerate() {
            if i != vi {
                g.push_node(name.clone())?;
            }
        }
        let first = e1.min(e2);
        for (i, f) in self.edges.iter().enumerate() {
            if i == first {
                g.push_edge(merged.clone(), &self.nodes[a], &self.nodes[b])?;
            } else if i != e1 && i != e2 {
                g.push_edge(f.id.clone(), &self.nodes[f.ends[0]], &self.nodes[f.ends[1]])?;
            }
        }
        Ok(g)
    }

    /// The simple graph with one edge per adjacent pair, as `(u, v)` with `u < v`.
    pub fn simple_pairs(&self) -> Vec<(NodeIx, NodeIx)> {
        let mut pairs: Vec<(NodeIx, NodeIx)> = self
            .edges
            .iter()
            .map(|e| (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1])))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

/// The terminal set `R`, held as vertex indices of one particular graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSet {
    members: Vec<NodeIx>,
    mask: Vec<bool>,
}

impl TerminalSet {
    pub fn new<S: AsRef<str>>(g: &MultiGraph, ids: &[S]) -> Result<Self> {
        Self::from_lookup(g.node_count(), ids, |v| g.node_ix(v))
    }

    pub(crate) fn from_lookup<S: AsRef<str>>(
        n: usize,
        ids: &[S],
        lookup: impl Fn(&str) -> Option<NodeIx>,
    ) -> Result<Self> {
        let mut members = Vec::with_capacity(ids.len());
        let mut mask = vec![false; n];
        for id in ids {
            let id = id.as_ref();
            let v = lookup(id).ok_or_else(|| Error::UnknownVertex {
                item: "terminals".into(),
                vertex: id.into(),
            })?;
            if mask[v] {
                return Err(Error::DuplicateTerminal(id.into()));
            }
            mask[v] = true;
            members.push(v);
        }
        if members.len() < 2 {
            return Err(Error::TooFewTerminals(members.len()));
        }
        Ok(TerminalSet { members, mask })
    }

    pub fn from_indices(n: usize, members: Vec<NodeIx>) -> Result<Self> {
        let mut mask = vec![false; n];
        for &v in &members {
            if v >= n {
                return Err(Error::Parameter(format!("terminal index {v} out of range")));
            }
            if mask[v] {
                return Err(Error::Parameter(format!("terminal index {v} repeated")));
            }
            mask[v] = true;
        }
        if members.len() < 2 {
            return Err(Error::TooFewTerminals(members.len()));
        }
        Ok(TerminalSet { members, mask })
    }

    /// All vertices of `g` as terminals.
    pub fn all(g: &MultiGraph) -> Result<Self> {
        Self::from_indices(g.node_count(), (0..g.node_count()).collect())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[NodeIx] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Members sorted by vertex index.
    pub fn sorted(&self) -> Vec<NodeIx> {
        let mut m = self.members.clone();
        m.sort_unstable();
        m
    }

    pub fn contains(&self, v: NodeIx) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn ids(&self, g: &MultiGraph) -> Vec<String> {
        self.members.iter().map(|&v| g.node_id(v).to_string()).collect()
    }

    /// The same terminals looked up by id in another graph.
    pub fn remap(&self, from: &MultiGraph, to: &MultiGraph) -> Result<Self> {
        TerminalSet::new(to, &self.ids(from))
    }

    pub fn is_independent(&self, g: &MultiGraph) -> bool {
        g.edges().iter().all(|e| !(self.contains(e.ends[0]) && self.contains(e.ends[1])))
    }

    pub fn id_set(&self, g: &MultiGraph) -> HashSet<String> {
        self.ids(g).into_iter().collect()
    }
}
