//! Directed multigraphs and spanning arborescences.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::NodeIx;

pub type ArcIx = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub from: NodeIx,
    pub to: NodeIx,
}

#[derive(Debug, Clone)]
pub struct DiGraph {
    nodes: Vec<String>,
    arcs: Vec<Arc>,
    node_index: HashMap<String, NodeIx>,
    arc_index: HashMap<String, ArcIx>,
    out_arcs: Vec<Vec<ArcIx>>,
    in_arcs: Vec<Vec<ArcIx>>,
}

impl PartialEq for DiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arcs == other.arcs
    }
}

impl Eq for DiGraph {}

impl DiGraph {
    /// Builds a digraph from vertex ids and `(arc id, from, to)` triples.
    pub fn new<N, E, S1, S2, S3>(nodes: N, arcs: E) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        E: IntoIterator<Item = (S1, S2, S3)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
    {
        let mut d = DiGraph {
            nodes: Vec::new(),
            arcs: Vec::new(),
            node_index: HashMap::new(),
            arc_index: HashMap::new(),
            out_arcs: Vec::new(),
            in_arcs: Vec::new(),
        };
        for v in nodes {
            let v = v.into();
            if d.node_index.contains_key(&v) {
                return Err(Error::DuplicateVertex(v));
            }
            d.node_index.insert(v.clone(), d.nodes.len());
            d.nodes.push(v);
            d.out_arcs.push(Vec::new());
            d.in_arcs.push(Vec::new());
        }
        for (id, from, to) in arcs {
            let (id, from, to): (String, String, String) = (id.into(), from.into(), to.into());
            if d.arc_index.contains_key(&id) {
                return Err(Error::DuplicateEdge(id));
            }
            let lookup = |v: &str| {
                d.node_index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    item: id.clone(),
                    vertex: v.to_string(),
                })
            };
            let (f, t) = (lookup(&from)?, lookup(&to)?);
            if f == t {
                return Err(Error::SelfLoop(id));
            }
            let ix = d.arcs.len();
            d.arc_index.insert(id.clone(), ix);
            d.arcs.push(Arc { id, from: f, to: t });
            d.out_arcs[f].push(ix);
            d.in_arcs[t].push(ix);
        }
        Ok(d)
    }

    /// The complete digraph on the given vertex ids; arc `u->v` for every ordered pair.
    pub fn complete<S: AsRef<str>>(ids: &[S]) -> Self {
        let names: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        let mut arcs = Vec::new();
        for u in &names {
            for v in &names {
                if u != v {
                    arcs.push((format!("{u}->{v}"), u.clone(), v.clone()));
                }
            }
        }
        DiGraph::new(names.clone(), arcs).expect("complete digraph is well formed")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcIx) -> &Arc {
        &self.arcs[a]
    }

    pub fn node_id(&self, v: NodeIx) -> &str {
        &self.nodes[v]
    }

    pub fn arc_id(&self, a: ArcIx) -> &str {
        &self.arcs[a].id
    }

    pub fn node_ix(&self, id: &str) -> Option<NodeIx> {
        self.node_index.get(id).copied()
    }

    pub fn arc_ix(&self, id: &str) -> Option<ArcIx> {
        self.arc_index.get(id).copied()
    }

    pub fn out_arcs(&self, v: NodeIx) -> &[ArcIx] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: NodeIx) -> &[ArcIx] {
        &self.in_arcs[v]
    }

    pub fn has_arc(&self, u: NodeIx, v: NodeIx) -> bool {
        self.out_arcs[u].iter().any(|&a| self.arcs[a].to == v)
    }

    /// Number of distinct out-neighbours and in-neighbours of `v`.
    pub fn semi_degrees(&self, v: NodeIx) -> (usize, usize) {
        let mut outs: Vec<NodeIx> = self.out_arcs[v].iter().map(|&a| self.arcs[a].to).collect();
        let mut ins: Vec<NodeIx> = self.in_arcs[v].iter().map(|&a| self.arcs[a].from).collect();
        outs.sort_unstable();
        outs.dedup();
        ins.sort_unstable();
        ins.dedup();
        (outs.len(), ins.len())
    }

    /// Minimum semi-degree, counted over distinct neighbours.
    pub fn min_semi_degree(&self) -> usize {
        (0..self.nodes.len())
            .map(|v| {
                let (o, i) = self.semi_degrees(v);
                o.min(i)
            })
            .min()
            .unwrap_or(0)
    }

    /// Vertices reachable from `root` using only vertices with `keep[v]`.
    pub fn reach_within(&self, root: NodeIx, keep: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        if !keep[root] {
            return seen;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &a in &self.out_arcs[v] {
                let w = self.arcs[a].to;
                if keep[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// Which vertices count as interior to an arborescence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteriorRule {
    /// Vertices with an out-arc (the root included).
    #[default]
    OutArc,
    /// Vertices of undirected degree at least 2, as for undirected trees.
    Degree,
}

/// A spanning arborescence: every vertex except the root has exactly one
/// in-arc, and all vertices are reachable from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    arcs: Vec<ArcIx>,
    root: NodeIx,
}

impl Arborescence {
    /// `index` is only used to label errors.
    pub fn new(d: &DiGraph, root: NodeIx, mut arcs: Vec<ArcIx>, index: usize) -> Result<Self> {
        let fail = |reason: String| Error::NotArborescence { index, reason };
        arcs.sort_unstable();
        arcs.dedup();
        if root >= d.node_count() {
            return Err(fail("root is not a vertex".into()));
        }
        if let Some(&a) = arcs.iter().find(|&&a| a >= d.arc_count()) {
            return Err(fail(format!("unknown arc #{a}")));
        }
        let mut parent_arc: Vec<Option<ArcIx>> = vec![None; d.node_count()];
        for &a in &arcs {
            let t = d.arc(a).to;
            if t == root {
                return Err(fail(format!("root `{}` has an in-arc `{}`", d.node_id(root), d.arc_id(a))));
            }
            if parent_arc[t].is_some() {
                return Err(fail(format!("`{}` has in-degree above 1", d.node_id(t))));
            }
            parent_arc[t] = Some(a);
        }
        for (v, p) in parent_arc.iter().enumerate() {
            if v != root && p.is_none() {
                return Err(fail(format!("`{}` has no in-arc", d.node_id(v))));
            }
        }
        // with in-degrees fixed, spanning reachability rules out cycles
        let mut children: Vec<Vec<NodeIx>> = vec![Vec::new(); d.node_count()];
        for &a in &arcs {
            children[d.arc(a).from].push(d.arc(a).to);
        }
        let mut seen = vec![false; d.node_count()];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &children[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = (0..d.node_count()).find(|&v| !seen[v]) {
            return Err(fail(format!("`{}` is not reachable from the root", d.node_id(v))));
        }
        Ok(Arborescence { arcs, root })
    }

    pub fn from_ids<S: AsRef<str>>(d: &DiGraph, root: &str, arcs: &[S], index: usize) -> Result<Self> {
        let r = d.node_ix(root).ok_or_else(|| Error::UnknownVertex {
            item: format!("arborescence {index}"),
            vertex: root.into(),
        })?;
        let arcs = arcs
            .iter()
            .map(|a| d.arc_ix(a.as_ref()).ok_or_else(|| Error::UnknownEdge(a.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, r, arcs, index)
    }

    pub fn root(&self) -> NodeIx {
        self.root
    }

    pub fn arcs(&self) -> &[ArcIx] {
        &self.arcs
    }

    pub fn arc_ids(&self, d: &DiGraph) -> Vec<String> {
        self.arcs.iter().map(|&a| d.arc_id(a).to_string()).collect()
    }

    /// Undirected degree of each vertex within the arborescence.
    pub fn degrees(&self, d: &DiGraph) -> Vec<u32> {
        let mut deg = vec![0u32; d.node_count()];
        for &a in &self.arcs {
            deg[d.arc(a).from] += 1;
            deg[d.arc(a).to] += 1;
        }
        deg
    }

    /// Vertices with an out-arc: the root and every non-leaf. Leaves of an
    /// arborescence are its sinks, each entered by an arc.
    pub fn interior(&self, d: &DiGraph) -> Vec<NodeIx> {
        self.interior_by(d, InteriorRule::OutArc)
    }

    pub fn interior_by(&self, d: &DiGraph, rule: InteriorRule) -> Vec<NodeIx> {
        let mut mark = vec![false; d.node_count()];
        match rule {
            InteriorRule::OutArc => {
                for &a in &self.arcs {
                    mark[d.arc(a).from] = true;
                }
            }
            InteriorRule::Degree => {
                for (v, &x) in self.degrees(d).iter().enumerate() {
                    mark[v] = x >= 2;
                }
            }
        }
        (0..d.node_count()).filter(|&v| mark[v]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arborescence_validation() {
        let d = DiGraph::complete(&["a", "b", "c"]);
        let ok = Arborescence::from_ids(&d, "a", &["a->b", "b->c"], 0).unwrap();
        assert_eq!(ok.interior(&d), vec![0, 1]);
        assert_eq!(ok.interior_by(&d, InteriorRule::Degree), vec![1]);
        let err = Arborescence::from_ids(&d, "a", &["a->b", "c->b"], 0).unwrap_err();
        assert!(matches!(err, Error::NotArborescence { .. }));
        let err = Arborescence::from_ids(&d, "a", &["a->b"], 0).unwrap_err();
        assert!(err.to_string().contains("`c` has no in-arc"));
        let err = Arborescence::from_ids(&d, "a", &["b->c", "c->b"], 0).unwrap_err();
        assert!(matches!(err, Error::NotArborescence { .. }));
    }

    #[test]
    fn semi_degree_counts_distinct_neighbours() {
        let d = DiGraph::new(["x", "y"], [("1", "x", "y"), ("2", "x", "y"), ("3", "y", "x")]).unwrap();
        assert_eq!(d.semi_degrees(0), (1, 1));
        assert_eq!(d.min_semi_degree(), 1);
        assert_eq!(DiGraph::complete(&["1", "2", "3", "4"]).min_semi_degree(), 3);
    }
}
