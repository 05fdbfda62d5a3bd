//! Graph rewrites with traces that carry tree families between the source
//! and the rewritten graph.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};
use crate::io::{graph_document, graph_from_document, GraphDocument};
use crate::tree::{SteinerTree, TreeFamily};
use crate::verify::{verify_rcist_structural, verify_rdst, verify_ridst};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformKind {
    #[serde(rename = "tildeGR")]
    TildeGr,
    #[serde(rename = "simp")]
    Simp,
    #[serde(rename = "hardness")]
    Hardness,
    #[serde(rename = "idstRepair")]
    IdstRepair,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexImage {
    pub source: String,
    pub target: String,
}

/// Where one source edge went: a single edge, a subdivided path, or nowhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImage {
    pub source: String,
    pub target: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub edge: String,
    pub vertex: String,
    pub halves: [String; 2],
}

/// An edge added to turn a closed terminal neighbourhood into a clique.
/// `owner` is the terminal whose neighbourhood contains both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueEdge {
    pub id: String,
    pub ends: [String; 2],
    pub owner: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Replacement {
    pub tree: usize,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransformTrace {
    pub kind: TransformKind,
    pub source: GraphDocument,
    pub target: GraphDocument,
    pub vertex_map: Vec<VertexImage>,
    pub edge_map: Vec<EdgeImage>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subdivisions: Vec<Subdivision>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clique_edges: Vec<CliqueEdge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub replacements: Vec<Replacement>,
}

/// A rewritten instance together with the trace that produced it.
#[derive(Debug, Clone)]
pub struct Transformed {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    pub trace: TransformTrace,
}

impl TransformTrace {
    pub fn source_instance(&self) -> Result<(MultiGraph, TerminalSet)> {
        graph_from_document(&self.source, true)?.into_instance()
    }

    pub fn target_instance(&self) -> Result<(MultiGraph, TerminalSet)> {
        graph_from_document(&self.target, true)?.into_instance()
    }

    fn images(&self) -> HashMap<&str, &[String]> {
        self.edge_map.iter().map(|m| (m.source.as_str(), m.target.as_slice())).collect()
    }

    fn preimages(&self) -> HashMap<&str, &str> {
        let mut out = HashMap::new();
        for m in &self.edge_map {
            for t in &m.target {
                out.insert(t.as_str(), m.source.as_str());
            }
        }
        out
    }
}

fn identity_vertex_map(g: &MultiGraph) -> Vec<VertexImage> {
    g.nodes()
        .iter()
        .map(|v| VertexImage { source: v.clone(), target: v.clone() })
        .collect()
}

/// Subdivides the listed edges once each, naming things `<e>.x`, `<e>.a`, `<e>.b`.
fn subdivide_all(g: &MultiGraph, which: &[bool]) -> Result<(MultiGraph, Vec<EdgeImage>, Vec<Subdivision>)> {
    let mut h = MultiGraph::empty();
    for v in g.nodes() {
        h.push_node(v.clone())?;
    }
    let mut images = Vec::with_capacity(g.edge_count());
    let mut subs = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if which[i] {
            let x = format!("{}.x", e.id);
            let xi = h.push_node(x.clone())?;
            let (a, b) = (format!("{}.a", e.id), format!("{}.b", e.id));
            h.push_edge_ix(a.clone(), e.ends[0], xi)?;
            h.push_edge_ix(b.clone(), xi, e.ends[1])?;
            images.push(EdgeImage { source: e.id.clone(), target: vec![a.clone(), b.clone()] });
            subs.push(Subdivision { edge: e.id.clone(), vertex: x, halves: [a, b] });
        } else {
            h.push_edge_ix(e.id.clone(), e.ends[0], e.ends[1])?;
            images.push(EdgeImage { source: e.id.clone(), target: vec![e.id.clone()] });
        }
    }
    Ok((h, images, subs))
}

/// Subdivides every edge with both ends in `R`, making `R` independent.
pub fn tilde_gr(g: &MultiGraph, r: &TerminalSet) -> Result<Transformed> {
    let which: Vec<bool> = g.edges().iter().map(|e| r.contains(e.ends[0]) && r.contains(e.ends[1])).collect();
    let (h, edge_map, subdivisions) = subdivide_all(g, &which)?;
    let rh = r.remap(g, &h)?;
    let trace = TransformTrace {
        kind: TransformKind::TildeGr,
        source: graph_document(g, Some(r)),
        target: graph_document(&h, Some(&rh)),
        vertex_map: identity_vertex_map(g),
        edge_map,
        subdivisions,
        clique_edges: Vec::new(),
        replacements: Vec::new(),
    };
    Ok(Transformed { graph: h, terminals: rh, trace })
}

/// Rewrites a family on the source graph onto the target graph by replacing
/// each edge with its image.
pub fn lift_family(trace: &TransformTrace, source: &MultiGraph, target: &MultiGraph, f: &TreeFamily) -> Result<TreeFamily> {
    let images = trace.images();
    let mut trees = Vec::with_capacity(f.len());
    for t in f {
        let mut ids = Vec::new();
        for id in t.edge_ids(source) {
            let img = images.get(id.as_str()).ok_or_else(|| Error::TraceMismatch(id.clone()))?;
            if img.is_empty() {
                return Err(Error::TraceMismatch(id));
            }
            ids.extend(img.iter().cloned());
        }
        trees.push(SteinerTree::from_ids(target, &ids)?);
    }
    TreeFamily::new(trees)
}

/// Pulls a family on the target graph back to the source graph: every
/// target edge is replaced by the source edge it came from.
pub fn project_family(trace: &TransformTrace, source: &MultiGraph, target: &MultiGraph, f: &TreeFamily) -> Result<TreeFamily> {
    let pre = trace.preimages();
    let images = trace.images();
    let mut trees = Vec::with_capacity(f.len());
    for t in f {
        let ids = t.edge_ids(target);
        let present: HashSet<&str> = ids.iter().map(String::as_str).collect();
        let mut out: Vec<String> = Vec::new();
        for id in &ids {
            let src = pre.get(id.as_str()).ok_or_else(|| Error::TraceMismatch(id.clone()))?;
            // a subdivided edge comes back only when its whole path is present
            if images[src].iter().all(|h| present.contains(h.as_str())) && !out.iter().any(|o| o == src) {
                out.push(src.to_string());
            }
        }
        trees.push(SteinerTree::from_ids(source, &out)?);
    }
    TreeFamily::new(trees)
}

fn pair_key(e: &crate::graph::Edge) -> (NodeIx, NodeIx) {
    (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]))
}

/// How many parallel edges between `u` and `v` survive simplification.
fn simp_allowance(r: &TerminalSet, u: NodeIx, v: NodeIx) -> Option<usize> {
    let both = r.contains(u) && r.contains(v);
    if both && r.len() == 2 {
        None
    } else if both {
        Some(2)
    } else {
        Some(1)
    }
}

fn simp_with(g: &MultiGraph, r: &TerminalSet, keep: &[bool]) -> Result<Transformed> {
    let mut h = MultiGraph::empty();
    for v in g.nodes() {
        h.push_node(v.clone())?;
    }
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        if keep[i] {
            h.push_edge_ix(e.id.clone(), e.ends[0], e.ends[1])?;
            edge_map.push(EdgeImage { source: e.id.clone(), target: vec![e.id.clone()] });
        } else {
            edge_map.push(EdgeImage { source: e.id.clone(), target: Vec::new() });
        }
    }
    let rh = r.remap(g, &h)?;
    let trace = TransformTrace {
        kind: TransformKind::Simp,
        source: graph_document(g, Some(r)),
        target: graph_document(&h, Some(&rh)),
        vertex_map: identity_vertex_map(g),
        edge_map,
        subdivisions: Vec::new(),
        clique_edges: Vec::new(),
        replacements: Vec::new(),
    };
    Ok(Transformed { graph: h, terminals: rh, trace })
}

/// Parallel classes of `g` as lists of edge indices sorted by edge id.
fn parallel_classes(g: &MultiGraph) -> Vec<((NodeIx, NodeIx), Vec<EdgeIx>)> {
    let mut classes: BTreeMap<(NodeIx, NodeIx), Vec<EdgeIx>> = BTreeMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        classes.entry(pair_key(e)).or_default().push(i);
    }
    classes
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_by(|&a, &b| g.edge_id(a).cmp(g.edge_id(b)));
            (k, v)
        })
        .collect()
}

/// Trims parallel edges: at most two between terminals (when `|R| >= 3`),
/// one where a non-terminal is involved, all of them when `R = {u, v}`.
/// The canonical representative keeps the lexicographically smallest ids.
pub fn simp(g: &MultiGraph, r: &TerminalSet) -> Result<Transformed> {
    let mut keep = vec![false; g.edge_count()];
    for ((u, v), class) in parallel_classes(g) {
        let allow = simp_allowance(r, u, v).unwrap_or(class.len());
        for &e in class.iter().take(allow) {
            keep[e] = true;
        }
    }
    simp_with(g, r, &keep)
}

/// Every simplification representative, canonical one first. Fails with a
/// guard error if there are more than `limit`.
pub fn simp_representatives(g: &MultiGraph, r: &TerminalSet, limit: usize) -> Result<Vec<Transformed>> {
    let classes = parallel_classes(g);
    let mut options: Vec<Vec<Vec<EdgeIx>>> = Vec::new();
    let mut total: usize = 1;
    for ((u, v), class) in &classes {
        let allow = simp_allowance(r, *u, *v).unwrap_or(class.len()).min(class.len());
        let subsets = combinations(class, allow);
        total = total.saturating_mul(subsets.len());
        options.push(subsets);
    }
    if total > limit {
        return Err(Error::GuardExceeded(format!("{total} simplification representatives")));
    }
    let mut out = Vec::with_capacity(total);
    let mut choice = vec![0usize; options.len()];
    loop {
        let mut keep = vec![false; g.edge_count()];
        for (k, &c) in choice.iter().enumerate() {
            for &e in &options[k][c] {
                keep[e] = true;
            }
        }
        out.push(simp_with(g, r, &keep)?);
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn combinations(items: &[EdgeIx], k: usize) -> Vec<Vec<EdgeIx>> {
    fn go(items: &[EdgeIx], k: usize, start: usize, cur: &mut Vec<EdgeIx>, out: &mut Vec<Vec<EdgeIx>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Turns an R-IDST whose trees share only terminal-terminal edges into an
/// R-CIST by moving later users of a shared edge onto unused parallel copies.
pub fn repair_idst_to_cist(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<(TreeFamily, TransformTrace)> {
    if r.len() < 3 {
        return Err(Error::Precondition("repair needs at least 3 terminals".into()));
    }
    let rep = verify_ridst(g, r, f)?;
    if !rep.valid {
        return Err(Error::Precondition(format!("family is not an R-IDST: {:?}", rep.witness)));
    }
    let mut used: HashSet<EdgeIx> = HashSet::new();
    let mut replacements = Vec::new();
    let mut trees = Vec::with_capacity(f.len());
    // reserve every edge any tree already uses, so copies are truly fresh
    let all_used: HashSet<EdgeIx> = f.iter().flat_map(|t| t.edges().iter().copied()).collect();
    let mut taken_copies: HashSet<EdgeIx> = HashSet::new();
    for (i, t) in f.iter().enumerate() {
        let mut edges = Vec::with_capacity(t.edges().len());
        for &e in t.edges() {
            if !used.contains(&e) {
                edges.push(e);
                continue;
            }
            let [a, b] = g.edge(e).ends;
            if !(r.contains(a) && r.contains(b)) {
                return Err(Error::Precondition(format!(
                    "edge `{}` is shared but has a non-terminal end",
                    g.edge_id(e)
                )));
            }
            let mut copies = g.edges_between(a, b);
            copies.sort_by(|&x, &y| g.edge_id(x).cmp(g.edge_id(y)));
            let fresh = copies
                .into_iter()
                .find(|c| !all_used.contains(c) && !taken_copies.contains(c))
                .ok_or_else(|| Error::Precondition(format!("no free parallel copy of `{}`", g.edge_id(e))))?;
            taken_copies.insert(fresh);
            replacements.push(Replacement { tree: i, from: g.edge_id(e).into(), to: g.edge_id(fresh).into() });
            edges.push(fresh);
        }
        used.extend(t.edges().iter().copied());
        trees.push(SteinerTree::new(g, edges)?);
    }
    let out = TreeFamily::new(trees)?;
    let check = verify_rcist_structural(g, r, &out)?;
    if !check.valid {
        return Err(Error::InvariantBreach(format!("repaired family is not an R-CIST: {:?}", check.witness)));
    }
    let trace = TransformTrace {
        kind: TransformKind::IdstRepair,
        source: graph_document(g, Some(r)),
        target: graph_document(g, Some(r)),
        vertex_map: identity_vertex_map(g),
        edge_map: g
            .edges()
            .iter()
            .map(|e| EdgeImage { source: e.id.clone(), target: vec![e.id.clone()] })
            .collect(),
        subdivisions: Vec::new(),
        clique_edges: Vec::new(),
        replacements,
    };
    Ok((out, trace))
}

/// Subdivides every terminal-incident edge once, then turns each closed
/// terminal neighbourhood into a clique. Clique edges are named `<x>~<y>`
/// with the two subdivision vertices in id order.
pub fn hardness_reduce(g: &MultiGraph, r: &TerminalSet) -> Result<Transformed> {
    let which: Vec<bool> = g.edges().iter().map(|e| r.contains(e.ends[0]) || r.contains(e.ends[1])).collect();
    let (mut h, edge_map, subdivisions) = subdivide_all(g, &which)?;
    let mut clique_edges = Vec::new();
    let mut seen_pairs: HashSet<(NodeIx, NodeIx)> = HashSet::new();
    let mut owners: Vec<NodeIx> = r.members().to_vec();
    owners.sort_by(|&a, &b| g.node_id(a).cmp(g.node_id(b)));
    for &t in &owners {
        let tv = h.require_node(g.node_id(t))?;
        let mut nbrs = h.neighbors(tv);
        nbrs.sort_by(|&a, &b| h.node_id(a).cmp(h.node_id(b)));
        for (k, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[k + 1..] {
                let key = (x.min(y), x.max(y));
                if h.adjacent(x, y) || !seen_pairs.insert(key) {
                    continue;
                }
                let id = format!("{}~{}", h.node_id(x), h.node_id(y));
                let ends = [h.node_id(x).to_string(), h.node_id(y).to_string()];
                h.push_edge_ix(id.clone(), x, y)?;
                clique_edges.push(CliqueEdge { id, ends, owner: g.node_id(t).to_string() });
            }
        }
    }
    let rh = r.remap(g, &h)?;
    let trace = TransformTrace {
        kind: TransformKind::Hardness,
        source: graph_document(g, Some(r)),
        target: graph_document(&h, Some(&rh)),
        vertex_map: identity_vertex_map(g),
        edge_map,
        subdivisions,
        clique_edges,
        replacements: Vec::new(),
    };
    Ok(Transformed { graph: h, terminals: rh, trace })
}

fn require_kind(trace: &TransformTrace, kind: TransformKind) -> Result<()> {
    if trace.kind != kind {
        return Err(Error::Precondition(format!("expected a {kind:?} trace, got {:?}", trace.kind)));
    }
    Ok(())
}

/// Forward solution map of the reduction: an R-DST of the source becomes a
/// pendant R-CIST of the reduced graph of the same size.
pub fn map_dst_to_cist(trace: &TransformTrace, f: &TreeFamily) -> Result<TreeFamily> {
    require_kind(trace, TransformKind::Hardness)?;
    let (g, r) = trace.source_instance()?;
    let (h, _) = trace.target_instance()?;
    let rep = verify_rdst(&g, &r, f)?;
    if !rep.valid {
        return Err(Error::Precondition(format!("input is not an R-DST: {:?}", rep.witness)));
    }
    let sub_of: HashMap<&str, &Subdivision> = trace.subdivisions.iter().map(|s| (s.edge.as_str(), s)).collect();
    let clique: HashMap<(String, String), &str> = trace
        .clique_edges
        .iter()
        .map(|c| ((c.ends[0].clone(), c.ends[1].clone()), c.id.as_str()))
        .collect();
    let clique_between = |x: &str, y: &str| -> Result<String> {
        let key = if x < y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) };
        clique
            .get(&key)
            .map(|s| s.to_string())
            .ok_or_else(|| Error::TraceMismatch(format!("{x}~{y}")))
    };
    let mut trees = Vec::with_capacity(f.len());
    for t in f {
        let deg = t.degrees(&g);
        let mut ids: Vec<String> = Vec::new();
        // terminal -> (subdivision vertex, half at the terminal) for this tree
        let mut at_terminal: BTreeMap<NodeIx, Vec<(String, String)>> = BTreeMap::new();
        for &e in t.edges() {
            let edge = g.edge(e);
            match sub_of.get(edge.id.as_str()) {
                None => ids.push(edge.id.clone()),
                Some(s) => {
                    for (end, half) in [(edge.ends[0], &s.halves[0]), (edge.ends[1], &s.halves[1])] {
                        if r.contains(end) && deg[end] >= 2 {
                            at_terminal.entry(end).or_default().push((s.vertex.clone(), half.clone()));
                        } else {
                            ids.push(half.clone());
                        }
                    }
                }
            }
        }
        for (_, mut spokes) in at_terminal {
            spokes.sort();
            ids.push(spokes[0].1.clone());
            for w in spokes.windows(2) {
                ids.push(clique_between(&w[0].0, &w[1].0)?);
            }
        }
        trees.push(SteinerTree::from_ids(&h, &ids)?);
    }
    TreeFamily::new(trees)
}

/// Backward solution map of the reduction: clique edges are routed back
/// through their owning terminal, a minimum-id spanning tree is taken,
/// non-terminal leaves are pruned, and subdivisions are smoothed.
pub fn map_cist_to_dst(trace: &TransformTrace, f: &TreeFamily) -> Result<TreeFamily> {
    require_kind(trace, TransformKind::Hardness)?;
    let (g, _) = trace.source_instance()?;
    let (gp, rp) = trace.target_instance()?;
    let rep = verify_rcist_structural(&gp, &rp, f)?;
    if !rep.valid {
        return Err(Error::Precondition(format!("input is not an R-CIST: {:?}", rep.witness)));
    }
    // the subdivided graph H: the reduced graph without its clique edges
    let clique_ids: HashSet<&str> = trace.clique_edges.iter().map(|c| c.id.as_str()).collect();
    let mut h = MultiGraph::empty();
    for v in gp.nodes() {
        h.push_node(v.clone())?;
    }
    for e in gp.edges() {
        if !clique_ids.contains(e.id.as_str()) {
            h.push_edge_ix(e.id.clone(), e.ends[0], e.ends[1])?;
        }
    }
    let rh = rp.remap(&gp, &h)?;
    let half_to: HashMap<(&str, &str), &str> = trace
        .subdivisions
        .iter()
        .flat_map(|s| {
            let e = g.edge(g.edge_ix(&s.edge).expect("trace edge exists"));
            let (a, b) = (g.node_id(e.ends[0]), g.node_id(e.ends[1]));
            [((s.vertex.as_str(), a), s.halves[0].as_str()), ((s.vertex.as_str(), b), s.halves[1].as_str())]
        })
        .collect();
    let clique_of: HashMap<&str, &CliqueEdge> = trace.clique_edges.iter().map(|c| (c.id.as_str(), c)).collect();
    let pre = trace.preimages();
    let mut trees = Vec::with_capacity(f.len());
    for t in f {
        let mut edges: Vec<EdgeIx> = Vec::new();
        for id in t.edge_ids(&gp) {
            match clique_of.get(id.as_str()) {
                Some(c) => {
                    for end in &c.ends {
                        let half = half_to
                            .get(&(end.as_str(), c.owner.as_str()))
                            .ok_or_else(|| Error::TraceMismatch(id.clone()))?;
                        edges.push(h.require_edge(half)?);
                    }
                }
                None => edges.push(h.require_edge(&id)?),
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let tree_h = prune_to_steiner(&h, &rh, &min_id_spanning_tree(&h, &edges))?;
        // smooth: every surviving subdivision vertex is internal, so both halves are present
        let mut ids: Vec<String> = Vec::new();
        for e in tree_h.edge_ids(&h) {
            let src = pre.get(e.as_str()).ok_or_else(|| Error::TraceMismatch(e.clone()))?;
            if !ids.iter().any(|x| x == src) {
                ids.push(src.to_string());
            }
        }
        trees.push(SteinerTree::from_ids(&g, &ids)?);
    }
    TreeFamily::new(trees)
}

/// Kruskal over `edges` in edge-id order; returns the chosen edge indices.
pub fn min_id_spanning_tree(g: &MultiGraph, edges: &[EdgeIx]) -> Vec<EdgeIx> {
    let mut order = edges.to_vec();
    order.sort_by(|&a, &b| g.edge_id(a).cmp(g.edge_id(b)));
    let mut parent: Vec<NodeIx> = (0..g.node_count()).collect();
    fn find(p: &mut [NodeIx], mut x: NodeIx) -> NodeIx {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut out = Vec::new();
    for e in order {
        let [a, b] = g.edge(e).ends;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            out.push(e);
        }
    }
    out.sort_unstable();
    out
}

/// Repeatedly removes the smallest-id non-terminal leaf.
pub fn prune_to_steiner(g: &MultiGraph, r: &TerminalSet, edges: &[EdgeIx]) -> Result<SteinerTree> {
    let mut edges: Vec<EdgeIx> = edges.to_vec();
    loop {
        let mut deg = vec![0u32; g.node_count()];
        for &e in &edges {
            let [a, b] = g.edge(e).ends;
            deg[a] += 1;
            deg[b] += 1;
        }
        let leaf = (0..g.node_count())
            .filter(|&v| deg[v] == 1 && !r.contains(v))
            .min_by(|&a, &b| g.node_id(a).cmp(g.node_id(b)));
        match leaf {
            Some(v) => edges.retain(|&e| !g.edge(e).touches(v)),
            None => break,
        }
    }
    SteinerTree::new(g, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_rcist_definitional;

    fn triangle() -> (MultiGraph, TerminalSet) {
        let g = MultiGraph::new(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a")]).unwrap();
        let r = TerminalSet::all(&g).unwrap();
        (g, r)
    }

    fn h(i: usize) -> (MultiGraph, TerminalSet) {
        let mut edges = Vec::new();
        for k in 1..=i {
            edges.push((format!("ux{k}"), "u".to_string(), "x".to_string()));
            edges.push((format!("xv{k}"), "x".to_string(), "v".to_string()));
        }
        let g = MultiGraph::new(["u", "x", "v"], edges).unwrap();
        let r = TerminalSet::new(&g, &["u", "x", "v"]).unwrap();
        (g, r)
    }

    #[test]
    fn tilde_of_triangle_is_a_six_cycle() {
        let (g, r) = triangle();
        let t = tilde_gr(&g, &r).unwrap();
        assert_eq!((t.graph.node_count(), t.graph.edge_count()), (6, 6));
        assert!((0..6).all(|v| t.graph.degree(v) == 2));
        assert!(t.terminals.is_independent(&t.graph));
    }

    #[test]
    fn tilde_of_independent_terminals_is_identity() {
        let g = MultiGraph::new(["a", "m", "b"], [("e", "a", "m"), ("f", "m", "b")]).unwrap();
        let r = TerminalSet::new(&g, &["a", "b"]).unwrap();
        let t = tilde_gr(&g, &r).unwrap();
        assert_eq!(t.graph, g);
        assert!(t.trace.subdivisions.is_empty());
    }

    #[test]
    fn tilde_of_h2_subdivides_each_parallel() {
        let (g, r) = h(2);
        let t = tilde_gr(&g, &r).unwrap();
        assert_eq!(t.graph.node_count(), 7);
        assert_eq!(t.trace.subdivisions.len(), 4);
    }

    #[test]
    fn lifting_keeps_verdicts() {
        let (g, r) = h(2);
        let t = tilde_gr(&g, &r).unwrap();
        let bad = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"], vec!["ux2", "xv2"]]).unwrap();
        let lifted = lift_family(&t.trace, &g, &t.graph, &bad).unwrap();
        assert!(!verify_rcist_structural(&t.graph, &t.terminals, &lifted).unwrap().valid);
        let back = project_family(&t.trace, &g, &t.graph, &lifted).unwrap();
        assert_eq!(back, bad);
    }

    #[test]
    fn simp_trims_parallels() {
        let (g, r) = h(3);
        let s = simp(&g, &r).unwrap();
        assert_eq!(s.graph.edge_count(), 4);
        assert!(s.graph.edge_ix("ux1").is_some() && s.graph.edge_ix("ux3").is_none());
        let five = MultiGraph::new(["u", "v"], (1..=5).map(|k| (format!("e{k}"), "u", "v"))).unwrap();
        let r2 = TerminalSet::all(&five).unwrap();
        assert_eq!(simp(&five, &r2).unwrap().graph.edge_count(), 5);
        let reps = simp_representatives(&g, &r, 100).unwrap();
        assert_eq!(reps.len(), 9);
        assert_eq!(reps[0].graph, s.graph);
    }

    fn doubled_triangle() -> (MultiGraph, TerminalSet) {
        let mut edges = Vec::new();
        for (a, b) in [("r1", "r2"), ("r2", "r3"), ("r1", "r3")] {
            edges.push((format!("{a}{b}"), a, b));
            edges.push((format!("{a}{b}'"), a, b));
        }
        let g = MultiGraph::new(["r1", "r2", "r3"], edges).unwrap();
        let r = TerminalSet::all(&g).unwrap();
        (g, r)
    }

    #[test]
    fn repair_moves_second_user_to_a_copy() {
        let (g, r) = doubled_triangle();
        let f = TreeFamily::from_id_lists(&g, &[vec!["r1r2", "r1r3"], vec!["r1r2", "r2r3"]]).unwrap();
        let (fixed, trace) = repair_idst_to_cist(&g, &r, &f).unwrap();
        assert!(verify_rcist_definitional(&g, &r, &fixed).unwrap().valid);
        assert_eq!(trace.replacements, vec![Replacement { tree: 1, from: "r1r2".into(), to: "r1r2'".into() }]);
        let disjoint = TreeFamily::from_id_lists(&g, &[vec!["r1r2", "r1r3"]]).unwrap();
        assert_eq!(repair_idst_to_cist(&g, &r, &disjoint).unwrap().0, disjoint);
    }

    #[test]
    fn reduction_of_a_star() {
        let g = MultiGraph::new(["c", "p", "q", "s"], [("cp", "c", "p"), ("cq", "c", "q"), ("cs", "c", "s")]).unwrap();
        let r = TerminalSet::new(&g, &["c", "p"]).unwrap();
        let red = hardness_reduce(&g, &r).unwrap();
        assert_eq!(red.graph.node_count(), 4 + 3);
        // N[c] = {c, cp.x, cq.x, cs.x} becomes a clique: 3 new edges
        assert_eq!(red.trace.clique_edges.len(), 3);
        assert_eq!(red.graph.edge_count(), 6 + 3);
    }

    #[test]
    fn h3_dst_maps_to_pendant_cist_and_back() {
        let (g, r) = h(3);
        let red = hardness_reduce(&g, &r).unwrap();
        let f = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"], vec!["ux2", "xv2"], vec!["ux3", "xv3"]]).unwrap();
        let fwd = map_dst_to_cist(&red.trace, &f).unwrap();
        assert_eq!(fwd.len(), 3);
        assert!(verify_rcist_structural(&red.graph, &red.terminals, &fwd).unwrap().valid);
        assert_eq!(fwd.kind_counts(&red.graph, &red.terminals), (3, 0));
        let back = map_cist_to_dst(&red.trace, &fwd).unwrap();
        assert_eq!(back.len(), 3);
        assert!(verify_rdst(&g, &r, &back).unwrap().valid);
    }
}
