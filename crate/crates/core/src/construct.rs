//! Closed-form and certificate-driven builders. Every builder verifies its
//! own output before returning it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};
use crate::io::PartitionDocument;
use crate::matching::saturating_matching;
use crate::transform::{min_id_spanning_tree, prune_to_steiner};
use crate::tree::{SteinerTree, TreeFamily, TreeKind};
use crate::verify::{verify_rcist_structural, verify_ridst, VerificationReport};

fn require_valid(rep: VerificationReport, what: &str) -> Result<()> {
    if rep.valid {
        Ok(())
    } else {
        Err(Error::InvariantBreach(format!("{what} fails verification: {:?}", rep.witness)))
    }
}

/// Output of a builder: host graph, terminals and a verified family.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    pub family: TreeFamily,
}

/// Complete bipartite graph `K_{a,b}` with vertices `a1..`, `b1..` and edges
/// `a<i>b<j>`. The terminals are the first `ra` A-vertices and the first
/// `rb` B-vertices.
pub fn complete_bipartite(a: usize, b: usize, ra: usize, rb: usize) -> Result<(MultiGraph, TerminalSet)> {
    if a == 0 || b == 0 || ra > a || rb > b || ra + rb < 2 {
        return Err(Error::Parameter(format!("K_{{{a},{b}}} with {ra}+{rb} terminals")));
    }
    let mut nodes: Vec<String> = (1..=a).map(|i| format!("a{i}")).collect();
    nodes.extend((1..=b).map(|j| format!("b{j}")));
    let mut edges = Vec::new();
    for i in 1..=a {
        for j in 1..=b {
            edges.push((format!("a{i}b{j}"), format!("a{i}"), format!("b{j}")));
        }
    }
    let g = MultiGraph::new(nodes, edges)?;
    let mut ts: Vec<String> = (1..=ra).map(|i| format!("a{i}")).collect();
    ts.extend((1..=rb).map(|j| format!("b{j}")));
    let r = TerminalSet::new(&g, &ts)?;
    Ok((g, r))
}

/// Maximum size of an R-IDST in `K_{a,b}` with `ra` terminals in A and `rb`
/// in B.
///
/// With exactly one terminal on each side every R-Steiner tree is a path, and
/// besides the direct edge each path needs its own non-terminal on both sides,
/// so the maximum is `min(a, b)`.
pub fn bipartite_ridst_size(a: usize, b: usize, ra: usize, rb: usize) -> Result<usize> {
    if a == 0 || b == 0 || ra > a || rb > b || ra + rb < 2 {
        return Err(Error::Parameter(format!("K_{{{a},{b}}} with {ra}+{rb} terminals")));
    }
    Ok(match (ra, rb) {
        (_, 0) => b,
        (0, _) => a,
        (1, 1) => a.min(b),
        (1, _) => a.min(b + 1),
        (_, 1) => b.min(a + 1),
        _ => a.min(b),
    })
}

/// Builds `K_{a,b}` together with a maximum R-IDST.
pub fn bipartite_max_ridst(a: usize, b: usize, ra: usize, rb: usize) -> Result<Construction> {
    let size = bipartite_ridst_size(a, b, ra, rb)?;
    let (g, r) = complete_bipartite(a, b, ra, rb)?;
    let av = |i: usize| g.node_ix(&format!("a{}", i + 1)).expect("built above");
    let bv = |j: usize| g.node_ix(&format!("b{}", j + 1)).expect("built above");
    let edge = |u: NodeIx, v: NodeIx| g.edges_between(u, v)[0];
    let ta: Vec<NodeIx> = (0..ra).map(av).collect();
    let tb: Vec<NodeIx> = (0..rb).map(bv).collect();

    // A matched pair x-y plus every other terminal hung off the opposite end.
    let matched_tree = |x: NodeIx, y: NodeIx| -> Vec<EdgeIx> {
        let mut es = vec![edge(x, y)];
        es.extend(ta.iter().filter(|&&t| t != x).map(|&t| edge(t, y)));
        es.extend(tb.iter().filter(|&&t| t != y).map(|&t| edge(x, t)));
        es
    };
    let mut lists: Vec<Vec<EdgeIx>> = Vec::new();
    match (ra, rb) {
        (_, 0) => {
            for j in 0..b {
                lists.push(ta.iter().map(|&t| edge(t, bv(j))).collect());
            }
        }
        (0, _) => {
            for i in 0..a {
                lists.push(tb.iter().map(|&t| edge(av(i), t)).collect());
            }
        }
        (1, 1) => {
            let (s, t) = (ta[0], tb[0]);
            lists.push(vec![edge(s, t)]);
            for k in 1..a.min(b) {
                lists.push(vec![edge(s, bv(k)), edge(av(k), bv(k)), edge(av(k), t)]);
            }
        }
        (1, _) => {
            let s = ta[0];
            lists.push(tb.iter().map(|&t| edge(s, t)).collect());
            for k in 0..(a - 1).min(b) {
                lists.push(matched_tree(av(k + 1), bv(k)));
            }
        }
        (_, 1) => {
            let t = tb[0];
            lists.push(ta.iter().map(|&s| edge(s, t)).collect());
            for k in 0..(b - 1).min(a) {
                lists.push(matched_tree(av(k), bv(k + 1)));
            }
        }
        _ => {
            for k in 0..a.min(b) {
                lists.push(matched_tree(av(k), bv(k)));
            }
        }
    }
    debug_assert_eq!(lists.len(), size);
    let trees = lists.into_iter().map(|es| SteinerTree::new(&g, es)).collect::<Result<Vec<_>>>()?;
    let family = TreeFamily::new(trees)?;
    require_valid(verify_ridst(&g, &r, &family)?, "bipartite R-IDST")?;
    Ok(Construction { graph: g, terminals: r, family })
}

/// Largest terminal set for which cut minimality is checked exhaustively.
pub const MIN_CUT_GUARD: usize = 12;

/// Checks that `R` is a minimal vertex cut and returns the components of
/// `G - R`.
pub fn minimal_cut_components(g: &MultiGraph, r: &TerminalSet) -> Result<Vec<Vec<NodeIx>>> {
    if r.len() > MIN_CUT_GUARD {
        return Err(Error::GuardExceeded(format!("{} terminals exceed {MIN_CUT_GUARD}", r.len())));
    }
    let keep: Vec<bool> = (0..g.node_count()).map(|v| !r.contains(v)).collect();
    let comps = g.components_within(&keep);
    if comps.len() < 2 {
        return Err(Error::Precondition("terminal set is not a vertex cut".into()));
    }
    let members = r.members();
    let full = (1u32 << members.len()) - 1;
    for sub in 0..full {
        let mut keep = vec![true; g.node_count()];
        for (i, &t) in members.iter().enumerate() {
            if sub >> i & 1 == 1 {
                keep[t] = false;
            }
        }
        if g.components_within(&keep).len() > 1 {
            let ids: Vec<&str> = members
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .map(|(_, &t)| g.node_id(t))
                .collect();
            return Err(Error::Precondition(format!("terminal set is not minimal: {ids:?} is already a cut")));
        }
    }
    Ok(comps)
}

/// Pendant R-CIST with one tree per component of `G - R`, for a minimal
/// vertex cut `R`.
pub fn min_cut_pendant_cist(g: &MultiGraph, r: &TerminalSet) -> Result<TreeFamily> {
    let comps = minimal_cut_components(g, r)?;
    let mut trees = Vec::new();
    for comp in &comps {
        let mut inside = vec![false; g.node_count()];
        for &v in comp {
            inside[v] = true;
        }
        let internal: Vec<EdgeIx> =
            (0..g.edge_count()).filter(|&e| g.edge(e).ends.iter().all(|&v| inside[v])).collect();
        let mut edges = min_id_spanning_tree(g, &internal);
        for &t in r.members() {
            let hook = g
                .incident(t)
                .iter()
                .copied()
                .filter(|&e| inside[g.edge(e).other(t)])
                .min_by(|&x, &y| g.edge_id(x).cmp(g.edge_id(y)))
                .ok_or_else(|| {
                    Error::InvariantBreach(format!("terminal `{}` has no neighbour in a cut component", g.node_id(t)))
                })?;
            edges.push(hook);
        }
        trees.push(prune_to_steiner(g, r, &edges)?);
    }
    let family = TreeFamily::new(trees)?;
    require_valid(verify_rcist_structural(g, r, &family)?, "minimal-cut family")?;
    if family.kind_counts(g, r).1 != 0 {
        return Err(Error::InvariantBreach("minimal-cut family has a non-pendant tree".into()));
    }
    Ok(family)
}

/// Disjoint connected R-dominating vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub subsets: Vec<Vec<NodeIx>>,
}

impl PartitionCertificate {
    pub fn new(mut subsets: Vec<Vec<NodeIx>>) -> Self {
        for s in &mut subsets {
            s.sort_unstable();
        }
        PartitionCertificate { subsets }
    }

    pub fn from_document(g: &MultiGraph, doc: &PartitionDocument) -> Result<Self> {
        let subsets = doc
            .subsets
            .iter()
            .map(|s| s.iter().map(|id| g.require_node(id)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(subsets))
    }

    pub fn document(&self, g: &MultiGraph) -> PartitionDocument {
        PartitionDocument {
            subsets: self.subsets.iter().map(|s| s.iter().map(|&v| g.node_id(v).to_string()).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Checks disjointness, connectivity and domination, naming the first
    /// offending subset.
    pub fn check(&self, g: &MultiGraph, r: &TerminalSet) -> Result<()> {
        if self.subsets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut owner: Vec<Option<usize>> = vec![None; g.node_count()];
        for (i, s) in self.subsets.iter().enumerate() {
            let bad = |reason: String| Error::Certificate { subset: i, reason };
            if s.is_empty() {
                return Err(bad("subset is empty".into()));
            }
            for &v in s {
                if let Some(j) = owner[v] {
                    return Err(bad(format!("vertex `{}` also lies in subset {j}", g.node_id(v))));
                }
                owner[v] = Some(i);
            }
            if !g.induces_connected(s) {
                return Err(bad("subset does not induce a connected subgraph".into()));
            }
            let mut near = vec![false; g.node_count()];
            for &v in s {
                near[v] = true;
                for w in g.neighbors(v) {
                    near[w] = true;
                }
            }
            if let Some(&t) = r.sorted().iter().find(|&&t| !near[t]) {
                return Err(bad(format!("terminal `{}` is not dominated", g.node_id(t))));
            }
        }
        Ok(())
    }
}

fn require_independent(g: &MultiGraph, r: &TerminalSet) -> Result<()> {
    if let Some(e) = g.edges().iter().find(|e| r.contains(e.ends[0]) && r.contains(e.ends[1])) {
        return Err(Error::Precondition(format!("terminal set is not independent: edge `{}`", e.id)));
    }
    Ok(())
}

/// Spanning trees of the subgraph on `edges` covering `verts`, visited in
/// include-first order over the (id-sorted) edge list.
fn spanning_trees(
    g: &MultiGraph,
    verts: usize,
    edges: &[EdgeIx],
    budget: &mut usize,
    visit: &mut dyn FnMut(&[EdgeIx]) -> bool,
) -> bool {
    fn find(p: &[NodeIx], mut x: NodeIx) -> NodeIx {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &MultiGraph,
        need: usize,
        edges: &[EdgeIx],
        k: usize,
        parent: &mut Vec<NodeIx>,
        chosen: &mut Vec<EdgeIx>,
        budget: &mut usize,
        visit: &mut dyn FnMut(&[EdgeIx]) -> bool,
    ) -> bool {
        if chosen.len() == need {
            if *budget == 0 {
                return true;
            }
            *budget -= 1;
            return visit(chosen);
        }
        if edges.len() - k < need - chosen.len() {
            return false;
        }
        let [a, b] = g.edge(edges[k]).ends;
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
            chosen.push(edges[k]);
            let stop = go(g, need, edges, k + 1, parent, chosen, budget, visit);
            chosen.pop();
            parent[ra] = ra;
            if stop {
                return true;
            }
        }
        go(g, need, edges, k + 1, parent, chosen, budget, visit)
    }
    let mut parent: Vec<NodeIx> = (0..g.node_count()).collect();
    go(g, verts - 1, edges, 0, &mut parent, &mut Vec::new(), budget, visit)
}

/// Spanning trees examined per subset before falling back to the pruned
/// construction.
const EXACT_BUDGET: usize = 200_000;

/// A tree whose interior is exactly `set`: a spanning tree of `G[set]` plus
/// one attachment edge per outside terminal, chosen so every vertex of `set`
/// ends with degree at least 2.
fn exact_tree(g: &MultiGraph, r: &TerminalSet, set: &[NodeIx]) -> Option<Vec<EdgeIx>> {
    let mut inside = vec![false; g.node_count()];
    for &v in set {
        inside[v] = true;
    }
    let mut internal: Vec<EdgeIx> =
        (0..g.edge_count()).filter(|&e| g.edge(e).ends.iter().all(|&v| inside[v])).collect();
    internal.sort_by(|&x, &y| g.edge_id(x).cmp(g.edge_id(y)));
    let outside: Vec<NodeIx> = r.sorted().into_iter().filter(|&t| !inside[t]).collect();
    // Cheapest attachment edge from each outside terminal to each set vertex.
    let hook = |t: NodeIx, v: NodeIx| {
        g.edges_between(t, v).into_iter().min_by(|&x, &y| g.edge_id(x).cmp(g.edge_id(y)))
    };
    let mut found = None;
    let mut budget = EXACT_BUDGET;
    let mut visit = |tree: &[EdgeIx]| {
        let mut deg = vec![0usize; g.node_count()];
        for &e in tree {
            let [a, b] = g.edge(e).ends;
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut slots: Vec<(NodeIx, Vec<usize>)> = Vec::new();
        for &v in set {
            for _ in deg[v]..2 {
                let cands = (0..outside.len()).filter(|&i| hook(outside[i], v).is_some()).collect();
                slots.push((v, cands));
            }
        }
        let lists: Vec<Vec<usize>> = slots.iter().map(|(_, c)| c.clone()).collect();
        let Some(m) = saturating_matching(&lists, outside.len()) else {
            return false;
        };
        let mut target: Vec<Option<NodeIx>> = vec![None; outside.len()];
        for (slot, &ti) in m.iter().enumerate() {
            target[ti] = Some(slots[slot].0);
        }
        let mut edges = tree.to_vec();
        for (i, &t) in outside.iter().enumerate() {
            let v = target[i].or_else(|| {
                set.iter().copied().filter(|&v| hook(t, v).is_some()).min_by(|&x, &y| {
                    g.edge_id(hook(t, x).unwrap()).cmp(g.edge_id(hook(t, y).unwrap()))
                })
            });
            match v {
                Some(v) => edges.push(hook(t, v).expect("filtered")),
                None => return false,
            }
        }
        found = Some(edges);
        true
    };
    if set.len() == 1 {
        visit(&[]);
    } else {
        spanning_trees(g, set.len(), &internal, &mut budget, &mut visit);
    }
    found
}

/// One R-Steiner tree per certificate subset. The interiors equal the subsets
/// whenever some tree realizes them exactly; otherwise non-terminal leaves
/// are pruned and the interior shrinks.
pub fn partition_to_trees(g: &MultiGraph, r: &TerminalSet, cert: &PartitionCertificate) -> Result<TreeFamily> {
    require_independent(g, r)?;
    cert.check(g, r)?;
    let mut trees = Vec::new();
    for set in &cert.subsets {
        let edges = match exact_tree(g, r, set) {
            Some(es) => es,
            None => {
                let mut inside = vec![false; g.node_count()];
                for &v in set {
                    inside[v] = true;
                }
                let internal: Vec<EdgeIx> =
                    (0..g.edge_count()).filter(|&e| g.edge(e).ends.iter().all(|&v| inside[v])).collect();
                let mut es = min_id_spanning_tree(g, &internal);
                for t in r.sorted().into_iter().filter(|&t| !inside[t]) {
                    let e = g
                        .incident(t)
                        .iter()
                        .copied()
                        .filter(|&e| inside[g.edge(e).other(t)])
                        .min_by(|&x, &y| g.edge_id(x).cmp(g.edge_id(y)))
                        .expect("certificate checked domination");
                    es.push(e);
                }
                es
            }
        };
        trees.push(prune_to_steiner(g, r, &edges)?);
    }
    let family = TreeFamily::new(trees)?;
    require_valid(verify_rcist_structural(g, r, &family)?, "partition family")?;
    Ok(family)
}

/// The interiors of an R-CIST, as a partition certificate.
pub fn trees_to_partition(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<PartitionCertificate> {
    require_independent(g, r)?;
    let rep = verify_rcist_structural(g, r, f)?;
    if !rep.valid {
        return Err(Error::Precondition(format!("family is not an R-CIST: {:?}", rep.witness)));
    }
    let cert = PartitionCertificate::new(f.iter().map(|t| t.interior(g)).collect());
    cert.check(g, r)?;
    Ok(cert)
}

/// The host graph `H` for `p` pendant and `q` non-pendant trees on `r`
/// terminals, with its star witness.
#[derive(Debug, Clone)]
pub struct HostGraph {
    pub graph: MultiGraph,
    pub terminals: TerminalSet,
    pub q_set: Vec<NodeIx>,
    pub witness: TreeFamily,
    pub required_kappa: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HostSummary {
    pub edges: usize,
    pub required_kappa: usize,
    pub pendant: usize,
    pub non_pendant: usize,
}

impl HostGraph {
    pub fn summary(&self) -> HostSummary {
        let (pendant, non_pendant) = self.witness.kind_counts(&self.graph, &self.terminals);
        HostSummary { edges: self.graph.edge_count(), required_kappa: self.required_kappa, pendant, non_pendant }
    }
}

/// `10((p+q)r - q)`.
pub fn connectivity_threshold(p: usize, q: usize, r: usize) -> Result<usize> {
    if q > r {
        return Err(Error::Parameter(format!("q = {q} exceeds r = {r}")));
    }
    Ok(10 * ((p + q) * r - q))
}

/// Vertices `p1..`, `r1..`; each `p<i>` joined to every terminal by `p<i>r<j>`,
/// each of the first `q` terminals joined to every other terminal by
/// `r<k>r<j>` (so two members of Q get two parallel edges).
///
/// With `r = 2` a star centred at a terminal is a single edge and hence
/// pendant: the witness then has `p + q` pendant trees.
pub fn linkage_host_graph(p: usize, q: usize, r: usize) -> Result<HostGraph> {
    if r < 2 || q > r || p + q == 0 {
        return Err(Error::Parameter(format!("host graph needs r >= 2, q <= r, p + q >= 1 (got p={p}, q={q}, r={r})")));
    }
    let pid = |i: usize| format!("p{i}");
    let rid = |j: usize| format!("r{j}");
    let mut nodes: Vec<String> = (1..=p).map(pid).collect();
    nodes.extend((1..=r).map(rid));
    let mut terminal_ids: Vec<String> = (1..=r).map(rid).collect();
    terminal_ids.sort();
    let q_ids: Vec<String> = terminal_ids[..q].to_vec();
    let mut edges = Vec::new();
    let mut stars: Vec<Vec<String>> = Vec::new();
    for i in 1..=p {
        let star: Vec<String> = (1..=r).map(|j| format!("{}{}", pid(i), rid(j))).collect();
        for j in 1..=r {
            edges.push((star[j - 1].clone(), pid(i), rid(j)));
        }
        stars.push(star);
    }
    for k in &q_ids {
        let mut star = Vec::new();
        for j in (1..=r).map(rid).filter(|j| j != k) {
            let id = format!("{k}{j}");
            edges.push((id.clone(), k.clone(), j));
            star.push(id);
        }
        stars.push(star);
    }
    let g = MultiGraph::new(nodes, edges)?;
    let terminals = TerminalSet::new(&g, &terminal_ids)?;
    let witness = TreeFamily::from_id_lists(&g, &stars)?;
    require_valid(verify_rcist_structural(&g, &terminals, &witness)?, "host witness")?;
    let required_kappa = 10 * g.edge_count();
    debug_assert_eq!(required_kappa, connectivity_threshold(p, q, r)?);
    let q_set = q_ids.iter().map(|id| g.node_ix(id).expect("built above")).collect();
    Ok(HostGraph { graph: g, terminals, q_set, witness, required_kappa })
}

/// Vertex id of `h` with the ids of its neighbourhood set in `g`.
pub type NeighbourhoodSets = Vec<(String, Vec<String>)>;

/// Neighbourhood sets for an H-linkage: given an injective placement of the
/// vertices of `h` into `g`, finds pairwise disjoint sets `W_i` with
/// `w_i ∈ W_i ⊆ N[w_i]` and `|W_i| = d_H(v_i) + 1`, avoiding the other
/// placed vertices. Returns `None` when no such sets exist.
pub fn linkage_neighbourhood_sets(
    g: &MultiGraph,
    h: &MultiGraph,
    placement: &[(String, String)],
) -> Result<Option<NeighbourhoodSets>> {
    let mut image: Vec<Option<NodeIx>> = vec![None; h.node_count()];
    let mut used = vec![false; g.node_count()];
    for (hv, gv) in placement {
        let a = h.require_node(hv)?;
        let b = g.require_node(gv)?;
        if image[a].is_some() {
            return Err(Error::Parameter(format!("`{hv}` placed twice")));
        }
        if used[b] {
            return Err(Error::Parameter(format!("placement is not injective at `{gv}`")));
        }
        image[a] = Some(b);
        used[b] = true;
    }
    if let Some(v) = image.iter().position(Option::is_none) {
        return Err(Error::Parameter(format!("`{}` has no placement", h.node_id(v))));
    }
    let image: Vec<NodeIx> = image.into_iter().map(|x| x.expect("checked")).collect();
    let mut slots: Vec<(usize, Vec<usize>)> = Vec::new();
    for (v, &w0) in image.iter().enumerate() {
        let cands: Vec<usize> = g.neighbors(w0).into_iter().filter(|&w| !used[w]).collect();
        for _ in 0..h.degree(v) {
            slots.push((v, cands.clone()));
        }
    }
    let lists: Vec<Vec<usize>> = slots.iter().map(|(_, c)| c.clone()).collect();
    let Some(m) = saturating_matching(&lists, g.node_count()) else {
        return Ok(None);
    };
    let mut sets: Vec<Vec<NodeIx>> = image.iter().map(|&w| vec![w]).collect();
    for (slot, &w) in m.iter().enumerate() {
        sets[slots[slot].0].push(w);
    }
    Ok(Some(
        sets.into_iter()
            .enumerate()
            .map(|(v, s)| (h.node_id(v).to_string(), s.into_iter().map(|w| g.node_id(w).to_string()).collect()))
            .collect(),
    ))
}

/// True when a tree family has exactly the requested pendant/non-pendant split.
pub fn has_split(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily, pendant: usize, non_pendant: usize) -> bool {
    let mut counts = [0usize; 2];
    for t in f {
        match t.classify(g, r).kind {
            Some(TreeKind::Pendant) => counts[0] += 1,
            Some(TreeKind::NonPendant) => counts[1] += 1,
            None => return false,
        }
    }
    counts == [pendant, non_pendant]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tests::k4;

    #[test]
    fn bipartite_cases() {
        let c = bipartite_max_ridst(3, 4, 3, 0).unwrap();
        assert_eq!(c.family.len(), 4);
        assert_eq!(bipartite_max_ridst(3, 4, 2, 2).unwrap().family.len(), 3);
        // One terminal per side: every tree is a path, so only min(a, b).
        assert_eq!(bipartite_max_ridst(4, 2, 1, 1).unwrap().family.len(), 2);
        assert_eq!(bipartite_max_ridst(4, 2, 1, 2).unwrap().family.len(), 3);
        assert!(bipartite_max_ridst(2, 2, 3, 0).is_err());
    }

    fn bowtie() -> (MultiGraph, TerminalSet) {
        let g = MultiGraph::new(
            ["s", "t", "x", "y"],
            [("sx", "s", "x"), ("xt", "x", "t"), ("sy", "s", "y"), ("yt", "y", "t")],
        )
        .unwrap();
        let r = TerminalSet::new(&g, &["s", "t"]).unwrap();
        (g, r)
    }

    #[test]
    fn minimal_cut_families() {
        let (g, r) = bowtie();
        assert_eq!(min_cut_pendant_cist(&g, &r).unwrap().len(), 2);
        let (g, r) = complete_bipartite(2, 3, 2, 0).unwrap();
        assert_eq!(min_cut_pendant_cist(&g, &r).unwrap().len(), 3);
        let g = k4();
        let r = TerminalSet::new(&g, &["1", "2"]).unwrap();
        assert!(matches!(min_cut_pendant_cist(&g, &r), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_minimal_cut_is_rejected() {
        // c alone already separates the two leaves.
        let g = MultiGraph::new(["a", "c", "b", "d"], [("ac", "a", "c"), ("cb", "c", "b"), ("cd", "c", "d")]).unwrap();
        let r = TerminalSet::new(&g, &["c", "d"]).unwrap();
        assert!(matches!(min_cut_pendant_cist(&g, &r), Err(Error::Precondition(m)) if m.contains("minimal")));
    }

    #[test]
    fn partition_round_trip() {
        let (g, r) = complete_bipartite(2, 3, 0, 3).unwrap();
        let cert = PartitionCertificate::new(vec![vec![g.node_ix("a1").unwrap()], vec![g.node_ix("a2").unwrap()]]);
        let f = partition_to_trees(&g, &r, &cert).unwrap();
        assert_eq!(f.kind_counts(&g, &r), (2, 0));
        assert_eq!(trees_to_partition(&g, &r, &f).unwrap(), cert);
    }

    #[test]
    fn certificate_errors_name_the_subset() {
        let g = MultiGraph::new(
            ["t1", "s1", "t2", "s2", "t3", "s3"],
            [("a", "t1", "s1"), ("b", "s1", "t2"), ("c", "t2", "s2"), ("d", "s2", "t3"), ("e", "t3", "s3"), ("f", "s3", "t1")],
        )
        .unwrap();
        let r = TerminalSet::new(&g, &["t1", "t2", "t3"]).unwrap();
        let s = |id: &str| g.node_ix(id).unwrap();
        let cert = PartitionCertificate::new(vec![vec![s("s1")], vec![s("s2")], vec![s("s3")]]);
        assert!(matches!(partition_to_trees(&g, &r, &cert), Err(Error::Certificate { subset: 0, .. })));
        let overlap = PartitionCertificate::new(vec![vec![s("s1"), s("t2"), s("s2")], vec![s("s2")]]);
        assert!(matches!(overlap.check(&g, &r), Err(Error::Certificate { subset: 1, .. })));
    }

    #[test]
    fn path_interior_is_kept_when_realizable() {
        // Interior {m1, m2}: m1 must pick up t1, m2 must pick up t2.
        let g = MultiGraph::new(
            ["t1", "m1", "m2", "t2"],
            [("a", "t1", "m1"), ("b", "m1", "m2"), ("c", "m2", "t2"), ("d", "t1", "m2"), ("e", "m1", "t2")],
        )
        .unwrap();
        let r = TerminalSet::new(&g, &["t1", "t2"]).unwrap();
        let cert = PartitionCertificate::new(vec![vec![g.node_ix("m1").unwrap(), g.node_ix("m2").unwrap()]]);
        let f = partition_to_trees(&g, &r, &cert).unwrap();
        assert_eq!(trees_to_partition(&g, &r, &f).unwrap(), cert);
    }

    #[test]
    fn host_graph_arithmetic() {
        let h = linkage_host_graph(1, 1, 3).unwrap();
        assert_eq!(h.summary(), HostSummary { edges: 5, required_kappa: 50, pendant: 1, non_pendant: 1 });
        let h = linkage_host_graph(2, 0, 2).unwrap();
        assert_eq!(h.summary().edges, 4);
        assert_eq!(h.summary().pendant, 2);
        assert_eq!(connectivity_threshold(0, 2, 2).unwrap(), 20);
        assert!(linkage_host_graph(0, 0, 3).is_err());
        assert!(linkage_host_graph(1, 4, 3).is_err());
    }

    #[test]
    fn neighbourhood_sets_for_a_triangle_host() {
        let h = MultiGraph::new(["x", "y"], [("xy", "x", "y")]).unwrap();
        let g = MultiGraph::new(
            ["1", "2", "3", "4"],
            [("12", "1", "2"), ("13", "1", "3"), ("24", "2", "4"), ("34", "3", "4")],
        )
        .unwrap();
        let place = vec![("x".to_string(), "1".to_string()), ("y".to_string(), "4".to_string())];
        let sets = linkage_neighbourhood_sets(&g, &h, &place).unwrap().unwrap();
        assert_eq!(sets.len(), 2);
        assert!(sets.iter().all(|(_, s)| s.len() == 2));
        let place = vec![("x".to_string(), "1".to_string()), ("y".to_string(), "2".to_string())];
        // 1's free neighbour is 3 and 2's is 4: still feasible.
        assert!(linkage_neighbourhood_sets(&g, &h, &place).unwrap().is_some());
        let star = MultiGraph::new(["c", "l1", "l2", "l3"], [("a", "c", "l1"), ("b", "c", "l2"), ("d", "c", "l3")]).unwrap();
        let place: Vec<(String, String)> =
            [("c", "1"), ("l1", "2"), ("l2", "3"), ("l3", "4")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert!(linkage_neighbourhood_sets(&g, &star, &place).unwrap().is_none());
    }
}
