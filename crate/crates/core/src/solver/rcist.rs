//! Exact R-CIST search for fixed `|R|` and `k` via templates, labelled
//! candidate solutions and disjoint paths in a twin graph.
//!
//! Every tree of an R-CIST is a subdivision of a labelled template whose
//! subdividing vertices are non-terminals internal to that tree only. So a
//! family exists iff some choice of `k` compatible labelled templates admits
//! internally disjoint paths for all template edges. A template edge whose
//! labels are adjacent in `G` is best realized by a spare parallel edge,
//! which uses no vertex; the remaining ones become path requests between
//! twins.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::oracle::TreeFilter;
use super::paths::disjoint_paths;
use super::template::{enumerate_templates, Color, Template};
use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};
use crate::transform::simp;
use crate::tree::{SteinerTree, TreeFamily};
use crate::verify::verify_rcist_structural;

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub filter: TreeFilter,
    /// Evaluate candidates one at a time instead of on the thread pool.
    pub sequential: bool,
    /// Ignore the candidate guard.
    pub force: bool,
}

/// Most candidate solutions examined without `force`.
pub const CANDIDATE_GUARD: usize = 2_000_000;

/// A template with its vertices labelled by graph vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTemplate {
    pub template: usize,
    /// Label pairs, each sorted, the list sorted.
    pub edges: Vec<(NodeIx, NodeIx)>,
    pub whites: Vec<NodeIx>,
    /// Terminals of degree at least 2 in the template.
    pub internal_blacks: Vec<NodeIx>,
}

impl LabelledTemplate {
    fn compatible(&self, other: &LabelledTemplate) -> bool {
        let disjoint = |a: &[NodeIx], b: &[NodeIx]| a.iter().all(|x| !b.contains(x));
        disjoint(&self.whites, &other.whites) && disjoint(&self.internal_blacks, &other.internal_blacks)
    }
}

/// A candidate solution: `k` pairwise compatible labelled templates, as
/// indices into the labelling list.
pub type CandidateSolution = Vec<usize>;

fn permutations(items: &[NodeIx], k: usize, cur: &mut Vec<NodeIx>, used: &mut Vec<bool>, out: &mut dyn FnMut(&[NodeIx])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            cur.push(items[i]);
            permutations(items, k, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}

/// Every distinct labelling of the given templates: blacks by distinct
/// terminals, whites by distinct non-terminals.
pub fn label_templates(g: &MultiGraph, r: &TerminalSet, templates: &[Template]) -> Vec<LabelledTemplate> {
    let terminals = r.sorted();
    let others: Vec<NodeIx> = (0..g.node_count()).filter(|&v| !r.contains(v)).collect();
    let mut out: Vec<LabelledTemplate> = Vec::new();
    for (ti, t) in templates.iter().enumerate() {
        let blacks: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.colors[v] == Color::Black).collect();
        let whites: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.colors[v] == Color::White).collect();
        let deg = t.degrees();
        let mut seen: std::collections::HashSet<Vec<(NodeIx, NodeIx)>> = Default::default();
        let mut label = vec![0; t.vertex_count()];
        permutations(&others, whites.len(), &mut Vec::new(), &mut vec![false; others.len()], &mut |wl| {
            for (k, &w) in whites.iter().enumerate() {
                label[w] = wl[k];
            }
            permutations(&terminals, blacks.len(), &mut Vec::new(), &mut vec![false; terminals.len()], &mut |bl| {
                for (k, &b) in blacks.iter().enumerate() {
                    label[b] = bl[k];
                }
                let mut edges: Vec<(NodeIx, NodeIx)> = t
                    .edges
                    .iter()
                    .map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b])))
                    .collect();
                edges.sort_unstable();
                if seen.insert(edges.clone()) {
                    let mut ws: Vec<NodeIx> = whites.iter().map(|&w| label[w]).collect();
                    ws.sort_unstable();
                    let mut ib: Vec<NodeIx> = blacks.iter().filter(|&&b| deg[b] >= 2).map(|&b| label[b]).collect();
                    ib.sort_unstable();
                    out.push(LabelledTemplate { template: ti, edges, whites: ws, internal_blacks: ib });
                }
            });
        });
    }
    out
}

/// Candidate solutions of size `k` in lexicographic order (indices
/// non-decreasing, so the count per template is the sequence `k_1..k_p`).
pub fn enumerate_candidates(labelled: &[LabelledTemplate], k: usize) -> Vec<CandidateSolution> {
    candidates_upto(labelled, k, usize::MAX).expect("no cap")
}

/// As [`enumerate_candidates`], or `None` once more than `cap` turn up.
fn candidates_upto(labelled: &[LabelledTemplate], k: usize, cap: usize) -> Option<Vec<CandidateSolution>> {
    fn go(l: &[LabelledTemplate], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, cap: usize) -> bool {
        if cur.len() == k {
            out.push(cur.clone());
            return out.len() <= cap;
        }
        for i in start..l.len() {
            if cur.iter().all(|&j| l[j].compatible(&l[i])) {
                cur.push(i);
                let ok = go(l, k, i, cur, out, cap);
                cur.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let mut out = Vec::new();
    go(labelled, k, 0, &mut Vec::new(), &mut out, cap).then_some(out)
}

/// Twin graph for a list of path requests: the free vertices with their
/// edges, plus one twin `<v>#<n>` per request end, joined by `<e>#<n>` to the
/// free neighbours of `v`.
pub struct TwinGraph {
    pub graph: MultiGraph,
    pub pairs: Vec<(NodeIx, NodeIx)>,
    /// Original edge for each twin-graph edge.
    pub origin: Vec<EdgeIx>,
}

pub fn twin_graph(g: &MultiGraph, free: &[bool], requests: &[(NodeIx, NodeIx)]) -> Result<TwinGraph> {
    let mut h = MultiGraph::empty();
    let mut origin = Vec::new();
    let mut map = vec![usize::MAX; g.node_count()];
    for v in (0..g.node_count()).filter(|&v| free[v]) {
        map[v] = h.push_node(g.node_id(v).to_string())?;
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if free[edge.ends[0]] && free[edge.ends[1]] {
            h.push_edge_ix(edge.id.clone(), map[edge.ends[0]], map[edge.ends[1]])?;
            origin.push(e);
        }
    }
    let mut count = vec![0usize; g.node_count()];
    let mut twin = |h: &mut MultiGraph, origin: &mut Vec<EdgeIx>, v: NodeIx| -> Result<NodeIx> {
        count[v] += 1;
        let n = count[v];
        let t = h.push_node(format!("{}#{n}", g.node_id(v)))?;
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if free[w] {
                h.push_edge_ix(format!("{}#{n}", g.edge_id(e)), t, map[w])?;
                origin.push(e);
            }
        }
        Ok(t)
    };
    let mut pairs = Vec::with_capacity(requests.len());
    for &(a, b) in requests {
        let x = twin(&mut h, &mut origin, a)?;
        let y = twin(&mut h, &mut origin, b)?;
        pairs.push((x, y));
    }
    Ok(TwinGraph { graph: h, pairs, origin })
}

/// Tries to realize one candidate solution; returns per-tree edge lists.
fn realize(g: &MultiGraph, r: &TerminalSet, labelled: &[LabelledTemplate], cand: &[usize]) -> Result<Option<Vec<Vec<EdgeIx>>>> {
    let mut free: Vec<bool> = (0..g.node_count()).map(|v| !r.contains(v)).collect();
    for &i in cand {
        for &w in &labelled[i].whites {
            free[w] = false;
        }
    }
    // Spare parallel edges per label pair, smallest id first.
    let mut spare: BTreeMap<(NodeIx, NodeIx), Vec<EdgeIx>> = BTreeMap::new();
    let mut trees: Vec<Vec<EdgeIx>> = vec![Vec::new(); cand.len()];
    let mut requests: Vec<(usize, NodeIx, NodeIx)> = Vec::new();
    for (ti, &i) in cand.iter().enumerate() {
        for &(a, b) in &labelled[i].edges {
            let pool = spare.entry((a, b)).or_insert_with(|| {
                let mut es = g.edges_between(a, b);
                es.sort_by(|&x, &y| g.edge_id(y).cmp(g.edge_id(x)));
                es
            });
            match pool.pop() {
                Some(e) => trees[ti].push(e),
                None => requests.push((ti, a, b)),
            }
        }
    }
    if requests.len() > free.iter().filter(|&&f| f).count() {
        return Ok(None);
    }
    if requests.is_empty() {
        return Ok(Some(trees));
    }
    let pairs: Vec<(NodeIx, NodeIx)> = requests.iter().map(|&(_, a, b)| (a, b)).collect();
    let tg = twin_graph(g, &free, &pairs)?;
    let Some(paths) = disjoint_paths(&tg.graph, &tg.pairs) else {
        return Ok(None);
    };
    for (k, path) in paths.iter().enumerate() {
        for w in path.windows(2) {
            let e = tg.graph.edges_between(w[0], w[1])[0];
            trees[requests[k].0].push(tg.origin[e]);
        }
    }
    Ok(Some(trees))
}

fn keep_template(t: &Template, filter: TreeFilter) -> bool {
    match filter {
        TreeFilter::All => true,
        TreeFilter::PendantOnly => t.is_pendant(),
        TreeFilter::NonPendantOnly => !t.is_pendant(),
    }
}

/// An R-CIST of size `k`, or `None` when none exists. Runs on the canonical
/// simplification and maps the trees back to `g` by edge id.
pub fn solve_rcist(g: &MultiGraph, r: &TerminalSet, k: usize, opts: &SolveOptions) -> Result<Option<TreeFamily>> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let s = simp(g, r)?;
    let (h, rh) = (&s.graph, &s.terminals);
    let templates: Vec<Template> =
        enumerate_templates(r.len()).into_iter().filter(|t| keep_template(t, opts.filter)).collect();
    let labelled = label_templates(h, rh, &templates);
    let found = if r.len() == 2 {
        // Two terminals: the trees are internally disjoint paths, one
        // labelled template realized k times.
        if labelled.is_empty() {
            None
        } else {
            realize(h, rh, &labelled, &vec![0; k])?
        }
    } else {
        let cap = if opts.force { usize::MAX } else { CANDIDATE_GUARD };
        let cands = candidates_upto(&labelled, k, cap).ok_or_else(|| {
            Error::GuardExceeded(format!("more than {CANDIDATE_GUARD} candidate solutions"))
        })?;
        if opts.sequential {
            let mut hit = None;
            for c in &cands {
                if let Some(t) = realize(h, rh, &labelled, c)? {
                    hit = Some(t);
                    break;
                }
            }
            hit
        } else {
            cands
                .par_iter()
                .map(|c| realize(h, rh, &labelled, c))
                .find_map_first(|res| match res {
                    Ok(Some(t)) => Some(Ok(t)),
                    Ok(None) => None,
                    Err(e) => Some(Err(e)),
                })
                .transpose()?
        }
    };
    let Some(lists) = found else {
        return Ok(None);
    };
    let trees = lists
        .into_iter()
        .map(|es| {
            let ids: Vec<&str> = es.iter().map(|&e| h.edge_id(e)).collect();
            SteinerTree::from_ids(g, &ids)
        })
        .collect::<Result<Vec<_>>>()?;
    let family = TreeFamily::new(trees)?;
    let rep = verify_rcist_structural(g, r, &family)?;
    if !rep.valid {
        return Err(Error::InvariantBreach(format!("solver family fails verification: {:?}", rep.witness)));
    }
    Ok(Some(family))
}
