//! Arborescences in digraphs: CISA partitions, the semi-degree construction,
//! directed R-minors, and the maps between R-CISTs and CISAs of a minor.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::digraph::{Arborescence, ArcIx, DiGraph, InteriorRule};
use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, NodeIx, TerminalSet};
use crate::io::{digraph_document, GraphDocument, PartitionDocument};
use crate::matching::saturating_matching;
use crate::solver::bits::{check_width, Mask};
use crate::transform::{min_id_spanning_tree, prune_to_steiner};
use crate::tree::{SteinerTree, TreeFamily, TreeKind};
use crate::verify::{verify_cisa, verify_cisa_by, verify_rcist_structural};

/// Largest digraph the Hamiltonian-cycle search accepts without `force`.
pub const HAMILTON_GUARD: usize = 12;
/// Largest digraph the exhaustive CISA and partition searches accept without `force`.
pub const CISA_GUARD: usize = 8;
/// Cap on the number of arc choices the arborescence enumeration walks.
const ARBORESCENCE_BUDGET: u64 = 2_000_000;

/// A partition of the vertices of a digraph into blocks, each sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CisaPartition {
    blocks: Vec<Vec<NodeIx>>,
}

impl CisaPartition {
    /// Fails unless every vertex lies in exactly one block.
    pub fn new(d: &DiGraph, mut blocks: Vec<Vec<NodeIx>>) -> Result<Self> {
        let mut owner = vec![None; d.node_count()];
        for (i, b) in blocks.iter_mut().enumerate() {
            b.sort_unstable();
            for &v in b.iter() {
                if v >= d.node_count() {
                    return Err(Error::Precondition(format!("block {i} has an unknown vertex #{v}")));
                }
                if owner[v].replace(i).is_some() {
                    return Err(Error::Precondition(format!("`{}` lies in two blocks", d.node_id(v))));
                }
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(Error::Precondition(format!("`{}` lies in no block", d.node_id(v))));
        }
        Ok(CisaPartition { blocks })
    }

    pub fn from_document(d: &DiGraph, doc: &PartitionDocument) -> Result<Self> {
        let blocks = doc
            .subsets
            .iter()
            .map(|s| {
                s.iter()
                    .map(|id| {
                        d.node_ix(id).ok_or_else(|| Error::UnknownVertex { item: "partition".into(), vertex: id.clone() })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, blocks)
    }

    pub fn document(&self, d: &DiGraph) -> PartitionDocument {
        PartitionDocument {
            subsets: self.blocks.iter().map(|b| b.iter().map(|&v| d.node_id(v).to_string()).collect()).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<NodeIx>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Why a partition fails. Blocks are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum PartitionWitness {
    /// No vertex of the block reaches all others inside it.
    #[serde(rename_all = "camelCase")]
    NotRootConnected { block: usize },
    /// `vertex` of `block` has no in-neighbour in `source`.
    #[serde(rename_all = "camelCase")]
    MissingInNeighbour { block: usize, source: usize, vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub witness: Option<PartitionWitness>,
}

fn block_mask(d: &DiGraph, block: &[NodeIx]) -> Vec<bool> {
    let mut keep = vec![false; d.node_count()];
    for &v in block {
        keep[v] = true;
    }
    keep
}

/// The smallest-id vertex of the block that reaches the whole block inside it.
fn block_root(d: &DiGraph, block: &[NodeIx]) -> Option<NodeIx> {
    let keep = block_mask(d, block);
    let mut order = block.to_vec();
    order.sort_by(|&a, &b| d.node_id(a).cmp(d.node_id(b)));
    order.into_iter().find(|&v| {
        let seen = d.reach_within(v, &keep);
        block.iter().all(|&w| seen[w])
    })
}

/// Checks that every block is root-connected and that, for every pair of
/// blocks, each vertex of either block has an in-neighbour in the other.
pub fn check_cisa_partition(d: &DiGraph, p: &CisaPartition) -> PartitionReport {
    let fail = |w| PartitionReport { valid: false, witness: Some(w) };
    for (i, b) in p.blocks.iter().enumerate() {
        if block_root(d, b).is_none() {
            return fail(PartitionWitness::NotRootConnected { block: i });
        }
    }
    let mut owner = vec![0; d.node_count()];
    for (i, b) in p.blocks.iter().enumerate() {
        for &v in b {
            owner[v] = i;
        }
    }
    for i in 0..p.len() {
        for j in 0..p.len() {
            if i == j {
                continue;
            }
            let mut block: Vec<NodeIx> = p.blocks[i].clone();
            block.sort_by(|&a, &b| d.node_id(a).cmp(d.node_id(b)));
            for v in block {
                if !d.in_arcs(v).iter().any(|&a| owner[d.arc(a).from] == j) {
                    return fail(PartitionWitness::MissingInNeighbour {
                        block: i,
                        source: j,
                        vertex: d.node_id(v).to_string(),
                    });
                }
            }
        }
    }
    PartitionReport { valid: true, witness: None }
}

/// One spanning arborescence per block: a BFS arborescence of the block from
/// its root, with every outside vertex hung on its smallest in-arc from the
/// block. The result is verified as a CISA.
pub fn partition_to_cisa(d: &DiGraph, p: &CisaPartition) -> Result<Vec<Arborescence>> {
    let report = check_cisa_partition(d, p);
    if let Some(w) = report.witness {
        let block = match &w {
            PartitionWitness::NotRootConnected { block } | PartitionWitness::MissingInNeighbour { block, .. } => *block,
        };
        let reason = match w {
            PartitionWitness::NotRootConnected { .. } => "not root-connected".to_string(),
            PartitionWitness::MissingInNeighbour { source, vertex, .. } => {
                format!("`{vertex}` has no in-neighbour in block {source}")
            }
        };
        return Err(Error::Certificate { subset: block, reason });
    }
    let mut out = Vec::with_capacity(p.len());
    for (i, b) in p.blocks.iter().enumerate() {
        let keep = block_mask(d, b);
        let root = block_root(d, b).expect("checked root-connected");
        let mut arcs: Vec<ArcIx> = Vec::new();
        let mut reached = vec![false; d.node_count()];
        reached[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &a in d.out_arcs(v) {
                let w = d.arc(a).to;
                if keep[w] && !reached[w] {
                    reached[w] = true;
                    arcs.push(a);
                    queue.push_back(w);
                }
            }
        }
        for v in (0..d.node_count()).filter(|&v| !keep[v]) {
            let a = d
                .in_arcs(v)
                .iter()
                .copied()
                .filter(|&a| keep[d.arc(a).from])
                .min()
                .expect("checked in-neighbour condition");
            arcs.push(a);
        }
        out.push(Arborescence::new(d, root, arcs, i)?);
    }
    let report = verify_cisa(d, &out)?;
    if !report.valid {
        return Err(Error::InvariantBreach(format!("partition arborescences are not a CISA: {:?}", report.witness)));
    }
    Ok(out)
}

/// Blocks are the interiors of the arborescences; vertices interior to none
/// are leaves of every arborescence and go to the first block.
pub fn cisa_to_partition(d: &DiGraph, arbs: &[Arborescence]) -> Result<CisaPartition> {
    let report = verify_cisa(d, arbs)?;
    if !report.valid {
        return Err(Error::Precondition(format!("arborescences are not a CISA: {:?}", report.witness)));
    }
    let mut blocks: Vec<Vec<NodeIx>> = arbs.iter().map(|a| a.interior(d)).collect();
    let placed: BTreeSet<NodeIx> = blocks.iter().flatten().copied().collect();
    blocks[0].extend((0..d.node_count()).filter(|v| !placed.contains(v)));
    let p = CisaPartition::new(d, blocks)?;
    let report = check_cisa_partition(d, &p);
    if !report.valid {
        return Err(Error::InvariantBreach(format!("CISA interiors fail the partition test: {:?}", report.witness)));
    }
    Ok(p)
}

/// Directed Hamiltonian cycle by backtracking from the smallest-id vertex,
/// trying out-neighbours in id order.
pub fn hamiltonian_cycle(d: &DiGraph, force: bool) -> Result<Option<Vec<NodeIx>>> {
    let n = d.node_count();
    if !force && n > HAMILTON_GUARD {
        return Err(Error::GuardExceeded(format!("{n} vertices exceed {HAMILTON_GUARD}")));
    }
    if n < 2 {
        return Ok(None);
    }
    let succ: Vec<Vec<NodeIx>> = (0..n)
        .map(|v| {
            let mut s: Vec<NodeIx> = d.out_arcs(v).iter().map(|&a| d.arc(a).to).collect();
            s.sort_by(|&a, &b| d.node_id(a).cmp(d.node_id(b)));
            s.dedup();
            s
        })
        .collect();
    let start = (0..n).min_by(|&a, &b| d.node_id(a).cmp(d.node_id(b))).expect("nonempty");
    fn extend(succ: &[Vec<NodeIx>], start: NodeIx, path: &mut Vec<NodeIx>, used: &mut [bool]) -> bool {
        let v = *path.last().expect("path starts at the start vertex");
        if path.len() == used.len() {
            return succ[v].contains(&start);
        }
        for &w in &succ[v] {
            if !used[w] {
                used[w] = true;
                path.push(w);
                if extend(succ, start, path, used) {
                    return true;
                }
                path.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[start] = true;
    let mut path = vec![start];
    let found = extend(&succ, start, &mut path, &mut used);
    Ok(found.then_some(path))
}

/// A CISA of size 2 when the minimum semi-degree is at least half the order:
/// a Hamiltonian cycle split into its first `floor(n/2)` vertices and the
/// rest. Returns `None` without searching when the degree condition fails.
pub fn ghouila_houri_cisa(d: &DiGraph, force: bool) -> Result<Option<Vec<Arborescence>>> {
    let n = d.node_count();
    if n < 2 || 2 * d.min_semi_degree() < n {
        return Ok(None);
    }
    let cycle = hamiltonian_cycle(d, force)?.ok_or_else(|| {
        Error::InvariantBreach(format!("no Hamiltonian cycle although min semi-degree {} >= {n}/2", d.min_semi_degree()))
    })?;
    let half = n / 2;
    let p = CisaPartition::new(d, vec![cycle[..half].to_vec(), cycle[half..].to_vec()])?;
    let report = check_cisa_partition(d, &p);
    if !report.valid {
        return Err(Error::InvariantBreach(format!("Hamiltonian split fails the partition test: {:?}", report.witness)));
    }
    partition_to_cisa(d, &p).map(Some)
}

/// All spanning arborescences as sorted arc lists.
pub fn spanning_arborescences(d: &DiGraph, force: bool) -> Result<Vec<Vec<ArcIx>>> {
    let n = d.node_count();
    if !force && n > CISA_GUARD {
        return Err(Error::GuardExceeded(format!("{n} vertices exceed {CISA_GUARD}")));
    }
    let mut budget: u64 = 0;
    for root in 0..n {
        let mut choices: u64 = 1;
        for v in (0..n).filter(|&v| v != root) {
            choices = choices.saturating_mul(d.in_arcs(v).iter().filter(|&&a| d.arc(a).from != v).count() as u64);
        }
        budget = budget.saturating_add(choices);
    }
    if !force && budget > ARBORESCENCE_BUDGET {
        return Err(Error::GuardExceeded(format!("{budget} in-arc choices exceed {ARBORESCENCE_BUDGET}")));
    }
    let mut out = Vec::new();
    for root in 0..n {
        let others: Vec<NodeIx> = (0..n).filter(|&v| v != root).collect();
        let mut pick: Vec<ArcIx> = Vec::with_capacity(others.len());
        fn walk(d: &DiGraph, root: NodeIx, others: &[NodeIx], pick: &mut Vec<ArcIx>, out: &mut Vec<Vec<ArcIx>>) {
            if pick.len() == others.len() {
                if Arborescence::new(d, root, pick.clone(), 0).is_ok() {
                    let mut a = pick.clone();
                    a.sort_unstable();
                    out.push(a);
                }
                return;
            }
            let v = others[pick.len()];
            for &a in d.in_arcs(v) {
                pick.push(a);
                walk(d, root, others, pick, out);
                pick.pop();
            }
        }
        walk(d, root, &others, &mut pick, &mut out);
    }
    Ok(out)
}

struct ArbFacts {
    arcs: Vec<ArcIx>,
    arc_mask: Mask,
    interior: Mask,
    root: NodeIx,
}

fn arborescence_facts(d: &DiGraph, force: bool, rule: InteriorRule) -> Result<Vec<ArbFacts>> {
    check_width(d.node_count(), d.arc_count())?;
    Ok(spanning_arborescences(d, force)?
        .into_iter()
        .map(|arcs| {
            let root = (0..d.node_count()).find(|&v| !arcs.iter().any(|&a| d.arc(a).to == v)).expect("has a root");
            let a = Arborescence::new(d, root, arcs.clone(), 0).expect("enumerated arborescences are valid");
            let interior = Mask::from_indices(a.interior_by(d, rule));
            ArbFacts { arc_mask: Mask::from_indices(arcs.iter().copied()), arcs, interior, root }
        })
        .collect())
}

fn compatible(a: &ArbFacts, b: &ArbFacts) -> bool {
    a.arc_mask.is_disjoint(&b.arc_mask) && a.interior.is_disjoint(&b.interior)
}

fn materialize(d: &DiGraph, facts: &[ArbFacts], chosen: &[usize]) -> Vec<Arborescence> {
    chosen
        .iter()
        .enumerate()
        .map(|(i, &c)| Arborescence::new(d, facts[c].root, facts[c].arcs.clone(), i).expect("valid"))
        .collect()
}

/// Maximum CISA by exhaustive search over spanning arborescences, with a
/// witness of that size.
pub fn oracle_max_cisa(d: &DiGraph, force: bool) -> Result<Vec<Arborescence>> {
    oracle_max_cisa_by(d, force, InteriorRule::OutArc)
}

/// [`oracle_max_cisa`] with an explicit interior rule.
pub fn oracle_max_cisa_by(d: &DiGraph, force: bool, rule: InteriorRule) -> Result<Vec<Arborescence>> {
    let facts = arborescence_facts(d, force, rule)?;
    fn grow(facts: &[ArbFacts], cand: &[usize], cur: &mut Vec<usize>, best: &mut Vec<usize>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for (i, &c) in cand.iter().enumerate() {
            if cur.len() + cand.len() - i <= best.len() {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&o| compatible(&facts[c], &facts[o])).collect();
            cur.push(c);
            grow(facts, &next, cur, best);
            cur.pop();
        }
    }
    let mut best = Vec::new();
    grow(&facts, &(0..facts.len()).collect::<Vec<_>>(), &mut Vec::new(), &mut best);
    let arbs = materialize(d, &facts, &best);
    if !arbs.is_empty() && !verify_cisa_by(d, &arbs, rule)?.valid {
        return Err(Error::InvariantBreach("oracle CISA witness fails verification".into()));
    }
    Ok(arbs)
}

/// Visits every CISA of size `k` (as a set, once) until `visit` breaks.
pub fn for_each_cisa<F>(d: &DiGraph, k: usize, force: bool, mut visit: F) -> Result<ControlFlow<()>>
where
    F: FnMut(&[Arborescence]) -> ControlFlow<()>,
{
    let facts = arborescence_facts(d, force, InteriorRule::OutArc)?;
    fn walk<F: FnMut(&[Arborescence]) -> ControlFlow<()>>(
        d: &DiGraph,
        facts: &[ArbFacts],
        k: usize,
        cand: &[usize],
        cur: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if cur.len() == k {
            return visit(&materialize(d, facts, cur));
        }
        for (i, &c) in cand.iter().enumerate() {
            if cur.len() + cand.len() - i < k {
                break;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&o| compatible(&facts[c], &facts[o])).collect();
            cur.push(c);
            walk(d, facts, k, &next, cur, visit)?;
            cur.pop();
        }
        ControlFlow::Continue(())
    }
    if k == 0 {
        return Ok(ControlFlow::Continue(()));
    }
    Ok(walk(d, &facts, k, &(0..facts.len()).collect::<Vec<_>>(), &mut Vec::new(), &mut visit))
}

/// Some directed R-minor carrying a CISA of size `k`, with the CISA.
pub fn find_minor_cisa(g: &MultiGraph, r: &TerminalSet, k: usize, force: bool) -> Result<Option<(DirectedRMinor, Vec<Arborescence>)>> {
    for m in directed_r_minors(g, r, force)? {
        let mut hit = None;
        let _ = for_each_cisa(&m.minor, k, force, |a| {
            hit = Some(a.to_vec());
            ControlFlow::Break(())
        })?;
        if let Some(a) = hit {
            return Ok(Some((m, a)));
        }
    }
    Ok(None)
}

/// An R-CIST of size `k` obtained by expanding some size-`k` CISA of some
/// directed R-minor. CISAs whose arcs cannot get distinct realizing edges
/// are skipped.
pub fn find_expandable_cisa(
    g: &MultiGraph,
    r: &TerminalSet,
    k: usize,
    force: bool,
) -> Result<Option<(DirectedRMinor, Vec<Arborescence>, TreeFamily)>> {
    for m in directed_r_minors(g, r, force)? {
        let mut hit = None;
        let mut failure = None;
        let _ = for_each_cisa(&m.minor, k, force, |a| match expand_cisa_to_rcist(g, r, &m, a) {
            Ok(f) => {
                hit = Some((a.to_vec(), f));
                ControlFlow::Break(())
            }
            Err(Error::Unsupported(_)) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some((a, f)) = hit {
            return Ok(Some((m, a, f)));
        }
    }
    Ok(None)
}

/// The first partition into exactly `k` blocks (in restricted-growth order)
/// that passes [`check_cisa_partition`].
pub fn find_cisa_partition(d: &DiGraph, k: usize, force: bool) -> Result<Option<CisaPartition>> {
    let n = d.node_count();
    if !force && n > CISA_GUARD {
        return Err(Error::GuardExceeded(format!("{n} vertices exceed {CISA_GUARD}")));
    }
    if k == 0 || k > n {
        return Ok(None);
    }
    let mut label = vec![0usize; n];
    fn walk(d: &DiGraph, k: usize, label: &mut [usize], i: usize, used: usize) -> Option<CisaPartition> {
        let n = label.len();
        if n - i < k - used {
            return None;
        }
        if i == n {
            let mut blocks = vec![Vec::new(); k];
            for (v, &l) in label.iter().enumerate() {
                blocks[l].push(v);
            }
            let p = CisaPartition::new(d, blocks).expect("labels partition the vertices");
            return check_cisa_partition(d, &p).valid.then_some(p);
        }
        for l in 0..=used.min(k - 1) {
            label[i] = l;
            if let Some(p) = walk(d, k, label, i + 1, used.max(l + 1)) {
                return Some(p);
            }
        }
        None
    }
    Ok(walk(d, k, &mut label, 0, 0))
}

/// A partition of `V(G)` into connected blocks with one terminal each, and
/// the digraph it induces. Block `i` holds terminal `terminals[i]`; blocks
/// are ordered by terminal id, and minor vertex `i` carries that id.
#[derive(Debug, Clone)]
pub struct DirectedRMinor {
    pub blocks: Vec<Vec<NodeIx>>,
    pub terminals: Vec<NodeIx>,
    /// Block of each vertex of `G`.
    pub phi: Vec<usize>,
    pub minor: DiGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorDocument {
    pub blocks: Vec<Vec<String>>,
    pub minor: GraphDocument,
}

impl DirectedRMinor {
    pub fn document(&self, g: &MultiGraph) -> MinorDocument {
        MinorDocument {
            blocks: self.blocks.iter().map(|b| b.iter().map(|&v| g.node_id(v).to_string()).collect()).collect(),
            minor: digraph_document(&self.minor),
        }
    }

    pub fn from_document(g: &MultiGraph, r: &TerminalSet, doc: &MinorDocument) -> Result<Self> {
        let pdoc = PartitionDocument { subsets: doc.blocks.clone() };
        build_directed_r_minor_ids(g, r, &pdoc)
    }
}

pub fn build_directed_r_minor_ids(g: &MultiGraph, r: &TerminalSet, doc: &PartitionDocument) -> Result<DirectedRMinor> {
    let blocks = doc
        .subsets
        .iter()
        .map(|s| s.iter().map(|id| g.require_node(id)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    build_directed_r_minor(g, r, blocks)
}

/// Arc `(V_i, V_j)` whenever some edge joins a vertex of `V_i` to the
/// terminal of `V_j`; adjacent terminals give a 2-cycle.
pub fn build_directed_r_minor(g: &MultiGraph, r: &TerminalSet, blocks: Vec<Vec<NodeIx>>) -> Result<DirectedRMinor> {
    let n = g.node_count();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut tagged: Vec<(NodeIx, Vec<NodeIx>)> = Vec::with_capacity(blocks.len());
    for (i, mut b) in blocks.into_iter().enumerate() {
        b.sort_unstable();
        b.dedup();
        let ts: Vec<NodeIx> = b.iter().copied().filter(|&v| r.contains(v)).collect();
        if ts.len() != 1 {
            return Err(Error::Certificate { subset: i, reason: format!("holds {} terminals, needs exactly 1", ts.len()) });
        }
        for &v in &b {
            if v >= n {
                return Err(Error::Certificate { subset: i, reason: format!("unknown vertex #{v}") });
            }
            if owner[v].replace(i).is_some() {
                return Err(Error::Certificate { subset: i, reason: format!("`{}` lies in two blocks", g.node_id(v)) });
            }
        }
        if !g.induces_connected(&b) {
            return Err(Error::Certificate { subset: i, reason: "does not induce a connected subgraph".into() });
        }
        tagged.push((ts[0], b));
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!("`{}` lies in no block", g.node_id(v))));
    }
    if tagged.len() != r.len() {
        return Err(Error::Precondition(format!("{} blocks for {} terminals", tagged.len(), r.len())));
    }
    tagged.sort_by(|a, b| g.node_id(a.0).cmp(g.node_id(b.0)));
    let terminals: Vec<NodeIx> = tagged.iter().map(|t| t.0).collect();
    let blocks: Vec<Vec<NodeIx>> = tagged.into_iter().map(|t| t.1).collect();
    let mut phi = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            phi[v] = i;
        }
    }
    let k = blocks.len();
    let mut has = vec![vec![false; k]; k];
    for e in g.edges() {
        for (x, y) in [(e.ends[0], e.ends[1]), (e.ends[1], e.ends[0])] {
            if phi[x] != phi[y] && terminals[phi[y]] == y {
                has[phi[x]][phi[y]] = true;
            }
        }
    }
    let ids: Vec<&str> = terminals.iter().map(|&t| g.node_id(t)).collect();
    let mut arcs = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if has[i][j] {
                arcs.push((format!("{}->{}", ids[i], ids[j]), ids[i].to_string(), ids[j].to_string()));
            }
        }
    }
    let minor = DiGraph::new(ids.iter().map(|s| s.to_string()), arcs)?;
    Ok(DirectedRMinor { blocks, terminals, phi, minor })
}

/// Every directed R-minor: each non-terminal is assigned to a terminal's
/// block in all possible ways, keeping the assignments with connected blocks.
pub fn directed_r_minors(g: &MultiGraph, r: &TerminalSet, force: bool) -> Result<Vec<DirectedRMinor>> {
    let free: Vec<NodeIx> = (0..g.node_count()).filter(|&v| !r.contains(v)).collect();
    let count = (r.len() as u64).checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    if !force && count > 1_000_000 {
        return Err(Error::GuardExceeded(format!("{count} block assignments")));
    }
    let terms = r.sorted();
    let mut choice = vec![0usize; free.len()];
    let mut out = Vec::new();
    loop {
        let mut blocks: Vec<Vec<NodeIx>> = terms.iter().map(|&t| vec![t]).collect();
        for (&v, &c) in free.iter().zip(&choice) {
            blocks[c].push(v);
        }
        if blocks.iter().all(|b| g.induces_connected(b)) {
            out.push(build_directed_r_minor(g, r, blocks)?);
        }
        let mut pos = choice.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < terms.len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Rooted at `root`: parent of each tree vertex, and the nearest terminal
/// ancestor (a terminal is its own).
fn root_tree(g: &MultiGraph, r: &TerminalSet, t: &SteinerTree, root: NodeIx) -> (Vec<Option<NodeIx>>, Vec<Option<NodeIx>>) {
    let n = g.node_count();
    let mut adj: Vec<Vec<NodeIx>> = vec![Vec::new(); n];
    for &e in t.edges() {
        let [a, b] = g.edge(e).ends;
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n];
    let mut anchor = vec![None; n];
    anchor[root] = Some(root);
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if anchor[w].is_none() {
                parent[w] = Some(v);
                anchor[w] = Some(if r.contains(w) { w } else { anchor[v].expect("set before push") });
                stack.push(w);
            }
        }
    }
    (parent, anchor)
}

fn smallest(g: &MultiGraph, it: impl IntoIterator<Item = NodeIx>) -> Option<NodeIx> {
    it.into_iter().min_by(|&a, &b| g.node_id(a).cmp(g.node_id(b)))
}

/// Arcs of a non-pendant tree in the minor: terminal `v` hangs from the
/// nearest terminal ancestor of its parent.
fn terminal_arcs(parent: &[Option<NodeIx>], anchor: &[Option<NodeIx>], r: &TerminalSet, root: NodeIx) -> Vec<(NodeIx, NodeIx)> {
    r.sorted()
        .into_iter()
        .filter(|&v| v != root)
        .map(|v| {
            let p = parent[v].expect("terminals lie on the tree");
            (anchor[p].expect("anchored"), v)
        })
        .collect()
}

/// Contracts an R-CIST into a directed R-minor carrying a CISA of the same
/// size. Supported shapes: all pendant or all non-pendant with at most `|R|`
/// trees, or two trees of mixed type. Larger mixed families are rejected:
/// their minors need not carry a CISA of the same size.
pub fn contract_rcist_to_cisa(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<(DirectedRMinor, Vec<Arborescence>)> {
    let report = verify_rcist_structural(g, r, f)?;
    if !report.valid {
        return Err(Error::Precondition(format!("family is not an R-CIST: {:?}", report.witness)));
    }
    let n = g.node_count();
    let k = f.len();
    let kinds: Vec<TreeKind> = f.iter().map(|t| t.classify(g, r).kind.expect("verified Steiner")).collect();
    let pendant = kinds.iter().filter(|&&x| x == TreeKind::Pendant).count();
    let mut owner: Vec<Option<NodeIx>> = vec![None; n];
    for &t in r.members() {
        owner[t] = Some(t);
    }
    // (tree, root, arcs as terminal pairs)
    let mut plan: Vec<(NodeIx, Vec<(NodeIx, NodeIx)>)> = Vec::with_capacity(k);
    let star = |root: NodeIx| -> Vec<(NodeIx, NodeIx)> {
        r.sorted().into_iter().filter(|&v| v != root).map(|v| (root, v)).collect()
    };
    let non_pendant = |t: &SteinerTree, owner: &mut Vec<Option<NodeIx>>| {
        let deg = t.degrees(g);
        let root = smallest(g, r.members().iter().copied().filter(|&v| deg[v] >= 2)).expect("non-pendant");
        let (parent, anchor) = root_tree(g, r, t, root);
        for v in t.vertices(g) {
            if !r.contains(v) {
                owner[v] = anchor[v];
            }
        }
        (root, terminal_arcs(&parent, &anchor, r, root))
    };
    if pendant == k && k <= r.len() {
        let terms = {
            let mut t = r.members().to_vec();
            t.sort_by(|&a, &b| g.node_id(a).cmp(g.node_id(b)));
            t
        };
        for (i, t) in f.iter().enumerate() {
            let root = terms[i];
            for v in t.interior(g) {
                owner[v] = Some(root);
            }
            plan.push((root, star(root)));
        }
    } else if pendant == 0 && k <= r.len() {
        for t in f.iter() {
            plan.push(non_pendant(t, &mut owner));
        }
    } else if k == 2 {
        let (ip, inp) = if kinds[0] == TreeKind::Pendant { (0, 1) } else { (1, 0) };
        let tnp = &f.trees()[inp];
        let leaf = smallest(g, tnp.leaves(g)).expect("a tree has leaves");
        for v in f.trees()[ip].interior(g) {
            owner[v] = Some(leaf);
        }
        let (root, arcs) = non_pendant(tnp, &mut owner);
        let mut both = vec![(leaf, star(leaf)), (root, arcs)];
        if ip == 1 {
            both.swap(0, 1);
        }
        plan = both;
    } else {
        return Err(Error::Unsupported(format!(
            "contraction supports all-pendant or all-non-pendant families of size at most |R| = {} and mixed families of size 2; got {pendant} pendant and {} non-pendant trees",
            r.len(),
            k - pendant
        )));
    }
    // Components outside the family join the block of their smallest-id neighbour on it.
    let keep: Vec<bool> = owner.iter().map(Option::is_none).collect();
    for comp in g.components_within(&keep) {
        let inside: BTreeSet<NodeIx> = comp.iter().copied().collect();
        let hook = smallest(
            g,
            comp.iter().flat_map(|&v| g.neighbors(v)).filter(|w| !inside.contains(w)),
        )
        .ok_or_else(|| Error::Precondition("graph is disconnected".into()))?;
        let o = owner[hook];
        for v in comp {
            owner[v] = o;
        }
    }
    let terms = r.sorted();
    let blocks: Vec<Vec<NodeIx>> = terms
        .iter()
        .map(|&t| (0..n).filter(|&v| owner[v] == Some(t)).collect())
        .collect();
    let minor = build_directed_r_minor(g, r, blocks)?;
    let arbs = plan
        .iter()
        .enumerate()
        .map(|(i, (root, arcs))| {
            let ids: Vec<String> =
                arcs.iter().map(|&(a, b)| format!("{}->{}", g.node_id(a), g.node_id(b))).collect();
            Arborescence::from_ids(&minor.minor, g.node_id(*root), &ids, i)
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::InvariantBreach(format!("contracted tree is not an arborescence of the minor: {e}")))?;
    let report = verify_cisa(&minor.minor, &arbs)?;
    if !report.valid {
        return Err(Error::InvariantBreach(format!("contraction does not yield a CISA: {:?}", report.witness)));
    }
    Ok((minor, arbs))
}

/// Expands a CISA of a directed R-minor into an R-CIST of `G`: each
/// interior block contributes its minimum-id spanning tree, each arc one
/// realizing edge, and the union is pruned to its terminals.
///
/// Every arc gets its own realizing edge. A 2-cycle between two singleton
/// terminal blocks has a single edge behind both arcs, so when both arcs are
/// used the expansion is refused.
pub fn expand_cisa_to_rcist(g: &MultiGraph, r: &TerminalSet, m: &DirectedRMinor, arbs: &[Arborescence]) -> Result<TreeFamily> {
    let d = &m.minor;
    let report = verify_cisa(d, arbs)?;
    if !report.valid {
        return Err(Error::Precondition(format!("arborescences are not a CISA of the minor: {:?}", report.witness)));
    }
    let spanning: Vec<Vec<EdgeIx>> = m
        .blocks
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let inner: Vec<EdgeIx> = (0..g.edge_count())
                .filter(|&e| g.edge(e).ends.iter().all(|&v| m.phi[v] == i))
                .collect();
            min_id_spanning_tree(g, &inner)
        })
        .collect();
    // Realizers of every used arc, by edge id.
    let mut requests: Vec<(usize, ArcIx)> = Vec::new();
    for (i, a) in arbs.iter().enumerate() {
        for &x in a.arcs() {
            requests.push((i, x));
        }
    }
    let realizers = |x: ArcIx| -> Vec<EdgeIx> {
        let (bi, bj) = (d.arc(x).from, d.arc(x).to);
        let head = m.terminals[bj];
        let mut es: Vec<EdgeIx> = g
            .incident(head)
            .iter()
            .copied()
            .filter(|&e| {
                let tail = g.edge(e).other(head);
                m.phi[tail] == bi
            })
            .collect();
        es.sort_by(|&a, &b| g.edge_id(a).cmp(g.edge_id(b)));
        es
    };
    let candidates: Vec<Vec<EdgeIx>> = requests.iter().map(|&(_, x)| realizers(x)).collect();
    if let Some(slot) = candidates.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("arc `{}` has no realizing edge", d.arc_id(requests[slot].1))));
    }
    let matched = saturating_matching(&candidates, g.edge_count()).ok_or_else(|| {
        Error::Unsupported(
            "the CISA uses more arcs than there are distinct realizing edges (both arcs of a 2-cycle backed by one edge)"
                .into(),
        )
    })?;
    let mut trees = Vec::with_capacity(arbs.len());
    for (i, a) in arbs.iter().enumerate() {
        let mut edges: Vec<EdgeIx> = a.interior(d).into_iter().flat_map(|b| spanning[b].iter().copied()).collect();
        edges.extend(requests.iter().zip(&matched).filter(|((ti, _), _)| *ti == i).map(|(_, &e)| e));
        edges.sort_unstable();
        edges.dedup();
        trees.push(prune_to_steiner(g, r, &edges)?);
    }
    let f = TreeFamily::new(trees)?;
    let report = verify_rcist_structural(g, r, &f)?;
    if !report.valid {
        return Err(Error::InvariantBreach(format!("expanded family is not an R-CIST: {:?}", report.witness)));
    }
    Ok(f)
}
