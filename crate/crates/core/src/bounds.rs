//! Upper bounds on R-CIST sizes: planar graphs, bounded treewidth, the
//! non-pendant cap and the connectivity threshold for host graphs, plus
//! falsification sweeps that compare them with exact maxima.

use rayon::prelude::*;
use rustworkx_core::petgraph::graph::UnGraph;
use serde::Serialize;

use crate::construct::connectivity_threshold;
use crate::error::{Error, Result};
use crate::gen::{connected_graphs, SmallGraph};
use crate::graph::{MultiGraph, TerminalSet};
use crate::solver::oracle::{oracle_max_rcist, OracleOptions, TreeFilter};
use crate::tree::TreeFamily;
use crate::verify::verify_rcist_structural;

/// Planarity of the underlying simple graph.
pub fn is_planar(g: &MultiGraph) -> bool {
    let pairs: Vec<(u32, u32)> = g.simple_pairs().into_iter().map(|(a, b)| (a as u32, b as u32)).collect();
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(g.node_count(), pairs.len());
    for _ in 0..g.node_count() {
        pg.add_node(());
    }
    pg.extend_with_edges(pairs);
    rustworkx_core::planar::is_planar(&pg)
}

/// Largest R-CIST in a planar graph with `r_size` terminals; `None` means
/// unbounded (two terminals).
pub fn planar_bound(r_size: usize) -> Option<usize> {
    match r_size {
        0..=2 => None,
        3 => Some(5),
        _ => Some(4),
    }
}

/// A non-pendant R-CIST has at most `|R|` trees.
pub fn non_pendant_cap(r: &TerminalSet) -> usize {
    r.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Within,
    Violation,
    NotApplicable,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundContext {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planar: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub treewidth: Option<usize>,
    pub terminals: usize,
    pub pendant: usize,
    pub non_pendant: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub bound: String,
    pub asserted: Option<usize>,
    pub observed: usize,
    pub verdict: Verdict,
    pub context: BoundContext,
}

impl BoundReport {
    fn judge(bound: &str, asserted: Option<usize>, observed: usize, applicable: bool, context: BoundContext) -> Self {
        let verdict = match asserted {
            Some(b) if applicable => {
                if observed <= b {
                    Verdict::Within
                } else {
                    Verdict::Violation
                }
            }
            _ => Verdict::NotApplicable,
        };
        BoundReport { bound: bound.to_string(), asserted, observed, verdict, context }
    }
}

fn verified_context(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<BoundContext> {
    let rep = verify_rcist_structural(g, r, f)?;
    if !rep.valid {
        return Err(Error::Precondition(format!("family is not an R-CIST: {:?}", rep.witness)));
    }
    let (pendant, non_pendant) = f.kind_counts(g, r);
    Ok(BoundContext { terminals: r.len(), pendant, non_pendant, ..Default::default() })
}

pub fn check_planar_bound(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<BoundReport> {
    let mut ctx = verified_context(g, r, f)?;
    let planar = is_planar(g);
    ctx.planar = Some(planar);
    if !planar {
        ctx.note = Some("graph is not planar".into());
    }
    Ok(BoundReport::judge("planar", planar_bound(r.len()), f.len(), planar, ctx))
}

pub fn check_non_pendant_cap(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<BoundReport> {
    let ctx = verified_context(g, r, f)?;
    let all_non_pendant = ctx.pendant == 0;
    Ok(BoundReport::judge("non-pendant", Some(non_pendant_cap(r)), f.len(), all_non_pendant, ctx))
}

/// Vertex count above which exact treewidth is refused.
pub const TREEWIDTH_GUARD: usize = 10;

/// Exact treewidth by dynamic programming over elimination prefixes.
pub fn exact_treewidth(g: &MultiGraph) -> Result<usize> {
    let n = g.node_count();
    if n > TREEWIDTH_GUARD {
        return Err(Error::GuardExceeded(format!("{n} vertices exceed {TREEWIDTH_GUARD}")));
    }
    let mut adj = vec![0u32; n];
    for (a, b) in g.simple_pairs() {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    Ok(treewidth_of(&adj))
}

/// Number of vertices outside `s + v` reachable from `v` through `s`.
fn q_size(adj: &[u32], s: u32, v: usize) -> u32 {
    let mut seen: u32 = 1 << v;
    let mut stack = vec![v];
    let mut out: u32 = 0;
    while let Some(x) = stack.pop() {
        let mut nb = adj[x] & !seen;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            seen |= 1 << w;
            if s >> w & 1 == 1 {
                stack.push(w);
            } else {
                out |= 1 << w;
            }
        }
    }
    out.count_ones()
}

pub(crate) fn treewidth_of(adj: &[u32]) -> usize {
    let n = adj.len();
    if n <= 1 {
        return 0;
    }
    let full = (1u32 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q_size(adj, rest, v));
            best = best.min(cand);
        }
        tw[s as usize] = best;
    }
    tw[full as usize] as usize
}

/// Treewidth bounds for the pendant part, the non-pendant part and the
/// whole family. The pendant and whole-family bounds need `|R| >= w + 1`.
pub fn check_treewidth_bounds(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<Vec<BoundReport>> {
    let mut ctx = verified_context(g, r, f)?;
    let w = exact_treewidth(g)?;
    ctx.treewidth = Some(w);
    let enough = r.len() > w;
    let mut na = ctx.clone();
    if !enough {
        na.note = Some(format!("|R| = {} < w + 1 = {}", r.len(), w + 1));
    }
    Ok(vec![
        BoundReport::judge("treewidth-pendant", Some(w), ctx.pendant, enough, na.clone()),
        BoundReport::judge("treewidth-non-pendant", Some(w + 1), ctx.non_pendant, true, ctx.clone()),
        BoundReport::judge("treewidth-total", Some(2 * w), f.len(), enough, na),
    ])
}

/// Every bound that applies to a family, in a fixed order.
pub fn check_all(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<Vec<BoundReport>> {
    let mut out = vec![check_non_pendant_cap(g, r, f)?, check_planar_bound(g, r, f)?];
    if g.node_count() <= TREEWIDTH_GUARD {
        out.extend(check_treewidth_bounds(g, r, f)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SweepClass {
    Planar,
    Tw2,
}

/// Summary of a falsification sweep. Violations carry the instance and the
/// re-verified family.
#[derive(Debug, Clone, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub graphs: usize,
    pub instances: usize,
    pub violations: Vec<SweepViolation>,
    /// Largest maximum seen per terminal count.
    pub best: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepViolation {
    pub bound: String,
    pub asserted: usize,
    pub observed: usize,
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub terminals: Vec<String>,
    pub family: Vec<Vec<String>>,
}

/// Terminal sets of size at least `min` up to automorphism.
fn terminal_orbits(sg: &SmallGraph, min: usize) -> Vec<u16> {
    let autos = sg.automorphisms();
    (0u16..(1 << sg.n))
        .filter(|s| s.count_ones() as usize >= min)
        .filter(|&s| {
            autos.iter().all(|a| {
                let mut img = 0u16;
                for (v, &target) in a.iter().enumerate() {
                    if s >> v & 1 == 1 {
                        img |= 1 << target;
                    }
                }
                img >= s
            })
        })
        .collect()
}

/// `g` with one extra parallel copy of every terminal-terminal edge, named
/// `<e>'`. Two copies are all an R-CIST can use between two terminals.
pub fn double_terminal_edges(g: &MultiGraph, r: &TerminalSet) -> MultiGraph {
    let mut edges: Vec<(String, String, String)> = g
        .edges()
        .iter()
        .map(|e| (e.id.clone(), g.node_id(e.ends[0]).to_string(), g.node_id(e.ends[1]).to_string()))
        .collect();
    for e in g.edges() {
        if r.contains(e.ends[0]) && r.contains(e.ends[1]) {
            edges.push((format!("{}'", e.id), g.node_id(e.ends[0]).to_string(), g.node_id(e.ends[1]).to_string()));
        }
    }
    MultiGraph::new(g.nodes().to_vec(), edges).expect("copies get fresh ids")
}

struct Observation {
    r: usize,
    best: usize,
    violations: Vec<SweepViolation>,
}

fn violation(g: &MultiGraph, r: &TerminalSet, bound: &str, asserted: usize, f: &TreeFamily) -> SweepViolation {
    SweepViolation {
        bound: bound.to_string(),
        asserted,
        observed: f.len(),
        nodes: g.nodes().to_vec(),
        edges: g.edges().iter().map(|e| [g.node_id(e.ends[0]).to_string(), g.node_id(e.ends[1]).to_string()]).collect(),
        terminals: r.ids(g),
        family: f.id_lists(g),
    }
}

fn max_with(g: &MultiGraph, r: &TerminalSet, filter: TreeFilter) -> Result<(usize, Option<TreeFamily>)> {
    let o = oracle_max_rcist(g, r, &OracleOptions { filter, force: true, target: None })?;
    Ok((o.size, o.witness))
}

fn observe_planar(g: &MultiGraph, r: &TerminalSet) -> Result<Observation> {
    let (size, wit) = max_with(g, r, TreeFilter::All)?;
    let mut violations = Vec::new();
    if let (Some(b), Some(f)) = (planar_bound(r.len()), wit) {
        if size > b && verify_rcist_structural(g, r, &f)?.valid {
            violations.push(violation(g, r, "planar", b, &f));
        }
    }
    Ok(Observation { r: r.len(), best: size, violations })
}

fn observe_tw(g: &MultiGraph, r: &TerminalSet, w: usize) -> Result<Observation> {
    let mut violations = Vec::new();
    let (all, wit) = max_with(g, r, TreeFilter::All)?;
    let (np, np_wit) = max_with(g, r, TreeFilter::NonPendantOnly)?;
    let mut check = |bound: &str, asserted: usize, size: usize, f: Option<TreeFamily>| -> Result<()> {
        if let Some(f) = f {
            if size > asserted && verify_rcist_structural(g, r, &f)?.valid {
                violations.push(violation(g, r, bound, asserted, &f));
            }
        }
        Ok(())
    };
    check("treewidth-non-pendant", w + 1, np, np_wit)?;
    if r.len() > w {
        let (p, p_wit) = max_with(g, r, TreeFilter::PendantOnly)?;
        check("treewidth-pendant", w, p, p_wit)?;
        check("treewidth-total", 2 * w, all, wit)?;
    }
    Ok(Observation { r: r.len(), best: all, violations })
}

/// Exhaustive sweep over connected simple graphs with `3..=max_n` vertices
/// of the class and every terminal set up to automorphism. With `doubled`,
/// each instance is also run with its terminal-terminal edges doubled.
///
/// Doubled trees are outside the treewidth bounds' reach: a forest with one
/// doubled terminal edge and `R` its two ends has treewidth 1 but two
/// pendant single-edge trees, so the tw2 sweep reports those instances.
pub fn sweep(class: SweepClass, max_n: usize, doubled: bool, sequential: bool) -> Result<SweepReport> {
    let mut work: Vec<(SmallGraph, usize)> = Vec::new();
    for n in 3..=max_n {
        for sg in connected_graphs(n) {
            let g = sg.to_multigraph();
            match class {
                SweepClass::Planar => {
                    if is_planar(&g) {
                        work.push((sg, 0));
                    }
                }
                SweepClass::Tw2 => {
                    let w = exact_treewidth(&g)?;
                    if w <= 2 {
                        work.push((sg, w));
                    }
                }
            }
        }
    }
    let run = |(sg, w): &(SmallGraph, usize)| -> Result<Vec<Observation>> {
        let g = sg.to_multigraph();
        let min_r = if class == SweepClass::Planar { 3 } else { 2 };
        let mut out = Vec::new();
        for s in terminal_orbits(sg, min_r) {
            let members: Vec<usize> = (0..sg.n).filter(|&v| s >> v & 1 == 1).collect();
            let r = TerminalSet::from_indices(sg.n, members)?;
            let twin = double_terminal_edges(&g, &r);
            let variants = if doubled && twin.edge_count() > g.edge_count() { vec![&g, &twin] } else { vec![&g] };
            for h in variants {
                out.push(match class {
                    SweepClass::Planar => observe_planar(h, &r)?,
                    SweepClass::Tw2 => observe_tw(h, &r, *w)?,
                });
            }
        }
        Ok(out)
    };
    let results: Vec<Result<Vec<Observation>>> =
        if sequential { work.iter().map(run).collect() } else { work.par_iter().map(run).collect() };
    let mut rep = SweepReport { graphs: work.len(), ..Default::default() };
    let mut best: std::collections::BTreeMap<usize, usize> = Default::default();
    for res in results {
        for o in res? {
            rep.instances += 1;
            let b = best.entry(o.r).or_insert(0);
            *b = (*b).max(o.best);
            rep.violations.extend(o.violations);
        }
    }
    rep.best = best.into_iter().collect();
    Ok(rep)
}

/// Threshold `10((p+q)r - q)` re-exported for the bounds surface.
pub fn connectivity_bound(p: usize, q: usize, r: usize) -> Result<usize> {
    connectivity_threshold(p, q, r)
}
