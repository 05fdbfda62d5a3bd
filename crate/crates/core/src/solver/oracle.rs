//! Brute-force maxima for R-CIST, R-DST and R-IDST families.
//!
//! All R-Steiner trees are enumerated, then a branch-and-bound search looks
//! for the largest set of pairwise compatible trees. Trees are tried in order
//! of increasing edge count.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::bits::{check_width, Mask};
use super::enumerate::for_each_steiner_tree;
use crate::error::{Error, Result};
use crate::graph::{EdgeIx, MultiGraph, TerminalSet};
use crate::tree::{SteinerTree, TreeFamily};
use crate::verify::{verify_rcist_structural, verify_rdst, verify_ridst, VerificationReport};

pub const GUARD_NODES: usize = 10;
pub const GUARD_EDGES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFilter {
    #[default]
    All,
    PendantOnly,
    NonPendantOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleNotion {
    Rcist,
    Rdst,
    Ridst,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    pub filter: TreeFilter,
    /// Lift the desk-scale size guard.
    pub force: bool,
    /// Stop as soon as a family of this size is found.
    pub target: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub size: usize,
    /// A family of maximum size (or of the target size), absent when size is 0.
    pub witness: Option<TreeFamily>,
    /// Number of R-Steiner trees the search ran over.
    pub trees: usize,
}

pub fn guard(g: &MultiGraph, force: bool) -> Result<()> {
    check_width(g.node_count(), g.edge_count())?;
    if !force && (g.node_count() > GUARD_NODES || g.edge_count() > GUARD_EDGES) {
        return Err(Error::GuardExceeded(format!(
            "{} vertices / {} edges exceed {GUARD_NODES} / {GUARD_EDGES}",
            g.node_count(),
            g.edge_count()
        )));
    }
    Ok(())
}

struct Cand {
    edges: Mask,
    interior: Mask,
    non_terminals: Mask,
    list: Vec<EdgeIx>,
}

fn collect(g: &MultiGraph, r: &TerminalSet, filter: TreeFilter) -> Vec<Cand> {
    let mut out = Vec::new();
    let _ = for_each_steiner_tree(g, r, filter == TreeFilter::PendantOnly, |t| {
        let mut deg = [0u8; super::bits::MASK_BITS];
        for &e in t {
            let [a, b] = g.edge(e).ends;
            deg[a] += 1;
            deg[b] += 1;
        }
        let interior = Mask::from_indices((0..g.node_count()).filter(|&v| deg[v] >= 2));
        let non_pendant = r.members().iter().any(|&x| deg[x] >= 2);
        if filter != TreeFilter::NonPendantOnly || non_pendant {
            out.push(Cand {
                edges: Mask::from_indices(t.iter().copied()),
                interior,
                non_terminals: Mask::from_indices((0..g.node_count()).filter(|&v| deg[v] > 0 && !r.contains(v))),
                list: t.to_vec(),
            });
        }
        std::ops::ControlFlow::Continue(())
    });
    out.sort_by(|a, b| a.list.len().cmp(&b.list.len()).then_with(|| a.list.cmp(&b.list)));
    out
}

struct Search<'a> {
    cands: &'a [Cand],
    compat: &'a dyn Fn(&Cand, &Cand) -> bool,
    /// Incident-edge masks of the terminals, for the edge-capacity bound.
    terminal_edges: Option<Vec<Mask>>,
    limit: usize,
    best: Vec<u32>,
    cur: Vec<u32>,
}

impl Search<'_> {
    fn capacity(&self, used: &Mask) -> usize {
        match &self.terminal_edges {
            Some(te) => te.iter().map(|m| m.difference(used).len()).min().unwrap_or(usize::MAX),
            None => usize::MAX,
        }
    }

    fn run(&mut self, cand: &[u32], used: Mask) -> bool {
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
            if self.best.len() >= self.limit {
                return true;
            }
        }
        let room = self.capacity(&used);
        for (idx, &v) in cand.iter().enumerate() {
            let left = cand.len() - idx;
            if self.cur.len() + left.min(room) <= self.best.len() {
                return false;
            }
            let cv = &self.cands[v as usize];
            let next: Vec<u32> = cand[idx + 1..]
                .iter()
                .copied()
                .filter(|&w| (self.compat)(cv, &self.cands[w as usize]))
                .collect();
            self.cur.push(v);
            if self.run(&next, used.union(&cv.edges)) {
                return true;
            }
            self.cur.pop();
        }
        false
    }
}

fn max_family(
    g: &MultiGraph,
    r: &TerminalSet,
    cands: &[Cand],
    compat: &dyn Fn(&Cand, &Cand) -> bool,
    edge_disjoint: bool,
    target: Option<usize>,
) -> Vec<u32> {
    let terminal_edges = edge_disjoint.then(|| {
        r.members()
            .iter()
            .map(|&t| Mask::from_indices(g.incident(t).iter().copied()))
            .collect::<Vec<_>>()
    });
    let mut s = Search {
        cands,
        compat,
        terminal_edges,
        limit: target.unwrap_or(usize::MAX),
        best: Vec::new(),
        cur: Vec::new(),
    };
    let all: Vec<u32> = (0..cands.len() as u32).collect();
    s.run(&all, Mask::EMPTY);
    s.best
}

fn finish(
    g: &MultiGraph,
    r: &TerminalSet,
    cands: &[Cand],
    chosen: Vec<u32>,
    verify: fn(&MultiGraph, &TerminalSet, &TreeFamily) -> Result<VerificationReport>,
) -> Result<OracleResult> {
    let size = chosen.len();
    let witness = if chosen.is_empty() {
        None
    } else {
        let trees = chosen
            .iter()
            .map(|&i| SteinerTree::new(g, cands[i as usize].list.clone()))
            .collect::<Result<Vec<_>>>()?;
        let f = TreeFamily::new(trees)?;
        let rep = verify(g, r, &f)?;
        if !rep.valid {
            return Err(Error::InvariantBreach(format!("oracle witness fails its verifier: {:?}", rep.witness)));
        }
        Some(f)
    };
    Ok(OracleResult { size, witness, trees: cands.len() })
}

/// Maximum size of an R-CIST (pairwise edge-disjoint, disjoint interiors).
pub fn oracle_max_rcist(g: &MultiGraph, r: &TerminalSet, opts: &OracleOptions) -> Result<OracleResult> {
    guard(g, opts.force)?;
    let cands = collect(g, r, opts.filter);
    let compat = |a: &Cand, b: &Cand| a.edges.is_disjoint(&b.edges) && a.interior.is_disjoint(&b.interior);
    let chosen = max_family(g, r, &cands, &compat, true, opts.target);
    finish(g, r, &cands, chosen, verify_rcist_structural)
}

/// Maximum size of an R-DST (edge-disjoint, meeting only in terminals).
pub fn oracle_max_rdst(g: &MultiGraph, r: &TerminalSet, opts: &OracleOptions) -> Result<OracleResult> {
    guard(g, opts.force)?;
    let cands = collect(g, r, opts.filter);
    let compat =
        |a: &Cand, b: &Cand| a.edges.is_disjoint(&b.edges) && a.non_terminals.is_disjoint(&b.non_terminals);
    let chosen = max_family(g, r, &cands, &compat, true, opts.target);
    finish(g, r, &cands, chosen, verify_rdst)
}

/// Maximum number of distinct R-Steiner trees with pairwise disjoint
/// interiors. Trees with equal nonempty interiors are interchangeable, so
/// one representative per interior is searched.
pub fn oracle_max_ridst(g: &MultiGraph, r: &TerminalSet, opts: &OracleOptions) -> Result<OracleResult> {
    guard(g, opts.force)?;
    let all = collect(g, r, opts.filter);
    let mut seen: HashMap<Mask, ()> = HashMap::new();
    let cands: Vec<Cand> = all
        .into_iter()
        .filter(|c| c.interior.is_empty() || seen.insert(c.interior, ()).is_none())
        .collect();
    let compat = |a: &Cand, b: &Cand| a.interior.is_disjoint(&b.interior);
    let chosen = max_family(g, r, &cands, &compat, false, opts.target);
    finish(g, r, &cands, chosen, verify_ridst)
}

pub fn oracle_max(g: &MultiGraph, r: &TerminalSet, notion: OracleNotion, opts: &OracleOptions) -> Result<OracleResult> {
    match notion {
        OracleNotion::Rcist => oracle_max_rcist(g, r, opts),
        OracleNotion::Rdst => oracle_max_rdst(g, r, opts),
        OracleNotion::Ridst => oracle_max_ridst(g, r, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn kn(n: usize, r: usize) -> (MultiGraph, TerminalSet) {
        let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((format!("{}{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
            }
        }
        let g = MultiGraph::new(ids.clone(), edges).unwrap();
        let t = TerminalSet::new(&g, &ids[..r]).unwrap();
        (g, t)
    }

    #[test]
    fn h_family() {
        for i in 1..=4 {
            let (g, r) = h(i);
            let o = OracleOptions::default();
            assert_eq!(oracle_max_rcist(&g, &r, &o).unwrap().size, 1);
            assert_eq!(oracle_max_rdst(&g, &r, &o).unwrap().size, i);
        }
    }

    #[test]
    fn small_complete_graphs() {
        let o = OracleOptions::default();
        let (g, r) = kn(4, 4);
        assert_eq!(oracle_max_rcist(&g, &r, &o).unwrap().size, 2);
        let (g, r) = kn(5, 3);
        assert_eq!(oracle_max_rcist(&g, &r, &o).unwrap().size, 3);
    }

    #[test]
    fn guard_applies() {
        let (g, r) = kn(7, 3);
        let err = oracle_max_rcist(&g, &r, &OracleOptions::default()).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded(_)));
    }

    #[test]
    fn target_stops_early() {
        let (g, r) = kn(5, 2);
        let o = OracleOptions { target: Some(2), ..Default::default() };
        assert_eq!(oracle_max_rcist(&g, &r, &o).unwrap().size, 2);
    }
}
