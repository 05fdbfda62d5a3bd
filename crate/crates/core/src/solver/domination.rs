//! Families of disjoint connected R-dominating sets.

use std::ops::ControlFlow;

use crate::construct::PartitionCertificate;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeIx, TerminalSet};

/// Largest vertex count for which subsets are enumerated.
pub const DOMINATION_GUARD: usize = 20;

fn check(g: &MultiGraph, r: &TerminalSet) -> Result<()> {
    if !r.is_independent(g) {
        return Err(Error::Precondition("terminal set is not independent".into()));
    }
    if g.node_count() > DOMINATION_GUARD {
        return Err(Error::GuardExceeded(format!("{} vertices exceed {DOMINATION_GUARD}", g.node_count())));
    }
    Ok(())
}

/// Every connected R-dominating set as a vertex bit set, by increasing size
/// then value.
pub fn connected_r_dominating_sets(g: &MultiGraph, r: &TerminalSet) -> Result<Vec<u32>> {
    check(g, r)?;
    let n = g.node_count();
    let mut closed = vec![0u32; n];
    for (v, c) in closed.iter_mut().enumerate() {
        *c = 1 << v;
        for w in g.neighbors(v) {
            *c |= 1 << w;
        }
    }
    let rmask: u32 = r.members().iter().map(|&t| 1u32 << t).sum();
    let mut out = Vec::new();
    for set in 1u32..(1u64 << n) as u32 {
        let dominated = (0..n).filter(|&v| set >> v & 1 == 1).fold(0, |acc, v| acc | closed[v]);
        if dominated & rmask != rmask {
            continue;
        }
        let members: Vec<NodeIx> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        if g.induces_connected(&members) {
            out.push(set);
        }
    }
    out.sort_by_key(|&s| (s.count_ones(), s));
    Ok(out)
}

fn to_cert(g: &MultiGraph, sets: &[u32]) -> PartitionCertificate {
    PartitionCertificate::new(
        sets.iter().map(|&s| (0..g.node_count()).filter(|&v| s >> v & 1 == 1).collect()).collect(),
    )
}

fn search(sets: &[u32], k: usize, start: usize, used: u32, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>) -> ControlFlow<()> {
    if cur.len() == k {
        return visit(cur);
    }
    for i in start..sets.len() {
        if sets[i] & used == 0 {
            cur.push(sets[i]);
            search(sets, k, i + 1, used | sets[i], cur, visit)?;
            cur.pop();
        }
    }
    ControlFlow::Continue(())
}

/// Streams every family of `k` pairwise disjoint connected R-dominating
/// sets. Stops early on `Break`.
pub fn for_each_dominating_family(
    g: &MultiGraph,
    r: &TerminalSet,
    k: usize,
    mut visit: impl FnMut(PartitionCertificate) -> ControlFlow<()>,
) -> Result<()> {
    let sets = connected_r_dominating_sets(g, r)?;
    let _ = search(&sets, k, 0, 0, &mut Vec::new(), &mut |fam| visit(to_cert(g, fam)));
    Ok(())
}

pub fn enumerate_dominating_families(g: &MultiGraph, r: &TerminalSet, k: usize) -> Result<Vec<PartitionCertificate>> {
    let mut out = Vec::new();
    for_each_dominating_family(g, r, k, |c| {
        out.push(c);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A family of `k` disjoint connected R-dominating sets, searching only
/// inclusion-minimal sets (any family shrinks to one of those).
pub fn find_dominating_family(g: &MultiGraph, r: &TerminalSet, k: usize) -> Result<Option<PartitionCertificate>> {
    let all = connected_r_dominating_sets(g, r)?;
    let minimal: Vec<u32> = all
        .iter()
        .copied()
        .filter(|&s| !all.iter().any(|&t| t != s && t & s == t))
        .collect();
    let mut hit = None;
    let _ = search(&minimal, k, 0, 0, &mut Vec::new(), &mut |fam| {
        hit = Some(fam.to_vec());
        ControlFlow::Break(())
    });
    Ok(hit.map(|f| to_cert(g, &f)))
}

/// Largest `k` with a family of `k` disjoint connected R-dominating sets.
pub fn max_dominating_family(g: &MultiGraph, r: &TerminalSet) -> Result<usize> {
    let mut k = 0;
    while find_dominating_family(g, r, k + 1)?.is_some() {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::complete_bipartite;

    #[test]
    fn k23_two_singletons() {
        let (g, r) = complete_bipartite(2, 3, 0, 3).unwrap();
        let fams = enumerate_dominating_families(&g, &r, 2).unwrap();
        let want = PartitionCertificate::new(vec![vec![0], vec![1]]);
        assert!(fams.contains(&want));
        assert_eq!(max_dominating_family(&g, &r).unwrap(), 2);
    }

    #[test]
    fn six_cycle_has_no_pair() {
        let g = MultiGraph::new(
            ["t1", "s1", "t2", "s2", "t3", "s3"],
            [("a", "t1", "s1"), ("b", "s1", "t2"), ("c", "t2", "s2"), ("d", "s2", "t3"), ("e", "t3", "s3"), ("f", "s3", "t1")],
        )
        .unwrap();
        let r = TerminalSet::new(&g, &["t1", "t2", "t3"]).unwrap();
        assert!(enumerate_dominating_families(&g, &r, 2).unwrap().is_empty());
        assert!(find_dominating_family(&g, &r, 1).unwrap().is_some());
    }
}
