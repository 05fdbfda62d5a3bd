//! Deterministic instance families: complete graphs, the parallel-edge
//! graphs `H_i`, complete bipartite graphs, host graphs, seeded random
//! multigraphs and digraphs, and exhaustive lists of small simple graphs.

use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::is_planar;
use crate::construct::{complete_bipartite, linkage_host_graph};
use crate::digraph::DiGraph;
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, TerminalSet};
use crate::io::{digraph_document, graph_document, GraphDocument};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `K_n` on `v1..vn` with edges `v<a>v<b>`; the first `r` vertices are terminals.
pub fn complete_graph(n: usize, r: usize) -> Result<(MultiGraph, TerminalSet)> {
    if r < 2 || r > n {
        return Err(Error::Parameter(format!("K_{n} with {r} terminals")));
    }
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((format!("{}{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
        }
    }
    let g = MultiGraph::new(ids.clone(), edges)?;
    let t = TerminalSet::new(&g, &ids[..r])?;
    Ok((g, t))
}

/// `H_i`: vertices `u, x, v`, edges `ux1..uxi` and `xv1..xvi`, all terminals.
pub fn h_graph(i: usize) -> Result<(MultiGraph, TerminalSet)> {
    if i == 0 {
        return Err(Error::Parameter("H_i needs i >= 1".into()));
    }
    let mut edges = Vec::new();
    for k in 1..=i {
        edges.push((format!("ux{k}"), "u".to_string(), "x".to_string()));
    }
    for k in 1..=i {
        edges.push((format!("xv{k}"), "x".to_string(), "v".to_string()));
    }
    let g = MultiGraph::new(["u", "x", "v"], edges)?;
    let r = TerminalSet::all(&g)?;
    Ok((g, r))
}

fn random_terminals(g: &MultiGraph, r: usize, rng: &mut ChaCha8Rng) -> Result<TerminalSet> {
    let n = g.node_count();
    if r < 2 || r > n {
        return Err(Error::Parameter(format!("{r} terminals on {n} vertices")));
    }
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..r {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    let mut chosen = pool[..r].to_vec();
    chosen.sort_unstable();
    TerminalSet::from_indices(n, chosen)
}

/// Connected multigraph on `v1..vn`: a random spanning tree plus `extra`
/// random edges (parallels allowed), with `r` random terminals.
pub fn random_multigraph(n: usize, extra: usize, r: usize, seed: u64) -> Result<(MultiGraph, TerminalSet)> {
    if n < 2 {
        return Err(Error::Parameter("random graphs need n >= 2".into()));
    }
    let mut rng = rng(seed);
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        edges.push((a.min(b), a.max(b)));
    }
    let g = MultiGraph::new(
        ids.clone(),
        edges.iter().enumerate().map(|(k, &(a, b))| (format!("e{}", k + 1), ids[a].clone(), ids[b].clone())),
    )?;
    let t = random_terminals(&g, r, &mut rng)?;
    Ok((g, t))
}

/// Connected simple planar graph: a random spanning tree plus up to `extra`
/// random edges, each kept only if the graph stays planar.
pub fn random_planar(n: usize, extra: usize, r: usize, seed: u64) -> Result<(MultiGraph, TerminalSet)> {
    if n < 2 {
        return Err(Error::Parameter("random graphs need n >= 2".into()));
    }
    let mut rng = rng(seed);
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let build = |pairs: &[(usize, usize)]| {
        MultiGraph::new(
            ids.clone(),
            pairs.iter().map(|&(a, b)| (format!("{}{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone())),
        )
    };
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a == b || pairs.contains(&(a, b)) {
            continue;
        }
        pairs.push((a, b));
        if !is_planar(&build(&pairs)?) {
            pairs.pop();
        }
    }
    let g = build(&pairs)?;
    let t = random_terminals(&g, r, &mut rng)?;
    Ok((g, t))
}

/// Digraph on `v1..vn` with each ordered pair an arc `v<a>->v<b>` with
/// probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<DiGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("arc probability {p}")));
    }
    let mut rng = rng(seed);
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.random_bool(p) {
                arcs.push((format!("{}->{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
            }
        }
    }
    DiGraph::new(ids, arcs)
}

/// Random digraph with minimum semi-degree at least `n/2`: starts from a
/// random digraph and adds random arcs at deficient vertices.
pub fn random_semidegree_digraph(n: usize, seed: u64) -> Result<DiGraph> {
    if n < 2 {
        return Err(Error::Parameter("digraphs need n >= 2".into()));
    }
    let mut rng = rng(seed);
    let need = n.div_ceil(2);
    let mut adj = vec![vec![false; n]; n];
    let p = rng.random_range(0.2..0.8);
    for (a, row) in adj.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = a != b && rng.random_bool(p);
        }
    }
    loop {
        let out = |adj: &Vec<Vec<bool>>, v: usize| adj[v].iter().filter(|&&x| x).count();
        let inn = |adj: &Vec<Vec<bool>>, v: usize| (0..n).filter(|&u| adj[u][v]).count();
        let Some(v) = (0..n).find(|&v| out(&adj, v) < need || inn(&adj, v) < need) else {
            break;
        };
        if out(&adj, v) < need {
            let free: Vec<usize> = (0..n).filter(|&w| w != v && !adj[v][w]).collect();
            adj[v][free[rng.random_range(0..free.len())]] = true;
        } else {
            let free: Vec<usize> = (0..n).filter(|&u| u != v && !adj[u][v]).collect();
            adj[free[rng.random_range(0..free.len())]][v] = true;
        }
    }
    let ids: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if adj[a][b] {
                arcs.push((format!("{}->{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
            }
        }
    }
    DiGraph::new(ids, arcs)
}

/// A simple graph on at most 16 vertices as adjacency bit rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: Vec<u16>,
}

impl SmallGraph {
    fn invariant(&self, v: usize) -> (u32, Vec<u32>) {
        let mut nd: Vec<u32> = (0..self.n).filter(|&w| self.adj[v] >> w & 1 == 1).map(|w| self.adj[w].count_ones()).collect();
        nd.sort_unstable();
        (self.adj[v].count_ones(), nd)
    }

    /// Permutations `p` (new position -> old vertex) that list vertices in
    /// invariant order; isomorphisms map these onto each other.
    fn ordered_perms(&self) -> Vec<Vec<usize>> {
        type Class = ((u32, Vec<u32>), Vec<usize>);
        let mut classes: Vec<Class> = Vec::new();
        for v in 0..self.n {
            let key = self.invariant(v);
            match classes.iter_mut().find(|(k, _)| *k == key) {
                Some((_, vs)) => vs.push(v),
                None => classes.push((key, vec![v])),
            }
        }
        classes.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for (_, vs) in &classes {
            let mut next = Vec::new();
            for prefix in &out {
                for perm in permutations_of(vs) {
                    let mut p = prefix.clone();
                    p.extend(perm);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    fn relabel(&self, p: &[usize]) -> Vec<u16> {
        let mut pos = vec![0; self.n];
        for (i, &v) in p.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = vec![0u16; self.n];
        for (i, &v) in p.iter().enumerate() {
            for (w, &at) in pos.iter().enumerate() {
                if self.adj[v] >> w & 1 == 1 {
                    rows[i] |= 1 << at;
                }
            }
        }
        rows
    }

    pub fn canonical(&self) -> SmallGraph {
        let best = self.ordered_perms().iter().map(|p| self.relabel(p)).min().expect("at least one permutation");
        SmallGraph { n: self.n, adj: best }
    }

    /// All automorphisms as vertex maps `v -> image`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let perms = self.ordered_perms();
        let base = &perms[0];
        let target = self.relabel(base);
        perms
            .iter()
            .filter(|p| self.relabel(p) == target)
            .map(|p| {
                // base[i] and p[i] play the same role.
                let mut map = vec![0; self.n];
                for i in 0..self.n {
                    map[base[i]] = p[i];
                }
                map
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..self.n {
                if frontier >> v & 1 == 1 {
                    next |= self.adj[v];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == self.n
    }

    /// As a multigraph on `v1..vn` with edges `v<a>v<b>`.
    pub fn to_multigraph(&self) -> MultiGraph {
        let ids: Vec<String> = (1..=self.n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.adj[a] >> b & 1 == 1 {
                    edges.push((format!("{}{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
                }
            }
        }
        MultiGraph::new(ids, edges).expect("small graphs are well formed")
    }
}

fn permutations_of(vs: &[usize]) -> Vec<Vec<usize>> {
    if vs.len() <= 1 {
        return vec![vs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..vs.len() {
        let mut rest = vs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every simple graph on `n` vertices up to isomorphism, in canonical form.
pub fn all_graphs(n: usize) -> Vec<SmallGraph> {
    assert!(n <= 10, "exhaustive graph lists are limited to 10 vertices");
    let mut level: Vec<SmallGraph> = vec![SmallGraph { n: 1, adj: vec![0] }];
    if n == 0 {
        return Vec::new();
    }
    for m in 1..n {
        let mut seen = HashSet::new();
        for g in &level {
            for nb in 0u16..(1 << m) {
                let mut adj = g.adj.clone();
                adj.push(nb);
                for (v, row) in adj.iter_mut().enumerate().take(m) {
                    if nb >> v & 1 == 1 {
                        *row |= 1 << m;
                    }
                }
                seen.insert(SmallGraph { n: m + 1, adj }.canonical());
            }
        }
        level = seen.into_iter().collect();
        level.sort_by(|a, b| a.adj.cmp(&b.adj));
    }
    level
}

pub fn connected_graphs(n: usize) -> Vec<SmallGraph> {
    all_graphs(n).into_iter().filter(SmallGraph::is_connected).collect()
}

/// Every simple digraph (no loops, no parallel arcs) on `n` vertices up to
/// isomorphism, on vertices `1..n` with arcs `a->b`.
pub fn all_digraphs(n: usize) -> Vec<DiGraph> {
    assert!((1..=6).contains(&n), "exhaustive digraph lists cover 1 to 6 vertices");
    let canon = |rows: &[u16], perms: &[Vec<usize>]| -> Vec<u16> {
        let m = rows.len();
        perms
            .iter()
            .map(|p| {
                let mut pos = vec![0; m];
                for (i, &v) in p.iter().enumerate() {
                    pos[v] = i;
                }
                let mut out = vec![0u16; m];
                for (i, &v) in p.iter().enumerate() {
                    for (w, &at) in pos.iter().enumerate() {
                        if rows[v] >> w & 1 == 1 {
                            out[i] |= 1 << at;
                        }
                    }
                }
                out
            })
            .min()
            .expect("at least one permutation")
    };
    let mut level: Vec<Vec<u16>> = vec![vec![0]];
    for m in 1..n {
        let mut seen = HashSet::new();
        let perms = permutations_of(&(0..=m).collect::<Vec<_>>());
        for rows in &level {
            for out_set in 0u16..(1 << m) {
                for in_set in 0u16..(1 << m) {
                    let mut r = rows.clone();
                    r.push(out_set);
                    for (v, row) in r.iter_mut().enumerate().take(m) {
                        if in_set >> v & 1 == 1 {
                            *row |= 1 << m;
                        }
                    }
                    seen.insert(canon(&r, &perms));
                }
            }
        }
        level = seen.into_iter().collect();
        level.sort();
    }
    level
        .into_iter()
        .map(|rows| {
            let ids: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let mut arcs = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if rows[a] >> b & 1 == 1 {
                        arcs.push((format!("{}->{}", ids[a], ids[b]), ids[a].clone(), ids[b].clone()));
                    }
                }
            }
            DiGraph::new(ids, arcs).expect("small digraphs are well formed")
        })
        .collect()
}

/// Instance families addressable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum Family {
    Kn,
    Kpq,
    Hi,
    Host,
    RandomPlanar,
    RandomDigraph,
    RandomMultigraph,
}

/// Numeric parameters; each family reads the ones it needs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub ra: Option<usize>,
    pub rb: Option<usize>,
    pub i: Option<usize>,
    pub extra: Option<usize>,
    pub density: Option<f64>,
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Parameter(format!("missing parameter --{name}")))
}

pub fn generate(family: Family, params: &GenParams, seed: u64) -> Result<GraphDocument> {
    Ok(match family {
        Family::Kn => {
            let n = need(params.n, "n")?;
            let (g, r) = complete_graph(n, params.r.unwrap_or(n))?;
            graph_document(&g, Some(&r))
        }
        Family::Kpq => {
            let (p, q) = (need(params.p, "p")?, need(params.q, "q")?);
            let (g, r) = complete_bipartite(p, q, params.ra.unwrap_or(p), params.rb.unwrap_or(0))?;
            graph_document(&g, Some(&r))
        }
        Family::Hi => {
            let (g, r) = h_graph(need(params.i, "i")?)?;
            graph_document(&g, Some(&r))
        }
        Family::Host => {
            let h = linkage_host_graph(need(params.p, "p")?, need(params.q, "q")?, need(params.r, "r")?)?;
            graph_document(&h.graph, Some(&h.terminals))
        }
        Family::RandomPlanar => {
            let n = need(params.n, "n")?;
            let (g, r) = random_planar(n, params.extra.unwrap_or(2 * n), params.r.unwrap_or(3.min(n)), seed)?;
            graph_document(&g, Some(&r))
        }
        Family::RandomMultigraph => {
            let n = need(params.n, "n")?;
            let (g, r) = random_multigraph(n, params.extra.unwrap_or(n), params.r.unwrap_or(3.min(n)), seed)?;
            graph_document(&g, Some(&r))
        }
        Family::RandomDigraph => {
            let n = need(params.n, "n")?;
            let d = match params.density {
                Some(p) => random_digraph(n, p, seed)?,
                None => random_semidegree_digraph(n, seed)?,
            };
            digraph_document(&d)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        let directed: Vec<usize> = (1..=4).map(|n| all_digraphs(n).len()).collect();
        assert_eq!(directed, vec![1, 3, 16, 218]);
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert_eq!(connected_graphs(6).len(), 112);
    }

    #[test]
    fn automorphisms_of_a_path() {
        let p3 = SmallGraph { n: 3, adj: vec![0b010, 0b101, 0b010] };
        assert_eq!(p3.automorphisms().len(), 2);
    }

    #[test]
    fn seeded_generation_is_stable() {
        let a = random_multigraph(6, 4, 3, 7).unwrap();
        let b = random_multigraph(6, 4, 3, 7).unwrap();
        assert_eq!(a, b);
        let (g, _) = random_planar(6, 20, 3, 1).unwrap();
        assert!(is_planar(&g));
        let d = random_semidegree_digraph(7, 3).unwrap();
        assert!(d.min_semi_degree() >= 4);
    }

    #[test]
    fn h3_document() {
        let doc = generate(Family::Hi, &GenParams { i: Some(3), ..Default::default() }, 0).unwrap();
        assert_eq!(doc.edges.unwrap().len(), 6);
    }
}
