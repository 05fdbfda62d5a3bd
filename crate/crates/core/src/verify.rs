//! Verifiers for every disjointness notion on tree and arborescence families.
//!
//! When several violations exist, the reported witness is the first one by
//! tree pair `(i, j)`, then by id. Shared edges are reported before shared
//! vertices.

use serde::{Deserialize, Serialize};

use crate::digraph::{Arborescence, DiGraph, InteriorRule};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeIx, TerminalSet};
use crate::tree::{SteinerTree, TreeFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Notion {
    #[serde(rename = "RCIST")]
    Rcist,
    #[serde(rename = "RDST")]
    Rdst,
    #[serde(rename = "RIDST")]
    Ridst,
    #[serde(rename = "CISA")]
    Cisa,
    #[serde(rename = "CIST")]
    Cist,
}

/// A concrete violation. Tree indices are zero-based positions in the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Witness {
    /// Both trees contain the same edge (or arc).
    #[serde(rename_all = "camelCase")]
    SharedEdge { trees: [usize; 2], edge: String },
    /// A vertex is internal to both trees.
    #[serde(rename_all = "camelCase")]
    SharedInterior { trees: [usize; 2], vertex: String },
    /// A non-terminal vertex lies on both trees.
    #[serde(rename_all = "camelCase")]
    SharedNonTerminal { trees: [usize; 2], vertex: String },
    /// The two paths between a terminal pair meet in an edge or an inner vertex.
    #[serde(rename_all = "camelCase")]
    PathConflict {
        trees: [usize; 2],
        terminals: [String; 2],
        paths: [Vec<String>; 2],
        #[serde(skip_serializing_if = "Option::is_none", default)]
        edge: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        vertex: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub notion: Notion,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    fn from_witness(notion: Notion, witness: Option<Witness>) -> Self {
        VerificationReport { valid: witness.is_none(), notion, witness }
    }
}

/// Edge ids, vertices and interior of one tree, precomputed for pair checks.
struct Facts {
    edges: Vec<usize>,
    on_tree: Vec<bool>,
    internal: Vec<bool>,
}

fn facts(g: &MultiGraph, t: &SteinerTree) -> Facts {
    let deg = t.degrees(g);
    Facts {
        edges: t.edges().to_vec(),
        on_tree: deg.iter().map(|&d| d > 0).collect(),
        internal: deg.iter().map(|&d| d >= 2).collect(),
    }
}

fn min_id<'a>(ids: impl Iterator<Item = &'a str>) -> Option<String> {
    ids.min().map(str::to_string)
}

fn shared_edge(g: &MultiGraph, a: &Facts, b: &Facts) -> Option<String> {
    min_id(a.edges.iter().filter(|e| b.edges.binary_search(e).is_ok()).map(|&e| g.edge_id(e)))
}

fn shared_vertex(g: &MultiGraph, pick: impl Fn(NodeIx) -> bool) -> Option<String> {
    min_id((0..g.node_count()).filter(|&v| pick(v)).map(|v| g.node_id(v)))
}

fn pairwise(
    g: &MultiGraph,
    f: &TreeFamily,
    notion: Notion,
    check: impl Fn(usize, usize, &Facts, &Facts) -> Option<Witness>,
) -> VerificationReport {
    let all: Vec<Facts> = f.iter().map(|t| facts(g, t)).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some(w) = check(i, j, &all[i], &all[j]) {
                return VerificationReport::from_witness(notion, Some(w));
            }
        }
    }
    VerificationReport::from_witness(notion, None)
}

/// R-CIST by the path definition: for every terminal pair and every pair of
/// trees, the two connecting paths share no edge and no inner vertex.
pub fn verify_rcist_definitional(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<VerificationReport> {
    f.require_steiner(g, r)?;
    let mut terms = r.members().to_vec();
    terms.sort_by(|&a, &b| g.node_id(a).cmp(g.node_id(b)));
    let trees = f.trees();
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            for (x, &u) in terms.iter().enumerate() {
                for &v in &terms[x + 1..] {
                    if let Some(w) = path_conflict(g, trees, i, j, u, v)? {
                        return Ok(VerificationReport::from_witness(Notion::Rcist, Some(w)));
                    }
                }
            }
        }
    }
    Ok(VerificationReport::from_witness(Notion::Rcist, None))
}

fn inner_vertices(g: &MultiGraph, path: &[usize], start: NodeIx) -> Vec<NodeIx> {
    let mut out = Vec::new();
    let mut x = start;
    for &e in path.iter().take(path.len().saturating_sub(1)) {
        x = g.edge(e).other(x);
        out.push(x);
    }
    out
}

fn path_conflict(
    g: &MultiGraph,
    trees: &[SteinerTree],
    i: usize,
    j: usize,
    u: NodeIx,
    v: NodeIx,
) -> Result<Option<Witness>> {
    let p = trees[i].path(g, u, v)?;
    let q = trees[j].path(g, u, v)?;
    let edge = min_id(p.iter().filter(|e| q.contains(e)).map(|&e| g.edge_id(e)));
    let vertex = if edge.is_none() {
        let pi = inner_vertices(g, &p, u);
        let qi = inner_vertices(g, &q, u);
        min_id(pi.iter().filter(|x| qi.contains(x)).map(|&x| g.node_id(x)))
    } else {
        None
    };
    if edge.is_none() && vertex.is_none() {
        return Ok(None);
    }
    let ids = |path: &[usize]| path.iter().map(|&e| g.edge_id(e).to_string()).collect::<Vec<_>>();
    Ok(Some(Witness::PathConflict {
        trees: [i, j],
        terminals: [g.node_id(u).to_string(), g.node_id(v).to_string()],
        paths: [ids(&p), ids(&q)],
        edge,
        vertex,
    }))
}

/// R-CIST by the structural test: trees pairwise edge-disjoint with
/// disjoint interiors.
pub fn verify_rcist_structural(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<VerificationReport> {
    f.require_steiner(g, r)?;
    Ok(structural(g, f, Notion::Rcist))
}

fn structural(g: &MultiGraph, f: &TreeFamily, notion: Notion) -> VerificationReport {
    pairwise(g, f, notion, |i, j, a, b| {
        if let Some(edge) = shared_edge(g, a, b) {
            return Some(Witness::SharedEdge { trees: [i, j], edge });
        }
        shared_vertex(g, |v| a.internal[v] && b.internal[v])
            .map(|vertex| Witness::SharedInterior { trees: [i, j], vertex })
    })
}

/// R-DST: pairwise edge-disjoint, and any two trees meet only in terminals.
pub fn verify_rdst(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<VerificationReport> {
    f.require_steiner(g, r)?;
    Ok(pairwise(g, f, Notion::Rdst, |i, j, a, b| {
        if let Some(edge) = shared_edge(g, a, b) {
            return Some(Witness::SharedEdge { trees: [i, j], edge });
        }
        shared_vertex(g, |v| a.on_tree[v] && b.on_tree[v] && !r.contains(v))
            .map(|vertex| Witness::SharedNonTerminal { trees: [i, j], vertex })
    }))
}

/// R-IDST: pairwise disjoint interiors; edges may be shared.
pub fn verify_ridst(g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> Result<VerificationReport> {
    f.require_steiner(g, r)?;
    Ok(pairwise(g, f, Notion::Ridst, |i, j, a, b| {
        shared_vertex(g, |v| a.internal[v] && b.internal[v])
            .map(|vertex| Witness::SharedInterior { trees: [i, j], vertex })
    }))
}

/// Completely independent spanning trees: the structural test with every
/// vertex a terminal.
pub fn verify_cist(g: &MultiGraph, f: &TreeFamily) -> Result<VerificationReport> {
    let r = TerminalSet::all(g)?;
    f.require_steiner(g, &r)?;
    Ok(structural(g, f, Notion::Cist))
}

/// Completely independent spanning arborescences: pairwise arc-disjoint with
/// disjoint interiors (vertices with an out-arc).
pub fn verify_cisa(d: &DiGraph, arbs: &[Arborescence]) -> Result<VerificationReport> {
    verify_cisa_by(d, arbs, InteriorRule::OutArc)
}

/// [`verify_cisa`] with an explicit interior rule.
pub fn verify_cisa_by(d: &DiGraph, arbs: &[Arborescence], rule: InteriorRule) -> Result<VerificationReport> {
    if arbs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let interiors: Vec<Vec<bool>> = arbs
        .iter()
        .map(|a| {
            let mut m = vec![false; d.node_count()];
            for v in a.interior_by(d, rule) {
                m[v] = true;
            }
            m
        })
        .collect();
    for i in 0..arbs.len() {
        for j in i + 1..arbs.len() {
            let shared = min_id(
                arbs[i]
                    .arcs()
                    .iter()
                    .filter(|a| arbs[j].arcs().binary_search(a).is_ok())
                    .map(|&a| d.arc_id(a)),
            );
            if let Some(edge) = shared {
                return Ok(VerificationReport::from_witness(
                    Notion::Cisa,
                    Some(Witness::SharedEdge { trees: [i, j], edge }),
                ));
            }
            let vertex = min_id(
                (0..d.node_count())
                    .filter(|&v| interiors[i][v] && interiors[j][v])
                    .map(|v| d.node_id(v)),
            );
            if let Some(vertex) = vertex {
                return Ok(VerificationReport::from_witness(
                    Notion::Cisa,
                    Some(Witness::SharedInterior { trees: [i, j], vertex }),
                ));
            }
        }
    }
    Ok(VerificationReport::from_witness(Notion::Cisa, None))
}

impl Witness {
    /// Re-checks the witness against the raw definitions on an undirected family.
    pub fn confirms(&self, g: &MultiGraph, r: &TerminalSet, f: &TreeFamily) -> bool {
        let trees = f.trees();
        let pair = |t: &[usize; 2]| -> Option<(&SteinerTree, &SteinerTree)> {
            Some((trees.get(t[0])?, trees.get(t[1])?))
        };
        match self {
            Witness::SharedEdge { trees: t, edge } => match (pair(t), g.edge_ix(edge)) {
                (Some((a, b)), Some(e)) => t[0] != t[1] && a.contains_edge(e) && b.contains_edge(e),
                _ => false,
            },
            Witness::SharedInterior { trees: t, vertex } => match (pair(t), g.node_ix(vertex)) {
                (Some((a, b)), Some(v)) => t[0] != t[1] && a.degrees(g)[v] >= 2 && b.degrees(g)[v] >= 2,
                _ => false,
            },
            Witness::SharedNonTerminal { trees: t, vertex } => match (pair(t), g.node_ix(vertex)) {
                (Some((a, b)), Some(v)) => {
                    t[0] != t[1] && !r.contains(v) && a.degrees(g)[v] > 0 && b.degrees(g)[v] > 0
                }
                _ => false,
            },
            Witness::PathConflict { trees: t, terminals, edge, vertex, .. } => {
                let Some((a, b)) = pair(t) else { return false };
                let (Some(u), Some(v)) = (g.node_ix(&terminals[0]), g.node_ix(&terminals[1])) else {
                    return false;
                };
                if t[0] == t[1] || !r.contains(u) || !r.contains(v) {
                    return false;
                }
                let (Ok(p), Ok(q)) = (a.path(g, u, v), b.path(g, u, v)) else { return false };
                let edge_ok = edge.as_ref().map(|id| {
                    g.edge_ix(id).is_some_and(|e| p.contains(&e) && q.contains(&e))
                });
                let vertex_ok = vertex.as_ref().map(|id| {
                    g.node_ix(id).is_some_and(|x| {
                        inner_vertices(g, &p, u).contains(&x) && inner_vertices(g, &q, u).contains(&x)
                    })
                });
                match (edge_ok, vertex_ok) {
                    (None, None) => false,
                    (e, v) => e.unwrap_or(true) && v.unwrap_or(true),
                }
            }
        }
    }

    /// Re-checks the witness against an arborescence family.
    pub fn confirms_directed(&self, d: &DiGraph, arbs: &[Arborescence]) -> bool {
        match self {
            Witness::SharedEdge { trees: t, edge } => {
                let (Some(a), Some(b), Some(x)) = (arbs.get(t[0]), arbs.get(t[1]), d.arc_ix(edge)) else {
                    return false;
                };
                t[0] != t[1] && a.arcs().contains(&x) && b.arcs().contains(&x)
            }
            Witness::SharedInterior { trees: t, vertex } => {
                let (Some(a), Some(b), Some(v)) = (arbs.get(t[0]), arbs.get(t[1]), d.node_ix(vertex)) else {
                    return false;
                };
                t[0] != t[1] && a.interior(d).contains(&v) && b.interior(d).contains(&v)
            }
            _ => false,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn h(i: usize) -> (MultiGraph, TerminalSet) {
        let mut edges = Vec::new();
        for k in 1..=i {
            edges.push((format!("ux{k}"), "u".to_string(), "x".to_string()));
            edges.push((format!("xv{k}"), "x".to_string(), "v".to_string()));
        }
        let g = MultiGraph::new(["u", "x", "v"], edges).unwrap();
        let r = TerminalSet::new(&g, &["u", "x", "v"]).unwrap();
        (g, r)
    }

    fn k4() -> (MultiGraph, TerminalSet) {
        let ids = ["1", "2", "3", "4"];
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((format!("e{}{}", ids[a], ids[b]), ids[a], ids[b]));
            }
        }
        let g = MultiGraph::new(ids, edges).unwrap();
        let r = TerminalSet::all(&g).unwrap();
        (g, r)
    }

    #[test]
    fn h2_paths_conflict_at_x() {
        let (g, r) = h(2);
        let f = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"], vec!["ux2", "xv2"]]).unwrap();
        let def = verify_rcist_definitional(&g, &r, &f).unwrap();
        assert!(!def.valid);
        match def.witness.as_ref().unwrap() {
            Witness::PathConflict { terminals, vertex, .. } => {
                assert_eq!(terminals, &["u".to_string(), "v".to_string()]);
                assert_eq!(vertex.as_deref(), Some("x"));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(def.witness.as_ref().unwrap().confirms(&g, &r, &f));
        let st = verify_rcist_structural(&g, &r, &f).unwrap();
        assert!(!st.valid);
        assert!(st.witness.unwrap().confirms(&g, &r, &f));
    }

    #[test]
    fn k4_two_paths_form_a_cist() {
        let (g, r) = k4();
        let f = TreeFamily::from_id_lists(&g, &[vec!["e13", "e12", "e24"], vec!["e14", "e34", "e23"]]).unwrap();
        assert!(verify_rcist_definitional(&g, &r, &f).unwrap().valid);
        assert!(verify_rcist_structural(&g, &r, &f).unwrap().valid);
        assert!(verify_cist(&g, &f).unwrap().valid);
        let single = TreeFamily::from_id_lists(&g, &[vec!["e13", "e12", "e24"]]).unwrap();
        assert!(verify_rcist_definitional(&g, &r, &single).unwrap().valid);
    }

    #[test]
    fn h3_is_a_dst_but_not_a_cist() {
        let (g, r) = h(3);
        let f = TreeFamily::from_id_lists(
            &g,
            &[vec!["ux1", "xv1"], vec!["ux2", "xv2"], vec!["ux3", "xv3"]],
        )
        .unwrap();
        assert!(verify_rdst(&g, &r, &f).unwrap().valid);
        assert!(!verify_rcist_structural(&g, &r, &f).unwrap().valid);
    }

    #[test]
    fn shared_terminal_edge_fails_structurally() {
        let g = MultiGraph::new(
            ["a", "b", "c", "w"],
            [("ab", "a", "b"), ("bc", "b", "c"), ("aw", "a", "w"), ("cw", "c", "w"), ("bw", "b", "w")],
        )
        .unwrap();
        let r = TerminalSet::new(&g, &["a", "b", "c"]).unwrap();
        let f = TreeFamily::from_id_lists(&g, &[vec!["ab", "bc"], vec!["ab", "aw", "cw"]]).unwrap();
        let rep = verify_rcist_structural(&g, &r, &f).unwrap();
        assert_eq!(rep.witness, Some(Witness::SharedEdge { trees: [0, 1], edge: "ab".into() }));
    }

    #[test]
    fn non_steiner_member_is_an_error() {
        let (g, r) = k4();
        let f = TreeFamily::from_id_lists(&g, &[vec!["e12"]]).unwrap();
        assert!(matches!(verify_rdst(&g, &r, &f), Err(Error::NotSteiner { tree: 0, .. })));
    }

    #[test]
    fn ridst_on_k33_stars() {
        let mut edges = Vec::new();
        for a in ["a1", "a2", "a3"] {
            for b in ["b1", "b2", "b3"] {
                edges.push((format!("{a}{b}"), a, b));
            }
        }
        let g = MultiGraph::new(["a1", "a2", "a3", "b1", "b2", "b3"], edges).unwrap();
        let r = TerminalSet::new(&g, &["a1", "a2", "a3"]).unwrap();
        let stars: Vec<Vec<String>> =
            ["b1", "b2", "b3"].iter().map(|b| ["a1", "a2", "a3"].iter().map(|a| format!("{a}{b}")).collect()).collect();
        let f = TreeFamily::from_id_lists(&g, &stars).unwrap();
        assert!(verify_ridst(&g, &r, &f).unwrap().valid);
        assert!(verify_rcist_structural(&g, &r, &f).unwrap().valid);
        let dup = TreeFamily::from_id_lists(&g, &[stars[0].clone(), stars[0].clone()]).unwrap();
        let rep = verify_ridst(&g, &r, &dup).unwrap();
        assert_eq!(rep.witness, Some(Witness::SharedInterior { trees: [0, 1], vertex: "b1".into() }));
    }

    #[test]
    fn cisa_checks() {
        let d = DiGraph::complete(&["1", "2", "3"]);
        let a = Arborescence::from_ids(&d, "1", &["1->2", "2->3"], 0).unwrap();
        let b = Arborescence::from_ids(&d, "3", &["3->2", "2->1"], 1).unwrap();
        let rep = verify_cisa(&d, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(rep.witness, Some(Witness::SharedInterior { trees: [0, 1], vertex: "2".into() }));
        assert!(rep.witness.unwrap().confirms_directed(&d, &[a.clone(), b]));
        assert!(verify_cisa(&d, &[a]).unwrap().valid);
    }

    #[test]
    fn report_json_shape() {
        let (g, r) = h(2);
        let f = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"], vec!["ux1", "xv2"]]).unwrap();
        let rep = verify_rcist_structural(&g, &r, &f).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            json,
            r#"{"valid":false,"notion":"RCIST","witness":{"kind":"sharedEdge","trees":[0,1],"edge":"ux1"}}"#
        );
    }
}
