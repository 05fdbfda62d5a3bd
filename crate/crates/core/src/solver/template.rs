//! Black/white templates: the shapes an R-Steiner tree takes once its
//! degree-2 non-terminals are smoothed away.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::graph::{MultiGraph, NodeIx, TerminalSet};
use crate::tree::SteinerTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// A colored tree in canonical form. Vertices are numbered in the preorder
/// of the canonical rooting, so equal templates have equal fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Template {
    pub code: String,
    pub colors: Vec<Color>,
    pub edges: Vec<(usize, usize)>,
}

fn rooted_code(adj: &[Vec<usize>], colors: &[Color], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> =
        adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted_code(adj, colors, w, v)).collect();
    kids.sort();
    let c = if colors[v] == Color::Black { 'b' } else { 'w' };
    format!("{c}({})", kids.concat())
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

impl Template {
    /// Canonical form of a colored tree given by adjacency lists.
    pub fn canonical(adj: &[Vec<usize>], colors: &[Color]) -> Template {
        let (root, code) = centers(adj)
            .into_iter()
            .map(|c| (c, rooted_code(adj, colors, c, usize::MAX)))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("a tree has a center");
        // Renumber in preorder, children visited in code order.
        let mut order = Vec::with_capacity(adj.len());
        let mut new_edges = Vec::new();
        fn walk(
            adj: &[Vec<usize>],
            colors: &[Color],
            v: usize,
            parent: usize,
            order: &mut Vec<usize>,
            edges: &mut Vec<(usize, usize)>,
        ) {
            let me = order.len();
            order.push(v);
            let mut kids: Vec<(String, usize)> = adj[v]
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| (rooted_code(adj, colors, w, v), w))
                .collect();
            kids.sort();
            for (_, w) in kids {
                edges.push((me, order.len()));
                walk(adj, colors, w, v, order, edges);
            }
        }
        walk(adj, colors, root, usize::MAX, &mut order, &mut new_edges);
        Template { code, colors: order.iter().map(|&v| colors[v]).collect(), edges: new_edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn black_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c == Color::Black).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.colors.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Pendant templates have every black vertex as a leaf.
    pub fn is_pendant(&self) -> bool {
        let d = self.degrees();
        (0..self.colors.len()).all(|v| self.colors[v] == Color::White || d[v] <= 1)
    }

    fn is_valid(&self, r: usize) -> bool {
        let d = self.degrees();
        self.black_count() == r
            && (0..self.colors.len()).all(|v| match self.colors[v] {
                Color::Black => true,
                Color::White => d[v] >= 3,
            })
    }

    /// The template of an R-Steiner tree: terminals black, non-terminals of
    /// degree at least 3 white, degree-2 non-terminals smoothed away.
    pub fn of_tree(g: &MultiGraph, r: &TerminalSet, t: &SteinerTree) -> Template {
        let deg = t.degrees(g);
        let keep: Vec<NodeIx> = (0..g.node_count()).filter(|&v| r.contains(v) || deg[v] >= 3).collect();
        let pos: BTreeMap<NodeIx, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj: Vec<Vec<NodeIx>> = vec![Vec::new(); g.node_count()];
        for &e in t.edges() {
            let [a, b] = g.edge(e).ends;
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut tadj = vec![Vec::new(); keep.len()];
        for &s in &keep {
            for &first in &adj[s] {
                let (mut prev, mut cur) = (s, first);
                while !pos.contains_key(&cur) {
                    let next = adj[cur].iter().copied().find(|&w| w != prev).expect("smoothed vertex has degree 2");
                    prev = cur;
                    cur = next;
                }
                tadj[pos[&s]].push(pos[&cur]);
            }
        }
        let colors: Vec<Color> =
            keep.iter().map(|&v| if r.contains(v) { Color::Black } else { Color::White }).collect();
        Template::canonical(&tadj, &colors)
    }
}

/// All templates with exactly `r` black vertices, each once, sorted by code.
pub fn enumerate_templates(r: usize) -> Vec<Template> {
    assert!(r >= 2, "templates need at least two black vertices");
    // Leaves are black and whites have degree >= 3, so there are at most
    // r - 2 whites.
    let max_white = r - 2;
    let mut level: Vec<(Vec<Vec<usize>>, Vec<Color>)> =
        vec![(vec![vec![]], vec![Color::Black]), (vec![vec![]], vec![Color::White])];
    let mut out: HashSet<Template> = HashSet::new();
    for _ in 1..=r + max_white {
        let mut next = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        for (adj, colors) in &level {
            let t = Template::canonical(adj, colors);
            if t.is_valid(r) {
                out.insert(t);
            }
            let blacks = colors.iter().filter(|&&c| c == Color::Black).count();
            let whites = colors.len() - blacks;
            for v in 0..adj.len() {
                for c in [Color::Black, Color::White] {
                    if (c == Color::Black && blacks == r) || (c == Color::White && whites == max_white) {
                        continue;
                    }
                    let mut a2 = adj.clone();
                    let w = a2.len();
                    a2.push(vec![v]);
                    a2[v].push(w);
                    let mut c2 = colors.clone();
                    c2.push(c);
                    let code = Template::canonical(&a2, &c2).code;
                    if seen.insert(code) {
                        next.push((a2, c2));
                    }
                }
            }
        }
        level = next;
    }
    for (adj, colors) in &level {
        let t = Template::canonical(adj, colors);
        if t.is_valid(r) {
            out.insert(t);
        }
    }
    let mut v: Vec<Template> = out.into_iter().collect();
    v.sort();
    v
}
