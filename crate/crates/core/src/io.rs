//! JSON interchange documents.
//!
//! Emitters write keys in a fixed order, arrays in input order, pretty-printed
//! with LF line endings and a trailing newline.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::digraph::{Arborescence, DiGraph};
use crate::error::{Error, Result};
use crate::graph::{MultiGraph, TerminalSet};
use crate::tree::TreeFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDoc {
    pub id: String,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default)]
    pub directed: bool,
    pub nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arcs: Option<Vec<ArcDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminals: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDoc {
    pub edges: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub trees: Vec<TreeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArborescenceDoc {
    pub root: String,
    pub arcs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArborescenceFamilyDocument {
    pub arborescences: Vec<ArborescenceDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub subsets: Vec<Vec<String>>,
}

/// A parsed graph document. The terminal set is absent when the document
/// omits it; callers may supply one later.
#[derive(Debug, Clone)]
pub enum LoadedGraph {
    Undirected { graph: MultiGraph, terminals: Option<TerminalSet> },
    Directed { graph: DiGraph, terminals: Option<Vec<String>> },
}

impl LoadedGraph {
    pub fn into_undirected(self) -> Result<(MultiGraph, Option<TerminalSet>)> {
        match self {
            LoadedGraph::Undirected { graph, terminals } => Ok((graph, terminals)),
            LoadedGraph::Directed { .. } => Err(Error::WrongGraphKind { expected: "undirected" }),
        }
    }

    pub fn into_directed(self) -> Result<DiGraph> {
        match self {
            LoadedGraph::Directed { graph, .. } => Ok(graph),
            LoadedGraph::Undirected { .. } => Err(Error::WrongGraphKind { expected: "directed" }),
        }
    }

    /// Undirected graph plus a mandatory terminal set.
    pub fn into_instance(self) -> Result<(MultiGraph, TerminalSet)> {
        let (g, r) = self.into_undirected()?;
        Ok((g, r.ok_or(Error::MissingTerminals)?))
    }
}

/// Looks for a graph document at the top level, then under a `graph` key,
/// then under a `minor` key, so outputs that bundle a graph with other data
/// can be fed back in.
fn graph_value(v: Value) -> Value {
    match v {
        Value::Object(mut map) if !map.contains_key("nodes") => {
            map.remove("graph").or_else(|| map.remove("minor")).unwrap_or(Value::Object(map))
        }
        other => other,
    }
}

pub fn parse_graph(bytes: &[u8], allow_disconnected: bool) -> Result<LoadedGraph> {
    let value: Value = serde_json::from_slice(bytes)?;
    let doc: GraphDocument = serde_json::from_value(graph_value(value))?;
    graph_from_document(&doc, allow_disconnected)
}

pub fn graph_from_document(doc: &GraphDocument, allow_disconnected: bool) -> Result<LoadedGraph> {
    if doc.directed {
        if doc.edges.is_some() {
            return Err(Error::WrongGraphKind { expected: "undirected" });
        }
        let arcs = doc.arcs.clone().unwrap_or_default();
        let d = DiGraph::new(doc.nodes.clone(), arcs.into_iter().map(|a| (a.id, a.from, a.to)))?;
        if let Some(ts) = &doc.terminals {
            for t in ts {
                if d.node_ix(t).is_none() {
                    return Err(Error::UnknownVertex { item: "terminals".into(), vertex: t.clone() });
                }
            }
        }
        return Ok(LoadedGraph::Directed { graph: d, terminals: doc.terminals.clone() });
    }
    if doc.arcs.is_some() {
        return Err(Error::WrongGraphKind { expected: "directed" });
    }
    let edges = doc.edges.clone().unwrap_or_default();
    let g = MultiGraph::new(doc.nodes.clone(), edges.into_iter().map(|e| {
        let [a, b] = e.ends;
        (e.id, a, b)
    }))?;
    if !allow_disconnected {
        g.require_connected()?;
    }
    let terminals = match &doc.terminals {
        Some(ts) if !ts.is_empty() => Some(TerminalSet::new(&g, ts)?),
        _ => None,
    };
    Ok(LoadedGraph::Undirected { graph: g, terminals })
}

pub fn graph_document(g: &MultiGraph, r: Option<&TerminalSet>) -> GraphDocument {
    GraphDocument {
        directed: false,
        nodes: g.nodes().to_vec(),
        edges: Some(
            g.edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    ends: [g.node_id(e.ends[0]).to_string(), g.node_id(e.ends[1]).to_string()],
                })
                .collect(),
        ),
        arcs: None,
        terminals: r.map(|r| r.ids(g)),
    }
}

pub fn digraph_document(d: &DiGraph) -> GraphDocument {
    GraphDocument {
        directed: true,
        nodes: d.nodes().to_vec(),
        edges: None,
        arcs: Some(
            d.arcs()
                .iter()
                .map(|a| ArcDoc {
                    id: a.id.clone(),
                    from: d.node_id(a.from).to_string(),
                    to: d.node_id(a.to).to_string(),
                })
                .collect(),
        ),
        terminals: None,
    }
}

pub fn family_document(g: &MultiGraph, f: &TreeFamily) -> FamilyDocument {
    FamilyDocument {
        trees: f.id_lists(g).into_iter().map(|edges| TreeDoc { edges }).collect(),
    }
}

pub fn family_from_document(g: &MultiGraph, doc: &FamilyDocument) -> Result<TreeFamily> {
    let lists: Vec<Vec<String>> = doc.trees.iter().map(|t| t.edges.clone()).collect();
    TreeFamily::from_id_lists(g, &lists)
}

/// Accepts a family document either bare or under a `family` key.
pub fn parse_family(g: &MultiGraph, bytes: &[u8]) -> Result<TreeFamily> {
    let value: Value = serde_json::from_slice(bytes)?;
    let value = match value {
        Value::Object(mut map) if !map.contains_key("trees") && map.contains_key("family") => {
            map.remove("family").expect("checked above")
        }
        other => other,
    };
    let doc: FamilyDocument = serde_json::from_value(value)?;
    family_from_document(g, &doc)
}

pub fn arborescence_document(d: &DiGraph, arbs: &[Arborescence]) -> ArborescenceFamilyDocument {
    ArborescenceFamilyDocument {
        arborescences: arbs
            .iter()
            .map(|a| ArborescenceDoc { root: d.node_id(a.root()).to_string(), arcs: a.arc_ids(d) })
            .collect(),
    }
}

pub fn parse_arborescences(d: &DiGraph, bytes: &[u8]) -> Result<Vec<Arborescence>> {
    let value: Value = serde_json::from_slice(bytes)?;
    let value = match value {
        Value::Object(mut map) if !map.contains_key("arborescences") && map.contains_key("cisa") => {
            map.remove("cisa").expect("checked above")
        }
        other => other,
    };
    let doc: ArborescenceFamilyDocument = serde_json::from_value(value)?;
    doc.arborescences
        .iter()
        .enumerate()
        .map(|(i, a)| Arborescence::from_ids(d, &a.root, &a.arcs, i))
        .collect()
}

pub fn parse_partition(bytes: &[u8]) -> Result<PartitionDocument> {
    let value: Value = serde_json::from_slice(bytes)?;
    let value = match value {
        Value::Object(mut map) if !map.contains_key("subsets") => {
            match map.remove("certificate").or_else(|| map.remove("partition")) {
                Some(v) => v,
                None => match map.remove("blocks") {
                    Some(blocks) => serde_json::json!({ "subsets": blocks }),
                    None => Value::Object(map),
                },
            }
        }
        other => other,
    };
    Ok(serde_json::from_value(value)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialise");
    s.push('\n');
    s
}
