// Deterministic instance documents, written as JSON.

use cist::gen::{generate, Family, GenParams};
use cist::io::{parse_graph, to_json};
use cist::Result;

pub fn run() -> Result<()> {
    let cases = [
        (Family::Hi, GenParams { i: Some(3), ..Default::default() }),
        (Family::Kpq, GenParams { p: Some(3), q: Some(4), ra: Some(2), rb: Some(2), ..Default::default() }),
        (Family::Host, GenParams { p: Some(1), q: Some(1), r: Some(3), ..Default::default() }),
        (Family::RandomPlanar, GenParams { n: Some(6), ..Default::default() }),
        (Family::RandomDigraph, GenParams { n: Some(5), density: Some(0.5), ..Default::default() }),
    ];
    for (family, params) in cases {
        let doc = generate(family, &params, 7)?;
        let text = to_json(&doc);
        assert_eq!(text, to_json(&generate(family, &params, 7)?));
        parse_graph(text.as_bytes(), false)?;
        let size = doc.edges.as_ref().map_or(0, Vec::len) + doc.arcs.as_ref().map_or(0, Vec::len);
        println!("{family:?}: {} vertices, {size} edges or arcs", doc.nodes.len());
    }
    print!("{}", to_json(&generate(Family::Hi, &GenParams { i: Some(1), ..Default::default() }, 0)?));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
