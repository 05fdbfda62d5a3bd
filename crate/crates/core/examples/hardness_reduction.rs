// R-DST to R-CIST reduction with both solution maps.

use cist::gen::h_graph;
use cist::io::{graph_document, to_json};
use cist::solver::{oracle_max, OracleNotion, OracleOptions};
use cist::transform::{hardness_reduce, map_cist_to_dst, map_dst_to_cist};
use cist::verify::{verify_rcist_structural, verify_rdst};
use cist::Result;

pub fn run() -> Result<()> {
    let (g, r) = h_graph(2)?;
    let reduced = hardness_reduce(&g, &r)?;
    let (h, rh) = (&reduced.graph, &reduced.terminals);
    println!("{} -> {} vertices, {} -> {} edges", g.node_count(), h.node_count(), g.edge_count(), h.edge_count());

    let opts = OracleOptions::default();
    let dst = oracle_max(&g, &r, OracleNotion::Rdst, &opts)?;
    let cist = oracle_max(h, rh, OracleNotion::Rcist, &opts)?;
    println!("max R-DST in G: {}, max R-CIST in the reduction: {}", dst.size, cist.size);

    let forward = map_dst_to_cist(&reduced.trace, &dst.witness.expect("H_2 has an R-DST"))?;
    assert!(verify_rcist_structural(h, rh, &forward)?.valid);
    let backward = map_cist_to_dst(&reduced.trace, &forward)?;
    assert!(verify_rdst(&g, &r, &backward)?.valid);
    println!("mapped {} trees forward and back", backward.len());
    print!("{}", to_json(&graph_document(h, Some(rh))));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
