// Explicit constructions: bipartite R-IDSTs, minimal cuts, dominating
// partitions and the linkage host graph.

use cist::construct::{
    bipartite_max_ridst, linkage_host_graph, min_cut_pendant_cist, partition_to_trees, trees_to_partition,
};
use cist::solver::find_dominating_family;
use cist::verify::{verify_rcist_structural, verify_ridst};
use cist::{MultiGraph, Result, TerminalSet};

pub fn run() -> Result<()> {
    let b = bipartite_max_ridst(3, 4, 2, 2)?;
    assert!(verify_ridst(&b.graph, &b.terminals, &b.family)?.valid);
    println!("K_3,4 with 2 + 2 terminals: {} R-IDSTs", b.family.len());

    // R = {x, y} separates a, b and c
    let g = MultiGraph::new(
        ["x", "y", "a", "b", "c"],
        [("ax", "a", "x"), ("ay", "a", "y"), ("bx", "b", "x"), ("by", "b", "y"), ("cx", "c", "x"), ("cy", "c", "y")],
    )?;
    let r = TerminalSet::new(&g, &["x", "y"])?;
    let f = min_cut_pendant_cist(&g, &r)?;
    println!("minimal cut: {:?}", f.id_lists(&g));

    if let Some(cert) = find_dominating_family(&g, &r, 2)? {
        let trees = partition_to_trees(&g, &r, &cert)?;
        assert!(verify_rcist_structural(&g, &r, &trees)?.valid);
        let again = trees_to_partition(&g, &r, &trees)?;
        println!("partition {:?} -> {:?}", cert.document(&g).subsets, again.document(&g).subsets);
    }

    let h = linkage_host_graph(2, 1, 3)?;
    let s = h.summary();
    println!("host graph: {} edges, {} pendant + {} non-pendant, needs connectivity {}", s.edges, s.pendant, s.non_pendant, s.required_kappa);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
