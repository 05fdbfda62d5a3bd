// Graph rewrites that keep the maximum R-CIST size, and the maps that carry
// families across them.

use cist::gen::random_multigraph;
use cist::solver::{oracle_max_rcist, OracleOptions};
use cist::transform::{lift_family, project_family, simp, tilde_gr};
use cist::verify::verify_rcist_structural;
use cist::Result;

pub fn run() -> Result<()> {
    let (g, r) = random_multigraph(5, 3, 3, 11)?;
    let opts = OracleOptions::default();
    let before = oracle_max_rcist(&g, &r, &opts)?;
    println!("G: {} vertices, {} edges, max R-CIST {}", g.node_count(), g.edge_count(), before.size);

    let t = tilde_gr(&g, &r)?;
    println!("tilde: {} vertices, max {}", t.graph.node_count(), oracle_max_rcist(&t.graph, &t.terminals, &opts)?.size);
    let s = simp(&g, &r)?;
    println!("simp:  {} vertices, max {}", s.graph.node_count(), oracle_max_rcist(&s.graph, &s.terminals, &opts)?.size);

    if let Some(f) = before.witness {
        let lifted = lift_family(&t.trace, &g, &t.graph, &f)?;
        assert!(verify_rcist_structural(&t.graph, &t.terminals, &lifted)?.valid);
        let back = project_family(&t.trace, &g, &t.graph, &lifted)?;
        assert!(verify_rcist_structural(&g, &r, &back)?.valid);
        println!("lifted and projected a family of {} trees", back.len());
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
