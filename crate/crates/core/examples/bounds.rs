// Upper bounds on R-CIST size and a small falsification sweep.

use cist::bounds::{check_all, connectivity_bound, exact_treewidth, sweep, SweepClass};
use cist::gen::complete_graph;
use cist::solver::{oracle_max_rcist, OracleOptions};
use cist::Result;

pub fn run() -> Result<()> {
    let (g, r) = complete_graph(4, 3)?;
    println!("K4: treewidth {}", exact_treewidth(&g)?);
    let f = oracle_max_rcist(&g, &r, &OracleOptions::default())?.witness.expect("K4 has an R-CIST");
    for b in check_all(&g, &r, &f)? {
        println!("  {:<22} asserted {:?} observed {} -> {:?}", b.bound, b.asserted, b.observed, b.verdict);
    }

    let planar = sweep(SweepClass::Planar, 5, true, true)?;
    println!("planar n <= 5: {} instances, {} violations, best {:?}", planar.instances, planar.violations.len(), planar.best);
    let tw2 = sweep(SweepClass::Tw2, 5, false, true)?;
    println!("treewidth 2, n <= 5: {} instances, {} violations", tw2.instances, tw2.violations.len());
    println!("host-linkage connectivity for p = 2, q = 1, r = 3: {}", connectivity_bound(2, 1, 3)?);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
