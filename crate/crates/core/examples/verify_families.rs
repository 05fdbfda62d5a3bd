// Checks one family of trees against the disjointness notions.
//
// H_2 has two parallel u-x edges and two parallel x-v edges. The two u-v
// paths are edge-disjoint but share the interior vertex x, so they form an
// R-DST and not an R-CIST.

use cist::gen::h_graph;
use cist::verify::{verify_rcist_definitional, verify_rcist_structural, verify_rdst, verify_ridst};
use cist::{Result, TreeFamily};

pub fn run() -> Result<()> {
    let (g, r) = h_graph(2)?;
    let paths = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"], vec!["ux2", "xv2"]])?;

    let structural = verify_rcist_structural(&g, &r, &paths)?;
    let definitional = verify_rcist_definitional(&g, &r, &paths)?;
    assert_eq!(structural.valid, definitional.valid);
    println!("R-CIST: {} ({:?})", structural.valid, structural.witness);
    println!("R-DST:  {}", verify_rdst(&g, &r, &paths)?.valid);
    println!("R-IDST: {}", verify_ridst(&g, &r, &paths)?.valid);

    let single = TreeFamily::from_id_lists(&g, &[vec!["ux1", "xv1"]])?;
    println!("one path alone is an R-CIST: {}", verify_rcist_structural(&g, &r, &single)?.valid);
    Ok(())
}

fn main() -> Result<()> {
    run()
}
