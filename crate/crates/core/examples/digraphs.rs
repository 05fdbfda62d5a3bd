// Spanning arborescences: CISA partitions, the Hamiltonian construction
// and directed R-minors.

use cist::darbor::{
    check_cisa_partition, cisa_to_partition, contract_rcist_to_cisa, expand_cisa_to_rcist, ghouila_houri_cisa,
    oracle_max_cisa, partition_to_cisa, CisaPartition,
};
use cist::gen::{complete_graph, random_semidegree_digraph};
use cist::solver::{oracle_max_rcist, OracleOptions, TreeFilter};
use cist::verify::{verify_cisa, verify_rcist_structural};
use cist::{DiGraph, Result};

pub fn run() -> Result<()> {
    let d = DiGraph::complete(&["a", "b", "c", "d"]);
    let p = CisaPartition::new(&d, vec![vec![0, 1], vec![2, 3]])?;
    println!("{{a,b}} {{c,d}} is a CISA partition: {}", check_cisa_partition(&d, &p).valid);
    let arbs = partition_to_cisa(&d, &p)?;
    assert!(verify_cisa(&d, &arbs)?.valid);
    println!("back to blocks: {:?}", cisa_to_partition(&d, &arbs)?.document(&d).subsets);
    println!("max CISA in the complete digraph: {}", oracle_max_cisa(&d, false)?.len());

    let dense = random_semidegree_digraph(7, 5)?;
    if let Some(two) = ghouila_houri_cisa(&dense, false)? {
        assert!(verify_cisa(&dense, &two)?.valid);
        println!("Hamiltonian halves give {} arborescences", two.len());
    }

    let (g, r) = complete_graph(5, 3)?;
    let opts = OracleOptions { filter: TreeFilter::NonPendantOnly, ..Default::default() };
    let f = oracle_max_rcist(&g, &r, &opts)?.witness.expect("K5 has non-pendant trees");
    let (minor, cisa) = contract_rcist_to_cisa(&g, &r, &f)?;
    println!("minor blocks {:?}, CISA of size {}", minor.document(&g).blocks, cisa.len());
    let expanded = expand_cisa_to_rcist(&g, &r, &minor, &cisa)?;
    assert!(verify_rcist_structural(&g, &r, &expanded)?.valid);
    println!("expanded: {:?}", expanded.id_lists(&g));
    Ok(())
}

fn main() -> Result<()> {
    run()
}
