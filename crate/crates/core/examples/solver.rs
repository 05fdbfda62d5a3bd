// The template solver for fixed |R| and k, checked against the oracle.

use cist::gen::complete_graph;
use cist::solver::{enumerate_templates, oracle_max_rcist, solve_rcist, OracleOptions, SolveOptions, TreeFilter};
use cist::verify::verify_rcist_structural;
use cist::Result;

pub fn run() -> Result<()> {
    let pendant = enumerate_templates(6).into_iter().filter(|t| t.is_pendant()).count();
    println!("pendant templates on 6 terminals: {pendant}");

    let (g, r) = complete_graph(5, 3)?;
    let best = oracle_max_rcist(&g, &r, &OracleOptions::default())?.size;
    let opts = SolveOptions { sequential: true, ..Default::default() };
    for k in 1..=best + 1 {
        match solve_rcist(&g, &r, k, &opts)? {
            Some(f) => {
                assert!(verify_rcist_structural(&g, &r, &f)?.valid);
                println!("K5, |R| = 3, k = {k}: {:?}", f.id_lists(&g));
            }
            None => println!("K5, |R| = 3, k = {k}: none (oracle maximum {best})"),
        }
    }

    let np = SolveOptions { filter: TreeFilter::NonPendantOnly, ..opts };
    let found = solve_rcist(&g, &r, 2, &np)?;
    println!("two non-pendant trees: {}", found.is_some());
    Ok(())
}

fn main() -> Result<()> {
    run()
}
