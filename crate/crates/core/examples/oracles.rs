// Brute-force maxima on small families: complete graphs and H_i.

use cist::gen::{complete_graph, h_graph};
use cist::solver::{oracle_max, OracleNotion, OracleOptions};
use cist::Result;

pub fn run() -> Result<()> {
    let opts = OracleOptions::default();
    println!("max R-CIST in K_n with |R| = r:");
    for n in 2..=5 {
        let row = (2..=n)
            .map(|r| {
                let (g, t) = complete_graph(n, r)?;
                Ok(oracle_max(&g, &t, OracleNotion::Rcist, &opts)?.size.to_string())
            })
            .collect::<Result<Vec<_>>>()?;
        println!("  n = {n}: {}", row.join(" "));
    }
    for i in 1..=3 {
        let (g, r) = h_graph(i)?;
        let cist = oracle_max(&g, &r, OracleNotion::Rcist, &opts)?;
        let dst = oracle_max(&g, &r, OracleNotion::Rdst, &opts)?;
        println!("H_{i}: R-CIST {} / R-DST {} over {} Steiner trees", cist.size, dst.size, dst.trees);
    }
    Ok(())
}

fn main() -> Result<()> {
    run()
}
