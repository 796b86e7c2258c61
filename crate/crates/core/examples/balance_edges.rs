//! Computes the balanced edge weights for c = (0,4,0,0) on B(2,2) and prints the report.

use dbb::balance::{stationary_weights, verify_stationarity, BalanceReport};
use dbb::cycles::enumerate_simple_cycles;
use dbb::graph::{DeBruijnGraph, VertexWeights};
use dbb::rational::Precision;
use dbb::value::{solve_dpp, GameConfig};

fn main() -> dbb::Result<()> {
    let g = DeBruijnGraph::new(2, 2)?;
    let c = VertexWeights::from_integers(&[0, 4, 0, 0]);

    let cfg = GameConfig::new(g.clone(), c.clone(), 8)?;
    let f = stationary_weights(&cfg)?;
    for ((u, w), x) in f.iter() {
        println!("f({} -> {}) = {x}", g.label(u), g.label(w));
    }
    let stationarity = verify_stationarity(&cfg, &solve_dpp(&cfg))?;
    println!(
        "stationary over {} turns: {}",
        stationarity.window, stationarity.stationary
    );

    let cycles = enumerate_simple_cycles(&g.to_digraph(), 1000)?;
    let (_, report) = BalanceReport::compute(&g, &c, Some(&cycles))?;
    print!("{}", report.to_text(Precision::Exact));
    Ok(())
}
