//! The value function solves a discrete Poisson equation on the stationary turns.

use dbb::balance::{discrete_laplacian, poisson_residual};
use dbb::graph::{DeBruijnGraph, VertexWeights};
use dbb::value::{solve_dpp, GameConfig};
use num_traits::Zero;

fn main() -> dbb::Result<()> {
    let g = DeBruijnGraph::new(3, 2)?;
    let c = VertexWeights::from_integers(&[2, 0, 9, -3, 1, 1, 4, 0, 6]);
    let horizon = 7;
    let cfg = GameConfig::new(g.clone(), c.clone(), horizon)?;
    let table = solve_dpp(&cfg);
    let mean = c.global_mean();
    for t in 0..horizon - g.word_length() {
        let lap = discrete_laplacian(&g, table.slice(t));
        let residual = poisson_residual(&cfg, &table, t)?;
        let lhs: Vec<String> = lap.iter().map(ToString::to_string).collect();
        println!("t={t} laplacian: {}", lhs.join(" "));
        println!(
            "     residual all zero: {}",
            residual.iter().all(|r| r.is_zero())
        );
    }
    let rhs: Vec<String> = c
        .as_slice()
        .iter()
        .map(|x| (x - &mean).to_string())
        .collect();
    println!("c - mean:    {}", rhs.join(" "));
    Ok(())
}
