//! Solves the game by backward induction and checks it against the closed form.
//!
//! `cargo run --example solve_game -- 3 2 7` solves B(3,2) with T = 7.

use dbb::graph::{DeBruijnGraph, DirectedGraph, VertexWeights};
use dbb::rational::ratio;
use dbb::value::{optimal_edge_weights, solve_dpp, value_closed_form, GameConfig};

fn main() -> dbb::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, d, horizon) = match args[..] {
        [n, d, t] => (n, d, t),
        _ => (2, 2, 5),
    };
    let g = DeBruijnGraph::new(n, d)?;
    let c = VertexWeights::new(
        (0..g.vertex_count())
            .map(|m| ratio((m * m % 7) as i64, 1 + (m % 3) as i64))
            .collect(),
    );
    let cfg = GameConfig::new(g.clone(), c, horizon)?;
    let table = solve_dpp(&cfg);
    for t in 0..=horizon {
        let row: Vec<String> = table.slice(t).iter().map(ToString::to_string).collect();
        println!("t={t}: {}", row.join("  "));
    }
    for t in 0..=horizon {
        for m in 0..g.vertex_count() {
            assert_eq!(&value_closed_form(&cfg, t, m)?, table.get(t, m));
        }
    }
    println!("closed form agrees on every entry");
    if horizon > 0 {
        let f = optimal_edge_weights(&cfg, &table, 0, 0)?;
        let f: Vec<String> = f.iter().map(ToString::to_string).collect();
        println!(
            "equalizing weights out of {} at t=0: {}",
            g.label(0),
            f.join(" ")
        );
    }
    Ok(())
}
