//! Uniform random walk cost on a digraph that is not de Bruijn, three ways:
//! expectation sum, backward induction, and simulation.

use dbb::general::{
    general_backward_induction, general_value_table, path_counts, simulate_walk_costs,
};
use dbb::graph::{parse_digraph, VertexWeights};
use num_traits::ToPrimitive;
use rand::SeedableRng;

const GRAPH: &str = "\
# a 4-cycle with a chord and a self-loop
4
0 1
1 2
2 3
3 0
0 2
2 2
";

fn main() -> dbb::Result<()> {
    let g = parse_digraph(GRAPH)?;
    let c = VertexWeights::from_integers(&[4, 0, 1, 9]);
    let horizon = 6;
    let table = general_value_table(&g, &c, horizon)?;
    assert!(table.same_values(&general_backward_induction(&g, &c, horizon)?));
    for m in 0..4 {
        println!("u(0,{m}) = {}", table.get(0, m));
    }
    let counts = path_counts(&g, horizon);
    println!("walks of length {horizon} from 0: {}", counts.total_from(0));

    let mut rng = rand::rngs::StdRng::seed_from_u64(1);
    let est = simulate_walk_costs(&g, &c, 0, horizon, 50_000, &mut rng)?;
    println!(
        "simulated {:.4} +- {:.4} vs exact {:.4}",
        est.mean,
        est.std_error,
        table.get(0, 0).to_f64().unwrap_or(f64::NAN)
    );
    Ok(())
}
