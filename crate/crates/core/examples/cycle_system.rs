//! One equation per simple cycle plus the zero-sum rows pin down the balanced
//! weights uniquely on small graphs.

use dbb::balance::{balanced_weights, CycleConstraintSystem, RANK_VERTEX_CAP};
use dbb::cycles::enumerate_simple_cycles;
use dbb::graph::{DeBruijnGraph, VertexWeights};

fn main() -> dbb::Result<()> {
    for (n, d, c) in [
        (2, 1, vec![1, 5]),
        (2, 2, vec![0, 4, 0, 0]),
        (3, 1, vec![2, -1, 7]),
    ] {
        let g = DeBruijnGraph::new(n, d)?;
        let c = VertexWeights::from_integers(&c);
        let dg = g.to_digraph();
        let cycles = enumerate_simple_cycles(&dg, 10_000)?;
        let system = CycleConstraintSystem::build(&dg, &c, &cycles, 10_000)?;
        let solution = system.solve()?;
        let unique_is_balanced = solution.unique.as_ref() == Some(&balanced_weights(&g, &c)?);
        println!(
            "B({n},{d}): {} cycle rows, {} sum-zero rows, {} unknowns, rank {}, {} free after sum-zero, unique = balanced: {unique_is_balanced}",
            system.cycle_equations(),
            system.sum_zero_equations(),
            system.variable_count(),
            solution.rank,
            system.degrees_of_freedom(),
        );
    }
    println!("(exact elimination is limited to {RANK_VERTEX_CAP} vertices)");
    Ok(())
}
