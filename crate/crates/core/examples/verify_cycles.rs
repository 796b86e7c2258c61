//! Every simple cycle has the same mean under the balanced weights; a single
//! bumped edge breaks that and the report names a cycle through it.

use dbb::balance::{balanced_weights, EdgeWeightAssignment};
use dbb::cycles::{
    edge_cost_projection, max_mean_cycle, min_mean_cycle, verify_equal_means, DEFAULT_CYCLE_CAP,
};
use dbb::graph::{DeBruijnGraph, VertexWeights};
use dbb::rational::{ratio, Precision};

fn main() -> dbb::Result<()> {
    let g = DeBruijnGraph::new(2, 3)?;
    let dg = g.to_digraph();
    let c = VertexWeights::from_integers(&[3, -1, 0, 4, 2, -5, 1, 0]);
    let f = balanced_weights(&g, &c)?;
    let report = verify_equal_means(&dg, &c, &f, DEFAULT_CYCLE_CAP)?;
    print!("{}", report.to_text(Precision::Exact));

    let mut bumped = f.clone();
    bumped.set(5, 3, f.weight(5, 3)? + ratio(1, 2));
    let broken = verify_equal_means(&dg, &c, &bumped, DEFAULT_CYCLE_CAP)?;
    println!("\nafter bumping 101 -> 011:");
    print!("{}", broken.to_text(Precision::Decimal(4)));

    let zero = EdgeWeightAssignment::zero(&g);
    let costs = edge_cost_projection(&dg, &c, &zero)?;
    println!(
        "\nwith f = 0 the cycle means range over [{}, {}]",
        min_mean_cycle(&dg, &costs)?,
        max_mean_cycle(&dg, &costs)?
    );
    Ok(())
}
