//! Swapping who picks the weights, on some or all turns, does not change the value.
//! A randomising mover facing the equalizing weights pays the same.

use dbb::graph::{DeBruijnGraph, VertexWeights};
use dbb::rational::ratio;
use dbb::value::{
    expected_cost_under_strategy, solve_dpp, solve_maxmin, solve_mixed, CarolStrategy, GameConfig,
    TurnSet,
};

fn main() -> dbb::Result<()> {
    let g = DeBruijnGraph::new(3, 2)?;
    let c = VertexWeights::from_integers(&[5, -2, 0, 1, 7, 3, -4, 2, 0]);
    let cfg = GameConfig::new(g, c, 6)?;
    let base = solve_dpp(&cfg);

    let maxmin = solve_maxmin(&cfg)?;
    println!("maxmin equals minmax: {}", maxmin.same_values(&base));
    for list in ["0,2,4", "1,5", "", "0,1,2,3,4,5"] {
        let turns = TurnSet::parse(6, list)?;
        let mixed = solve_mixed(&cfg, &turns)?;
        println!(
            "mixed with Paul on {{{list}}}: equal = {}",
            mixed.same_values(&base)
        );
    }

    let strategy = CarolStrategy::constant(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)])?;
    let cost = expected_cost_under_strategy(&cfg, &base, &strategy, 0, 4)?;
    println!("v(0,11) = {}, randomised mover pays {cost}", base.get(0, 4));
    Ok(())
}
