//! Builds B(2,3), prints each vertex with its successors, and writes the edge list.

use dbb::graph::{serialize_digraph, DeBruijnGraph, DirectedGraph};

fn main() -> dbb::Result<()> {
    let g = DeBruijnGraph::new(2, 3)?;
    for m in 0..g.vertex_count() {
        let succ: Vec<String> = g.successors(m).into_iter().map(|w| g.label(w)).collect();
        println!("{} -> {}", g.label(m), succ.join(" "));
    }
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    print!("{}", serialize_digraph(&g));
    Ok(())
}
