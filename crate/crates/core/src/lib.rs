//! Balanced edge weights on doubly weighted de Bruijn graphs.
//!
//! Given vertex weights `c` on `B(n, d)`, a repeated two-player zero-sum game
//! produces edge weights `f` that sum to zero out of every vertex and make
//! every directed cycle's mean weight equal to the average vertex weight.
//!
//! - [`graph`]: `B(n, d)`, general digraphs, walk and cycle weights, text formats.
//! - [`value`]: backward induction, the explicit value formula, the swapped
//!   and mixed-role games, randomised mover strategies.
//! - [`balance`]: the stationary edge weights, the Poisson identity, and the
//!   cycle-constraint linear system.
//! - [`cycles`]: simple-cycle enumeration and exact min/max mean cycles.
//! - [`general`]: the uniform-walk value on arbitrary sink-free digraphs.
//! - [`cli`]: the `dbb` command line.
//!
//! ```
//! use dbb::{balance::balanced_weights, cycles::verify_equal_means, graph::*};
//!
//! let g = DeBruijnGraph::new(2, 2)?;
//! let c = VertexWeights::from_integers(&[0, 4, 0, 0]);
//! let f = balanced_weights(&g, &c)?;
//! let report = verify_equal_means(&g.to_digraph(), &c, &f, 1000)?;
//! assert!(report.all_equal);
//! assert_eq!(report.min_mean, dbb::rational::int(1));
//! # Ok::<(), dbb::Error>(())
//! ```

pub mod balance;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod general;
pub mod graph;
pub mod rational;
pub mod value;

pub use error::{Error, Result};
pub use rational::Rational;
