//! The game on an arbitrary sink-free digraph. Under optimal play the token
//! moves like a uniform random walk, so the value is a sum of expected
//! vertex costs along that walk.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Digraph, DirectedGraph, VertexWeights};
use crate::rational::{int, Rational};
use crate::value::{GameVariant, ValueTable};

/// Uniform transition rule over out-neighbours.
#[derive(Clone, Debug)]
pub struct WalkDistribution<'g> {
    g: &'g Digraph,
}

impl<'g> WalkDistribution<'g> {
    pub fn new(g: &'g Digraph) -> Result<Self> {
        g.ensure_sink_free()?;
        Ok(Self { g })
    }

    /// `(P h)(m) = (1/|N(m)|) sum_{j in N(m)} h(j)`.
    pub fn apply(&self, h: &[Rational]) -> Vec<Rational> {
        self.g
            .adjacency()
            .iter()
            .map(|succ| {
                let total: Rational = succ.iter().map(|&j| h[j].clone()).sum();
                total / int(succ.len() as i64)
            })
            .collect()
    }

    /// Row `m` of the transition operator as `(target, probability)` pairs.
    pub fn row(&self, m: usize) -> Vec<(usize, Rational)> {
        let succ = &self.g.adjacency()[m];
        let p = Rational::new(1.into(), (succ.len() as i64).into());
        succ.iter().map(|&j| (j, p.clone())).collect()
    }
}

/// `E[C_{k, m}]` for every `m`: the expected weight of the vertex reached
/// after `k` uniform steps.
pub fn expected_step_costs(g: &Digraph, c: &VertexWeights, k: usize) -> Result<Vec<Rational>> {
    c.check_len(g.vertex_count())?;
    let walk = WalkDistribution::new(g)?;
    let mut h = c.as_slice().to_vec();
    for _ in 0..k {
        h = walk.apply(&h);
    }
    Ok(h)
}

pub fn expected_step_cost(g: &Digraph, c: &VertexWeights, k: usize, m: usize) -> Result<Rational> {
    check_vertex(g, m)?;
    Ok(expected_step_costs(g, c, k)?.swap_remove(m))
}

fn check_vertex(g: &Digraph, m: usize) -> Result<()> {
    if m >= g.vertex_count() {
        return Err(Error::Domain(format!(
            "vertex {m} out of range 0..{}",
            g.vertex_count()
        )));
    }
    Ok(())
}

fn check_turn(horizon: usize, t: usize) -> Result<()> {
    if t > horizon {
        return Err(Error::Domain(format!("turn {t} beyond horizon {horizon}")));
    }
    Ok(())
}

/// `u(t, m) = sum_{s=t}^{T} E[C_{T-s, m}]` for every `(t, m)`, from the
/// expectation formula.
pub fn general_value_table(g: &Digraph, c: &VertexWeights, horizon: usize) -> Result<ValueTable> {
    c.check_len(g.vertex_count())?;
    let walk = WalkDistribution::new(g)?;
    let mut step = c.as_slice().to_vec();
    let mut running = step.clone();
    let mut slices = vec![running.clone()];
    // slices[j] holds u(T - j, .)
    for _ in 0..horizon {
        step = walk.apply(&step);
        running = running.iter().zip(&step).map(|(a, b)| a + b).collect();
        slices.push(running.clone());
    }
    slices.reverse();
    Ok(ValueTable::from_slices(slices, GameVariant::UniformWalk))
}

pub fn general_value(
    g: &Digraph,
    c: &VertexWeights,
    horizon: usize,
    t: usize,
    m: usize,
) -> Result<Rational> {
    check_turn(horizon, t)?;
    check_vertex(g, m)?;
    Ok(general_value_table(g, c, horizon)?.get(t, m).clone())
}

/// Backward induction `u(t, m) = c(m) + (1/|N(m)|) sum_j u(t+1, j)`.
pub fn general_backward_induction(
    g: &Digraph,
    c: &VertexWeights,
    horizon: usize,
) -> Result<ValueTable> {
    c.check_len(g.vertex_count())?;
    let walk = WalkDistribution::new(g)?;
    let mut slices = vec![Vec::new(); horizon + 1];
    slices[horizon] = c.as_slice().to_vec();
    for t in (0..horizon).rev() {
        let ahead = walk.apply(&slices[t + 1]);
        slices[t] = c.as_slice().iter().zip(ahead).map(|(a, b)| a + b).collect();
    }
    Ok(ValueTable::from_slices(slices, GameVariant::UniformWalk))
}

/// `z(j, m, k)`: number of length-`k` walks from `m` to `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCountTable {
    steps: usize,
    vertex_count: usize,
    /// row-major by start vertex: counts[m * N + j]
    counts: Vec<BigUint>,
}

impl PathCountTable {
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn count(&self, to: usize, from: usize) -> &BigUint {
        &self.counts[from * self.vertex_count + to]
    }

    /// Number of length-`k` walks leaving `from`.
    pub fn total_from(&self, from: usize) -> BigUint {
        self.counts[from * self.vertex_count..(from + 1) * self.vertex_count]
            .iter()
            .sum()
    }
}

/// Walk counts via `k` applications of the adjacency operator:
/// `z(j, m, k) = sum_{i in N(m)} z(j, i, k - 1)`.
pub fn path_counts(g: &Digraph, k: usize) -> PathCountTable {
    let n = g.vertex_count();
    let mut counts = vec![BigUint::zero(); n * n];
    for m in 0..n {
        counts[m * n + m] = BigUint::from(1u32);
    }
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n * n];
        for (m, succ) in g.adjacency().iter().enumerate() {
            for &i in succ {
                for j in 0..n {
                    let z = &counts[i * n + j];
                    if !z.is_zero() {
                        next[m * n + j] += z;
                    }
                }
            }
        }
        counts = next;
    }
    PathCountTable {
        steps: k,
        vertex_count: n,
        counts,
    }
}

/// `u(t, m) = sum_{s=t}^{T} k^-(T-s) sum_j c(j) z(j, m, T-s)` on an
/// out-`k`-regular digraph.
pub fn k_regular_value(
    g: &Digraph,
    c: &VertexWeights,
    horizon: usize,
    t: usize,
    m: usize,
) -> Result<Rational> {
    check_turn(horizon, t)?;
    check_vertex(g, m)?;
    c.check_len(g.vertex_count())?;
    let degree = g.regular_degree()?;
    if degree == 0 {
        return Err(Error::Sink { vertex: 0 });
    }
    let mut total = Rational::zero();
    for s in t..=horizon {
        let steps = horizon - s;
        let z = path_counts(g, steps);
        let weighted: Rational = (0..g.vertex_count())
            .map(|j| &c[j] * Rational::from_integer(z.count(j, m).clone().into()))
            .sum();
        let walks = Rational::from_integer(num_bigint::BigInt::from(degree).pow(steps as u32));
        total += weighted / walks;
    }
    Ok(total)
}

/// [`k_regular_value`] for every `(t, m)`, sharing the walk counts.
pub fn k_regular_value_table(g: &Digraph, c: &VertexWeights, horizon: usize) -> Result<ValueTable> {
    c.check_len(g.vertex_count())?;
    let degree = g.regular_degree()?;
    if degree == 0 {
        return Err(Error::Sink { vertex: 0 });
    }
    let n = g.vertex_count();
    // by_steps[k][m] = k^-k sum_j c(j) z(j, m, k)
    let by_steps: Vec<Vec<Rational>> = (0..=horizon)
        .map(|k| {
            let z = path_counts(g, k);
            let walks = Rational::from_integer(num_bigint::BigInt::from(degree).pow(k as u32));
            (0..n)
                .map(|m| {
                    let weighted: Rational = (0..n)
                        .map(|j| &c[j] * Rational::from_integer(z.count(j, m).clone().into()))
                        .sum();
                    weighted / &walks
                })
                .collect()
        })
        .collect();
    let slices = (0..=horizon)
        .map(|t| {
            (0..n)
                .map(|m| (0..=horizon - t).map(|k| by_steps[k][m].clone()).sum())
                .collect()
        })
        .collect();
    Ok(ValueTable::from_slices(slices, GameVariant::UniformWalk))
}

/// Sample mean and standard error of simulated walk costs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub episodes: usize,
}

/// Simulates `episodes` uniform walks of `steps` moves from `start`, summing
/// every visited vertex weight (start and end included).
pub fn simulate_walk_costs<R: Rng + ?Sized>(
    g: &Digraph,
    c: &VertexWeights,
    start: usize,
    steps: usize,
    episodes: usize,
    rng: &mut R,
) -> Result<MonteCarloEstimate> {
    g.ensure_sink_free()?;
    check_vertex(g, start)?;
    c.check_len(g.vertex_count())?;
    if episodes < 2 {
        return Err(Error::Domain("need at least two episodes".into()));
    }
    let weights: Vec<f64> = c
        .as_slice()
        .iter()
        .map(|q| q.to_f64().unwrap_or(f64::NAN))
        .collect();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..episodes {
        let mut v = start;
        let mut cost = weights[v];
        for _ in 0..steps {
            let succ = &g.adjacency()[v];
            v = succ[rng.gen_range(0..succ.len())];
            cost += weights[v];
        }
        sum += cost;
        sum_sq += cost * cost;
    }
    let count = episodes as f64;
    let mean = sum / count;
    let variance = (sum_sq - count * mean * mean) / (count - 1.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (variance.max(0.0) / count).sqrt(),
        episodes,
    })
}
