//! Verification oracles: exhaustive simple-cycle enumeration and exact
//! minimum/maximum mean cycles.
//!
//! Each vertex weight is pushed onto the vertex's outgoing edges, so the sum
//! of projected edge costs around a cycle is the doubly weighted cycle weight.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::balance::EdgeWeightAssignment;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Digraph, DirectedGraph, VertexWeights};
use crate::rational::{format_rational, int, Precision, Rational};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A cycle handed to a visitor: its vertices starting at the smallest one, and
/// the flat edge ids of each step including the closing edge.
#[derive(Clone, Copy, Debug)]
pub struct CycleRef<'a> {
    pub vertices: &'a [usize],
    pub edges: &'a [usize],
}

/// Flat edge numbering: edges sorted by `(src, dst)`.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    offsets: Vec<usize>,
}

impl EdgeIndex {
    pub fn new(g: &Digraph) -> Self {
        let mut offsets = Vec::with_capacity(g.vertex_count() + 1);
        let mut total = 0;
        offsets.push(0);
        for succ in g.adjacency() {
            total += succ.len();
            offsets.push(total);
        }
        Self { offsets }
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn id(&self, g: &Digraph, from: usize, to: usize) -> Option<usize> {
        let pos = g.adjacency().get(from)?.binary_search(&to).ok()?;
        Some(self.offsets[from] + pos)
    }
}

struct Johnson<'g, F> {
    g: &'g Digraph,
    index: EdgeIndex,
    start: usize,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    visit: F,
}

impl<F: FnMut(CycleRef<'_>) -> ControlFlow<()>> Johnson<'_, F> {
    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                pending.append(&mut self.blocked_by[u]);
            }
        }
    }

    /// Returns whether a cycle through `v` was found, or `Break` to stop.
    fn circuit(&mut self, v: usize) -> ControlFlow<(), bool> {
        let mut found = false;
        self.vertices.push(v);
        self.blocked[v] = true;
        let g = self.g;
        for (pos, &w) in g.adjacency()[v].iter().enumerate() {
            if w < self.start {
                continue;
            }
            self.edges.push(self.index.offsets[v] + pos);
            if w == self.start {
                found = true;
                (self.visit)(CycleRef {
                    vertices: &self.vertices,
                    edges: &self.edges,
                })?;
            } else if !self.blocked[w] && self.circuit(w)? {
                found = true;
            }
            self.edges.pop();
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &g.adjacency()[v] {
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.vertices.pop();
        ControlFlow::Continue(found)
    }
}

/// Streams every simple cycle exactly once, in canonical rotation and
/// lexicographic order, using Johnson's blocking search rooted at each
/// vertex in turn over the vertices not smaller than it. The visitor may
/// return `Break` to stop early; the return value says whether it did.
pub fn for_each_simple_cycle<F>(g: &Digraph, visit: F) -> ControlFlow<()>
where
    F: FnMut(CycleRef<'_>) -> ControlFlow<()>,
{
    let n = g.vertex_count();
    let mut search = Johnson {
        g,
        index: EdgeIndex::new(g),
        start: 0,
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        vertices: Vec::new(),
        edges: Vec::new(),
        visit,
    };
    for s in 0..n {
        search.start = s;
        for v in s..n {
            search.blocked[v] = false;
            search.blocked_by[v].clear();
        }
        search.circuit(s)?;
    }
    ControlFlow::Continue(())
}

/// Collects all simple cycles. Errors rather than truncating when more than
/// `cap` cycles exist.
pub fn enumerate_simple_cycles(g: &Digraph, cap: usize) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let flow = for_each_simple_cycle(g, |c| {
        if out.len() == cap {
            return ControlFlow::Break(());
        }
        out.push(Cycle::canonical(c.vertices.to_vec()));
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(Error::Capacity {
            what: "simple cycles",
            count: cap as u128 + 1,
            cap: cap as u128,
        });
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// Per-edge costs aligned with the flat [`EdgeIndex`] numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCosts {
    costs: Vec<Rational>,
}

impl EdgeCosts {
    pub fn new(costs: Vec<Rational>) -> Self {
        Self { costs }
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.costs
    }

    pub fn get(&self, g: &Digraph, from: usize, to: usize) -> Option<&Rational> {
        EdgeIndex::new(g).id(g, from, to).map(|i| &self.costs[i])
    }

    pub fn negated(&self) -> Self {
        Self {
            costs: self.costs.iter().map(|c| -c).collect(),
        }
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        Self {
            costs: self.costs.iter().map(|c| c + by).collect(),
        }
    }

    pub fn cycle_sum(&self, edges: &[usize]) -> Rational {
        edges.iter().map(|&e| self.costs[e].clone()).sum()
    }
}

/// `cost(u -> w) = c(u) + f(u -> w)`.
pub fn edge_cost_projection(
    g: &Digraph,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
) -> Result<EdgeCosts> {
    c.check_len(g.vertex_count())?;
    let mut costs = Vec::with_capacity(g.edge_count());
    for (u, w) in g.edges() {
        costs.push(&c[u] + f.weight(u, w)?);
    }
    Ok(EdgeCosts { costs })
}

/// Scales rationals by their common denominator.
fn common_scale(values: &[Rational]) -> (BigInt, Vec<BigInt>) {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled = values
        .iter()
        .map(|q| q.numer() * (&lcm / q.denom()))
        .collect();
    (lcm, scaled)
}

/// Karp's dynamic program for the minimum cycle mean, on exact values.
/// Walk lengths start from every vertex at once, so graphs that are not
/// strongly connected are handled.
pub fn min_mean_cycle(g: &Digraph, costs: &EdgeCosts) -> Result<Rational> {
    let n = g.vertex_count();
    if costs.costs.len() != g.edge_count() {
        return Err(Error::Structure(format!(
            "{} edge costs for {} edges",
            costs.costs.len(),
            g.edge_count()
        )));
    }
    let (scale, w) = common_scale(&costs.costs);
    // best[k][v]: cheapest k-edge walk ending at v
    let mut best: Vec<Vec<Option<BigInt>>> = vec![vec![Some(BigInt::zero()); n]];
    for k in 1..=n {
        let prev = &best[k - 1];
        let mut row: Vec<Option<BigInt>> = vec![None; n];
        let mut e = 0;
        for (u, succ) in g.adjacency().iter().enumerate() {
            for &v in succ {
                if let Some(base) = &prev[u] {
                    let cand = base + &w[e];
                    if row[v].as_ref().is_none_or(|cur| &cand < cur) {
                        row[v] = Some(cand);
                    }
                }
                e += 1;
            }
        }
        best.push(row);
    }
    let mut answer: Option<BigRational> = None;
    for v in 0..n {
        let Some(full) = &best[n][v] else { continue };
        let mut worst: Option<BigRational> = None;
        for (k, row) in best.iter().enumerate().take(n) {
            if let Some(part) = &row[v] {
                let ratio = BigRational::new(full - part, BigInt::from(n - k));
                if worst.as_ref().is_none_or(|x| &ratio > x) {
                    worst = Some(ratio);
                }
            }
        }
        if let Some(x) = worst {
            if answer.as_ref().is_none_or(|a| &x < a) {
                answer = Some(x);
            }
        }
    }
    answer
        .map(|a| a / Rational::from_integer(scale))
        .ok_or_else(|| Error::Structure("graph has no directed cycle".into()))
}

/// Maximum cycle mean, as the negated minimum of negated costs.
pub fn max_mean_cycle(g: &Digraph, costs: &EdgeCosts) -> Result<Rational> {
    Ok(-min_mean_cycle(g, &costs.negated())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub cycle_count: usize,
    pub enumeration_complete: bool,
    pub target_mean: Rational,
    /// Multiset of observed cycle means (mean -> number of cycles).
    pub means: BTreeMap<Rational, usize>,
    pub min_mean: Rational,
    pub max_mean: Rational,
    /// Every cycle mean equals the target.
    pub all_equal: bool,
    /// First enumerated cycle whose mean differs from the target.
    pub witness: Option<Cycle>,
}

impl CycleReport {
    pub fn to_text(&self, precision: Precision) -> String {
        let fmt = |q: &Rational| format_rational(q, precision);
        let mut out = String::new();
        let _ = writeln!(out, "cycle_count {}", self.cycle_count);
        let _ = writeln!(out, "enumeration_complete {}", self.enumeration_complete);
        let _ = writeln!(out, "target_mean {}", fmt(&self.target_mean));
        let _ = writeln!(out, "min_mean {}", fmt(&self.min_mean));
        let _ = writeln!(out, "max_mean {}", fmt(&self.max_mean));
        let _ = writeln!(out, "distinct_means {}", self.means.len());
        let _ = writeln!(out, "all_equal {}", self.all_equal);
        match &self.witness {
            Some(c) => {
                let vs: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "witness {}", vs.join(" "));
            }
            None => {
                let _ = writeln!(out, "witness none");
            }
        }
        out
    }
}

/// One `cycle <vertices> mean <q>` line per simple cycle.
pub fn cycle_listing(
    g: &Digraph,
    costs: &EdgeCosts,
    cap: usize,
    precision: Precision,
) -> Result<String> {
    let mut out = String::new();
    for cycle in enumerate_simple_cycles(g, cap)? {
        let index = EdgeIndex::new(g);
        let edges: Vec<usize> = cycle
            .edges()
            .map(|(a, b)| index.id(g, a, b).expect("cycle edge"))
            .collect();
        let mean = costs.cycle_sum(&edges) / int(cycle.len() as i64);
        let vs: Vec<String> = cycle.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "cycle {} mean {}",
            vs.join(" "),
            format_rational(&mean, precision)
        );
    }
    Ok(out)
}

/// Costs minus the target, scaled to integers, one lane per checked case.
enum Lanes {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

struct LaneCase {
    scale: BigInt,
    target: Rational,
    costs: EdgeCosts,
    deviating: usize,
    means: BTreeMap<Rational, usize>,
    witness: Option<Cycle>,
}

/// Checks several `(c, f)` cases against the graph's cycles in a single
/// enumeration pass. Each case's target is `mean(c)`.
pub fn verify_equal_means_batch(
    g: &Digraph,
    cases: &[(&VertexWeights, &EdgeWeightAssignment)],
    cap: usize,
) -> Result<Vec<CycleReport>> {
    let edge_count = g.edge_count();
    let width = cases.len();
    let mut lane_cases = Vec::with_capacity(width);
    let mut scaled_all = Vec::with_capacity(width);
    for (c, f) in cases {
        let costs = edge_cost_projection(g, c, f)?;
        let target = c.global_mean();
        let reduced: Vec<Rational> = costs.as_slice().iter().map(|x| x - &target).collect();
        let (scale, scaled) = common_scale(&reduced);
        scaled_all.push(scaled);
        lane_cases.push(LaneCase {
            scale,
            target,
            costs,
            deviating: 0,
            means: BTreeMap::new(),
            witness: None,
        });
    }
    let bound = i64::MAX / (g.vertex_count().max(1) as i64 + 1);
    let small = scaled_all
        .iter()
        .flatten()
        .all(|x| x.to_i64().is_some_and(|v| v.abs() <= bound));
    // edge-major layout: lanes[e * width + case]
    let lanes = if small {
        let mut data = vec![0i64; edge_count * width];
        for (j, scaled) in scaled_all.iter().enumerate() {
            for (e, x) in scaled.iter().enumerate() {
                data[e * width + j] = x.to_i64().expect("bounded");
            }
        }
        Lanes::Small(data)
    } else {
        let mut data = vec![BigInt::zero(); edge_count * width];
        for (j, scaled) in scaled_all.into_iter().enumerate() {
            for (e, x) in scaled.into_iter().enumerate() {
                data[e * width + j] = x;
            }
        }
        Lanes::Big(data)
    };

    let mut count = 0usize;
    let mut small_acc = vec![0i64; width];
    let mut big_acc = vec![BigInt::zero(); width];
    let flow = for_each_simple_cycle(g, |cyc| {
        if count == cap {
            return ControlFlow::Break(());
        }
        count += 1;
        let nonzero: Vec<(usize, BigInt)> = match &lanes {
            Lanes::Small(data) => {
                small_acc.iter_mut().for_each(|x| *x = 0);
                for &e in cyc.edges {
                    let row = &data[e * width..(e + 1) * width];
                    for (acc, x) in small_acc.iter_mut().zip(row) {
                        *acc += x;
                    }
                }
                small_acc
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(j, x)| (j, BigInt::from(*x)))
                    .collect()
            }
            Lanes::Big(data) => {
                big_acc.iter_mut().for_each(|x| x.set_zero());
                for &e in cyc.edges {
                    for (j, acc) in big_acc.iter_mut().enumerate() {
                        *acc += &data[e * width + j];
                    }
                }
                big_acc
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            }
        };
        for (j, sum) in nonzero {
            let case = &mut lane_cases[j];
            case.deviating += 1;
            let k = cyc.vertices.len();
            let mean = &case.target + BigRational::new(sum, &case.scale * BigInt::from(k));
            *case.means.entry(mean).or_insert(0) += 1;
            if case.witness.is_none() {
                case.witness = Some(Cycle::canonical(cyc.vertices.to_vec()));
            }
        }
        ControlFlow::Continue(())
    });
    let complete = flow.is_continue();

    let mut reports = Vec::with_capacity(width);
    for case in lane_cases {
        let min_mean = min_mean_cycle(g, &case.costs)?;
        let max_mean = max_mean_cycle(g, &case.costs)?;
        let mut means = case.means;
        let on_target = count - case.deviating;
        if on_target > 0 {
            means.insert(case.target.clone(), on_target);
        }
        let karp_equal = min_mean == case.target && max_mean == case.target;
        let all_equal = case.deviating == 0 && karp_equal;
        reports.push(CycleReport {
            cycle_count: count,
            enumeration_complete: complete,
            target_mean: case.target,
            means,
            min_mean,
            max_mean,
            all_equal,
            witness: case.witness,
        });
    }
    Ok(reports)
}

/// Runs both oracles on one assignment. When more than `cap` cycles exist the
/// enumeration stops there and the verdict rests on the mean-cycle oracle;
/// `enumeration_complete` is then false.
pub fn verify_equal_means(
    g: &Digraph,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
    cap: usize,
) -> Result<CycleReport> {
    Ok(verify_equal_means_batch(g, &[(c, f)], cap)?.remove(0))
}
