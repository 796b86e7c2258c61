//! The time-independent balanced edge weights, the discrete Poisson identity,
//! and the overdetermined cycle-constraint system.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Cycle, DeBruijnGraph, DirectedGraph, VertexWeights};
use crate::rational::{format_rational, int, mean, parse_rational, Precision, Rational};
use crate::value::{optimal_edge_weights, value_closed_form, GameConfig, ValueTable};

/// Largest vertex count for which the exact rank of the cycle system is computed.
pub const RANK_VERTEX_CAP: usize = 64;

/// Weights `f(u, w)` on directed edges, kept sorted by `(u, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeWeightAssignment {
    weights: BTreeMap<(usize, usize), Rational>,
}

impl EdgeWeightAssignment {
    pub fn zero<G: DirectedGraph + ?Sized>(g: &G) -> Self {
        let mut weights = BTreeMap::new();
        for u in 0..g.vertex_count() {
            for w in g.successors(u) {
                weights.insert((u, w), Rational::zero());
            }
        }
        Self { weights }
    }

    pub fn set(&mut self, from: usize, to: usize, value: Rational) {
        self.weights.insert((from, to), value);
    }

    pub fn get(&self, from: usize, to: usize) -> Option<&Rational> {
        self.weights.get(&(from, to))
    }

    pub fn weight(&self, from: usize, to: usize) -> Result<&Rational> {
        self.get(from, to)
            .ok_or_else(|| Error::Structure(format!("no weight for edge {from} -> {to}")))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.weights.iter().map(|(k, v)| (*k, v))
    }

    pub fn outgoing_sum(&self, from: usize) -> Rational {
        self.weights
            .range((from, 0)..=(from, usize::MAX))
            .map(|(_, v)| v)
            .sum()
    }

    /// First vertex whose outgoing weights do not sum to zero.
    pub fn first_unbalanced_vertex(&self, vertex_count: usize) -> Option<usize> {
        (0..vertex_count).find(|&u| !self.outgoing_sum(u).is_zero())
    }

    /// Whether the assignment covers exactly the edges of `g`.
    pub fn covers<G: DirectedGraph + ?Sized>(&self, g: &G) -> bool {
        self.weights.len() == g.edge_count() && self.weights.keys().all(|&(u, w)| g.has_edge(u, w))
    }

    /// `src dst weight` lines sorted by `(src, dst)`.
    pub fn to_text(&self, precision: Precision) -> String {
        let mut out = String::new();
        for ((u, w), f) in &self.weights {
            let _ = writeln!(out, "{u} {w} {}", format_rational(f, precision));
        }
        out
    }

    /// Parses the edge-weight format and checks it against the edges of `g`.
    pub fn parse<G: DirectedGraph + ?Sized>(text: &str, g: &G) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            last_line = line;
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let [a, b, q] = tokens[..] else {
                return Err(Error::parse(line, "expected `src dst weight`"));
            };
            let from: usize = a
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid source `{a}`")))?;
            let to: usize = b
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid target `{b}`")))?;
            let f = parse_rational(q)
                .ok_or_else(|| Error::parse(line, format!("invalid weight `{q}`")))?;
            if from >= g.vertex_count() || !g.has_edge(from, to) {
                return Err(Error::parse(
                    line,
                    format!("{from} -> {to} is not an edge of the graph"),
                ));
            }
            if weights.insert((from, to), f).is_some() {
                return Err(Error::parse(
                    line,
                    format!("duplicate weight for edge {from} {to}"),
                ));
            }
        }
        for u in 0..g.vertex_count() {
            for w in g.successors(u) {
                if !weights.contains_key(&(u, w)) {
                    return Err(Error::parse(
                        last_line + 1,
                        format!("missing weight for edge {u} {w}"),
                    ));
                }
            }
        }
        Ok(Self { weights })
    }
}

/// The balanced assignment: equalizing weights read at a turn inside the
/// stationary window, `f(m, m|l) = avg_k v(1, m|k) - v(1, m|l)`.
pub fn stationary_weights(cfg: &GameConfig) -> Result<EdgeWeightAssignment> {
    let d = cfg.graph.word_length();
    if cfg.horizon < d + 1 {
        return Err(Error::Horizon {
            horizon: cfg.horizon,
            required: d + 1,
        });
    }
    let next: Vec<Rational> = (0..cfg.vertex_count())
        .map(|m| value_closed_form(cfg, 1, m))
        .collect::<Result<_>>()?;
    Ok(equalizing_assignment(&cfg.graph, &next))
}

fn equalizing_assignment(g: &DeBruijnGraph, next: &[Rational]) -> EdgeWeightAssignment {
    let mut f = EdgeWeightAssignment::default();
    for m in 0..g.vertex_count() {
        let succ = g.successors(m);
        let avg = mean(&succ.iter().map(|&s| next[s].clone()).collect::<Vec<_>>());
        for s in succ {
            f.set(m, s, &avg - &next[s]);
        }
    }
    f
}

/// Balanced weights for `c` on `g`, using the shortest admissible horizon.
pub fn balanced_weights(g: &DeBruijnGraph, c: &VertexWeights) -> Result<EdgeWeightAssignment> {
    let cfg = GameConfig::new(g.clone(), c.clone(), g.word_length() + 1)?;
    stationary_weights(&cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationarityViolation {
    pub turn: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StationarityReport {
    /// Equalizing weights identical for every turn in `0..T-d`.
    pub stationary: bool,
    /// Number of turns compared.
    pub window: usize,
    pub first_violation: Option<StationarityViolation>,
    /// Whether turn `T - d` also matches; `None` when there is nothing to compare.
    pub boundary_matches: Option<bool>,
}

pub fn verify_stationarity(cfg: &GameConfig, table: &ValueTable) -> Result<StationarityReport> {
    let d = cfg.graph.word_length();
    let window = (table.horizon() + 1).saturating_sub(d + 1);
    let n = cfg.vertex_count();
    let weights_at = |t: usize| -> Result<Vec<Vec<Rational>>> {
        (0..n)
            .map(|m| optimal_edge_weights(cfg, table, t, m))
            .collect()
    };
    let mut report = StationarityReport {
        stationary: true,
        window,
        first_violation: None,
        boundary_matches: None,
    };
    if window == 0 {
        return Ok(report);
    }
    let reference = weights_at(0)?;
    let differs = |t: usize| -> Result<Option<StationarityViolation>> {
        let current = weights_at(t)?;
        for m in 0..n {
            if let Some(digit) =
                (0..cfg.graph.symbols()).find(|&l| current[m][l] != reference[m][l])
            {
                return Ok(Some(StationarityViolation {
                    turn: t,
                    from: m,
                    to: cfg.graph.succ(m, digit),
                }));
            }
        }
        Ok(None)
    };
    for t in 1..window {
        if let Some(v) = differs(t)? {
            report.stationary = false;
            report.first_violation = Some(v);
            break;
        }
    }
    // boundary turn T - d == window
    report.boundary_matches = Some(differs(window)?.is_none());
    Ok(report)
}

/// `h(m) - (1/n) sum_l h(m|l)`, the normalised Laplacian over out-neighbours.
pub fn discrete_laplacian(g: &DeBruijnGraph, h: &[Rational]) -> Vec<Rational> {
    (0..g.vertex_count())
        .map(|m| {
            let succ: Vec<Rational> = g.successors(m).iter().map(|&s| h[s].clone()).collect();
            &h[m] - mean(&succ)
        })
        .collect()
}

/// Residual of `Lap v(t, .) = c - mean(c)` at every vertex; zero inside the window.
pub fn poisson_residual(cfg: &GameConfig, table: &ValueTable, t: usize) -> Result<Vec<Rational>> {
    let d = cfg.graph.word_length();
    if t + d >= table.horizon() {
        return Err(Error::Domain(format!(
            "turn {t} outside the stationary window 0..{}",
            table.horizon().saturating_sub(d)
        )));
    }
    let lap = discrete_laplacian(&cfg.graph, table.slice(t));
    let global = cfg.weights.global_mean();
    Ok(lap
        .into_iter()
        .enumerate()
        .map(|(m, l)| l - (&cfg.weights[m] - &global))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSystemStats {
    pub cycle_equations: usize,
    pub sum_zero_equations: usize,
    pub variables: usize,
    pub satisfied: bool,
    pub rank: Option<usize>,
    pub degrees_of_freedom: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub global_mean: Rational,
    pub poisson_residual_max: Rational,
    pub stationary: bool,
    pub stationary_at_boundary: Option<bool>,
    pub cycle_system: Option<CycleSystemStats>,
}

impl BalanceReport {
    /// Builds the report for `c` on `g` with horizon `d + 2`.
    pub fn compute(
        g: &DeBruijnGraph,
        c: &VertexWeights,
        cycles: Option<&[Cycle]>,
    ) -> Result<(EdgeWeightAssignment, Self)> {
        let cfg = GameConfig::new(g.clone(), c.clone(), g.word_length() + 2)?;
        let f = stationary_weights(&cfg)?;
        let table = crate::value::solve_dpp(&cfg);
        let stationarity = verify_stationarity(&cfg, &table)?;
        let mut residual_max = Rational::zero();
        for t in 0..cfg.horizon - g.word_length() {
            for r in poisson_residual(&cfg, &table, t)? {
                if r.abs() > residual_max {
                    residual_max = r.abs();
                }
            }
        }
        let cycle_system = match cycles {
            Some(cycles) => {
                let system = CycleConstraintSystem::build(g, c, cycles, usize::MAX)?;
                let rank = if g.vertex_count() <= RANK_VERTEX_CAP {
                    Some(system.rank()?)
                } else {
                    None
                };
                Some(CycleSystemStats {
                    cycle_equations: system.cycle_equations(),
                    sum_zero_equations: system.sum_zero_equations(),
                    variables: system.variable_count(),
                    satisfied: system.verify(&f),
                    rank,
                    degrees_of_freedom: system.degrees_of_freedom(),
                })
            }
            None => None,
        };
        let report = Self {
            global_mean: c.global_mean(),
            poisson_residual_max: residual_max,
            stationary: stationarity.stationary,
            stationary_at_boundary: stationarity.boundary_matches,
            cycle_system,
        };
        Ok((f, report))
    }

    /// Flat `key value` block in a fixed key order.
    pub fn to_text(&self, precision: Precision) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "global_mean {}",
            format_rational(&self.global_mean, precision)
        );
        let _ = writeln!(
            out,
            "poisson_residual_max {}",
            format_rational(&self.poisson_residual_max, precision)
        );
        let _ = writeln!(out, "stationary {}", self.stationary);
        let boundary = self
            .stationary_at_boundary
            .map_or("n/a".to_string(), |b| b.to_string());
        let _ = writeln!(out, "stationary_at_boundary {boundary}");
        if let Some(s) = &self.cycle_system {
            let _ = writeln!(out, "cycle_equations {}", s.cycle_equations);
            let _ = writeln!(out, "sum_zero_equations {}", s.sum_zero_equations);
            let _ = writeln!(out, "variables {}", s.variables);
            let _ = writeln!(out, "degrees_of_freedom {}", s.degrees_of_freedom);
            let _ = writeln!(out, "cycle_system_satisfied {}", s.satisfied);
            let rank = s.rank.map_or("n/a".to_string(), |r| r.to_string());
            let _ = writeln!(out, "rank {rank}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RowKind {
    Cycle,
    SumZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ConstraintRow {
    kind: RowKind,
    /// Variables with coefficient one.
    vars: Vec<usize>,
    rhs: Rational,
}

/// One equation per simple cycle (edge weights along the cycle must total
/// `k * mean(c) - sum of its vertex weights`) plus one sum-zero equation per
/// vertex. Unknowns are the edge weights, in `(src, dst)` order.
#[derive(Clone, Debug)]
pub struct CycleConstraintSystem {
    edges: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    rows: Vec<ConstraintRow>,
    vertex_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSolution {
    pub rank: usize,
    pub augmented_rank: usize,
    /// Present when the system is consistent and has full column rank.
    pub unique: Option<EdgeWeightAssignment>,
}

impl SystemSolution {
    pub fn consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }
}

impl CycleConstraintSystem {
    pub fn build<G: DirectedGraph + ?Sized>(
        g: &G,
        c: &VertexWeights,
        cycles: &[Cycle],
        cap: usize,
    ) -> Result<Self> {
        c.check_len(g.vertex_count())?;
        if cycles.len() > cap {
            return Err(Error::Capacity {
                what: "cycle equations",
                count: cycles.len() as u128,
                cap: cap as u128,
            });
        }
        let mut edges = Vec::new();
        for u in 0..g.vertex_count() {
            for w in g.successors(u) {
                edges.push((u, w));
            }
        }
        let index: BTreeMap<_, _> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let target = c.global_mean();
        let mut rows = Vec::with_capacity(cycles.len() + g.vertex_count());
        for cycle in cycles {
            let mut vars = Vec::with_capacity(cycle.len());
            for e in cycle.edges() {
                vars.push(*index.get(&e).ok_or_else(|| {
                    Error::Structure(format!("{} -> {} is not an edge", e.0, e.1))
                })?);
            }
            let vertex_sum: Rational = cycle.vertices().iter().map(|&v| c[v].clone()).sum();
            rows.push(ConstraintRow {
                kind: RowKind::Cycle,
                vars,
                rhs: int(cycle.len() as i64) * &target - vertex_sum,
            });
        }
        for u in 0..g.vertex_count() {
            rows.push(ConstraintRow {
                kind: RowKind::SumZero,
                vars: g
                    .successors(u)
                    .into_iter()
                    .map(|w| index[&(u, w)])
                    .collect(),
                rhs: Rational::zero(),
            });
        }
        Ok(Self {
            edges,
            index,
            rows,
            vertex_count: g.vertex_count(),
        })
    }

    pub fn variable_count(&self) -> usize {
        self.edges.len()
    }

    pub fn cycle_equations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::Cycle)
            .count()
    }

    pub fn sum_zero_equations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.kind == RowKind::SumZero)
            .count()
    }

    /// Unknowns left once every vertex's outgoing weights must sum to zero.
    pub fn degrees_of_freedom(&self) -> usize {
        // sum-zero rows have disjoint supports, so they are independent
        let nonempty = self
            .rows
            .iter()
            .filter(|r| r.kind == RowKind::SumZero && !r.vars.is_empty())
            .count();
        self.variable_count() - nonempty
    }

    /// Index of the first equation `f` violates.
    pub fn first_violation(&self, f: &EdgeWeightAssignment) -> Option<usize> {
        self.rows.iter().position(|row| {
            let lhs: Option<Rational> = row
                .vars
                .iter()
                .map(|&i| f.get(self.edges[i].0, self.edges[i].1).cloned())
                .sum();
            lhs.as_ref() != Some(&row.rhs)
        })
    }

    pub fn verify(&self, f: &EdgeWeightAssignment) -> bool {
        self.first_violation(f).is_none()
    }

    /// Exact rank of the coefficient matrix.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.eliminate()?.0)
    }

    /// Exact elimination of the augmented system.
    pub fn solve(&self) -> Result<SystemSolution> {
        let (rank, augmented_rank, echelon, pivots) = self.eliminate()?;
        let vars = self.variable_count();
        let unique = if rank == augmented_rank && rank == vars {
            let mut x = vec![Rational::zero(); vars];
            for (row, &col) in echelon.iter().zip(&pivots).rev() {
                let mut acc = Rational::from_integer(row[vars].clone());
                for j in col + 1..vars {
                    if !row[j].is_zero() {
                        acc -= Rational::from_integer(row[j].clone()) * &x[j];
                    }
                }
                x[col] = acc / Rational::from_integer(row[col].clone());
            }
            let mut f = EdgeWeightAssignment::default();
            for (i, &(u, w)) in self.edges.iter().enumerate() {
                f.set(u, w, x[i].clone());
            }
            Some(f)
        } else {
            None
        };
        Ok(SystemSolution {
            rank,
            augmented_rank,
            unique,
        })
    }

    /// Fraction-free (Bareiss) row echelon form of the integer-scaled
    /// augmented matrix. Returns coefficient rank, augmented rank, the pivot
    /// rows and their pivot columns (coefficient columns only).
    #[allow(clippy::type_complexity)]
    fn eliminate(&self) -> Result<(usize, usize, Vec<Vec<BigInt>>, Vec<usize>)> {
        if self.vertex_count > RANK_VERTEX_CAP {
            return Err(Error::Capacity {
                what: "vertices for exact rank",
                count: self.vertex_count as u128,
                cap: RANK_VERTEX_CAP as u128,
            });
        }
        let vars = self.variable_count();
        let cols = vars + 1;
        let mut m: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|row| {
                let scale = row.rhs.denom().clone();
                let mut dense = vec![BigInt::zero(); cols];
                for &i in &row.vars {
                    dense[i] += &scale;
                }
                dense[vars] = row.rhs.numer().clone();
                dense
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut pivots = Vec::new();
        let mut augmented_pivot = false;
        for col in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let (top, rest) = m.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for j in col + 1..cols {
                    let num = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
                row[col] = BigInt::zero();
            }
            prev = m[r][col].clone();
            if col == vars {
                augmented_pivot = true;
            } else {
                pivots.push(col);
            }
            r += 1;
            if r == m.len() {
                break;
            }
        }
        let rank = pivots.len();
        m.truncate(rank);
        Ok((rank, rank + usize::from(augmented_pivot), m, pivots))
    }

    pub fn edge_index(&self, from: usize, to: usize) -> Option<usize> {
        self.index.get(&(from, to)).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_simple_cycles;
    use crate::rational::ratio;
    use crate::value::solve_dpp;
    use proptest::prelude::*;

    fn b22() -> (DeBruijnGraph, VertexWeights) {
        (
            DeBruijnGraph::new(2, 2).unwrap(),
            VertexWeights::from_integers(&[0, 4, 0, 0]),
        )
    }

    #[test]
    fn worked_example_weights() {
        let (g, c) = b22();
        let f = balanced_weights(&g, &c).unwrap();
        let expected = [
            (0, 0, 1),
            (0, 1, -1),
            (1, 2, -1),
            (1, 3, 1),
            (2, 0, 1),
            (2, 1, -1),
            (3, 2, -1),
            (3, 3, 1),
        ];
        assert_eq!(f.len(), 8);
        for (u, w, x) in expected {
            assert_eq!(f.get(u, w), Some(&int(x)), "edge {u} -> {w}");
        }
        // independent route: read the equalizing weights at t = 0 of a long game
        let cfg = GameConfig::new(g.clone(), c.clone(), 10).unwrap();
        let table = solve_dpp(&cfg);
        for m in 0..4 {
            let direct = optimal_edge_weights(&cfg, &table, 0, m).unwrap();
            for (l, x) in direct.iter().enumerate() {
                assert_eq!(f.get(m, g.succ(m, l)), Some(x));
            }
        }
    }

    #[test]
    fn two_vertex_weights_and_horizon_error() {
        let g = DeBruijnGraph::new(2, 1).unwrap();
        let c = VertexWeights::from_integers(&[1, 3]);
        let f = balanced_weights(&g, &c).unwrap();
        for u in 0..2 {
            assert_eq!(f.get(u, 0), Some(&int(1)));
            assert_eq!(f.get(u, 1), Some(&int(-1)));
        }
        let short = GameConfig::new(g, c, 1).unwrap();
        assert!(matches!(
            stationary_weights(&short),
            Err(Error::Horizon {
                horizon: 1,
                required: 2
            })
        ));
    }

    #[test]
    fn constant_weights_need_no_balancing() {
        let g = DeBruijnGraph::new(3, 2).unwrap();
        let f = balanced_weights(&g, &VertexWeights::constant(9, ratio(5, 2))).unwrap();
        assert!(f.iter().all(|(_, x)| x.is_zero()));
    }

    #[test]
    fn stationarity_checks() {
        let g = DeBruijnGraph::new(2, 3).unwrap();
        let mut c = vec![0; 8];
        c[5] = 1;
        let cfg = GameConfig::new(g, VertexWeights::from_integers(&c), 3).unwrap();
        let report = verify_stationarity(&cfg, &solve_dpp(&cfg)).unwrap();
        assert!(report.stationary);
        assert_eq!(report.window, 0);
        assert_eq!(report.boundary_matches, None);

        let (g, c) = b22();
        let cfg = GameConfig::new(g, c, 8).unwrap();
        let mut table = solve_dpp(&cfg);
        let clean = verify_stationarity(&cfg, &table).unwrap();
        assert!(clean.stationary);
        assert_eq!(clean.window, 6);
        assert_eq!(clean.boundary_matches, Some(true));
        // bump v(4, 01): the weights at turn 3 out of 00 and 10 change
        table.values_mut()[4 * 4 + 1] += int(1);
        let bad = verify_stationarity(&cfg, &table).unwrap();
        assert!(!bad.stationary);
        assert_eq!(
            bad.first_violation,
            Some(StationarityViolation {
                turn: 3,
                from: 0,
                to: 0
            })
        );
    }

    #[test]
    fn stationarity_fails_past_the_window() {
        // the weights at turn T - d + 1 depend on fewer suffix levels
        let g = DeBruijnGraph::new(2, 2).unwrap();
        let cfg = GameConfig::new(g, VertexWeights::from_integers(&[0, 4, 0, 0]), 4).unwrap();
        let table = solve_dpp(&cfg);
        let late = optimal_edge_weights(&cfg, &table, 3, 0).unwrap();
        let early = optimal_edge_weights(&cfg, &table, 0, 0).unwrap();
        assert_ne!(late, early);
    }

    #[test]
    fn poisson_worked_example() {
        let (g, c) = b22();
        let cfg = GameConfig::new(g, c, 6).unwrap();
        let table = solve_dpp(&cfg);
        for t in 0..4 {
            assert!(poisson_residual(&cfg, &table, t)
                .unwrap()
                .iter()
                .all(Zero::is_zero));
            let lap = discrete_laplacian(&cfg.graph, table.slice(t));
            assert_eq!(lap[0], int(-1));
        }
        assert!(poisson_residual(&cfg, &table, 4).is_err());
    }

    #[test]
    fn cycle_system_on_two_vertices() {
        let g = DeBruijnGraph::new(2, 1).unwrap();
        let c = VertexWeights::from_integers(&[1, 3]);
        let cycles = enumerate_simple_cycles(&g.to_digraph(), 1000).unwrap();
        let system = CycleConstraintSystem::build(&g, &c, &cycles, 1000).unwrap();
        assert_eq!(system.cycle_equations(), 3);
        assert_eq!(system.sum_zero_equations(), 2);
        assert_eq!(system.variable_count(), 4);
        let f = balanced_weights(&g, &c).unwrap();
        assert!(system.verify(&f));
        assert!(!system.verify(&EdgeWeightAssignment::zero(&g)));
        assert_eq!(system.rank().unwrap(), 4);
        assert_eq!(system.degrees_of_freedom(), 2);
        let solution = system.solve().unwrap();
        assert!(solution.consistent());
        assert_eq!(solution.unique, Some(f));
        assert!(CycleConstraintSystem::build(&g, &c, &cycles, 2).is_err());
    }

    #[test]
    fn inconsistent_system_is_reported() {
        // tamper with one right-hand side
        let g = DeBruijnGraph::new(2, 1).unwrap();
        let c = VertexWeights::from_integers(&[1, 3]);
        let cycles = enumerate_simple_cycles(&g.to_digraph(), 1000).unwrap();
        let mut system = CycleConstraintSystem::build(&g, &c, &cycles, 1000).unwrap();
        system.rows[0].rhs += int(1);
        let s = system.solve().unwrap();
        assert!(!s.consistent());
        assert_eq!(s.unique, None);
    }

    #[test]
    fn report_block() {
        let (g, c) = b22();
        let cycles = enumerate_simple_cycles(&g.to_digraph(), 1000).unwrap();
        let (_, report) = BalanceReport::compute(&g, &c, Some(&cycles)).unwrap();
        assert_eq!(
            report.to_text(Precision::Exact),
            "global_mean 1\npoisson_residual_max 0\nstationary true\nstationary_at_boundary true\n\
             cycle_equations 6\nsum_zero_equations 4\nvariables 8\ndegrees_of_freedom 4\n\
             cycle_system_satisfied true\nrank 8\n"
        );
    }

    #[test]
    fn edge_weight_text_round_trip() {
        let (g, c) = b22();
        let f = balanced_weights(&g, &c).unwrap();
        let text = f.to_text(Precision::Exact);
        assert!(text.starts_with("0 0 1\n0 1 -1\n1 2 -1\n"));
        assert_eq!(EdgeWeightAssignment::parse(&text, &g).unwrap(), f);
        assert!(EdgeWeightAssignment::parse("0 0 1\n", &g).is_err());
        assert!(EdgeWeightAssignment::parse("0 3 1\n", &g).is_err());
        let doubled = format!("{text}0 0 2\n");
        assert!(EdgeWeightAssignment::parse(&doubled, &g).is_err());
    }

    fn weights_strategy(len: usize) -> impl Strategy<Value = VertexWeights> {
        proptest::collection::vec((-30i64..30, 1i64..7), len)
            .prop_map(|ws| VertexWeights::new(ws.into_iter().map(|(p, q)| ratio(p, q)).collect()))
    }

    proptest! {
        #[test]
        fn stationary_on_random_weights(c in weights_strategy(4)) {
            let cfg = GameConfig::new(DeBruijnGraph::new(2, 2).unwrap(), c, 8).unwrap();
            let table = solve_dpp(&cfg);
            let report = verify_stationarity(&cfg, &table).unwrap();
            prop_assert!(report.stationary);
            prop_assert_eq!(report.boundary_matches, Some(true));
            let f = stationary_weights(&cfg).unwrap();
            for t in 0..6 {
                for m in 0..4 {
                    let w = optimal_edge_weights(&cfg, &table, t, m).unwrap();
                    for (l, x) in w.iter().enumerate() {
                        prop_assert_eq!(f.get(m, cfg.graph.succ(m, l)), Some(x));
                    }
                }
            }
            prop_assert_eq!(f.first_unbalanced_vertex(4), None);
        }

        #[test]
        fn poisson_on_ternary_pairs(c in weights_strategy(9)) {
            let cfg = GameConfig::new(DeBruijnGraph::new(3, 2).unwrap(), c, 6).unwrap();
            let table = solve_dpp(&cfg);
            for t in 0..4 {
                prop_assert!(poisson_residual(&cfg, &table, t).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn shifting_c_keeps_f(c in weights_strategy(8), p in -9i64..9, q in 1i64..4) {
            let g = DeBruijnGraph::new(2, 3).unwrap();
            let kappa = ratio(p, q);
            let f = balanced_weights(&g, &c).unwrap();
            prop_assert_eq!(&balanced_weights(&g, &c.shifted(&kappa)).unwrap(), &f);
        }

        #[test]
        fn cycle_traversal_via_values(c in weights_strategy(8)) {
            // v(T-s-k, m) - v(T-s, m) = k * mean(c) for s >= d
            let g = DeBruijnGraph::new(2, 3).unwrap();
            let cfg = GameConfig::new(g, c.clone(), 12).unwrap();
            let table = solve_dpp(&cfg);
            for s in 3..=6 {
                for k in 1..=6 {
                    for m in 0..8 {
                        prop_assert_eq!(
                            table.get(12 - s - k, m) - table.get(12 - s, m),
                            int(k as i64) * c.global_mean()
                        );
                    }
                }
            }
        }
    }
}
