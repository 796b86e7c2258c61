//! Backward induction for the repeated weight-picking game on `B(n, d)`.
//!
//! At turn `t` on vertex `m` one player fixes sum-zero weights on the `n`
//! outgoing edges, then the other player moves the token to some `m|l`. The
//! inner optimisation over weights is solved in closed form: the equalizing
//! assignment `f_l = avg(a) - a_l` makes every option `a_l + f_l` equal, and no
//! sum-zero assignment can push the worst option below (or above) that average.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DeBruijnGraph, DirectedGraph, VertexWeights};
use crate::rational::{int, mean, Rational};

#[derive(Clone, Debug)]
pub struct GameConfig {
    pub graph: DeBruijnGraph,
    pub weights: VertexWeights,
    pub horizon: usize,
}

impl GameConfig {
    pub fn new(graph: DeBruijnGraph, weights: VertexWeights, horizon: usize) -> Result<Self> {
        weights.check_len(graph.vertex_count())?;
        Ok(Self {
            graph,
            weights,
            horizon,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn check_turn(&self, t: usize) -> Result<()> {
        if t > self.horizon {
            return Err(Error::Domain(format!(
                "turn {t} beyond horizon {}",
                self.horizon
            )));
        }
        Ok(())
    }

    fn check_vertex(&self, m: usize) -> Result<()> {
        if m >= self.vertex_count() {
            return Err(Error::Domain(format!(
                "vertex {m} out of range 0..{}",
                self.vertex_count()
            )));
        }
        Ok(())
    }
}

/// Turns at which Paul sets the weights and Carol moves. On the remaining
/// turns the roles are swapped.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TurnSet(BTreeSet<usize>);

impl TurnSet {
    pub fn new(horizon: usize, turns: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = turns.into_iter().collect();
        if let Some(&t) = set.iter().find(|&&t| t >= horizon) {
            return Err(Error::Domain(format!(
                "turn {t} not in 0..{horizon} for the mixed game"
            )));
        }
        Ok(Self(set))
    }

    pub fn all(horizon: usize) -> Self {
        Self((0..horizon).collect())
    }

    /// Parses a comma separated list such as `0,2,4`. An empty string is the empty set.
    pub fn parse(horizon: usize, text: &str) -> Result<Self> {
        let mut turns = Vec::new();
        for token in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            turns.push(
                token
                    .parse()
                    .map_err(|_| Error::Domain(format!("invalid turn `{token}`")))?,
            );
        }
        Self::new(horizon, turns)
    }

    pub fn contains(&self, t: usize) -> bool {
        self.0.contains(&t)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameVariant {
    /// Paul minimises over weights, Carol maximises over moves.
    MinMax,
    /// Roles of the objectives swapped: maximise over weights, minimise over moves.
    MaxMin,
    Mixed(TurnSet),
    /// Value of the uniform-walk game on a general digraph.
    UniformWalk,
}

impl fmt::Display for GameVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameVariant::MinMax => write!(f, "minmax"),
            GameVariant::MaxMin => write!(f, "maxmin"),
            GameVariant::Mixed(s) => {
                let list: Vec<String> = s.iter().map(|t| t.to_string()).collect();
                write!(f, "mixed({})", list.join(","))
            }
            GameVariant::UniformWalk => write!(f, "uniform-walk"),
        }
    }
}

/// Dense `v(t, m)` for `t in 0..=T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueTable {
    horizon: usize,
    vertex_count: usize,
    values: Vec<Rational>,
    variant: GameVariant,
}

impl ValueTable {
    pub(crate) fn from_slices(slices: Vec<Vec<Rational>>, variant: GameVariant) -> Self {
        let horizon = slices.len() - 1;
        let vertex_count = slices[0].len();
        Self {
            horizon,
            vertex_count,
            values: slices.into_iter().flatten().collect(),
            variant,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn variant(&self) -> &GameVariant {
        &self.variant
    }

    pub fn get(&self, t: usize, m: usize) -> &Rational {
        &self.values[t * self.vertex_count + m]
    }

    pub fn slice(&self, t: usize) -> &[Rational] {
        &self.values[t * self.vertex_count..(t + 1) * self.vertex_count]
    }

    /// Optimal cost of a game with `turns_left` turns started at `m`.
    pub fn game_cost(&self, turns_left: usize, m: usize) -> &Rational {
        self.get(self.horizon - turns_left, m)
    }

    /// First `(t, m)` where the entries differ, if any.
    pub fn first_difference(&self, other: &ValueTable) -> Option<(usize, usize)> {
        if self.horizon != other.horizon || self.vertex_count != other.vertex_count {
            return Some((0, 0));
        }
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.vertex_count, i % self.vertex_count))
    }

    pub fn same_values(&self, other: &ValueTable) -> bool {
        self.first_difference(other).is_none()
    }

    #[cfg(test)]
    pub(crate) fn values_mut(&mut self) -> &mut [Rational] {
        &mut self.values
    }
}

/// Who sets the weights on a given turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TurnRole {
    /// `min_f max_l`
    PaulSetsWeights,
    /// `max_f min_l`
    CarolSetsWeights,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnResolution {
    pub weights: Vec<Rational>,
    /// Digit picked by the mover; ties go to the lowest digit.
    pub move_digit: usize,
    pub value: Rational,
}

/// Solves one turn given the mover's options `a_l = c(m) + v(t+1, m|l)`.
pub fn resolve_turn(options: &[Rational], role: TurnRole) -> TurnResolution {
    let avg = mean(options);
    let weights: Vec<Rational> = options.iter().map(|a| &avg - a).collect();
    let totals: Vec<Rational> = options.iter().zip(&weights).map(|(a, f)| a + f).collect();
    let mut move_digit = 0;
    for (digit, total) in totals.iter().enumerate().skip(1) {
        let better = match role {
            TurnRole::PaulSetsWeights => total > &totals[move_digit],
            TurnRole::CarolSetsWeights => total < &totals[move_digit],
        };
        if better {
            move_digit = digit;
        }
    }
    TurnResolution {
        value: totals[move_digit].clone(),
        weights,
        move_digit,
    }
}

fn options_at(cfg: &GameConfig, next: &[Rational], m: usize) -> Vec<Rational> {
    let n = cfg.graph.symbols();
    (0..n)
        .map(|digit| &cfg.weights[m] + &next[cfg.graph.succ(m, digit)])
        .collect()
}

/// Backward induction with a per-turn role schedule.
pub fn solve_schedule(
    cfg: &GameConfig,
    role_at: impl Fn(usize) -> TurnRole,
    variant: GameVariant,
) -> ValueTable {
    let mut slices = vec![Vec::new(); cfg.horizon + 1];
    slices[cfg.horizon] = cfg.weights.as_slice().to_vec();
    for t in (0..cfg.horizon).rev() {
        let role = role_at(t);
        let next = &slices[t + 1];
        let current: Vec<Rational> = (0..cfg.vertex_count())
            .map(|m| resolve_turn(&options_at(cfg, next, m), role).value)
            .collect();
        slices[t] = current;
    }
    ValueTable::from_slices(slices, variant)
}

/// The original game: Paul picks sum-zero weights, Carol picks the edge.
pub fn solve_dpp(cfg: &GameConfig) -> ValueTable {
    solve_schedule(cfg, |_| TurnRole::PaulSetsWeights, GameVariant::MinMax)
}

/// Objectives swapped on every turn. Errors if the table departs from [`solve_dpp`].
pub fn solve_maxmin(cfg: &GameConfig) -> Result<ValueTable> {
    let table = solve_schedule(cfg, |_| TurnRole::CarolSetsWeights, GameVariant::MaxMin);
    ensure_matches_baseline(cfg, &table)?;
    Ok(table)
}

/// Mixed game: turns in `turns` are min-max, the rest max-min. Errors if the
/// table departs from [`solve_dpp`].
pub fn solve_mixed(cfg: &GameConfig, turns: &TurnSet) -> Result<ValueTable> {
    let table = solve_mixed_unchecked(cfg, turns)?;
    ensure_matches_baseline(cfg, &table)?;
    Ok(table)
}

pub fn solve_mixed_unchecked(cfg: &GameConfig, turns: &TurnSet) -> Result<ValueTable> {
    if let Some(t) = turns.iter().find(|&t| t >= cfg.horizon) {
        return Err(Error::Domain(format!("turn {t} not in 0..{}", cfg.horizon)));
    }
    Ok(solve_schedule(
        cfg,
        |t| {
            if turns.contains(t) {
                TurnRole::PaulSetsWeights
            } else {
                TurnRole::CarolSetsWeights
            }
        },
        GameVariant::Mixed(turns.clone()),
    ))
}

fn ensure_matches_baseline(cfg: &GameConfig, table: &ValueTable) -> Result<()> {
    let baseline = solve_dpp(cfg);
    match baseline.first_difference(table) {
        None => Ok(()),
        Some((t, m)) => Err(Error::Equality(format!(
            "{} table differs from the min-max table at t={t}, m={m}",
            table.variant()
        ))),
    }
}

/// Equalizing weights `f(t, (m, m|l))` read off a solved table.
pub fn optimal_edge_weights(
    cfg: &GameConfig,
    table: &ValueTable,
    t: usize,
    m: usize,
) -> Result<Vec<Rational>> {
    if t >= table.horizon() {
        return Err(Error::Domain(format!(
            "no move at turn {t}: horizon is {}",
            table.horizon()
        )));
    }
    cfg.check_vertex(m)?;
    let next: Vec<Rational> = (0..cfg.graph.symbols())
        .map(|digit| table.get(t + 1, cfg.graph.succ(m, digit)).clone())
        .collect();
    let avg = mean(&next);
    Ok(next.iter().map(|v| &avg - v).collect())
}

/// `n^-j * sum over all j-digit suffixes of c(m|l1|...|lj)`: the expected
/// weight `j` uniform steps ahead of `m`, by explicit suffix enumeration.
fn suffix_average(cfg: &GameConfig, m: usize, j: usize) -> Rational {
    let n = cfg.graph.symbols();
    let count = cfg.vertex_count();
    let span = n.pow(j as u32);
    // appending j digits L: (m * n^j + L) mod n^d
    let base = (m as u128 * span as u128 % count as u128) as usize;
    let total: Rational = (0..span)
        .map(|suffix| cfg.weights[(base + suffix) % count].clone())
        .sum();
    total / int(span as i64)
}

/// Explicit value formula. For `T - t >= d` every suffix of length at least
/// `d` averages to the global mean, so the tail collapses to
/// `(T - t - d + 1) * mean(c)`.
pub fn value_closed_form(cfg: &GameConfig, t: usize, m: usize) -> Result<Rational> {
    cfg.check_turn(t)?;
    cfg.check_vertex(m)?;
    let remaining = cfg.horizon - t;
    let d = cfg.graph.word_length();
    if remaining >= d {
        let head: Rational = (0..d).map(|j| suffix_average(cfg, m, j)).sum();
        Ok(head + int((remaining - d + 1) as i64) * cfg.weights.global_mean())
    } else {
        Ok((0..=remaining).map(|j| suffix_average(cfg, m, j)).sum())
    }
}

/// The un-collapsed explicit sum over every suffix of every length up to
/// `T - t`. Exponential in `T - t`; capped at `2^24` suffixes per term.
pub fn value_explicit_sum(cfg: &GameConfig, t: usize, m: usize) -> Result<Rational> {
    cfg.check_turn(t)?;
    cfg.check_vertex(m)?;
    let remaining = cfg.horizon - t;
    let widest = (cfg.graph.symbols() as u128).checked_pow(remaining as u32);
    if widest.is_none_or(|w| w > 1 << 24) {
        return Err(Error::Capacity {
            what: "explicit suffix count",
            count: widest.unwrap_or(u128::MAX),
            cap: 1 << 24,
        });
    }
    Ok((0..=remaining).map(|j| suffix_average(cfg, m, j)).sum())
}

/// `v(t, .)` using only two live slices.
pub fn value_slice_rolling(cfg: &GameConfig, t: usize) -> Result<Vec<Rational>> {
    cfg.check_turn(t)?;
    let mut current = cfg.weights.as_slice().to_vec();
    for _ in t..cfg.horizon {
        let next: Vec<Rational> = (0..cfg.vertex_count())
            .map(|m| mean(&options_at(cfg, &current, m)))
            .collect();
        current = next;
    }
    Ok(current)
}

/// Probabilities with which Carol picks each digit, per `(t, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarolStrategy {
    default: Vec<Rational>,
    overrides: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl CarolStrategy {
    pub fn uniform(n: usize) -> Self {
        Self {
            default: vec![Rational::new(1.into(), (n as i64).into()); n],
            overrides: BTreeMap::new(),
        }
    }

    /// Same probability vector at every `(t, m)`.
    pub fn constant(alpha: Vec<Rational>) -> Result<Self> {
        validate_probabilities(&alpha, alpha.len())?;
        Ok(Self {
            default: alpha,
            overrides: BTreeMap::new(),
        })
    }

    pub fn point_mass(n: usize, digit: usize) -> Result<Self> {
        if digit >= n {
            return Err(Error::Domain(format!("digit {digit} out of range 0..{n}")));
        }
        let mut alpha = vec![Rational::zero(); n];
        alpha[digit] = int(1);
        Self::constant(alpha)
    }

    pub fn set(&mut self, t: usize, m: usize, alpha: Vec<Rational>) -> Result<()> {
        validate_probabilities(&alpha, self.default.len())?;
        self.overrides.insert((t, m), alpha);
        Ok(())
    }

    pub fn at(&self, t: usize, m: usize) -> &[Rational] {
        self.overrides.get(&(t, m)).unwrap_or(&self.default)
    }

    pub fn symbols(&self) -> usize {
        self.default.len()
    }
}

fn validate_probabilities(alpha: &[Rational], n: usize) -> Result<()> {
    if alpha.len() != n || n == 0 {
        return Err(Error::Domain(format!(
            "probability vector has {} entries, expected {n}",
            alpha.len()
        )));
    }
    if alpha.iter().any(Signed::is_negative) {
        return Err(Error::Domain("negative probability".into()));
    }
    if alpha.iter().sum::<Rational>() != int(1) {
        return Err(Error::Domain("probabilities do not sum to 1".into()));
    }
    Ok(())
}

/// One-step expected cost when Paul plays the equalizing weights and Carol
/// randomises with `strategy`.
pub fn expected_cost_under_strategy(
    cfg: &GameConfig,
    table: &ValueTable,
    strategy: &CarolStrategy,
    t: usize,
    m: usize,
) -> Result<Rational> {
    if strategy.symbols() != cfg.graph.symbols() {
        return Err(Error::Domain(format!(
            "strategy over {} digits for a graph on {} symbols",
            strategy.symbols(),
            cfg.graph.symbols()
        )));
    }
    let f = optimal_edge_weights(cfg, table, t, m)?;
    let alpha = strategy.at(t, m);
    Ok((0..cfg.graph.symbols())
        .map(|digit| {
            let next = table.get(t + 1, cfg.graph.succ(m, digit));
            &alpha[digit] * (&cfg.weights[m] + &f[digit] + next)
        })
        .sum())
}
