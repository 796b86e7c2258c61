//! de Bruijn graphs, general sink-free digraphs, and doubly weighted walks.
//!
//! Vertices of `B(n, d)` are the integers `0..n^d`, read as `d`-digit base-`n`
//! words. The edge out of `m` labelled `l` goes to `m|l`: drop the leading
//! digit, append `l`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::balance::EdgeWeightAssignment;
use crate::error::{Error, Result};
use crate::rational::{format_exact, int, parse_rational, Rational};

pub const DEFAULT_VERTEX_CAP: usize = 1 << 24;

/// Read access shared by [`DeBruijnGraph`] and [`Digraph`].
pub trait DirectedGraph {
    fn vertex_count(&self) -> usize;
    /// Out-neighbours of `v` in ascending order.
    fn successors(&self, v: usize) -> Vec<usize>;
    fn has_edge(&self, from: usize, to: usize) -> bool;

    fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.successors(v).len())
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeBruijnGraph {
    n: usize,
    d: usize,
    vertex_count: usize,
    /// `n^(d-1)`, the place value of the leading digit.
    lead: usize,
}

impl DeBruijnGraph {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::with_cap(n, d, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(n: usize, d: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "symbol count n must be >= 2, got {n}"
            )));
        }
        if d < 1 {
            return Err(Error::Domain(format!(
                "word length d must be >= 1, got {d}"
            )));
        }
        let count = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if count > cap as u128 {
            return Err(Error::Capacity {
                what: "de Bruijn vertex count",
                count,
                cap: cap as u128,
            });
        }
        let vertex_count = count as usize;
        Ok(Self {
            n,
            d,
            vertex_count,
            lead: vertex_count / n,
        })
    }

    pub fn symbols(&self) -> usize {
        self.n
    }

    pub fn word_length(&self) -> usize {
        self.d
    }

    /// `m|l`, with range checks on both arguments.
    pub fn successor(&self, m: usize, digit: usize) -> Result<usize> {
        if m >= self.vertex_count {
            return Err(Error::Domain(format!(
                "vertex {m} out of range 0..{}",
                self.vertex_count
            )));
        }
        if digit >= self.n {
            return Err(Error::Domain(format!(
                "digit {digit} out of range 0..{}",
                self.n
            )));
        }
        Ok(self.succ(m, digit))
    }

    #[inline]
    pub(crate) fn succ(&self, m: usize, digit: usize) -> usize {
        (m % self.lead) * self.n + digit
    }

    /// The `n` vertices with an edge into `m`.
    pub fn predecessors(&self, m: usize) -> Vec<usize> {
        (0..self.n)
            .map(|lead| lead * self.lead + m / self.n)
            .collect()
    }

    /// Base-`n` digits of `m`, most significant first.
    pub fn digits(&self, m: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        let mut rest = m;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.n;
            rest /= self.n;
        }
        out
    }

    /// Word label such as `010`; digits above 9 are comma separated.
    pub fn label(&self, m: usize) -> String {
        let digits = self.digits(m);
        if self.n <= 10 {
            digits.iter().map(|x| char::from(b'0' + *x as u8)).collect()
        } else {
            digits
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph {
            adjacency: (0..self.vertex_count).map(|m| self.successors(m)).collect(),
        }
    }

    /// Recognises `g` as some `B(n, d)` with identical vertex numbering.
    pub fn recognize(g: &Digraph) -> Option<DeBruijnGraph> {
        let count = g.vertex_count();
        let n = g.successors(0).len();
        if n < 2 {
            return None;
        }
        let mut d = 0;
        let mut power = 1usize;
        while power < count {
            power = power.checked_mul(n)?;
            d += 1;
        }
        if power != count || d == 0 {
            return None;
        }
        let candidate = DeBruijnGraph::new(n, d).ok()?;
        (0..count)
            .all(|m| g.adjacency[m] == candidate.successors(m))
            .then_some(candidate)
    }
}

impl DirectedGraph for DeBruijnGraph {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn successors(&self, v: usize) -> Vec<usize> {
        (0..self.n).map(|digit| self.succ(v, digit)).collect()
    }

    fn has_edge(&self, from: usize, to: usize) -> bool {
        from < self.vertex_count && to < self.vertex_count && to / self.n == from % self.lead
    }

    fn edge_count(&self) -> usize {
        self.vertex_count * self.n
    }
}

/// A finite digraph with canonical (ascending, duplicate-free) successor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    adjacency: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from an edge list. Sinks are allowed here; use
    /// [`Digraph::ensure_sink_free`] where the walk must never halt.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); vertex_count];
        for (from, to) in edges {
            if from >= vertex_count || to >= vertex_count {
                return Err(Error::Structure(format!(
                    "edge {from} -> {to} out of range 0..{vertex_count}"
                )));
            }
            if !sets[from].insert(to) {
                return Err(Error::Structure(format!("duplicate edge {from} -> {to}")));
            }
        }
        Ok(Self {
            adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn ensure_sink_free(&self) -> Result<()> {
        match self.adjacency.iter().position(Vec::is_empty) {
            Some(vertex) => Err(Error::Sink { vertex }),
            None => Ok(()),
        }
    }

    /// Common out-degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Result<usize> {
        let expected = self.adjacency.first().map_or(0, Vec::len);
        for (vertex, succ) in self.adjacency.iter().enumerate() {
            if succ.len() != expected {
                return Err(Error::Regularity {
                    vertex,
                    degree: succ.len(),
                    expected,
                });
            }
        }
        Ok(expected)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(from, succ)| succ.iter().map(move |&to| (from, to)))
    }
}

impl DirectedGraph for Digraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn successors(&self, v: usize) -> Vec<usize> {
        self.adjacency[v].clone()
    }

    fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency
            .get(from)
            .is_some_and(|succ| succ.binary_search(&to).is_ok())
    }

    fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }
}

/// The cost function `c` on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeights(Vec<Rational>);

impl VertexWeights {
    pub fn new(weights: Vec<Rational>) -> Self {
        Self(weights)
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        Self(weights.iter().map(|&w| int(w)).collect())
    }

    pub fn constant(vertex_count: usize, value: Rational) -> Self {
        Self(vec![value; vertex_count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.0[v]
    }

    /// Average vertex weight, `(1/N) * sum c`.
    pub fn global_mean(&self) -> Rational {
        crate::rational::mean(&self.0)
    }

    pub fn shifted(&self, by: &Rational) -> Self {
        Self(self.0.iter().map(|w| w + by).collect())
    }

    pub(crate) fn check_len(&self, vertex_count: usize) -> Result<()> {
        if self.0.len() != vertex_count {
            return Err(Error::Structure(format!(
                "{} vertex weights for a graph with {vertex_count} vertices",
                self.0.len()
            )));
        }
        Ok(())
    }
}

impl std::ops::Index<usize> for VertexWeights {
    type Output = Rational;

    fn index(&self, v: usize) -> &Rational {
        &self.0[v]
    }
}

/// A vertex sequence whose consecutive pairs are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk(Vec<usize>);

impl Walk {
    pub fn new<G: DirectedGraph + ?Sized>(g: &G, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Structure("empty walk".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::Structure(format!("vertex {v} not in graph")));
        }
        if let Some(pair) = vertices.windows(2).find(|p| !g.has_edge(p[0], p[1])) {
            return Err(Error::Structure(format!(
                "{} -> {} is not an edge",
                pair[0], pair[1]
            )));
        }
        Ok(Self(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of steps (edges) taken.
    pub fn steps(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_closed(&self) -> bool {
        self.0.first() == self.0.last()
    }
}

/// A simple directed cycle, stored as its distinct vertices rotated so the
/// smallest id comes first. The closing edge back to the first vertex is implied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Accepts the distinct vertices in traversal order (without repeating the
    /// first one) and canonicalises the rotation.
    pub fn new<G: DirectedGraph + ?Sized>(g: &G, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Structure("empty cycle".into()));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::Structure("cycle repeats a vertex".into()));
        }
        let k = vertices.len();
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if a >= g.vertex_count() || !g.has_edge(a, b) {
                return Err(Error::Structure(format!("{a} -> {b} is not an edge")));
            }
        }
        Ok(Self::canonical(vertices))
    }

    pub(crate) fn canonical(mut vertices: Vec<usize>) -> Self {
        let pivot = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map_or(0, |(i, _)| i);
        vertices.rotate_left(pivot);
        Self(vertices)
    }

    /// Builds from a closed walk `v0 .. vk = v0` that visits no vertex twice.
    pub fn from_closed_walk<G: DirectedGraph + ?Sized>(g: &G, walk: &Walk) -> Result<Self> {
        if !walk.is_closed() || walk.steps() == 0 {
            return Err(Error::Structure("walk is not closed".into()));
        }
        let vs = walk.vertices();
        Self::new(g, vs[..vs.len() - 1].to_vec())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edges in traversal order, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }

    pub fn to_walk(&self) -> Walk {
        let mut vs = self.0.clone();
        vs.push(self.0[0]);
        Walk(vs)
    }
}

/// Path weight: every visited position's vertex weight (start and end
/// included, repeats counted) plus every traversed edge's weight.
pub fn walk_weight<G: DirectedGraph + ?Sized>(
    g: &G,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
    walk: &Walk,
) -> Result<Rational> {
    let mut total: Rational = walk.vertices().iter().map(|&v| c[v].clone()).sum();
    for pair in walk.vertices().windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::Structure(format!(
                "{} -> {} is not an edge",
                pair[0], pair[1]
            )));
        }
        total += f.weight(pair[0], pair[1])?;
    }
    Ok(total)
}

/// Cycle weight: each distinct vertex and each edge counted exactly once.
pub fn cycle_weight<G: DirectedGraph + ?Sized>(
    g: &G,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
    cycle: &Cycle,
) -> Result<Rational> {
    let mut total: Rational = cycle.vertices().iter().map(|&v| c[v].clone()).sum();
    for (a, b) in cycle.edges() {
        if !g.has_edge(a, b) {
            return Err(Error::Structure(format!("{a} -> {b} is not an edge")));
        }
        total += f.weight(a, b)?;
    }
    Ok(total)
}

pub fn cycle_mean<G: DirectedGraph + ?Sized>(
    g: &G,
    c: &VertexWeights,
    f: &EdgeWeightAssignment,
    cycle: &Cycle,
) -> Result<Rational> {
    Ok(cycle_weight(g, c, f, cycle)? / int(cycle.len() as i64))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_index(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{token}`")))
}

/// Parses the edge-list format: a vertex count, then one `src dst` per line.
/// Blank lines and `#` comments are skipped. The result must be sink-free.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let (first_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    let vertex_count = parse_index(header, first_line, "vertex count")?;
    let mut sets = vec![BTreeSet::new(); vertex_count];
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::parse(line, "expected `src dst`"));
        };
        let from = parse_index(a, line, "source vertex")?;
        let to = parse_index(b, line, "target vertex")?;
        if from >= vertex_count || to >= vertex_count {
            return Err(Error::parse(
                line,
                format!("edge {from} {to} out of range 0..{vertex_count}"),
            ));
        }
        if !sets[from].insert(to) {
            return Err(Error::parse(line, format!("duplicate edge {from} {to}")));
        }
    }
    let g = Digraph {
        adjacency: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
    };
    g.ensure_sink_free()?;
    Ok(g)
}

/// Canonical edge-list text: count line, then edges sorted by `(src, dst)`.
pub fn serialize_digraph<G: DirectedGraph + ?Sized>(g: &G) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for from in 0..g.vertex_count() {
        for to in g.successors(from) {
            let _ = writeln!(out, "{from} {to}");
        }
    }
    out
}

/// Parses `vertex_id numerator[/denominator]` lines. Every vertex in
/// `0..vertex_count` must appear exactly once.
pub fn parse_vertex_weights(text: &str, vertex_count: usize) -> Result<VertexWeights> {
    let mut slots: Vec<Option<Rational>> = vec![None; vertex_count];
    let mut last_line = 0;
    for (line, content) in content_lines(text) {
        last_line = line;
        let mut tokens = content.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::parse(line, "expected `vertex weight`"));
        };
        let v = parse_index(a, line, "vertex id")?;
        let w =
            parse_rational(b).ok_or_else(|| Error::parse(line, format!("invalid weight `{b}`")))?;
        let slot = slots.get_mut(v).ok_or_else(|| {
            Error::parse(line, format!("vertex {v} out of range 0..{vertex_count}"))
        })?;
        if slot.replace(w).is_some() {
            return Err(Error::parse(
                line,
                format!("duplicate weight for vertex {v}"),
            ));
        }
    }
    let mut weights = Vec::with_capacity(vertex_count);
    for (v, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(w) => weights.push(w),
            None => {
                return Err(Error::parse(
                    last_line + 1,
                    format!("missing weight for vertex {v}"),
                ))
            }
        }
    }
    Ok(VertexWeights(weights))
}

pub fn serialize_vertex_weights(c: &VertexWeights) -> String {
    let mut out = String::new();
    for (v, w) in c.0.iter().enumerate() {
        let _ = writeln!(out, "{v} {}", format_exact(w));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    #[test]
    fn binary_words_of_length_three() {
        let g = DeBruijnGraph::new(2, 3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 16);
        // 010 -> {100, 101}
        assert_eq!(g.successors(0b010), vec![0b100, 0b101]);
        assert_eq!(g.successor(0b010, 1).unwrap(), 0b101);
        assert_eq!(g.label(0b010), "010");
    }

    #[test]
    fn word_length_one_is_complete_with_loops() {
        let g = DeBruijnGraph::new(2, 1).unwrap();
        assert_eq!(g.successors(0), vec![0, 1]);
        assert_eq!(g.successors(1), vec![0, 1]);
        assert_eq!(g.successor(0, 0).unwrap(), 0);
    }

    #[test]
    fn ternary_pairs() {
        let g = DeBruijnGraph::new(3, 2).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.to_digraph().edge_count(), 27);
        let d = DeBruijnGraph::new(2, 2).unwrap();
        assert_eq!(d.successor(0b01, 0).unwrap(), 0b10);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(DeBruijnGraph::new(1, 2), Err(Error::Domain(_))));
        assert!(matches!(DeBruijnGraph::new(2, 0), Err(Error::Domain(_))));
        assert!(matches!(
            DeBruijnGraph::new(2, 25),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            DeBruijnGraph::new(10, 200),
            Err(Error::Capacity { .. })
        ));
        assert!(DeBruijnGraph::with_cap(3, 3, 26).is_err());
        let g = DeBruijnGraph::new(2, 2).unwrap();
        assert!(g.successor(4, 0).is_err());
        assert!(g.successor(0, 2).is_err());
    }

    #[test]
    fn predecessors_invert_successors() {
        let g = DeBruijnGraph::new(3, 3).unwrap();
        for m in 0..g.vertex_count() {
            for p in g.predecessors(m) {
                assert!(g.successors(p).contains(&m));
            }
            assert_eq!(g.predecessors(m).len(), 3);
        }
    }

    #[test]
    fn recognizes_de_bruijn_edge_lists() {
        let g = DeBruijnGraph::new(3, 2).unwrap();
        assert_eq!(DeBruijnGraph::recognize(&g.to_digraph()), Some(g));
        let triangle = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(DeBruijnGraph::recognize(&triangle), None);
    }

    #[test]
    fn walk_weights() {
        let g = DeBruijnGraph::new(2, 1).unwrap();
        let c = VertexWeights::from_integers(&[1, 3]);
        let zero = EdgeWeightAssignment::zero(&g);
        let single = Walk::new(&g, vec![1]).unwrap();
        assert_eq!(walk_weight(&g, &c, &zero, &single).unwrap(), int(3));
        let w = Walk::new(&g, vec![0, 1, 0]).unwrap();
        assert_eq!(walk_weight(&g, &c, &zero, &w).unwrap(), int(5));

        let mut f = EdgeWeightAssignment::zero(&g);
        f.set(0, 1, int(-1));
        f.set(1, 0, int(1));
        assert_eq!(walk_weight(&g, &c, &f, &w).unwrap(), int(5));
    }

    #[test]
    fn walk_rejects_non_edges() {
        let g = DeBruijnGraph::new(2, 2).unwrap();
        assert!(matches!(
            Walk::new(&g, vec![0, 3]),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            Cycle::new(&g, vec![0, 1]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn self_loop_cycle_weight() {
        let g = DeBruijnGraph::new(2, 2).unwrap();
        let c = VertexWeights::from_integers(&[5, 0, 0, 0]);
        let mut f = EdgeWeightAssignment::zero(&g);
        f.set(0, 0, ratio(1, 2));
        let loop0 = Cycle::new(&g, vec![0]).unwrap();
        assert_eq!(cycle_weight(&g, &c, &f, &loop0).unwrap(), ratio(11, 2));
        assert_eq!(cycle_mean(&g, &c, &f, &loop0).unwrap(), ratio(11, 2));
    }

    #[test]
    fn constant_weights_give_constant_mean() {
        let g = DeBruijnGraph::new(2, 3).unwrap();
        let c = VertexWeights::constant(8, ratio(7, 3));
        let f = EdgeWeightAssignment::zero(&g);
        let cyc = Cycle::new(&g, vec![1, 2, 5, 3, 6, 4]).unwrap();
        assert_eq!(cycle_mean(&g, &c, &f, &cyc).unwrap(), ratio(7, 3));
    }

    #[test]
    fn cycle_is_canonicalised() {
        let g = DeBruijnGraph::new(2, 2).unwrap();
        let a = Cycle::new(&g, vec![2, 1]).unwrap();
        assert_eq!(a.vertices(), &[1, 2]);
        let w = Walk::new(&g, vec![2, 1, 2]).unwrap();
        assert_eq!(Cycle::from_closed_walk(&g, &w).unwrap(), a);
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_digraph("3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g.adjacency(), &[vec![1], vec![2], vec![0]]);
        let text = "# comment\n3\n\n2 0\n0 1\n1 2\n";
        assert_eq!(
            serialize_digraph(&parse_digraph(text).unwrap()),
            "3\n0 1\n1 2\n2 0\n"
        );
        assert!(matches!(
            parse_digraph("3\n0 1\n1 0\n"),
            Err(Error::Sink { vertex: 2 })
        ));
        assert!(matches!(
            parse_digraph("2\n0 1\n1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_digraph("2\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("2\n0 1\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_digraph(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn weight_parsing() {
        let c = parse_vertex_weights("1 3\n0 -1/2\n", 2).unwrap();
        assert_eq!(c.as_slice(), &[ratio(-1, 2), int(3)]);
        assert_eq!(serialize_vertex_weights(&c), "0 -1/2\n1 3\n");
        let err = parse_vertex_weights("0 1\n", 2).unwrap_err();
        assert!(err.to_string().contains("vertex 1"), "{err}");
        assert!(parse_vertex_weights("0 1\n0 2\n1 1\n", 2).is_err());
        assert!(parse_vertex_weights("0 1/0\n1 1\n", 2).is_err());
        assert!(parse_vertex_weights("0 1\n1 1\n2 1\n", 2).is_err());
    }

    fn digit_string_successor(n: usize, d: usize, m: usize, digit: usize) -> usize {
        let mut digits = Vec::new();
        let mut rest = m;
        for _ in 0..d {
            digits.push(rest % n);
            rest /= n;
        }
        digits.reverse();
        digits.remove(0);
        digits.push(digit);
        digits.iter().fold(0, |acc, x| acc * n + x)
    }

    proptest! {
        #[test]
        fn successor_matches_digit_strings(n in 2usize..6, d in 1usize..6, seed in any::<u64>(), digit in 0usize..6) {
            let g = DeBruijnGraph::new(n, d).unwrap();
            let m = (seed as usize) % g.vertex_count();
            let digit = digit % n;
            let s = g.successor(m, digit).unwrap();
            prop_assert_eq!(s, digit_string_successor(n, d, m, digit));
            prop_assert_eq!(s % n, digit);
            prop_assert!(g.has_edge(m, s));
        }

        #[test]
        fn degrees_are_n(n in 2usize..5, d in 1usize..5) {
            let g = DeBruijnGraph::new(n, d).unwrap();
            let dg = g.to_digraph();
            let mut indegree = vec![0; g.vertex_count()];
            for (_, to) in dg.edges() {
                indegree[to] += 1;
            }
            prop_assert!(indegree.iter().all(|&x| x == n));
            prop_assert_eq!(dg.regular_degree().unwrap(), n);
        }

        #[test]
        fn concatenated_walks_share_the_junction(steps in proptest::collection::vec(0usize..2, 1..12), split in 0usize..12, ws in proptest::collection::vec(-9i64..9, 4), fs in proptest::collection::vec(-9i64..9, 8)) {
            let g = DeBruijnGraph::new(2, 2).unwrap();
            let c = VertexWeights::from_integers(&ws);
            let mut f = EdgeWeightAssignment::zero(&g);
            for (i, (a, b)) in g.to_digraph().edges().collect::<Vec<_>>().into_iter().enumerate() {
                f.set(a, b, int(fs[i]));
            }
            let mut vs = vec![0usize];
            for s in &steps {
                let last = *vs.last().unwrap();
                vs.push(g.succ(last, *s));
            }
            let cut = split % vs.len();
            let whole = walk_weight(&g, &c, &f, &Walk::new(&g, vs.clone()).unwrap()).unwrap();
            let left = walk_weight(&g, &c, &f, &Walk::new(&g, vs[..=cut].to_vec()).unwrap()).unwrap();
            let right = walk_weight(&g, &c, &f, &Walk::new(&g, vs[cut..].to_vec()).unwrap()).unwrap();
            prop_assert_eq!(whole, left + right - c[vs[cut]].clone());
        }

        #[test]
        fn cycle_weight_is_rotation_invariant(rot in 0usize..6, ws in proptest::collection::vec(-9i64..9, 8)) {
            let g = DeBruijnGraph::new(2, 3).unwrap();
            let c = VertexWeights::from_integers(&ws);
            let mut f = EdgeWeightAssignment::zero(&g);
            f.set(1, 2, int(3));
            f.set(6, 4, int(-2));
            let base = vec![1, 2, 5, 3, 6, 4];
            let mut rotated = base.clone();
            rotated.rotate_left(rot);
            let a = cycle_weight(&g, &c, &f, &Cycle::new(&g, base).unwrap()).unwrap();
            let b = cycle_weight(&g, &c, &f, &Cycle::new(&g, rotated).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn edge_list_round_trip(n in 2usize..4, d in 1usize..4) {
            let g = DeBruijnGraph::new(n, d).unwrap();
            let text = serialize_digraph(&g);
            let parsed = parse_digraph(&text).unwrap();
            prop_assert_eq!(&parsed, &g.to_digraph());
            prop_assert_eq!(serialize_digraph(&parsed), text);
        }
    }
}
