//! Simple undirected graphs on at most 62 vertices, one `u64` adjacency row
//! per vertex, plus the vertex-set algebra used by every other module.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest order representable (graph6 short form limit).
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {n} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge { n: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("adjacency is not symmetric at ({u}, {v})")]
    Asymmetric { u: usize, v: usize },
    #[error("vertex set is not independent")]
    NotIndependent,
}

/// A set of vertices of a graph on at most 62 vertices, stored as a bit mask.
///
/// Sets order by their bit pattern read as an integer; every "lexicographic"
/// tie-break in this crate refers to that order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, …, n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    /// Members as 1-indexed labels, ascending. This is the external form used
    /// in every report.
    pub fn to_labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// Maps the members through `map` (new index → original index).
    pub fn lift(self, map: &[usize]) -> VertexSet {
        VertexSet::from_vertices(self.iter().map(|v| map[v]))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|v| v + 1))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Immutable simple graph. Vertices are `0..n`; the order may be zero only
/// for graphs derived by deleting every vertex (e.g. localizing at a maximal
/// independent set).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { n });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { v: u });
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from adjacency rows, validating symmetry, irreflexivity
    /// and that no bit above `n - 1` is set.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge { n });
        }
        let mask = VertexSet::full(n).bits();
        for (u, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                let v = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if (row >> u) & 1 == 1 {
                return Err(GraphError::SelfLoop { v: u });
            }
            for v in VertexSet(row).iter() {
                if (adj[v] >> u) & 1 == 0 {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Builds without validation; callers guarantee the invariants.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { n: adj.len(), adj }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u] & !VertexSet::full(u + 1).bits())
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        ds.sort_unstable_by(|a, b| b.cmp(a));
        ds
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0)
    }

    /// `N_G(A)`: vertices outside `a` adjacent to some member of `a`.
    pub fn open_neighborhood(&self, a: VertexSet) -> VertexSet {
        let mut acc = 0u64;
        for v in a.iter() {
            acc |= self.adj[v];
        }
        VertexSet(acc & !a.bits())
    }

    /// `N_G[A] = A ∪ N_G(A)`.
    pub fn closed_neighborhood(&self, a: VertexSet) -> VertexSet {
        self.open_neighborhood(a).union(a)
    }

    /// Subgraph induced by `keep`, with `map[new] = original`.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Graph, Vec<usize>) {
        let keep = keep.intersection(self.vertices());
        let map: Vec<usize> = keep.iter().collect();
        let adj = map
            .iter()
            .map(|&u| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |acc, (j, _)| acc | (1 << j))
            })
            .collect();
        (Graph::from_rows_unchecked(adj), map)
    }

    /// `G − v` with the index map back into `self`.
    pub fn delete_vertex(&self, v: usize) -> (Graph, Vec<usize>) {
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Localization `G_A = G − N_G[A]`; `a` must be independent.
    pub fn localization(&self, a: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if !self.is_independent(a) {
            return Err(GraphError::NotIndependent);
        }
        Ok(self.induced_subgraph(self.vertices().difference(self.closed_neighborhood(a))))
    }

    #[inline]
    pub fn is_independent(&self, a: VertexSet) -> bool {
        a.iter().all(|v| self.adj[v] & a.bits() == 0)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reachable_within(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .open_neighborhood(frontier)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// True iff one traversal from vertex 0 reaches every vertex. The
    /// zero-order graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reachable_within(0, self.vertices()) == self.vertices()
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn component_sets(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reachable_within(v, rest);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Connected components as induced subgraphs with index maps, ordered by
    /// smallest original vertex.
    pub fn connected_components(&self) -> Vec<(Graph, Vec<usize>)> {
        self.component_sets()
            .into_iter()
            .map(|c| self.induced_subgraph(c))
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", u + 1, v + 1)?;
        }
        f.write_str("])")
    }
}
