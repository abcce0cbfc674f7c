//! Named graph families, corona products and disjoint unions.
//!
//! Text forms: `C5` (cycle), `P4` (path), `K3` (complete), `K2,3` (complete
//! bipartite), `E4` (edgeless). `G*H` is the corona of `G` and `H`, `G+H` the
//! disjoint union; `*` binds tighter than `+`. Anything else is read as a
//! graph6 record.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_ORDER};
use crate::graph6::{parse_graph6, Graph6Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid family spec {0:?}")]
    BadSpec(String),
    #[error("resulting order {n} exceeds {MAX_ORDER}")]
    OrderTooLarge { n: usize },
    #[error("{0:?} is neither a family spec nor valid graph6: {1}")]
    Unrecognized(String, Graph6Error),
}

impl From<GraphError> for ConstructionError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::OrderTooLarge { n } => ConstructionError::OrderTooLarge { n },
            other => ConstructionError::BadSpec(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
}

impl FamilySpec {
    pub fn order(self) -> usize {
        match self {
            FamilySpec::Cycle(n)
            | FamilySpec::Path(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Empty(n) => n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
        }
    }

    fn validate(self) -> Result<Self, ConstructionError> {
        let sizes_ok = match self {
            FamilySpec::Cycle(n) => n >= 3,
            FamilySpec::Path(n) | FamilySpec::Complete(n) | FamilySpec::Empty(n) => n >= 1,
            FamilySpec::CompleteBipartite(a, b) => a >= 1 && b >= 1,
        };
        if !sizes_ok {
            return Err(ConstructionError::BadSpec(self.to_string()));
        }
        if self.order() > MAX_ORDER {
            return Err(ConstructionError::OrderTooLarge { n: self.order() });
        }
        Ok(self)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Cycle(n) => write!(f, "C{n}"),
            FamilySpec::Path(n) => write!(f, "P{n}"),
            FamilySpec::Complete(n) => write!(f, "K{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            FamilySpec::Empty(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::BadSpec(s.to_string());
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        let num = |t: &str| -> Result<usize, ConstructionError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        let spec = match kind {
            'C' => FamilySpec::Cycle(num(rest)?),
            'P' => FamilySpec::Path(num(rest)?),
            'E' => FamilySpec::Empty(num(rest)?),
            'K' => match rest.split_once(',') {
                Some((a, b)) => FamilySpec::CompleteBipartite(num(a)?, num(b)?),
                None => FamilySpec::Complete(num(rest)?),
            },
            _ => return Err(bad()),
        };
        spec.validate()
    }
}

/// Cycle edges `i–(i+1 mod n)`, path edges `i–(i+1)`; the bipartite sides
/// are `0..a` and `a..a+b`.
pub fn make_family(spec: FamilySpec) -> Result<Graph, ConstructionError> {
    let spec = spec.validate()?;
    let n = spec.order();
    let edges: Vec<(usize, usize)> = match spec {
        FamilySpec::Cycle(n) => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        FamilySpec::Path(n) => (1..n).map(|i| (i - 1, i)).collect(),
        FamilySpec::Complete(n) => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        FamilySpec::CompleteBipartite(a, b) => (0..a)
            .flat_map(|i| (a..a + b).map(move |j| (i, j)))
            .collect(),
        FamilySpec::Empty(_) => Vec::new(),
    };
    Ok(Graph::from_edges(n, &edges)?)
}

/// Corona `G∘H`: `G` on vertices `0..n(G)`, then copy `i` of `H` on
/// `n(G) + i·n(H) ..`, with vertex `i` of `G` joined to all of copy `i`.
pub fn corona(g: &Graph, h: &Graph) -> Result<Graph, ConstructionError> {
    let (gn, hn) = (g.order(), h.order());
    let n = gn * (1 + hn);
    if n > MAX_ORDER {
        return Err(ConstructionError::OrderTooLarge { n });
    }
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..gn {
        let base = gn + i * hn;
        edges.extend(h.edges().map(|(u, v)| (base + u, base + v)));
        edges.extend((0..hn).map(|u| (i, base + u)));
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Block-diagonal union, members laid out in order.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph, ConstructionError> {
    let n: usize = gs.iter().map(Graph::order).sum();
    if n > MAX_ORDER {
        return Err(ConstructionError::OrderTooLarge { n });
    }
    let mut edges = Vec::new();
    let mut base = 0;
    for g in gs {
        edges.extend(g.edges().map(|(u, v)| (base + u, base + v)));
        base += g.order();
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Reads a family spec, corona/union expression, or graph6 record.
pub fn parse_graph_spec(text: &str) -> Result<Graph, ConstructionError> {
    let text = text.trim();
    if text.contains('+') {
        let parts = text
            .split('+')
            .map(parse_graph_spec)
            .collect::<Result<Vec<_>, _>>()?;
        return disjoint_union(&parts);
    }
    // left-associative: A*B*C = (A*B)*C
    if let Some((g, h)) = text.rsplit_once('*') {
        return corona(&parse_graph_spec(g)?, &parse_graph_spec(h)?);
    }
    match text.parse::<FamilySpec>() {
        Ok(spec) => make_family(spec),
        Err(ConstructionError::OrderTooLarge { n }) => Err(ConstructionError::OrderTooLarge { n }),
        Err(_) => parse_graph6(text.as_bytes())
            .map_err(|e| ConstructionError::Unrecognized(text.to_string(), e)),
    }
}
