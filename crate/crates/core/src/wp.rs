//! Membership in the classes `W_p`, well-coveredness, the avoidance property
//! and the structural audit of `W_2` members.
//!
//! `G ∈ W_p` when `n(G) ≥ p` and every tuple of `p` pairwise disjoint
//! independent sets `A_1..A_p` extends to pairwise disjoint maximum
//! independent sets `S_i ⊇ A_i`. The test here is the definition itself:
//! tuples are visited in lexicographic order of their bit patterns and each
//! is handed to a backtracking extension search.

use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{
    enumerate_independent_sets, independence_number, maximum_independent_sets, OmegaFamily,
};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WpError {
    #[error("p must be at least 1")]
    ZeroP,
    #[error("tuple sets must be independent and pairwise disjoint")]
    BadTuple,
    #[error("graph has an isolated vertex")]
    HasIsolatedVertex,
    #[error("set is not independent")]
    NotIndependent,
    #[error("set is already maximum")]
    AMaximum,
    #[error("vertex {0} belongs to the set")]
    VertexInSet(usize),
    #[error("cap exceeded: {what} = {value} > {limit}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

/// Limits for the definitional membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpCaps {
    pub max_order: usize,
    pub max_omega: usize,
}

impl Default for WpCaps {
    fn default() -> Self {
        WpCaps {
            max_order: 14,
            max_omega: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WpWitness {
    pub p: usize,
    pub member: bool,
    /// Lexicographically first tuple with no disjoint extension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_tuple: Option<Vec<VertexSet>>,
    /// Extension of the all-empty tuple, for members.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<Vec<VertexSet>>,
}

fn validate_tuple(g: &Graph, tuple: &[VertexSet]) -> Result<(), WpError> {
    let mut used = VertexSet::EMPTY;
    for &a in tuple {
        if !a.is_subset(g.vertices()) || !g.is_independent(a) || !a.is_disjoint(used) {
            return Err(WpError::BadTuple);
        }
        used = used.union(a);
    }
    Ok(())
}

/// Pairwise disjoint `S_1..S_p ∈ Ω` with `A_i ⊆ S_i`, lexicographically
/// first, or `None` when no such extension exists.
pub fn disjoint_extension(
    g: &Graph,
    tuple: &[VertexSet],
    omega: &OmegaFamily,
) -> Result<Option<Vec<VertexSet>>, WpError> {
    validate_tuple(g, tuple)?;
    Ok(extend(tuple, omega))
}

fn extend(tuple: &[VertexSet], omega: &OmegaFamily) -> Option<Vec<VertexSet>> {
    fn go(
        i: usize,
        tuple: &[VertexSet],
        rest: &[VertexSet],
        omega: &OmegaFamily,
        used: VertexSet,
        out: &mut Vec<VertexSet>,
    ) -> bool {
        if i == tuple.len() {
            return true;
        }
        // S_i must avoid every set chosen so far and every later A_j
        let forbidden = used.union(rest[i]);
        for s in omega.supersets(tuple[i]) {
            if s.is_disjoint(forbidden) {
                out.push(s);
                if go(i + 1, tuple, rest, omega, used.union(s), out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }
    // rest[i] = union of A_j for j > i
    let mut rest = vec![VertexSet::EMPTY; tuple.len()];
    for i in (0..tuple.len().saturating_sub(1)).rev() {
        rest[i] = rest[i + 1].union(tuple[i + 1]);
    }
    let mut out = Vec::with_capacity(tuple.len());
    go(0, tuple, &rest, omega, VertexSet::EMPTY, &mut out).then_some(out)
}

/// Definitional `W_p` test with default caps.
pub fn is_wp(g: &Graph, p: usize) -> Result<WpWitness, WpError> {
    is_wp_with_caps(g, p, WpCaps::default())
}

pub fn is_wp_with_caps(g: &Graph, p: usize, caps: WpCaps) -> Result<WpWitness, WpError> {
    if p == 0 {
        return Err(WpError::ZeroP);
    }
    if g.order() > caps.max_order {
        return Err(WpError::CapExceeded {
            what: "order",
            value: g.order(),
            limit: caps.max_order,
        });
    }
    let omega = maximum_independent_sets(g);
    if omega.len() > caps.max_omega {
        return Err(WpError::CapExceeded {
            what: "maximum independent sets",
            value: omega.len(),
            limit: caps.max_omega,
        });
    }
    Ok(wp_with_omega(g, p, &omega))
}

/// Definitional test given a precomputed `Ω(G)`; no caps applied.
pub fn wp_with_omega(g: &Graph, p: usize, omega: &OmegaFamily) -> WpWitness {
    let empty = vec![VertexSet::EMPTY; p];
    let first = extend(&empty, omega);
    if g.order() < p || first.is_none() {
        return WpWitness {
            p,
            member: false,
            failing_tuple: Some(empty),
            extension: None,
        };
    }

    let sets: Vec<VertexSet> = enumerate_independent_sets(g, None).collect();
    let mut search = TupleSearch {
        sets: &sets,
        omega,
        tuple: Vec::with_capacity(p),
        p,
        last_extension: first.clone().unwrap_or_default(),
    };
    match search.first_failure(VertexSet::EMPTY) {
        Some(failing) => WpWitness {
            p,
            member: false,
            failing_tuple: Some(failing),
            extension: None,
        },
        None => WpWitness {
            p,
            member: true,
            failing_tuple: None,
            extension: first,
        },
    }
}

struct TupleSearch<'a> {
    sets: &'a [VertexSet],
    omega: &'a OmegaFamily,
    tuple: Vec<VertexSet>,
    p: usize,
    // A tuple covered componentwise by a known extension extends as well.
    last_extension: Vec<VertexSet>,
}

impl TupleSearch<'_> {
    fn first_failure(&mut self, used: VertexSet) -> Option<Vec<VertexSet>> {
        if self.tuple.len() == self.p {
            return (!self.check()).then(|| self.tuple.clone());
        }
        for &a in self.sets {
            if !a.is_disjoint(used) {
                continue;
            }
            self.tuple.push(a);
            if let Some(f) = self.first_failure(used.union(a)) {
                return Some(f);
            }
            self.tuple.pop();
        }
        None
    }

    fn check(&mut self) -> bool {
        if self
            .tuple
            .iter()
            .zip(&self.last_extension)
            .all(|(a, s)| a.is_subset(*s))
        {
            return true;
        }
        if !self.tuple.iter().all(|a| self.omega.has_superset(*a)) {
            return false;
        }
        match extend(&self.tuple, self.omega) {
            Some(ext) => {
                self.last_extension = ext;
                true
            }
            None => false,
        }
    }
}

/// Every maximal independent set has size `α`.
pub fn is_well_covered(g: &Graph) -> bool {
    let alpha = independence_number(g);
    let all = g.vertices();
    enumerate_independent_sets(g, None)
        .filter(|a| a.len() < alpha)
        .all(|a| g.closed_neighborhood(a) != all)
}

/// Well-covered, and `G − v` well-covered with the same independence number
/// for every vertex `v`.
pub fn is_one_well_covered(g: &Graph) -> Result<bool, WpError> {
    if g.has_isolated_vertex() {
        return Err(WpError::HasIsolatedVertex);
    }
    if !is_well_covered(g) {
        return Ok(false);
    }
    let alpha = independence_number(g);
    Ok((0..g.order()).all(|v| {
        let (h, _) = g.delete_vertex(v);
        independence_number(&h) == alpha && is_well_covered(&h)
    }))
}

/// Lexicographically first `S ∈ Ω(G)` with `a ⊆ S` and `v ∉ S`.
pub fn avoidance_check(g: &Graph, a: VertexSet, v: usize) -> Result<Option<VertexSet>, WpError> {
    avoidance_with_omega(g, &maximum_independent_sets(g), a, v)
}

pub fn avoidance_with_omega(
    g: &Graph,
    omega: &OmegaFamily,
    a: VertexSet,
    v: usize,
) -> Result<Option<VertexSet>, WpError> {
    if !g.is_independent(a) {
        return Err(WpError::NotIndependent);
    }
    if a.len() >= omega.alpha {
        return Err(WpError::AMaximum);
    }
    if a.contains(v) {
        return Err(WpError::VertexInSet(v));
    }
    Ok(omega.supersets(a).find(|s| !s.contains(v)))
}

/// Why the localization fact failed for some independent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LocalizationFailure {
    NotW2 {
        set: VertexSet,
    },
    AlphaDrop {
        set: VertexSet,
        expected: usize,
        found: usize,
    },
    CapExceeded {
        set: VertexSet,
    },
}

/// Outcome of checking the five standard facts on a `W_2` member. Each
/// field holds the first counterexample found, if any.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct W2Audit {
    pub isolated_vertex: Option<usize>,
    pub localization: Option<LocalizationFailure>,
    pub component: Option<VertexSet>,
    pub avoidance: Option<(VertexSet, usize)>,
    pub leaf: Option<usize>,
    /// Non-maximum independent sets examined for the localization and
    /// avoidance facts.
    pub sets_checked: usize,
}

impl W2Audit {
    pub fn passes(&self) -> bool {
        self.isolated_vertex.is_none()
            && self.localization.is_none()
            && self.component.is_none()
            && self.avoidance.is_none()
            && self.leaf.is_none()
    }

    /// Names of the facts that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.isolated_vertex.is_some() {
            out.push("no-isolated-vertex");
        }
        if self.localization.is_some() {
            out.push("localization");
        }
        if self.component.is_some() {
            out.push("componentwise");
        }
        if self.avoidance.is_some() {
            out.push("avoidance");
        }
        if self.leaf.is_some() {
            out.push("leafless");
        }
        out
    }
}

/// Audits a graph already known to be in `W_2`. Localizations and
/// components are re-tested with the definitional test under `caps`.
pub fn w2_structure_audit(g: &Graph, caps: WpCaps) -> W2Audit {
    let omega = maximum_independent_sets(g);
    let alpha = omega.alpha;
    let mut audit = W2Audit {
        isolated_vertex: (0..g.order()).find(|&v| g.degree(v) == 0),
        ..W2Audit::default()
    };

    for a in enumerate_independent_sets(g, None).filter(|a| a.len() < alpha) {
        audit.sets_checked += 1;
        if audit.localization.is_none() {
            let (ga, _) = g.localization(a).expect("enumerated sets are independent");
            let failure = match is_wp_with_caps(&ga, 2, caps) {
                Err(_) => Some(LocalizationFailure::CapExceeded { set: a }),
                Ok(w) if !w.member => Some(LocalizationFailure::NotW2 { set: a }),
                Ok(_) => {
                    let found = independence_number(&ga);
                    (found != alpha - a.len()).then_some(LocalizationFailure::AlphaDrop {
                        set: a,
                        expected: alpha - a.len(),
                        found,
                    })
                }
            };
            audit.localization = failure;
        }
        if audit.avoidance.is_none() {
            audit.avoidance = g
                .vertices()
                .difference(a)
                .iter()
                .find(|&v| !omega.supersets(a).any(|s| !s.contains(v)))
                .map(|v| (a, v));
        }
    }

    let components = g.component_sets();
    if components.len() > 1 {
        audit.component = components.iter().copied().find(|&c| {
            let (h, _) = g.induced_subgraph(c);
            !matches!(is_wp_with_caps(&h, 2, caps), Ok(w) if w.member)
        });
    }

    audit.leaf = (0..g.order()).find(|&v| {
        g.degree(v) == 1 && {
            let comp = components.iter().find(|c| c.contains(v)).expect("covered");
            comp.len() != 2
        }
    });
    audit
}
