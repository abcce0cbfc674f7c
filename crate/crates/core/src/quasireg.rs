//! λ-quasi-regularizability (`λ|A| ≤ |N(A)|` for every independent `A`),
//! the local expansion property of connected `W_2` graphs and the
//! `n ≥ 3α` threshold equivalence.

use serde::Serialize;

use crate::enumeration::{enumerate_independent_sets, independence_number};
use crate::graph::{Graph, VertexSet};
use crate::rational::{serialize_ratio, Lambda, Rational};
use crate::wp::{is_wp_with_caps, WpCaps};

/// An independent set and the size of its open neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpansionWitness {
    pub set: VertexSet,
    pub neighborhood_size: usize,
    /// `λ|A| − |N(A)|` when positive.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_opt_ratio"
    )]
    pub deficiency: Option<Rational>,
}

fn serialize_opt_ratio<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_ratio(r, s),
        None => s.serialize_none(),
    }
}

impl ExpansionWitness {
    fn new(g: &Graph, set: VertexSet, lambda: Option<Lambda>) -> Self {
        let neighborhood_size = g.open_neighborhood(set).len();
        let deficiency = lambda
            .map(|l| {
                l.ratio() * Rational::from_integer(set.len() as i64)
                    - Rational::from_integer(neighborhood_size as i64)
            })
            .filter(|d| *d > Rational::from_integer(0));
        ExpansionWitness {
            set,
            neighborhood_size,
            deficiency,
        }
    }
}

/// `(holds, first violating set)`. The empty set is skipped.
pub fn is_lambda_quasi_regularizable(
    g: &Graph,
    lambda: Lambda,
) -> (bool, Option<ExpansionWitness>) {
    let violator = enumerate_independent_sets(g, None)
        .skip(1)
        .find(|&a| !lambda.times_at_most(a.len(), g.open_neighborhood(a).len()));
    match violator {
        Some(a) => (false, Some(ExpansionWitness::new(g, a, Some(lambda)))),
        None => (true, None),
    }
}

/// `min |N(A)|/|A|` over nonempty independent sets, with the first minimizer.
/// `None` only for the order-zero graph.
pub fn min_expansion_ratio(g: &Graph) -> Option<(Rational, ExpansionWitness)> {
    let mut best: Option<(Rational, VertexSet)> = None;
    for a in enumerate_independent_sets(g, None).skip(1) {
        let r = Rational::new(g.open_neighborhood(a).len() as i64, a.len() as i64);
        if best.is_none_or(|(b, _)| r < b) {
            best = Some((r, a));
        }
    }
    best.map(|(r, a)| (r, ExpansionWitness::new(g, a, None)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalExpansionReport {
    pub status: CheckStatus,
    pub sets_checked: usize,
    /// Non-maximum independent sets with `|N(A)| < 2|A|`.
    pub violations: Vec<ExpansionWitness>,
}

/// Refuses with `NotApplicable` unless `g` is connected and in `W_2`.
pub fn verify_local_expansion(g: &Graph) -> LocalExpansionReport {
    match premise(g) {
        Ok(()) => verify_local_expansion_unchecked(g, independence_number(g)),
        Err(status) => LocalExpansionReport {
            status,
            sets_checked: 0,
            violations: Vec::new(),
        },
    }
}

fn premise(g: &Graph) -> Result<(), CheckStatus> {
    if !g.is_connected() {
        return Err(CheckStatus::NotApplicable);
    }
    match is_wp_with_caps(g, 2, WpCaps::default()) {
        Ok(w) if w.member => Ok(()),
        Ok(_) => Err(CheckStatus::NotApplicable),
        Err(_) => Err(CheckStatus::CapExceeded),
    }
}

/// Scans every independent `A` with `|A| < α`; the caller has established
/// that `g` is connected and in `W_2`.
pub fn verify_local_expansion_unchecked(g: &Graph, alpha: usize) -> LocalExpansionReport {
    let two = Lambda::integer(2);
    let mut sets_checked = 0;
    let mut violations = Vec::new();
    for a in enumerate_independent_sets(g, None).filter(|a| a.len() < alpha) {
        sets_checked += 1;
        if !two.times_at_most(a.len(), g.open_neighborhood(a).len()) {
            violations.push(ExpansionWitness::new(g, a, Some(two)));
        }
    }
    LocalExpansionReport {
        status: if violations.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        sets_checked,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub status: CheckStatus,
    pub quasi_regularizable: bool,
    pub n_at_least_3_alpha: bool,
    /// First violating set when 2-quasi-regularizability fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ExpansionWitness>,
}

/// Compares 2-quasi-regularizability with `n ≥ 3α` on a connected `W_2` graph.
pub fn check_threshold_equivalence(g: &Graph) -> ThresholdReport {
    match premise(g) {
        Ok(()) => check_threshold_equivalence_unchecked(g, independence_number(g)),
        Err(status) => ThresholdReport {
            status,
            quasi_regularizable: false,
            n_at_least_3_alpha: false,
            witness: None,
        },
    }
}

pub fn check_threshold_equivalence_unchecked(g: &Graph, alpha: usize) -> ThresholdReport {
    let (holds, witness) = is_lambda_quasi_regularizable(g, Lambda::integer(2));
    let threshold = g.order() >= 3 * alpha;
    ThresholdReport {
        status: if holds == threshold {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        quasi_regularizable: holds,
        n_at_least_3_alpha: threshold,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn quasi_regularizability_examples() {
        let (holds, w) = is_lambda_quasi_regularizable(&c5(), Lambda::integer(2));
        assert!(!holds);
        let w = w.unwrap();
        assert_eq!(w.set, VertexSet::from_vertices([0, 2]));
        assert_eq!(w.neighborhood_size, 3);
        assert_eq!(w.deficiency, Some(Rational::from_integer(1)));

        assert_eq!(
            is_lambda_quasi_regularizable(&c5(), Lambda::integer(1)),
            (true, None)
        );
        assert_eq!(
            is_lambda_quasi_regularizable(&k2(), Lambda::integer(1)),
            (true, None)
        );
    }

    #[test]
    fn min_ratio_examples() {
        let (r, w) = min_expansion_ratio(&c5()).unwrap();
        assert_eq!(r, Rational::new(3, 2));
        assert_eq!(w.set, VertexSet::from_vertices([0, 2]));

        let (r, w) = min_expansion_ratio(&k2()).unwrap();
        assert_eq!(r, Rational::from_integer(1));
        assert_eq!(w.set, VertexSet::singleton(0));

        let (r, w) = min_expansion_ratio(&c4()).unwrap();
        assert_eq!(r, Rational::from_integer(1));
        assert_eq!(w.set, VertexSet::from_vertices([0, 2]));
        assert_eq!(w.neighborhood_size, 2);

        assert!(min_expansion_ratio(&Graph::empty(0).unwrap()).is_none());
    }

    #[test]
    fn local_expansion_examples() {
        let r = verify_local_expansion(&c5());
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.sets_checked, 6);

        let r = verify_local_expansion(&k2());
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.sets_checked, 1);

        assert_eq!(
            verify_local_expansion(&c4()).status,
            CheckStatus::NotApplicable
        );
    }

    #[test]
    fn threshold_examples() {
        let r = check_threshold_equivalence(&c5());
        assert_eq!(r.status, CheckStatus::Pass);
        assert!(!r.quasi_regularizable && !r.n_at_least_3_alpha);
        assert_eq!(r.witness.unwrap().set, VertexSet::from_vertices([0, 2]));

        let r = check_threshold_equivalence(&k2());
        assert_eq!(r.status, CheckStatus::Pass);
        assert!(!r.quasi_regularizable && !r.n_at_least_3_alpha);
        let w = r.witness.unwrap();
        assert_eq!((w.set, w.neighborhood_size), (VertexSet::singleton(0), 1));

        assert_eq!(
            check_threshold_equivalence(&c4()).status,
            CheckStatus::NotApplicable
        );
    }
}
