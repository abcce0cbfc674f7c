//! Independent sets: enumeration, independence number, the family of maximum
//! independent sets and exact independence polynomials.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::graph::{Graph, VertexSet};

pub fn is_independent(g: &Graph, a: VertexSet) -> bool {
    g.is_independent(a)
}

/// Lowest-index vertex of maximum degree inside `within`, with that degree.
fn pivot(g: &Graph, within: VertexSet) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for v in within.iter() {
        let d = g.neighbors(v).intersection(within).len();
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((v, d));
        }
    }
    best
}

/// Independence number by branch and bound.
pub fn independence_number(g: &Graph) -> usize {
    fn search(g: &Graph, cand: VertexSet, size: usize, best: &mut usize) {
        if size + cand.len() <= *best {
            return;
        }
        let Some((v, d)) = pivot(g, cand) else {
            *best = size;
            return;
        };
        if d == 0 {
            *best = size + cand.len();
            return;
        }
        search(
            g,
            cand.difference(g.neighbors(v)).without(v),
            size + 1,
            best,
        );
        search(g, cand.without(v), size, best);
    }
    let mut best = 0;
    search(g, g.vertices(), 0, &mut best);
    best
}

/// Iterator over independent sets in increasing bit-pattern order.
///
/// Vertices are decided from the highest index down, "exclude" before
/// "include", which makes the leaf order the numeric order of the masks.
pub struct IndependentSets<'g> {
    g: &'g Graph,
    size_filter: Option<usize>,
    // (undecided prefix length, chosen, blocked)
    stack: Vec<(usize, u64, u64)>,
}

impl Iterator for IndependentSets<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        while let Some((idx, chosen, blocked)) = self.stack.pop() {
            let size = chosen.count_ones() as usize;
            if let Some(k) = self.size_filter {
                let open = VertexSet::full(idx).bits() & !blocked;
                if size > k || size + (open.count_ones() as usize) < k {
                    continue;
                }
            }
            if idx == 0 {
                return Some(VertexSet::from_bits(chosen));
            }
            let v = idx - 1;
            if (blocked >> v) & 1 == 0 {
                self.stack
                    .push((v, chosen | (1 << v), blocked | self.g.neighbors(v).bits()));
            }
            self.stack.push((v, chosen, blocked));
        }
        None
    }
}

/// Every independent set exactly once, in increasing bit-pattern order;
/// with `size_filter`, only the sets of that size.
pub fn enumerate_independent_sets(g: &Graph, size_filter: Option<usize>) -> IndependentSets<'_> {
    IndependentSets {
        g,
        size_filter,
        stack: vec![(g.order(), 0, 0)],
    }
}

/// `Ω(G)`: all maximum independent sets in increasing bit-pattern order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaFamily {
    pub alpha: usize,
    pub sets: Vec<VertexSet>,
}

impl OmegaFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members containing `a`, in order.
    pub fn supersets(&self, a: VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
        self.sets.iter().copied().filter(move |s| a.is_subset(*s))
    }

    pub fn has_superset(&self, a: VertexSet) -> bool {
        self.sets.iter().any(|s| a.is_subset(*s))
    }
}

pub fn maximum_independent_sets(g: &Graph) -> OmegaFamily {
    let alpha = independence_number(g);
    OmegaFamily {
        alpha,
        sets: enumerate_independent_sets(g, Some(alpha)).collect(),
    }
}

/// `I(G;x) = Σ s_k x^k` with exact coefficients `s_0..s_α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndependencePolynomial {
    coeffs: Vec<BigUint>,
}

impl IndependencePolynomial {
    /// Wraps a coefficient list. Trailing zeros are dropped; the constant
    /// polynomial 1 is the result for an empty list.
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigUint::one());
        }
        IndependencePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Total number of independent sets, `I(G;1)`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn product(&self, other: &Self) -> Self {
        IndependencePolynomial::from_coeffs(convolve(&self.coeffs, &other.coeffs))
    }
}

impl fmt::Display for IndependencePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Serializes as a JSON array of integers; coefficients that do not fit in
/// 64 bits are written as decimal strings.
impl Serialize for IndependencePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(BigCoeff))
    }
}

pub(crate) struct BigCoeff<'a>(pub &'a BigUint);

impl Serialize for BigCoeff<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn convolve(p: &[BigUint], q: &[BigUint]) -> Vec<BigUint> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Memo entries kept before the recursion stops caching.
pub const DEFAULT_MEMO_CAP: usize = 1 << 20;

fn binomial_row(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 0..m {
        let next = &row[k] * BigUint::from(m - k) / BigUint::from(k + 1);
        row.push(next);
    }
    row
}

struct PolyMemo<'g> {
    g: &'g Graph,
    memo: HashMap<u64, Vec<BigUint>>,
    cap: usize,
}

impl PolyMemo<'_> {
    fn eval(&mut self, residual: VertexSet) -> Vec<BigUint> {
        if let Some(hit) = self.memo.get(&residual.bits()) {
            return hit.clone();
        }
        let result = match pivot(self.g, residual) {
            None => vec![BigUint::one()],
            Some((_, 0)) => binomial_row(residual.len()),
            Some((v, _)) => {
                // I(G) = I(G - v) + x I(G - N[v])
                let mut without = self.eval(residual.without(v));
                let with = self.eval(residual.difference(self.g.neighbors(v)).without(v));
                if without.len() < with.len() + 1 {
                    without.resize(with.len() + 1, BigUint::zero());
                }
                for (k, c) in with.into_iter().enumerate() {
                    without[k + 1] += c;
                }
                without
            }
        };
        if self.memo.len() < self.cap {
            self.memo.insert(residual.bits(), result.clone());
        }
        result
    }
}

/// Exact independence polynomial via the vertex deletion recursion.
pub fn independence_polynomial(g: &Graph) -> IndependencePolynomial {
    independence_polynomial_with_cap(g, DEFAULT_MEMO_CAP)
}

/// As [`independence_polynomial`], caching at most `memo_cap` residual
/// subgraphs; past the cap the recursion continues uncached.
pub fn independence_polynomial_with_cap(g: &Graph, memo_cap: usize) -> IndependencePolynomial {
    let mut memo = PolyMemo {
        g,
        memo: HashMap::new(),
        cap: memo_cap,
    };
    IndependencePolynomial::from_coeffs(memo.eval(g.vertices()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    fn coeffs(p: &IndependencePolynomial) -> Vec<u64> {
        p.coeffs().iter().map(|c| c.to_u64().unwrap()).collect()
    }

    fn brute_force(g: &Graph) -> Vec<u64> {
        let mut counts = vec![0u64; g.order() + 1];
        for bits in 0..(1u64 << g.order()) {
            let s = VertexSet::from_bits(bits);
            if g.is_independent(s) {
                counts[s.len()] += 1;
            }
        }
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn is_independent_examples() {
        assert!(is_independent(&c5(), VertexSet::from_vertices([0, 2])));
        assert!(!is_independent(&c5(), VertexSet::from_vertices([0, 1])));
        assert!(is_independent(&c5(), VertexSet::EMPTY));
    }

    #[test]
    fn independence_numbers() {
        assert_eq!(independence_number(&c5()), 2);
        assert_eq!(independence_number(&k2()), 1);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(independence_number(&p4), 2);
        assert_eq!(brute_force(&p4).len() - 1, 2);
        assert_eq!(independence_number(&Graph::empty(0).unwrap()), 0);
        assert_eq!(independence_number(&Graph::empty(7).unwrap()), 7);
    }

    #[test]
    fn polynomials() {
        assert_eq!(coeffs(&independence_polynomial(&c5())), vec![1, 5, 5]);
        assert_eq!(brute_force(&c5()), vec![1, 5, 5]);
        assert_eq!(
            coeffs(&independence_polynomial(&Graph::empty(1).unwrap())),
            vec![1, 1]
        );
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(coeffs(&independence_polynomial(&two_k2)), vec![1, 4, 4]);
        assert_eq!(
            coeffs(&independence_polynomial(&Graph::empty(0).unwrap())),
            vec![1]
        );
    }

    #[test]
    fn memo_cap_does_not_change_result() {
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 0),
                (0, 4),
            ],
        )
        .unwrap();
        let full = independence_polynomial(&g);
        assert_eq!(independence_polynomial_with_cap(&g, 0), full);
        assert_eq!(independence_polynomial_with_cap(&g, 3), full);
        assert_eq!(coeffs(&full), brute_force(&g));
    }

    #[test]
    fn omega_examples() {
        let c5_sets: Vec<_> = maximum_independent_sets(&c5())
            .sets
            .iter()
            .map(|s| s.to_labels())
            .collect();
        assert_eq!(
            c5_sets,
            vec![vec![1, 3], vec![1, 4], vec![2, 4], vec![2, 5], vec![3, 5]]
        );
        let k2_sets = maximum_independent_sets(&k2()).sets;
        assert_eq!(
            k2_sets,
            vec![VertexSet::singleton(0), VertexSet::singleton(1)]
        );
        let k1 = maximum_independent_sets(&Graph::empty(1).unwrap());
        assert_eq!(k1.sets, vec![VertexSet::singleton(0)]);
    }

    #[test]
    fn enumeration_examples() {
        let pairs: Vec<_> = enumerate_independent_sets(&c5(), Some(2)).collect();
        assert_eq!(pairs, maximum_independent_sets(&c5()).sets);
        let empty: Vec<_> = enumerate_independent_sets(&c5(), Some(0)).collect();
        assert_eq!(empty, vec![VertexSet::EMPTY]);
        let all: Vec<_> = enumerate_independent_sets(&k2(), None).collect();
        assert_eq!(
            all,
            vec![
                VertexSet::EMPTY,
                VertexSet::singleton(0),
                VertexSet::singleton(1)
            ]
        );
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let g = Graph::from_edges(6, &[(0, 3), (1, 2), (2, 5), (4, 5), (1, 4)]).unwrap();
        let sets: Vec<_> = enumerate_independent_sets(&g, None).collect();
        let expected: Vec<_> = (0..64u64)
            .map(VertexSet::from_bits)
            .filter(|s| g.is_independent(*s))
            .collect();
        assert_eq!(sets, expected);
    }
}
