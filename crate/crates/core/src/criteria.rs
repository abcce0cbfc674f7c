//! Coefficient criteria for log-concavity and unimodality of independence
//! polynomials of connected `W_p` graphs, the two-sided coefficient
//! inequalities they rest on, and direct sequence tests.
//!
//! Every evaluator here is a pure formula over `(p, λ, n, α)`. Structural
//! premises (connectivity, `W_p` membership, λ-quasi-regularizability) are
//! carried on the verdict as flags; verifying them is the caller's job.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumeration::{convolve, BigCoeff};
use crate::rational::{serialize_ratio, Lambda, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("k = {k} outside 1..={max}")]
    KOutOfRange { k: usize, max: i64 },
    #[error("interval form needs α ≥ 2, got {0}")]
    AlphaTooSmall(usize),
    #[error("sequence has an internal zero coefficient")]
    InternalZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionName {
    PhiGeneral,
    FQuadratic,
    IntervalFormCase1,
    IntervalFormCase2,
    #[serde(rename = "unimodality_LR")]
    UnimodalityLr,
}

impl CriterionName {
    /// Whether the criterion concludes log-concavity (otherwise unimodality).
    pub fn concludes_log_concavity(self) -> bool {
        !matches!(self, CriterionName::UnimodalityLr)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CriterionParams {
    pub p: usize,
    pub lambda: Lambda,
    pub n: usize,
    pub alpha: usize,
}

/// Structural hypotheses of the criteria. `verified` records whether they
/// were machine-checked on a concrete graph rather than asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Premises {
    pub connected: bool,
    pub in_wp: bool,
    pub quasi_regularizable: bool,
    pub verified: bool,
}

impl Premises {
    pub const ASSERTED: Premises = Premises {
        connected: true,
        in_wp: true,
        quasi_regularizable: true,
        verified: false,
    };

    pub fn hold(&self) -> bool {
        self.connected && self.in_wp && self.quasi_regularizable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KValue {
    pub k: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub name: CriterionName,
    pub params: CriterionParams,
    pub per_k: Vec<KValue>,
    pub fired: bool,
    /// `(L, R)` for the unimodality criterion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<(i64, i64)>,
    pub premises: Premises,
}

impl CriterionVerdict {
    pub fn with_premises(mut self, premises: Premises) -> Self {
        self.premises = premises;
        self
    }

    /// A fired unimodality verdict is conclusive; an unfired one says
    /// nothing about the central gap.
    pub fn inconclusive(&self) -> bool {
        !self.fired
    }
}

fn check_k(alpha: usize, k: usize) -> Result<(), CriteriaError> {
    if k == 0 || k + 1 > alpha {
        return Err(CriteriaError::KOutOfRange {
            k,
            max: alpha as i64 - 1,
        });
    }
    Ok(())
}

/// `Φ(k) = (k+1)p(α−k+1) − k(n − (λ+1)k)` for `1 ≤ k ≤ α−1`.
pub fn phi(
    p: usize,
    lambda: Lambda,
    n: usize,
    alpha: usize,
    k: usize,
) -> Result<Rational, CriteriaError> {
    check_k(alpha, k)?;
    let (p, n, alpha, k) = (p as i64, n as i64, alpha as i64, k as i64);
    let int = Rational::from_integer;
    Ok(int((k + 1) * p * (alpha - k + 1)) - int(k) * (int(n) - (lambda.ratio() + int(1)) * int(k)))
}

/// `f(k) = k² − (n − pα)k + pα + p` for `1 ≤ k ≤ α−1`.
pub fn f_quadratic(p: usize, n: usize, alpha: usize, k: usize) -> Result<i64, CriteriaError> {
    check_k(alpha, k)?;
    let (p, n, alpha, k) = (p as i64, n as i64, alpha as i64, k as i64);
    Ok(k * k - (n - p * alpha) * k + p * alpha + p)
}

/// Fires when `Φ(k) ≥ 0` on `1..=α−1`; vacuously when `α ≤ 1`.
pub fn log_concavity_criterion(
    p: usize,
    lambda: Lambda,
    n: usize,
    alpha: usize,
) -> CriterionVerdict {
    let per_k: Vec<KValue> = (1..alpha)
        .map(|k| KValue {
            k,
            value: phi(p, lambda, n, alpha, k).expect("k in range"),
        })
        .collect();
    CriterionVerdict {
        name: CriterionName::PhiGeneral,
        params: CriterionParams {
            p,
            lambda,
            n,
            alpha,
        },
        fired: per_k.iter().all(|kv| kv.value >= Rational::from_integer(0)),
        per_k,
        bounds: None,
        premises: Premises::ASSERTED,
    }
}

/// The `λ = p` specialization: fires when `f(k) ≥ 0` on `1..=α−1`.
pub fn quadratic_criterion(p: usize, n: usize, alpha: usize) -> CriterionVerdict {
    let per_k: Vec<KValue> = (1..alpha)
        .map(|k| KValue {
            k,
            value: Rational::from_integer(f_quadratic(p, n, alpha, k).expect("k in range")),
        })
        .collect();
    CriterionVerdict {
        name: CriterionName::FQuadratic,
        params: CriterionParams {
            p,
            lambda: Lambda::integer(p as u32),
            n,
            alpha,
        },
        fired: per_k.iter().all(|kv| kv.value >= Rational::from_integer(0)),
        per_k,
        bounds: None,
        premises: Premises::ASSERTED,
    }
}

/// Explicit interval form for `λ = p`. The verdict is named after the case
/// selected by the sign of the discriminant of `f`: case 1 when
/// `n ≤ pα + 2√(pα+p)`, case 2 otherwise. All comparisons are in integers.
pub fn interval_form(p: usize, n: usize, alpha: usize) -> Result<CriterionVerdict, CriteriaError> {
    if alpha < 2 {
        return Err(CriteriaError::AlphaTooSmall(alpha));
    }
    let (p, n, a) = (p as i128, n as i128, alpha as i128);
    let r = n - p * a;
    // n ≤ pα + 2√(pα+p)  ⟺  r ≤ 0  or  r² ≤ 4(pα+p)
    let within_root = r <= 0 || r * r <= 4 * (p * a + p);
    let (name, fired) = if within_root {
        let lower = (p + 1) * a <= n;
        // α²/(4(α+1)) ≤ p
        let side = a * a <= 4 * p * (a + 1);
        (CriterionName::IntervalFormCase1, lower && side)
    } else {
        // n ≤ ((α²+1)p + (α−1)²)/(α−1)
        let upper = n * (a - 1) <= (a * a + 1) * p + (a - 1) * (a - 1);
        // α(α−1)/(α+1) ≤ p
        let side = a * (a - 1) <= p * (a + 1);
        (CriterionName::IntervalFormCase2, upper && side)
    };
    Ok(CriterionVerdict {
        name,
        params: CriterionParams {
            p: p as usize,
            lambda: Lambda::integer(p as u32),
            n: n as usize,
            alpha,
        },
        per_k: Vec::new(),
        fired,
        bounds: None,
        premises: Premises::ASSERTED,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnimodalityBounds {
    pub l: i64,
    pub r: i64,
    pub fired: bool,
}

/// `L = ⌊(pα−1)/(p+1)⌋`, `R = ⌈(n−1)/(λ+2)⌉`, fired when `R ≤ L+1`.
pub fn unimodality_bounds(p: usize, lambda: Lambda, n: usize, alpha: usize) -> UnimodalityBounds {
    let (p, n, alpha) = (p as i64, n as i64, alpha as i64);
    let l = Integer::div_floor(&(p * alpha - 1), &(p + 1));
    // (n−1)/(λ+2) = (n−1)·den / (num + 2·den)
    let r = Integer::div_ceil(
        &((n - 1) * lambda.den()),
        &(lambda.num() + 2 * lambda.den()),
    );
    UnimodalityBounds {
        l,
        r,
        fired: r <= l + 1,
    }
}

pub fn unimodality_criterion(p: usize, lambda: Lambda, n: usize, alpha: usize) -> CriterionVerdict {
    let b = unimodality_bounds(p, lambda, n, alpha);
    CriterionVerdict {
        name: CriterionName::UnimodalityLr,
        params: CriterionParams {
            p,
            lambda,
            n,
            alpha,
        },
        per_k: Vec::new(),
        fired: b.fired,
        bounds: Some((b.l, b.r)),
        premises: Premises::ASSERTED,
    }
}

/// `s_k² ≥ s_{k−1}s_{k+1}` at every interior index.
pub fn is_log_concave(coeffs: &[BigUint]) -> bool {
    coeffs.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Nondecreasing up to some peak, nonincreasing after it.
pub fn is_unimodal(coeffs: &[BigUint]) -> bool {
    let mut descending = false;
    for w in coeffs.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if w[1] > w[0] && descending {
            return false;
        }
    }
    true
}

pub fn has_internal_zero(coeffs: &[BigUint]) -> bool {
    let first = coeffs.iter().position(|c| !c.is_zero());
    let last = coeffs.iter().rposition(|c| !c.is_zero());
    match (first, last) {
        (Some(i), Some(j)) => coeffs[i..=j].iter().any(Zero::is_zero),
        _ => false,
    }
}

/// First index breaking `s_0 ≤ … ≤ s_{L+1}` or `s_R ≥ … ≥ s_α`.
pub fn chain_violation(coeffs: &[BigUint], l: i64, r: i64) -> Option<usize> {
    let top = coeffs.len() as i64 - 1;
    let rise_end = (l + 1).min(top);
    for k in 0..rise_end.max(0) as usize {
        if coeffs[k] > coeffs[k + 1] {
            return Some(k);
        }
    }
    let fall_start = r.max(0);
    for k in fall_start..top {
        let k = k as usize;
        if coeffs[k] < coeffs[k + 1] {
            return Some(k);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ChainOutcome {
    Checked { violations: Vec<usize> },
    PremiseNotMet,
}

impl ChainOutcome {
    pub fn violated(&self) -> bool {
        matches!(self, ChainOutcome::Checked { violations } if !violations.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientAudit {
    pub p: usize,
    pub lambda: Lambda,
    /// `(k+1)s_{k+1} ≤ (n − (λ+1)k)s_k` for `0 ≤ k ≤ α−1`.
    pub upper_chain: ChainOutcome,
    /// `p(α−k)s_k ≤ (k+1)s_{k+1}` for `1 ≤ k ≤ α−1`.
    pub lower_chain: ChainOutcome,
}

impl CoefficientAudit {
    pub fn passes(&self) -> bool {
        !self.upper_chain.violated() && !self.lower_chain.violated()
    }
}

/// Evaluates both coefficient inequality chains. The upper chain needs
/// λ-quasi-regularizability, the lower chain a connected `W_p` graph; a
/// chain whose premise is not met is skipped.
pub fn coefficient_inequality_audit(
    n: usize,
    alpha: usize,
    coeffs: &[BigUint],
    p: usize,
    lambda: Lambda,
    quasi_regularizable: bool,
    connected_wp: bool,
) -> CoefficientAudit {
    let s = |k: usize| BigInt::from(coeffs.get(k).cloned().unwrap_or_default());
    let upper_chain = if quasi_regularizable {
        let (num, den) = (lambda.num() as i128, lambda.den() as i128);
        let violations = (0..alpha)
            .filter(|&k| {
                let lhs = BigInt::from((k as i128 + 1) * den) * s(k + 1);
                let factor = n as i128 * den - (num + den) * k as i128;
                let rhs = BigInt::from(factor) * s(k);
                lhs > rhs
            })
            .collect();
        ChainOutcome::Checked { violations }
    } else {
        ChainOutcome::PremiseNotMet
    };
    let lower_chain = if connected_wp {
        let violations = (1..alpha)
            .filter(|&k| {
                BigInt::from((p * (alpha - k)) as u64) * s(k)
                    > BigInt::from((k + 1) as u64) * s(k + 1)
            })
            .collect();
        ChainOutcome::Checked { violations }
    } else {
        ChainOutcome::PremiseNotMet
    };
    CoefficientAudit {
        p,
        lambda,
        upper_chain,
        lower_chain,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    #[serde(serialize_with = "serialize_coeffs")]
    pub product: Vec<BigUint>,
    pub left_log_concave: bool,
    pub left_unimodal: bool,
    pub right_log_concave: bool,
    pub right_unimodal: bool,
    pub product_log_concave: bool,
    pub product_unimodal: bool,
}

fn serialize_coeffs<S: Serializer>(c: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(BigCoeff))
}

impl ProductReport {
    /// LC × LC must be LC; LC × unimodal must be unimodal.
    pub fn violation(&self) -> bool {
        let lc_lc = self.left_log_concave && self.right_log_concave;
        let lc_uni = (self.left_log_concave && self.right_unimodal)
            || (self.right_log_concave && self.left_unimodal);
        (lc_lc && !self.product_log_concave) || (lc_uni && !self.product_unimodal)
    }
}

pub fn product_lemma_check(
    left: &[BigUint],
    right: &[BigUint],
) -> Result<ProductReport, CriteriaError> {
    if has_internal_zero(left) || has_internal_zero(right) {
        return Err(CriteriaError::InternalZero);
    }
    let product = convolve(left, right);
    Ok(ProductReport {
        left_log_concave: is_log_concave(left),
        left_unimodal: is_unimodal(left),
        right_log_concave: is_log_concave(right),
        right_unimodal: is_unimodal(right),
        product_log_concave: is_log_concave(&product),
        product_unimodal: is_unimodal(&product),
        product,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectCheck {
    pub log_concave: bool,
    pub unimodal: bool,
}

impl DirectCheck {
    pub fn of(coeffs: &[BigUint]) -> Self {
        DirectCheck {
            log_concave: is_log_concave(coeffs),
            unimodal: is_unimodal(coeffs),
        }
    }

    /// Whether the direct test confirms what `verdict` concludes.
    pub fn confirms(&self, verdict: &CriterionVerdict) -> bool {
        if verdict.name.concludes_log_concavity() {
            self.log_concave
        } else {
            self.unimodal
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnifiedVerdict {
    pub verdicts: Vec<CriterionVerdict>,
    pub direct: DirectCheck,
}

/// Applies every criterion at `λ = p` for each verified `W_p` membership
/// whose quasi-regularizability threshold is met: `n ≥ 3α` for `p = 2`,
/// `n ≥ (p+1)α` otherwise. The direct tests on `coeffs` ride along.
pub fn unified_verdict(
    connected: bool,
    wp_members: &[usize],
    n: usize,
    alpha: usize,
    coeffs: &[BigUint],
) -> UnifiedVerdict {
    let mut verdicts = Vec::new();
    if connected {
        for &p in wp_members {
            if n < (p + 1) * alpha {
                continue;
            }
            let lambda = Lambda::integer(p as u32);
            verdicts.push(log_concavity_criterion(p, lambda, n, alpha));
            verdicts.push(quadratic_criterion(p, n, alpha));
            if alpha >= 2 {
                verdicts.push(interval_form(p, n, alpha).expect("alpha ≥ 2"));
            }
            verdicts.push(unimodality_criterion(p, lambda, n, alpha));
        }
    }
    UnifiedVerdict {
        verdicts,
        direct: DirectCheck::of(coeffs),
    }
}
