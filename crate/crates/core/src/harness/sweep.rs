//! Per-graph classification and the parallel sweep that audits every
//! theorem statement over a corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::criteria::{
    chain_violation, coefficient_inequality_audit, interval_form, is_log_concave, is_unimodal,
    log_concavity_criterion, quadratic_criterion, unified_verdict, unimodality_bounds,
    unimodality_criterion, CriterionName, CriterionVerdict, DirectCheck, Premises,
};
use crate::enumeration::{
    convolve, independence_number, independence_polynomial, maximum_independent_sets,
    IndependencePolynomial, OmegaFamily,
};
use crate::graph::{Graph, VertexSet};
use crate::graph6::Graph6Record;
use crate::quasireg::{
    check_threshold_equivalence_unchecked, is_lambda_quasi_regularizable, min_expansion_ratio,
    verify_local_expansion_unchecked, CheckStatus,
};
use crate::rational::{format_ratio, Lambda, Rational};
use crate::wp::{
    is_one_well_covered, is_well_covered, w2_structure_audit, wp_with_omega, LocalizationFailure,
    WpCaps,
};

/// Audited statements; each sweep counts violations per entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    LocalExpansion,
    Threshold,
    W2Facts,
    CoefIneq,
    CriteriaSoundness,
    UnimodalityChains,
    WpCrossCheck,
    PThreshold,
    ProductLemma,
    InternalConsistency,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::LocalExpansion,
        Theorem::Threshold,
        Theorem::W2Facts,
        Theorem::CoefIneq,
        Theorem::CriteriaSoundness,
        Theorem::UnimodalityChains,
        Theorem::WpCrossCheck,
        Theorem::PThreshold,
        Theorem::ProductLemma,
        Theorem::InternalConsistency,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::LocalExpansion => "local-expansion",
            Theorem::Threshold => "threshold",
            Theorem::W2Facts => "w2-facts",
            Theorem::CoefIneq => "coef-ineq",
            Theorem::CriteriaSoundness => "criteria-soundness",
            Theorem::UnimodalityChains => "unimodality-chains",
            Theorem::WpCrossCheck => "wp-cross-check",
            Theorem::PThreshold => "p-threshold",
            Theorem::ProductLemma => "product-lemma",
            Theorem::InternalConsistency => "internal-consistency",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown theorem {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub theorem: Theorem,
    pub detail: String,
}

/// How a `W_p` verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WpMethod {
    Definitional,
    WellCovered,
    OneWellCovered,
    IsolatedVertex,
    CapExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WpEntry {
    /// `None` when a cap prevented a verdict.
    pub member: Option<bool>,
    pub method: WpMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_tuple: Option<Vec<VertexSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiRegEntry {
    pub holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neighborhood_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinExpansion {
    #[serde(serialize_with = "crate::rational::serialize_ratio")]
    pub ratio: Rational,
    pub witness: VertexSet,
    pub neighborhood_size: usize,
}

/// Outcome of the lemma-level audits that are not reported at top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Audits {
    pub coef_ineq: CheckStatus,
    pub criteria_soundness: CheckStatus,
    pub unimodality_chains: CheckStatus,
    pub wp_cross_check: CheckStatus,
    pub p_threshold: CheckStatus,
    pub product_lemma: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub alpha: usize,
    pub connected: bool,
    pub components: usize,
    pub polynomial: IndependencePolynomial,
    pub well_covered: Option<bool>,
    #[serde(serialize_with = "serialize_wp")]
    pub wp: Vec<(usize, WpEntry)>,
    #[serde(serialize_with = "serialize_quasireg")]
    pub quasireg: Vec<(Lambda, QuasiRegEntry)>,
    pub min_expansion: Option<MinExpansion>,
    pub n_at_least_3_alpha: bool,
    pub local_expansion: CheckStatus,
    pub threshold_equivalence: CheckStatus,
    pub w2_facts: CheckStatus,
    pub criteria: Vec<CriterionVerdict>,
    pub direct: DirectCheck,
    pub audits: Audits,
    pub violations: Vec<Violation>,
    pub caps_hit: Vec<String>,
}

fn serialize_wp<S: Serializer>(entries: &[(usize, WpEntry)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(entries.iter().map(|(p, e)| (p.to_string(), e)))
}

fn serialize_quasireg<S: Serializer>(
    entries: &[(Lambda, QuasiRegEntry)],
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_map(entries.iter().map(|(l, e)| (l.to_string(), e)))
}

impl ClassificationReport {
    pub fn wp_member(&self, p: usize) -> Option<bool> {
        self.wp
            .iter()
            .find(|(q, _)| *q == p)
            .and_then(|(_, e)| e.member)
    }

    pub fn quasi_regularizable(&self, lambda: Lambda) -> Option<bool> {
        self.quasireg
            .iter()
            .find(|(l, _)| *l == lambda)
            .and_then(|(_, e)| e.holds)
    }

    pub fn violation_count(&self, theorem: Theorem) -> usize {
        self.violations
            .iter()
            .filter(|v| v.theorem == theorem)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub p_values: Vec<usize>,
    pub lambdas: Vec<Lambda>,
    /// Largest order for the definitional `W_p` test.
    pub definitional_max_order: usize,
    /// Largest order for the well-covered / 1-well-covered fast paths.
    pub fast_path_max_order: usize,
    pub max_omega: usize,
    /// Independent-set scans are skipped when `I(G;1)` exceeds this.
    pub max_scan_sets: u64,
    /// Worker count; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Graphs classified per parallel batch.
    pub chunk_size: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            p_values: vec![1, 2],
            lambdas: vec![
                Lambda::integer(1),
                Lambda::new(3, 2).expect("positive"),
                Lambda::integer(2),
            ],
            definitional_max_order: 12,
            fast_path_max_order: 14,
            max_omega: 5000,
            max_scan_sets: 5_000_000,
            jobs: None,
            chunk_size: 4096,
        }
    }
}

struct Log {
    violations: Vec<Violation>,
    caps: Vec<String>,
}

impl Log {
    fn violate(&mut self, theorem: Theorem, detail: impl Into<String>) {
        self.violations.push(Violation {
            theorem,
            detail: detail.into(),
        });
    }
}

/// Tracks whether any check ran and whether any failed.
#[derive(Default)]
struct Tally {
    ran: bool,
    failed: bool,
}

impl Tally {
    fn record(&mut self, ok: bool) -> bool {
        self.ran = true;
        self.failed |= !ok;
        ok
    }

    fn status(&self) -> CheckStatus {
        match (self.ran, self.failed) {
            (_, true) => CheckStatus::Fail,
            (true, false) => CheckStatus::Pass,
            (false, false) => CheckStatus::NotApplicable,
        }
    }
}

fn push_unique<T: Copy + PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Classifies one graph and runs every applicable audit.
pub fn classify(index: usize, record: &Graph6Record, opts: &SweepOptions) -> ClassificationReport {
    let g = &record.graph;
    let n = g.order();
    let mut log = Log {
        violations: Vec::new(),
        caps: Vec::new(),
    };

    let polynomial = independence_polynomial(g);
    let alpha = independence_number(g);
    let coeffs = polynomial.coeffs();
    if polynomial.degree() != alpha {
        log.violate(
            Theorem::InternalConsistency,
            format!("polynomial degree {} but α = {alpha}", polynomial.degree()),
        );
    }
    let connected = g.is_connected();
    let components = g.component_sets();
    let isolated = g.has_isolated_vertex();

    let scan_ok = polynomial.total() <= BigUint::from(opts.max_scan_sets);
    if !scan_ok {
        log.caps.push("independent-set scan".into());
    }
    let omega = scan_ok.then(|| maximum_independent_sets(g));
    if let Some(om) = &omega {
        if coeffs.get(alpha) != Some(&BigUint::from(om.len())) {
            log.violate(
                Theorem::InternalConsistency,
                format!("|Ω| = {} disagrees with s_α", om.len()),
            );
        }
    }
    let well_covered = scan_ok.then(|| is_well_covered(g));

    // W_p membership; W_2 is always evaluated since its audits depend on it.
    let mut p_values = opts.p_values.clone();
    push_unique(&mut p_values, 2);
    p_values.sort_unstable();
    let mut cross = Tally::default();
    let wp: Vec<(usize, WpEntry)> = p_values
        .iter()
        .map(|&p| {
            let entry = wp_entry(g, p, omega.as_ref(), well_covered, isolated, opts);
            if entry.member.is_none() {
                log.caps.push(format!("W_{p}"));
            }
            (p, entry)
        })
        .collect();
    let member = |p: usize| wp.iter().find(|(q, _)| *q == p).and_then(|(_, e)| e.member);
    for (p, entry) in &wp {
        if entry.method != WpMethod::Definitional {
            continue;
        }
        let got = entry.member.expect("definitional verdicts are known");
        if *p == 1 {
            if let Some(wc) = well_covered {
                if !cross.record(got == wc) {
                    log.violate(
                        Theorem::WpCrossCheck,
                        format!("W_1 = {got}, well-covered = {wc}"),
                    );
                }
            }
        }
        if *p >= 2 && isolated && !cross.record(!got) {
            log.violate(
                Theorem::WpCrossCheck,
                format!("W_{p} member with an isolated vertex"),
            );
        }
        if *p == 2 && !isolated {
            let owc = is_one_well_covered(g).expect("isolate-free");
            if !cross.record(got == owc) {
                log.violate(
                    Theorem::WpCrossCheck,
                    format!("W_2 = {got}, 1-well-covered = {owc}"),
                );
            }
        }
    }
    for pair in wp.windows(2) {
        let ((p, a), (q, b)) = (&pair[0], &pair[1]);
        if let (Some(lo), Some(hi)) = (a.member, b.member) {
            if !cross.record(!hi || lo) {
                log.violate(Theorem::WpCrossCheck, format!("in W_{q} but not W_{p}"));
            }
        }
    }
    let w2 = member(2);

    // λ-quasi-regularizability; λ = 2 always, for the threshold counts.
    let mut lambdas = opts.lambdas.clone();
    push_unique(&mut lambdas, Lambda::integer(2));
    let quasireg: Vec<(Lambda, QuasiRegEntry)> = lambdas
        .iter()
        .map(|&l| (l, quasireg_entry(g, l, scan_ok)))
        .collect();
    let min_expansion = if scan_ok {
        min_expansion_ratio(g).map(|(ratio, w)| MinExpansion {
            ratio,
            witness: w.set,
            neighborhood_size: w.neighborhood_size,
        })
    } else {
        None
    };
    if let Some(m) = &min_expansion {
        for (l, e) in &quasireg {
            if e.holds != Some(l.ratio() <= m.ratio) {
                log.violate(
                    Theorem::InternalConsistency,
                    format!(
                        "λ = {l} verdict disagrees with minimum ratio {}",
                        format_ratio(&m.ratio)
                    ),
                );
            }
        }
    }
    let mut qr_cache = quasireg.clone();
    let mut qr = |l: Lambda| -> Option<bool> {
        if let Some((_, e)) = qr_cache.iter().find(|(m, _)| *m == l) {
            return e.holds;
        }
        let e = quasireg_entry(g, l, scan_ok);
        let holds = e.holds;
        qr_cache.push((l, e));
        holds
    };

    let n_at_least_3_alpha = n >= 3 * alpha;
    let conditional = |known: bool| match (connected, w2) {
        (false, _) | (_, Some(false)) => Err(CheckStatus::NotApplicable),
        (true, None) => Err(CheckStatus::CapExceeded),
        (true, Some(true)) if !known => Err(CheckStatus::CapExceeded),
        (true, Some(true)) => Ok(()),
    };

    let local_expansion = match conditional(scan_ok) {
        Ok(()) => {
            let r = verify_local_expansion_unchecked(g, alpha);
            if let Some(w) = r.violations.first() {
                log.violate(
                    Theorem::LocalExpansion,
                    format!("|N({})| = {} < 2|A|", w.set, w.neighborhood_size),
                );
            }
            r.status
        }
        Err(s) => s,
    };
    let threshold_equivalence = match conditional(scan_ok) {
        Ok(()) => {
            let r = check_threshold_equivalence_unchecked(g, alpha);
            if r.status == CheckStatus::Fail {
                log.violate(
                    Theorem::Threshold,
                    format!(
                        "2-quasi-regularizable = {}, n ≥ 3α = {}",
                        r.quasi_regularizable, r.n_at_least_3_alpha
                    ),
                );
            }
            r.status
        }
        Err(s) => s,
    };

    let w2_facts = match (w2, scan_ok) {
        (Some(false), _) => CheckStatus::NotApplicable,
        (None, _) | (_, false) => CheckStatus::CapExceeded,
        (Some(true), true) => {
            let caps = WpCaps {
                max_order: opts.fast_path_max_order,
                max_omega: opts.max_omega,
            };
            let audit = w2_structure_audit(g, caps);
            if audit.passes() {
                CheckStatus::Pass
            } else if audit.failures() == ["localization"]
                && matches!(
                    audit.localization,
                    Some(LocalizationFailure::CapExceeded { .. })
                )
            {
                log.caps.push("W_2 localization audit".into());
                CheckStatus::CapExceeded
            } else {
                log.violate(
                    Theorem::W2Facts,
                    format!("failed: {}", audit.failures().join(", ")),
                );
                CheckStatus::Fail
            }
        }
    };

    // Coefficient chains.
    let mut coef = Tally::default();
    for (l, e) in &quasireg {
        if e.holds == Some(true) {
            let audit = coefficient_inequality_audit(n, alpha, coeffs, 1, *l, true, false);
            if !coef.record(!audit.upper_chain.violated()) {
                log.violate(Theorem::CoefIneq, format!("upper chain fails at λ = {l}"));
            }
        }
    }
    let members: Vec<usize> = p_values
        .iter()
        .copied()
        .filter(|&p| member(p) == Some(true))
        .collect();
    if connected {
        for &p in &members {
            let audit =
                coefficient_inequality_audit(n, alpha, coeffs, p, Lambda::integer(1), false, true);
            if !coef.record(!audit.lower_chain.violated()) {
                log.violate(Theorem::CoefIneq, format!("lower chain fails at p = {p}"));
            }
        }
    }

    // Criteria, with premises verified on this graph.
    let direct = DirectCheck::of(coeffs);
    let verified = Premises {
        connected: true,
        in_wp: true,
        quasi_regularizable: true,
        verified: true,
    };
    let mut criteria = Vec::new();
    let mut chains = Tally::default();
    let mut p_threshold = Tally::default();
    if connected {
        for &p in &members {
            for (l, e) in &quasireg {
                if e.holds != Some(true) {
                    continue;
                }
                criteria.push(log_concavity_criterion(p, *l, n, alpha).with_premises(verified));
                if *l == Lambda::integer(p as u32) {
                    criteria.push(quadratic_criterion(p, n, alpha).with_premises(verified));
                    if alpha >= 2 {
                        criteria.push(
                            interval_form(p, n, alpha)
                                .expect("α ≥ 2")
                                .with_premises(verified),
                        );
                    }
                }
                criteria.push(unimodality_criterion(p, *l, n, alpha).with_premises(verified));
                let b = unimodality_bounds(p, *l, n, alpha);
                if let Some(k) = chain_violation(coeffs, b.l, b.r) {
                    chains.record(false);
                    log.violate(
                        Theorem::UnimodalityChains,
                        format!(
                            "p = {p}, λ = {l}: chain breaks at k = {k} (L = {}, R = {})",
                            b.l, b.r
                        ),
                    );
                } else {
                    chains.record(true);
                }
            }
            if p != 2 {
                if let Some(holds) = qr(Lambda::integer(p as u32)) {
                    let threshold = n >= (p + 1) * alpha;
                    if !p_threshold.record(holds == threshold) {
                        log.violate(
                            Theorem::PThreshold,
                            format!("p = {p}: {p}-quasi-regularizable = {holds}, n ≥ (p+1)α = {threshold}"),
                        );
                    }
                }
            }
        }
    }
    // Threshold-driven verdicts at λ = p.
    for v in unified_verdict(connected, &members, n, alpha, coeffs).verdicts {
        let lambda = v.params.lambda;
        match qr(lambda) {
            Some(true) => {
                let v = v.with_premises(verified);
                if !criteria.contains(&v) {
                    criteria.push(v);
                }
            }
            Some(false) => {}
            None => criteria.push(v),
        }
    }

    let mut soundness = Tally::default();
    for v in criteria.iter().filter(|v| v.fired && v.premises.verified) {
        if !soundness.record(direct.confirms(v)) {
            log.violate(
                Theorem::CriteriaSoundness,
                format!(
                    "{} fired at p = {}, λ = {} but the direct check fails",
                    serde_json::to_string(&v.name).unwrap_or_default(),
                    v.params.p,
                    v.params.lambda
                ),
            );
        }
    }
    for v in &criteria {
        let interval = matches!(
            v.name,
            CriterionName::IntervalFormCase1 | CriterionName::IntervalFormCase2
        );
        if interval && v.fired && !quadratic_criterion(v.params.p, n, alpha).fired {
            log.violate(
                Theorem::InternalConsistency,
                format!(
                    "interval form fired at p = {} without the quadratic criterion",
                    v.params.p
                ),
            );
        }
    }
    if direct.log_concave && !direct.unimodal {
        log.violate(Theorem::InternalConsistency, "log-concave but not unimodal");
    }

    // Product lemma over components.
    let mut product = Tally::default();
    if components.len() > 1 {
        let parts: Vec<Vec<BigUint>> = components
            .iter()
            .map(|&c| {
                independence_polynomial(&g.induced_subgraph(c).0)
                    .coeffs()
                    .to_vec()
            })
            .collect();
        let multiplied = parts
            .iter()
            .fold(vec![BigUint::from(1u32)], |acc, q| convolve(&acc, q));
        if !product.record(multiplied == coeffs) {
            log.violate(
                Theorem::ProductLemma,
                "polynomial is not the product over components",
            );
        }
        let lc = parts.iter().filter(|q| is_log_concave(q)).count();
        let all_unimodal = parts.iter().all(|q| is_unimodal(q));
        if lc == parts.len() && !product.record(direct.log_concave) {
            log.violate(
                Theorem::ProductLemma,
                "log-concave components, product not log-concave",
            );
        }
        if all_unimodal && lc + 1 >= parts.len() && !product.record(direct.unimodal) {
            log.violate(
                Theorem::ProductLemma,
                "unimodal components, all but one log-concave, product not unimodal",
            );
        }
    }

    let audits = Audits {
        coef_ineq: coef.status(),
        criteria_soundness: soundness.status(),
        unimodality_chains: chains.status(),
        wp_cross_check: cross.status(),
        p_threshold: p_threshold.status(),
        product_lemma: product.status(),
    };

    ClassificationReport {
        index,
        graph6: record.text.clone(),
        n,
        alpha,
        connected,
        components: components.len(),
        well_covered,
        wp,
        quasireg,
        min_expansion,
        n_at_least_3_alpha,
        local_expansion,
        threshold_equivalence,
        w2_facts,
        criteria,
        direct,
        audits,
        violations: log.violations,
        caps_hit: log.caps,
        polynomial,
    }
}

fn wp_entry(
    g: &Graph,
    p: usize,
    omega: Option<&OmegaFamily>,
    well_covered: Option<bool>,
    isolated: bool,
    opts: &SweepOptions,
) -> WpEntry {
    let n = g.order();
    if let Some(om) =
        omega.filter(|om| n <= opts.definitional_max_order && om.len() <= opts.max_omega)
    {
        let w = wp_with_omega(g, p, om);
        return WpEntry {
            member: Some(w.member),
            method: WpMethod::Definitional,
            failing_tuple: w.failing_tuple,
        };
    }
    let verdict = |member: Option<bool>, method| WpEntry {
        member,
        method,
        failing_tuple: None,
    };
    if p >= 2 && isolated {
        return verdict(Some(false), WpMethod::IsolatedVertex);
    }
    match (p, well_covered) {
        (1, Some(wc)) if n <= opts.fast_path_max_order => verdict(Some(wc), WpMethod::WellCovered),
        (2, Some(_)) if n <= opts.fast_path_max_order => verdict(
            Some(is_one_well_covered(g).expect("isolate-free")),
            WpMethod::OneWellCovered,
        ),
        _ => verdict(None, WpMethod::CapExceeded),
    }
}

fn quasireg_entry(g: &Graph, lambda: Lambda, scan_ok: bool) -> QuasiRegEntry {
    if !scan_ok {
        return QuasiRegEntry {
            holds: None,
            witness: None,
            neighborhood_size: None,
        };
    }
    let (holds, w) = is_lambda_quasi_regularizable(g, lambda);
    QuasiRegEntry {
        holds: Some(holds),
        witness: w.map(|w| w.set),
        neighborhood_size: w.map(|w| w.neighborhood_size),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub corpus: String,
    pub graphs: usize,
    pub connected: usize,
    pub well_covered: usize,
    pub w2: usize,
    pub connected_w2: usize,
    pub quasi_regularizable_2: usize,
    pub n_at_least_3_alpha: usize,
    /// Connected `W_2` graphs by (2-quasi-regularizable, n ≥ 3α).
    pub connected_w2_cells: BTreeMap<String, usize>,
    pub violations: BTreeMap<Theorem, usize>,
    pub caps_hit: usize,
    pub parse_errors: usize,
    pub wall_time_ms: u128,
}

impl SweepSummary {
    pub fn new(corpus: impl Into<String>) -> Self {
        SweepSummary {
            corpus: corpus.into(),
            graphs: 0,
            connected: 0,
            well_covered: 0,
            w2: 0,
            connected_w2: 0,
            quasi_regularizable_2: 0,
            n_at_least_3_alpha: 0,
            connected_w2_cells: BTreeMap::new(),
            violations: Theorem::ALL.iter().map(|&t| (t, 0)).collect(),
            caps_hit: 0,
            parse_errors: 0,
            wall_time_ms: 0,
        }
    }

    pub fn total_violations(&self) -> usize {
        self.violations.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn absorb(&mut self, r: &ClassificationReport) {
        self.graphs += 1;
        self.connected += r.connected as usize;
        self.well_covered += (r.well_covered == Some(true)) as usize;
        let w2 = r.wp_member(2) == Some(true);
        self.w2 += w2 as usize;
        let qr2 = r.quasi_regularizable(Lambda::integer(2)) == Some(true);
        self.quasi_regularizable_2 += qr2 as usize;
        self.n_at_least_3_alpha += r.n_at_least_3_alpha as usize;
        if w2 && r.connected {
            self.connected_w2 += 1;
            let key = format!(
                "{}qr2,{}n>=3a",
                if qr2 { "" } else { "!" },
                if r.n_at_least_3_alpha { "" } else { "!" }
            );
            *self.connected_w2_cells.entry(key).or_default() += 1;
        }
        for v in &r.violations {
            *self.violations.entry(v.theorem).or_default() += 1;
        }
        self.caps_hit += !r.caps_hit.is_empty() as usize;
    }
}

/// Classifies `corpus` in parallel batches and hands reports to `sink` in
/// input order. The sink's first error aborts the sweep.
pub fn sweep<I, F, E>(
    corpus_id: &str,
    corpus: I,
    opts: &SweepOptions,
    mut sink: F,
) -> Result<SweepSummary, E>
where
    I: IntoIterator<Item = Graph6Record>,
    F: FnMut(&ClassificationReport) -> Result<(), E>,
{
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().expect("thread pool");
    let mut summary = SweepSummary::new(corpus_id);
    let mut iter = corpus.into_iter();
    let mut index = 0;
    loop {
        let batch: Vec<Graph6Record> = iter.by_ref().take(opts.chunk_size.max(1)).collect();
        if batch.is_empty() {
            break;
        }
        let reports: Vec<ClassificationReport> = pool.install(|| {
            batch
                .par_iter()
                .enumerate()
                .map(|(i, rec)| classify(index + i, rec, opts))
                .collect()
        });
        index += batch.len();
        for r in &reports {
            summary.absorb(r);
            sink(r)?;
        }
    }
    summary.wall_time_ms = start.elapsed().as_millis();
    Ok(summary)
}

/// Convenience wrapper that keeps every report.
pub fn sweep_collect<I>(
    corpus_id: &str,
    corpus: I,
    opts: &SweepOptions,
) -> (SweepSummary, Vec<ClassificationReport>)
where
    I: IntoIterator<Item = Graph6Record>,
{
    let mut reports = Vec::new();
    let summary = sweep::<_, _, std::convert::Infallible>(corpus_id, corpus, opts, |r| {
        reports.push(r.clone());
        Ok(())
    })
    .expect("infallible sink");
    (summary, reports)
}
