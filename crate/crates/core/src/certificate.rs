//! JSON certificate documents (schema version "1").
//!
//! Serialization is deterministic: struct fields serialize in declaration
//! order, maps are sorted, elements are sorted by `(rotation, reflection)`,
//! and rationals are rendered as lowest-terms `"p/q"` strings. Wall-clock
//! timing is only included on request, so repeated runs with the same flags
//! produce byte-identical output.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::action::ElementReport;
use crate::construction::{CorollaryCertificate, TheoremCertificate};
use crate::torus::TorsionPoint;

pub const SCHEMA_VERSION: &str = "1";

/// `"p/q"` with `q > 0` and `gcd(p, q) = 1`; integers keep the `/1`.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn point_strings(p: &TorsionPoint) -> Vec<String> {
    p.coords().iter().map(rational_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementEntry {
    pub word: String,
    pub order: usize,
    pub is_translation: bool,
    pub has_fixed_point: bool,
    /// Outcome of the brute-force torsion search, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_fixed_point: Option<bool>,
}

impl ElementEntry {
    pub fn from_report(r: &ElementReport) -> Self {
        ElementEntry {
            word: r.word.clone(),
            order: r.order,
            is_translation: r.is_translation,
            has_fixed_point: r.has_fixed_point,
            oracle_fixed_point: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyParams {
    pub n: usize,
    pub closure_cap: usize,
    pub order_cap: usize,
    pub oracle_denominator: Option<usize>,
    pub w: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorollaryParams {
    pub k: usize,
    pub n: usize,
    pub rotation_power: usize,
    pub expected_dimension: usize,
    pub expected_order: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Params {
    Verify(VerifyParams),
    Corollary(CorollaryParams),
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Detail {
    Theorem(Box<TheoremCertificate>),
    Corollary(Box<CorollaryCertificate>),
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: Params,
    pub dimension: usize,
    pub group_order: Option<usize>,
    pub elements: Vec<ElementEntry>,
    pub steps: BTreeMap<&'static str, bool>,
    pub theorem_verified: bool,
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agrees: Option<bool>,
    pub certificate: Detail,
}

fn entries(reports: &[ElementReport]) -> Vec<ElementEntry> {
    let mut out: Vec<(Option<_>, ElementEntry)> = reports
        .iter()
        .map(|r| (r.label, ElementEntry::from_report(r)))
        .collect();
    out.sort_by_key(|(l, _)| *l);
    out.into_iter().map(|(_, e)| e).collect()
}

impl CertificateDocument {
    pub fn theorem(cert: &TheoremCertificate, params: VerifyParams) -> Self {
        let steps = BTreeMap::from([
            ("step1", cert.step1.passed),
            ("step2", cert.step2.passed),
            ("step3", cert.step3.passed),
            ("step4", cert.step4.passed),
            ("step5", cert.step5.passed),
        ]);
        CertificateDocument {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            params: Params::Verify(params),
            dimension: cert.dimension,
            group_order: cert.group_order_actual,
            elements: cert.analysis.as_ref().map(|a| entries(&a.reports)).unwrap_or_default(),
            steps,
            theorem_verified: cert.theorem_verified,
            elapsed_ms: None,
            oracle_agrees: None,
            certificate: Detail::Theorem(Box::new(cert.clone())),
        }
    }

    pub fn corollary(cert: &CorollaryCertificate) -> Self {
        let steps = BTreeMap::from([
            ("dimension", cert.dimension == cert.plan.expected_dimension),
            ("free", cert.is_free),
            ("no_translations", cert.has_no_translations),
            ("order", cert.subgroup_order == Some(cert.plan.expected_order)),
            ("relations", cert.relations_hold && cert.rotation_order == Some(cert.plan.k)),
        ]);
        CertificateDocument {
            schema_version: SCHEMA_VERSION,
            command: "corollary",
            params: Params::Corollary(CorollaryParams {
                k: cert.plan.k,
                n: cert.plan.params.n,
                rotation_power: cert.plan.rotation_power,
                expected_dimension: cert.plan.expected_dimension,
                expected_order: cert.plan.expected_order,
            }),
            dimension: cert.dimension,
            group_order: cert.subgroup_order,
            elements: cert.analysis.as_ref().map(|a| entries(&a.reports)).unwrap_or_default(),
            steps,
            theorem_verified: cert.verified,
            elapsed_ms: None,
            oracle_agrees: None,
            certificate: Detail::Corollary(Box::new(cert.clone())),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RangeParams {
    pub range: usize,
}

/// Aggregate of `verify` runs for `n = 1..=range`.
#[derive(Debug, Clone, Serialize)]
pub struct RangeDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: RangeParams,
    pub documents: Vec<CertificateDocument>,
    pub all_verified: bool,
    pub elapsed_ms: Option<u64>,
}

impl RangeDocument {
    pub fn new(range: usize, documents: Vec<CertificateDocument>) -> Self {
        let all_verified = documents.iter().all(|d| d.theorem_verified);
        RangeDocument {
            schema_version: SCHEMA_VERSION,
            command: "verify",
            params: RangeParams { range },
            documents,
            all_verified,
            elapsed_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}
