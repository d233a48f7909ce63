//! Exact-rational Euler-characteristic calculus: base values for genus-zero
//! moduli, Burnside quotients, stratified covering sums, Riemann-Hurwitz,
//! and replayable chi ledgers.
//!
//! Topological and compactly-supported Euler characteristics are identified
//! throughout: every space that enters a ledger is a complex-algebraic
//! variety stratified by locally closed subvarieties, where the two notions
//! agree and chi is additive over strata.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number. Always stored reduced with positive denominator.
pub type Rational = Rational64;

#[derive(Debug, Error)]
pub enum EulerError {
    #[error("chi(M_{{0,n}}) needs n >= 3, got {0}")]
    BelowBase(u32),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("expected {expected} fixed-locus entries (one per group element), got {got}")]
    FixedLocusCount { expected: usize, got: usize },
    #[error("negative fiber size {0}")]
    NegativeFiber(i64),
    #[error("covering degree must be >= 1, got {0}")]
    BadDegree(i64),
    #[error("unresolved name `{0}`")]
    UnresolvedName(String),
    #[error("duplicate constant `{0}`")]
    DuplicateConstant(String),
    #[error("partition ledger `{0}` has a term with coefficient != 1")]
    BadPartitionCoeff(String),
    #[error("cannot parse rational `{0}`")]
    BadRational(String),
    #[error("ledger parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Shorthand for `Rational::new(n, d)`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// Render a rational in the canonical `p/q` form used by all file formats.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` (or a bare integer `p`).
pub fn parse_rational(s: &str) -> Result<Rational, EulerError> {
    let bad = || EulerError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Serde adaptor serializing rationals as `p/q` strings.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// chi of the moduli space of smooth n-pointed rational curves, via the
/// recursion chi(M_{0,n+1}) = (2-n) chi(M_{0,n}) with chi(M_{0,3}) = 1
/// (forgetting a point is a fibration with fiber a sphere minus n points).
pub fn chi_m0n(n: u32) -> Result<Rational, EulerError> {
    if n < 3 {
        return Err(EulerError::BelowBase(n));
    }
    let mut chi = Rational::one();
    for m in 3..n {
        chi *= Rational::from_integer(2 - i64::from(m));
    }
    Ok(chi)
}

/// Euler characteristic of a quotient by a finite group:
/// chi(X/G) = (1/|G|) * sum over G of chi(fixed locus).
///
/// `fixed_chis` has one entry per group element; the identity contributes
/// chi(X) itself.
pub fn burnside_chi(group_order: usize, fixed_chis: &[Rational]) -> Result<Rational, EulerError> {
    if group_order == 0 {
        return Err(EulerError::EmptyGroup);
    }
    if fixed_chis.len() != group_order {
        return Err(EulerError::FixedLocusCount {
            expected: group_order,
            got: fixed_chis.len(),
        });
    }
    let sum: Rational = fixed_chis.iter().sum();
    Ok(sum / Rational::from_integer(group_order as i64))
}

/// chi of the total space of a stratified covering: sum of
/// fiber_size * chi(stratum) over strata with constant fiber cardinality.
///
/// The caller is responsible for the strata actually partitioning the base;
/// ledgers certify that side condition separately (see [`ChiLedger`]).
pub fn stratified_cover_chi(terms: &[(i64, Rational)]) -> Result<Rational, EulerError> {
    let mut total = Rational::zero();
    for &(fiber, chi) in terms {
        if fiber < 0 {
            return Err(EulerError::NegativeFiber(fiber));
        }
        total += Rational::from_integer(fiber) * chi;
    }
    Ok(total)
}

/// Solve the Riemann-Hurwitz relation 2g - 2 = d(2b - 2) + r for the genus g
/// of a degree-d cover of a genus-b curve with total ramification excess r.
///
/// The result may be negative or non-integral; both signal that no such
/// cover exists (see [`is_realizable_genus`]).
pub fn rh_genus(degree: i64, base_genus: i64, ramification_excess: i64) -> Result<Rational, EulerError> {
    if degree < 1 {
        return Err(EulerError::BadDegree(degree));
    }
    let rhs = degree * (2 * base_genus - 2) + ramification_excess;
    Ok(Rational::new(rhs + 2, 2))
}

/// A value returned by [`rh_genus`] is the genus of an actual curve only if
/// it is a nonnegative integer.
pub fn is_realizable_genus(g: &Rational) -> bool {
    g.is_integer() && !g.is_negative()
}

/// Provenance of a ledger constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Asserted by the source computation being replayed.
    Stated,
    /// Produced by one of the oracles implemented in this crate.
    Derived,
    /// True by definition (e.g. chi of a point).
    Definition,
}

/// A named rational constant with provenance and a one-line anchor note.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantDef {
    pub name: String,
    #[serde(with = "rational_str")]
    pub value: Rational,
    pub provenance: Provenance,
    pub note: String,
}

/// One summand of a ledger: coeff * product of named factors.
/// An empty factor list means the bare coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerTerm {
    #[serde(with = "rational_str")]
    pub coeff: Rational,
    pub factors: Vec<String>,
}

/// A replayable chi computation: named constants, a sum of products, and the
/// asserted total. When `partition_of` is set, the ledger additionally
/// certifies additivity: all coefficients must be 1 and the total must equal
/// the named whole (this is how the "strata partition the base" side
/// condition of [`stratified_cover_chi`] gets checked).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiLedger {
    pub name: String,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition_of: Option<String>,
    pub constants: Vec<ConstantDef>,
    pub terms: Vec<LedgerTerm>,
    #[serde(with = "rational_str")]
    pub expected: Rational,
}

/// Result of evaluating one ledger.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerOutcome {
    pub name: String,
    #[serde(with = "rational_str")]
    pub value: Rational,
    #[serde(with = "rational_str")]
    pub expected: Rational,
    pub pass: bool,
}

impl ChiLedger {
    /// Evaluate against an environment of previously exported results.
    pub fn eval(&self, env: &BTreeMap<String, Rational>) -> Result<LedgerOutcome, EulerError> {
        let mut scope = env.clone();
        for c in &self.constants {
            if scope.insert(c.name.clone(), c.value).is_some() {
                return Err(EulerError::DuplicateConstant(c.name.clone()));
            }
        }
        let mut total = Rational::zero();
        for term in &self.terms {
            let mut prod = term.coeff;
            for factor in &term.factors {
                let value = scope
                    .get(factor)
                    .ok_or_else(|| EulerError::UnresolvedName(factor.clone()))?;
                prod *= *value;
            }
            total += prod;
        }
        let mut pass = total == self.expected;
        if let Some(whole) = &self.partition_of {
            if self.terms.iter().any(|t| !t.coeff.is_one()) {
                return Err(EulerError::BadPartitionCoeff(self.name.clone()));
            }
            let whole_chi = scope
                .get(whole)
                .ok_or_else(|| EulerError::UnresolvedName(whole.clone()))?;
            pass = pass && total == *whole_chi;
        }
        Ok(LedgerOutcome {
            name: self.name.clone(),
            value: total,
            expected: self.expected,
            pass,
        })
    }
}

/// An ordered sequence of ledgers. Each ledger may export its total under
/// `result`, making it resolvable as a factor in all later ledgers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerBook {
    pub ledgers: Vec<ChiLedger>,
}

impl LedgerBook {
    pub fn from_json(text: &str) -> Result<Self, EulerError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical serialized form; byte-exact round-trip with `from_json`.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("book serializes");
        s.push('\n');
        s
    }

    /// The bundled ledgers: the two strata-partition certificates, the two
    /// open-space covering sums, and the two compactified totals.
    pub fn builtin() -> Self {
        Self::from_json(include_str!("../data/chi_book.json")).expect("bundled book parses")
    }

    /// Evaluate all ledgers in order, threading exported results.
    pub fn eval_all(&self) -> Result<Vec<LedgerOutcome>, EulerError> {
        let mut env: BTreeMap<String, Rational> = BTreeMap::new();
        let mut outcomes = Vec::with_capacity(self.ledgers.len());
        for ledger in &self.ledgers {
            let outcome = ledger.eval(&env)?;
            if let Some(result_name) = &ledger.result {
                if env.insert(result_name.clone(), outcome.value).is_some() {
                    return Err(EulerError::DuplicateConstant(result_name.clone()));
                }
            }
            outcomes.push(outcome);
        }
        Ok(outcomes)
    }

    pub fn find(&self, name: &str) -> Option<&ChiLedger> {
        self.ledgers.iter().find(|l| l.name == name)
    }
}
