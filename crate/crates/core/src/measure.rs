//! Finite measure spaces and the scalar information functionals on them.
//!
//! A [`FiniteFunction`] is a finite weighted domain together with an
//! assignment of each domain point to one of finitely many values. Its
//! preimage masses induce a [`Distribution`], which is what every entropy
//! formula consumes. With the counting measure the induced probabilities are
//! exact integer ratios; they are converted to `f64` only when the
//! distribution is formed.
//!
//! Conventions: logarithms are base 2, `0 * log 0 = 0`, and the
//! self-information of a probability-zero event is the explicit
//! [`InfoValue::Infinite`] sentinel rather than a floating-point overflow.

use std::collections::HashSet;
use std::fmt;

use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance on `|sum - 1|` accepted by distribution constructors.
/// Inputs outside it are rejected, never renormalized silently; renormalizing
/// is what [`Distribution::normalized`] is for.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A value label: an exact integer or an opaque string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(v) => write!(f, "{v}"),
            Label::Text(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Text(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::Text(s)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Label::Int(v) => serializer.serialize_i64(*v),
            Label::Text(s) => serializer.serialize_str(s),
        }
    }
}

/// A nonnegative extended real measured in bits.
///
/// `Infinite` arises only from probability-zero events (and from ratios with
/// a zero denominator); consumers must branch on it explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InfoValue {
    Bits(f64),
    Infinite,
}

impl InfoValue {
    pub fn bits(self) -> Option<f64> {
        match self {
            InfoValue::Bits(b) => Some(b),
            InfoValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, InfoValue::Infinite)
    }

    pub fn is_finite(self) -> bool {
        !self.is_infinite()
    }

    /// Extended-real ratio `self / denominator`.
    ///
    /// A zero (or infinite-over-infinite) denominator case propagates the
    /// infinite sentinel; a finite numerator over an infinite denominator is 0.
    pub fn per(self, denominator: InfoValue) -> InfoValue {
        match (self, denominator) {
            (InfoValue::Bits(a), InfoValue::Bits(b)) => {
                if b == 0.0 {
                    InfoValue::Infinite
                } else {
                    InfoValue::Bits(a / b)
                }
            }
            (InfoValue::Infinite, _) => InfoValue::Infinite,
            (InfoValue::Bits(_), InfoValue::Infinite) => InfoValue::Bits(0.0),
        }
    }
}

impl fmt::Display for InfoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoValue::Bits(b) => write!(f, "{b}"),
            InfoValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for InfoValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            InfoValue::Bits(b) => serializer.serialize_f64(*b),
            InfoValue::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// Compensated (Neumaier) summation.
pub(crate) fn neumaier_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    sum + comp
}

/// `-p * log2(p)` with the `0 log 0 = 0` convention.
#[inline]
pub(crate) fn entropy_term(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// A finite probability vector, optionally labeled per value.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
    labels: Option<Vec<Label>>,
}

impl Distribution {
    /// Validates and wraps a probability vector. Entries must be in `[0, 1]`
    /// and sum to 1 within [`SUM_TOLERANCE`].
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        Self::build(probs, None)
    }

    pub fn with_labels(probs: Vec<f64>, labels: Vec<Label>) -> Result<Self> {
        Self::build(probs, Some(labels))
    }

    fn build(probs: Vec<f64>, labels: Option<Vec<Label>>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::NegativeProbability { index, value: p });
            }
            if p > 1.0 + SUM_TOLERANCE {
                return Err(Error::NotNormalized {
                    sum: p,
                    tolerance: SUM_TOLERANCE,
                });
            }
        }
        let sum = neumaier_sum(probs.iter().copied());
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                tolerance: SUM_TOLERANCE,
            });
        }
        if let Some(ref l) = labels {
            if l.len() != probs.len() {
                return Err(Error::LengthMismatch {
                    what: "labels",
                    expected: probs.len(),
                    got: l.len(),
                });
            }
        }
        Ok(Self { probs, labels })
    }

    /// Explicitly renormalizes raw nonnegative masses to a distribution.
    pub fn normalized(masses: &[f64]) -> Result<Self> {
        if masses.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        for (index, &m) in masses.iter().enumerate() {
            if !m.is_finite() || m < 0.0 {
                return Err(Error::NegativeProbability { index, value: m });
            }
        }
        let total = neumaier_sum(masses.iter().copied());
        if total <= 0.0 {
            return Err(Error::ZeroTotalMeasure { total });
        }
        Self::build(masses.iter().map(|m| m / total).collect(), None)
    }

    /// Builds a distribution from exact integer counts. Each probability is a
    /// single correctly rounded ratio `count / total`.
    pub fn from_counts(counts: &[u64], labels: Option<Vec<Label>>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let total: u128 = counts.iter().map(|&c| c as u128).sum();
        if total == 0 {
            return Err(Error::ZeroTotalMeasure { total: 0.0 });
        }
        let t = total as f64;
        Self::build(counts.iter().map(|&c| c as f64 / t).collect(), labels)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::from_counts(&vec![1u64; n], None)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> Option<f64> {
        self.probs.get(k).copied()
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    /// Shannon entropy `-Σ p log2 p` in bits. Always finite, in
    /// `[0, log2 n]`.
    pub fn entropy(&self) -> InfoValue {
        let h = neumaier_sum(self.probs.iter().map(|&p| entropy_term(p)));
        // A one-point distribution yields -1 * (+0) = -0.0; normalize it.
        InfoValue::Bits(if h == 0.0 { 0.0 } else { h })
    }

    /// Self-information `-log2 p_k` of the event "value k occurs".
    pub fn self_information(&self, k: usize) -> Result<InfoValue> {
        let p = self.prob(k).ok_or(Error::IndexOutOfRange {
            index: k,
            len: self.probs.len(),
        })?;
        Ok(if p == 0.0 {
            InfoValue::Infinite
        } else {
            let i = -p.log2();
            InfoValue::Bits(if i == 0.0 { 0.0 } else { i })
        })
    }

    /// Total information `Σ_k -log2 p_k`; infinite as soon as any value has
    /// probability zero.
    pub fn total_information(&self) -> InfoValue {
        if self.probs.iter().any(|&p| p == 0.0) {
            return InfoValue::Infinite;
        }
        let total = neumaier_sum(self.probs.iter().map(|&p| -p.log2()));
        InfoValue::Bits(if total == 0.0 { 0.0 } else { total })
    }
}

/// A finite weighted domain, a finite list of distinct values, and an
/// assignment of every domain point to exactly one value.
///
/// Without explicit weights the domain carries the counting measure.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteFunction {
    values: Vec<Label>,
    assignment: Vec<u32>,
    weights: Option<Vec<f64>>,
}

impl FiniteFunction {
    /// Counting-measure function: `assignment[x]` is the value index of
    /// domain point `x`.
    pub fn new(values: Vec<Label>, assignment: Vec<u32>) -> Result<Self> {
        Self::build(values, assignment, None)
    }

    /// Weighted-domain function; weights must be nonnegative with a positive
    /// finite total.
    pub fn weighted(values: Vec<Label>, assignment: Vec<u32>, weights: Vec<f64>) -> Result<Self> {
        Self::build(values, assignment, Some(weights))
    }

    /// Builds a counting-measure function from one output per domain point,
    /// with values ordered by first appearance.
    pub fn from_outputs<I, L>(outputs: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let mut values: Vec<Label> = Vec::new();
        let mut index: std::collections::HashMap<Label, u32> = std::collections::HashMap::new();
        let mut assignment = Vec::new();
        for out in outputs {
            let label = out.into();
            let idx = *index.entry(label.clone()).or_insert_with(|| {
                values.push(label);
                (values.len() - 1) as u32
            });
            assignment.push(idx);
        }
        Self::build(values, assignment, None)
    }

    fn build(values: Vec<Label>, assignment: Vec<u32>, weights: Option<Vec<f64>>) -> Result<Self> {
        if values.is_empty() || assignment.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let distinct: HashSet<&Label> = values.iter().collect();
        if distinct.len() != values.len() {
            return Err(Error::DuplicateValueLabel);
        }
        for &v in &assignment {
            if v as usize >= values.len() {
                return Err(Error::BadValueIndex {
                    index: v as usize,
                    len: values.len(),
                });
            }
        }
        if let Some(ref w) = weights {
            if w.len() != assignment.len() {
                return Err(Error::LengthMismatch {
                    what: "weights",
                    expected: assignment.len(),
                    got: w.len(),
                });
            }
            for (index, &x) in w.iter().enumerate() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::BadWeight { index, value: x });
                }
            }
            let total = neumaier_sum(w.iter().copied());
            if !(total > 0.0) || !total.is_finite() {
                return Err(Error::ZeroTotalMeasure { total });
            }
        }
        Ok(Self {
            values,
            assignment,
            weights,
        })
    }

    pub fn domain_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn values(&self) -> &[Label] {
        &self.values
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Total measure of the domain: `N` under counting, `Σ w` otherwise.
    pub fn total_measure(&self) -> f64 {
        match &self.weights {
            None => self.assignment.len() as f64,
            Some(w) => neumaier_sum(w.iter().copied()),
        }
    }

    /// Preimage masses per value, in value order.
    pub fn value_masses(&self) -> Vec<f64> {
        match &self.weights {
            None => {
                let mut counts = vec![0u64; self.values.len()];
                for &v in &self.assignment {
                    counts[v as usize] += 1;
                }
                counts.iter().map(|&c| c as f64).collect()
            }
            Some(w) => {
                let mut masses = vec![0.0f64; self.values.len()];
                for (&v, &x) in self.assignment.iter().zip(w.iter()) {
                    masses[v as usize] += x;
                }
                masses
            }
        }
    }

    /// The induced distribution `p_k = mu(f^{-1}(y_k)) / mu(X)`, in value
    /// order, labels copied. Exact integer ratios under the counting measure.
    pub fn distribution(&self) -> Distribution {
        let labels = Some(self.values.clone());
        match &self.weights {
            None => {
                let mut counts = vec![0u64; self.values.len()];
                for &v in &self.assignment {
                    counts[v as usize] += 1;
                }
                Distribution::from_counts(&counts, labels)
                    .expect("counting measure of a non-empty domain is positive")
            }
            Some(_) => {
                let masses = self.value_masses();
                let total = neumaier_sum(masses.iter().copied());
                let probs: Vec<f64> = masses.iter().map(|&m| m / total).collect();
                Distribution::build(probs, labels)
                    .expect("constructor guarantees a positive finite total weight")
            }
        }
    }
}
