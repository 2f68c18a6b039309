//! Query-count estimators: ratios of information quantities read as numbers
//! of oracle queries.
//!
//! For a target event `f = y_k` answered through a second function `g`, the
//! ledger is
//!
//! * least queries   = `I(f = y_k) / I(f = y_k; g)`
//! * average queries = `I(f = y_k) / I(f; g)`
//! * expected queries = `H(f) / I(f; g)` (at least 1, since `I <= H(f)`)
//! * lower bound     = `I(f = y_k) / H(f)`, the best any route can do
//! * brute force     = `1 / p_k` retries in expectation
//!
//! Counts are what these ratios measure — never wall-clock claims; each
//! query's own cost is outside the model. A nonpositive pointwise mutual
//! information makes the pointwise count meaningless, so it is refused with
//! a diagnostic rather than reported as a negative number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::joint::{JointModel, Pmi};
use crate::measure::InfoValue;

/// The estimator bundle for one event of a joint model.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityReport {
    pub event_index: usize,
    pub event_probability: f64,
    /// `I(f = y_k)`
    pub event_info: InfoValue,
    /// `I(f = y_k; g)`
    pub event_mi: InfoValue,
    /// `I(f; g)`
    pub avg_mi: InfoValue,
    /// `H(f)`
    pub entropy_f: InfoValue,
    pub least_queries: InfoValue,
    pub avg_queries: InfoValue,
    pub expected_queries: InfoValue,
    /// `I(f = y_k) / H(f)`
    pub lower_bound: InfoValue,
    /// `1 / p_k`
    pub brute_force_bound: f64,
    /// Whether `I(f; g) >= p_k * I(f = y_k)`; when false, brute force beats
    /// every reduction through `g` on average.
    pub benchmark_ok: bool,
}

/// Assembles the full estimator bundle for row event `k`. Infinity
/// propagates through every ratio whose denominator information is zero.
pub fn report(j: &JointModel, k: usize) -> Result<ComplexityReport> {
    if k >= j.n_rows() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: j.n_rows(),
        });
    }
    let p_k = j.row_prob(k);
    if p_k == 0.0 {
        return Err(Error::ZeroProbabilityEvent { index: k });
    }
    let marginal = j.row_marginal();
    let event_info = marginal.self_information(k)?;
    let event_mi = j.event_mi(k)?;
    let avg_mi = j.mutual_information();
    let entropy_f = marginal.entropy();
    let benchmark_ok = match (avg_mi, event_info) {
        (InfoValue::Bits(i), InfoValue::Bits(e)) => i >= p_k * e,
        _ => unreachable!("both are finite when p_k > 0"),
    };
    Ok(ComplexityReport {
        event_index: k,
        event_probability: p_k,
        event_info,
        event_mi,
        avg_mi,
        entropy_f,
        least_queries: event_info.per(event_mi),
        avg_queries: event_info.per(avg_mi),
        expected_queries: entropy_f.per(avg_mi),
        lower_bound: event_info.per(entropy_f),
        brute_force_bound: 1.0 / p_k,
        benchmark_ok,
    })
}

/// `time(f = y_k) = I(f = y_k) / pmi` for a single outcome pair. The pmi
/// must be strictly positive — otherwise this query pair conveys nothing
/// about the event and no count is defined.
pub fn pointwise_time(event_info: InfoValue, pmi_bits: f64) -> Result<InfoValue> {
    if !(pmi_bits > 0.0) {
        return Err(Error::NonpositivePmi { value: pmi_bits });
    }
    Ok(event_info.per(InfoValue::Bits(pmi_bits)))
}

/// Both directions of a two-way reduction between a row event and a column
/// event, with their information-per-query rates.
#[derive(Debug, Clone, Serialize)]
pub struct ReversibleIdentity {
    pub pmi: f64,
    pub row_event_info: f64,
    pub col_event_info: f64,
    pub time_row: f64,
    pub time_col: f64,
    /// `I(row event) / time_row`
    pub row_rate: f64,
    /// `I(col event) / time_col`
    pub col_rate: f64,
    pub holds: bool,
}

pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Checks that solving in either direction extracts information at the same
/// per-query rate, namely the shared pointwise mutual information.
pub fn reversible_identity_check(j: &JointModel, k: usize, i: usize) -> Result<ReversibleIdentity> {
    let pmi = match j.pmi(k, i)? {
        Pmi::Bits(b) if b > 0.0 => b,
        Pmi::Bits(b) => return Err(Error::NonpositivePmi { value: b }),
        Pmi::NegInfinite => return Err(Error::NonpositivePmi { value: f64::NEG_INFINITY }),
    };
    let row_event_info = -j.row_prob(k).log2();
    let col_event_info = -j.col_prob(i).log2();
    let time_row = row_event_info / pmi;
    let time_col = col_event_info / pmi;
    let row_rate = row_event_info / time_row;
    let col_rate = col_event_info / time_col;
    let holds = (row_rate - pmi).abs() <= IDENTITY_TOLERANCE
        && (col_rate - pmi).abs() <= IDENTITY_TOLERANCE
        && (row_rate - col_rate).abs() <= IDENTITY_TOLERANCE;
    Ok(ReversibleIdentity {
        pmi,
        row_event_info,
        col_event_info,
        time_row,
        time_col,
        row_rate,
        col_rate,
        holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealEngineEntry {
    pub event_index: usize,
    pub avg_queries: f64,
    pub info_ratio: f64,
    pub matches: bool,
}

/// Verdict of the extraction-rate check: in the ideal case
/// `I(f; g) = H(f)`, the average query count of every event equals its
/// information ratio `I(f = y_k) / H(f)`; otherwise the shortfall
/// `H(f) - I(f; g)` is reported.
#[derive(Debug, Clone, Serialize)]
pub struct IdealEngineCheck {
    pub ideal: bool,
    pub gap_bits: f64,
    pub entries: Vec<IdealEngineEntry>,
}

pub const IDEAL_TOLERANCE: f64 = 1e-9;

pub fn ideal_engine_check(j: &JointModel) -> IdealEngineCheck {
    let h_f = j.row_entropy().bits().expect("marginal entropy is finite");
    let mi = j
        .mutual_information()
        .bits()
        .expect("mutual information of a valid joint is finite");
    let gap_bits = h_f - mi;
    let ideal = gap_bits.abs() <= IDEAL_TOLERANCE;
    let mut entries = Vec::new();
    if ideal {
        for k in 0..j.n_rows() {
            let p = j.row_prob(k);
            if p == 0.0 {
                continue;
            }
            let event_info = -p.log2();
            let avg_queries = event_info / mi;
            let info_ratio = if h_f == 0.0 { 0.0 } else { event_info / h_f };
            entries.push(IdealEngineEntry {
                event_index: k,
                avg_queries,
                info_ratio,
                matches: (avg_queries - info_ratio).abs() <= IDEAL_TOLERANCE,
            });
        }
    }
    IdealEngineCheck {
        ideal,
        gap_bits,
        entries,
    }
}

/// The tail bound behind "a huge information ratio makes a small query
/// budget overwhelmingly unlikely to suffice".
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MarkovBound {
    /// `ratio / poly_budget`: the factor by which the event's per-query
    /// information would have to exceed its mean.
    pub epsilon: f64,
    /// `1 / epsilon`, the probability bound from the mean constraint.
    pub bound: f64,
    /// True when `epsilon <= 1` and the bound says nothing.
    pub vacuous: bool,
}

pub fn markov_bound(poly_budget: f64, ratio: f64) -> Result<MarkovBound> {
    if !(poly_budget > 0.0) || !poly_budget.is_finite() {
        return Err(Error::OutOfRange {
            what: "poly_budget",
            value: poly_budget,
            expected: "a positive finite number",
        });
    }
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::OutOfRange {
            what: "ratio",
            value: ratio,
            expected: "a positive finite number",
        });
    }
    let epsilon = ratio / poly_budget;
    Ok(MarkovBound {
        epsilon,
        bound: 1.0 / epsilon,
        vacuous: epsilon <= 1.0,
    })
}

/// Average trials needed to certify a satisfying assignment, exactly and in
/// its large-search-space approximation.
#[derive(Debug, Clone, Serialize)]
pub struct SatTrialsBound {
    pub n: u32,
    pub k: u128,
    pub p1: f64,
    /// `I(1) / H` for the indicator with `p1 = k / 2^n`.
    pub exact: InfoValue,
    /// `2^n / k`.
    pub approx: InfoValue,
    /// `|exact - approx| / approx` when both are finite.
    pub relative_gap: Option<f64>,
}

/// Largest variable count accepted; beyond this even `p1 = 2^-n` drops out
/// of f64 range.
pub const SAT_TRIALS_MAX_N: u32 = 1000;

/// Evaluates the trials ratio with the indicator probability `p1 = k / 2^n`.
///
/// For tiny `p1` the entropy is dominated by `-p1 log2 p1`, and the
/// complementary term `-(1 - p1) log2(1 - p1)` underflows a naive
/// evaluation; `ln_1p` keeps it at full relative accuracy down to
/// `p1 ~ 1e-300`.
pub fn sat_trials_bound(n: u32, k: u128) -> Result<SatTrialsBound> {
    if n == 0 || n > SAT_TRIALS_MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as f64,
            expected: "1..=1000",
        });
    }
    if n < 128 && k > 1u128 << n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as f64,
            expected: "0..=2^n",
        });
    }
    if k == 0 {
        return Ok(SatTrialsBound {
            n,
            k,
            p1: 0.0,
            exact: InfoValue::Infinite,
            approx: InfoValue::Infinite,
            relative_gap: None,
        });
    }
    let log2_k = (k as f64).log2();
    let p1 = (k as f64) * (-(n as f64)).exp2();
    // I(1) = n - log2 k, exact to rounding.
    let info = n as f64 - log2_k;
    if p1 >= 1.0 {
        // k = 2^n: the indicator is constant 1.
        return Ok(SatTrialsBound {
            n,
            k,
            p1: 1.0,
            exact: InfoValue::Bits(0.0).per(InfoValue::Bits(0.0)),
            approx: InfoValue::Bits(1.0),
            relative_gap: None,
        });
    }
    let complement = -(1.0 - p1) * (-p1).ln_1p() / std::f64::consts::LN_2;
    let entropy = p1 * info + complement;
    let exact = info / entropy;
    let approx = (info).exp2(); // 2^(n - log2 k) = 2^n / k
    Ok(SatTrialsBound {
        n,
        k,
        p1,
        exact: InfoValue::Bits(exact),
        approx: InfoValue::Bits(approx),
        relative_gap: Some((exact - approx).abs() / approx),
    })
}

/// Comparison of a reduction against plain retry-until-success.
#[derive(Debug, Clone, Serialize)]
pub struct BruteForceBenchmark {
    /// `I(f; g) >= p_k * I(f = y_k)`?
    pub holds: bool,
    /// `p_k * I(f = y_k)`, the information floor.
    pub threshold_bits: f64,
    pub avg_mi_bits: f64,
    /// `1 / p_k`: expected retries until the first success.
    pub brute_force_queries: f64,
    /// `I(f = y_k) / I(f; g)`; exceeds `1 / p_k` exactly when the floor is
    /// violated.
    pub avg_queries: InfoValue,
}

pub fn brute_force_benchmark(
    p_k: f64,
    event_info: InfoValue,
    avg_mi: InfoValue,
) -> Result<BruteForceBenchmark> {
    if !(p_k > 0.0) || p_k > 1.0 {
        return Err(Error::OutOfRange {
            what: "p_k",
            value: p_k,
            expected: "(0, 1]",
        });
    }
    let event_bits = match event_info {
        InfoValue::Bits(b) => b,
        InfoValue::Infinite => {
            return Err(Error::OutOfRange {
                what: "event_info",
                value: f64::INFINITY,
                expected: "finite bits when p_k > 0",
            })
        }
    };
    let avg_mi_bits = avg_mi.bits().unwrap_or(f64::MAX);
    let threshold_bits = p_k * event_bits;
    Ok(BruteForceBenchmark {
        holds: avg_mi_bits >= threshold_bits,
        threshold_bits,
        avg_mi_bits,
        brute_force_queries: 1.0 / p_k,
        avg_queries: event_info.per(avg_mi),
    })
}
