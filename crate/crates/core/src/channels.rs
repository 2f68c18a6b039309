//! Two-by-two conditional models of randomized deciders.
//!
//! A [`BinaryChannel`] couples the true membership indicator (probability of
//! acceptance `p1`) with its randomized version under one of three error
//! disciplines:
//!
//! * [`ChannelKind::OneSided`] — a wrong input is never accepted; a right
//!   one is missed with probability `eps`.
//! * [`ChannelKind::Symmetric`] — either answer flips with probability
//!   `eps`, a binary symmetric channel.
//! * [`ChannelKind::Majority`] — answers are right with probability only
//!   `1/2 + eps`, the vanishing-margin regime.
//!
//! Every analysis carries both matrix-derived and closed-form values; the
//! matrix route (through [`JointModel`]) is the oracle the closed forms are
//! tested against.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::joint::JointModel;
use crate::measure::{InfoValue, Label};

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    crate::measure::entropy_term(p) + crate::measure::entropy_term(1.0 - p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChannelKind {
    /// One-sided error: rejection is always correct.
    OneSided,
    /// Two-sided symmetric error with a bounded rate.
    Symmetric,
    /// Majority margin: correct with probability `1/2 + eps` only.
    Majority,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::OneSided => "one-sided",
            ChannelKind::Symmetric => "symmetric",
            ChannelKind::Majority => "majority",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BinaryChannel {
    kind: ChannelKind,
    p1: f64,
    eps: f64,
}

impl BinaryChannel {
    /// `p1` is the acceptance probability of the underlying indicator,
    /// `eps` the error parameter. One-sided and symmetric channels accept
    /// `0 <= eps <= 1/2`; the majority channel needs `0 < eps < 1/2`.
    pub fn new(kind: ChannelKind, p1: f64, eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) || !p1.is_finite() {
            return Err(Error::OutOfRange {
                what: "p1",
                value: p1,
                expected: "[0, 1]",
            });
        }
        let eps_ok = match kind {
            ChannelKind::OneSided | ChannelKind::Symmetric => (0.0..=0.5).contains(&eps),
            ChannelKind::Majority => eps > 0.0 && eps < 0.5,
        };
        if !eps_ok || !eps.is_finite() {
            return Err(Error::OutOfRange {
                what: "eps",
                value: eps,
                expected: "[0, 1/2] (majority: open interval)",
            });
        }
        Ok(Self { kind, p1, eps })
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p0(&self) -> f64 {
        1.0 - self.p1
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Conditional rows `Pr(noisy answer | true answer)`, true answer 0
    /// first. Each row sums to 1 exactly.
    pub fn conditional(&self) -> [[f64; 2]; 2] {
        let e = self.eps;
        match self.kind {
            ChannelKind::OneSided => [[1.0, 0.0], [e, 1.0 - e]],
            ChannelKind::Symmetric => [[1.0 - e, e], [e, 1.0 - e]],
            ChannelKind::Majority => [[0.5 + e, 0.5 - e], [0.5 - e, 0.5 + e]],
        }
    }

    /// Closed-form output marginal `[Pr(noisy = 0), Pr(noisy = 1)]`.
    pub fn output_marginal(&self) -> [f64; 2] {
        let (p0, p1, e) = (self.p0(), self.p1, self.eps);
        match self.kind {
            ChannelKind::OneSided => [p0 + p1 * e, p1 * (1.0 - e)],
            ChannelKind::Symmetric => [p0 * (1.0 - e) + p1 * e, p0 * e + p1 * (1.0 - e)],
            ChannelKind::Majority => [
                0.5 + e * (p0 - p1),
                0.5 + e * (p1 - p0),
            ],
        }
    }

    /// Joint law with rows = true indicator, columns = noisy indicator.
    pub fn joint(&self) -> JointModel {
        let cond = self.conditional();
        let rows = vec![
            vec![self.p0() * cond[0][0], self.p0() * cond[0][1]],
            vec![self.p1 * cond[1][0], self.p1 * cond[1][1]],
        ];
        JointModel::from_matrix_labeled(
            rows,
            vec![Label::Int(0), Label::Int(1)],
            vec![Label::Int(0), Label::Int(1)],
        )
        .expect("channel rows are a valid joint")
    }

    /// `H(chi)`: entropy of the true indicator.
    pub fn language_entropy(&self) -> f64 {
        binary_entropy(self.p1)
    }

    /// `H(chi^eps)` from the closed-form marginal.
    pub fn output_entropy(&self) -> f64 {
        let m = self.output_marginal();
        binary_entropy(m[1])
    }
}

fn require_kind(c: &BinaryChannel, expected: ChannelKind) -> Result<()> {
    if c.kind() != expected {
        return Err(Error::WrongChannelKind {
            found: c.kind().name(),
            expected: expected.name(),
        });
    }
    Ok(())
}

/// Closed form for the one-sided channel's conditional entropy
/// `H(noisy | true) = -p1 [eps log eps + (1 - eps) log(1 - eps)]`,
/// which vanishes as `eps -> 0`.
pub fn one_sided_conditional_entropy(c: &BinaryChannel) -> Result<f64> {
    require_kind(c, ChannelKind::OneSided)?;
    Ok(c.p1() * binary_entropy(c.eps()))
}

/// Full analysis of the symmetric (two-sided) channel.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetricAnalysis {
    pub p1: f64,
    pub eps: f64,
    /// `H(chi^eps)`, closed form.
    pub output_entropy: f64,
    /// `H(chi^eps | chi) = h(eps)`, independent of `p1`.
    pub conditional_entropy: f64,
    /// `I(chi; chi^eps)`, closed form (output entropy minus `h(eps)`).
    pub mutual_information: f64,
    pub language_entropy: f64,
    /// `H(chi) / I`: expected queries to pin the true answer.
    pub expected_queries: InfoValue,
    /// The four-factor decomposition of `I(chi = 1) / I(chi; chi^eps)`:
    /// accept-event info over noisy-accept info, noisy-accept info over
    /// output entropy, output entropy over language entropy, language
    /// entropy over mutual information.
    pub factors: [InfoValue; 4],
    pub factor_product: InfoValue,
    /// `I(chi = 1) / I(chi; chi^eps)` computed directly.
    pub avg_queries_accept: InfoValue,
}

pub fn symmetric_analysis(c: &BinaryChannel) -> Result<SymmetricAnalysis> {
    require_kind(c, ChannelKind::Symmetric)?;
    let conditional_entropy = binary_entropy(c.eps());
    let output_entropy = c.output_entropy();
    let mi = output_entropy - conditional_entropy;
    let language_entropy = c.language_entropy();

    let fin = InfoValue::Bits;
    let info_accept = if c.p1() == 0.0 {
        InfoValue::Infinite
    } else {
        fin(-c.p1().log2())
    };
    let noisy_accept = c.output_marginal()[1];
    let info_noisy_accept = if noisy_accept == 0.0 {
        InfoValue::Infinite
    } else {
        fin(-noisy_accept.log2())
    };
    let factors = [
        info_accept.per(info_noisy_accept),
        info_noisy_accept.per(fin(output_entropy)),
        fin(output_entropy).per(fin(language_entropy)),
        fin(language_entropy).per(fin(mi)),
    ];
    let factor_product = factors.iter().fold(fin(1.0), |acc, f| match (acc, f) {
        (InfoValue::Bits(a), InfoValue::Bits(b)) => fin(a * b),
        _ => InfoValue::Infinite,
    });
    Ok(SymmetricAnalysis {
        p1: c.p1(),
        eps: c.eps(),
        output_entropy,
        conditional_entropy,
        mutual_information: mi,
        language_entropy,
        expected_queries: fin(language_entropy).per(fin(mi)),
        factors,
        factor_product,
        avg_queries_accept: info_accept.per(fin(mi)),
    })
}

/// Full analysis of the majority-margin channel.
#[derive(Debug, Clone, Serialize)]
pub struct MajorityAnalysis {
    pub p1: f64,
    pub eps: f64,
    /// `H(chi^eps)`, closed form.
    pub output_entropy: f64,
    /// `H(chi^eps | chi) = h(1/2 + eps)`, closed form.
    pub conditional_entropy: f64,
    /// Exact `I(chi; chi^eps)` from the joint matrix.
    pub mutual_information: f64,
    /// Small-margin estimate `16 eps^2 p0 p1`.
    pub mi_small_margin: f64,
    /// Whether the two algebraic forms of the estimate agree
    /// (`4 eps^2 [1 - (p0 - p1)^2]` vs `16 eps^2 p0 p1`).
    pub forms_agree: bool,
    pub language_entropy: f64,
    /// `H(chi) / I`: expected repetitions to decide by majority.
    pub repetitions: InfoValue,
    /// `(1 / eps^2) * H(chi) / (16 p0 p1)`.
    pub repetitions_small_margin: InfoValue,
    /// `|I - estimate| / I` when `I > 0`.
    pub estimate_relative_error: Option<f64>,
}

pub fn majority_analysis(c: &BinaryChannel) -> Result<MajorityAnalysis> {
    require_kind(c, ChannelKind::Majority)?;
    let (p0, p1, e) = (c.p0(), c.p1(), c.eps());
    let output_entropy = c.output_entropy();
    let conditional_entropy = binary_entropy(0.5 + e);
    let mi = c
        .joint()
        .mutual_information()
        .bits()
        .expect("channel mutual information is finite");
    let form_a = 4.0 * e * e * (1.0 - (p0 - p1) * (p0 - p1));
    let form_b = 16.0 * e * e * p0 * p1;
    let forms_agree = (form_a - form_b).abs() <= 1e-12 * form_b.max(1e-300);
    let language_entropy = c.language_entropy();
    let fin = InfoValue::Bits;
    let repetitions_small_margin = if form_b == 0.0 {
        InfoValue::Infinite
    } else {
        fin(language_entropy / form_b)
    };
    Ok(MajorityAnalysis {
        p1,
        eps: e,
        output_entropy,
        conditional_entropy,
        mutual_information: mi,
        mi_small_margin: form_b,
        forms_agree,
        language_entropy,
        repetitions: fin(language_entropy).per(fin(mi)),
        repetitions_small_margin,
        estimate_relative_error: if mi > 0.0 {
            Some((mi - form_b).abs() / mi)
        } else {
            None
        },
    })
}

/// The error margin below which retrying the majority channel loses to
/// brute-force search.
#[derive(Debug, Clone, Serialize)]
pub struct MajorityThreshold {
    pub p1: f64,
    /// `p1 * I(chi = 1)`: the information floor to meet.
    pub target_bits: f64,
    /// Smallest margin with `I(chi; chi^eps) >= target`, by bisection; the
    /// mutual information is strictly increasing in the margin.
    pub eps_exact: Option<f64>,
    /// The first-order estimate collapses to a constant: 1/4.
    pub eps_small_margin: f64,
    /// `|eps_exact - 1/4|` when the exact threshold exists.
    pub gap: Option<f64>,
}

/// Bisection width for the threshold search.
pub const THRESHOLD_TOLERANCE: f64 = 1e-12;

/// Exact mutual information of the majority channel at margin `eps`,
/// without range policing (used while searching).
pub fn majority_mi(p1: f64, eps: f64) -> f64 {
    let p0 = 1.0 - p1;
    let rows = vec![
        vec![p0 * (0.5 + eps), p0 * (0.5 - eps)],
        vec![p1 * (0.5 - eps), p1 * (0.5 + eps)],
    ];
    JointModel::from_matrix(rows)
        .expect("majority rows form a valid joint")
        .mutual_information()
        .bits()
        .expect("finite on a valid joint")
}

pub fn majority_error_threshold(p1: f64) -> Result<MajorityThreshold> {
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(Error::OutOfRange {
            what: "p1",
            value: p1,
            expected: "(0, 1)",
        });
    }
    let target_bits = -p1 * p1.log2();
    let hi_limit = 0.5 - 1e-15;
    let eps_exact = if majority_mi(p1, hi_limit) < target_bits {
        None
    } else {
        let (mut lo, mut hi) = (0.0f64, hi_limit);
        while hi - lo > THRESHOLD_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if majority_mi(p1, mid) >= target_bits {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    };
    Ok(MajorityThreshold {
        p1,
        target_bits,
        eps_exact,
        eps_small_margin: 0.25,
        gap: eps_exact.map(|e| (e - 0.25).abs()),
    })
}
