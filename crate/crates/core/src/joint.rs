//! Joint distributions of two finite functions and every two-function
//! information quantity.
//!
//! A [`JointModel`] is an `n x m` matrix of `Pr(f = y_k, g = z_i)` with rows
//! indexed by `f`'s values and columns by `g`'s. It can be realized from two
//! functions on one shared domain ([`JointModel::of`], exact under the
//! counting measure) or entered directly as a matrix for channels that have
//! no common domain — marginal consistency is then the only check.
//!
//! Pointwise mutual information may be negative and hits the `-inf` sentinel
//! on a zero joint cell with positive marginals. Terms of zero probability
//! contribute nothing to the averaged quantities (`0 * (-inf) = 0` by
//! convention), which keeps [`JointModel::mutual_information`] and
//! [`JointModel::event_mi`] finite on every valid model.

use std::collections::HashMap;
use std::fmt;

use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measure::{entropy_term, neumaier_sum, Distribution, FiniteFunction, InfoValue, Label};
use crate::measure::SUM_TOLERANCE;

/// Pointwise mutual information: a signed number of bits, or the negative
/// sentinel for an impossible pair of outcomes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pmi {
    Bits(f64),
    NegInfinite,
}

impl Pmi {
    pub fn bits(self) -> Option<f64> {
        match self {
            Pmi::Bits(b) => Some(b),
            Pmi::NegInfinite => None,
        }
    }
}

impl fmt::Display for Pmi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pmi::Bits(b) => write!(f, "{b}"),
            Pmi::NegInfinite => write!(f, "-inf"),
        }
    }
}

impl Serialize for Pmi {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Pmi::Bits(b) => serializer.serialize_f64(*b),
            Pmi::NegInfinite => serializer.serialize_str("-inf"),
        }
    }
}

/// Sums provably nonnegative in exact arithmetic can round to tiny negative
/// floats; snap those to zero and leave anything larger alone.
#[inline]
fn snap_nonnegative(x: f64) -> f64 {
    if x > -1e-12 && x <= 0.0 {
        0.0
    } else {
        x
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointModel {
    n_rows: usize,
    n_cols: usize,
    probs: Vec<f64>, // row-major
    row_sums: Vec<f64>,
    col_sums: Vec<f64>,
    row_labels: Option<Vec<Label>>,
    col_labels: Option<Vec<Label>>,
}

impl JointModel {
    /// Validates a directly supplied matrix: rectangular, nonnegative
    /// entries, total mass 1 within tolerance.
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(rows, None, None)
    }

    pub fn from_matrix_labeled(
        rows: Vec<Vec<f64>>,
        row_labels: Vec<Label>,
        col_labels: Vec<Label>,
    ) -> Result<Self> {
        Self::build(rows, Some(row_labels), Some(col_labels))
    }

    fn build(
        rows: Vec<Vec<f64>>,
        row_labels: Option<Vec<Label>>,
        col_labels: Option<Vec<Label>>,
    ) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 || rows[0].is_empty() {
            return Err(Error::BadMatrix);
        }
        let n_cols = rows[0].len();
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::BadMatrix);
        }
        let mut probs = Vec::with_capacity(n_rows * n_cols);
        for (k, row) in rows.iter().enumerate() {
            for (i, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < 0.0 {
                    return Err(Error::NegativeProbability {
                        index: k * n_cols + i,
                        value: p,
                    });
                }
                probs.push(p);
            }
        }
        let total = neumaier_sum(probs.iter().copied());
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: SUM_TOLERANCE,
            });
        }
        if let Some(ref l) = row_labels {
            if l.len() != n_rows {
                return Err(Error::LengthMismatch {
                    what: "row labels",
                    expected: n_rows,
                    got: l.len(),
                });
            }
        }
        if let Some(ref l) = col_labels {
            if l.len() != n_cols {
                return Err(Error::LengthMismatch {
                    what: "column labels",
                    expected: n_cols,
                    got: l.len(),
                });
            }
        }
        let mut model = Self {
            n_rows,
            n_cols,
            probs,
            row_sums: Vec::new(),
            col_sums: Vec::new(),
            row_labels,
            col_labels,
        };
        model.refresh_marginals();
        Ok(model)
    }

    /// Exact construction from integer cell counts.
    pub fn from_counts(counts: &[Vec<u64>]) -> Result<Self> {
        if counts.is_empty() || counts[0].is_empty() {
            return Err(Error::BadMatrix);
        }
        let total: u128 = counts.iter().flatten().map(|&c| c as u128).sum();
        if total == 0 {
            return Err(Error::ZeroTotalMeasure { total: 0.0 });
        }
        let t = total as f64;
        Self::build(
            counts
                .iter()
                .map(|row| row.iter().map(|&c| c as f64 / t).collect())
                .collect(),
            None,
            None,
        )
    }

    /// Realizes the joint law of two functions on one shared domain:
    /// cell `(k, i)` is the measure of `{x : f(x) = y_k and g(x) = z_i}`
    /// over the total. Exact under the counting measure.
    pub fn of(f: &FiniteFunction, g: &FiniteFunction) -> Result<Self> {
        if f.domain_size() != g.domain_size() || f.weights() != g.weights() {
            return Err(Error::MismatchedDomains {
                left: f.domain_size(),
                right: g.domain_size(),
            });
        }
        let (n, m) = (f.values().len(), g.values().len());
        let rows = match f.weights() {
            None => {
                let mut counts = vec![vec![0u64; m]; n];
                for (&fk, &gi) in f.assignment().iter().zip(g.assignment()) {
                    counts[fk as usize][gi as usize] += 1;
                }
                let total = f.domain_size() as f64;
                counts
                    .iter()
                    .map(|row| row.iter().map(|&c| c as f64 / total).collect())
                    .collect()
            }
            Some(w) => {
                let mut masses = vec![vec![0.0f64; m]; n];
                for ((&fk, &gi), &wx) in f.assignment().iter().zip(g.assignment()).zip(w) {
                    masses[fk as usize][gi as usize] += wx;
                }
                let total = f.total_measure();
                masses
                    .iter()
                    .map(|row| row.iter().map(|&c| c / total).collect())
                    .collect()
            }
        };
        Self::build(
            rows,
            Some(f.values().to_vec()),
            Some(g.values().to_vec()),
        )
    }

    fn refresh_marginals(&mut self) {
        self.row_sums = (0..self.n_rows)
            .map(|k| neumaier_sum(self.row(k).iter().copied()))
            .collect();
        self.col_sums = (0..self.n_cols)
            .map(|i| neumaier_sum((0..self.n_rows).map(|k| self.prob(k, i))))
            .collect();
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn prob(&self, k: usize, i: usize) -> f64 {
        self.probs[k * self.n_cols + i]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.probs[k * self.n_cols..(k + 1) * self.n_cols]
    }

    pub fn row_labels(&self) -> Option<&[Label]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[Label]> {
        self.col_labels.as_deref()
    }

    pub fn row_prob(&self, k: usize) -> f64 {
        self.row_sums[k]
    }

    pub fn col_prob(&self, i: usize) -> f64 {
        self.col_sums[i]
    }

    pub fn row_marginal(&self) -> Distribution {
        match &self.row_labels {
            Some(l) => Distribution::with_labels(self.row_sums.clone(), l.clone()),
            None => Distribution::new(self.row_sums.clone()),
        }
        .expect("marginals of a valid joint sum to 1")
    }

    pub fn col_marginal(&self) -> Distribution {
        match &self.col_labels {
            Some(l) => Distribution::with_labels(self.col_sums.clone(), l.clone()),
            None => Distribution::new(self.col_sums.clone()),
        }
        .expect("marginals of a valid joint sum to 1")
    }

    /// `H(f)`, the row-marginal entropy.
    pub fn row_entropy(&self) -> InfoValue {
        self.row_marginal().entropy()
    }

    /// `H(g)`, the column-marginal entropy.
    pub fn col_entropy(&self) -> InfoValue {
        self.col_marginal().entropy()
    }

    pub fn transpose(&self) -> Self {
        let mut probs = vec![0.0; self.probs.len()];
        for k in 0..self.n_rows {
            for i in 0..self.n_cols {
                probs[i * self.n_rows + k] = self.prob(k, i);
            }
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            probs,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Conditional entropy `H(f | g)` of the row variable given the column
    /// variable. Zero-probability columns contribute nothing.
    pub fn conditional_entropy(&self) -> InfoValue {
        let terms = (0..self.n_rows).flat_map(|k| {
            (0..self.n_cols).map(move |i| {
                let j = self.prob(k, i);
                if j == 0.0 {
                    0.0
                } else {
                    j * (self.col_sums[i] / j).log2()
                }
            })
        });
        InfoValue::Bits(snap_nonnegative(neumaier_sum(terms)))
    }

    /// `H(g | f)`.
    pub fn conditional_entropy_given_rows(&self) -> InfoValue {
        self.transpose().conditional_entropy()
    }

    /// Pointwise mutual information of one outcome pair, symmetric in its
    /// arguments. Errors on a zero marginal (the quantity is undefined, not
    /// infinite); yields the negative sentinel on a zero joint cell.
    pub fn pmi(&self, k: usize, i: usize) -> Result<Pmi> {
        self.check_indices(k, i)?;
        let (pk, qi) = (self.row_sums[k], self.col_sums[i]);
        if pk == 0.0 {
            return Err(Error::ZeroMarginal { axis: "row", index: k });
        }
        if qi == 0.0 {
            return Err(Error::ZeroMarginal { axis: "column", index: i });
        }
        let j = self.prob(k, i);
        Ok(if j == 0.0 {
            Pmi::NegInfinite
        } else {
            Pmi::Bits((j / (pk * qi)).log2())
        })
    }

    /// Whether observing column `i` does not make row event `k` less likely,
    /// i.e. `Pr(f = y_k | g = z_i) >= Pr(f = y_k)`. Reductions are usually
    /// assumed to satisfy this; it is reported, never enforced.
    pub fn reduction_compatible(&self, k: usize, i: usize) -> Result<bool> {
        match self.pmi(k, i)? {
            Pmi::Bits(b) => Ok(b >= 0.0),
            Pmi::NegInfinite => Ok(false),
        }
    }

    /// Mutual information between the row event `k` and the column variable:
    /// `Σ_i Pr(z_i | y_k) * pmi(k, i)`. Nonnegative (it is a KL divergence).
    pub fn event_mi(&self, k: usize) -> Result<InfoValue> {
        if k >= self.n_rows {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.n_rows,
            });
        }
        let pk = self.row_sums[k];
        if pk == 0.0 {
            return Err(Error::ZeroProbabilityEvent { index: k });
        }
        let terms = (0..self.n_cols).map(|i| {
            let j = self.prob(k, i);
            if j == 0.0 {
                0.0
            } else {
                (j / pk) * (j / (pk * self.col_sums[i])).log2()
            }
        });
        Ok(InfoValue::Bits(snap_nonnegative(neumaier_sum(terms))))
    }

    /// Average mutual information `I(f; g) = Σ_{k,i} Pr(y_k, z_i) pmi(k, i)`.
    pub fn mutual_information(&self) -> InfoValue {
        let terms = (0..self.n_rows).flat_map(|k| {
            (0..self.n_cols).map(move |i| {
                let j = self.prob(k, i);
                if j == 0.0 {
                    0.0
                } else {
                    j * (j / (self.row_sums[k] * self.col_sums[i])).log2()
                }
            })
        });
        InfoValue::Bits(snap_nonnegative(neumaier_sum(terms)))
    }

    fn check_indices(&self, k: usize, i: usize) -> Result<()> {
        if k >= self.n_rows {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.n_rows,
            });
        }
        if i >= self.n_cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_cols,
            });
        }
        Ok(())
    }
}

/// Post-processing: `h = phi(g)`, where `phi` maps each of `g`'s value
/// indices to a new label. Equal labels merge values.
pub fn post_process(g: &FiniteFunction, phi: &[Label]) -> Result<FiniteFunction> {
    if phi.len() != g.values().len() {
        return Err(Error::LengthMismatch {
            what: "post-processing map",
            expected: g.values().len(),
            got: phi.len(),
        });
    }
    let outputs = g.assignment().iter().map(|&v| phi[v as usize].clone());
    match g.weights() {
        None => FiniteFunction::from_outputs(outputs),
        Some(w) => {
            let collected: Vec<Label> = outputs.collect();
            let mut values = Vec::new();
            let mut index: HashMap<Label, u32> = HashMap::new();
            let mut assignment = Vec::new();
            for label in collected {
                let idx = *index.entry(label.clone()).or_insert_with(|| {
                    values.push(label);
                    (values.len() - 1) as u32
                });
                assignment.push(idx);
            }
            FiniteFunction::weighted(values, assignment, w.to_vec())
        }
    }
}

/// The data-processing ordering for one triple.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DpiCheck {
    pub entropy_f: f64,
    pub mi_fg: f64,
    pub mi_fh: f64,
    pub ordering_holds: bool,
}

/// Comparison slack for the ordering verdict.
pub const DPI_TOLERANCE: f64 = 1e-9;

/// Verifies that `h` factors through `g` (its value depends on a domain
/// point only through `g`'s value there), then reports
/// `H(f) >= I(f; g) >= I(f; h)`.
pub fn dpi_check(
    f: &FiniteFunction,
    g: &FiniteFunction,
    h: &FiniteFunction,
) -> Result<DpiCheck> {
    if g.domain_size() != h.domain_size() {
        return Err(Error::MismatchedDomains {
            left: g.domain_size(),
            right: h.domain_size(),
        });
    }
    // h must be constant on every level set of g.
    let mut seen: Vec<Option<(u32, usize)>> = vec![None; g.values().len()];
    for (x, (&gv, &hv)) in g.assignment().iter().zip(h.assignment()).enumerate() {
        match seen[gv as usize] {
            None => seen[gv as usize] = Some((hv, x)),
            Some((expected, first)) if expected != hv => {
                return Err(Error::DoesNotFactor { first, second: x })
            }
            _ => {}
        }
    }
    let joint_fg = JointModel::of(f, g)?;
    let joint_fh = JointModel::of(f, h)?;
    let entropy_f = joint_fg
        .row_entropy()
        .bits()
        .expect("marginal entropy is finite");
    let mi_fg = joint_fg
        .mutual_information()
        .bits()
        .expect("average mutual information is finite");
    let mi_fh = joint_fh
        .mutual_information()
        .bits()
        .expect("average mutual information is finite");
    let ordering_holds =
        entropy_f >= mi_fg - DPI_TOLERANCE && mi_fg >= mi_fh - DPI_TOLERANCE;
    Ok(DpiCheck {
        entropy_f,
        mi_fg,
        mi_fh,
        ordering_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn counting(outputs: Vec<i64>) -> FiniteFunction {
        FiniteFunction::from_outputs(outputs).unwrap()
    }

    #[test]
    fn identical_functions_give_a_diagonal_joint() {
        let f = counting(vec![0, 1, 2, 0, 1, 2]);
        let j = JointModel::of(&f, &f).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                let expected = if k == i { 1.0 / 3.0 } else { 0.0 };
                assert_abs_diff_eq!(j.prob(k, i), expected, epsilon = 1e-15);
            }
        }
        assert_eq!(j.conditional_entropy(), InfoValue::Bits(0.0));
        let h = j.row_entropy().bits().unwrap();
        let mi = j.mutual_information().bits().unwrap();
        assert_abs_diff_eq!(mi, h, epsilon = 1e-12);
    }

    #[test]
    fn coordinates_of_a_product_domain_are_independent() {
        // Domain {0..11} = 3 x 4 grid; f reads the first coordinate, g the
        // second. The joint must be the outer product of the marginals.
        let f = counting((0..12).map(|x| x / 4).collect());
        let g = counting((0..12).map(|x| x % 4).collect());
        let j = JointModel::of(&f, &g).unwrap();
        for k in 0..3 {
            for i in 0..4 {
                assert_abs_diff_eq!(
                    j.prob(k, i),
                    j.row_prob(k) * j.col_prob(i),
                    epsilon = 1e-15
                );
                assert!(j.pmi(k, i).unwrap().bits().unwrap().abs() < 1e-12);
            }
            assert!(j.event_mi(k).unwrap().bits().unwrap() < 1e-12);
        }
        assert!(j.mutual_information().bits().unwrap().abs() < 1e-12);
        let h_f = j.row_entropy().bits().unwrap();
        let cond = j.conditional_entropy().bits().unwrap();
        assert_abs_diff_eq!(cond, h_f, epsilon = 1e-12);
    }

    #[test]
    fn parity_against_residue_mod_4() {
        let f = counting((0..8).map(|x| x & 1).collect());
        let g = counting((0..8).map(|x| x % 4).collect());
        let j = JointModel::of(&f, &g).unwrap();
        // Each residue class mod 4 has two members below 8 and a fixed
        // parity, so matching cells carry mass 1/4 and the rest are empty.
        for k in 0..2usize {
            for i in 0..4usize {
                let expected = if i % 2 == k { 0.25 } else { 0.0 };
                assert_abs_diff_eq!(j.prob(k, i), expected, epsilon = 1e-15);
            }
        }
        assert_eq!(j.conditional_entropy(), InfoValue::Bits(0.0));
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let f = counting(vec![0, 1]);
        let g = counting(vec![0, 1, 0]);
        assert!(matches!(
            JointModel::of(&f, &g),
            Err(Error::MismatchedDomains { .. })
        ));
    }

    #[test]
    fn noiseless_relabeling_channel_has_zero_conditional_entropy() {
        for p1 in [0.1, 0.4, 0.5, 0.9] {
            let j = JointModel::from_matrix(vec![vec![1.0 - p1, 0.0], vec![0.0, p1]]).unwrap();
            assert_eq!(j.conditional_entropy(), InfoValue::Bits(0.0));
            assert_eq!(j.conditional_entropy_given_rows(), InfoValue::Bits(0.0));
        }
    }

    #[test]
    fn one_sided_error_conditional_entropy_matches_closed_form() {
        let (p1, eps) = (0.5, 0.25);
        let p0 = 1.0 - p1;
        // Rows: true answer; columns: randomized answer.
        let j = JointModel::from_matrix(vec![
            vec![p0, 0.0],
            vec![p1 * eps, p1 * (1.0 - eps)],
        ])
        .unwrap();
        let closed = -p1 * (eps * eps.log2() + (1.0 - eps) * (1.0 - eps).log2());
        let cond = j.conditional_entropy_given_rows().bits().unwrap();
        assert_abs_diff_eq!(cond, closed, epsilon = 1e-12);
        assert_abs_diff_eq!(cond, 0.4056390622295664, epsilon = 1e-12);
    }

    #[test]
    fn pmi_of_a_shared_quarter_mass_value() {
        let f = counting(vec![0, 1, 2, 3]);
        let j = JointModel::of(&f, &f).unwrap();
        assert_eq!(j.pmi(1, 1).unwrap(), Pmi::Bits(2.0));
        assert!(matches!(j.pmi(0, 1).unwrap(), Pmi::NegInfinite));
        assert!(j.reduction_compatible(1, 1).unwrap());
        assert!(!j.reduction_compatible(0, 1).unwrap());
    }

    #[test]
    fn deterministic_column_pins_pmi_to_column_information() {
        // Pr(g = z_i | f = y_k) = 1: the whole row mass sits in one column.
        let j = JointModel::from_matrix(vec![
            vec![0.2, 0.0, 0.0],
            vec![0.0, 0.5, 0.3],
        ])
        .unwrap();
        let pmi = j.pmi(0, 0).unwrap().bits().unwrap();
        assert_abs_diff_eq!(pmi, -j.col_prob(0).log2(), epsilon = 1e-12);
    }

    #[test]
    fn zero_marginal_is_an_error_not_a_sentinel() {
        let j = JointModel::from_matrix(vec![vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap();
        assert!(matches!(
            j.pmi(0, 1),
            Err(Error::ZeroMarginal { axis: "column", .. })
        ));
    }

    #[test]
    fn event_mi_of_a_perfect_channel_is_the_event_information() {
        let f = counting(vec![0, 0, 1, 2]);
        let j = JointModel::of(&f, &f).unwrap();
        let d = f.distribution();
        for k in 0..3 {
            let expected = d.self_information(k).unwrap().bits().unwrap();
            let got = j.event_mi(k).unwrap().bits().unwrap();
            assert_abs_diff_eq!(got, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn halving_channel_event_mi_is_one_bit() {
        // Which-half indicator answered by an equiprobable sign: the answer
        // determines the half, each query carries exactly one bit.
        let half = counting((0..16).map(|x| x / 8).collect());
        let sign = counting((0..16).map(|x| if x < 8 { -1 } else { 1 }).collect());
        let j = JointModel::of(&half, &sign).unwrap();
        assert_abs_diff_eq!(
            j.event_mi(0).unwrap().bits().unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            j.mutual_information().bits().unwrap(),
            j.col_entropy().bits().unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn mutual_information_matches_entropy_differences() {
        let j = JointModel::from_matrix(vec![
            vec![0.15, 0.05, 0.10],
            vec![0.05, 0.30, 0.05],
            vec![0.10, 0.05, 0.15],
        ])
        .unwrap();
        let mi = j.mutual_information().bits().unwrap();
        let via_rows = j.row_entropy().bits().unwrap()
            - j.conditional_entropy().bits().unwrap();
        let via_cols = j.col_entropy().bits().unwrap()
            - j.conditional_entropy_given_rows().bits().unwrap();
        assert_abs_diff_eq!(mi, via_rows, epsilon = 1e-12);
        assert_abs_diff_eq!(mi, via_cols, epsilon = 1e-12);
        let transposed = j.transpose().mutual_information().bits().unwrap();
        assert_abs_diff_eq!(mi, transposed, epsilon = 1e-12);
    }

    #[test]
    fn symmetric_noisy_channel_mutual_information() {
        let (p1, eps) = (0.5, 0.25);
        let p0 = 1.0 - p1;
        let j = JointModel::from_matrix(vec![
            vec![p0 * (1.0 - eps), p0 * eps],
            vec![p1 * eps, p1 * (1.0 - eps)],
        ])
        .unwrap();
        assert_abs_diff_eq!(
            j.mutual_information().bits().unwrap(),
            0.18872187554086717,
            epsilon = 1e-12
        );
    }

    #[test]
    fn identity_post_processing_preserves_mutual_information() {
        let f = counting(vec![0, 1, 0, 2, 1, 0]);
        let g = counting(vec![0, 0, 1, 1, 2, 2]);
        let phi: Vec<Label> = vec!["a".into(), "b".into(), "c".into()];
        let h = post_process(&g, &phi).unwrap();
        let check = dpi_check(&f, &g, &h).unwrap();
        assert_eq!(check.mi_fg, check.mi_fh);
        assert!(check.ordering_holds);
    }

    #[test]
    fn constant_post_processing_discards_everything() {
        let f = counting(vec![0, 1, 0, 2, 1, 0]);
        let g = counting(vec![0, 0, 1, 1, 2, 2]);
        let phi: Vec<Label> = vec!["c".into(), "c".into(), "c".into()];
        let h = post_process(&g, &phi).unwrap();
        let check = dpi_check(&f, &g, &h).unwrap();
        assert!(check.mi_fh.abs() < 1e-12);
        assert!(check.ordering_holds);
    }

    #[test]
    fn non_factoring_h_is_reported() {
        let f = counting(vec![0, 1, 0, 1]);
        let g = counting(vec![0, 0, 1, 1]);
        let h = counting(vec![0, 1, 0, 0]); // splits g's first level set
        assert!(matches!(
            dpi_check(&f, &g, &h),
            Err(Error::DoesNotFactor { .. })
        ));
    }

    #[test]
    fn matrix_validation() {
        assert!(matches!(
            JointModel::from_matrix(vec![]),
            Err(Error::BadMatrix)
        ));
        assert!(matches!(
            JointModel::from_matrix(vec![vec![0.5, 0.5], vec![0.5]]),
            Err(Error::BadMatrix)
        ));
        assert!(JointModel::from_matrix(vec![vec![0.7, 0.2]]).is_err());
        assert!(JointModel::from_matrix(vec![vec![1.2, -0.2]]).is_err());
    }
}
