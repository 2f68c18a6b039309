//! Dyadic quantization of a sampled real-valued function.
//!
//! At level `n` the value axis is tiled by bins `[(k-1)/2^n, k/2^n)` for
//! `k = 1..4^n`, covering `[0, 2^n)`, plus a single overflow bucket for
//! values at or above the cutoff `2^n`. Negative-valued inputs are first
//! shifted up by a recorded constant; entropy is invariant under relabeling,
//! so the shift changes nothing downstream.
//!
//! Quantizing turns the samples into a [`FiniteFunction`] whose value labels
//! are the bin lower endpoints, and the entropy of that function across
//! levels `1..=max` forms the refinement sequence reported by
//! [`entropy_sequence`].

use crate::error::{Error, Result};
use crate::measure::{FiniteFunction, Label};

/// Successive levels closer than this are reported as converged.
pub const CONVERGENCE_WINDOW_BITS: f64 = 1e-6;

/// Highest supported quantization level (bin indices stay well within u64).
pub const MAX_LEVEL: u32 = 30;

/// A real-valued function known at finitely many strictly increasing grid
/// points, weighted uniformly across samples.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampledFunction {
    pub fn new(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples);
        }
        for (index, &(x, y)) in samples.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFiniteSample { index });
            }
            if index > 0 && x <= samples[index - 1].0 {
                return Err(Error::NonIncreasingGrid { index });
            }
        }
        Ok(Self {
            xs: samples.iter().map(|s| s.0).collect(),
            ys: samples.iter().map(|s| s.1).collect(),
        })
    }

    /// Parses two-column CSV (`x,f(x)`), tolerating a single header row.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',').map(str::trim);
            let (a, b) = (parts.next(), parts.next());
            match (a.and_then(|v| v.parse::<f64>().ok()), b.and_then(|v| v.parse::<f64>().ok())) {
                (Some(x), Some(y)) => samples.push((x, y)),
                _ if i == 0 => continue, // header
                _ => {
                    return Err(Error::Csv {
                        line: i + 1,
                        message: format!("expected two numeric columns, got {line:?}"),
                    })
                }
            }
        }
        Self::new(&samples)
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.xs[0], *self.xs.last().unwrap())
    }

    pub fn value_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &y in &self.ys {
            lo = lo.min(y);
            hi = hi.max(y);
        }
        (lo, hi)
    }

    /// Piecewise-linear interpolation, clamped to the grid ends.
    pub fn interpolate(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= *self.xs.last().unwrap() {
            return *self.ys.last().unwrap();
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i,
        };
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// Where a (shifted) value lands at a given level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bin {
    /// 1-based index of the bin `[(k-1)/2^n, k/2^n)`.
    Regular(u64),
    /// Values at or above the cutoff `2^n`.
    Overflow,
}

/// The level-`n` binning scheme for one sampled function.
#[derive(Debug, Clone, Copy)]
pub struct LevelScheme {
    level: u32,
    shift: f64,
}

impl LevelScheme {
    pub fn for_samples(f: &SampledFunction, level: u32) -> Result<Self> {
        if level < 1 || level > MAX_LEVEL {
            return Err(Error::OutOfRange {
                what: "level",
                value: level as f64,
                expected: "1..=30",
            });
        }
        let (min, _) = f.value_range();
        Ok(Self {
            level,
            shift: if min < 0.0 { -min } else { 0.0 },
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Shift added to every value so the smallest one sits at 0.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn bin_width(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn cutoff(&self) -> f64 {
        (self.level as f64).exp2()
    }

    /// Number of regular bins, `4^n`.
    pub fn bin_count(&self) -> u64 {
        1u64 << (2 * self.level)
    }

    pub fn bin_of(&self, y: f64) -> Bin {
        let v = y + self.shift;
        if v >= self.cutoff() {
            Bin::Overflow
        } else {
            // v in [0, 2^n): k-1 = floor(v * 2^n) < 4^n.
            Bin::Regular((v * (self.level as f64).exp2()).floor() as u64 + 1)
        }
    }

    /// Lower endpoint `(k-1)/2^n` of a regular bin, or the overflow marker.
    pub fn bin_label(&self, bin: Bin) -> Label {
        match bin {
            Bin::Regular(k) => Label::Text(format!("{}", (k - 1) as f64 * self.bin_width())),
            Bin::Overflow => Label::Text("overflow".to_owned()),
        }
    }
}

/// Quantizes the samples at `level`: each sample maps to its bin's lower
/// endpoint, overflow samples to the overflow label. The result carries the
/// counting measure (per-sample weights are uniform, so they cancel).
pub fn quantize(f: &SampledFunction, level: u32) -> Result<FiniteFunction> {
    let scheme = LevelScheme::for_samples(f, level)?;
    let mut order: std::collections::BTreeMap<Bin, u32> = std::collections::BTreeMap::new();
    let bins: Vec<Bin> = f.ys().iter().map(|&y| scheme.bin_of(y)).collect();
    for &b in &bins {
        let next = order.len() as u32;
        order.entry(b).or_insert(next);
    }
    // Values in ascending bin order, overflow last.
    let mut values = vec![Label::Int(0); order.len()];
    let mut remap = std::collections::BTreeMap::new();
    for (i, (&bin, _)) in order.iter().enumerate() {
        values[i] = scheme.bin_label(bin);
        remap.insert(bin, i as u32);
    }
    let assignment: Vec<u32> = bins.iter().map(|b| remap[b]).collect();
    FiniteFunction::new(values, assignment)
}

#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct LevelEntropy {
    pub level: u32,
    pub bits: f64,
}

/// The entropy sequence `H(f_n)` plus the convergence flag from the last two
/// levels.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EntropySequence {
    pub entries: Vec<LevelEntropy>,
    pub converged: bool,
}

impl EntropySequence {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,entropy_bits\n");
        for e in &self.entries {
            out.push_str(&format!("{},{}\n", e.level, e.bits));
        }
        out
    }
}

/// Worst-case number of distinct bins the sampled range can touch at
/// `level`; if this exceeds the sample count the quantization cannot refine
/// anything and the level is refused.
fn potential_bins(f: &SampledFunction, level: u32) -> u64 {
    let scheme = match LevelScheme::for_samples(f, level) {
        Ok(s) => s,
        Err(_) => return u64::MAX,
    };
    let (min, max) = f.value_range();
    let scale = (level as f64).exp2();
    let lo = ((min + scheme.shift()) * scale).floor() as u64;
    let capped = (max + scheme.shift()).min(scheme.cutoff());
    let hi = (capped * scale).floor() as u64;
    let overflow = if max + scheme.shift() >= scheme.cutoff() {
        1
    } else {
        0
    };
    hi - lo + 1 + overflow
}

/// `H(f_n)` for `n = 1..=max_level`; errors out before computing anything if
/// some requested level is finer than the grid can support.
pub fn entropy_sequence(f: &SampledFunction, max_level: u32) -> Result<EntropySequence> {
    if max_level < 1 {
        return Err(Error::OutOfRange {
            what: "max_level",
            value: max_level as f64,
            expected: "1..=30",
        });
    }
    for level in 1..=max_level {
        let bins = potential_bins(f, level);
        if bins > f.len() as u64 {
            return Err(Error::LevelTooFine {
                level,
                bins,
                samples: f.len(),
            });
        }
    }
    let mut entries = Vec::with_capacity(max_level as usize);
    for level in 1..=max_level {
        let q = quantize(f, level)?;
        let bits = q.distribution().entropy().bits().expect("entropy is finite");
        entries.push(LevelEntropy { level, bits });
    }
    let converged = entries.len() >= 2 && {
        let last = entries[entries.len() - 1].bits;
        let prev = entries[entries.len() - 2].bits;
        (last - prev).abs() < CONVERGENCE_WINDOW_BITS
    };
    Ok(EntropySequence { entries, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp(n: usize) -> SampledFunction {
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| (i as f64 / n as f64, i as f64 / n as f64))
            .collect();
        SampledFunction::new(&samples).unwrap()
    }

    #[test]
    fn constant_function_has_zero_entropy_at_every_level() {
        let samples: Vec<(f64, f64)> = (0..16).map(|i| (i as f64, 2.5)).collect();
        let f = SampledFunction::new(&samples).unwrap();
        let seq = entropy_sequence(&f, 6).unwrap();
        assert!(seq.entries.iter().all(|e| e.bits == 0.0));
        assert!(seq.converged);
    }

    #[test]
    fn ramp_entropy_is_exactly_the_level() {
        let f = ramp(1 << 10);
        let seq = entropy_sequence(&f, 8).unwrap();
        for e in &seq.entries {
            // Equal-width preimages of a uniform grid: 2^n equal-mass bins.
            assert_eq!(e.bits, e.level as f64);
        }
        let q = quantize(&f, 5).unwrap();
        assert_eq!(q.values().len(), 32);
    }

    #[test]
    fn ramp_rejects_levels_finer_than_the_grid() {
        let f = ramp(1 << 10);
        assert!(entropy_sequence(&f, 10).is_ok());
        assert!(matches!(
            entropy_sequence(&f, 11),
            Err(Error::LevelTooFine { level: 11, .. })
        ));
    }

    #[test]
    fn sign_step_carries_one_bit_after_shift() {
        let samples: Vec<(f64, f64)> = (0..64)
            .map(|i| (i as f64, if i < 32 { -1.0 } else { 1.0 }))
            .collect();
        let f = SampledFunction::new(&samples).unwrap();
        // At level 1 the shifted value 2 overflows the cutoff; the two
        // equal masses still carry exactly one bit.
        for level in 1..=6 {
            let q = quantize(&f, level).unwrap();
            assert_eq!(q.distribution().entropy().bits().unwrap(), 1.0);
        }
        let scheme = LevelScheme::for_samples(&f, 1).unwrap();
        assert_eq!(scheme.shift(), 1.0);
        assert_eq!(scheme.bin_of(1.0), Bin::Overflow);
    }

    #[test]
    fn dyadic_plateaus_stabilize_at_two_bits() {
        let plateau = [0.0, 0.25, 0.5, 0.75];
        let samples: Vec<(f64, f64)> = (0..64)
            .map(|i| (i as f64, plateau[i / 16]))
            .collect();
        let f = SampledFunction::new(&samples).unwrap();
        let seq = entropy_sequence(&f, 6).unwrap();
        assert_eq!(seq.entries[0].bits, 1.0); // width 1/2 merges pairs
        for e in &seq.entries[1..] {
            assert_eq!(e.bits, 2.0);
        }
        assert!(seq.converged);
    }

    /// Once the partition separates the plateaus, refining further is a
    /// fixed point: the induced distribution stops changing.
    #[test]
    fn refinement_is_a_fixed_point_on_already_simple_input() {
        let plateau = [0.0, 0.25, 0.5, 0.75];
        let samples: Vec<(f64, f64)> = (0..64)
            .map(|i| (i as f64, plateau[i / 16]))
            .collect();
        let f = SampledFunction::new(&samples).unwrap();
        let coarse = quantize(&f, 2).unwrap().distribution();
        let fine = quantize(&f, 5).unwrap().distribution();
        assert_eq!(coarse.probs(), fine.probs());
    }

    #[test]
    fn quantize_accounts_for_every_sample() {
        let f = ramp(257);
        let q = quantize(&f, 3).unwrap();
        assert_eq!(q.domain_size(), 257);
        let total: f64 = q.distribution().probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_round_trip() {
        let text = "x,fx\n0.0,1.5\n1.0,-2.0\n2.5,0.25\n";
        let f = SampledFunction::from_csv(text).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.ys(), &[1.5, -2.0, 0.25]);
        assert!(SampledFunction::from_csv("0,1\nbad,row\n").is_err());
    }

    #[test]
    fn grid_must_strictly_increase() {
        assert!(matches!(
            SampledFunction::new(&[(0.0, 1.0), (0.0, 2.0)]),
            Err(Error::NonIncreasingGrid { index: 1 })
        ));
        assert!(matches!(
            SampledFunction::new(&[(0.0, f64::NAN), (1.0, 2.0)]),
            Err(Error::NonFiniteSample { index: 0 })
        ));
    }

    #[test]
    fn interpolation_is_linear_between_knots() {
        let f = SampledFunction::new(&[(0.0, -1.0), (1.0, 2.0)]).unwrap();
        assert_eq!(f.interpolate(0.0), -1.0);
        assert_eq!(f.interpolate(1.0), 2.0);
        assert!((f.interpolate(1.0 / 3.0)).abs() < 1e-12);
    }
}
