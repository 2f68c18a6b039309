//! Executable query processes whose empirical counts are compared against
//! the information-theoretic predictions.
//!
//! Randomness comes exclusively from the ChaCha stream cipher generator
//! (`rand_chacha::ChaCha8Rng`) with explicit seed plumbing: identical seeds
//! produce bit-identical traces on every platform. Batch runs derive one
//! generator per trial from `seed + trial_index`, so trials can be
//! partitioned across threads and merged deterministically (all
//! accumulators are integers).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{BinaryChannel, ChannelKind};
use crate::error::{Error, Result};
use crate::approx::SampledFunction;

/// One adaptive query run: the oracle answers received and the
/// information-theoretic prediction for comparison.
#[derive(Debug, Clone, Serialize)]
pub struct QueryTrace {
    pub queries: u32,
    pub outcomes: Vec<String>,
    pub predicted: f64,
    pub instance: String,
}

/// Finds one light coin among `num_coins` with a balance scale, always
/// weighing two equal-size groups and keeping the group the answer points
/// to. Group sizes differ by at most one, so the worst case over positions
/// is `ceil(log3 N)` weighings; a position that lands in a small third can
/// finish earlier.
pub fn coin_weighing_sim(num_coins: u64, light_index: u64) -> Result<QueryTrace> {
    if num_coins == 0 || light_index >= num_coins {
        return Err(Error::OutOfRange {
            what: "light_index",
            value: light_index as f64,
            expected: "0..num_coins (num_coins >= 1)",
        });
    }
    // Candidate range [lo, lo + size).
    let mut lo = 0u64;
    let mut size = num_coins;
    let mut outcomes = Vec::new();
    while size > 1 {
        let q = size / 3;
        let r = size % 3;
        // Pans must hold equally many coins; the remainder goes to the pans
        // only when it splits evenly between them.
        let (pan, rest) = match r {
            0 => (q, q),
            1 => (q, q + 1),
            _ => (q + 1, q),
        };
        let left = (lo, pan);
        let right = (lo + pan, pan);
        let off = (lo + 2 * pan, rest);
        if light_index < left.0 + left.1 {
            outcomes.push("left".to_owned());
            lo = left.0;
            size = left.1;
        } else if light_index < right.0 + right.1 {
            outcomes.push("right".to_owned());
            lo = right.0;
            size = right.1;
        } else {
            outcomes.push("balance".to_owned());
            lo = off.0;
            size = off.1;
        }
    }
    Ok(QueryTrace {
        queries: outcomes.len() as u32,
        outcomes,
        predicted: (num_coins as f64).log2() / 3f64.log2(),
        instance: format!("coins={num_coins} light={light_index}"),
    })
}

/// Upper bound the weighing strategy never exceeds.
pub fn coin_weighing_worst_case(num_coins: u64) -> u32 {
    let mut size = num_coins.max(1);
    let mut steps = 0;
    while size > 1 {
        size = size.div_ceil(3);
        steps += 1;
    }
    steps
}

/// Standard bisection on the sampled function's interval, halving until the
/// bracket width is at most `tol`. Signs are read off the piecewise-linear
/// interpolant; each midpoint sign is one query, so the count is
/// `ceil(log2((b - a) / tol))`.
pub fn bisection_sim(f: &SampledFunction, tol: f64) -> Result<QueryTrace> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::OutOfRange {
            what: "tol",
            value: tol,
            expected: "a positive finite width",
        });
    }
    let (mut a, mut b) = f.interval();
    let fa = f.interpolate(a);
    let fb = f.interpolate(b);
    if !(fa * fb < 0.0) {
        return Err(Error::NoSignChange);
    }
    let width = b - a;
    let mut sign_a = fa.is_sign_negative();
    let mut outcomes = Vec::new();
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f.interpolate(mid);
        let sign_m = fm.is_sign_negative() && fm != 0.0;
        outcomes.push(if sign_m { "-".to_owned() } else { "+".to_owned() });
        if sign_m == sign_a {
            a = mid;
            sign_a = sign_m;
        } else {
            b = mid;
        }
    }
    // The final bracket must still straddle a sign change of the samples.
    let fa = f.interpolate(a);
    let fb = f.interpolate(b);
    debug_assert!(fa == 0.0 || fb == 0.0 || fa * fb < 0.0);
    Ok(QueryTrace {
        queries: outcomes.len() as u32,
        outcomes,
        predicted: if tol >= width { 0.0 } else { (width / tol).log2() },
        instance: format!("interval=[{a_0},{b_0}] tol={tol}", a_0 = f.interval().0, b_0 = f.interval().1),
    })
}

/// Batch statistics for retry-until-first-success.
#[derive(Debug, Clone, Serialize)]
pub struct GeometricReport {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub empirical_mean: f64,
    /// `1 / p`.
    pub expected_mean: f64,
    /// `sigma / sqrt(trials)` with `sigma^2 = (1 - p) / p^2`.
    pub standard_error: f64,
}

/// Draws until the first success, `trials` times, and reports the mean
/// draw count next to `1/p`.
pub fn geometric_search_sim(p: f64, trials: u64, seed: u64) -> Result<GeometricReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            expected: "(0, 1]",
        });
    }
    if trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let total_draws: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            let mut draws = 1u64;
            while rng.gen::<f64>() >= p {
                draws += 1;
            }
            draws
        })
        .sum();
    let sigma = ((1.0 - p) / (p * p)).sqrt();
    Ok(GeometricReport {
        p,
        trials,
        seed,
        empirical_mean: total_draws as f64 / trials as f64,
        expected_mean: 1.0 / p,
        standard_error: sigma / (trials as f64).sqrt(),
    })
}

/// Majority-vote amplification of a majority-margin channel.
#[derive(Debug, Clone, Serialize)]
pub struct AmplificationReport {
    pub eps: f64,
    pub repetitions: u32,
    pub trials: u64,
    pub seed: u64,
    pub empirical_error: f64,
    /// Per-use error `1/2 - eps`.
    pub single_use_error: f64,
}

/// Runs `repetitions` independent channel uses per trial and takes the
/// majority vote; reports how often the vote disagrees with the true bit.
pub fn amplification_sim(
    channel: &BinaryChannel,
    repetitions: u32,
    trials: u64,
    seed: u64,
) -> Result<AmplificationReport> {
    if channel.kind() != ChannelKind::Majority {
        return Err(Error::WrongChannelKind {
            found: channel.kind().name(),
            expected: ChannelKind::Majority.name(),
        });
    }
    if repetitions % 2 == 0 {
        return Err(Error::EvenRepetitions(repetitions));
    }
    if trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let p1 = channel.p1();
    let wrong = 0.5 - channel.eps();
    let errors: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            let truth = rng.gen::<f64>() < p1;
            let mut agree = 0u32;
            for _ in 0..repetitions {
                let flipped = rng.gen::<f64>() < wrong;
                if flipped != truth {
                    // channel answered `truth`
                    agree += 1;
                } else if !flipped {
                    agree += 1;
                }
            }
            u64::from(agree <= repetitions / 2)
        })
        .sum();
    Ok(AmplificationReport {
        eps: channel.eps(),
        repetitions,
        trials,
        seed,
        empirical_error: errors as f64 / trials as f64,
        single_use_error: wrong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn twenty_seven_coins_take_three_weighings_from_every_position() {
        for light in 0..27 {
            let t = coin_weighing_sim(27, light).unwrap();
            assert_eq!(t.queries, 3, "position {light}");
            assert_abs_diff_eq!(t.predicted, 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn one_coin_needs_no_weighing() {
        let t = coin_weighing_sim(1, 0).unwrap();
        assert_eq!(t.queries, 0);
        assert!(t.outcomes.is_empty());
    }

    #[test]
    fn eighty_one_coins_take_four_weighings_everywhere() {
        for light in 0..81 {
            assert_eq!(coin_weighing_sim(81, light).unwrap().queries, 4);
        }
    }

    /// Uneven counts: no position exceeds the ceiling, the worst position
    /// attains it, and lucky positions may finish early.
    #[test]
    fn weighing_count_is_bounded_by_the_ternary_ceiling() {
        for n in 1..=243u64 {
            let bound = coin_weighing_worst_case(n);
            let mut worst = 0;
            for light in 0..n {
                let q = coin_weighing_sim(n, light).unwrap().queries;
                assert!(q <= bound, "n={n} light={light}: {q} > {bound}");
                worst = worst.max(q);
            }
            assert_eq!(worst, bound, "n={n}");
        }
    }

    #[test]
    fn bisection_query_count_is_the_log_of_the_width_ratio() {
        let f = SampledFunction::new(&[(0.0, -1.0), (1.0, 2.0)]).unwrap();
        for t in 4..=12u32 {
            let trace = bisection_sim(&f, (-(t as f64)).exp2()).unwrap();
            assert_eq!(trace.queries, t);
            assert_abs_diff_eq!(trace.predicted, t as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn coarse_tolerance_needs_no_queries() {
        let f = SampledFunction::new(&[(0.0, -1.0), (1.0, 2.0)]).unwrap();
        let trace = bisection_sim(&f, 1.5).unwrap();
        assert_eq!(trace.queries, 0);
        assert_eq!(trace.predicted, 0.0);
    }

    #[test]
    fn bisection_bracket_keeps_the_root() {
        // Root at 1/3; after 8 queries the bracket still contains it.
        let f = SampledFunction::new(&[(0.0, -1.0), (1.0, 2.0)]).unwrap();
        let trace = bisection_sim(&f, (-8f64).exp2()).unwrap();
        assert_eq!(trace.queries, 8);
        // Replay the bisection to recover the bracket and check it.
        let (mut a, mut b) = (0.0f64, 1.0f64);
        for o in &trace.outcomes {
            let mid = 0.5 * (a + b);
            if (o == "-") == (f.interpolate(a) < 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        assert!(a <= 1.0 / 3.0 && 1.0 / 3.0 <= b);
        assert!(b - a <= (-8f64).exp2());
    }

    #[test]
    fn bisection_requires_a_sign_change() {
        let f = SampledFunction::new(&[(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!(matches!(bisection_sim(&f, 0.01), Err(Error::NoSignChange)));
    }

    #[test]
    fn certain_success_takes_exactly_one_draw() {
        let r = geometric_search_sim(1.0, 1000, 7).unwrap();
        assert_eq!(r.empirical_mean, 1.0);
    }

    #[test]
    fn geometric_means_are_reproducible_and_close() {
        let a = geometric_search_sim(0.25, 20_000, 0).unwrap();
        let b = geometric_search_sim(0.25, 20_000, 0).unwrap();
        assert_eq!(a.empirical_mean, b.empirical_mean);
        assert!((a.empirical_mean - 4.0).abs() < 4.0 * a.standard_error);

        let c = geometric_search_sim(0.25, 20_000, 1).unwrap();
        assert_ne!(a.empirical_mean, c.empirical_mean);
    }

    #[test]
    fn amplification_drives_the_error_down() {
        let c = BinaryChannel::new(ChannelKind::Majority, 0.5, 0.1).unwrap();
        let one = amplification_sim(&c, 1, 20_000, 3).unwrap();
        assert!((one.empirical_error - 0.4).abs() < 0.02);
        let many = amplification_sim(&c, 201, 10_000, 3).unwrap();
        assert!(many.empirical_error < 0.05);
        assert!(many.empirical_error < one.empirical_error);
        assert!(matches!(
            amplification_sim(&c, 2, 10, 0),
            Err(Error::EvenRepetitions(2))
        ));
    }
}
