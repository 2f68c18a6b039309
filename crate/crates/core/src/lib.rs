//! Information measures for finite-valued functions, and the query-count
//! estimators built on top of them.
//!
//! The crate is organized around a small chain of objects:
//!
//! * [`measure`] — finite weighted domains, the distributions induced by a
//!   function's preimages, and the scalar functionals on them (entropy,
//!   self-information, total information).
//! * [`approx`] — dyadic quantization of a sampled real-valued function into
//!   a finite-valued one, with the entropy sequence across refinement levels.
//! * [`joint`] — joint models of two functions on a shared domain and every
//!   two-function quantity: conditional entropy, pointwise and average mutual
//!   information, and the data-processing ordering.
//! * [`complexity`] — ratios of information quantities interpreted as query
//!   counts: least/average/expected queries, the entropy-ratio lower bound,
//!   the brute-force benchmark, and a Markov tail bound.
//! * [`channels`] — 2x2 conditional models of one-sided, symmetric two-sided,
//!   and majority-margin randomized deciders, with their closed forms.
//! * [`zoo`] — concrete functions with exactly enumerable distributions
//!   (modular arithmetic, CNF satisfaction counts, totients, divisor counts,
//!   squaring and power maps on residue systems, subset sums).
//! * [`sim`] — executable query processes (ternary weighing, bisection,
//!   geometric retry, majority amplification) whose empirical counts are
//!   compared against the information-theoretic predictions.
//!
//! All logarithms are base 2; every reported unit is bits. Probabilities from
//! enumeration are formed as exact integer ratios and only converted to
//! floating point at the functional boundary. Every public operation is pure;
//! randomized routines take an explicit 64-bit seed and are bit-reproducible.

pub mod approx;
pub mod channels;
pub mod complexity;
mod error;
pub mod joint;
pub mod measure;
pub mod sim;
pub mod zoo;

pub use error::{Error, Result};
pub use measure::{Distribution, FiniteFunction, InfoValue, Label};
