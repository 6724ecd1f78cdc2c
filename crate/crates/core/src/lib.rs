//! Generator for standard complementary pairs of sequences of length `2^N`.
//!
//! A complementary pair `(a, b)` has aperiodic autocorrelations that sum to a
//! scaled delta: `R_a(k) + R_b(k) = K·δ(k)`. This crate builds such pairs as
//! products of entries of `N+1` wide-sense unitary 2×2 matrices, indexed by
//! Boolean functions of the element index. The same construction covers
//! binary Golay pairs, M-PSK pairs, QAM pairs with one or more QAM-valued
//! matrices, and hexagonal or user-defined constellations.
//!
//! ```
//! use golay_forge::{analysis, generator, Permutation, UnitaryChain};
//!
//! let chain = UnitaryChain::golay(Permutation::identity(3));
//! let (a, b) = generator::generate_pair(&chain);
//! let verdict = analysis::is_complementary(&a, &b, analysis::DEFAULT_TOLERANCE).unwrap();
//! assert!(verdict.complementary);
//! assert_eq!(verdict.peak_sum, 16.0);
//! ```
//!
//! Module map:
//!
//! * [`boolean`]: bits, the extended bit chain, Walsh functions, permutations.
//! * [`unitary`]: the 2×2 matrices and generator specs.
//! * [`generator`]: index, exponent and algebraic forms, the binary kernel,
//!   pair and matrix assembly.
//! * [`constellations`]: point sets and the per-family spec builders.
//! * [`analysis`]: the autocorrelation oracle and pair classification.
//! * [`search`]: enumeration with deduplication, exhaustive census, QAM-U
//!   matrix search.
//! * [`bench`]: wall-clock timing of the index form.
//! * [`format`]: versioned JSON and CSV file formats.
//! * [`reference`]: a port of the original vectorized routine.

pub mod analysis;
pub mod bench;
pub mod boolean;
pub mod constellations;
pub mod error;
pub mod format;
pub mod generator;
pub mod reference;
pub mod search;
pub mod sequence;
pub mod unitary;

pub use boolean::{BitIndexing, Permutation};
pub use error::{Error, Result};
pub use generator::ComplementaryMatrix;
pub use sequence::Sequence;
pub use unitary::{GeneratorSpec, Unitary2x2, UnitaryChain};

pub use num_complex::Complex64;
