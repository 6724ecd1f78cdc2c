use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Quantization step for canonical keys.
pub const KEY_QUANTUM: f64 = 1e-6;

/// A sequence fingerprint: every coordinate rounded to a multiple of
/// [`KEY_QUANTUM`], packed little-endian.
///
/// Sequences that differ by more than about `1e-5` anywhere get distinct
/// keys. Sequences closer than `1e-7` share a key unless a coordinate sits
/// within `1e-7` of a rounding boundary, which does not happen for the exact
/// Gaussian-integer and root-of-unity products this crate generates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

fn quantize(x: f64) -> i64 {
    // `round` is symmetric, so quantize(-x) == -quantize(x).
    (x / KEY_QUANTUM).round() as i64
}

impl CanonicalKey {
    pub fn new(seq: &[Complex64]) -> Self {
        let mut bytes = Vec::with_capacity(seq.len() * 16);
        for z in seq {
            bytes.extend_from_slice(&quantize(z.re).to_le_bytes());
            bytes.extend_from_slice(&quantize(z.im).to_le_bytes());
        }
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn element_count(&self) -> usize {
        self.0.len() / 16
    }

    /// The quantized coordinates as `(re, im)` integer pairs.
    pub fn coordinates(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.chunks_exact(16).map(|chunk| {
            let re = i64::from_le_bytes(chunk[..8].try_into().unwrap());
            let im = i64::from_le_bytes(chunk[8..].try_into().unwrap());
            (re, im)
        })
    }

    /// The sequence this key stands for, up to quantization.
    pub fn to_sequence(&self) -> Vec<Complex64> {
        self.coordinates()
            .map(|(re, im)| Complex64::new(re as f64 * KEY_QUANTUM, im as f64 * KEY_QUANTUM))
            .collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (re, im)) in self.coordinates().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{re},{im}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A pair of keys with the smaller one first, so `(a, b)` and `(b, a)`
/// coincide.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct UnorderedPair(pub CanonicalKey, pub CanonicalKey);

impl UnorderedPair {
    pub fn new(a: CanonicalKey, b: CanonicalKey) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }
}
