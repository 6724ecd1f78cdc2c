//! Bit extraction, the extended bit chain and bipolar Walsh functions.
//!
//! Sequence indices `n` in `0..L` with `L = 2^N` are read as `N` Boolean
//! functions `n_1 .. n_N`, LSB first, so that `n = Σ n_k · 2^(k-1)`. Bit
//! positions are 1-based everywhere in the public API.
//!
//! The generator never looks at `n_k` directly. It walks the *extended* chain
//!
//! ```text
//! n̂_0 = r,   n̂_k = n_{P(k)} for 1 <= k <= N,   n̂_{N+1} = s
//! ```
//!
//! where `P` is a [`Permutation`] of `1..=N` and `r`, `s` pick the row and
//! column of the complementary matrix.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest supported number of bits. Sequences have `2^N` elements, so this
/// is far beyond anything that fits in memory.
pub const MAX_BITS: u32 = 30;

/// Number of bits `N` together with the derived length `L = 2^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitIndexing {
    bits: u32,
}

impl BitIndexing {
    /// `N = 0` is accepted: it is the length-1 base case of the recursion.
    pub fn new(bits: u32) -> Result<Self> {
        if bits > MAX_BITS {
            return Err(invalid(format!("N = {bits} exceeds the maximum of {MAX_BITS}")));
        }
        Ok(Self { bits })
    }

    /// Recovers `N` from a power-of-two length.
    pub fn from_len(len: usize) -> Result<Self> {
        if len == 0 || !len.is_power_of_two() {
            return Err(invalid(format!("length {len} is not a power of two")));
        }
        Self::new(len.trailing_zeros())
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        1usize << self.bits
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// Checked version of [`bit`] bound to this width.
    pub fn bit(self, n: usize, k: u32) -> Result<u8> {
        if n >= self.len() {
            return Err(invalid(format!("index n = {n} is outside 0..{}", self.len())));
        }
        if k == 0 || k > self.bits {
            return Err(invalid(format!("bit position k = {k} is outside 1..={}", self.bits)));
        }
        Ok(bit(n, k))
    }
}

/// `n_k`: the k-th binary digit of `n`, with `k = 1` the least significant.
///
/// Unchecked hot-path variant; `k` must be at least 1.
#[inline]
pub fn bit(n: usize, k: u32) -> u8 {
    debug_assert!(k >= 1);
    ((n >> (k - 1)) & 1) as u8
}

/// A bijection of `{1..N}` stored together with its inverse.
///
/// Validated on construction; every accessor afterwards is check-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    map: Vec<u32>,
    inverse: Vec<u32>,
}

impl Permutation {
    /// Builds `P` from the 1-based list `[P(1), .., P(N)]`.
    pub fn new(map: Vec<u32>) -> Result<Self> {
        let n = map.len();
        if n > MAX_BITS as usize {
            return Err(Error::InvalidPermutation(format!(
                "length {n} exceeds the maximum of {MAX_BITS}"
            )));
        }
        let mut inverse = vec![0u32; n];
        for (i, &p) in map.iter().enumerate() {
            if p == 0 || p as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {p} at position {} is outside 1..={n}",
                    i + 1
                )));
            }
            let slot = &mut inverse[p as usize - 1];
            if *slot != 0 {
                return Err(Error::InvalidPermutation(format!("entry {p} appears twice")));
            }
            *slot = i as u32 + 1;
        }
        Ok(Self { map, inverse })
    }

    pub fn identity(n: u32) -> Self {
        let map: Vec<u32> = (1..=n).collect();
        Self {
            inverse: map.clone(),
            map,
        }
    }

    /// Number of elements `N`.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &p)| p as usize == i + 1)
    }

    /// `P(k)` for `k` in `1..=N`. Panics on out-of-range `k`.
    pub fn apply(&self, k: u32) -> u32 {
        self.map[k as usize - 1]
    }

    /// `P^-1(k)` for `k` in `1..=N`. Panics on out-of-range `k`.
    pub fn inverse_of(&self, k: u32) -> u32 {
        self.inverse[k as usize - 1]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: self.inverse.clone(),
            inverse: self.map.clone(),
        }
    }

    /// Every permutation of `1..=n` in lexicographic order.
    pub fn all(n: u32) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = (1..=n).collect();
        loop {
            out.push(Permutation::new(current.clone()).expect("lexicographic successor is valid"));
            if !next_lexicographic(&mut current) {
                break;
            }
        }
        out
    }
}

fn next_lexicographic(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(map: Vec<u32>) -> Result<Self> {
        Permutation::new(map)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.map
    }
}

/// Comma-separated 1-based list, e.g. `"2,1,3"` for `P(1)=2, P(2)=1, P(3)=3`.
/// The empty string is the permutation of the empty set.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Permutation::new(Vec::new());
        }
        let map = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPermutation(format!("cannot parse entry {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(map)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Row/column selector, either 0 or 1.
pub(crate) fn check_selector(name: &str, v: u8) -> Result<()> {
    if v > 1 {
        return Err(invalid(format!("selector {name} must be 0 or 1, got {v}")));
    }
    Ok(())
}

/// `n̂_k` for `k` in `0..=N+1`.
pub fn extended_bit(n: usize, k: u32, perm: &Permutation, r: u8, s: u8) -> Result<u8> {
    check_selector("r", r)?;
    check_selector("s", s)?;
    let bits = perm.len() as u32;
    let width = BitIndexing::new(bits)?;
    if n >= width.len() {
        return Err(invalid(format!("index n = {n} is outside 0..{}", width.len())));
    }
    match k {
        0 => Ok(r),
        k if k == bits + 1 => Ok(s),
        k if k <= bits => Ok(bit(n, perm.apply(k))),
        k => Err(invalid(format!("extended bit position k = {k} is outside 0..={}", bits + 1))),
    }
}

/// Bipolar Walsh function `W_l(n) = Π_k (-1)^(l_k · n_k)` over `N` bits.
///
/// The exponent is the parity of `l & n`, so the result is exact.
pub fn walsh(l: usize, n: usize, bits: u32) -> Result<i8> {
    let width = BitIndexing::new(bits)?;
    if l >= width.len() || n >= width.len() {
        return Err(invalid(format!(
            "walsh arguments l = {l}, n = {n} must lie in 0..{}",
            width.len()
        )));
    }
    Ok(walsh_unchecked(l, n))
}

#[inline]
pub(crate) fn walsh_unchecked(l: usize, n: usize) -> i8 {
    if (l & n).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}
