//! Verification: aperiodic autocorrelation, complementarity verdicts and the
//! standard-pair test.
//!
//! Everything here is deliberately naive. The autocorrelation is the
//! `O(L²)` defining sum, with no FFT, because the rest of the crate is
//! checked against it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boolean::BitIndexing;
use crate::error::{invalid, Error, Result};
use crate::sequence::Sequence;

/// Default complementarity tolerance, relative to the peak sum `K`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Relative tolerance used when matching ratio patterns in
/// [`classify_standard`].
pub const RATIO_TOLERANCE: f64 = 1e-9;

/// `R_a(k) = Σ_n a(n) · conj(a(n+k))` for `k = -(L-1) ..= L-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrelationProfile {
    values: Vec<Complex64>,
    len: usize,
}

impl AutocorrelationProfile {
    /// Sequence length `L`.
    pub fn sequence_len(&self) -> usize {
        self.len
    }

    /// `R(k)`; panics when `|k| >= L`.
    pub fn value(&self, lag: isize) -> Complex64 {
        let idx = lag + self.len as isize - 1;
        assert!(
            idx >= 0 && (idx as usize) < self.values.len(),
            "lag {lag} out of range for length {}",
            self.len
        );
        self.values[idx as usize]
    }

    /// Values ordered from lag `-(L-1)` up to `L-1`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn lags(&self) -> impl Iterator<Item = isize> {
        let m = self.len as isize - 1;
        -m..=m
    }

    /// `R(0) = Σ |a(n)|²`.
    pub fn peak(&self) -> f64 {
        self.value(0).re
    }
}

/// Aperiodic autocorrelation by the defining sum. Works on any non-empty
/// slice, not only power-of-two lengths.
pub fn autocorrelation(a: &[Complex64]) -> Result<AutocorrelationProfile> {
    if a.is_empty() {
        return Err(invalid("autocorrelation of an empty sequence"));
    }
    let len = a.len();
    let m = len as isize - 1;
    let values = (-m..=m)
        .map(|lag| {
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..len as isize {
                let j = n + lag;
                if (0..len as isize).contains(&j) {
                    sum += a[n as usize] * a[j as usize].conj();
                }
            }
            sum
        })
        .collect();
    Ok(AutocorrelationProfile { values, len })
}

/// Outcome of [`is_complementary`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub complementary: bool,
    /// `K = R_a(0) + R_b(0)`.
    #[serde(rename = "K")]
    pub peak_sum: f64,
    /// `max_{k≠0} |R_a(k) + R_b(k)|`.
    #[serde(rename = "max_residual")]
    pub max_offpeak_residual: f64,
    /// Bit position `j` from [`classify_standard`], when the pair is
    /// complementary and of the standard shape.
    #[serde(rename = "standard_bit")]
    pub standard: Option<u32>,
}

/// Checks `R_a(k) + R_b(k) = K·δ(k)` within `tol · K` at every nonzero lag.
pub fn is_complementary(a: &[Complex64], b: &[Complex64], tol: f64) -> Result<PairVerdict> {
    if a.len() != b.len() {
        return Err(invalid(format!(
            "sequences have different lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if !(tol >= 0.0) {
        return Err(invalid(format!("tolerance must be nonnegative, got {tol}")));
    }
    let ra = autocorrelation(a)?;
    let rb = autocorrelation(b)?;
    let peak_sum = ra.peak() + rb.peak();
    let max_offpeak_residual = ra
        .lags()
        .filter(|&k| k != 0)
        .map(|k| (ra.value(k) + rb.value(k)).norm())
        .fold(0.0, f64::max);
    let complementary = max_offpeak_residual <= tol * peak_sum;
    let standard = if complementary && a.len().is_power_of_two() {
        classify_standard(a, b).ok().flatten()
    } else {
        None
    };
    Ok(PairVerdict {
        complementary,
        peak_sum,
        max_offpeak_residual,
        standard,
    })
}

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= RATIO_TOLERANCE * x.norm().max(y.norm())
}

/// Looks for a bit position `j` such that the elementwise ratio `b(n)/a(n)`
/// depends only on `n_j`.
///
/// For unimodular alphabets the two ratio values differ by a sign, so this is
/// `b(n) = const · (-1)^(n_j) · a(n)`. For QAM pairs the two values may also
/// differ in magnitude. Returns `None` when no such `j` exists or when
/// `L = 1`, and an error when `a` has a zero element.
pub fn classify_standard(a: &[Complex64], b: &[Complex64]) -> Result<Option<u32>> {
    if a.len() != b.len() {
        return Err(invalid(format!(
            "sequences have different lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let width = BitIndexing::from_len(a.len())?;
    if let Some(n) = a.iter().position(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::Degenerate(format!(
            "a({n}) is zero, so the ratio b/a is undefined"
        )));
    }
    let ratio: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| y / x).collect();
    for j in 1..=width.bits() {
        let mask = 1usize << (j - 1);
        let (v0, v1) = (ratio[0], ratio[mask]);
        if close(v0, v1) {
            continue;
        }
        let matches = ratio
            .iter()
            .enumerate()
            .all(|(n, &q)| close(q, if n & mask == 0 { v0 } else { v1 }));
        if matches {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// `n ↦ conj(a(L-1-n))`.
pub fn conjugate_reverse(a: &Sequence) -> Sequence {
    a.conjugate_reverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(values: &[f64]) -> Vec<Complex64> {
        values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }

    fn lags_0_up(p: &AutocorrelationProfile) -> Vec<f64> {
        (0..p.sequence_len() as isize).map(|k| p.value(k).re).collect()
    }

    #[test]
    fn profiles_of_length_four_pair() {
        let pa = autocorrelation(&re(&[1.0, 1.0, 1.0, -1.0])).unwrap();
        assert_eq!(lags_0_up(&pa), vec![4.0, 1.0, 0.0, -1.0]);
        let pb = autocorrelation(&re(&[1.0, 1.0, -1.0, 1.0])).unwrap();
        assert_eq!(lags_0_up(&pb), vec![4.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn single_element_profile() {
        let z = Complex64::new(3.0, -4.0);
        let p = autocorrelation(&[z]).unwrap();
        assert_eq!(p.values(), &[Complex64::new(25.0, 0.0)]);
        assert!(autocorrelation(&[]).is_err());
    }

    #[test]
    fn verdicts() {
        let v = is_complementary(&re(&[1.0, 1.0, 1.0, -1.0]), &re(&[1.0, 1.0, -1.0, 1.0]), DEFAULT_TOLERANCE)
            .unwrap();
        assert!(v.complementary);
        assert_eq!(v.peak_sum, 8.0);
        assert_eq!(v.max_offpeak_residual, 0.0);
        assert_eq!(v.standard, Some(2));

        let v = is_complementary(&re(&[1.0, 1.0]), &re(&[1.0, 1.0]), DEFAULT_TOLERANCE).unwrap();
        assert!(!v.complementary);
        assert_eq!(v.max_offpeak_residual, 2.0);

        let v = is_complementary(&[Complex64::new(0.0, 2.0)], &[Complex64::new(5.0, 1.0)], DEFAULT_TOLERANCE)
            .unwrap();
        assert!(v.complementary);
        assert!(is_complementary(&re(&[1.0]), &re(&[1.0, 1.0]), DEFAULT_TOLERANCE).is_err());
    }

    #[test]
    fn classification_examples() {
        let a = re(&[1.0, 1.0, 1.0, -1.0]);
        assert_eq!(classify_standard(&a, &re(&[1.0, 1.0, -1.0, 1.0])).unwrap(), Some(2));
        assert_eq!(classify_standard(&a, &re(&[1.0, -1.0, 1.0, 1.0])).unwrap(), Some(1));
        assert_eq!(classify_standard(&a, &re(&[1.0, -1.0, -1.0, -1.0])).unwrap(), None);
        assert_eq!(classify_standard(&re(&[1.0]), &re(&[-1.0])).unwrap(), None);
        assert!(matches!(
            classify_standard(&re(&[0.0, 1.0]), &re(&[1.0, 1.0])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn verdict_json_field_names() {
        let v = PairVerdict {
            complementary: true,
            peak_sum: 8.0,
            max_offpeak_residual: 0.0,
            standard: Some(2),
        };
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"complementary": true, "K": 8.0, "max_residual": 0.0, "standard_bit": 2})
        );
    }
}
