use std::ops::Deref;

use num_complex::Complex64;

use crate::boolean::BitIndexing;
use crate::error::{invalid, Result};

/// A length-`2^N` sequence of finite complex values.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    elements: Vec<Complex64>,
}

impl Sequence {
    pub fn new(elements: Vec<Complex64>) -> Result<Self> {
        BitIndexing::from_len(elements.len())?;
        if let Some((n, z)) = elements.iter().enumerate().find(|(_, z)| !z.is_finite()) {
            return Err(invalid(format!("element {n} is not finite: {z}")));
        }
        Ok(Self { elements })
    }

    /// Skips validation; used by the generators, whose output is a power of
    /// two by construction.
    pub(crate) fn from_vec_unchecked(elements: Vec<Complex64>) -> Self {
        debug_assert!(elements.len().is_power_of_two());
        Self { elements }
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// `N` with `len = 2^N`.
    pub fn bits(&self) -> u32 {
        self.elements.len().trailing_zeros()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.elements
    }

    /// `n ↦ conj(a(L-1-n))`.
    pub fn conjugate_reverse(&self) -> Sequence {
        Sequence {
            elements: self.elements.iter().rev().map(|z| z.conj()).collect(),
        }
    }

    /// Multiplies every element by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Sequence {
        Sequence {
            elements: self.elements.iter().map(|z| z * factor).collect(),
        }
    }

    /// Concatenation `[self, other]`. The result is only a valid sequence
    /// when both halves have equal length.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        if self.len() != other.len() {
            return Err(invalid(format!(
                "cannot concatenate lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&other.elements);
        Ok(Sequence { elements })
    }

    /// Largest elementwise distance to `other`, or `None` on length mismatch.
    pub fn max_abs_diff(&self, other: &Sequence) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }
}

impl Deref for Sequence {
    type Target = [Complex64];

    fn deref(&self) -> &[Complex64] {
        &self.elements
    }
}

impl AsRef<[Complex64]> for Sequence {
    fn as_ref(&self) -> &[Complex64] {
        &self.elements
    }
}

impl TryFrom<Vec<Complex64>> for Sequence {
    type Error = crate::Error;

    fn try_from(v: Vec<Complex64>) -> Result<Self> {
        Sequence::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_lengths_and_values() {
        assert!(Sequence::new(vec![]).is_err());
        assert!(Sequence::new(vec![c(1.0, 0.0); 3]).is_err());
        assert!(Sequence::new(vec![c(f64::NAN, 0.0), c(1.0, 0.0)]).is_err());
        assert!(Sequence::new(vec![c(1.0, 0.0)]).is_ok());
    }

    #[test]
    fn conjugate_reverse_of_pair() {
        let a = Sequence::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(a.conjugate_reverse().as_slice(), &[c(0.0, -1.0), c(1.0, 0.0)]);
        let real = Sequence::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(
            real.conjugate_reverse(),
            Sequence::from_real(&[4.0, 3.0, 2.0, 1.0]).unwrap()
        );
    }
}
