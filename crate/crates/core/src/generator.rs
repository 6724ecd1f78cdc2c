//! The universal generator in its three equivalent forms.
//!
//! Element `n` of the sequence selected by `(r, s)` is a product of `N+1`
//! scalars, one per matrix of the chain:
//!
//! ```text
//! M_{r,s}(n) = Π_{k=0..N} U^{k}[n̂_k, n̂_{k+1}]
//! ```
//!
//! * [`generate_index_form`] picks the entries directly (the hot path).
//! * [`generate_exponent_form`] raises `C_k`, `C_k*`, `S_k`, `-S_k*` to four
//!   Boolean exponents of which exactly one is set.
//! * [`generate_algebraic_form`] factors out `C = Π C_k` and the binary Golay
//!   kernel `G_{r,s}(n)` and expresses the rest through ratios `S_k / C_k`.
//!
//! The first two select identical scalars in identical order and agree
//! bit-for-bit. The algebraic form divides, so it agrees only to rounding.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boolean::{bit, check_selector, Permutation};
use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::unitary::{GeneratorSpec, UnitaryChain};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Below this length the per-element loop runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Zero-based bit shift for each `n̂_k`, `k = 1..=N`.
fn shifts(perm: &Permutation) -> Vec<u32> {
    perm.as_slice().iter().map(|&p| p - 1).collect()
}

fn fill<F>(len: usize, f: F) -> Vec<Complex64>
where
    F: Fn(usize) -> Complex64 + Sync + Send,
{
    if len >= PARALLEL_THRESHOLD {
        (0..len).into_par_iter().map(f).collect()
    } else {
        (0..len).map(f).collect()
    }
}

/// Boolean index form. `O(N)` per element, no matrix products.
pub fn generate_index_form(spec: &GeneratorSpec) -> Sequence {
    let table: Vec<[Complex64; 4]> = spec.matrices().iter().map(|u| u.entries()).collect();
    let shifts = shifts(spec.perm());
    let (r, s) = (spec.r() as usize, spec.s() as usize);
    let elements = fill(spec.len(), |n| {
        let mut acc = ONE;
        let mut prev = r;
        for (k, entries) in table.iter().enumerate() {
            let next = match shifts.get(k) {
                Some(&shift) => (n >> shift) & 1,
                None => s,
            };
            acc *= entries[2 * prev + next];
            prev = next;
        }
        acc
    });
    Sequence::from_vec_unchecked(elements)
}

/// `base^e` for a Boolean exponent. `e = false` gives exactly 1 for every
/// base, zero included.
#[inline]
fn pow_bool(base: Complex64, e: bool) -> Complex64 {
    if e {
        base
    } else {
        ONE
    }
}

/// Boolean exponent form.
pub fn generate_exponent_form(spec: &GeneratorSpec) -> Sequence {
    let n_bits = spec.bits();
    let perm = spec.perm();
    let (r, s) = (spec.r(), spec.s());
    let matrices = spec.matrices();
    let elements = fill(spec.len(), |n| {
        let hat = |k: u32| -> bool {
            if k == 0 {
                r == 1
            } else if k == n_bits + 1 {
                s == 1
            } else {
                bit(n, perm.apply(k)) == 1
            }
        };
        let mut acc = ONE;
        for (k, u) in matrices.iter().enumerate() {
            let (x, y) = (hat(k as u32), hat(k as u32 + 1));
            let e1 = !x && !y;
            let e2 = x && y;
            let e3 = !x && y;
            let e4 = x && !y;
            let factor = pow_bool(u.c(), e1)
                * pow_bool(u.c().conj(), e2)
                * pow_bool(u.s(), e3)
                * pow_bool(-u.s().conj(), e4);
            acc *= factor;
        }
        acc
    });
    Sequence::from_vec_unchecked(elements)
}

/// Algebraic exponent form.
///
/// Requires every `C_k` and `S_k` to be nonzero; otherwise returns
/// [`Error::SingularMatrix`] and the index form should be used.
pub fn generate_algebraic_form(spec: &GeneratorSpec) -> Result<Sequence> {
    let zero = Complex64::new(0.0, 0.0);
    for (k, u) in spec.matrices().iter().enumerate() {
        if u.c() == zero || u.s() == zero {
            return Err(Error::SingularMatrix {
                k,
                c: u.c(),
                s: u.s(),
            });
        }
    }
    let constant: Complex64 = spec.matrices().iter().map(|u| u.c()).product();
    // Per-matrix factors for n̂_{k+1} = 1, n̂_k = 1, and both.
    let ratios: Vec<(Complex64, Complex64, f64)> = spec
        .matrices()
        .iter()
        .map(|u| {
            let ratio = u.s() / u.c();
            let conj_ratio = -u.s().conj() / u.c();
            let magnitude = (u.s() / u.c()).norm().powi(-2);
            (ratio, conj_ratio, magnitude)
        })
        .collect();
    let kernel = golay_binary(spec.bits(), spec.perm(), spec.r(), spec.s())?;
    let shifts = shifts(spec.perm());
    let (r, s) = (spec.r() as usize, spec.s() as usize);
    let elements = fill(spec.len(), |n| {
        let mut acc = constant * kernel[n];
        let mut prev = r;
        for (k, &(ratio, conj_ratio, magnitude)) in ratios.iter().enumerate() {
            let next = match shifts.get(k) {
                Some(&shift) => (n >> shift) & 1,
                None => s,
            };
            if next == 1 {
                acc *= ratio;
            }
            if prev == 1 {
                acc *= conj_ratio;
            }
            if prev == 1 && next == 1 {
                acc *= magnitude;
            }
            prev = next;
        }
        acc
    });
    Ok(Sequence::from_vec_unchecked(elements))
}

/// The binary Golay kernel `G_{r,s}(n) = Π_{k=0..N} (-1)^(n̂_k · n̂_{k+1})`.
///
/// The sign is the parity of the number of adjacent `1,1` pairs in the
/// extended chain, computed in integers.
pub fn golay_binary(bits: u32, perm: &Permutation, r: u8, s: u8) -> Result<Sequence> {
    check_selector("r", r)?;
    check_selector("s", s)?;
    if perm.len() != bits as usize {
        return Err(Error::InvalidSpec(format!(
            "permutation has {} entries but N = {bits}",
            perm.len()
        )));
    }
    let shifts = shifts(perm);
    let elements = fill(1usize << bits, |n| {
        let mut prev = r as usize;
        let mut parity = 0usize;
        for k in 0..=bits as usize {
            let next = match shifts.get(k) {
                Some(&shift) => (n >> shift) & 1,
                None => s as usize,
            };
            parity ^= prev & next;
            prev = next;
        }
        Complex64::new(if parity == 0 { 1.0 } else { -1.0 }, 0.0)
    });
    Ok(Sequence::from_vec_unchecked(elements))
}

/// The `(r, s)` entry of the complementary matrix for `chain`.
pub fn generate_entry(chain: &UnitaryChain, r: u8, s: u8) -> Result<Sequence> {
    let spec = GeneratorSpec::new(chain.clone(), r, s)?;
    Ok(generate_index_form(&spec))
}

/// `(a, b) = (M_{0,0}, M_{0,1})`, the first row of the complementary matrix.
pub fn generate_pair(chain: &UnitaryChain) -> (Sequence, Sequence) {
    let a = generate_entry(chain, 0, 0).expect("selectors are in range");
    let b = generate_entry(chain, 0, 1).expect("selectors are in range");
    (a, b)
}

/// All four sequences of the complementary matrix.
pub fn generate_matrix(chain: &UnitaryChain) -> ComplementaryMatrix {
    let entry = |r, s| generate_entry(chain, r, s).expect("selectors are in range");
    ComplementaryMatrix {
        entries: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
    }
}

/// The 2×2 grid of sequences
///
/// ```text
/// [ a(n)        b(n)      ]
/// [ -b*R(n)     a*R(n)    ]
/// ```
///
/// Each row and each column is a complementary pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementaryMatrix {
    entries: [[Sequence; 2]; 2],
}

/// Which line of the matrix a pair was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixLine {
    /// `(M_{r,0}, M_{r,1})`: the two entries differ in `s`.
    Row(u8),
    /// `(M_{0,s}, M_{1,s})`: the two entries differ in `r`.
    Column(u8),
}

impl ComplementaryMatrix {
    /// Assembles a matrix from four sequences without checking the
    /// reversal identities; see [`ComplementaryMatrix::structure_holds`].
    pub fn from_entries(entries: [[Sequence; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn get(&self, r: u8, s: u8) -> &Sequence {
        &self.entries[r as usize][s as usize]
    }

    pub fn entries(&self) -> &[[Sequence; 2]; 2] {
        &self.entries
    }

    pub fn line(&self, line: MatrixLine) -> (&Sequence, &Sequence) {
        match line {
            MatrixLine::Row(r) => (self.get(r, 0), self.get(r, 1)),
            MatrixLine::Column(s) => (self.get(0, s), self.get(1, s)),
        }
    }

    /// The two rows followed by the two columns.
    pub fn lines(&self) -> [(MatrixLine, (&Sequence, &Sequence)); 4] {
        [
            MatrixLine::Row(0),
            MatrixLine::Row(1),
            MatrixLine::Column(0),
            MatrixLine::Column(1),
        ]
        .map(|l| (l, self.line(l)))
    }

    /// `M_{1,1} = (M_{0,0})*R` and `M_{1,0} = -(M_{0,1})*R`, compared exactly.
    pub fn structure_holds(&self) -> bool {
        let a = self.get(0, 0);
        let b = self.get(0, 1);
        *self.get(1, 1) == a.conjugate_reverse()
            && *self.get(1, 0) == b.conjugate_reverse().scaled(-ONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::Unitary2x2;

    fn re(values: &[f64]) -> Sequence {
        Sequence::from_real(values).unwrap()
    }

    fn golay_spec(bits: u32, r: u8, s: u8) -> GeneratorSpec {
        UnitaryChain::golay(Permutation::identity(bits))
            .with_selectors(r, s)
            .unwrap()
    }

    #[test]
    fn golay_kernel_small_cases() {
        let p = Permutation::identity(2);
        assert_eq!(golay_binary(2, &p, 0, 0).unwrap(), re(&[1.0, 1.0, 1.0, -1.0]));
        assert_eq!(golay_binary(2, &p, 1, 0).unwrap(), re(&[1.0, -1.0, 1.0, 1.0]));
        for perm in Permutation::all(4) {
            assert_eq!(golay_binary(4, &perm, 0, 0).unwrap()[0], ONE);
        }
        assert!(golay_binary(3, &p, 0, 0).is_err());
    }

    #[test]
    fn index_form_small_cases() {
        assert_eq!(generate_index_form(&golay_spec(2, 0, 0)), re(&[1.0, 1.0, 1.0, -1.0]));
        let ones = UnitaryChain::ones(Permutation::identity(2)).with_selectors(0, 0).unwrap();
        assert_eq!(generate_index_form(&ones), re(&[1.0, -1.0, -1.0, -1.0]));
        let ones = UnitaryChain::ones(Permutation::identity(1));
        assert_eq!(generate_index_form(&ones.clone().with_selectors(0, 0).unwrap()), re(&[1.0, -1.0]));
        assert_eq!(generate_index_form(&ones.with_selectors(1, 0).unwrap()), re(&[-1.0, -1.0]));
    }

    #[test]
    fn length_one_base_case() {
        let u = Unitary2x2::new(Complex64::new(2.0, 1.0), Complex64::new(0.0, 3.0)).unwrap();
        let chain = UnitaryChain::new(Permutation::identity(0), vec![u]).unwrap();
        let m = generate_matrix(&chain);
        for r in 0..2u8 {
            for s in 0..2u8 {
                assert_eq!(m.get(r, s).as_slice(), &[u.entry(r, s)]);
            }
        }
        let (a, b) = generate_pair(&chain);
        assert_eq!((a[0], b[0]), (u.entry(0, 0), u.entry(0, 1)));
    }

    #[test]
    fn exponent_form_handles_zero_entries() {
        let zero = Complex64::new(0.0, 0.0);
        let u = Unitary2x2::new(zero, Complex64::new(1.0, 0.0)).unwrap();
        let chain = UnitaryChain::new(Permutation::identity(2), vec![Unitary2x2::ones(), u, u]).unwrap();
        for r in 0..2 {
            for s in 0..2 {
                let spec = chain.clone().with_selectors(r, s).unwrap();
                let index = generate_index_form(&spec);
                assert_eq!(generate_exponent_form(&spec), index);
                assert!(index.iter().all(|z| z.is_finite()));
                assert!(matches!(
                    generate_algebraic_form(&spec),
                    Err(Error::SingularMatrix { k: 1, .. })
                ));
            }
        }
    }

    #[test]
    fn exponent_selection_for_one_zero_is_minus_s_conj() {
        let u = Unitary2x2::new(Complex64::new(2.0, 1.0), Complex64::new(1.0, 2.0)).unwrap();
        let chain = UnitaryChain::new(Permutation::identity(0), vec![u]).unwrap();
        let spec = chain.with_selectors(1, 0).unwrap();
        assert_eq!(generate_exponent_form(&spec)[0], -u.s().conj());
    }

    #[test]
    fn algebraic_form_of_golay_chain_is_the_signed_kernel() {
        for r in 0..2 {
            for s in 0..2 {
                let spec = golay_spec(3, r, s);
                let kernel = golay_binary(3, spec.perm(), r, s).unwrap();
                let sign = if (r + 3 * s) % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(generate_algebraic_form(&spec).unwrap(), kernel.scaled(Complex64::new(sign, 0.0)));
            }
        }
    }

    #[test]
    fn matrix_structure_for_binary_kernel() {
        let m = generate_matrix(&UnitaryChain::golay(Permutation::identity(2)));
        assert_eq!(*m.get(1, 1), re(&[-1.0, 1.0, 1.0, 1.0]));
        assert!(m.structure_holds());
        let (a, b) = m.line(MatrixLine::Row(0));
        assert_eq!(*a, re(&[1.0, 1.0, 1.0, -1.0]));
        assert_eq!(*b, re(&[1.0, 1.0, -1.0, 1.0]));
    }

    #[test]
    fn parallel_path_matches_sequential() {
        let bits = 15;
        let spec = golay_spec(bits, 1, 0);
        let fast = generate_index_form(&spec);
        let kernel = golay_binary(bits, spec.perm(), 1, 0).unwrap();
        assert_eq!(fast, kernel.scaled(Complex64::new(-1.0, 0.0)));
    }
}
