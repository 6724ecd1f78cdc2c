//! The 2×2 matrices that parameterize the generator and the spec types
//! built from them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boolean::{check_selector, BitIndexing, Permutation};
use crate::error::{Error, Result};

/// The matrix `[[C, S], [-S*, C*]]`.
///
/// For any `C`, `S` not both zero it satisfies `U·Uᴴ = K·I` with
/// `K = |C|² + |S|²`, i.e. it is unitary in the wide sense.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawUnitary", into = "RawUnitary")]
pub struct Unitary2x2 {
    c: Complex64,
    s: Complex64,
}

#[derive(Serialize, Deserialize)]
struct RawUnitary {
    c: [f64; 2],
    s: [f64; 2],
}

impl TryFrom<RawUnitary> for Unitary2x2 {
    type Error = Error;

    fn try_from(raw: RawUnitary) -> Result<Self> {
        Unitary2x2::new(
            Complex64::new(raw.c[0], raw.c[1]),
            Complex64::new(raw.s[0], raw.s[1]),
        )
    }
}

impl From<Unitary2x2> for RawUnitary {
    fn from(u: Unitary2x2) -> Self {
        RawUnitary {
            c: [u.c.re, u.c.im],
            s: [u.s.re, u.s.im],
        }
    }
}

impl Unitary2x2 {
    pub fn new(c: Complex64, s: Complex64) -> Result<Self> {
        if !c.is_finite() || !s.is_finite() {
            return Err(Error::InvalidSpec(format!("matrix entries must be finite, got C = {c}, S = {s}")));
        }
        if c == Complex64::new(0.0, 0.0) && s == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidSpec("C and S are both zero".into()));
        }
        Ok(Self { c, s })
    }

    /// `C = 1`, `S = 1`: every entry is ±1.
    pub fn ones() -> Self {
        Self {
            c: Complex64::new(1.0, 0.0),
            s: Complex64::new(1.0, 0.0),
        }
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    /// `K = |C|² + |S|²`.
    pub fn gain(&self) -> f64 {
        self.c.norm_sqr() + self.s.norm_sqr()
    }

    /// `U_{row,col}`; panics if either index exceeds 1.
    #[inline]
    pub fn entry(&self, row: u8, col: u8) -> Complex64 {
        self.entries()[(2 * row + col) as usize]
    }

    /// `[U_00, U_01, U_10, U_11] = [C, S, -S*, C*]`, indexed by `2·row + col`.
    #[inline]
    pub fn entries(&self) -> [Complex64; 4] {
        [self.c, self.s, -self.s.conj(), self.c.conj()]
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let e = self.entries();
        [[e[0], e[1]], [e[2], e[3]]]
    }

    /// `U·Uᴴ`, computed entrywise.
    pub fn gram(&self) -> [[Complex64; 2]; 2] {
        let m = self.matrix();
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
            }
        }
        out
    }
}

/// The `N+1` matrices `U^{0} .. U^{N}` and the permutation `P`: everything
/// the generator needs except the row/column selectors.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryChain {
    perm: Permutation,
    matrices: Vec<Unitary2x2>,
}

impl UnitaryChain {
    pub fn new(perm: Permutation, matrices: Vec<Unitary2x2>) -> Result<Self> {
        BitIndexing::new(perm.len() as u32)?;
        if matrices.len() != perm.len() + 1 {
            return Err(Error::InvalidSpec(format!(
                "N = {} needs {} matrices, got {}",
                perm.len(),
                perm.len() + 1,
                matrices.len()
            )));
        }
        Ok(Self { perm, matrices })
    }

    /// All matrices `C = S = 1`. Every entry is ±1, with `-1` exactly at the
    /// `(1, 0)` position, so the `(r, s)` sequence is
    /// `(-1)^r · G_{r,s}(n) · W_{L-1}(n)`.
    pub fn ones(perm: Permutation) -> Self {
        let matrices = vec![Unitary2x2::ones(); perm.len() + 1];
        Self { perm, matrices }
    }

    /// `C_k = 1`, `S_k = (-1)^k`. The `(0, 0)` sequence is exactly the binary
    /// Golay kernel `G_{0,0}`, and the `(r, s)` sequence is
    /// `(-1)^(r + N·s) · G_{r,s}`.
    pub fn golay(perm: Permutation) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let matrices = (0..=perm.len())
            .map(|k| Unitary2x2 {
                c: one,
                s: if k % 2 == 0 { one } else { -one },
            })
            .collect();
        Self { perm, matrices }
    }

    pub fn bits(&self) -> u32 {
        self.perm.len() as u32
    }

    pub fn len(&self) -> usize {
        1usize << self.bits()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn matrices(&self) -> &[Unitary2x2] {
        &self.matrices
    }

    pub fn with_selectors(self, r: u8, s: u8) -> Result<GeneratorSpec> {
        GeneratorSpec::new(self, r, s)
    }

    /// The chain for `N-1` bits made of the first `N` matrices and the
    /// identity permutation. Only defined for identity-permutation chains,
    /// where it is the inner stage of the concatenation recursion.
    pub fn prefix(&self) -> Result<UnitaryChain> {
        if self.bits() == 0 || !self.perm.is_identity() {
            return Err(Error::InvalidSpec(
                "prefix needs N >= 1 and the identity permutation".into(),
            ));
        }
        Ok(UnitaryChain {
            perm: Permutation::identity(self.bits() - 1),
            matrices: self.matrices[..self.matrices.len() - 1].to_vec(),
        })
    }
}

/// A full generator spec: the chain plus the selectors `(r, s)` picking one
/// entry of the complementary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    chain: UnitaryChain,
    r: u8,
    s: u8,
}

impl GeneratorSpec {
    pub fn new(chain: UnitaryChain, r: u8, s: u8) -> Result<Self> {
        check_selector("r", r)?;
        check_selector("s", s)?;
        Ok(Self { chain, r, s })
    }

    pub fn chain(&self) -> &UnitaryChain {
        &self.chain
    }

    pub fn into_chain(self) -> UnitaryChain {
        self.chain
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn s(&self) -> u8 {
        self.s
    }

    pub fn bits(&self) -> u32 {
        self.chain.bits()
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn perm(&self) -> &Permutation {
        self.chain.perm()
    }

    pub fn matrices(&self) -> &[Unitary2x2] {
        self.chain.matrices()
    }
}
