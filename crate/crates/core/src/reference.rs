//! A direct port of the original vectorized reference routine
//! (`booleanCS(P, C, S, r, s)`).
//!
//! The routine builds the table `CS = [C; S; -conj(S); conj(C)]` and, for each
//! stage `k`, multiplies in `CS(1 + B(k) + 2·B(k+1), k)` where `B` is the
//! extended bit chain. Row `B(k) + 2·B(k+1)` picks `U[B(k+1), B(k)]`, the
//! transpose of the entry used by [`generate_index_form`]. The transposed
//! matrix `[[C, -S*], [S, C*]]` has the same shape with `S` replaced by
//! `-S*`, so
//!
//! ```text
//! boolean_cs(P, C, S, r, s) == index_form(P, C, -conj(S), r, s)
//! ```
//!
//! and both produce complementary pairs.
//!
//! [`generate_index_form`]: crate::generator::generate_index_form

use num_complex::Complex64;

use crate::boolean::{check_selector, Permutation};
use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::unitary::{GeneratorSpec, Unitary2x2, UnitaryChain};

/// Evaluates the reference routine stage by stage over whole rows, the way
/// the vectorized original does.
pub fn boolean_cs(
    perm: &Permutation,
    c: &[Complex64],
    s: &[Complex64],
    r_sel: u8,
    s_sel: u8,
) -> Result<Sequence> {
    check_selector("r", r_sel)?;
    check_selector("s", s_sel)?;
    let n = perm.len();
    if c.len() != n + 1 || s.len() != n + 1 {
        return Err(Error::InvalidSpec(format!(
            "N = {n} needs {} values of C and S, got {} and {}",
            n + 1,
            c.len(),
            s.len()
        )));
    }
    let len = 1usize << n;
    // Boolean functions b[k][n] = n_{k+1}.
    let b: Vec<Vec<u8>> = (0..n)
        .map(|k| (0..len).map(|i| ((i >> k) & 1) as u8).collect())
        .collect();
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n + 2);
    rows.push(vec![r_sel; len]);
    for &p in perm.as_slice() {
        rows.push(b[p as usize - 1].clone());
    }
    rows.push(vec![s_sel; len]);

    let mut x = vec![Complex64::new(1.0, 0.0); len];
    for k in 0..=n {
        let table = [c[k], s[k], -s[k].conj(), c[k].conj()];
        for (i, xi) in x.iter_mut().enumerate() {
            let idx = rows[k][i] as usize + 2 * rows[k + 1][i] as usize;
            *xi *= table[idx];
        }
    }
    Sequence::new(x)
}

/// The [`GeneratorSpec`] whose index form reproduces
/// `boolean_cs(perm, c, s, r, s_sel)`.
pub fn equivalent_spec(
    perm: &Permutation,
    c: &[Complex64],
    s: &[Complex64],
    r_sel: u8,
    s_sel: u8,
) -> Result<GeneratorSpec> {
    let matrices = c
        .iter()
        .zip(s)
        .map(|(&ck, &sk)| Unitary2x2::new(ck, -sk.conj()))
        .collect::<Result<Vec<_>>>()?;
    UnitaryChain::new(perm.clone(), matrices)?.with_selectors(r_sel, s_sel)
}
