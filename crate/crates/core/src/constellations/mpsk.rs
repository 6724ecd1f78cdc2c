//! M-PSK chains (`C_k = 1`, `S_k = e^{2πi·m_k/M}`) and the algebraic normal
//! form of their phase.
//!
//! With unimodular `S_k = w_k` the generated element is
//!
//! ```text
//! M_{r,s}(n) = w̃_0 · G_{r,s}(n) · Π_{k=1..N} w̃_k^(n_{P(k)})
//! w̃_k = -w_{k-1} / w_k,        w̃_0 = (-1)^r · w_N^s · w_0^(-r)
//! ```
//!
//! so its phase, in units of `2π/M`, is the second-order Boolean polynomial
//!
//! ```text
//! (M/2)·Σ_{k=0..N} n̂_k·n̂_{k+1} + m̃_0 + Σ_{k=1..N} m̃_k·n_{P(k)}   (mod M)
//! ```
//!
//! where `w̃_k = e^{2πi·m̃_k/M}`. The `(-1)^r` in `w̃_0` comes from the
//! `-S_k*` entry at `k = 0`.

use num_complex::Complex64;

use crate::boolean::{bit, check_selector, Permutation};
use crate::constellations::points::root_of_unity;
use crate::error::{invalid, Error, Result};
use crate::unitary::{GeneratorSpec, Unitary2x2, UnitaryChain};

/// Parameters of an M-PSK chain: order `M`, one phase index per matrix and
/// the permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpskParams {
    order: u32,
    phases: Vec<u32>,
    perm: Permutation,
}

impl MpskParams {
    pub fn new(order: u32, phases: Vec<u32>, perm: Permutation) -> Result<Self> {
        if order < 2 {
            return Err(invalid(format!("M-PSK order must be at least 2, got {order}")));
        }
        if phases.len() != perm.len() + 1 {
            return Err(Error::InvalidSpec(format!(
                "N = {} needs {} phase indices, got {}",
                perm.len(),
                perm.len() + 1,
                phases.len()
            )));
        }
        if let Some(&m) = phases.iter().find(|&&m| m >= order) {
            return Err(invalid(format!("phase index {m} is outside 0..{order}")));
        }
        Ok(Self { order, phases, perm })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn bits(&self) -> u32 {
        self.perm.len() as u32
    }
}

pub fn build_mpsk_chain(params: &MpskParams) -> UnitaryChain {
    let one = Complex64::new(1.0, 0.0);
    let matrices = params
        .phases
        .iter()
        .map(|&m| Unitary2x2::new(one, root_of_unity(m, params.order)).expect("C = 1 is nonzero"))
        .collect();
    UnitaryChain::new(params.perm.clone(), matrices).expect("phase count matches N + 1")
}

pub fn build_mpsk_spec(params: &MpskParams, r: u8, s: u8) -> Result<GeneratorSpec> {
    build_mpsk_chain(params).with_selectors(r, s)
}

fn half_order(order: u32) -> Result<u32> {
    if order % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "the ANF phase needs an even order M, got {order}"
        )));
    }
    Ok(order / 2)
}

/// The linear coefficients `m̃_0 .. m̃_N` of the ANF phase.
pub fn anf_coefficients(params: &MpskParams, r: u8, s: u8) -> Result<Vec<u32>> {
    check_selector("r", r)?;
    check_selector("s", s)?;
    let order = params.order;
    let half = half_order(order)?;
    let m = &params.phases;
    let last = m[m.len() - 1];
    let mut out = Vec::with_capacity(m.len());
    out.push((half * r as u32 + s as u32 * last + (order - m[0]) * r as u32) % order);
    for k in 1..m.len() {
        out.push((half + m[k - 1] + order - m[k]) % order);
    }
    Ok(out)
}

/// Normalized phase of element `n` as an integer mod `M`:
/// `e^{2πi·phase/M}` is exactly the index-form element.
pub fn mpsk_phase_anf(params: &MpskParams, r: u8, s: u8, n: usize) -> Result<u32> {
    let coeffs = anf_coefficients(params, r, s)?;
    let bits = params.bits();
    if n >= 1usize << bits {
        return Err(invalid(format!("index n = {n} is outside 0..{}", 1usize << bits)));
    }
    Ok(phase_with_coefficients(params, &coeffs, r, s, n))
}

/// The quadratic part `(M/2)·Σ n̂_k·n̂_{k+1}` without any linear terms.
pub fn quadratic_phase(params: &MpskParams, r: u8, s: u8, n: usize) -> u32 {
    let perm = &params.perm;
    let bits = params.bits();
    let hat = |k: u32| -> u32 {
        if k == 0 {
            r as u32
        } else if k == bits + 1 {
            s as u32
        } else {
            bit(n, perm.apply(k)) as u32
        }
    };
    let pairs: u32 = (0..=bits).map(|k| hat(k) * hat(k + 1)).sum();
    (params.order / 2) * (pairs % 2)
}

fn phase_with_coefficients(params: &MpskParams, coeffs: &[u32], r: u8, s: u8, n: usize) -> u32 {
    let order = params.order as u64;
    let mut phase = quadratic_phase(params, r, s, n) as u64 + coeffs[0] as u64;
    for k in 1..=params.bits() {
        phase += coeffs[k as usize] as u64 * bit(n, params.perm.apply(k)) as u64;
    }
    (phase % order) as u32
}

/// Walsh index `l` with `l_k = m̃_{P^-1(k)} mod 2` for the binary case, so
/// that the generated sequence is `±G_{r,s}(n) · W_l(n)`.
pub fn binary_walsh_index(params: &MpskParams, r: u8, s: u8) -> Result<usize> {
    if params.order != 2 {
        return Err(Error::Unsupported(format!(
            "the Walsh reduction is for M = 2, got {}",
            params.order
        )));
    }
    let coeffs = anf_coefficients(params, r, s)?;
    let mut l = 0usize;
    for k in 1..=params.bits() {
        let tilde = coeffs[params.perm.inverse_of(k) as usize] & 1;
        l |= (tilde as usize) << (k - 1);
    }
    Ok(l)
}

/// The constant `w̃_0` as a ±1 for `M = 2`.
pub fn binary_constant(params: &MpskParams, r: u8, s: u8) -> Result<i8> {
    let coeffs = anf_coefficients(params, r, s)?;
    Ok(if coeffs[0] == 0 { 1 } else { -1 })
}
