//! Brute-force oracles and spec samplers shared by the integration tests.
//!
//! Nothing here calls the library's generator or correlation code. The
//! generator oracle rebuilds every matrix explicitly and walks the bit chain
//! one element at a time.

#![allow(dead_code)]

use golay_forge::{Complex64, Permutation, Unitary2x2, UnitaryChain};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `[[C, S], [-S*, C*]]` written out by hand.
pub fn explicit_matrix(u: &Unitary2x2) -> [[Complex64; 2]; 2] {
    let (cc, ss) = (u.c(), u.s());
    [[cc, ss], [c(-ss.re, ss.im), c(cc.re, -cc.im)]]
}

/// Bit `k` (1-based) of `n`.
pub fn nth_bit(n: usize, k: usize) -> usize {
    (n >> (k - 1)) & 1
}

/// `n̂_0 = r`, `n̂_k = n_{P(k)}`, `n̂_{N+1} = s`.
pub fn hat_chain(n: usize, perm: &[u32], r: usize, s: usize) -> Vec<usize> {
    let mut chain = vec![r];
    chain.extend(perm.iter().map(|&p| nth_bit(n, p as usize)));
    chain.push(s);
    chain
}

/// Element-by-element evaluation of the product of matrix entries.
pub fn oracle_sequence(matrices: &[Unitary2x2], perm: &[u32], r: usize, s: usize) -> Vec<Complex64> {
    let bits = perm.len();
    assert_eq!(matrices.len(), bits + 1);
    (0..1usize << bits)
        .map(|n| {
            let hat = hat_chain(n, perm, r, s);
            let mut value = c(1.0, 0.0);
            for (k, u) in matrices.iter().enumerate() {
                value *= explicit_matrix(u)[hat[k]][hat[k + 1]];
            }
            value
        })
        .collect()
}

pub fn oracle_chain(chain: &UnitaryChain, r: usize, s: usize) -> Vec<Complex64> {
    oracle_sequence(chain.matrices(), chain.perm().as_slice(), r, s)
}

/// `G_{r,s}(n) = (-1)^{Σ n̂_k n̂_{k+1}}`.
pub fn oracle_golay(perm: &[u32], r: usize, s: usize) -> Vec<f64> {
    (0..1usize << perm.len())
        .map(|n| {
            let hat = hat_chain(n, perm, r, s);
            let e: usize = hat.windows(2).map(|w| w[0] * w[1]).sum();
            if e % 2 == 0 { 1.0 } else { -1.0 }
        })
        .collect()
}

/// `W_l(n) = Π (-1)^{l_k n_k}`.
pub fn oracle_walsh(l: usize, n: usize, bits: usize) -> f64 {
    let e: usize = (1..=bits).map(|k| nth_bit(l, k) * nth_bit(n, k)).sum();
    if e % 2 == 0 { 1.0 } else { -1.0 }
}

/// `R_a(k) = Σ a(n)·conj(a(n+k))` for `k = 0..L-1`.
pub fn oracle_autocorrelation(a: &[Complex64]) -> Vec<Complex64> {
    (0..a.len())
        .map(|k| (0..a.len() - k).map(|n| a[n] * a[n + k].conj()).sum())
        .collect()
}

/// Largest off-peak `|R_a + R_b|` divided by the peak sum.
pub fn oracle_relative_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ra = oracle_autocorrelation(a);
    let rb = oracle_autocorrelation(b);
    let peak = (ra[0] + rb[0]).re;
    (1..a.len())
        .map(|k| (ra[k] + rb[k]).norm())
        .fold(0.0, f64::max)
        / peak
}

pub fn oracle_complementary(a: &[Complex64], b: &[Complex64]) -> bool {
    oracle_relative_residual(a, b) <= 1e-9
}

pub fn unit_root(m: u32, order: u32) -> Complex64 {
    // Exact on quarter turns so that binary and 4-PSK values stay integral.
    let m = m % order;
    if (4 * m) % order == 0 {
        return [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(4 * m / order) as usize];
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / order as f64)
}

pub fn random_perm<R: Rng>(rng: &mut R, bits: u32) -> Permutation {
    let mut map: Vec<u32> = (1..=bits).collect();
    map.shuffle(rng);
    Permutation::new(map).unwrap()
}

pub fn qam_points(side: i32) -> Vec<Complex64> {
    let coords: Vec<f64> = (-side + 1..side).step_by(2).map(|x: i32| f64::from(x)).collect();
    coords
        .iter()
        .flat_map(|&x| coords.iter().map(move |&y| c(x, y)))
        .collect()
}

/// A matrix from one of several families, never with a zero entry.
pub fn random_matrix<R: Rng>(rng: &mut R) -> Unitary2x2 {
    match rng.gen_range(0..6) {
        0 => Unitary2x2::new(c(1.0, 0.0), unit_root(rng.gen_range(0..2), 2)).unwrap(),
        1 => Unitary2x2::new(c(1.0, 0.0), unit_root(rng.gen_range(0..4), 4)).unwrap(),
        2 => Unitary2x2::new(c(1.0, 0.0), unit_root(rng.gen_range(0..8), 8)).unwrap(),
        3 => {
            let pts = qam_points(4);
            Unitary2x2::new(*pts.choose(rng).unwrap(), *pts.choose(rng).unwrap()).unwrap()
        }
        4 => Unitary2x2::new(unit_root(rng.gen_range(0..6), 6), unit_root(rng.gen_range(0..6), 6)).unwrap(),
        _ => {
            let mut z = || c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let (a, b) = (z(), z());
            Unitary2x2::new(a, b).unwrap()
        }
    }
}

pub fn random_chain<R: Rng>(rng: &mut R, bits: u32, perm: Permutation) -> UnitaryChain {
    let matrices = (0..=bits).map(|_| random_matrix(rng)).collect();
    UnitaryChain::new(perm, matrices).unwrap()
}

/// Largest elementwise distance, relative to the magnitude of `reference`.
pub fn max_relative_diff(reference: &[Complex64], other: &[Complex64]) -> f64 {
    reference
        .iter()
        .zip(other)
        .map(|(x, y)| (x - y).norm() / x.norm().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}
