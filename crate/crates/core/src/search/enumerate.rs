//! Exhaustive enumeration of generator outputs over a finite parameter grid.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{is_complementary, DEFAULT_TOLERANCE};
use crate::boolean::Permutation;
use crate::constellations::{
    build_mpsk_chain, in_canonical_quadrant, qamu_chain, validate_chain, Constellation, MpskParams,
    QamUSlot,
};
use crate::error::{invalid, Error, Result};
use crate::generator::{generate_matrix, MatrixLine};
use crate::search::key::{CanonicalKey, UnorderedPair};
use crate::unitary::UnitaryChain;

/// Default cap on the number of chains a grid may contain.
pub const DEFAULT_GRID_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub enum PermutationSet {
    All,
    Identity,
    Explicit(Vec<Permutation>),
}

impl PermutationSet {
    fn count(&self, bits: u32) -> u128 {
        match self {
            PermutationSet::All => (1..=bits as u128).product(),
            PermutationSet::Identity => 1,
            PermutationSet::Explicit(list) => list.len() as u128,
        }
    }

    fn resolve(&self, bits: u32) -> Result<Vec<Permutation>> {
        match self {
            PermutationSet::All => Ok(Permutation::all(bits)),
            PermutationSet::Identity => Ok(vec![Permutation::identity(bits)]),
            PermutationSet::Explicit(list) => {
                if let Some(p) = list.iter().find(|p| p.len() != bits as usize) {
                    return Err(invalid(format!("permutation {p} does not have {bits} entries")));
                }
                if list.is_empty() {
                    return Err(invalid("empty permutation list"));
                }
                Ok(list.clone())
            }
        }
    }
}

/// Which chains a grid point describes.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `C_k = 1`, `S_k = e^{2πi·m_k/order}`, all `order^(N+1)` phase vectors.
    Mpsk { order: u32 },
    /// One QAM-U matrix at each listed position, entries drawn from
    /// `candidates`, unimodular phases of the given order elsewhere.
    /// Chains whose output leaves `constellation` are skipped and counted.
    SingleQamU {
        unimodular_order: u32,
        positions: Vec<usize>,
        candidates: Vec<Complex64>,
        canonical_quadrant: bool,
        constellation: Option<Constellation>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub bits: u32,
    pub family: Family,
    pub perms: PermutationSet,
}

impl Grid {
    pub fn mpsk(bits: u32, order: u32, perms: PermutationSet) -> Self {
        Self {
            bits,
            family: Family::Mpsk { order },
            perms,
        }
    }

    fn c_candidates(&self) -> Vec<Complex64> {
        match &self.family {
            Family::SingleQamU {
                candidates,
                canonical_quadrant,
                ..
            } => candidates
                .iter()
                .copied()
                .filter(|&z| !canonical_quadrant || in_canonical_quadrant(z))
                .collect(),
            Family::Mpsk { .. } => Vec::new(),
        }
    }

    /// Number of chains in the grid.
    pub fn size(&self) -> u128 {
        let perms = self.perms.count(self.bits);
        let slots = self.bits as u32 + 1;
        match &self.family {
            Family::Mpsk { order } => perms.saturating_mul((*order as u128).saturating_pow(slots)),
            Family::SingleQamU {
                unimodular_order,
                positions,
                candidates,
                ..
            } => perms
                .saturating_mul(positions.len() as u128)
                .saturating_mul(self.c_candidates().len() as u128)
                .saturating_mul(candidates.len() as u128)
                .saturating_mul((*unimodular_order as u128).saturating_pow(slots - 1)),
        }
    }

    fn validate(&self) -> Result<()> {
        match &self.family {
            Family::Mpsk { order } if *order < 2 => {
                Err(invalid(format!("M-PSK order must be at least 2, got {order}")))
            }
            Family::SingleQamU {
                unimodular_order,
                positions,
                candidates,
                ..
            } => {
                if *unimodular_order == 0 || candidates.is_empty() || positions.is_empty() {
                    return Err(invalid("QAM-U grid needs an order, positions and candidates"));
                }
                if let Some(p) = positions.iter().find(|&&p| p > self.bits as usize) {
                    return Err(invalid(format!("QAM-U position {p} is outside 0..={}", self.bits)));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

fn digits(mut index: u128, base: u32, count: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push((index % base as u128) as u32);
        index /= base as u128;
    }
    out
}

/// Decodes grid point `index` into a chain. The permutation varies slowest.
fn chain_at(grid: &Grid, perms: &[Permutation], c_cands: &[Complex64], index: u128) -> Result<UnitaryChain> {
    let per_perm = grid.size() / perms.len() as u128;
    let perm = perms[(index / per_perm) as usize].clone();
    let rest = index % per_perm;
    let n = grid.bits as usize;
    match &grid.family {
        Family::Mpsk { order } => {
            let phases = digits(rest, *order, n + 1);
            Ok(build_mpsk_chain(&MpskParams::new(*order, phases, perm)?))
        }
        Family::SingleQamU {
            unimodular_order,
            positions,
            candidates,
            ..
        } => {
            let phase_count = (*unimodular_order as u128).pow(n as u32);
            let mut rest = rest;
            let others = digits(rest % phase_count, *unimodular_order, n);
            rest /= phase_count;
            let s = candidates[(rest % candidates.len() as u128) as usize];
            rest /= candidates.len() as u128;
            let c = c_cands[(rest % c_cands.len() as u128) as usize];
            rest /= c_cands.len() as u128;
            let position = positions[rest as usize];
            let mut phases = others;
            phases.insert(position, 0);
            qamu_chain(*unimodular_order, &[QamUSlot::new(position, c, s)], &phases, perm)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceRecord {
    pub elements: Vec<Complex64>,
    /// Number of `(chain, r, s)` grid outputs that produced this sequence.
    pub multiplicity: u64,
    first_seen: u128,
}

/// Deduplicated generator output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Enumeration {
    pub bits: u32,
    /// Chains evaluated, including rejected ones.
    pub chains: u64,
    /// Chains skipped because an element left the target constellation.
    pub rejected: u64,
    pub sequences: BTreeMap<CanonicalKey, SequenceRecord>,
    /// Row and column pairs `(first, second)` as read from the matrix.
    pub ordered_pairs: BTreeMap<(CanonicalKey, CanonicalKey), u64>,
    pub unordered_pairs: BTreeMap<UnorderedPair, u64>,
    /// Lines that failed the complementarity check (only with `verify`).
    pub unsound_lines: u64,
}

impl Enumeration {
    fn merge(mut self, other: Enumeration) -> Enumeration {
        self.chains += other.chains;
        self.rejected += other.rejected;
        self.unsound_lines += other.unsound_lines;
        for (key, rec) in other.sequences {
            self.sequences
                .entry(key)
                .and_modify(|mine| {
                    mine.multiplicity += rec.multiplicity;
                    if rec.first_seen < mine.first_seen {
                        mine.elements = rec.elements.clone();
                        mine.first_seen = rec.first_seen;
                    }
                })
                .or_insert(rec);
        }
        for (k, v) in other.ordered_pairs {
            *self.ordered_pairs.entry(k).or_default() += v;
        }
        for (k, v) in other.unordered_pairs {
            *self.unordered_pairs.entry(k).or_default() += v;
        }
        self
    }

    /// Total `(chain, r, s)` outputs counted in the multiplicities.
    pub fn total_outputs(&self) -> u64 {
        self.sequences.values().map(|r| r.multiplicity).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationOptions {
    pub cap: u128,
    /// Run the autocorrelation oracle on every row and column pair.
    pub verify: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_GRID_CAP,
            verify: false,
        }
    }
}

/// Evaluates every chain in `grid` and collects the four matrix entries of
/// each, deduplicated by [`CanonicalKey`].
pub fn enumerate_generator(grid: &Grid, options: EnumerationOptions) -> Result<Enumeration> {
    grid.validate()?;
    let size = grid.size();
    if size > options.cap {
        return Err(Error::BudgetExceeded {
            what: "enumeration grid",
            estimate: size,
            cap: options.cap,
        });
    }
    let perms = grid.perms.resolve(grid.bits)?;
    let c_cands = grid.c_candidates();
    if matches!(grid.family, Family::SingleQamU { .. }) && c_cands.is_empty() {
        return Err(invalid("no C candidates left after the quadrant restriction"));
    }
    let constellation = match &grid.family {
        Family::SingleQamU { constellation, .. } => constellation.as_ref(),
        Family::Mpsk { .. } => None,
    };

    let result = (0..size as u64)
        .into_par_iter()
        .try_fold(
            || Enumeration {
                bits: grid.bits,
                ..Default::default()
            },
            |mut acc, index| -> Result<Enumeration> {
                let index = index as u128;
                let chain = chain_at(grid, &perms, &c_cands, index)?;
                acc.chains += 1;
                if let Some(target) = constellation {
                    if validate_chain(&chain, target).is_err() {
                        acc.rejected += 1;
                        return Ok(acc);
                    }
                }
                let matrix = generate_matrix(&chain);
                let mut keys = [[None, None], [None, None]];
                for r in 0..2u8 {
                    for s in 0..2u8 {
                        let seq = matrix.get(r, s);
                        let key = CanonicalKey::new(seq);
                        keys[r as usize][s as usize] = Some(key.clone());
                        acc.sequences
                            .entry(key)
                            .and_modify(|rec| rec.multiplicity += 1)
                            .or_insert_with(|| SequenceRecord {
                                elements: seq.to_vec(),
                                multiplicity: 1,
                                first_seen: index,
                            });
                    }
                }
                let key = |r: u8, s: u8| keys[r as usize][s as usize].clone().unwrap();
                for (line, (a, b)) in matrix.lines() {
                    let (ka, kb) = match line {
                        MatrixLine::Row(r) => (key(r, 0), key(r, 1)),
                        MatrixLine::Column(s) => (key(0, s), key(1, s)),
                    };
                    if options.verify && !is_complementary(a, b, DEFAULT_TOLERANCE)?.complementary {
                        acc.unsound_lines += 1;
                    }
                    *acc.unordered_pairs
                        .entry(UnorderedPair::new(ka.clone(), kb.clone()))
                        .or_default() += 1;
                    *acc.ordered_pairs.entry((ka, kb)).or_default() += 1;
                }
                Ok(acc)
            },
        )
        .try_reduce(
            || Enumeration {
                bits: grid.bits,
                ..Default::default()
            },
            |a, b| Ok(a.merge(b)),
        )?;
    Ok(result)
}
