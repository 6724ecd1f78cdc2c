//! Brute-force census of every complementary pair over a finite alphabet.
//!
//! Pairs are found by bucketing sequences on a hash of their quantized
//! sidelobes: `b` can only complement `a` if its sidelobes are the negation
//! of `a`'s. Every candidate is then confirmed with the autocorrelation
//! oracle, so hashing can miss nothing that quantization keeps apart and can
//! admit nothing false.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{autocorrelation, classify_standard, is_complementary, DEFAULT_TOLERANCE};
use crate::error::{invalid, Error, Result};
use crate::format::REPORT_FORMAT;
use crate::search::enumerate::Enumeration;
use crate::search::key::{CanonicalKey, UnorderedPair, KEY_QUANTUM};

/// Cap on `|alphabet|^L`, the number of candidate sequences per side.
pub const DEFAULT_CENSUS_CAP: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Standard(u32),
    NonStandard,
    /// `a` contains a zero, so the ratio test is undefined.
    Unclassifiable,
}

impl Classification {
    pub fn of(a: &[Complex64], b: &[Complex64]) -> Classification {
        if !a.len().is_power_of_two() {
            return Classification::NonStandard;
        }
        match classify_standard(a, b) {
            Ok(Some(j)) => Classification::Standard(j),
            Ok(None) => Classification::NonStandard,
            Err(_) => Classification::Unclassifiable,
        }
    }

    pub fn is_standard(self) -> bool {
        matches!(self, Classification::Standard(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusPair {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub class: Classification,
}

/// Every ordered complementary pair of length `len` over `alphabet`.
#[derive(Debug, Clone, PartialEq)]
pub struct Census {
    pub alphabet: Vec<Complex64>,
    pub len: usize,
    pub sequences_searched: u64,
    pub pairs: Vec<CensusPair>,
}

fn decode(mut index: u64, alphabet: &[Complex64], len: usize) -> Vec<Complex64> {
    let base = alphabet.len() as u64;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(alphabet[(index % base) as usize]);
        index /= base;
    }
    out
}

fn sidelobe_hash(seq: &[Complex64], negate: bool) -> u64 {
    let profile = autocorrelation(seq).expect("non-empty");
    let sign = if negate { -1.0 } else { 1.0 };
    let mut h = DefaultHasher::new();
    for lag in 1..seq.len() as isize {
        let v = profile.value(lag) * sign;
        ((v.re / KEY_QUANTUM).round() as i64).hash(&mut h);
        ((v.im / KEY_QUANTUM).round() as i64).hash(&mut h);
    }
    h.finish()
}

pub fn census_pairs(alphabet: &[Complex64], len: usize, cap: u128) -> Result<Census> {
    if alphabet.is_empty() {
        return Err(invalid("census alphabet is empty"));
    }
    if len == 0 {
        return Err(invalid("census length must be positive"));
    }
    let distinct: BTreeSet<CanonicalKey> = alphabet.iter().map(|z| CanonicalKey::new(&[*z])).collect();
    if distinct.len() != alphabet.len() {
        return Err(invalid("census alphabet has repeated points"));
    }
    let estimate = (alphabet.len() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if estimate > cap {
        return Err(Error::BudgetExceeded {
            what: "census",
            estimate,
            cap,
        });
    }
    let count = estimate as u64;

    let hashes: Vec<u64> = (0..count)
        .into_par_iter()
        .map(|i| sidelobe_hash(&decode(i, alphabet, len), false))
        .collect();
    let mut buckets: HashMap<u64, Vec<u64>> = HashMap::new();
    for (i, h) in hashes.iter().enumerate() {
        buckets.entry(*h).or_default().push(i as u64);
    }

    let pairs: Vec<CensusPair> = (0..count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = decode(i, alphabet, len);
            let wanted = sidelobe_hash(&a, true);
            let partners = buckets.get(&wanted).cloned().unwrap_or_default();
            partners.into_iter().filter_map(move |j| {
                let b = decode(j, alphabet, len);
                let verdict = is_complementary(&a, &b, DEFAULT_TOLERANCE).ok()?;
                verdict.complementary.then(|| CensusPair {
                    class: Classification::of(&a, &b),
                    a: a.clone(),
                    b,
                })
            })
        })
        .collect();

    Ok(Census {
        alphabet: alphabet.to_vec(),
        len,
        sequences_searched: count,
        pairs,
    })
}

/// Pair counts under both counting conventions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ConventionCounts {
    pub census_standard: u64,
    pub generator: u64,
    pub found_by_generator: u64,
    pub not_found_by_generator: u64,
    /// Generator pairs that the census does not contain as standard pairs.
    pub generator_outside_census_standard: u64,
}

impl ConventionCounts {
    pub fn coincide(&self) -> bool {
        self.not_found_by_generator == 0 && self.generator_outside_census_standard == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coverage {
    /// `(a, b)` and `(b, a)` counted separately.
    pub ordered: ConventionCounts,
    /// `(a, b)` and `(b, a)` counted once.
    pub unordered: ConventionCounts,
    /// Generator row/column pairs that the ratio test calls non-standard.
    pub generator_non_standard: u64,
    pub distinct_generator_sequences: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusReport {
    pub format: &'static str,
    pub alphabet: Vec<[f64; 2]>,
    pub length: usize,
    pub sequences_searched: u64,
    pub total_pairs: u64,
    pub unordered_pairs: u64,
    pub standard: u64,
    pub non_standard: u64,
    /// Subset of `non_standard` where `a` had a zero element.
    pub unclassifiable: u64,
    pub standard_by_bit: BTreeMap<u32, u64>,
    pub coverage: Option<Coverage>,
}

fn compare<K: Ord + Clone>(census: &BTreeSet<K>, generated: &BTreeSet<K>) -> ConventionCounts {
    let found = census.intersection(generated).count() as u64;
    ConventionCounts {
        census_standard: census.len() as u64,
        generator: generated.len() as u64,
        found_by_generator: found,
        not_found_by_generator: census.len() as u64 - found,
        generator_outside_census_standard: generated.len() as u64 - found,
    }
}

impl Census {
    pub fn report(&self, generator: Option<&Enumeration>) -> CensusReport {
        let mut standard_by_bit = BTreeMap::new();
        let mut unclassifiable = 0;
        let mut standard_ordered = BTreeSet::new();
        let mut unordered = BTreeSet::new();
        for pair in &self.pairs {
            let ka = CanonicalKey::new(&pair.a);
            let kb = CanonicalKey::new(&pair.b);
            unordered.insert(UnorderedPair::new(ka.clone(), kb.clone()));
            match pair.class {
                Classification::Standard(j) => {
                    *standard_by_bit.entry(j).or_insert(0u64) += 1;
                    standard_ordered.insert((ka, kb));
                }
                Classification::Unclassifiable => unclassifiable += 1,
                Classification::NonStandard => {}
            }
        }
        let standard: u64 = standard_by_bit.values().sum();
        let coverage = generator.map(|g| {
            let standard_unordered: BTreeSet<UnorderedPair> = standard_ordered
                .iter()
                .map(|(a, b)| UnorderedPair::new(a.clone(), b.clone()))
                .collect();
            let gen_ordered: BTreeSet<(CanonicalKey, CanonicalKey)> = g
                .ordered_pairs
                .keys()
                .filter(|(a, _)| a.element_count() == self.len)
                .cloned()
                .collect();
            let gen_unordered: BTreeSet<UnorderedPair> = g
                .unordered_pairs
                .keys()
                .filter(|p| p.0.element_count() == self.len)
                .cloned()
                .collect();
            let generator_non_standard = g
                .unordered_pairs
                .keys()
                .filter(|p| {
                    let a = &g.sequences[&p.0].elements;
                    let b = &g.sequences[&p.1].elements;
                    !Classification::of(a, b).is_standard()
                })
                .count() as u64;
            Coverage {
                ordered: compare(&standard_ordered, &gen_ordered),
                unordered: compare(&standard_unordered, &gen_unordered),
                generator_non_standard,
                distinct_generator_sequences: g.sequences.len() as u64,
            }
        });
        CensusReport {
            format: REPORT_FORMAT,
            alphabet: self.alphabet.iter().map(|z| [z.re, z.im]).collect(),
            length: self.len,
            sequences_searched: self.sequences_searched,
            total_pairs: self.pairs.len() as u64,
            unordered_pairs: unordered.len() as u64,
            standard,
            non_standard: self.pairs.len() as u64 - standard,
            unclassifiable,
            standard_by_bit,
            coverage,
        }
    }
}
