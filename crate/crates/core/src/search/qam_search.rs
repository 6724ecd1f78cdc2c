//! Computer search for admissible QAM-U matrix assignments.
//!
//! Every slot gets every `(C, S)` combination from the candidate set. The
//! remaining matrices are `C = S = 1` and the permutation is the identity.
//! An assignment is admissible when all four sequences of the resulting
//! complementary matrix stay inside the constellation and every row and
//! column passes the complementarity oracle.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{is_complementary, DEFAULT_TOLERANCE};
use crate::boolean::Permutation;
use crate::constellations::{in_canonical_quadrant, qamu_chain, Constellation, QamUSlot};
use crate::error::{invalid, Error, Result};
use crate::format::REPORT_FORMAT;
use crate::generator::generate_matrix;

pub const DEFAULT_SEARCH_CAP: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Only consider `C` values with `Re > 0, Im > 0`.
    pub canonical_quadrant: bool,
    pub cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            canonical_quadrant: false,
            cap: DEFAULT_SEARCH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotAssignment {
    pub position: usize,
    pub c: [f64; 2],
    pub s: [f64; 2],
}

impl From<QamUSlot> for SlotAssignment {
    fn from(slot: QamUSlot) -> Self {
        Self {
            position: slot.position,
            c: [slot.c.re, slot.c.im],
            s: [slot.s.re, slot.s.im],
        }
    }
}

impl SlotAssignment {
    pub fn to_slot(&self) -> QamUSlot {
        QamUSlot::new(
            self.position,
            Complex64::new(self.c[0], self.c[1]),
            Complex64::new(self.s[0], self.s[1]),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    pub slots: Vec<SlotAssignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub format: &'static str,
    pub constellation: String,
    pub n: u32,
    pub positions: Vec<usize>,
    pub candidates: usize,
    pub examined: u64,
    pub admissible: Vec<Assignment>,
}

/// Searches every assignment of candidate `(C, S)` pairs to `positions`.
///
/// `candidates` defaults to the constellation's own points.
pub fn search_qam_matrices(
    constellation: &Constellation,
    candidates: Option<&[Complex64]>,
    bits: u32,
    positions: &[usize],
    options: SearchOptions,
) -> Result<SearchReport> {
    let candidates = candidates.unwrap_or(constellation.points());
    if candidates.is_empty() {
        return Err(invalid("candidate set is empty"));
    }
    if positions.is_empty() {
        return Err(invalid("no QAM-U positions given"));
    }
    for (i, &p) in positions.iter().enumerate() {
        if p > bits as usize {
            return Err(invalid(format!("QAM-U position {p} is outside 0..={bits}")));
        }
        if positions[..i].contains(&p) {
            return Err(invalid(format!("QAM-U position {p} is listed twice")));
        }
    }
    let c_cands: Vec<Complex64> = candidates
        .iter()
        .copied()
        .filter(|&z| !options.canonical_quadrant || in_canonical_quadrant(z))
        .collect();
    if c_cands.is_empty() {
        return Err(invalid("no C candidates left after the quadrant restriction"));
    }
    let per_slot = c_cands.len() as u128 * candidates.len() as u128;
    let total = per_slot
        .checked_pow(positions.len() as u32)
        .unwrap_or(u128::MAX);
    if total > options.cap {
        return Err(Error::BudgetExceeded {
            what: "QAM-U search",
            estimate: total,
            cap: options.cap,
        });
    }

    let perm = Permutation::identity(bits);
    let phases = vec![0u32; bits as usize + 1];
    let admissible: Vec<Assignment> = (0..total as u64)
        .into_par_iter()
        .map(|index| -> Result<Option<Assignment>> {
            let mut rest = index as u128;
            let slots: Vec<QamUSlot> = positions
                .iter()
                .map(|&position| {
                    let s = candidates[(rest % candidates.len() as u128) as usize];
                    rest /= candidates.len() as u128;
                    let c = c_cands[(rest % c_cands.len() as u128) as usize];
                    rest /= c_cands.len() as u128;
                    QamUSlot::new(position, c, s)
                })
                .collect();
            let chain = match qamu_chain(4, &slots, &phases, perm.clone()) {
                Ok(chain) => chain,
                // C = S = 0 is not a matrix.
                Err(Error::InvalidSpec(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let matrix = generate_matrix(&chain);
            let inside = matrix
                .entries()
                .iter()
                .flatten()
                .all(|seq| constellation.first_violation(seq).is_none());
            if !inside {
                return Ok(None);
            }
            for (_, (a, b)) in matrix.lines() {
                if !is_complementary(a, b, DEFAULT_TOLERANCE)?.complementary {
                    return Ok(None);
                }
            }
            Ok(Some(Assignment {
                slots: slots.into_iter().map(SlotAssignment::from).collect(),
            }))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<Vec<_>>>()?;

    Ok(SearchReport {
        format: REPORT_FORMAT,
        constellation: constellation.to_string(),
        n: bits,
        positions: positions.to_vec(),
        candidates: candidates.len(),
        examined: total as u64,
        admissible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argument_errors() {
        let q = Constellation::qam16();
        assert!(search_qam_matrices(&q, Some(&[]), 2, &[0], SearchOptions::default()).is_err());
        assert!(search_qam_matrices(&q, None, 2, &[], SearchOptions::default()).is_err());
        assert!(search_qam_matrices(&q, None, 2, &[3], SearchOptions::default()).is_err());
        assert!(search_qam_matrices(&q, None, 2, &[1, 1], SearchOptions::default()).is_err());
        let tight = SearchOptions { cap: 10, ..Default::default() };
        assert!(matches!(
            search_qam_matrices(&q, None, 2, &[0], tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn single_slot_16qam_accepts_every_pair() {
        let q = Constellation::qam16();
        let report = search_qam_matrices(&q, None, 2, &[1], SearchOptions::default()).unwrap();
        assert_eq!(report.examined, 256);
        // Units times 16-QAM points stay in 16-QAM, so nothing is rejected.
        assert_eq!(report.admissible.len(), 256);
    }
}
