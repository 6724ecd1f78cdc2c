//! Chains with one or more QAM-U matrices.
//!
//! A QAM-U matrix takes `C_K`, `S_K` from a QAM (or other) constellation.
//! Every other matrix is unimodular with `C_k = 1` and
//! `S_k = e^{2πi·m_k/order}`, where `order` is 4 for square QAM and 6 for
//! hexagonal constellations.
//!
//! Admissibility is checked by generating all four sequences of the
//! complementary matrix and testing every element for membership.

use num_complex::Complex64;

use crate::boolean::Permutation;
use crate::constellations::points::{root_of_unity, Constellation};
use crate::error::{invalid, Error, Result};
use crate::generator::generate_matrix;
use crate::unitary::{Unitary2x2, UnitaryChain};

/// One QAM-U matrix: its position `K` in `0..=N` and its entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QamUSlot {
    pub position: usize,
    pub c: Complex64,
    pub s: Complex64,
}

impl QamUSlot {
    pub fn new(position: usize, c: Complex64, s: Complex64) -> Self {
        Self { position, c, s }
    }
}

/// What to do when `C_K` is outside the canonical first quadrant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadrantPolicy {
    Ignore,
    #[default]
    Warn,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BuildWarning {
    /// `C_K` is outside `Re > 0, Im > 0`; the chain is valid but may
    /// generate sequences that another chain generates too.
    NonCanonicalQuadrant { position: usize, c: Complex64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct QamBuild {
    pub chain: UnitaryChain,
    pub warnings: Vec<BuildWarning>,
}

/// `Re > 0` and `Im > 0`.
pub fn in_canonical_quadrant(z: Complex64) -> bool {
    z.re > 0.0 && z.im > 0.0
}

/// Assembles the chain without checking membership.
pub fn qamu_chain(
    unimodular_order: u32,
    slots: &[QamUSlot],
    phases: &[u32],
    perm: Permutation,
) -> Result<UnitaryChain> {
    let n = perm.len();
    if unimodular_order == 0 {
        return Err(invalid("unimodular order must be positive"));
    }
    if phases.len() != n + 1 {
        return Err(Error::InvalidSpec(format!(
            "N = {n} needs {} phase indices, got {}",
            n + 1,
            phases.len()
        )));
    }
    for (i, slot) in slots.iter().enumerate() {
        if slot.position > n {
            return Err(invalid(format!(
                "QAM-U position {} is outside 0..={n}",
                slot.position
            )));
        }
        if slots[..i].iter().any(|other| other.position == slot.position) {
            return Err(invalid(format!("QAM-U position {} is used twice", slot.position)));
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let matrices = (0..=n)
        .map(|k| match slots.iter().find(|slot| slot.position == k) {
            Some(slot) => Unitary2x2::new(slot.c, slot.s),
            None => {
                let m = phases[k];
                if m >= unimodular_order {
                    return Err(invalid(format!(
                        "phase index {m} at position {k} is outside 0..{unimodular_order}"
                    )));
                }
                Unitary2x2::new(one, root_of_unity(m, unimodular_order))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    UnitaryChain::new(perm, matrices)
}

/// Generates the complementary matrix of `chain` and returns the first
/// element outside `constellation`, scanning `(r, s)` in row-major order.
pub fn validate_chain(chain: &UnitaryChain, constellation: &Constellation) -> Result<()> {
    let matrix = generate_matrix(chain);
    for r in 0..2u8 {
        for s in 0..2u8 {
            let seq = matrix.get(r, s);
            if let Some(index) = constellation.first_violation(seq) {
                return Err(Error::ConstellationViolation {
                    index,
                    r,
                    s,
                    value: seq[index],
                    constellation: constellation.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Single QAM-U matrix at `slot.position`.
///
/// `phases[k]` is used for every `k` except the slot position, whose entry is
/// ignored. `C_K` and `S_K` must be points of `constellation`, and so must
/// every generated element.
pub fn build_single_qamu(
    unimodular_order: u32,
    slot: QamUSlot,
    phases: &[u32],
    perm: Permutation,
    constellation: &Constellation,
    policy: QuadrantPolicy,
) -> Result<QamBuild> {
    constellation.require(slot.c)?;
    constellation.require(slot.s)?;
    let mut warnings = Vec::new();
    if !in_canonical_quadrant(slot.c) {
        match policy {
            QuadrantPolicy::Ignore => {}
            QuadrantPolicy::Warn => warnings.push(BuildWarning::NonCanonicalQuadrant {
                position: slot.position,
                c: slot.c,
            }),
            QuadrantPolicy::Error => return Err(Error::NonCanonicalQuadrant(slot.c)),
        }
    }
    let chain = qamu_chain(unimodular_order, &[slot], phases, perm)?;
    validate_chain(&chain, constellation)?;
    Ok(QamBuild { chain, warnings })
}

/// Single QAM-U matrix with 4-PSK elsewhere, checked against standard
/// 16-QAM.
pub fn build_qam16_single(
    slot: QamUSlot,
    phases: &[u32],
    perm: Permutation,
    policy: QuadrantPolicy,
) -> Result<QamBuild> {
    build_single_qamu(4, slot, phases, perm, &Constellation::qam16(), policy)
}

/// Single matrix with entries from a hexagonal point set and sixth roots of
/// unity elsewhere.
pub fn build_hexagonal_single(
    slot: QamUSlot,
    phases: &[u32],
    perm: Permutation,
    constellation: &Constellation,
) -> Result<QamBuild> {
    build_single_qamu(6, slot, phases, perm, constellation, QuadrantPolicy::Ignore)
}

/// One or two QAM-U matrices at distinct positions, 4-PSK elsewhere.
///
/// Admissibility is decided only by the membership scan: the chain is
/// returned iff every element of all four sequences lies in
/// `constellation`. Otherwise the error names the first offending element.
pub fn build_qam64_double(
    slots: &[QamUSlot],
    phases: &[u32],
    perm: Permutation,
    constellation: &Constellation,
) -> Result<UnitaryChain> {
    if slots.is_empty() || slots.len() > 2 {
        return Err(invalid(format!(
            "expected one or two QAM-U slots, got {}",
            slots.len()
        )));
    }
    let chain = qamu_chain(4, slots, phases, perm)?;
    validate_chain(&chain, constellation)?;
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_complementary, DEFAULT_TOLERANCE};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qam16_example() {
        let slot = QamUSlot::new(1, c(1.0, 1.0), c(3.0, 1.0));
        let build = build_qam16_single(slot, &[0; 4], Permutation::identity(3), QuadrantPolicy::Error)
            .unwrap();
        assert!(build.warnings.is_empty());
        let m = generate_matrix(&build.chain);
        for (_, (a, b)) in m.lines() {
            assert!(is_complementary(a, b, DEFAULT_TOLERANCE).unwrap().complementary);
        }
    }

    #[test]
    fn off_constellation_entries_are_rejected() {
        let slot = QamUSlot::new(1, c(2.0, 1.0), c(3.0, 1.0));
        assert!(matches!(
            build_qam16_single(slot, &[0; 4], Permutation::identity(3), QuadrantPolicy::Warn),
            Err(Error::OffConstellation { .. })
        ));
    }

    #[test]
    fn quadrant_policy() {
        let slot = QamUSlot::new(0, c(-1.0, 3.0), c(3.0, 1.0));
        let perm = Permutation::identity(2);
        let warn = build_qam16_single(slot, &[0, 1, 2], perm.clone(), QuadrantPolicy::Warn).unwrap();
        assert_eq!(
            warn.warnings,
            vec![BuildWarning::NonCanonicalQuadrant { position: 0, c: c(-1.0, 3.0) }]
        );
        assert!(build_qam16_single(slot, &[0, 1, 2], perm.clone(), QuadrantPolicy::Ignore)
            .unwrap()
            .warnings
            .is_empty());
        assert!(matches!(
            build_qam16_single(slot, &[0, 1, 2], perm, QuadrantPolicy::Error),
            Err(Error::NonCanonicalQuadrant(_))
        ));
    }

    #[test]
    fn standard_lattice_counterexample() {
        let z = c(1.0, 1.0);
        let slots = [QamUSlot::new(0, z, z), QamUSlot::new(2, z, z)];
        let err = build_qam64_double(&slots, &[0; 4], Permutation::identity(3), &Constellation::qam64())
            .unwrap_err();
        match err {
            Error::ConstellationViolation { value, .. } => {
                assert_eq!(value.re.rem_euclid(2.0), 0.0);
                assert_eq!(value.im.rem_euclid(2.0), 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn radius_sqrt5_points_are_admissible_on_the_natural_lattice() {
        let slots = [
            QamUSlot::new(0, c(2.0, 1.0), c(1.0, 2.0)),
            QamUSlot::new(3, c(2.0, 1.0), c(1.0, 2.0)),
        ];
        let chain = build_qam64_double(&slots, &[0, 1, 2, 0], Permutation::identity(3), &Constellation::qam64_natural())
            .unwrap();
        let (a, b) = crate::generator::generate_pair(&chain);
        assert!(is_complementary(&a, &b, DEFAULT_TOLERANCE).unwrap().complementary);
    }

    #[test]
    fn slot_validation() {
        let z = c(1.0, 1.0);
        let perm = Permutation::identity(2);
        assert!(qamu_chain(4, &[QamUSlot::new(3, z, z)], &[0; 3], perm.clone()).is_err());
        assert!(qamu_chain(4, &[QamUSlot::new(1, z, z), QamUSlot::new(1, z, z)], &[0; 3], perm.clone()).is_err());
        assert!(qamu_chain(4, &[], &[0, 4, 0], perm.clone()).is_err());
        assert!(build_qam64_double(&[], &[0; 3], perm, &Constellation::qam64()).is_err());
    }

    #[test]
    fn hexagonal_single() {
        let hex = Constellation::hexagonal();
        let omega = root_of_unity(1, 6);
        let slot = QamUSlot::new(2, c(1.0, 0.0), omega);
        let build = build_hexagonal_single(slot, &[1, 5, 0, 3], "2,1,3".parse().unwrap(), &hex).unwrap();
        let (a, b) = crate::generator::generate_pair(&build.chain);
        assert!(a.iter().chain(b.iter()).all(|&z| hex.contains(z)));
        assert!(is_complementary(&a, &b, DEFAULT_TOLERANCE).unwrap().complementary);
    }
}
