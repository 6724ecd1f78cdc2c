//! Constellation point sets and the builders that choose the `N+1` matrices
//! for each constellation family.

pub mod mpsk;
pub mod points;
pub mod qam;

pub use mpsk::{
    anf_coefficients, binary_constant, binary_walsh_index, build_mpsk_chain, build_mpsk_spec,
    mpsk_phase_anf, MpskParams,
};
pub use points::{
    membership, root_of_unity, Constellation, ConstellationKind, Lattice,
    DEFAULT_MEMBERSHIP_TOLERANCE,
};
pub use qam::{
    build_hexagonal_single, build_qam16_single, build_qam64_double, build_single_qamu,
    in_canonical_quadrant, qamu_chain, validate_chain, BuildWarning, QamBuild, QamUSlot,
    QuadrantPolicy,
};
