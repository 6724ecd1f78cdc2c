//! Enumeration with deduplication, exhaustive pair census, and the search
//! for admissible QAM-U matrices.

pub mod census;
pub mod enumerate;
pub mod key;
pub mod qam_search;

pub use census::{
    census_pairs, Census, CensusPair, CensusReport, Classification, ConventionCounts, Coverage,
    DEFAULT_CENSUS_CAP,
};
pub use enumerate::{
    enumerate_generator, Enumeration, EnumerationOptions, Family, Grid, PermutationSet,
    SequenceRecord, DEFAULT_GRID_CAP,
};
pub use key::{CanonicalKey, UnorderedPair, KEY_QUANTUM};
pub use qam_search::{
    search_qam_matrices, Assignment, SearchOptions, SearchReport, SlotAssignment,
    DEFAULT_SEARCH_CAP,
};
