//! Searches for generating tuples of triangle, quadrangle and related
//! groups in finite permutation groups.

mod braid;
mod classify;
mod dihedral;
mod induced;
mod search;
mod subgroups;
mod survey;
mod tuples;

pub use braid::{quadruple_braid_orbits, BraidOrbits};
pub use classify::{classify, ClassificationReport, Flags, FLAG_VALUES};
pub use dihedral::{
    extended_hurwitz_survey, extended_hurwitz_test, g7_quadruple_from_triple, g7_quadruple_search,
    inverting_involution_exists, ExtendedSurvey, InversionWitness,
};
pub use induced::{induced_quadruples, InducedQuadruple, InducedReport, WordBounds};
pub use search::{
    find_quadruples, find_triples, inner_automorphism_order, scan_triples, ClassedElements, QuadrupleSearch,
    SearchConfig, TripleScan, DEFAULT_INVOLUTION_CAP,
};
pub use subgroups::{
    find_subgroups_of_order, handles_bookkeeping, irreducible_subgroups, preimage_signature, smallest_index_found,
    index_seven_check, Handles, IrreducibleReport, SubgroupSignature, IndexSevenInstance, IndexSevenReport,
};
pub use survey::{hurwitz_survey_psl2, psl2_hurwitz_predicted, SurveyRow, DEFAULT_SURVEY_LIMIT};
pub use tuples::{GeneratingQuadruple, GeneratingTriple, TupleReport};
