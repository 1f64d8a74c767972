//! Weight filtrations, sl2-triples, Deligne bigradings and polarized
//! limiting mixed Hodge structures of nilpotent orbits.

pub mod bigrading;
pub mod lmhs;
pub mod rwfp;
pub mod sl2;
pub mod spec;
pub mod weight;

pub use bigrading::{deligne_bigrading, BigradingChecks, DeligneBigrading};
pub use lmhs::{
    associated_graded_orbit, polarization_sign, stratum_hodge_numbers, stratum_lmhs, verify_polarized_lmhs, GradedPiece,
    PolarizationReport,
};
pub use rwfp::{relative_weight_filtration_check, RwfpReport};
pub use sl2::{complete_sl2, grading_element, grading_element_with, y_eigen_decomposition, Grading, Sl2Triple, SplittingRule};
pub use spec::{HodgeFiltration, PolarizedOrbitSpec};
pub use weight::{satisfies_weight_properties, weight_filtration, WeightFiltration};
