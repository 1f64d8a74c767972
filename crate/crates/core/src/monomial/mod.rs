//! Monomial maps of nilpotent orbits: relation spaces, non-negative cone
//! generators, stratum maps, compatibility across strata and the
//! connected-fibre refinement.

pub mod compat;
pub mod map;
pub mod refine;
pub mod relations;

pub use compat::{compatibility_check, nested_pairs, strata_boundary_positivity, CompatReport};
pub use map::{monomial_map, orbit_relation_space, stratum_monomial_map, stratum_relation_space, MonomialMap};
pub use refine::{composite_exponents, connected_refinement, is_saturated, SaturationRefinement};
pub use relations::{nonnegative_generators, relation_space, RelationSpace};
