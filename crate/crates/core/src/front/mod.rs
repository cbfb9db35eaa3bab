//! Front-end translations: rational/equality instances into well-ordered
//! ones, reversible Petri-net reachability, and orbit-finite linear
//! systems.

mod linsys;
mod petri;
mod reduction;

pub use linsys::{
    encode_tuple, encode_vector, family_vector_at, linsolve, validate_family, LinsolveOutcome,
    VecSum, VectorFamily,
};
pub use petri::{petri_reach, petri_reach_upper, petri_validate, PetriNet, ReachOutcome};
pub use reduction::{accepted_shape, reduce_instance, symmetrize_equality, QInstance, Shape};
