//! The Hopf invariant of maps 𝕊³ → 𝕊²: fiber extraction by marching
//! tetrahedra, fiber linking after stereographic projection, and the
//! integral formulation against a verified primitive.

mod fiber;
mod invariant;

pub use fiber::{extract_fiber, extract_fiber_robust, sample_sphere_map, SphereMapSample};
pub use invariant::{
    calibrated_primitive, hopf_via_fibers, hopf_via_fibers_with_pole, hopf_via_forms,
    standard_round_one_form, unit_area_form_s2, HopfFibers,
};
