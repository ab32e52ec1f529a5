//! Linking numbers three ways: the exact Gauss-integral oracle on polygonal
//! curves, the analytic linking number via mollified pullbacks, and the
//! Mayer–Vietoris induction that constructs the pairing forms; plus the
//! boundary-integral horizontality obstruction.

mod analytic;
mod curve;
mod gauss;
mod mv;
mod obstruction;

pub use analytic::{analytic_linking, AnalyticLinking, LinkingMapInput};
pub use curve::{circle_curve, segment_distance, PlCurve};
pub use gauss::{
    crossing_sign_linking, gauss_linking, gauss_linking_threads, presets, MIN_SEPARATION,
};
pub use mv::{mv_induction_build, s0_integral, smooth_step_down, LinkingForm, SphereEmbedding};
pub use obstruction::{decay_slope, horizontality_obstruction_test};
