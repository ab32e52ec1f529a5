//! Oriented simplicial meshes of 𝕊^k and B^{k+1}, quadrature of pulled-back
//! forms, Stokes residuals, and refinement extrapolation.

mod ball;
mod integrate;
mod io;
mod quadrature;
mod richardson;
mod sphere;

pub use ball::BallMesh;
pub use integrate::{
    integrate_over_ball, integrate_pullback, integrate_pullback_threads, stokes_residual,
};
pub use io::{mesh_from_smesh, mesh_to_smesh};
pub use quadrature::{simplex_quadrature, QuadratureRule};
pub use richardson::{richardson_limit, RichardsonFit};
pub use sphere::SphereMesh;
