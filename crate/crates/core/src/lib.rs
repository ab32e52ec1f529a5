//! Computational toolkit for the Heisenberg group ℍ_n: group law and Korányi
//! metric, exact exterior calculus on ℝ^N, simplicial sphere/ball quadrature,
//! linking numbers (Gauss, analytic, Mayer–Vietoris), the Hopf invariant, and
//! mollification-rate / Hölder-exponent experiments.

pub mod approx;
pub mod error;
pub mod forms;
pub mod gallery;
pub mod heis;
pub mod hopf;
pub mod linalg;
pub mod linking;
pub mod mesh;
pub mod par;
pub mod rng;

pub use error::{Error, Result};
