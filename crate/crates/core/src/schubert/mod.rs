//! Schubert varieties in `G/P_{x1}` on explicit affine charts.
//!
//! Representations are built exactly over `Q`: minuscule modules from their
//! weight graphs and the adjoint module of `E6` from a sign cocycle. Charts
//! are `σ·exp(Z)·v` with `Z` generic in `n_{x1}^−`, and the resolutions of
//! the chart ideals are assembled from three fundamental modules.

mod chart;
mod pfaffian;
mod rep;

pub use chart::{
    coset_m11_vanishes, fundamental_rep, generic_exp, height_twists, nilradical_roots, patch_parametrization,
    schubert_ideal, schubert_resolution, ChartJson, Nilradical, SchubertChart, Sigma,
};
pub use pfaffian::pfaffian_identification;
pub use rep::{adjoint_rep, is_minuscule, minuscule_rep, AdjointAlgebra, RepKind, RepMatrices, RepMatrix};
