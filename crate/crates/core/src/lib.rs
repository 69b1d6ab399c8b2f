//! Exact-arithmetic Lefschetz coincidence and intersection invariants of
//! simplicial maps between triangulated closed manifolds.
//!
//! Everything runs over the rationals with arbitrary-precision arithmetic;
//! there is no floating point and no tolerance anywhere. The crate computes
//! homology with explicit bases, Poincaré duality via cup/cap products on a
//! fixed vertex order, wrong-way (Umkehr) maps, and the alternating-trace
//! invariants built from them, together with a symmetric monoidal trace
//! calculus that cross-checks them.

pub mod complex;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod homology;
pub mod intersection;
pub mod io;
pub mod lefschetz;
pub mod matrix;
mod par;
pub mod rational;
pub mod selftest;
pub mod trace;

pub use complex::{SimplicialComplex, SimplicialMap};
pub use duality::{umkehr, DualityData, FundamentalClass, Manifold};
pub use error::{Error, Result};
pub use homology::{euler_characteristic, homology, GradedMap, HomologyData};
pub use intersection::{
    inclusion_umkehr, intersection_lefschetz, intersection_number, SubmanifoldInclusion,
};
pub use lefschetz::{
    alpha_beta_lefschetz, canonical_theta, coincidence_lefschetz, coincidence_pushforward, g_alpha,
    lefschetz_fixed, theta_lefschetz, GAlphaVariant, HomologyClass, ThetaMap,
};
pub use matrix::RatMatrix;
pub use rational::Rational;
pub use trace::{categorical_trace, chain_trace, DualPairData};
