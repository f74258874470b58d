//! Feature-preserving triangle-mesh denoising and inpainting.
//!
//! The regularizer is the total variation of the unit normal field: the sum
//! over interior edges of the geodesic distance between the two adjacent face
//! normals on the unit sphere, weighted by edge length. Minimizing it drives
//! surfaces toward piecewise-flat shapes while keeping sharp creases intact,
//! which is exactly what box-like scanned geometry wants.
//!
//! The solver is a split Bregman (ADMM) iteration with a *scalar* auxiliary
//! variable per edge: the signed normal distance across the edge. The scalar
//! splitting keeps the multiplier update a plain addition and needs no
//! parallel transport between tangent spaces.
//!
//! Module map:
//!
//! - [`mesh`] — triangle meshes, connectivity, per-edge frames
//! - [`sphere`] — unit-sphere geometry (log map, signed normal distance)
//! - [`energy`] — objective functionals and their analytic shape gradients
//! - [`solver`] — the split Bregman iteration and minimal-surface initialization
//! - [`noise`] — reproducible synthetic normal-direction noise
//! - [`metrics`] — reconstruction quality measures
//! - [`primitives`] — test and benchmark shapes (grids, cubes)
//!
//! The crate is `no_std` (with `alloc`), so the numerical core can be embedded
//! anywhere; file formats and the command-line driver live in the companion
//! `meshtv` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod energy;
pub mod error;
pub mod mesh;
pub mod metrics;
pub mod noise;
pub mod primitives;
pub mod solver;
pub mod sphere;
pub mod vec3;

pub use error::{Error, Result};
pub use mesh::{EdgeFrame, TriangleMesh};
pub use vec3::Vec3;
