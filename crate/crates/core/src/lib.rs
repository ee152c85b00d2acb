//! Homological graphic statics for 2D trusses.
//!
//! A truss drawn in the plane (a *form diagram*) carries algebraic structure:
//! assigning vector spaces to its vertices, edges and faces and linear maps to
//! its incidences yields cellular cosheaves and sheaves whose homology encodes
//! self-stresses, mechanisms, reciprocal force diagrams, polyhedral lifts and
//! stiffness dynamics. This crate implements the full pipeline:
//!
//! - [`complex`] — regular cell complexes of dimension ≤ 2 with signed
//!   incidence, Poincaré duality, Euler characteristic and genus;
//! - [`numerics`] — tolerance-controlled dense kernels, quotients and
//!   least-squares solves backing every homology computation;
//! - [`sheaf`] — cosheaves/sheaves as data, chain complexes, homology, duality
//!   operations, quotients and the connecting homomorphism;
//! - [`statics`] — the force cosheaf, linkage and position sheaves,
//!   self-stresses, mechanisms, Maxwell's rule and equilibrium solves;
//! - [`reciprocal`] — reciprocal (force) diagrams, mechanism transfer, the
//!   quarter-turn isomorphism and genus-based existence bounds;
//! - [`lifting`] — Maxwell–Cremona polyhedral lifting via the zero-locus and
//!   affine cosheaves;
//! - [`dynamics`] — sheaf Laplacians, stiffness matrices and heat-equation
//!   diffusion to harmonic representatives;
//! - [`io`] — the JSON diagram/result file formats used by the CLI;
//! - [`render`] — static SVG rendering of form/force diagrams;
//! - [`fixtures`] — the built-in diagram library used by tests and shipped as
//!   JSON.

pub mod complex;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lifting;
pub mod numerics;
pub mod reciprocal;
pub mod render;
pub mod sheaf;
pub mod statics;

pub use complex::{CellComplex, CellId, Diagram, ValidationReport};
pub use error::Error;
pub use numerics::Tolerance;
pub use sheaf::{ChainComplex, Cosheaf, CosheafMap, HomologySpace, Variance};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
