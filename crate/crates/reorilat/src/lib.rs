//! Acyclic reorientation lattices of directed acyclic graphs.
//!
//! The crate builds the poset of acyclic reorientations of a dag, decides
//! when it is a lattice and which lattice properties hold, models its join
//! irreducibles by ropes, enumerates its congruences as subrope-order
//! ideals, and realizes quotient fans as exact rational polytopes (Minkowski
//! sums of shard polytopes, graphical zonotopes, removahedral associahedra).
//! A poset-of-regions API covers arbitrary one-sided vector configurations.
//!
//! All geometry is exact: coordinates are arbitrary-precision rationals and
//! no floating point is used anywhere.

pub mod bits;
pub mod congruence;
pub mod corpus;
pub mod dag;
pub mod error;
pub mod geom;
pub mod io;
pub mod poset;
pub mod reorient;
pub mod restrict;
pub mod rope;
pub mod verify;

pub use dag::Dag;
pub use error::{Error, Result};
