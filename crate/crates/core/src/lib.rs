//! Exact computations on the 28 pairs of minimal vectors of E7* and the 28
//! bitangents of a plane quartic.
//!
//! - [`lattice`]: the minimal vectors in the Q^8 model, pairings, an integral basis.
//! - [`matroid`]: independence over Q or F_p, circuits, brute-force isomorphism classes.
//! - [`classifier`]: the level-by-level signature census giving `n_r`.
//! - [`dihedral`]: existence of dihedral covers from mod-p dependences.
//! - [`bitangents`]: quartic and bitangent reconstruction from an Aronhold set.
//! - [`exactmath`]: the shared exact linear algebra.

pub mod bitangents;
pub mod classifier;
pub mod colex;
pub mod dihedral;
pub mod exactmath;
pub mod lattice;
pub mod matroid;
