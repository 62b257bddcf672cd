//! Numerical layer of stability conditions on Weierstraß elliptic surfaces.

pub mod charges;
pub mod glaction;
pub mod lattice;
pub mod patching;
pub mod sampling;
pub mod series;
pub mod transform;
pub mod walls;
