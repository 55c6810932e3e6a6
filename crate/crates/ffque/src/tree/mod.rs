//! The Bruhat-Tits tree of PGL2(F_q((T^-1))), congruence quotients and their spectra.

pub mod matrix;
pub mod orbit;
pub mod quotient;
pub mod vertex;

pub use matrix::Mat2;
pub use orbit::{orbit_equal, orbit_search, reduce, reduce_to_ray, witness, Level, OrbitCheck, OrbitKey};
pub use quotient::{adjacency_spectrum, build_quotient, build_quotient_level, QuotientGraph, SpectrumReport};
pub use vertex::TreeVertex;
