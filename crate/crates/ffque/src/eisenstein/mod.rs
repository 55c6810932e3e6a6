//! The level-A Eisenstein series at the cusp infinity: coset enumeration,
//! direct evaluation, closed Fourier-Whittaker coefficients and the oracles
//! that check them.

pub mod coeff;
pub mod cosets;
pub mod eval;
pub mod fourier;
pub mod index;

pub use coeff::{coeff_closed, coeff_unfolded, CoeffSource, EisCoeffTable};
pub use cosets::{brute_coset_classes, enumerate_cosets, CosetRep};
pub use eval::{eval_direct, eval_naive, EisValue, GroupPoint};
pub use fourier::{adjacency_eigen_check, fourier_extract, kappa, parseval_check, AdjacencyReport, ParsevalReport};
pub use index::{index_gamma0, order_pgl2_residue, p1_point_count};
