//! Exact formal power series and the checks of the Dirichlet series identities.

pub mod sigma_l;
pub mod ramanujan_series;
pub mod ramanujan_identity;
pub mod report;
pub mod useries;
pub mod whittaker;

pub use sigma_l::{verify_sigma_l_series, BiSeries, Form, SigmaLReport, SigmaLVerdict, SyntheticMultiplicative};
pub use ramanujan_series::{coprime_count_inner, verify_ramanujan_sum_series, verify_level_ramanujan_series, verify_coprime_count_series};
pub use ramanujan_identity::{verify_ramanujan_identity, RamanujanIdentityReport};
pub use report::IdentityReport;
pub use useries::{zeta_series, USeries};
pub use whittaker::{geometric_n_sums, whittaker, GeometricSums};
