use super::useries::USeries;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientPair {
    pub degree: usize,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

/// Coefficientwise comparison of two sides of a formal identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub parameters: BTreeMap<String, String>,
    pub coefficients: Vec<CoefficientPair>,
    pub verdict: String,
    pub first_mismatch: Option<usize>,
}

impl IdentityReport {
    pub fn compare(identity: &str, parameters: BTreeMap<String, String>, lhs: &USeries, rhs: &USeries) -> IdentityReport {
        let coefficients: Vec<CoefficientPair> = lhs
            .coeffs()
            .iter()
            .zip(rhs.coeffs())
            .enumerate()
            .map(|(k, (a, b))| CoefficientPair {
                degree: k,
                lhs: a.to_string(),
                rhs: b.to_string(),
                equal: a == b,
            })
            .collect();
        let first_mismatch = coefficients.iter().find(|c| !c.equal).map(|c| c.degree);
        IdentityReport {
            identity: identity.to_string(),
            parameters,
            coefficients,
            verdict: if first_mismatch.is_none() { "match" } else { "mismatch" }.to_string(),
            first_mismatch,
        }
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Builds a parameter map from string pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
