use log::info;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Scenario, Witness, WitnessPath};
use super::search::{find_s1, find_s2, WitnessConfig};
use crate::error::{Error, Result};
use crate::linkage::build_reduced_instance;
use crate::matroid::{BinaryMatroid, ElementSet};

/// Largest ground set on which circuits are enumerated.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureReport {
    pub k: usize,
    pub c1_len: usize,
    pub c2_len: usize,
    pub n_size: usize,
    pub t: usize,
    pub circumference_n: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(Box<Certificate>),
    Failed(FailureReport),
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertifyOutcome::Certified(c) => Some(c),
            CertifyOutcome::Failed(_) => None,
        }
    }
}

/// Reduces `(M, C1, C2)` and looks for evidence of `2c(M) ≥ |C1| + |C2| + k`.
///
/// Order: S1 subsets, S2 (pipeline, then exhaustive), then a direct bound
/// from `c(N)` when `N` is small enough to enumerate.
pub fn certify(
    m: &BinaryMatroid,
    c1: &ElementSet,
    c2: &ElementSet,
    k: usize,
    cfg: &WitnessConfig,
) -> Result<CertifyOutcome> {
    cfg.validate()?;
    let ri = build_reduced_instance(m, c1, c2)?;
    info!(
        "reduced instance: |E(N)| = {}, t = {}",
        ri.n().ground_size(),
        ri.t()
    );
    let mut cert = match find_s1(&ri, k, cfg)? {
        Some(c) => Some(c),
        None => find_s2(&ri, k, cfg)?,
    };
    let n_size = ri.n().ground_size();
    let c_n = if n_size <= ENUMERATION_LIMIT {
        Some(ri.n().circumference()?)
    } else {
        None
    };
    if cert.is_none() {
        if let Some(c) = c_n {
            if 2 * c >= c1.len() + c2.len() + k {
                cert = Some(Certificate::new(
                    Scenario::DirectBound,
                    k,
                    ri.c1().clone(),
                    ri.c2().clone(),
                    Witness::None,
                    Some(c),
                    ri.trace().clone(),
                    WitnessPath::Enumeration,
                    vec!["no S1 or S2 witness within the search budget".into()],
                ));
            }
        }
    }
    let Some(mut cert) = cert else {
        let reason = match c_n {
            Some(c) => format!(
                "2c(N) = {} < |C1| + |C2| + k = {}",
                2 * c,
                c1.len() + c2.len() + k
            ),
            None => "no witness within the search budget and N is too large to enumerate".into(),
        };
        return Ok(CertifyOutcome::Failed(FailureReport {
            k,
            c1_len: c1.len(),
            c2_len: c2.len(),
            n_size,
            t: ri.t(),
            circumference_n: c_n,
            reason,
        }));
    };
    if m.ground_size() <= ENUMERATION_LIMIT {
        cert.circumference_m = Some(m.circumference()?);
    }
    cert.verify_against(m)?;
    Ok(CertifyOutcome::Certified(Box::new(cert)))
}

/// `2c(M) ≥ |C1| + |C2| + k`, by enumerating the circuits of `M`.
pub fn verify_bound_oracle(
    m: &BinaryMatroid,
    c1: &ElementSet,
    c2: &ElementSet,
    k: usize,
) -> Result<bool> {
    if m.ground_size() > ENUMERATION_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "enumeration is limited to {ENUMERATION_LIMIT} elements, got {}",
            m.ground_size()
        )));
    }
    Ok(2 * m.circumference()? >= c1.len() + c2.len() + k)
}
