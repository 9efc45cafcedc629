//! Witness search for the two scenarios, certificates, and the certifier.

mod certificate;
mod certify;
mod ramsey;
mod search;

pub use certificate::{Arithmetic, Certificate, Scenario, Witness, WitnessPath};
pub use certify::{certify, verify_bound_oracle, CertifyOutcome, FailureReport, ENUMERATION_LIMIT};
pub use ramsey::monochromatic_subset;
pub use search::{find_s1, find_s2, find_s2_exhaustive, find_s2_pipeline, WitnessConfig};
