use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, ElementSet, MinorOp, MinorTrace};
use crate::witness::{Arithmetic, Certificate, Scenario, Witness, WitnessPath};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub element: usize,
    pub op: MinorOp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum WitnessRecord {
    Cycle { cycle: Vec<usize> },
    Pair { c1p: Vec<usize>, c2p: Vec<usize> },
}

/// The JSON form of a [`Certificate`].
///
/// Element indices are 1-based and refer to the input matroid `M`; the
/// trace lists the deletions and contractions that produce `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRecord {
    pub scenario: Scenario,
    pub k: usize,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub witness: Option<WitnessRecord>,
    pub circumference_n: Option<usize>,
    pub circumference_m: Option<usize>,
    pub arithmetic: Arithmetic,
    pub ground_size: usize,
    pub trace: Vec<StepRecord>,
    pub path: WitnessPath,
    pub convention: String,
    pub diagnostics: Vec<String>,
}

impl CertificateRecord {
    pub fn from_certificate(c: &Certificate) -> Self {
        let ids =
            |s: &ElementSet| -> Vec<usize> { c.to_original(s).iter().map(|e| e + 1).collect() };
        let witness = match &c.witness {
            Witness::S1 { cycle } => Some(WitnessRecord::Cycle { cycle: ids(cycle) }),
            Witness::S2 { c1p, c2p } => Some(WitnessRecord::Pair {
                c1p: ids(c1p),
                c2p: ids(c2p),
            }),
            Witness::None => None,
        };
        Self {
            scenario: c.scenario,
            k: c.k,
            c1: ids(&c.c1),
            c2: ids(&c.c2),
            witness,
            circumference_n: c.circumference_n,
            circumference_m: c.circumference_m,
            arithmetic: c.arithmetic.clone(),
            ground_size: c.trace.original_ground_size(),
            trace: c
                .trace
                .steps()
                .iter()
                .map(|s| StepRecord {
                    element: s.element + 1,
                    op: s.op,
                })
                .collect(),
            path: c.path,
            convention: c.convention.clone(),
            diagnostics: c.diagnostics.clone(),
        }
    }

    /// Rebuilds the certificate on `m` by replaying the trace.
    ///
    /// The recorded arithmetic and convention must match what the sets give.
    pub fn to_certificate(&self, m: &BinaryMatroid) -> Result<Certificate> {
        let bad = |msg: String| Error::InvariantViolation(format!("certificate record: {msg}"));
        if m.ground_size() != self.ground_size {
            return Err(bad(format!(
                "record is for {} elements, matroid has {}",
                self.ground_size,
                m.ground_size()
            )));
        }
        let mut trace = MinorTrace::identity(m);
        for s in &self.trace {
            if s.element == 0 {
                return Err(bad("element indices are 1-based".into()));
            }
            let done = trace.apply(s.element - 1, s.op)?;
            if done != s.op {
                return Err(bad(format!(
                    "step on element {} is not a {:?}",
                    s.element, s.op
                )));
            }
        }
        let set = |v: &[usize]| -> Result<ElementSet> {
            let zero: Vec<usize> = v
                .iter()
                .map(|&e| {
                    e.checked_sub(1)
                        .ok_or_else(|| bad("element indices are 1-based".into()))
                })
                .collect::<Result<_>>()?;
            trace.to_result(&m.set(&zero)?)
        };
        let witness = match &self.witness {
            Some(WitnessRecord::Cycle { cycle }) => Witness::S1 { cycle: set(cycle)? },
            Some(WitnessRecord::Pair { c1p, c2p }) => Witness::S2 {
                c1p: set(c1p)?,
                c2p: set(c2p)?,
            },
            None => Witness::None,
        };
        let mut c = Certificate::new(
            self.scenario,
            self.k,
            set(&self.c1)?,
            set(&self.c2)?,
            witness,
            self.circumference_n,
            trace.clone(),
            self.path,
            self.diagnostics.clone(),
        );
        c.circumference_m = self.circumference_m;
        if c.arithmetic != self.arithmetic {
            return Err(bad("arithmetic does not match the sets".into()));
        }
        if c.convention != self.convention {
            return Err(bad(format!("unknown convention {:?}", self.convention)));
        }
        Ok(c)
    }
}

/// Canonical JSON: fixed key order, two-space indentation, trailing newline.
pub fn emit_certificate(c: &Certificate) -> String {
    emit_record(&CertificateRecord::from_certificate(c))
}

pub fn emit_record(r: &CertificateRecord) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("records always serialize");
    s.push('\n');
    s
}

pub fn parse_record(text: &str) -> Result<CertificateRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Parses a certificate and rebuilds it against `m`.
pub fn parse_certificate(text: &str, m: &BinaryMatroid) -> Result<Certificate> {
    parse_record(text)?.to_certificate(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::{generate_instance, GenSpec};
    use crate::witness::{certify, WitnessConfig};

    fn cert_for(spec: GenSpec, k: usize) -> (BinaryMatroid, Certificate) {
        let f = generate_instance(spec).unwrap();
        let (c1, c2) = (f.named("C1").unwrap(), f.named("C2").unwrap());
        let out = certify(&f.matroid, c1, c2, k, &WitnessConfig::default()).unwrap();
        (f.matroid.clone(), out.certificate().unwrap().clone())
    }

    #[test]
    fn prism_round_trip() {
        let (m, c) = cert_for(GenSpec::CircularLadder { m: 3 }, 4);
        let text = emit_certificate(&c);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["scenario"], "S1");
        let pos: Vec<usize> = ["scenario", "\"k\"", "c1", "c2", "witness", "trace"]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v["witness"]["cycle"].as_array().unwrap().len(), 6);
        assert_eq!(parse_certificate(&text, &m).unwrap(), c);
        assert_eq!(emit_record(&parse_record(&text).unwrap()), text);
    }

    #[test]
    fn direct_bound_has_null_witness() {
        let (m, c) = cert_for(GenSpec::DisjointCycles { a: 3, b: 3 }, 0);
        let text = emit_certificate(&c);
        assert!(text.contains("\"witness\": null"));
        assert_eq!(parse_certificate(&text, &m).unwrap(), c);
    }

    #[test]
    fn tampered_records_are_rejected() {
        let (m, c) = cert_for(GenSpec::CircularLadder { m: 4 }, 2);
        let mut r = CertificateRecord::from_certificate(&c);
        r.arithmetic.excess += 1;
        assert!(r.to_certificate(&m).is_err());
        assert!(parse_record("{\"scenario\": \"S3\"}").is_err());
    }
}
