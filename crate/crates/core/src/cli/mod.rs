//! Instance files, generators and the certificate JSON format.

mod instance;
mod record;

pub use instance::{
    circular_ladder_edges, generate_instance, parse_instance, GenSpec, InstanceFile, InstanceKind,
};
pub use record::{
    emit_certificate, emit_record, parse_certificate, parse_record, CertificateRecord, StepRecord,
    WitnessRecord,
};
