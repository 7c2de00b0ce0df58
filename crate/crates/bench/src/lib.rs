//! Shared inputs for the criterion benches.

use std::path::PathBuf;

use eolab_core::vm::EnumeratorProgram;

/// Loads one of the example programs shipped under `programs/`.
pub fn program(name: &str) -> EnumeratorProgram {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../programs")
        .join(format!("{name}.json"));
    let source = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    EnumeratorProgram::parse(&source).unwrap_or_else(|e| panic!("{path:?}: {e}"))
}
