#![allow(dead_code)]

use std::path::PathBuf;

use eolab_core::vm::EnumeratorProgram;

pub fn programs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../programs")
}

pub fn program(name: &str) -> EnumeratorProgram {
    let path = programs_dir().join(format!("{name}.json"));
    let source = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    EnumeratorProgram::parse(&source).unwrap()
}

/// Ordered (A, B) program pairs used for search agreement.
pub const FIXTURE_PAIRS: &[(&str, &str)] = &[
    ("evens", "evens"),
    ("evens", "countdown"),
    ("countdown", "evens"),
    ("staggered", "zigzag"),
    ("zigzag", "staggered"),
    ("descending", "evens"),
    ("evens", "descending"),
    ("squares_mod", "countdown"),
    ("countdown", "descending"),
];

pub const ROUND_CAP: u64 = 1000;
