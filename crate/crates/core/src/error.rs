use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sequence: prefixes and patterns must have length at least 1")]
    Empty,

    #[error("duplicate value {value} at positions {first} and {second}")]
    Duplicate {
        value: u64,
        first: usize,
        second: usize,
    },

    #[error("not a permutation of 0..{len}: {reason}")]
    NotAPermutation { len: usize, reason: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("no antichain of size {size} exists among length-{n} patterns")]
    NoAntichain { n: usize, size: usize },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset} (only `i` is bound)")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("type mismatch in {field}: expected {expected}, found {found}")]
    TypeMismatch {
        field: &'static str,
        expected: &'static str,
        found: &'static str,
    },

    #[error("missing key `{0}` in program")]
    MissingKey(&'static str),

    #[error("invalid program document: {0}")]
    InvalidDocument(String),

    #[error("arithmetic overflow evaluating `{expr}` at i = {input}")]
    Overflow { expr: String, input: u64 },

    #[error("division by zero evaluating `{expr}` at i = {input}")]
    DivisionByZero { expr: String, input: u64 },

    #[error("cost `{expr}` evaluated to 0 at i = {input}; halting costs must be at least 1")]
    ZeroCost { expr: String, input: u64 },

    #[error("explicit scheduler: {reason} at step {step}")]
    BadChoice { step: usize, reason: String },

    #[error("native prefix has {available} elements, {needed} outputs requested")]
    InsufficientNative { needed: usize, available: usize },

    #[error(
        "insufficient enumeration: program `{program}` emitted {emitted} of {needed} values within {round_cap} rounds"
    )]
    InsufficientEnumeration {
        program: String,
        emitted: usize,
        needed: usize,
        round_cap: u64,
    },
}
