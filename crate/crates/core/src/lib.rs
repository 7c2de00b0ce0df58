//! Enumeration-order reducibility on finite listing prefixes.
//!
//! A *listing* of an infinite recursively enumerable set is a computable
//! bijection `N -> A`. Two listings `f`, `g` satisfy `f <=eo g` when every
//! pair of positions `i < j` ordered upward by `f` is also ordered upward by
//! `g`; they are *uniform* when the two orders agree on every pair.
//!
//! Nothing infinite is decidable, so everything here works on finite,
//! equal-length prefixes:
//!
//! * [`pattern`] canonicalizes a prefix to its [`OrderPattern`] and decides
//!   the relations exactly on prefixes.
//! * [`poset`] materializes the weak order on all length-`n` patterns.
//! * [`vm`] is a toy enumerator language with simulated halting costs and a
//!   dovetailer that produces native listings, plus bounded reordering
//!   schedulers that derive alternative listings.
//! * [`search`] looks for witness listings of the set-level relations within
//!   the window-`w` scheduler family.
//! * [`oracle`] holds slow, literal re-implementations used as ground truth.
//!
//! A relation that holds on a prefix is necessary, not sufficient, for the
//! same relation on the full listings.

pub mod error;
pub mod oracle;
pub mod pattern;
pub mod poset;
pub mod search;
pub mod vm;

pub use error::{Error, Result};
pub use pattern::{
    apply_pattern, ascents, eo_equiv, eo_leq, eo_lt, inversions, pattern_of, prefix_restrict,
    uniform, ListingPrefix, OrderPattern, PairSet,
};
pub use poset::{Antichain, Chain, PatternPoset};
pub use search::{Relation, SearchBudget, SearchStatus, WitnessReport};
pub use vm::{DovetailTrace, EnumeratorProgram, Scheduler, SchedulerKind};
