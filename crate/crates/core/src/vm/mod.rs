//! Toy enumerator machine: programs with simulated halting costs, a
//! dovetailer producing native listings, and bounded reordering schedulers.

mod dovetail;
pub mod expr;
mod program;
mod schedule;

pub use dovetail::{dovetail, native_prefix, DovetailTrace, TraceExport};
pub use program::{EnumeratorProgram, Halting};
pub use schedule::{schedule, Scheduler, SchedulerKind};
