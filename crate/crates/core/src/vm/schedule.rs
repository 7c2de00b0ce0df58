use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::ListingPrefix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchedulerKind {
    Native,
    MinFirst,
    MaxFirst,
    Explicit,
}

/// A bounded reordering of a native listing.
///
/// The buffer is refilled from the native order up to `window` elements
/// before every emission; one buffered element is then emitted according to
/// `kind`. Buffer positions are counted in arrival order. Once the native
/// order is exhausted the buffer drains under the same policy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scheduler {
    pub kind: SchedulerKind,
    pub window: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub choices: Vec<usize>,
}

impl Scheduler {
    pub fn native() -> Self {
        Self {
            kind: SchedulerKind::Native,
            window: 1,
            choices: Vec::new(),
        }
    }

    pub fn min_first(window: usize) -> Self {
        Self {
            kind: SchedulerKind::MinFirst,
            window,
            choices: Vec::new(),
        }
    }

    pub fn max_first(window: usize) -> Self {
        Self {
            kind: SchedulerKind::MaxFirst,
            window,
            choices: Vec::new(),
        }
    }

    pub fn explicit(window: usize, choices: Vec<usize>) -> Self {
        Self {
            kind: SchedulerKind::Explicit,
            window,
            choices,
        }
    }
}

/// Emits the first `k` elements of `native` reordered by `sched`.
pub fn schedule(native: &ListingPrefix, sched: &Scheduler, k: usize) -> Result<ListingPrefix> {
    if sched.window == 0 {
        return Err(Error::OutOfRange {
            what: "window",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let source = native.as_slice();
    if k == 0 {
        return Err(Error::Empty);
    }
    if k > source.len() {
        return Err(Error::InsufficientNative {
            needed: k,
            available: source.len(),
        });
    }

    let mut buffer: Vec<u64> = Vec::with_capacity(sched.window);
    let mut next = 0;
    let mut out = Vec::with_capacity(k);
    for step in 0..k {
        while buffer.len() < sched.window && next < source.len() {
            buffer.push(source[next]);
            next += 1;
        }
        let pick = match sched.kind {
            SchedulerKind::Native => 0,
            SchedulerKind::MinFirst => argmin(&buffer),
            SchedulerKind::MaxFirst => argmax(&buffer),
            SchedulerKind::Explicit => {
                let Some(&choice) = sched.choices.get(step) else {
                    return Err(Error::BadChoice {
                        step,
                        reason: format!("only {} choices given", sched.choices.len()),
                    });
                };
                if choice >= buffer.len() {
                    return Err(Error::BadChoice {
                        step,
                        reason: format!("choice {choice} outside buffer of size {}", buffer.len()),
                    });
                }
                choice
            }
        };
        out.push(buffer.remove(pick));
    }
    ListingPrefix::new(out)
}

fn argmin(buffer: &[u64]) -> usize {
    (0..buffer.len())
        .min_by_key(|&k| buffer[k])
        .expect("buffer is nonempty")
}

fn argmax(buffer: &[u64]) -> usize {
    (0..buffer.len())
        .max_by_key(|&k| buffer[k])
        .expect("buffer is nonempty")
}
