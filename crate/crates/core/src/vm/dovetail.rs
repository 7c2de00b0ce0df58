use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::program::{EnumeratorProgram, Halting};
use crate::error::{Error, Result};
use crate::pattern::ListingPrefix;

/// Result of dovetailing a program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DovetailTrace {
    /// Round in which the run stopped.
    pub rounds: u64,
    /// Distinct values in emission order.
    pub emitted: Vec<u64>,
    /// `sources[t]` is the input whose halting emitted `emitted[t]`.
    pub sources: Vec<u64>,
    pub halted_inputs: BTreeSet<u64>,
    /// Simulated steps: in round `r` every pending input `i <= r` is re-run
    /// for up to `r` steps. Saturates at `u64::MAX`.
    pub steps_charged: u64,
    /// The round cap was hit before `k` values were emitted.
    pub truncated: bool,
}

/// Wire form of a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceExport<'a> {
    pub emitted: &'a [u64],
    pub rounds: u64,
    pub truncated: bool,
}

impl DovetailTrace {
    pub fn prefix(&self) -> Result<ListingPrefix> {
        ListingPrefix::new(self.emitted.clone())
    }

    pub fn export(&self) -> TraceExport<'_> {
        TraceExport {
            emitted: &self.emitted,
            rounds: self.rounds,
            truncated: self.truncated,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.export()).expect("trace serializes")
    }
}

/// Dovetails `program` until `k` distinct values are emitted or `round_cap`
/// rounds have run.
///
/// Round `r` considers inputs `0..=r` in increasing order; input `i` halts
/// in the first round `r >= max(i, 1)` with `cost(i) <= r`. A value already
/// emitted is skipped. Hitting the cap is reported through
/// [`DovetailTrace::truncated`], not as an error.
pub fn dovetail(program: &EnumeratorProgram, k: usize, round_cap: u64) -> Result<DovetailTrace> {
    if k == 0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    if round_cap == 0 {
        return Err(Error::OutOfRange {
            what: "round_cap",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }

    let mut trace = DovetailTrace {
        rounds: 0,
        emitted: Vec::with_capacity(k),
        sources: Vec::with_capacity(k),
        halted_inputs: BTreeSet::new(),
        steps_charged: 0,
        truncated: false,
    };
    let mut seen = BTreeSet::new();
    // halting round -> (input, value, cost), inputs ascending
    let mut scheduled: BTreeMap<u64, Vec<(u64, u64, u64)>> = BTreeMap::new();
    let mut pending_count: u64 = 0;
    let mut divergent: u64 = 0;

    let mut emit = |trace: &mut DovetailTrace, input: u64, value: u64| -> bool {
        trace.halted_inputs.insert(input);
        if seen.insert(value) {
            trace.emitted.push(value);
            trace.sources.push(input);
        }
        trace.emitted.len() == k
    };

    for round in 1..=round_cap {
        trace.rounds = round;

        // Step accounting: pending inputs still running past this round are
        // charged `round`, those halting now are charged their cost.
        let running = pending_count - scheduled.get(&round).map_or(0, |v| v.len() as u64);
        let halting_cost: u64 = scheduled
            .get(&round)
            .map_or(0, |v| v.iter().map(|&(_, _, c)| c).sum());
        trace.steps_charged = trace
            .steps_charged
            .saturating_add((running + divergent).saturating_mul(round))
            .saturating_add(halting_cost);

        if let Some(batch) = scheduled.remove(&round) {
            pending_count -= batch.len() as u64;
            for (input, value, _) in batch {
                if emit(&mut trace, input, value) {
                    return Ok(trace);
                }
            }
        }

        let admitted = if round == 1 { 0..=1 } else { round..=round };
        for input in admitted {
            match program.run(input)? {
                Halting::Diverges => {
                    divergent += 1;
                    trace.steps_charged = trace.steps_charged.saturating_add(round);
                }
                Halting::Halts { value, cost } if cost <= round => {
                    trace.steps_charged = trace.steps_charged.saturating_add(cost);
                    if emit(&mut trace, input, value) {
                        return Ok(trace);
                    }
                }
                Halting::Halts { value, cost } => {
                    trace.steps_charged = trace.steps_charged.saturating_add(round);
                    scheduled
                        .entry(cost)
                        .or_default()
                        .push((input, value, cost));
                    pending_count += 1;
                }
            }
        }
    }

    trace.truncated = true;
    Ok(trace)
}

/// Dovetails and requires a full `k`-prefix.
pub fn native_prefix(
    program: &EnumeratorProgram,
    k: usize,
    round_cap: u64,
) -> Result<ListingPrefix> {
    let trace = dovetail(program, k, round_cap)?;
    if trace.truncated {
        return Err(Error::InsufficientEnumeration {
            program: program.name().to_string(),
            emitted: trace.emitted.len(),
            needed: k,
            round_cap,
        });
    }
    trace.prefix()
}
