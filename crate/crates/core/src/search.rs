//! Bounded witness search for the set-level relations.
//!
//! `A <=eo B` holds for sets when *some* listing of `A` and *some* listing of
//! `B` are related. The search space here is restricted to window-`w`
//! explicit reorderings of the first `k` natively enumerated elements of each
//! program. A found witness is a pair of related finite prefixes; exhausting
//! the space refutes only this restricted family.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{self, least_violation, ListingPrefix, OrderPattern};
use crate::vm::{native_prefix, schedule, EnumeratorProgram, Scheduler};

pub const RESTRICTION: &str = "prefix witness only: searched explicit window-w reorderings of the first k natively enumerated elements of each program; exhaustion refutes this family, not the unrestricted relation";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    EoLeq,
    Uniform,
}

impl Relation {
    /// Whether appending position `t` keeps the pair `(a, b)` related, given
    /// that positions `0..t` already are.
    #[inline]
    fn extends(self, a: &[u64], b: &[u64], t: usize) -> bool {
        (0..t).all(|i| {
            let up_a = a[i] < a[t];
            let up_b = b[i] < b[t];
            match self {
                Relation::EoLeq => !up_a || up_b,
                Relation::Uniform => up_a == up_b,
            }
        })
    }

    pub fn holds(self, a: &OrderPattern, b: &OrderPattern) -> Result<bool> {
        match self {
            Relation::EoLeq => pattern::eo_leq(a, b),
            Relation::Uniform => pattern::uniform(a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    WitnessFound,
    SpaceExhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub k: usize,
    pub window: usize,
    pub max_nodes: u64,
    pub round_cap: u64,
}

impl SearchBudget {
    pub fn new(k: usize, window: usize, max_nodes: u64, round_cap: u64) -> Result<Self> {
        let positive = |what: &'static str, v: u64| {
            if v == 0 {
                Err(Error::OutOfRange {
                    what,
                    value: 0,
                    min: 1,
                    max: usize::MAX,
                })
            } else {
                Ok(())
            }
        };
        positive("k", k as u64)?;
        positive("window", window as u64)?;
        positive("max_nodes", max_nodes)?;
        positive("round_cap", round_cap)?;
        Ok(Self {
            k,
            window,
            max_nodes,
            round_cap,
        })
    }
}

/// Outcome of a witness search.
///
/// With [`SearchStatus::WitnessFound`], `witness` is the lexicographically
/// least pair (A-choices, then B-choices). With
/// [`SearchStatus::BudgetExceeded`], `witness` may hold a valid pair found
/// before the budget ran out whose minimality was not established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub status: SearchStatus,
    pub relation: Relation,
    pub k: usize,
    pub window: usize,
    pub witness: Option<(Scheduler, Scheduler)>,
    pub prefixes: Option<(ListingPrefix, ListingPrefix)>,
    pub nodes_explored: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportDoc<'a> {
    status: SearchStatus,
    relation: Relation,
    k: usize,
    w: usize,
    choices_a: Option<&'a [usize]>,
    choices_b: Option<&'a [usize]>,
    prefix_a: Option<&'a ListingPrefix>,
    prefix_b: Option<&'a ListingPrefix>,
    pattern_a: Option<OrderPattern>,
    pattern_b: Option<OrderPattern>,
    nodes_explored: u64,
    restriction: &'static str,
}

impl WitnessReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = ReportDoc {
            status: self.status,
            relation: self.relation,
            k: self.k,
            w: self.window,
            choices_a: self.witness.as_ref().map(|(a, _)| a.choices.as_slice()),
            choices_b: self.witness.as_ref().map(|(_, b)| b.choices.as_slice()),
            prefix_a: self.prefixes.as_ref().map(|(a, _)| a),
            prefix_b: self.prefixes.as_ref().map(|(_, b)| b),
            pattern_a: self.prefixes.as_ref().map(|(a, _)| a.pattern()),
            pattern_b: self.prefixes.as_ref().map(|(_, b)| b.pattern()),
            nodes_explored: self.nodes_explored,
            restriction: RESTRICTION,
        };
        serde_json::to_value(doc).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Replays a witness through the scheduler and re-checks the relation on
/// the resulting patterns.
pub fn verify_witness(
    native_a: &ListingPrefix,
    native_b: &ListingPrefix,
    k: usize,
    relation: Relation,
    witness: &(Scheduler, Scheduler),
) -> Result<bool> {
    let a = schedule(native_a, &witness.0, k)?;
    let b = schedule(native_b, &witness.1, k)?;
    relation.holds(&a.pattern(), &b.pattern())
}

/// Comparison of two native listings on their first `k` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NativeComparison {
    pub k: usize,
    pub prefix_a: ListingPrefix,
    pub prefix_b: ListingPrefix,
    pub pattern_a: OrderPattern,
    pub pattern_b: OrderPattern,
    pub a_leq_b: bool,
    pub b_leq_a: bool,
    pub uniform: bool,
    /// Least pair that is an A-ascent and a B-inversion.
    pub a_leq_b_violation: Option<(usize, usize)>,
    /// Least pair that is a B-ascent and an A-inversion.
    pub b_leq_a_violation: Option<(usize, usize)>,
}

pub fn compare_native(
    a: &EnumeratorProgram,
    b: &EnumeratorProgram,
    k: usize,
    round_cap: u64,
) -> Result<NativeComparison> {
    let prefix_a = native_prefix(a, k, round_cap)?;
    let prefix_b = native_prefix(b, k, round_cap)?;
    let pattern_a = prefix_a.pattern();
    let pattern_b = prefix_b.pattern();
    let a_leq_b_violation = least_violation(&pattern_a, &pattern_b)?;
    let b_leq_a_violation = least_violation(&pattern_b, &pattern_a)?;
    Ok(NativeComparison {
        k,
        uniform: pattern::uniform(&pattern_a, &pattern_b)?,
        a_leq_b: a_leq_b_violation.is_none(),
        b_leq_a: b_leq_a_violation.is_none(),
        a_leq_b_violation,
        b_leq_a_violation,
        prefix_a,
        prefix_b,
        pattern_a,
        pattern_b,
    })
}

/// Searches for listings witnessing `A <=eo B` within the budget.
pub fn search_eo_witness(
    a: &EnumeratorProgram,
    b: &EnumeratorProgram,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    search_programs(a, b, budget, Relation::EoLeq)
}

/// Searches for uniform listings of `A` and `B` within the budget. Since
/// two-sided `eo` reducibility coincides with uniformity on listings, this
/// also serves as the `≈eo` search.
pub fn search_uniform_witness(
    a: &EnumeratorProgram,
    b: &EnumeratorProgram,
    budget: &SearchBudget,
) -> Result<WitnessReport> {
    search_programs(a, b, budget, Relation::Uniform)
}

pub fn search_programs(
    a: &EnumeratorProgram,
    b: &EnumeratorProgram,
    budget: &SearchBudget,
    relation: Relation,
) -> Result<WitnessReport> {
    let native_a = native_prefix(a, budget.k, budget.round_cap)?;
    let native_b = native_prefix(b, budget.k, budget.round_cap)?;
    search_prefixes(
        &native_a,
        &native_b,
        budget.k,
        budget.window,
        budget.max_nodes,
        relation,
    )
}

#[derive(Clone)]
struct Side<'a> {
    native: &'a [u64],
    next: usize,
    buffer: Vec<u64>,
    out: Vec<u64>,
    choices: Vec<usize>,
}

impl<'a> Side<'a> {
    fn new(native: &'a [u64], k: usize) -> Self {
        Self {
            native,
            next: 0,
            buffer: Vec::new(),
            out: Vec::with_capacity(k),
            choices: Vec::with_capacity(k),
        }
    }

    fn refill(&mut self, window: usize) {
        while self.buffer.len() < window && self.next < self.native.len() {
            self.buffer.push(self.native[self.next]);
            self.next += 1;
        }
    }

    fn take(&mut self, choice: usize) {
        let v = self.buffer.remove(choice);
        self.out.push(v);
        self.choices.push(choice);
    }

    fn untake(&mut self) {
        let choice = self.choices.pop().expect("nonempty");
        let v = self.out.pop().expect("nonempty");
        self.buffer.insert(choice, v);
    }
}

struct Search<'a> {
    k: usize,
    window: usize,
    max_nodes: u64,
    relation: Relation,
    nodes: u64,
    out_of_budget: bool,
    best: Option<(Vec<usize>, Vec<usize>)>,
    a: Side<'a>,
    b: Side<'a>,
}

impl Search<'_> {
    fn visit(&mut self, t: usize) {
        if t == self.k {
            let candidate = (self.a.choices.clone(), self.b.choices.clone());
            if self.best.as_ref().is_none_or(|best| candidate < *best) {
                self.best = Some(candidate);
            }
            return;
        }

        // Buffers are refilled before emission; undoing a take restores the
        // buffer contents, so refilled elements stay put on backtrack.
        let saved_a = (self.a.next, self.a.buffer.len());
        let saved_b = (self.b.next, self.b.buffer.len());
        self.a.refill(self.window);
        self.b.refill(self.window);

        'outer: for ca in 0..self.a.buffer.len() {
            if let Some((best_a, _)) = &self.best {
                // Any completion of a larger A-prefix loses to the incumbent.
                if self.a.choices.as_slice() == &best_a[..t] && ca > best_a[t] {
                    break;
                }
                if self.a.choices.as_slice() > &best_a[..t] {
                    break;
                }
            }
            self.a.take(ca);
            for cb in 0..self.b.buffer.len() {
                if self.nodes == self.max_nodes {
                    self.out_of_budget = true;
                    self.a.untake();
                    break 'outer;
                }
                self.nodes += 1;
                self.b.take(cb);
                if self.relation.extends(&self.a.out, &self.b.out, t) {
                    self.visit(t + 1);
                }
                self.b.untake();
                if self.out_of_budget {
                    self.a.untake();
                    break 'outer;
                }
            }
            self.a.untake();
        }

        unrefill(&mut self.a, saved_a);
        unrefill(&mut self.b, saved_b);
    }
}

fn unrefill(side: &mut Side<'_>, (next, len): (usize, usize)) {
    side.buffer.truncate(len);
    side.next = next;
}

/// Pruned depth-first search over joint choice sequences, building both
/// outputs position by position and discarding any partial pair that
/// already violates the relation.
///
/// Only the first `k` elements of each native prefix are used.
pub fn search_prefixes(
    native_a: &ListingPrefix,
    native_b: &ListingPrefix,
    k: usize,
    window: usize,
    max_nodes: u64,
    relation: Relation,
) -> Result<WitnessReport> {
    SearchBudget::new(k, window, max_nodes, 1)?;
    for native in [native_a, native_b] {
        if native.len() < k {
            return Err(Error::InsufficientNative {
                needed: k,
                available: native.len(),
            });
        }
    }
    let head_a = ListingPrefix::new(native_a.as_slice()[..k].to_vec())?;
    let head_b = ListingPrefix::new(native_b.as_slice()[..k].to_vec())?;

    let mut search = Search {
        k,
        window,
        max_nodes,
        relation,
        nodes: 0,
        out_of_budget: false,
        best: None,
        a: Side::new(head_a.as_slice(), k),
        b: Side::new(head_b.as_slice(), k),
    };
    search.visit(0);

    let status = match (&search.best, search.out_of_budget) {
        (_, true) => SearchStatus::BudgetExceeded,
        (Some(_), false) => SearchStatus::WitnessFound,
        (None, false) => SearchStatus::SpaceExhausted,
    };
    let witness = search.best.map(|(ca, cb)| {
        (
            Scheduler::explicit(window, ca),
            Scheduler::explicit(window, cb),
        )
    });
    let prefixes = match &witness {
        Some((sa, sb)) => Some((schedule(&head_a, sa, k)?, schedule(&head_b, sb, k)?)),
        None => None,
    };
    if let Some(w) = &witness {
        debug_assert!(verify_witness(&head_a, &head_b, k, relation, w)?);
    }
    Ok(WitnessReport {
        status,
        relation,
        k,
        window,
        witness,
        prefixes,
        nodes_explored: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prefix(v: &[u64]) -> ListingPrefix {
        ListingPrefix::new(v.to_vec()).unwrap()
    }

    fn program(value: &str, cost: &str) -> EnumeratorProgram {
        EnumeratorProgram::new("p", value, cost, None).unwrap()
    }

    #[test]
    fn identical_natives_give_zero_witness() {
        let n = prefix(&[3, 1, 2, 0]);
        for relation in [Relation::EoLeq, Relation::Uniform] {
            let r = search_prefixes(&n, &n, 4, 2, 10_000, relation).unwrap();
            assert_eq!(r.status, SearchStatus::WitnessFound);
            let (a, b) = r.witness.unwrap();
            assert_eq!(a.choices, vec![0; 4]);
            assert_eq!(b.choices, vec![0; 4]);
        }
    }

    #[test]
    fn window_one_refutes_opposite_orders() {
        let a = prefix(&[0, 1]);
        let b = prefix(&[1, 0]);
        for relation in [Relation::EoLeq, Relation::Uniform] {
            let r = search_prefixes(&a, &b, 2, 1, 100, relation).unwrap();
            assert_eq!(r.status, SearchStatus::SpaceExhausted);
            assert!(r.witness.is_none());
        }
        // the reverse direction holds natively
        let r = search_prefixes(&b, &a, 2, 1, 100, Relation::EoLeq).unwrap();
        assert_eq!(r.status, SearchStatus::WitnessFound);
    }

    #[test]
    fn wide_window_always_succeeds() {
        let a = prefix(&[5, 9, 1, 7]);
        let b = prefix(&[2, 0, 8, 4]);
        for relation in [Relation::EoLeq, Relation::Uniform] {
            let r = search_prefixes(&a, &b, 4, 4, 1_000_000, relation).unwrap();
            assert_eq!(r.status, SearchStatus::WitnessFound);
            let (pa, pb) = r.prefixes.unwrap();
            assert!(relation.holds(&pa.pattern(), &pb.pattern()).unwrap());
        }
    }

    #[test]
    fn budget_is_distinct_from_exhaustion() {
        let a = prefix(&[0, 1, 2, 3, 4, 5]);
        let b = prefix(&[5, 4, 3, 2, 1, 0]);
        let r = search_prefixes(&a, &b, 6, 2, 3, Relation::Uniform).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExceeded);
        assert_eq!(r.nodes_explored, 3);
        let r = search_prefixes(&a, &b, 6, 2, 1_000_000, Relation::Uniform).unwrap();
        assert_eq!(r.status, SearchStatus::SpaceExhausted);
    }

    #[test]
    fn report_json_keys() {
        let n = prefix(&[1, 0]);
        let r = search_prefixes(&n, &n, 2, 1, 10, Relation::EoLeq).unwrap();
        let v = r.to_json_value();
        for key in [
            "status",
            "relation",
            "k",
            "w",
            "choicesA",
            "choicesB",
            "prefixA",
            "prefixB",
            "patternA",
            "patternB",
            "nodesExplored",
            "restriction",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["status"], "witness_found");
        assert_eq!(v["relation"], "eo_leq");
        assert_eq!(v["patternA"], serde_json::json!([1, 0]));
    }

    #[test]
    fn native_comparison_reports_violations() {
        let evens = program("2*i", "1");
        let same = compare_native(&evens, &evens, 5, 100).unwrap();
        assert!(same.uniform && same.a_leq_b && same.b_leq_a);

        // native order 1, 0, 2, 3, ...: input 0 costs 2, everything else 1
        let swapped = program("i", "1 + (1 - i)");
        let cmp = compare_native(&evens, &swapped, 4, 100).unwrap();
        assert_eq!(cmp.pattern_b.ranks(), &[1, 0, 2, 3]);
        assert!(!cmp.a_leq_b);
        assert_eq!(cmp.a_leq_b_violation, Some((0, 1)));
        assert!(cmp.b_leq_a);
        assert!(!cmp.uniform);
    }

    #[test]
    fn truncated_enumeration_is_reported() {
        let slow = program("i", "1000");
        let fast = program("i", "1");
        assert!(matches!(
            compare_native(&fast, &slow, 3, 10),
            Err(Error::InsufficientEnumeration { .. })
        ));
        let budget = SearchBudget::new(3, 2, 100, 10).unwrap();
        assert!(matches!(
            search_eo_witness(&fast, &slow, &budget),
            Err(Error::InsufficientEnumeration { .. })
        ));
    }
}
