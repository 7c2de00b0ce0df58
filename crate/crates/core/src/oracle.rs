//! Brute-force ground truth.
//!
//! Everything here uses the slowest literal form of each definition: the
//! relation is the double loop over `i < j`, transitive reduction goes
//! through explicit reachability, and witness search enumerates the whole
//! choice space. None of it shares relation code with the modules it checks.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pattern::{self, ListingPrefix, OrderPattern};
use crate::poset::PatternPoset;
use crate::search::{Relation, SearchStatus, WitnessReport};
use crate::vm::{native_prefix, EnumeratorProgram, Scheduler};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub params: Value,
    pub checked: u64,
    pub failures: Vec<Counterexample>,
}

impl OracleReport {
    fn new(suite: &str, params: Value) -> Self {
        Self {
            suite: suite.to_string(),
            params,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    fn record(&mut self, ok: bool, inputs: impl FnOnce() -> Value, expected: Value, actual: Value) {
        self.checked += 1;
        if !ok {
            self.failures.push(Counterexample {
                inputs: inputs(),
                expected,
                actual,
            });
        }
    }
}

fn cap(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max,
        });
    }
    Ok(())
}

/// All permutations of `0..n` by recursive insertion of the smallest unused
/// value, which yields lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

/// `f <=eo g`: for all `i < j`, `f(i) < f(j)` implies `g(i) < g(j)`.
fn direct_leq<T: Ord>(f: &[T], g: &[T]) -> bool {
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if f[i] < f[j] && !(g[i] < g[j]) {
                return false;
            }
        }
    }
    true
}

/// `h ~ g`: for all `i, j`, `h(i) < h(j)` iff `g(i) < g(j)`.
fn direct_uniform<T: Ord>(h: &[T], g: &[T]) -> bool {
    for i in 0..h.len() {
        for j in 0..h.len() {
            if (h[i] < h[j]) != (g[i] < g[j]) {
                return false;
            }
        }
    }
    true
}

fn pat(ranks: &[usize]) -> OrderPattern {
    OrderPattern::from_ranks(ranks.to_vec()).expect("oracle permutations are valid")
}

/// Reflexivity, antisymmetry and transitivity of the direct relation.
/// `checked = n! + n!^2 + n!^3`.
pub fn check_preorder_laws(n: usize) -> Result<OracleReport> {
    cap(n, 5)?;
    let perms = permutations(n);
    let mut report = OracleReport::new("preorder", json!({ "n": n }));
    let leq: Vec<Vec<bool>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| direct_leq(p, q)).collect())
        .collect();

    for (a, p) in perms.iter().enumerate() {
        report.record(
            leq[a][a],
            || json!({ "law": "reflexivity", "p": p }),
            json!(true),
            json!(leq[a][a]),
        );
    }
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let ok = !(leq[a][b] && leq[b][a]) || a == b;
            report.record(
                ok,
                || json!({ "law": "antisymmetry", "p": p, "q": q }),
                json!(false),
                json!(true),
            );
        }
    }
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            for (c, r) in perms.iter().enumerate() {
                let ok = !(leq[a][b] && leq[b][c]) || direct_leq(p, r);
                report.record(
                    ok,
                    || json!({ "law": "transitivity", "p": p, "q": q, "r": r }),
                    json!(true),
                    json!(false),
                );
            }
        }
    }
    Ok(report)
}

/// Direct relation versus inversion-set containment and the production
/// `eo_leq`, over all `n!^2` ordered pairs.
pub fn check_inversion_equiv(n: usize) -> Result<OracleReport> {
    cap(n, 6)?;
    let perms = permutations(n);
    let patterns: Vec<OrderPattern> = perms.iter().map(|p| pat(p)).collect();
    let inversions: Vec<pattern::PairSet> = patterns.iter().map(pattern::inversions).collect();
    let mut report = OracleReport::new("inversion", json!({ "n": n }));
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let direct = direct_leq(p, q);
            let contained = inversions[b].is_subset(&inversions[a]);
            let fast = pattern::eo_leq(&patterns[a], &patterns[b])?;
            report.record(
                direct == contained && direct == fast,
                || json!({ "p": p, "q": q }),
                json!({ "direct": direct }),
                json!({ "containment": contained, "eo_leq": fast }),
            );
        }
    }
    Ok(report)
}

/// Number of ordered pairs related by the direct relation.
pub fn count_related(n: usize) -> Result<u64> {
    cap(n, 6)?;
    let perms = permutations(n);
    Ok(perms
        .iter()
        .flat_map(|p| perms.iter().map(move |q| direct_leq(p, q)))
        .filter(|&r| r)
        .count() as u64)
}

/// Two-sided direct relation versus `uniform`, `eo_equiv` and equality.
pub fn check_theorem10(n: usize) -> Result<OracleReport> {
    cap(n, 6)?;
    let perms = permutations(n);
    let patterns: Vec<OrderPattern> = perms.iter().map(|p| pat(p)).collect();
    let mut report = OracleReport::new("theorem10", json!({ "n": n }));
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            let both = direct_leq(p, q) && direct_leq(q, p);
            let biconditional = direct_uniform(p, q);
            let uniform = pattern::uniform(&patterns[a], &patterns[b])?;
            let equiv = pattern::eo_equiv(&patterns[a], &patterns[b])?;
            let equal = p == q;
            report.record(
                both == biconditional && both == uniform && both == equiv && both == equal,
                || json!({ "p": p, "q": q }),
                json!({ "two_sided_direct": both }),
                json!({
                    "biconditional": biconditional,
                    "uniform": uniform,
                    "eo_equiv": equiv,
                    "equal": equal
                }),
            );
        }
    }
    Ok(report)
}

/// For every arrangement `h` of a fixed `n`-element set, `apply_pattern`
/// yields an arrangement of `support` that is uniform with `h`.
pub fn check_theorem3_finite(n: usize, support: &[u64]) -> Result<OracleReport> {
    cap(n, 6)?;
    if support.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: support.len(),
        });
    }
    let mut report = OracleReport::new("theorem3", json!({ "n": n, "support": support }));
    // A = {1, 4, 7, ...}
    let base: Vec<u64> = (0..n as u64).map(|k| 3 * k + 1).collect();
    for perm in permutations(n) {
        let h: Vec<u64> = perm.iter().map(|&k| base[k]).collect();
        let p = pattern::pattern_of(&h)?;
        let g = pattern::apply_pattern(&p, support)?;
        let mut same_set = g.as_slice().to_vec();
        same_set.sort_unstable();
        let mut want = support.to_vec();
        want.sort_unstable();
        let ok = direct_uniform(&h, g.as_slice()) && same_set == want;
        report.record(
            ok,
            || json!({ "h": h }),
            json!("uniform arrangement of support"),
            json!(g.as_slice()),
        );
    }
    Ok(report)
}

/// Poset cover edges versus transitive reduction by explicit reachability,
/// plus the closed-form edge count `(n-1) n! / 2`.
pub fn check_hasse(n: usize) -> Result<OracleReport> {
    cap(n, 5)?;
    let perms = permutations(n);
    let size = perms.len();
    let poset = PatternPoset::build(n)?;
    let mut report = OracleReport::new("hasse", json!({ "n": n }));

    let leq: Vec<Vec<bool>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| direct_leq(p, q)).collect())
        .collect();
    let node_index: Vec<usize> = perms
        .iter()
        .map(|p| poset.index_of(&pat(p)).expect("poset holds every pattern"))
        .collect();

    let mut oracle_edges = 0usize;
    for a in 0..size {
        for b in 0..size {
            let cover = a != b
                && leq[a][b]
                && !(0..size).any(|c| c != a && c != b && leq[a][c] && leq[c][b]);
            oracle_edges += cover as usize;
            let built = poset.is_cover(node_index[a], node_index[b]);
            report.record(
                cover == built,
                || json!({ "p": perms[a], "q": perms[b] }),
                json!({ "cover": cover }),
                json!({ "cover": built }),
            );
        }
    }

    let closed_form = (n - 1) * size / 2;
    report.record(
        oracle_edges == closed_form && poset.hasse().len() == closed_form,
        || json!({ "closed_form": closed_form }),
        json!(closed_form),
        json!({ "oracle": oracle_edges, "poset": poset.hasse().len() }),
    );
    Ok(report)
}

/// Replays an explicit choice sequence; `None` if a choice is out of range.
fn replay(native: &[u64], window: usize, choices: &[usize]) -> Option<Vec<u64>> {
    let mut buffer = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();
    for &c in choices {
        while buffer.len() < window && next < native.len() {
            buffer.push(native[next]);
            next += 1;
        }
        if c >= buffer.len() {
            return None;
        }
        out.push(buffer.remove(c));
    }
    Some(out)
}

/// Choice sequences of length `k` over `0..w`, lexicographic.
fn sequences(k: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..w).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// Unpruned witness search over the full `w^k x w^k` space on prefixes.
/// `nodes_explored` counts joint sequences examined.
pub fn brute_force_prefixes(
    native_a: &ListingPrefix,
    native_b: &ListingPrefix,
    k: usize,
    w: usize,
    relation: Relation,
) -> Result<WitnessReport> {
    if k == 0 || k > 6 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 1,
            max: 6,
        });
    }
    if w == 0 || w > 3 {
        return Err(Error::OutOfRange {
            what: "window",
            value: w,
            min: 1,
            max: 3,
        });
    }
    for native in [native_a, native_b] {
        if native.len() < k {
            return Err(Error::InsufficientNative {
                needed: k,
                available: native.len(),
            });
        }
    }
    let head_a = &native_a.as_slice()[..k];
    let head_b = &native_b.as_slice()[..k];
    let seqs = sequences(k, w);
    let outs_a: Vec<Option<Vec<u64>>> = seqs.iter().map(|s| replay(head_a, w, s)).collect();
    let outs_b: Vec<Option<Vec<u64>>> = seqs.iter().map(|s| replay(head_b, w, s)).collect();

    let mut checked = 0u64;
    for (sa, out_a) in seqs.iter().zip(&outs_a) {
        for (sb, out_b) in seqs.iter().zip(&outs_b) {
            checked += 1;
            let (Some(fa), Some(gb)) = (out_a, out_b) else {
                continue;
            };
            let related = match relation {
                Relation::EoLeq => direct_leq(fa, gb),
                Relation::Uniform => direct_uniform(fa, gb),
            };
            if related {
                return Ok(WitnessReport {
                    status: SearchStatus::WitnessFound,
                    relation,
                    k,
                    window: w,
                    witness: Some((
                        Scheduler::explicit(w, sa.clone()),
                        Scheduler::explicit(w, sb.clone()),
                    )),
                    prefixes: Some((
                        ListingPrefix::new(fa.clone())?,
                        ListingPrefix::new(gb.clone())?,
                    )),
                    nodes_explored: checked,
                });
            }
        }
    }
    Ok(WitnessReport {
        status: SearchStatus::SpaceExhausted,
        relation,
        k,
        window: w,
        witness: None,
        prefixes: None,
        nodes_explored: checked,
    })
}

/// [`brute_force_prefixes`] on the native prefixes of two programs.
pub fn brute_force_witness(
    a: &EnumeratorProgram,
    b: &EnumeratorProgram,
    k: usize,
    w: usize,
    relation: Relation,
    round_cap: u64,
) -> Result<WitnessReport> {
    let native_a = native_prefix(a, k, round_cap)?;
    let native_b = native_prefix(b, k, round_cap)?;
    brute_force_prefixes(&native_a, &native_b, k, w, relation)
}
