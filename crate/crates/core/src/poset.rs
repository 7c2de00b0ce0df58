//! The weak order on all length-`n` order patterns.
//!
//! This is a finite analogue only: each node stands for an `≈eo` class of
//! length-`n` prefixes, not for a class of infinite listings or sets.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{eo_leq, inversions_contained, OrderPattern};

/// Largest pattern length the poset module will materialize.
pub const MAX_N: usize = 8;

pub const ANALOGUE_NOTE: &str =
    "finite-prefix analogue: weak order on length-n order patterns, not classes of r.e. sets";

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_N,
        });
    }
    Ok(())
}

/// All `n!` patterns of length `n`, in lexicographic order.
pub fn all_patterns(n: usize) -> Result<Vec<OrderPattern>> {
    check_n(n)?;
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity((1..=n).product());
    loop {
        out.push(OrderPattern::from_ranks_unchecked(current.clone()));
        if !next_permutation(&mut current) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(len: usize) -> Self {
        Self(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Every length-`n` pattern, the `eo_leq` relation between them, and its
/// cover edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternPoset {
    n: usize,
    nodes: Vec<OrderPattern>,
    // up[a] has bit b set iff nodes[a] <=eo nodes[b].
    up: Vec<BitRow>,
    hasse: Vec<(usize, usize)>,
    top: usize,
    bottom: usize,
}

impl PatternPoset {
    /// Materializes the poset. Relation rows are computed in parallel; the
    /// assembled result does not depend on the thread count.
    pub fn build(n: usize) -> Result<Self> {
        let nodes = all_patterns(n)?;
        let size = nodes.len();
        let up: Vec<BitRow> = nodes
            .par_iter()
            .map(|p| {
                let mut row = BitRow::zeros(size);
                for (b, q) in nodes.iter().enumerate() {
                    if inversions_contained(q.ranks(), p.ranks()) {
                        row.set(b);
                    }
                }
                row
            })
            .collect();

        // Visiting strict upper bounds in a linear extension (descending
        // inversion count), an element is a cover iff no earlier cover
        // already lies below it.
        let inv: Vec<usize> = nodes.iter().map(OrderPattern::inversion_count).collect();
        let mut linear: Vec<usize> = (0..size).collect();
        linear.sort_by(|&a, &b| inv[b].cmp(&inv[a]).then(a.cmp(&b)));

        let mut hasse: Vec<(usize, usize)> = (0..size)
            .into_par_iter()
            .flat_map_iter(|a| {
                let mut reached = BitRow::zeros(size);
                let mut covers = Vec::new();
                for &b in &linear {
                    if b == a || !up[a].get(b) || reached.get(b) {
                        continue;
                    }
                    covers.push((a, b));
                    reached.union_with(&up[b]);
                }
                covers
            })
            .collect();
        hasse.sort_unstable();

        let top = nodes
            .iter()
            .position(OrderPattern::is_identity)
            .expect("identity is a node");
        let bottom = nodes.len() - 1;
        debug_assert_eq!(nodes[bottom], OrderPattern::reversal(n).expect("n >= 1"));
        assert!(
            (0..size).all(|a| up[a].get(top) && up[bottom].get(a)),
            "identity must be the maximum and reversal the minimum"
        );

        Ok(Self {
            n,
            nodes,
            up,
            hasse,
            top,
            bottom,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nodes in lexicographic order.
    pub fn nodes(&self) -> &[OrderPattern] {
        &self.nodes
    }

    /// Cover edges `(lower, upper)` as indices into [`nodes`](Self::nodes),
    /// sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].get(b)
    }

    pub fn index_of(&self, p: &OrderPattern) -> Option<usize> {
        self.nodes.binary_search(p).ok()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Number of ordered pairs `(p, q)` with `p <=eo q`.
    pub fn related_pairs(&self) -> usize {
        self.up
            .iter()
            .map(|row| row.0.iter().map(|w| w.count_ones() as usize).sum::<usize>())
            .sum()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.hasse.binary_search(&(a, b)).is_ok()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "// {ANALOGUE_NOTE}");
        let _ = writeln!(out, "digraph weak_order_n{} {{", self.n);
        for p in &self.nodes {
            let _ = writeln!(out, "  \"{}\";", p.label());
        }
        for &(a, b) in &self.hasse {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\";",
                self.nodes[a].label(),
                self.nodes[b].label()
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            n: usize,
            nodes: &'a [OrderPattern],
            hasse: &'a [(usize, usize)],
        }
        serde_json::to_string(&Doc {
            n: self.n,
            nodes: &self.nodes,
            hasse: &self.hasse,
        })
        .expect("poset serializes")
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// A strictly increasing sequence of patterns under `eo_leq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Chain(Vec<OrderPattern>);

impl Chain {
    pub fn patterns(&self) -> &[OrderPattern] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A maximal chain from `reversal(n)` up to `identity(n)`.
///
/// Each step takes the smallest value `v` such that `v + 1` sits to its left
/// (the leftmost descent of the inverse pattern) and swaps the two. That
/// removes exactly the one inversion between their positions, so the chain
/// has `n(n-1)/2 + 1` patterns and every step is a cover edge.
pub fn max_chain(n: usize) -> Result<Chain> {
    check_n(n)?;
    let mut current = OrderPattern::reversal(n)?;
    let mut chain = vec![current.clone()];
    loop {
        let mut position = vec![0; n];
        for (i, &r) in current.ranks().iter().enumerate() {
            position[r] = i;
        }
        let Some(v) = (0..n.saturating_sub(1)).find(|&v| position[v + 1] < position[v]) else {
            break;
        };
        current = current.swap_positions(position[v + 1], position[v]);
        chain.push(current.clone());
    }
    Ok(Chain(chain))
}

/// A set of pairwise `eo`-incomparable patterns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Antichain(Vec<OrderPattern>);

impl Antichain {
    pub fn patterns(&self) -> &[OrderPattern] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The lexicographically least antichain of `size` patterns of length `n`
/// (compared as index tuples into the lexicographic node order).
///
/// Depth-first over nodes in lexicographic order, extending with any node
/// incomparable to everything chosen so far; returns [`Error::NoAntichain`]
/// only after the whole space is refuted.
pub fn sample_antichain(n: usize, size: usize) -> Result<Antichain> {
    if size < 2 {
        return Err(Error::OutOfRange {
            what: "size",
            value: size,
            min: 2,
            max: usize::MAX,
        });
    }
    let poset = PatternPoset::build(n)?;
    sample_antichain_in(&poset, size)
}

pub fn sample_antichain_in(poset: &PatternPoset, size: usize) -> Result<Antichain> {
    let count = poset.nodes().len();
    let incomparable = |a: usize, b: usize| !poset.leq(a, b) && !poset.leq(b, a);

    fn extend(
        chosen: &mut Vec<usize>,
        candidates: &[usize],
        size: usize,
        incomparable: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if chosen.len() == size {
            return true;
        }
        for (k, &c) in candidates.iter().enumerate() {
            if chosen.len() + (candidates.len() - k) < size {
                return false;
            }
            chosen.push(c);
            let rest: Vec<usize> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&d| incomparable(c, d))
                .collect();
            if extend(chosen, &rest, size, incomparable) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let all: Vec<usize> = (0..count).collect();
    let mut chosen = Vec::with_capacity(size);
    if extend(&mut chosen, &all, size, &incomparable) {
        let patterns = chosen.iter().map(|&k| poset.nodes()[k].clone()).collect();
        Ok(Antichain(patterns))
    } else {
        Err(Error::NoAntichain { n: poset.n(), size })
    }
}

/// Re-checks an antichain through [`eo_leq`] directly.
pub fn verify_antichain(antichain: &Antichain) -> Result<bool> {
    let ps = antichain.patterns();
    for a in 0..ps.len() {
        for b in a + 1..ps.len() {
            if eo_leq(&ps[a], &ps[b])? || eo_leq(&ps[b], &ps[a])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Re-checks that consecutive chain entries are distinct and `eo_leq`-related.
pub fn verify_chain(chain: &Chain) -> Result<bool> {
    for w in chain.patterns().windows(2) {
        if w[0] == w[1] || !eo_leq(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}
