//! Order patterns and the prefix-level relations.
//!
//! Every relation in this module is evaluated on finite, equal-length
//! prefixes. Holding on a prefix is necessary but not sufficient for the
//! same relation between the full (infinite) listings.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// An injective, nonempty finite sequence of naturals: the first `n` values
/// of some listing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct ListingPrefix(Vec<u64>);

impl ListingPrefix {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen: HashMap<u64, usize> = HashMap::with_capacity(elements.len());
        for (pos, &value) in elements.iter().enumerate() {
            if let Some(&first) = seen.get(&value) {
                return Err(Error::Duplicate {
                    value,
                    first,
                    second: pos,
                });
            }
            seen.insert(value, pos);
        }
        Ok(Self(elements))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    /// The order pattern of this prefix.
    pub fn pattern(&self) -> OrderPattern {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_unstable_by_key(|&pos| self.0[pos]);
        let mut ranks = vec![0; self.0.len()];
        for (rank, pos) in order.into_iter().enumerate() {
            ranks[pos] = rank;
        }
        OrderPattern(ranks)
    }
}

impl TryFrom<Vec<u64>> for ListingPrefix {
    type Error = Error;

    fn try_from(elements: Vec<u64>) -> Result<Self> {
        Self::new(elements)
    }
}

impl From<ListingPrefix> for Vec<u64> {
    fn from(prefix: ListingPrefix) -> Self {
        prefix.0
    }
}

impl fmt::Display for ListingPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// The relative-order fingerprint of an injective sequence: `ranks[i]` is
/// the rank of the `i`-th element among all elements. Always a permutation
/// of `0..n` with `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct OrderPattern(Vec<usize>);

impl OrderPattern {
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r >= n {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("rank {r} is out of range"),
                });
            }
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::NotAPermutation {
                    len: n,
                    reason: format!("rank {r} appears twice"),
                });
            }
        }
        Ok(Self(ranks))
    }

    /// `ranks` must already be a permutation of `0..ranks.len()`.
    pub(crate) fn from_ranks_unchecked(ranks: Vec<usize>) -> Self {
        debug_assert!(Self::from_ranks(ranks.clone()).is_ok());
        Self(ranks)
    }

    /// `[0, 1, ..., n-1]`, the top of the weak order.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self((0..n).collect()))
    }

    /// `[n-1, ..., 1, 0]`, the bottom of the weak order.
    pub fn reversal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self((0..n).rev().collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn inversion_count(&self) -> usize {
        let n = self.0.len();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.0[i] > self.0[j]).count())
            .sum()
    }

    /// Compact label used by the DOT export, e.g. `102`. Ranks of 10 and
    /// above are separated by dots so labels stay unambiguous.
    pub fn label(&self) -> String {
        if self.0.len() <= 10 {
            self.0.iter().map(|r| r.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub(crate) fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut ranks = self.0.clone();
        ranks.swap(i, j);
        Self(ranks)
    }
}

impl TryFrom<Vec<usize>> for OrderPattern {
    type Error = Error;

    fn try_from(ranks: Vec<usize>) -> Result<Self> {
        Self::from_ranks(ranks)
    }
}

impl From<OrderPattern> for Vec<usize> {
    fn from(p: OrderPattern) -> Self {
        p.0
    }
}

impl fmt::Display for OrderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

fn write_joined<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (k, item) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// A set of index pairs `(i, j)` with `i < j < n`.
///
/// Serializes as a lexicographically sorted JSON array of two-element arrays.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            pairs: BTreeSet::new(),
        }
    }

    /// Inserts `(i, j)`. Panics unless `i < j < n`.
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        assert!(
            i < j && j < self.n,
            "pair ({i}, {j}) outside 0 <= i < j < {}",
            self.n
        );
        self.pairs.insert((i, j))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn context_len(&self) -> usize {
        self.n
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn is_disjoint(&self, other: &PairSet) -> bool {
        self.pairs.is_disjoint(&other.pairs)
    }

    /// Pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// All `n(n-1)/2` pairs.
    pub fn full(n: usize) -> Self {
        let mut set = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                set.pairs.insert((i, j));
            }
        }
        set
    }
}

impl Serialize for PairSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.pairs.iter().map(|&(i, j)| [i, j]))
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

/// Canonicalizes an injective sequence to its order pattern.
pub fn pattern_of(prefix: &[u64]) -> Result<OrderPattern> {
    Ok(ListingPrefix::new(prefix.to_vec())?.pattern())
}

fn pairs_where(p: &OrderPattern, keep: impl Fn(usize, usize) -> bool) -> PairSet {
    let n = p.len();
    let mut set = PairSet::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if keep(p.0[i], p.0[j]) {
                set.pairs.insert((i, j));
            }
        }
    }
    set
}

/// Pairs `i < j` with `p[i] < p[j]`.
pub fn ascents(p: &OrderPattern) -> PairSet {
    pairs_where(p, |a, b| a < b)
}

/// Pairs `i < j` with `p[i] > p[j]`.
pub fn inversions(p: &OrderPattern) -> PairSet {
    pairs_where(p, |a, b| a > b)
}

fn check_lengths(p: &OrderPattern, q: &OrderPattern) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}

/// `p <=eo q` on prefixes: every ascent of `p` is an ascent of `q`.
///
/// Reflexive. Decided through `inversions(q) ⊆ inversions(p)` without
/// materializing either set.
pub fn eo_leq(p: &OrderPattern, q: &OrderPattern) -> Result<bool> {
    check_lengths(p, q)?;
    Ok(inversions_contained(q.ranks(), p.ranks()))
}

/// Whether every inversion of `small` is an inversion of `large`.
#[inline]
pub(crate) fn inversions_contained(small: &[usize], large: &[usize]) -> bool {
    let n = small.len();
    for i in 0..n {
        for j in i + 1..n {
            if small[i] > small[j] && large[i] < large[j] {
                return false;
            }
        }
    }
    true
}

/// Strict form: `p <=eo q` and `p != q`.
pub fn eo_lt(p: &OrderPattern, q: &OrderPattern) -> Result<bool> {
    Ok(eo_leq(p, q)? && p != q)
}

/// Uniformity on prefixes. For injective sequences the pairwise
/// biconditional is exactly pattern equality.
pub fn uniform(p: &OrderPattern, q: &OrderPattern) -> Result<bool> {
    check_lengths(p, q)?;
    Ok(p == q)
}

/// `p <=eo q` and `q <=eo p`.
pub fn eo_equiv(p: &OrderPattern, q: &OrderPattern) -> Result<bool> {
    Ok(eo_leq(p, q)? && eo_leq(q, p)?)
}

/// The unique arrangement of `support` whose pattern is `p`: position `i`
/// carries the element of rank `p[i]` in the sorted support.
pub fn apply_pattern(p: &OrderPattern, support: &[u64]) -> Result<ListingPrefix> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        let value = w[0];
        let first = support.iter().position(|&v| v == value).unwrap_or(0);
        let second = support.iter().rposition(|&v| v == value).unwrap_or(first);
        return Err(Error::Duplicate {
            value,
            first,
            second,
        });
    }
    if sorted.len() != p.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: sorted.len(),
        });
    }
    Ok(ListingPrefix(
        p.ranks().iter().map(|&r| sorted[r]).collect(),
    ))
}

/// The pattern of the first `k` entries of any sequence realizing `p`.
pub fn prefix_restrict(p: &OrderPattern, k: usize) -> Result<OrderPattern> {
    if k == 0 || k > p.len() {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            min: 1,
            max: p.len(),
        });
    }
    let head: Vec<u64> = p.ranks()[..k].iter().map(|&r| r as u64).collect();
    Ok(ListingPrefix(head).pattern())
}

/// The least pair `(i, j)` (lexicographically) that is an ascent of `p` but
/// an inversion of `q`, i.e. the smallest certificate that `p <=eo q` fails.
pub fn least_violation(p: &OrderPattern, q: &OrderPattern) -> Result<Option<(usize, usize)>> {
    check_lengths(p, q)?;
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if p.0[i] < p.0[j] && q.0[i] > q.0[j] {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}
