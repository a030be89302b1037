//! Decomposition patterns and difference-coloring searches at desk scale.
//!
//! Three finite engines around one question: in how many ways can an object
//! split into two parts that a coloring cannot tell apart?
//!
//! * The *doubling pattern* ([`decomposition_pattern`]): 2n abstract symbols
//!   y_i^0, y_i^1 arranged so that the full set is a union of two sides in
//!   exactly 2^n − 1 distinct ways — each pair shares the doubled symbols
//!   below a split index and takes complementary branches from there up.  A
//!   vector instantiation realizes every side as an exact rational sum, the
//!   shared prefix at weight 1/2, and all 2^n − 1 pairs then sum to the same
//!   total vector.
//! * *Decomposition counting* ([`max_decompositions`]): against a pluggable
//!   set-coloring oracle, count for every union s the unordered pairs
//!   {x, y} of equally colored sets with x ∪ y = s, and report the union
//!   attaining the most.
//! * *Difference colorings* ([`DifferenceColoring`]): colors on the index
//!   pairs of a short chain, with backtracking search for monochromatic
//!   subchains and an exhaustive scan over every coloring that locates the
//!   boundary where such subchains become unavoidable.
//!
//! Everything here is exhaustively checkable; the resource caps keep each
//! scan within interactive reach.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hamel::VectorQ;
use crate::rational::Rational;

/// Largest pattern size; size n yields 2^n − 1 decompositions.
const MAX_PATTERN_POINTS: u32 = 16;
/// Largest ground size for exhaustive decomposition counting.
const MAX_COUNTING_GROUND: usize = 16;
/// Largest single-part size for decomposition counting.
const MAX_COUNTING_PART: usize = 6;
/// Most points a difference coloring may place on its chain.
const MAX_CHAIN_POINTS: u32 = 20;
/// Most colorings one exhaustive scan may enumerate.
const MAX_SCAN_COLORINGS: u128 = 1 << 24;

// ============================================================================
// Doubling pattern
// ============================================================================

/// One of the 2n abstract pattern points: position `index` (1-based) on
/// branch 0 or branch 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub index: u32,
    pub branch: u8,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y{}^{}", self.index, self.branch)
    }
}

/// The full doubling pattern on 2n symbols: every way of writing the whole
/// symbol set as the union of two sides that agree below a split index and
/// branch complementarily from it upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPattern {
    n: u32,
    points: Vec<Symbol>,
    pairs: Vec<(Vec<Symbol>, Vec<Symbol>)>,
}

/// Builds the size-n pattern and verifies its shape: exactly 2^n − 1
/// decompositions, pairwise distinct as unordered pairs, every union equal
/// to the full 2n-point set.
///
/// Each decomposition is indexed by a split position k in 1..=n and a branch
/// choice for the positions k..=n; both sides carry every doubled symbol
/// below k, and the two sides take complementary branches from k on.  The
/// stored pair puts the side taking branch 0 at the split position first.
pub fn decomposition_pattern(n: u32) -> Result<DecompositionPattern> {
    if !(1..=MAX_PATTERN_POINTS).contains(&n) {
        return Err(Error::resource(format!(
            "pattern size must lie in 1..={MAX_PATTERN_POINTS}, got {n}"
        )));
    }
    let points: Vec<Symbol> = (1..=n)
        .flat_map(|index| [Symbol { index, branch: 0 }, Symbol { index, branch: 1 }])
        .collect();
    let full_mask: u64 = (1 << (2 * n)) - 1;
    let expected = (1usize << n) - 1;
    let mut pairs = Vec::with_capacity(expected);
    let mut seen: HashSet<(u64, u64)> = HashSet::with_capacity(expected);
    for k in 1..=n {
        let tail = n - k + 1;
        for choice in 0..1u64 << (tail - 1) {
            let mut side_a = Vec::with_capacity((n + k - 1) as usize);
            let mut side_b = Vec::with_capacity((n + k - 1) as usize);
            for index in 1..k {
                for branch in [0, 1] {
                    side_a.push(Symbol { index, branch });
                    side_b.push(Symbol { index, branch });
                }
            }
            for index in k..=n {
                let branch = if index == k {
                    0
                } else {
                    (choice >> (index - k - 1) & 1) as u8
                };
                side_a.push(Symbol { index, branch });
                side_b.push(Symbol {
                    index,
                    branch: 1 - branch,
                });
            }
            let mask_a = symbol_mask(&side_a);
            let mask_b = symbol_mask(&side_b);
            if mask_a == mask_b {
                return Err(Error::soundness(format!(
                    "split {k} produced a pair of equal sides"
                )));
            }
            if mask_a | mask_b != full_mask {
                return Err(Error::soundness(format!(
                    "split {k} produced a union smaller than the full set"
                )));
            }
            let key = (mask_a.min(mask_b), mask_a.max(mask_b));
            if !seen.insert(key) {
                return Err(Error::soundness(format!(
                    "decomposition at split {k} repeats an earlier pair"
                )));
            }
            pairs.push((side_a, side_b));
        }
    }
    if pairs.len() != expected {
        return Err(Error::soundness(format!(
            "expected {expected} decompositions, enumerated {}",
            pairs.len()
        )));
    }
    Ok(DecompositionPattern { n, points, pairs })
}

fn symbol_mask(side: &[Symbol]) -> u64 {
    side.iter()
        .map(|s| 1u64 << (2 * (s.index - 1) + s.branch as u32))
        .sum()
}

impl DecompositionPattern {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// All 2n symbols, ascending by (index, branch).
    pub fn points(&self) -> &[Symbol] {
        &self.points
    }

    /// The 2^n − 1 decompositions; each side is sorted ascending.
    pub fn pairs(&self) -> &[(Vec<Symbol>, Vec<Symbol>)] {
        &self.pairs
    }

    /// Realizes the pattern over 2n basis directions: symbol y_i^g becomes
    /// basis vector 2(i−1)+g, a doubled index contributes both branches at
    /// weight 1/2, a single-branch index contributes its branch at weight 1.
    /// Verifies that the two sides of every pair sum exactly to the all-ones
    /// total and that the vector pairs stay pairwise distinct.
    pub fn instantiate_vectors(&self) -> Result<VectorPattern> {
        let dims = 2 * self.n as usize;
        let half = Rational::new(1, 2)?;
        let one = Rational::new(1, 1)?;
        let all_ones: Vec<(usize, Rational)> = (0..dims).map(|i| (i, one.clone())).collect();
        let total = VectorQ::from_pairs(&all_ones)?;
        let mut seen: HashSet<(VectorQ, VectorQ)> = HashSet::with_capacity(self.pairs.len());
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (side_a, side_b) in &self.pairs {
            let va = side_vector(side_a, &half, &one)?;
            let vb = side_vector(side_b, &half, &one)?;
            if va.add(&vb) != total {
                return Err(Error::soundness(format!(
                    "a decomposition of the size-{} pattern missed the total sum",
                    self.n
                )));
            }
            let key = if va <= vb {
                (va.clone(), vb.clone())
            } else {
                (vb.clone(), va.clone())
            };
            if !seen.insert(key) {
                return Err(Error::soundness(
                    "two symbol decompositions collapsed to one vector pair",
                ));
            }
            pairs.push((va, vb));
        }
        Ok(VectorPattern { dims, total, pairs })
    }

    pub fn to_json(&self) -> Value {
        let sides = |side: &[Symbol]| -> Value {
            Value::Array(side.iter().map(|s| Value::String(s.to_string())).collect())
        };
        json!({
            "n": self.n,
            "points": self.points.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "pairs": self
                .pairs
                .iter()
                .map(|(a, b)| Value::Array(vec![sides(a), sides(b)]))
                .collect::<Vec<_>>(),
        })
    }
}

/// The vector-sum form of a doubling pattern: 2^n − 1 distinct pairs of
/// rational vectors, each pair summing exactly to the same total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPattern {
    dims: usize,
    total: VectorQ,
    pairs: Vec<(VectorQ, VectorQ)>,
}

impl VectorPattern {
    /// Number of basis directions (twice the pattern size).
    pub fn dims(&self) -> usize {
        self.dims
    }

    /// The common sum of every pair: all basis directions at weight 1.
    pub fn total(&self) -> &VectorQ {
        &self.total
    }

    pub fn pairs(&self) -> &[(VectorQ, VectorQ)] {
        &self.pairs
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dims": self.dims,
            "pairs": self
                .pairs
                .iter()
                .map(|(a, b)| Value::Array(vec![a.to_json(), b.to_json()]))
                .collect::<Vec<_>>(),
            "total": self.total.to_json(),
        })
    }
}

/// Weights for one decomposition side: an index present on both branches is
/// a doubled prefix member (weight 1/2 each); a lone branch takes weight 1.
fn side_vector(side: &[Symbol], half: &Rational, one: &Rational) -> Result<VectorQ> {
    let mut weights = Vec::with_capacity(side.len());
    let mut at = 0;
    while at < side.len() {
        let doubled = at + 1 < side.len() && side[at + 1].index == side[at].index;
        let width = if doubled { 2 } else { 1 };
        let weight = if doubled { half } else { one };
        for symbol in &side[at..at + width] {
            let basis = 2 * (symbol.index as usize - 1) + symbol.branch as usize;
            weights.push((basis, weight.clone()));
        }
        at += width;
    }
    VectorQ::from_pairs(&weights)
}

// ============================================================================
// Decomposition counting against an oracle
// ============================================================================

/// The union with the most equal-color decompositions, and that count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMax {
    /// Union attaining the maximum; ties resolve to the numerically least
    /// index set.
    pub witness: Vec<usize>,
    /// Unordered pairs {x, y} of distinct equally colored sets with
    /// x ∪ y = witness.
    pub count: u64,
}

/// Counts, for every union s ⊆ 0..n, the unordered pairs {x, y} of distinct
/// subsets with x ∪ y = s, |x| ≤ cap, |y| ≤ cap, and oracle(x) = oracle(y);
/// returns the union attaining the most such pairs.
///
/// The oracle must be pure: every subset is queried exactly once, ascending
/// by bitmask, and the tally assumes repeated answers would agree.
pub fn max_decompositions<O, F>(oracle: F, n: usize, cap: usize) -> Result<DecompositionMax>
where
    O: Eq + Hash,
    F: FnMut(&[usize]) -> O,
{
    let counts = union_counts(oracle, n, cap)?;
    let mut best_mask = 0usize;
    let mut best = 0u64;
    for (mask, &count) in counts.iter().enumerate() {
        if count > best {
            best = count;
            best_mask = mask;
        }
    }
    Ok(DecompositionMax {
        witness: mask_indices(best_mask),
        count: best,
    })
}

/// The same tally as [`max_decompositions`], read off at one specific union
/// (given as strictly increasing indices below n).
pub fn decomposition_count<O, F>(oracle: F, n: usize, cap: usize, union: &[usize]) -> Result<u64>
where
    O: Eq + Hash,
    F: FnMut(&[usize]) -> O,
{
    let mut mask = 0usize;
    for pair in union.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::input(
                "union indices must be strictly increasing".to_string(),
            ));
        }
    }
    for &index in union {
        if index >= n {
            return Err(Error::input(format!(
                "union index {index} is outside the ground 0..{n}"
            )));
        }
        mask |= 1 << index;
    }
    Ok(union_counts(oracle, n, cap)?[mask])
}

/// Full tally: counts[mask of s] = number of unordered equal-color pairs
/// with union s.  Colors are bucketed first so the pair pass never calls
/// the oracle.
fn union_counts<O, F>(mut oracle: F, n: usize, cap: usize) -> Result<Vec<u64>>
where
    O: Eq + Hash,
    F: FnMut(&[usize]) -> O,
{
    if n > MAX_COUNTING_GROUND {
        return Err(Error::resource(format!(
            "ground size {n} is over the exhaustive-count cap {MAX_COUNTING_GROUND}"
        )));
    }
    if cap > MAX_COUNTING_PART {
        return Err(Error::resource(format!(
            "part size {cap} is over the exhaustive-count cap {MAX_COUNTING_PART}"
        )));
    }
    let space = 1usize << n;
    let mut buckets: HashMap<O, Vec<u32>> = HashMap::new();
    let mut indices: Vec<usize> = Vec::with_capacity(cap);
    for mask in 0..space as u32 {
        if (mask.count_ones() as usize) > cap {
            continue;
        }
        indices.clear();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                indices.push(i);
            }
        }
        buckets.entry(oracle(&indices)).or_default().push(mask);
    }
    let mut counts = vec![0u64; space];
    for bucket in buckets.values() {
        for (at, &x) in bucket.iter().enumerate() {
            for &y in &bucket[at + 1..] {
                counts[(x | y) as usize] += 1;
            }
        }
    }
    Ok(counts)
}

fn mask_indices(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|&i| mask >> i & 1 == 1)
        .collect()
}

// ============================================================================
// Difference colorings
// ============================================================================

/// A total coloring of the index pairs {i, j}, i < j < m, with colors
/// 1..=colors — the finite shadow of coloring differences b(j) − b(i) along
/// a chain of m points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceColoring {
    m: u32,
    colors: u32,
    /// Upper triangle, column-major: values[j(j−1)/2 + i] colors {i, j}.
    values: Vec<u32>,
}

impl DifferenceColoring {
    /// Builds a coloring from a pair function, checking every value lies in
    /// 1..=colors.  The chain length is capped so exhaustive scans over all
    /// colorings stay enumerable.
    pub fn new(m: u32, colors: u32, mut pair_color: impl FnMut(u32, u32) -> u32) -> Result<Self> {
        if m > MAX_CHAIN_POINTS {
            return Err(Error::resource(format!(
                "chain length {m} is over the cap {MAX_CHAIN_POINTS}"
            )));
        }
        if colors == 0 {
            return Err(Error::input("a difference coloring needs at least one color"));
        }
        let mut values = Vec::with_capacity((m as usize * (m as usize).saturating_sub(1)) / 2);
        for j in 1..m {
            for i in 0..j {
                let value = pair_color(i, j);
                if !(1..=colors).contains(&value) {
                    return Err(Error::input(format!(
                        "pair ({i}, {j}) got color {value}, outside 1..={colors}"
                    )));
                }
                values.push(value);
            }
        }
        Ok(DifferenceColoring { m, colors, values })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    /// Color of the pair {i, j}; the order of the two indices is free.
    pub fn color(&self, i: u32, j: u32) -> Result<u32> {
        if i == j {
            return Err(Error::input(format!(
                "pair colors need two distinct indices, got {i} twice"
            )));
        }
        if i >= self.m || j >= self.m {
            return Err(Error::input(format!(
                "pair ({i}, {j}) is outside the chain 0..{}",
                self.m
            )));
        }
        Ok(self.raw(i.min(j), j.max(i)))
    }

    fn raw(&self, i: u32, j: u32) -> u32 {
        self.values[(j as usize * (j as usize - 1)) / 2 + i as usize]
    }

    /// Least (lexicographically) strictly increasing chain of the target
    /// length whose pairs all share one color, by backtracking; None when no
    /// such chain exists.
    pub fn find_monochromatic_chain(&self, length: u32) -> Option<Vec<u32>> {
        let mut chain = Vec::with_capacity(length as usize);
        chain_search(self.m, &self.values, length as usize, &mut chain).then_some(chain)
    }

    /// Number of equal-color decompositions a monochromatic chain witnesses
    /// for the span from its first to its last point: the span splits at
    /// every later chain point into two differences of the chain's color
    /// (at the final point, into the span itself), giving length − 1 splits
    /// — a lower bound on the collision count at the span's midpoint.
    pub fn count_sx_from_chain(&self, chain: &[u32]) -> Result<u64> {
        if chain.is_empty() {
            return Err(Error::input("an empty chain witnesses nothing"));
        }
        for pair in chain.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::input(
                    "chain indices must be strictly increasing".to_string(),
                ));
            }
        }
        if chain[chain.len() - 1] >= self.m {
            return Err(Error::input(format!(
                "chain runs past the last index {}",
                self.m.saturating_sub(1)
            )));
        }
        if chain.len() >= 2 {
            let shade = self.raw(chain[0], chain[1]);
            for (at, &i) in chain.iter().enumerate() {
                for &j in &chain[at + 1..] {
                    if self.raw(i, j) != shade {
                        return Err(Error::input(format!(
                            "chain is not monochromatic: pair ({}, {}) has color {}, pair ({i}, {j}) has color {}",
                            chain[0],
                            chain[1],
                            shade,
                            self.raw(i, j)
                        )));
                    }
                }
            }
        }
        Ok(chain.len() as u64 - 1)
    }

    pub fn to_json(&self) -> Value {
        let mut pairs = Vec::with_capacity(self.values.len());
        for i in 0..self.m {
            for j in i + 1..self.m {
                pairs.push(json!([i, j, self.raw(i, j)]));
            }
        }
        json!({
            "colors": self.colors,
            "m": self.m,
            "pairs": pairs,
        })
    }
}

/// Backtracking search shared by the public finder and the exhaustive scan;
/// on success the buffer holds the chain, on failure it is left empty.
fn chain_search(m: u32, values: &[u32], length: usize, chain: &mut Vec<u32>) -> bool {
    chain.clear();
    if length == 0 {
        return true;
    }
    if length > m as usize {
        return false;
    }
    if length == 1 {
        chain.push(0);
        return true;
    }
    for start in 0..m {
        chain.clear();
        chain.push(start);
        if extend_chain(m, values, length, None, chain) {
            return true;
        }
    }
    chain.clear();
    false
}

fn extend_chain(
    m: u32,
    values: &[u32],
    length: usize,
    shade: Option<u32>,
    chain: &mut Vec<u32>,
) -> bool {
    if chain.len() == length {
        return true;
    }
    let last = *chain.last().expect("chain holds its start");
    for next in last + 1..m {
        let lookup =
            |i: u32, j: u32| values[(j as usize * (j as usize - 1)) / 2 + i as usize];
        let wanted = shade.unwrap_or_else(|| lookup(chain[0], next));
        if chain.iter().all(|&member| lookup(member, next) == wanted) {
            chain.push(next);
            if extend_chain(m, values, length, Some(wanted), chain) {
                return true;
            }
            chain.pop();
        }
    }
    false
}

/// Outcome of scanning every coloring of a chain's pairs for monochromatic
/// subchains of one target length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyScan {
    pub m: u32,
    pub colors: u32,
    pub chain: u32,
    /// Colorings enumerated (colors ^ pair count).
    pub colorings: u64,
    /// Colorings with no monochromatic chain of the target length.
    pub without_chain: u64,
    /// First coloring (in enumeration order) lacking such a chain.
    pub counterexample: Option<DifferenceColoring>,
}

impl RamseyScan {
    /// True when every coloring contains a monochromatic chain of the
    /// target length.
    pub fn universal(&self) -> bool {
        self.without_chain == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chain": self.chain,
            "colorings": self.colorings,
            "colors": self.colors,
            "counterexample": match &self.counterexample {
                Some(coloring) => coloring.to_json(),
                None => Value::Null,
            },
            "m": self.m,
            "universal": self.universal(),
            "without-chain": self.without_chain,
        })
    }
}

/// Enumerates every coloring of the pairs of 0..m with the given number of
/// colors and searches each for a monochromatic chain of the target length.
/// Returns the full scan tally plus the first chain-free coloring, if any.
pub fn exhaustive_ramsey(m: u32, colors: u32, chain: u32) -> Result<RamseyScan> {
    if m > MAX_CHAIN_POINTS {
        return Err(Error::resource(format!(
            "chain length {m} is over the cap {MAX_CHAIN_POINTS}"
        )));
    }
    if colors == 0 {
        return Err(Error::input("a difference coloring needs at least one color"));
    }
    let pair_count = (m as usize * (m as usize).saturating_sub(1)) / 2;
    let total = (colors as u128)
        .checked_pow(pair_count as u32)
        .filter(|&t| t <= MAX_SCAN_COLORINGS)
        .ok_or_else(|| {
            Error::resource(format!(
                "{colors}^{pair_count} colorings exceed the scan cap {MAX_SCAN_COLORINGS}"
            ))
        })?;
    let mut values = vec![1u32; pair_count];
    let mut scratch: Vec<u32> = Vec::with_capacity(chain as usize);
    let mut checked = 0u64;
    let mut without_chain = 0u64;
    let mut counterexample = None;
    loop {
        checked += 1;
        if !chain_search(m, &values, chain as usize, &mut scratch) {
            without_chain += 1;
            if counterexample.is_none() {
                counterexample = Some(DifferenceColoring {
                    m,
                    colors,
                    values: values.clone(),
                });
            }
        }
        if !next_assignment(&mut values, colors) {
            break;
        }
    }
    if checked as u128 != total {
        return Err(Error::soundness(format!(
            "scan visited {checked} colorings, expected {total}"
        )));
    }
    Ok(RamseyScan {
        m,
        colors,
        chain,
        colorings: checked,
        without_chain,
        counterexample,
    })
}

/// Advances the little-endian odometer over assignments of 1..=colors;
/// false once every slot has wrapped.
fn next_assignment(values: &mut [u32], colors: u32) -> bool {
    for value in values.iter_mut() {
        if *value < colors {
            *value += 1;
            return true;
        }
        *value = 1;
    }
    false
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_coding::CodingContext;

    #[test]
    fn pattern_counts_and_unions() {
        for n in 1..=10u32 {
            let pattern = decomposition_pattern(n).expect("size within the cap");
            assert_eq!(
                pattern.pairs().len(),
                (1 << n) - 1,
                "size {n} must give 2^{n} - 1 decompositions"
            );
            assert_eq!(pattern.points().len(), 2 * n as usize);
            let full: Vec<Symbol> = pattern.points().to_vec();
            for (a, b) in pattern.pairs() {
                let mut union: Vec<Symbol> = a.iter().chain(b.iter()).copied().collect();
                union.sort();
                union.dedup();
                assert_eq!(union, full, "every union is the whole symbol set");
            }
        }
        assert!(matches!(decomposition_pattern(0), Err(Error::Resource(_))));
        assert!(matches!(decomposition_pattern(17), Err(Error::Resource(_))));
    }

    #[test]
    fn pattern_golden_small() {
        let sym = |index, branch| Symbol { index, branch };
        let pattern = decomposition_pattern(1).expect("size 1");
        assert_eq!(pattern.pairs(), &[(vec![sym(1, 0)], vec![sym(1, 1)])]);

        let pattern = decomposition_pattern(2).expect("size 2");
        assert_eq!(
            pattern.pairs(),
            &[
                (vec![sym(1, 0), sym(2, 0)], vec![sym(1, 1), sym(2, 1)]),
                (vec![sym(1, 0), sym(2, 1)], vec![sym(1, 1), sym(2, 0)]),
                (
                    vec![sym(1, 0), sym(1, 1), sym(2, 0)],
                    vec![sym(1, 0), sym(1, 1), sym(2, 1)]
                ),
            ]
        );
        assert_eq!(
            pattern.to_json().to_string(),
            "{\"n\":2,\"pairs\":[[[\"y1^0\",\"y2^0\"],[\"y1^1\",\"y2^1\"]],\
             [[\"y1^0\",\"y2^1\"],[\"y1^1\",\"y2^0\"]],\
             [[\"y1^0\",\"y1^1\",\"y2^0\"],[\"y1^0\",\"y1^1\",\"y2^1\"]]],\
             \"points\":[\"y1^0\",\"y1^1\",\"y2^0\",\"y2^1\"]}"
        );
    }

    #[test]
    fn vector_form_sums_exactly() {
        for n in 1..=5u32 {
            let vectors = decomposition_pattern(n)
                .expect("size within the cap")
                .instantiate_vectors()
                .expect("instantiation verifies");
            assert_eq!(vectors.dims(), 2 * n as usize);
            assert_eq!(vectors.pairs().len(), (1 << n) - 1);
            for (a, b) in vectors.pairs() {
                assert_eq!(&a.add(b), vectors.total(), "pairs sum to the total");
            }
        }
    }

    #[test]
    fn vector_form_weights_golden() {
        let half = Rational::new(1, 2).unwrap();
        let one = Rational::new(1, 1).unwrap();
        let vectors = decomposition_pattern(2)
            .expect("size 2")
            .instantiate_vectors()
            .expect("instantiation verifies");
        // The split-2 pair shares the doubled first index at weight 1/2.
        let (a, b) = &vectors.pairs()[2];
        let expect_a = VectorQ::from_pairs(&[
            (0, half.clone()),
            (1, half.clone()),
            (2, one.clone()),
        ])
        .unwrap();
        let expect_b =
            VectorQ::from_pairs(&[(0, half.clone()), (1, half), (3, one.clone())]).unwrap();
        assert_eq!(a, &expect_a);
        assert_eq!(b, &expect_b);
        // The split-1 pairs carry whole weights only.
        let (a, b) = &vectors.pairs()[0];
        assert_eq!(
            a,
            &VectorQ::from_pairs(&[(0, one.clone()), (2, one.clone())]).unwrap()
        );
        assert_eq!(b, &VectorQ::from_pairs(&[(1, one.clone()), (3, one)]).unwrap());
    }

    #[test]
    fn counting_matches_hand_enumerations() {
        // Constant oracle, ground 4, parts of size at most 2: the full union
        // {0,1,2,3} splits only into the three disjoint balanced pairs.
        let all_same = |_: &[usize]| 0u8;
        assert_eq!(
            decomposition_count(all_same, 4, 2, &[0, 1, 2, 3]).unwrap(),
            3
        );
        // A three-element union admits overlapping splits as well: 3 with
        // one doubled element and 3 + 3 with a dropped element, 6 in all,
        // which is also the global maximum.
        assert_eq!(decomposition_count(all_same, 4, 2, &[0, 1, 2]).unwrap(), 6);
        let best = max_decompositions(all_same, 4, 2).unwrap();
        assert_eq!(best.witness, vec![0, 1, 2], "ties pick the least mask");
        assert_eq!(best.count, 6);
        // Two-element unions: {x, y} from ∅/{0}/{1}/{0,1} minus equal pairs.
        assert_eq!(decomposition_count(all_same, 4, 2, &[0, 1]).unwrap(), 4);
    }

    #[test]
    fn counting_cardinality_oracle() {
        // Size-as-color: parts pair exactly when their sizes agree.
        let by_size = |s: &[usize]| s.len();
        // Union of 4 from equal sizes ≤ 3: the C(4,2)/2 = 3 disjoint
        // balanced splits plus 6 overlapping 3+3 splits.
        assert_eq!(
            decomposition_count(by_size, 6, 3, &[0, 1, 2, 3]).unwrap(),
            9
        );
        // Degenerate union: {0} only arises from {∅, {0}} or {{0}, {0}},
        // and neither pair has distinct equal-size parts.
        assert_eq!(decomposition_count(by_size, 6, 3, &[0]).unwrap(), 0);
    }

    #[test]
    fn counting_guards() {
        let oracle = |_: &[usize]| 0u8;
        assert!(matches!(
            max_decompositions(oracle, 17, 2),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            max_decompositions(oracle, 4, 7),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            decomposition_count(oracle, 4, 2, &[1, 0]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            decomposition_count(oracle, 4, 2, &[0, 4]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn counting_against_pair_fingerprints() {
        // The pair-coloring fingerprint admits at most one equal-color
        // decomposition per union; singletons all share a fingerprint, so
        // the maximum is exactly one.
        let ctx = CodingContext::build(6).expect("context of size 6");
        let oracle = |s: &[usize]| ctx.type_of(s).expect("indices lie in the context");
        let best = max_decompositions(oracle, 6, 2).unwrap();
        assert_eq!(best.count, 1, "unions split at most one way");
        assert_eq!(best.witness, vec![0, 1], "least union of two singletons");
    }

    #[test]
    fn coloring_construction_and_lookup() {
        let coloring = DifferenceColoring::new(4, 2, |i, j| 1 + (i + j) % 2).unwrap();
        assert_eq!(coloring.m(), 4);
        assert_eq!(coloring.colors(), 2);
        assert_eq!(coloring.color(0, 1).unwrap(), 2);
        assert_eq!(coloring.color(1, 0).unwrap(), 2, "order is free");
        assert_eq!(coloring.color(1, 3).unwrap(), 1);
        assert!(matches!(coloring.color(2, 2), Err(Error::Input(_))));
        assert!(matches!(coloring.color(0, 4), Err(Error::Input(_))));
        assert!(matches!(
            DifferenceColoring::new(3, 2, |_, _| 3),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            DifferenceColoring::new(3, 2, |_, _| 0),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            DifferenceColoring::new(21, 2, |_, _| 1),
            Err(Error::Resource(_))
        ));
        assert_eq!(
            coloring.to_json()["pairs"][0].to_string(),
            "[0,1,2]",
            "pairs list as [i, j, color]"
        );
    }

    #[test]
    fn chain_search_finds_least_chains() {
        let constant = DifferenceColoring::new(6, 2, |_, _| 1).unwrap();
        assert_eq!(constant.find_monochromatic_chain(0), Some(vec![]));
        assert_eq!(constant.find_monochromatic_chain(1), Some(vec![0]));
        assert_eq!(constant.find_monochromatic_chain(3), Some(vec![0, 1, 2]));
        assert_eq!(constant.find_monochromatic_chain(6), Some(vec![0, 1, 2, 3, 4, 5]));
        assert_eq!(constant.find_monochromatic_chain(7), None, "chain longer than m");
    }

    #[test]
    fn pentagon_coloring_has_no_triangle() {
        // Color by cycle adjacency: both color classes are 5-cycles, so no
        // three indices pair monochromatically.
        let pentagon = DifferenceColoring::new(5, 2, |i, j| {
            if j - i == 1 || j - i == 4 {
                1
            } else {
                2
            }
        })
        .unwrap();
        assert_eq!(pentagon.find_monochromatic_chain(3), None);
        assert_eq!(pentagon.find_monochromatic_chain(2), Some(vec![0, 1]));
    }

    #[test]
    fn chain_witness_counts() {
        let constant = DifferenceColoring::new(6, 2, |_, _| 1).unwrap();
        assert_eq!(constant.count_sx_from_chain(&[0, 1, 2]).unwrap(), 2);
        assert_eq!(constant.count_sx_from_chain(&[0, 5]).unwrap(), 1);
        assert_eq!(constant.count_sx_from_chain(&[3]).unwrap(), 0);
        assert!(matches!(
            constant.count_sx_from_chain(&[]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            constant.count_sx_from_chain(&[1, 0]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            constant.count_sx_from_chain(&[0, 6]),
            Err(Error::Input(_))
        ));
        let pentagon = DifferenceColoring::new(5, 2, |i, j| {
            if j - i == 1 || j - i == 4 {
                1
            } else {
                2
            }
        })
        .unwrap();
        assert!(
            matches!(pentagon.count_sx_from_chain(&[0, 1, 2]), Err(Error::Input(_))),
            "mixed-color chains witness nothing"
        );
    }

    #[test]
    fn exhaustive_scan_finds_the_boundary() {
        // Five points leave room to dodge monochromatic triples: exactly the
        // 12 pentagon colorings (5-cycles and their complements) do so.
        let five = exhaustive_ramsey(5, 2, 3).unwrap();
        assert_eq!(five.colorings, 1 << 10);
        assert_eq!(five.without_chain, 12);
        assert!(!five.universal());
        let witness = five.counterexample.as_ref().expect("a chain-free coloring");
        assert_eq!(witness.find_monochromatic_chain(3), None);

        // Six points force a monochromatic triple in every coloring.
        let six = exhaustive_ramsey(6, 2, 3).unwrap();
        assert_eq!(six.colorings, 1 << 15);
        assert_eq!(six.without_chain, 0);
        assert!(six.universal());
        assert!(six.counterexample.is_none());
        assert_eq!(six.to_json()["universal"], Value::Bool(true));
    }

    #[test]
    fn exhaustive_scan_guards() {
        assert!(matches!(exhaustive_ramsey(21, 2, 3), Err(Error::Resource(_))));
        assert!(matches!(exhaustive_ramsey(20, 2, 3), Err(Error::Resource(_))));
        assert!(matches!(exhaustive_ramsey(6, 0, 3), Err(Error::Input(_))));
        let tiny = exhaustive_ramsey(2, 2, 2).unwrap();
        assert_eq!(tiny.colorings, 2);
        assert_eq!(tiny.without_chain, 0, "any pair is its own chain");
    }
}
