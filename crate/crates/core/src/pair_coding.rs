//! Greedy pair coloring on a finite index universe, order-type fingerprints,
//! and recovery of a two-set decomposition from its union.
//!
//! Each index `α ∈ 0..M` carries a rational surrogate `r_α` that never sits
//! on a dyadic grid point, plus an enumeration of the indices below it. The
//! color `c(β, α)` for `β < α` is the least dyadic-interval index `j` such
//! that, walking α's enumeration in order:
//!
//! 1. `j` exceeds every color already assigned for `α`;
//! 2. `r_β ∈ I_j`;
//! 3. `r_α ∉ I_j`;
//! 4. `r_ξ ∉ I_j` for every `ξ` enumerated before `β`.
//!
//! The fingerprint of a finite index set is its size together with the color
//! matrix of its increasing enumeration; two sets with equal fingerprints
//! look identical to the coloring. The decoder takes a union `A ∪ B` of two
//! fingerprint-equal sets and recovers the pair `{A, B}` by locating the two
//! maxima, splitting off the common part with a color equation, and matching
//! the rest through the deepest dyadic interval containing exactly two of
//! the union's surrogates. A brute-force decomposer over all splits serves
//! as the oracle the decoder is checked against.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use crate::codes::{decode_nat_sequence, encode_nat_sequence, pair_codes, unpair_codes, NatCode};
use crate::dyadic::{self, DyadicInterval};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Depth cutoff for the greedy interval scan. Validated surrogates are
/// isolated from each other well before this; hitting it is a resource
/// error, not a soundness problem.
const MAX_SCAN_DEPTH: u32 = 64;

/// Universe-size cap for the exhaustive union scan (`4^M` work).
const MAX_EXHAUSTIVE_M: usize = 14;

// ---------------------------------------------------------------------------
// contexts
// ---------------------------------------------------------------------------

/// An immutable coloring context: surrogates, per-index enumerations, and
/// the fully computed triangular color table.
#[derive(Debug, Clone)]
pub struct CodingContext {
    m: usize,
    surrogates: Vec<Rational>,
    enum_orders: Vec<Vec<usize>>,
    /// `table[alpha][beta]` = c(beta, alpha), for beta < alpha.
    table: Vec<Vec<u64>>,
}

impl CodingContext {
    /// Standard context of size `M`: surrogates `r_α = α + 1/3` and the
    /// increasing enumeration for every index. Deterministic.
    pub fn build(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("universe size must be at least 1".to_string()));
        }
        let third = Rational::new(1, 3)?;
        let surrogates = (0..m)
            .map(|a| Rational::from_int(a as i64) + &third)
            .collect();
        let enum_orders = (0..m).map(|a| (0..a).collect()).collect();
        Self::with_custom(surrogates, enum_orders)
    }

    /// Context with explicit surrogates and per-index enumeration orders.
    ///
    /// Surrogates must be positive, pairwise distinct, and must not be
    /// dyadic rationals (denominator a power of two) — otherwise some
    /// surrogate sits on a grid point and the greedy scan cannot isolate
    /// it. `enum_orders[α]` must be a permutation of `0..α`.
    pub fn with_custom(surrogates: Vec<Rational>, enum_orders: Vec<Vec<usize>>) -> Result<Self> {
        let m = surrogates.len();
        if m == 0 {
            return Err(Error::input("universe size must be at least 1".to_string()));
        }
        if enum_orders.len() != m {
            return Err(Error::input(format!(
                "expected {m} enumeration orders, got {}",
                enum_orders.len()
            )));
        }
        for (i, r) in surrogates.iter().enumerate() {
            if !r.is_positive() {
                return Err(Error::input(format!("surrogate r_{i} = {r} is not positive")));
            }
            let den = r.denom();
            let odd_part = den >> den.trailing_zeros().unwrap_or(0);
            if odd_part == BigInt::from(1) {
                return Err(Error::input(format!(
                    "surrogate r_{i} = {r} is a dyadic rational and sits on grid points"
                )));
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if surrogates[i] == surrogates[j] {
                    return Err(Error::input(format!(
                        "surrogates r_{i} and r_{j} coincide ({})",
                        surrogates[i]
                    )));
                }
            }
        }
        for (a, order) in enum_orders.iter().enumerate() {
            let mut seen = vec![false; a];
            if order.len() != a {
                return Err(Error::input(format!(
                    "enumeration for {a} must list exactly its {a} predecessors"
                )));
            }
            for &x in order {
                if x >= a || seen[x] {
                    return Err(Error::input(format!(
                        "enumeration for {a} is not a permutation of 0..{a}"
                    )));
                }
                seen[x] = true;
            }
        }

        let mut table: Vec<Vec<u64>> = Vec::with_capacity(m);
        for alpha in 0..m {
            let mut row = vec![0u64; alpha];
            let mut prev: Option<u64> = None;
            for (i, &beta) in enum_orders[alpha].iter().enumerate() {
                let earlier = &enum_orders[alpha][..i];
                let j = least_admissible(
                    &surrogates,
                    beta,
                    alpha,
                    earlier,
                    prev,
                )?;
                row[beta] = j;
                prev = Some(j);
            }
            table.push(row);
        }
        Ok(CodingContext {
            m,
            surrogates,
            enum_orders,
            table,
        })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn surrogate(&self, i: usize) -> Result<&Rational> {
        self.surrogates
            .get(i)
            .ok_or_else(|| Error::input(format!("index {i} outside universe 0..{}", self.m)))
    }

    pub fn enum_order(&self, alpha: usize) -> Result<&[usize]> {
        self.enum_orders
            .get(alpha)
            .map(|v| v.as_slice())
            .ok_or_else(|| Error::input(format!("index {alpha} outside universe 0..{}", self.m)))
    }

    /// The color `c(β, α)`; requires `β < α < M`.
    pub fn color(&self, beta: usize, alpha: usize) -> Result<u64> {
        if alpha >= self.m || beta >= alpha {
            return Err(Error::input(format!(
                "color is defined for β < α < {}; got β = {beta}, α = {alpha}",
                self.m
            )));
        }
        Ok(self.table[alpha][beta])
    }

    // -- structural checks --------------------------------------------------

    /// Re-verifies conditions (1)–(4) for every pair from the raw table.
    pub fn check_conditions(&self) -> Result<()> {
        for alpha in 0..self.m {
            let mut prev: Option<u64> = None;
            for (i, &beta) in self.enum_orders[alpha].iter().enumerate() {
                let j = self.table[alpha][beta];
                if let Some(p) = prev {
                    if j <= p {
                        return Err(Error::soundness(format!(
                            "condition (1): c({beta},{alpha}) = {j} does not exceed \
                             the previous color {p} along {alpha}'s enumeration"
                        )));
                    }
                }
                prev = Some(j);
                let iv = DyadicInterval::from_index(j);
                if !iv.contains(&self.surrogates[beta]) {
                    return Err(Error::soundness(format!(
                        "condition (2): r_{beta} outside interval {j} = c({beta},{alpha})"
                    )));
                }
                if iv.contains(&self.surrogates[alpha]) {
                    return Err(Error::soundness(format!(
                        "condition (3): r_{alpha} inside interval {j} = c({beta},{alpha})"
                    )));
                }
                for &xi in &self.enum_orders[alpha][..i] {
                    if iv.contains(&self.surrogates[xi]) {
                        return Err(Error::soundness(format!(
                            "condition (4): earlier r_{xi} inside interval {j} = c({beta},{alpha})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustively verifies that fingerprint-equal sets overlap in an
    /// initial segment of both, over all sets of size ≤ `max_size`.
    pub fn check_claim1(&self, max_size: usize) -> Result<()> {
        let mut groups: HashMap<TypeCode, Vec<Vec<usize>>> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
        // Enumerate subsets of 0..m of size ≤ max_size.
        for k in 1..=max_size.min(self.m) {
            let mut next = Vec::new();
            for s in &subsets {
                if s.len() == k - 1 {
                    let start = s.last().map_or(0, |&x| x + 1);
                    for x in start..self.m {
                        let mut t = s.clone();
                        t.push(x);
                        next.push(t);
                    }
                }
            }
            subsets.extend(next);
        }
        for s in &subsets {
            let code = self.type_of(s)?;
            groups.entry(code).or_default().push(s.clone());
        }
        for group in groups.values() {
            for i in 0..group.len() {
                for j in (i + 1)..group.len() {
                    let (a, b) = (&group[i], &group[j]);
                    let inter: Vec<usize> = a
                        .iter()
                        .copied()
                        .filter(|x| b.binary_search(x).is_ok())
                        .collect();
                    let initial_in = |s: &[usize]| s[..inter.len()] == inter[..];
                    if !(initial_in(a) && initial_in(b)) {
                        return Err(Error::soundness(format!(
                            "fingerprint-equal sets {a:?} and {b:?} overlap in {inter:?}, \
                             which is not an initial segment of both"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustively verifies the forbidden color-swap pattern: there are no
    /// `β ≠ β′` and `α, α′` with `max(β,β′) < min(α,α′)`,
    /// `c(β,α) = c(β′,α′)`, and `c(β′,α) = c(β,α′)`.
    pub fn check_claim2(&self) -> Result<()> {
        for beta in 0..self.m {
            for beta2 in (beta + 1)..self.m {
                for alpha in (beta2 + 1)..self.m {
                    for alpha2 in alpha..self.m {
                        if self.table[alpha][beta] == self.table[alpha2][beta2]
                            && self.table[alpha][beta2] == self.table[alpha2][beta]
                        {
                            return Err(Error::soundness(format!(
                                "color swap: c({beta},{alpha}) = c({beta2},{alpha2}) \
                                 and c({beta2},{alpha}) = c({beta},{alpha2})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    // -- fingerprints -------------------------------------------------------

    /// Validates an index set: in range, duplicate-free; returns it sorted.
    fn sorted_set(&self, set: &[usize]) -> Result<Vec<usize>> {
        let mut s = set.to_vec();
        s.sort_unstable();
        for w in s.windows(2) {
            if w[0] == w[1] {
                return Err(Error::input(format!("duplicate index {} in set", w[0])));
            }
        }
        if let Some(&max) = s.last() {
            if max >= self.m {
                return Err(Error::input(format!(
                    "index {max} outside universe 0..{}",
                    self.m
                )));
            }
        }
        Ok(s)
    }

    /// Fingerprint of a finite index set: size plus the color matrix of its
    /// increasing enumeration.
    pub fn type_of(&self, set: &[usize]) -> Result<TypeCode> {
        let s = self.sorted_set(set)?;
        let mut pattern = Vec::with_capacity(s.len() * (s.len().saturating_sub(1)) / 2);
        for j in 1..s.len() {
            for i in 0..j {
                pattern.push(self.table[s[j]][s[i]]);
            }
        }
        Ok(TypeCode {
            size: s.len(),
            pattern,
        })
    }

    /// Fingerprint equality without materializing the patterns.
    pub fn f_equal(&self, a: &[usize], b: &[usize]) -> Result<bool> {
        let (a, b) = (self.sorted_set(a)?, self.sorted_set(b)?);
        if a.len() != b.len() {
            return Ok(false);
        }
        for j in 1..a.len() {
            for i in 0..j {
                if self.table[a[j]][a[i]] != self.table[b[j]][b[i]] {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    // -- decomposition ------------------------------------------------------

    /// Pairs of `U` whose surrogates share a dyadic interval containing no
    /// other surrogate of `U`. Laminarity of dyadic intervals makes this
    /// relation a partial matching: no element can belong to two such pairs.
    fn hull_matching(&self, u: &[usize]) -> Result<HashMap<usize, usize>> {
        let mut partner: HashMap<usize, usize> = HashMap::new();
        for (i, &x) in u.iter().enumerate() {
            for &y in &u[(i + 1)..] {
                let Some(h) = dyadic::hull(&self.surrogates[x], &self.surrogates[y]) else {
                    continue;
                };
                let exclusive = u
                    .iter()
                    .all(|&z| z == x || z == y || !h.contains(&self.surrogates[z]));
                if !exclusive {
                    continue;
                }
                if partner.contains_key(&x) || partner.contains_key(&y) {
                    return Err(Error::soundness(format!(
                        "indices {x}, {y} join an exclusive-interval pair but one of \
                         them is already paired; nested intervals forbid this"
                    )));
                }
                partner.insert(x, y);
                partner.insert(y, x);
            }
        }
        Ok(partner)
    }

    /// Recovers the unordered pair `{A, B}` with `A ∪ B = U`, `A ≠ B`, and
    /// equal fingerprints, when one exists.
    ///
    /// Follows the reconstruction procedure: for each candidate second
    /// maximum `m′`, the common part is `X = {x < m′ : c(x,m′) = c(x,m)}`,
    /// the remaining elements are matched into pairs by the exclusive-
    /// interval rule, each pair is oriented (an element above `m′` must sit
    /// on `m`'s side; otherwise the equation `c(x′,m′) = c(x,m)` decides,
    /// and the color-swap impossibility says never both ways), and the
    /// assembled pair is kept only if it verifies as fingerprint-equal.
    /// Two distinct verified decompositions are a soundness error.
    pub fn reconstruct_union(&self, u: &[usize]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        let u = self.sorted_set(u)?;
        if u.len() < 2 {
            return Ok(None);
        }
        let m = *u.last().unwrap();
        let matching = self.hull_matching(&u)?;

        let mut solutions: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        'candidates: for &m2 in u.iter().rev().skip(1) {
            // X by the color equation, then a cheap structural filter: the
            // common part of fingerprint-equal sets is an initial segment,
            // hence downward closed inside U.
            let x_part: Vec<usize> = u
                .iter()
                .copied()
                .filter(|&x| x < m2 && self.table[m2][x] == self.table[m][x])
                .collect();
            if u[..x_part.len()] != x_part[..] {
                continue;
            }
            let rest: Vec<usize> = u
                .iter()
                .copied()
                .filter(|v| !x_part.contains(v) && *v != m && *v != m2)
                .collect();
            if rest.len() % 2 != 0 {
                continue;
            }

            // Match the rest into pairs; every element must have its
            // partner inside `rest`.
            let mut pairs = Vec::new();
            let mut used = BTreeSet::new();
            for &v in &rest {
                if used.contains(&v) {
                    continue;
                }
                let Some(&w) = matching.get(&v) else {
                    continue 'candidates;
                };
                if !rest.contains(&w) {
                    continue 'candidates;
                }
                used.insert(v);
                used.insert(w);
                pairs.push((v.min(w), v.max(w)));
            }

            // Orient each pair: which element joins m's side?
            let mut side_m = vec![m];
            let mut side_m2 = vec![m2];
            for &(lo, hi) in &pairs {
                if hi > m2 {
                    // Above m′ only m's side can reach.
                    side_m.push(hi);
                    side_m2.push(lo);
                    continue;
                }
                let lo_with_m = self.table[m][lo] == self.table[m2][hi];
                let hi_with_m = self.table[m][hi] == self.table[m2][lo];
                match (lo_with_m, hi_with_m) {
                    (true, true) => {
                        return Err(Error::soundness(format!(
                            "pair ({lo},{hi}) orients both ways against maxima \
                             ({m2},{m}); the color-swap pattern forbids this"
                        )));
                    }
                    (true, false) => {
                        side_m.push(lo);
                        side_m2.push(hi);
                    }
                    (false, true) => {
                        side_m.push(hi);
                        side_m2.push(lo);
                    }
                    (false, false) => continue 'candidates,
                }
            }

            let mut a: Vec<usize> = x_part.iter().copied().chain(side_m2).collect();
            let mut b: Vec<usize> = x_part.iter().copied().chain(side_m).collect();
            a.sort_unstable();
            b.sort_unstable();
            if self.f_equal(&a, &b)? {
                let sol = if a <= b { (a, b) } else { (b, a) };
                solutions.insert(sol);
            }
        }

        match solutions.len() {
            0 => Ok(None),
            1 => Ok(solutions.into_iter().next()),
            n => Err(Error::soundness(format!(
                "union admits {n} distinct fingerprint-equal decompositions; \
                 at most one should be reachable"
            ))),
        }
    }

    /// Enumerates every unordered pair `{A, B}` with `A ∪ B = U`, `A ≠ B`,
    /// and equal fingerprints, by brute force over all splits.
    pub fn brute_decompose(&self, u: &[usize]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let u = self.sorted_set(u)?;
        let n = u.len();
        if n > 24 {
            return Err(Error::resource(format!(
                "brute decomposition of a {n}-element union exceeds the 24-element bound"
            )));
        }
        // Local color matrix over U's sorted elements.
        let mut mat = vec![vec![0u64; n]; n];
        for j in 0..n {
            for i in 0..j {
                mat[i][j] = self.table[u[j]][u[i]];
            }
        }
        let full: u32 = (1u32 << n) - 1;
        let mut found = Vec::new();
        let mut positions_a = Vec::with_capacity(n);
        let mut positions_b = Vec::with_capacity(n);
        // diff = A Δ B ranges over nonempty even-size subsets; X = U ∖ diff
        // is forced. Splitting diff in half with the lowest differing
        // element pinned to one side enumerates unordered pairs once.
        for diff in 1u32..=full {
            let k = diff.count_ones();
            if k % 2 != 0 {
                continue;
            }
            let x_mask = full & !diff;
            let low = diff & diff.wrapping_neg();
            let mut d = diff;
            loop {
                // d runs over submasks of diff; keep those holding `low`
                // with exactly half the bits.
                if d & low != 0 && d.count_ones() == k / 2 {
                    let a_mask = x_mask | d;
                    let b_mask = x_mask | (diff & !d);
                    if fingerprints_match(&mat, a_mask, b_mask, &mut positions_a, &mut positions_b)
                    {
                        let a: Vec<usize> =
                            (0..n).filter(|&i| a_mask >> i & 1 == 1).map(|i| u[i]).collect();
                        let b: Vec<usize> =
                            (0..n).filter(|&i| b_mask >> i & 1 == 1).map(|i| u[i]).collect();
                        found.push(if a <= b { (a, b) } else { (b, a) });
                    }
                }
                if d == 0 {
                    break;
                }
                d = (d - 1) & diff;
            }
        }
        found.sort();
        Ok(found)
    }

    // -- serialization ------------------------------------------------------

    /// Canonical JSON: universe size, surrogates, and the color table as
    /// `[β, α, color]` triples ordered by `(α, β)`.
    pub fn to_json(&self) -> Value {
        let mut triples = Vec::new();
        for alpha in 0..self.m {
            for beta in 0..alpha {
                triples.push(json!([beta, alpha, self.table[alpha][beta]]));
            }
        }
        json!({
            "M": self.m,
            "c": triples,
            "r": self.surrogates.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Equal fingerprints from position masks over a shared color matrix; the
/// split construction guarantees equal sizes.
fn fingerprints_match(
    mat: &[Vec<u64>],
    a_mask: u32,
    b_mask: u32,
    positions_a: &mut Vec<usize>,
    positions_b: &mut Vec<usize>,
) -> bool {
    positions_a.clear();
    positions_b.clear();
    let n = mat.len();
    for i in 0..n {
        if a_mask >> i & 1 == 1 {
            positions_a.push(i);
        }
        if b_mask >> i & 1 == 1 {
            positions_b.push(i);
        }
    }
    let k = positions_a.len();
    for j in 1..k {
        for i in 0..j {
            if mat[positions_a[i]][positions_a[j]] != mat[positions_b[i]][positions_b[j]] {
                return false;
            }
        }
    }
    true
}

/// Least admissible interval index for the pair `(beta, alpha)` given the
/// already-excluded earlier indices and the previous color bound.
///
/// Only intervals containing `r_beta` qualify — one per depth — and for
/// positive surrogates their enumeration indices increase strictly with
/// depth, so the shallowest admissible depth carries the least index.
fn least_admissible(
    surrogates: &[Rational],
    beta: usize,
    alpha: usize,
    earlier: &[usize],
    prev: Option<u64>,
) -> Result<u64> {
    let r_beta = &surrogates[beta];
    for depth in 0..=MAX_SCAN_DEPTH {
        let pos = dyadic::position_at_depth(r_beta, depth).ok_or_else(|| {
            Error::input(format!(
                "surrogate r_{beta} sits on the dyadic grid at depth {depth}"
            ))
        })?;
        let iv = dyadic::dyadic_index(depth, pos)?;
        if let Some(p) = prev {
            if iv.index <= p {
                continue;
            }
        }
        if iv.contains(&surrogates[alpha]) {
            continue;
        }
        if earlier.iter().any(|&xi| iv.contains(&surrogates[xi])) {
            continue;
        }
        return Ok(iv.index);
    }
    Err(Error::resource(format!(
        "no admissible interval for pair ({beta},{alpha}) within depth {MAX_SCAN_DEPTH}"
    )))
}

// ---------------------------------------------------------------------------
// fingerprints
// ---------------------------------------------------------------------------

/// Fingerprint of a finite index set: the size and the upper-triangular
/// color matrix read column by column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeCode {
    size: usize,
    pattern: Vec<u64>,
}

impl TypeCode {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pattern(&self) -> &[u64] {
        &self.pattern
    }

    /// Injective encoding of the fingerprint as a single natural number.
    pub fn to_nat_code(&self) -> NatCode {
        let items: Vec<BigUint> = self.pattern.iter().map(|&c| BigUint::from(c)).collect();
        pair_codes(
            &NatCode(BigUint::from(self.size)),
            &encode_nat_sequence(&items),
        )
    }

    /// Inverse of [`TypeCode::to_nat_code`].
    pub fn from_nat_code(code: &NatCode) -> Result<Self> {
        let (size_code, chain) = unpair_codes(code);
        let size = usize::try_from(&size_code.0)
            .map_err(|_| Error::parse("fingerprint size exceeds the address space".to_string()))?;
        let items = decode_nat_sequence(&chain)?;
        if items.len() != size * size.saturating_sub(1) / 2 {
            return Err(Error::parse(format!(
                "fingerprint code lists {} colors; size {size} needs {}",
                items.len(),
                size * size.saturating_sub(1) / 2
            )));
        }
        let mut pattern = Vec::with_capacity(items.len());
        for item in items {
            pattern.push(u64::try_from(&item).map_err(|_| {
                Error::parse("fingerprint color exceeds the 64-bit range".to_string())
            })?);
        }
        Ok(TypeCode { size, pattern })
    }
}

impl fmt::Display for TypeCode {
    /// `"size:c01,c02,c12,…"` — matrix columns in order, empty after the
    /// colon for sizes 0 and 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.size)?;
        for (i, c) in self.pattern.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for TypeCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (size_s, pat_s) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("fingerprint {s:?} lacks a ':'")))?;
        let size: usize = size_s
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad fingerprint size in {s:?}")))?;
        let mut pattern = Vec::new();
        if !pat_s.trim().is_empty() {
            for piece in pat_s.split(',') {
                pattern.push(
                    piece
                        .trim()
                        .parse::<u64>()
                        .map_err(|_| Error::parse(format!("bad color {piece:?} in {s:?}")))?,
                );
            }
        }
        if pattern.len() != size * size.saturating_sub(1) / 2 {
            return Err(Error::parse(format!(
                "fingerprint {s:?} lists {} colors; size {size} needs {}",
                pattern.len(),
                size * size.saturating_sub(1) / 2
            )));
        }
        Ok(TypeCode { size, pattern })
    }
}

// ---------------------------------------------------------------------------
// exhaustive scans
// ---------------------------------------------------------------------------

/// Result of the exhaustive scan over every union in the universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionScanReport {
    pub unions_scanned: u64,
    pub decomposable: u64,
}

/// Scans every `U ⊆ 0..M`: brute-forces its decompositions, asserts there
/// is at most one, and checks the reconstruction procedure returns exactly
/// the brute-force answer. `threads` ≥ 1 splits the subset range.
pub fn scan_all_unions(ctx: &CodingContext, threads: usize) -> Result<UnionScanReport> {
    let m = ctx.size();
    if m > MAX_EXHAUSTIVE_M {
        return Err(Error::resource(format!(
            "exhaustive union scan at M = {m} exceeds the M ≤ {MAX_EXHAUSTIVE_M} bound"
        )));
    }
    if threads == 0 {
        return Err(Error::input("thread count must be at least 1".to_string()));
    }
    let total: u64 = 1u64 << m;
    let threads = threads.min(total as usize);
    let chunk = total.div_ceil(threads as u64);
    let mut results: Vec<Result<u64>> = Vec::with_capacity(threads);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(threads);
        for t in 0..threads {
            let lo = t as u64 * chunk;
            let hi = total.min(lo + chunk);
            handles.push(scope.spawn(move || -> Result<u64> {
                let mut decomposable = 0u64;
                for mask in lo..hi {
                    let u: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                    let brute = ctx.brute_decompose(&u)?;
                    if brute.len() > 1 {
                        return Err(Error::soundness(format!(
                            "union {u:?} admits {} fingerprint-equal decompositions",
                            brute.len()
                        )));
                    }
                    let rebuilt = ctx.reconstruct_union(&u)?;
                    if rebuilt.as_ref() != brute.first() {
                        return Err(Error::soundness(format!(
                            "reconstruction of {u:?} returned {rebuilt:?} but brute \
                             force found {brute:?}"
                        )));
                    }
                    if rebuilt.is_some() {
                        decomposable += 1;
                    }
                }
                Ok(decomposable)
            }));
        }
        for h in handles {
            results.push(h.join().expect("scan worker panicked"));
        }
    });
    let mut decomposable = 0u64;
    for r in results {
        decomposable += r?;
    }
    Ok(UnionScanReport {
        unions_scanned: total,
        decomposable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn smallest_context_golden_color() {
        let ctx = CodingContext::build(2).unwrap();
        // 1/3 lies in the unit interval at index 0 while 4/3 does not, and
        // no earlier constraint interferes, so the scan stops immediately.
        assert_eq!(ctx.color(0, 1).unwrap(), 0);
    }

    #[test]
    fn standard_context_colors_follow_the_closed_form() {
        // For spacing-one surrogates the chosen interval for β ≥ 1 is the
        // unit cell (β, β+1), whose enumeration index is (2β−1)(β+1); for
        // β = 0 it is the index-0 cell. Independent of α.
        let ctx = CodingContext::build(12).unwrap();
        for alpha in 1..12 {
            for beta in 0..alpha {
                let expect = if beta == 0 {
                    0
                } else {
                    (2 * beta as u64 - 1) * (beta as u64 + 1)
                };
                assert_eq!(
                    ctx.color(beta, alpha).unwrap(),
                    expect,
                    "c({beta},{alpha})"
                );
            }
        }
    }

    #[test]
    fn conditions_and_claims_hold_for_the_standard_context() {
        let ctx = CodingContext::build(12).unwrap();
        ctx.check_conditions().unwrap();
        ctx.check_claim2().unwrap();
        ctx.check_claim1(3).unwrap();
    }

    #[test]
    fn context_validation_rejects_bad_inputs() {
        assert!(matches!(CodingContext::build(0), Err(Error::Input(_))));
        // Dyadic surrogate.
        assert!(matches!(
            CodingContext::with_custom(vec![q("1/2")], vec![vec![]]),
            Err(Error::Input(_))
        ));
        // Integer surrogate sits on every grid.
        assert!(matches!(
            CodingContext::with_custom(vec![q("2")], vec![vec![]]),
            Err(Error::Input(_))
        ));
        // Negative surrogate.
        assert!(matches!(
            CodingContext::with_custom(vec![q("-1/3")], vec![vec![]]),
            Err(Error::Input(_))
        ));
        // Duplicate surrogates.
        assert!(matches!(
            CodingContext::with_custom(vec![q("1/3"), q("1/3")], vec![vec![], vec![0]]),
            Err(Error::Input(_))
        ));
        // Bad enumeration.
        assert!(matches!(
            CodingContext::with_custom(vec![q("1/3"), q("4/3")], vec![vec![], vec![1]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn fingerprints_compare_structurally() {
        let ctx = CodingContext::build(12).unwrap();
        assert_eq!(ctx.type_of(&[3]).unwrap(), ctx.type_of(&[7]).unwrap());
        assert_eq!(ctx.type_of(&[]).unwrap().to_string(), "0:");
        assert_eq!(ctx.type_of(&[5]).unwrap().to_string(), "1:");
        // Sets agreeing except at their maxima are indistinguishable.
        assert!(ctx.f_equal(&[0, 1], &[0, 2]).unwrap());
        assert!(ctx.f_equal(&[0, 1, 5], &[0, 1, 9]).unwrap());
        assert!(!ctx.f_equal(&[0, 1, 5], &[0, 2, 5]).unwrap());
        assert!(!ctx.f_equal(&[0, 1], &[0, 1, 2]).unwrap());
        // c01, c02, c12 column order.
        assert_eq!(ctx.type_of(&[0, 1, 2]).unwrap().to_string(), "3:0,0,2");
        assert_eq!(ctx.type_of(&[2, 0, 1]).unwrap().to_string(), "3:0,0,2");
    }

    #[test]
    fn fingerprint_strings_roundtrip_and_encode() {
        let ctx = CodingContext::build(6).unwrap();
        let code = ctx.type_of(&[0, 2, 4]).unwrap();
        let back: TypeCode = code.to_string().parse().unwrap();
        assert_eq!(back, code);
        assert!("3:1,2".parse::<TypeCode>().is_err());
        assert!("x:".parse::<TypeCode>().is_err());
        // Nat encodings separate size from pattern.
        let a = ctx.type_of(&[0, 1]).unwrap().to_nat_code();
        let b = ctx.type_of(&[0]).unwrap().to_nat_code();
        assert_ne!(a, b);
        // ... and decode back to the exact fingerprint.
        assert_eq!(TypeCode::from_nat_code(&code.to_nat_code()).unwrap(), code);
        assert_eq!(
            TypeCode::from_nat_code(&b).unwrap(),
            ctx.type_of(&[0]).unwrap()
        );
    }

    #[test]
    fn set_validation_errors() {
        let ctx = CodingContext::build(4).unwrap();
        assert!(matches!(ctx.type_of(&[1, 1]), Err(Error::Input(_))));
        assert!(matches!(ctx.type_of(&[4]), Err(Error::Input(_))));
        assert!(matches!(ctx.color(2, 2), Err(Error::Input(_))));
        assert!(matches!(ctx.color(1, 7), Err(Error::Input(_))));
    }

    #[test]
    fn reconstruction_trivial_cases() {
        let ctx = CodingContext::build(8).unwrap();
        assert_eq!(ctx.reconstruct_union(&[]).unwrap(), None);
        assert_eq!(ctx.reconstruct_union(&[5]).unwrap(), None);
        assert_eq!(
            ctx.reconstruct_union(&[0, 1]).unwrap(),
            Some((vec![0], vec![1]))
        );
        assert_eq!(
            ctx.reconstruct_union(&[0, 1, 2]).unwrap(),
            Some((vec![0, 1], vec![0, 2]))
        );
        assert_eq!(ctx.brute_decompose(&[0]).unwrap(), Vec::new());
    }

    #[test]
    fn standard_context_unions_split_at_the_two_maxima() {
        let ctx = CodingContext::build(10).unwrap();
        let u = vec![1, 3, 4, 8];
        let got = ctx.reconstruct_union(&u).unwrap().unwrap();
        assert_eq!(got, (vec![1, 3, 4], vec![1, 3, 8]));
        assert_eq!(ctx.brute_decompose(&u).unwrap(), vec![got]);
    }

    #[test]
    fn exhaustive_scan_matches_brute_force_at_small_size() {
        let ctx = CodingContext::build(10).unwrap();
        let report = scan_all_unions(&ctx, 2).unwrap();
        assert_eq!(report.unions_scanned, 1024);
        // Every union with at least two elements decomposes here.
        assert_eq!(report.decomposable, 1024 - 1 - 10);
    }

    #[test]
    fn oversized_requests_are_resource_errors() {
        let ctx = CodingContext::build(4).unwrap();
        let too_big: Vec<usize> = (0..25).collect();
        // Range check trips first unless the universe is big enough; build
        // a matching context to reach the size bound itself.
        assert!(matches!(ctx.brute_decompose(&[0, 1, 2, 3]), Ok(_)));
        let big_ctx = CodingContext::build(26).unwrap();
        assert!(matches!(
            big_ctx.brute_decompose(&too_big),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            scan_all_unions(&CodingContext::build(15).unwrap(), 1),
            Err(Error::Resource(_))
        ));
    }

    /// Surrogates 1/3 and 5/12 share the cell (1/4, 1/2) while 4/3 and 7/3
    /// stay outside it; colors computed by hand for the increasing
    /// enumeration: c(0,1) = 24 (cell (1/4, 3/8)), c(0,2) = 0, and the
    /// exclusion of the earlier 1/3 pushes c(1,2) to 41 (cell (3/8, 1/2));
    /// then c(0,3) = 0, c(1,3) = 41, c(2,3) = 75 (cell (5/4, 3/2)).
    fn tight_context() -> CodingContext {
        CodingContext::with_custom(
            vec![q("1/3"), q("5/12"), q("4/3"), q("7/3")],
            vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn tight_surrogates_hand_computed_colors() {
        let ctx = tight_context();
        ctx.check_conditions().unwrap();
        ctx.check_claim2().unwrap();
        ctx.check_claim1(4).unwrap();
        assert_eq!(ctx.color(0, 1).unwrap(), 24);
        assert_eq!(ctx.color(0, 2).unwrap(), 0);
        assert_eq!(ctx.color(1, 2).unwrap(), 41);
        assert_eq!(ctx.color(0, 3).unwrap(), 0);
        assert_eq!(ctx.color(1, 3).unwrap(), 41);
        assert_eq!(ctx.color(2, 3).unwrap(), 75);
        // Indices 2 and 3 look alike toward {0, 1}, giving exactly one
        // decomposition, recovered without any interval pairing.
        let sol = (vec![0, 1, 2], vec![0, 1, 3]);
        assert_eq!(ctx.brute_decompose(&[0, 1, 2, 3]).unwrap(), vec![sol.clone()]);
        assert_eq!(ctx.reconstruct_union(&[0, 1, 2, 3]).unwrap(), Some(sol));
    }

    /// A reshuffled enumeration for the top index makes the color table
    /// collapse: c(0,1) = 0, c(0,2) = 24, c(1,2) = 75, c(2,3) = 0,
    /// c(0,3) = 24, c(1,3) = 75 (hand-computed). Index 3 then mimics 2 and
    /// {0,1,2,3} decomposes both as {{0,1,2},{0,1,3}} and {{0,1},{2,3}}.
    fn ambiguous_context() -> CodingContext {
        CodingContext::with_custom(
            vec![q("1/3"), q("4/3"), q("5/12"), q("7/3")],
            vec![vec![], vec![0], vec![0, 1], vec![2, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn shuffled_enumeration_can_break_unique_decomposition() {
        let ctx = ambiguous_context();
        ctx.check_conditions().unwrap();
        ctx.check_claim2().unwrap();
        assert_eq!(ctx.color(0, 1).unwrap(), 0);
        assert_eq!(ctx.color(0, 2).unwrap(), 24);
        assert_eq!(ctx.color(1, 2).unwrap(), 75);
        assert_eq!(ctx.color(2, 3).unwrap(), 0);
        assert_eq!(ctx.color(0, 3).unwrap(), 24);
        assert_eq!(ctx.color(1, 3).unwrap(), 75);

        let brute = ctx.brute_decompose(&[0, 1, 2, 3]).unwrap();
        assert_eq!(
            brute,
            vec![
                (vec![0, 1], vec![2, 3]),
                (vec![0, 1, 2], vec![0, 1, 3]),
            ]
        );
        // The reconstruction procedure sees both and refuses to pick.
        assert!(matches!(
            ctx.reconstruct_union(&[0, 1, 2, 3]),
            Err(Error::Soundness(_))
        ));
    }

    #[test]
    fn hull_pairing_recovers_a_split_with_interval_sharing() {
        let ctx = ambiguous_context();
        // {0, 2} share (1/4, 1/2) exclusively; smaller unions stay clean.
        let got = ctx.reconstruct_union(&[0, 2, 3]).unwrap().unwrap();
        assert_eq!(got, (vec![0, 2], vec![0, 3]));
        assert_eq!(ctx.brute_decompose(&[0, 2, 3]).unwrap(), vec![got]);
        assert_eq!(ctx.reconstruct_union(&[0, 1, 2]).unwrap(), None);
        assert_eq!(ctx.brute_decompose(&[0, 1, 2]).unwrap(), Vec::new());
    }

    #[test]
    fn json_export_is_canonical() {
        let ctx = CodingContext::build(3).unwrap();
        let doc = ctx.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"M":3,"c":[[0,1,0],[0,2,0],[1,2,2]],"r":["1/3","4/3","7/3"]}"#
        );
    }
}
