//! A fixed enumeration of the open dyadic intervals `(k/2^m, (k+1)/2^m)`.
//!
//! Depth `m ≥ 0` and integer position `k` are fused into a single natural
//! index by `j = pair(m, zigzag(k))`, where `zigzag` folds ℤ onto ℕ and
//! `pair` is the Cantor pairing function. The enumeration is total and
//! injective, so "the least admissible interval" is well defined by scanning
//! indices upward. Containment is strict on both endpoints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

// ---------------------------------------------------------------------------
// ℤ ↔ ℕ zigzag and the Cantor pairing on machine naturals
// ---------------------------------------------------------------------------

/// Folds ℤ onto ℕ: 0, 1, −1, 2, −2, … ↦ 0, 1, 2, 3, 4, …
///
/// Every `k > i64::MIN` round-trips; `i64::MIN` itself maps to 2⁶⁴, which
/// does not fit the return type and is outside the domain.
pub fn zigzag(k: i64) -> u64 {
    debug_assert!(k != i64::MIN, "zigzag(i64::MIN) overflows u64");
    if k > 0 {
        (k as u64) * 2 - 1
    } else {
        k.unsigned_abs() * 2
    }
}

/// Inverse of [`zigzag`].
pub fn unzigzag(z: u64) -> i64 {
    if z % 2 == 1 {
        ((z + 1) / 2) as i64
    } else {
        -((z / 2) as i64)
    }
}

/// Cantor pairing `(x, y) ↦ (x+y)(x+y+1)/2 + y`, checked against u64 overflow.
pub fn pair(x: u64, y: u64) -> Result<u64> {
    let s = x as u128 + y as u128;
    let j = s * (s + 1) / 2 + y as u128;
    u64::try_from(j).map_err(|_| Error::resource(format!("pair({x}, {y}) exceeds u64")))
}

/// Inverse of [`pair`].
pub fn unpair(j: u64) -> (u64, u64) {
    let j = j as u128;
    let w = (num_integer::Roots::sqrt(&(8 * j + 1)) - 1) / 2;
    let t = w * (w + 1) / 2;
    let y = j - t;
    let x = w - y;
    (x as u64, y as u64)
}

// ---------------------------------------------------------------------------
// dyadic intervals
// ---------------------------------------------------------------------------

/// Open interval `(k/2^m, (k+1)/2^m)` together with its enumeration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    /// Depth `m ≥ 0`; the interval has length `1/2^m`.
    pub depth: u32,
    /// Integer position `k` (may be negative).
    pub pos: i64,
    /// Enumeration index `pair(depth, zigzag(pos))`.
    pub index: u64,
}

/// Builds the interval at `(depth, pos)`, computing its index.
pub fn dyadic_index(depth: u32, pos: i64) -> Result<DyadicInterval> {
    let index = pair(depth as u64, zigzag(pos))?;
    Ok(DyadicInterval { depth, pos, index })
}

impl DyadicInterval {
    /// Recovers the interval from its enumeration index.
    pub fn from_index(index: u64) -> Self {
        let (m, z) = unpair(index);
        DyadicInterval {
            depth: m as u32,
            pos: unzigzag(z),
            index,
        }
    }

    /// Left endpoint `k/2^m` (excluded from the interval).
    pub fn left(&self) -> Rational {
        Rational::from_bigints(BigInt::from(self.pos), BigInt::from(1) << self.depth)
            .expect("power of two is nonzero")
    }

    /// Right endpoint `(k+1)/2^m` (excluded from the interval).
    pub fn right(&self) -> Rational {
        Rational::from_bigints(BigInt::from(self.pos) + 1, BigInt::from(1) << self.depth)
            .expect("power of two is nonzero")
    }

    /// Strict containment: `k/2^m < x < (k+1)/2^m`. Endpoints are outside.
    pub fn contains(&self, x: &Rational) -> bool {
        // Compare k·q < p·2^m < (k+1)·q without building intermediate rationals.
        let scaled = x.numer() << self.depth; // p·2^m
        let lo = BigInt::from(self.pos) * x.denom();
        let hi = (BigInt::from(self.pos) + 1) * x.denom();
        lo < scaled && scaled < hi
    }
}

/// Position of `x` at depth `m`: the `k` with `x ∈ (k/2^m, (k+1)/2^m)`.
///
/// Returns `None` when `x·2^m` is an integer, i.e. `x` sits on the grid at
/// this depth and is interior to no interval.
pub fn position_at_depth(x: &Rational, depth: u32) -> Option<i64> {
    let scaled_num = x.numer() << depth;
    let (q, r) = scaled_num.div_mod_floor(x.denom());
    if r.is_zero() {
        return None;
    }
    i64::try_from(q).ok()
}

/// Deepest dyadic interval containing both `a` and `b`, if any exists.
///
/// Depth-0 intervals have length 1, so two points at distance ≥ 1 have no
/// common interval at all. Points on the dyadic grid stop the chain early.
pub fn hull(a: &Rational, b: &Rational) -> Option<DyadicInterval> {
    if a == b {
        return None; // a hull of a single point is not meaningful here
    }
    let mut best: Option<DyadicInterval> = None;
    let mut depth = 0u32;
    loop {
        match (position_at_depth(a, depth), position_at_depth(b, depth)) {
            (Some(ka), Some(kb)) if ka == kb => {
                best = Some(dyadic_index(depth, ka).ok()?);
            }
            _ => return best,
        }
        // Once the grid is finer than the gap the floors must differ,
        // so this loop always terminates.
        let gap = (a - b).abs();
        let width = Rational::from_bigints(BigInt::from(1), BigInt::from(1) << depth).unwrap();
        if width < gap {
            return best;
        }
        depth += 1;
    }
}
