//! Injective codes: arbitrary-precision naturals and sequence encoders.
//!
//! The Cantor pairing function extends to `BigUint`, so finite sequences of
//! naturals — and through them finite sequences of rationals — get unique
//! natural codes via length-prefixed iterated pairing:
//!
//! ```text
//! ⟨⟩            ↦ pair(0, 0) = 0
//! ⟨x₁, …, xₙ⟩   ↦ pair(n, pair(x₁, pair(x₂, … pair(xₙ, 0))))
//! ```
//!
//! A rational becomes the triple `(sign, |numerator|, denominator)` packed by
//! two pairings. Every encoder here has an exact decoder, and decoders reject
//! non-canonical representations so that code equality means value equality.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Natural-number code with no size limit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatCode(pub BigUint);

impl NatCode {
    pub fn zero() -> Self {
        NatCode(BigUint::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u64> for NatCode {
    fn from(n: u64) -> Self {
        NatCode(BigUint::from(n))
    }
}

impl fmt::Display for NatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for NatCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatCode({})", self.0)
    }
}

impl serde::Serialize for NatCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for NatCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let n = s
            .parse::<BigUint>()
            .map_err(|_| serde::de::Error::custom(format!("bad natural code `{s}`")))?;
        Ok(NatCode(n))
    }
}

// ---------------------------------------------------------------------------
// Cantor pairing on BigUint
// ---------------------------------------------------------------------------

fn pair_big(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

fn unpair_big(j: &BigUint) -> (BigUint, BigUint) {
    let w = ((j * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = j - t;
    let x = &w - &y;
    (x, y)
}

/// Pairs two codes into one; `pair_codes(0, 0) = 0`.
pub fn pair_codes(a: &NatCode, b: &NatCode) -> NatCode {
    NatCode(pair_big(&a.0, &b.0))
}

/// Inverse of [`pair_codes`]; total on all naturals.
pub fn unpair_codes(j: &NatCode) -> (NatCode, NatCode) {
    let (x, y) = unpair_big(&j.0);
    (NatCode(x), NatCode(y))
}

// ---------------------------------------------------------------------------
// sequences of naturals
// ---------------------------------------------------------------------------

/// Length-prefixed iterated pairing; the empty sequence encodes to 0.
pub fn encode_nat_sequence(items: &[BigUint]) -> NatCode {
    let mut chain = BigUint::zero();
    for item in items.iter().rev() {
        chain = pair_big(item, &chain);
    }
    NatCode(pair_big(&BigUint::from(items.len()), &chain))
}

/// Inverse of [`encode_nat_sequence`].
///
/// Rejects codes whose trailing chain is not exactly zero after the declared
/// length, so distinct canonical sequences cannot decode from one code.
pub fn decode_nat_sequence(code: &NatCode) -> Result<Vec<BigUint>> {
    let (len, mut chain) = unpair_big(&code.0);
    let len = usize::try_from(&len)
        .map_err(|_| Error::resource(format!("sequence length {len} is absurd")))?;
    let mut items = Vec::with_capacity(len);
    for _ in 0..len {
        let (item, rest) = unpair_big(&chain);
        items.push(item);
        chain = rest;
    }
    if !chain.is_zero() {
        return Err(Error::parse(format!(
            "non-canonical sequence code {code}: trailing chain {chain}"
        )));
    }
    Ok(items)
}

// ---------------------------------------------------------------------------
// sequences of rationals
// ---------------------------------------------------------------------------

/// Packs one rational as `pair(sign, pair(|num|, den))` with sign 0 = nonnegative.
fn rational_to_nat(r: &Rational) -> BigUint {
    let sign = if r.is_negative() {
        BigUint::one()
    } else {
        BigUint::zero()
    };
    let num = r.numer().magnitude().clone();
    let den = r.denom().magnitude().clone();
    pair_big(&sign, &pair_big(&num, &den))
}

fn nat_to_rational(n: &BigUint) -> Result<Rational> {
    let (sign, rest) = unpair_big(n);
    let (num, den) = unpair_big(&rest);
    if sign > BigUint::one() {
        return Err(Error::parse(format!("bad sign component {sign} in rational code")));
    }
    if den.is_zero() {
        return Err(Error::parse("zero denominator in rational code".to_string()));
    }
    if sign.is_one() && num.is_zero() {
        return Err(Error::parse("negative zero in rational code".to_string()));
    }
    if num.gcd(&den) != BigUint::one() && !(num.is_zero() && den.is_one()) {
        return Err(Error::parse(format!(
            "rational code {num}/{den} is not in lowest terms"
        )));
    }
    if num.is_zero() && !den.is_one() {
        return Err(Error::parse("non-canonical zero in rational code".to_string()));
    }
    let mut numer = num_bigint::BigInt::from(num);
    if sign.is_one() {
        numer = -numer;
    }
    Rational::from_bigints(numer, num_bigint::BigInt::from(den))
}

/// Injectively encodes an ordered sequence of rationals; `⟨⟩ ↦ 0`.
pub fn encode_rational_string(seq: &[Rational]) -> NatCode {
    let items: Vec<BigUint> = seq.iter().map(rational_to_nat).collect();
    encode_nat_sequence(&items)
}

/// Inverse of [`encode_rational_string`], rejecting non-canonical codes.
pub fn decode_rational_string(code: &NatCode) -> Result<Vec<Rational>> {
    decode_nat_sequence(code)?
        .iter()
        .map(nat_to_rational)
        .collect()
}
