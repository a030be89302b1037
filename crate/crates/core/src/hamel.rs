//! Vectors over an abstract rational basis, coded by coefficient string plus
//! support fingerprint.
//!
//! A vector is a finite map from basis indices to nonzero rational
//! coefficients.  Its code pairs the coefficient string (in increasing index
//! order) with the fingerprint of its support under a [`CodingContext`], so two
//! vectors share a code exactly when their strings match and their supports are
//! fingerprint-equal.  From a sum s = x + y of such a pair, the support
//! splitting recovered by the context pins down x and y again: shared indices
//! carry doubled coefficients, disjoint tails carry the originals.  Scanning a
//! finite window of vectors then certifies that no sum admits more than one
//! coded pair.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::codes::{
    decode_rational_string, encode_rational_string, pair_codes, unpair_codes, NatCode,
};
use crate::error::{Error, Result};
use crate::pair_coding::{CodingContext, TypeCode};
use crate::rational::Rational;

// Hard cap on generated window sizes; everything here is meant to run at desk
// scale and a runaway cartesian product should fail fast instead of thrashing.
const MAX_WINDOW: usize = 1_000_000;

// ============================================================================
// Vectors
// ============================================================================

/// A finite rational linear combination of abstract basis elements b_0, b_1, …
///
/// Zero coefficients are never stored, so map equality is vector equality and
/// the key set is exactly the support.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VectorQ {
    coefficients: BTreeMap<usize, Rational>,
}

impl VectorQ {
    /// The zero vector (empty support).
    pub fn zero() -> Self {
        VectorQ::default()
    }

    /// The basis vector b_index.
    pub fn basis(index: usize) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(index, Rational::from_int(1));
        VectorQ { coefficients }
    }

    /// Builds a vector from (index, coefficient) pairs.  Zero coefficients are
    /// dropped; a repeated index is an input error.
    pub fn from_pairs(pairs: &[(usize, Rational)]) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for (index, coefficient) in pairs {
            if coefficient.is_zero() {
                continue;
            }
            if coefficients.insert(*index, coefficient.clone()).is_some() {
                return Err(Error::input(format!(
                    "index {index} listed twice in vector constructor"
                )));
            }
        }
        Ok(VectorQ { coefficients })
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Basis indices with nonzero coefficient, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.coefficients.keys().copied().collect()
    }

    /// The coefficient at `index`, if nonzero.
    pub fn coefficient(&self, index: usize) -> Option<&Rational> {
        self.coefficients.get(&index)
    }

    /// (index, coefficient) pairs in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coefficients.iter().map(|(i, c)| (*i, c))
    }

    /// The coefficient string ⟨λ_1, …, λ_n⟩ in increasing support order.
    pub fn coefficient_string(&self) -> Vec<Rational> {
        self.coefficients.values().cloned().collect()
    }

    /// Exact sum; cancellations shrink the support.
    pub fn add(&self, other: &VectorQ) -> VectorQ {
        let mut coefficients = self.coefficients.clone();
        for (index, coefficient) in &other.coefficients {
            let merged = match coefficients.get(index) {
                Some(existing) => existing + coefficient,
                None => coefficient.clone(),
            };
            if merged.is_zero() {
                coefficients.remove(index);
            } else {
                coefficients.insert(*index, merged);
            }
        }
        VectorQ { coefficients }
    }

    /// Exact negation.
    pub fn neg(&self) -> VectorQ {
        VectorQ {
            coefficients: self
                .coefficients
                .iter()
                .map(|(i, c)| (*i, -c))
                .collect(),
        }
    }

    /// Exact scalar multiple; scaling by zero yields the zero vector.
    pub fn scale(&self, by: &Rational) -> VectorQ {
        if by.is_zero() {
            return VectorQ::zero();
        }
        VectorQ {
            coefficients: self
                .coefficients
                .iter()
                .map(|(i, c)| (*i, c * by))
                .collect(),
        }
    }

    /// JSON object mapping decimal index keys to "p/q" coefficient strings.
    pub fn to_json(&self) -> Value {
        let mut object = Map::new();
        for (index, coefficient) in &self.coefficients {
            object.insert(index.to_string(), json!(coefficient.to_string()));
        }
        Value::Object(object)
    }

    /// Parses the [`VectorQ::to_json`] shape.  Zero coefficients are dropped.
    pub fn from_json(value: &Value) -> Result<Self> {
        let object = value
            .as_object()
            .ok_or_else(|| Error::parse("vector JSON must be an object".to_string()))?;
        let mut pairs = Vec::with_capacity(object.len());
        for (key, entry) in object {
            let index: usize = key.parse().map_err(|_| {
                Error::parse(format!("vector JSON key {key:?} is not a basis index"))
            })?;
            let text = entry.as_str().ok_or_else(|| {
                Error::parse(format!("coefficient for index {index} must be a string"))
            })?;
            let coefficient: Rational = text.parse()?;
            pairs.push((index, coefficient));
        }
        VectorQ::from_pairs(&pairs)
    }
}

impl fmt::Display for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (index, coefficient) in &self.coefficients {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coefficient.is_negative() || !coefficient.is_integer() {
                write!(f, "({coefficient})*b{index}")?;
            } else {
                write!(f, "{coefficient}*b{index}")?;
            }
        }
        Ok(())
    }
}

// ============================================================================
// Codes
// ============================================================================

/// The code of a vector under a [`CodingContext`].
///
/// A nonzero vector is coded by pairing its coefficient-string code with the
/// nat encoding of its support fingerprint; the zero vector keeps a reserved
/// code distinct from every paired value (the pairing is onto the naturals, so
/// the reservation lives in the type rather than in a spare number).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VectorCode {
    /// Reserved code of the zero vector.
    Zero,
    /// pair_codes(string code, fingerprint code) of a nonzero vector.
    Coded(NatCode),
}

impl VectorCode {
    /// Decodes a nonzero-vector code back into its coefficient string and
    /// support fingerprint; the zero code decodes to `None`.
    pub fn decode(&self) -> Result<Option<(Vec<Rational>, TypeCode)>> {
        match self {
            VectorCode::Zero => Ok(None),
            VectorCode::Coded(code) => {
                let (string_code, type_code) = unpair_codes(code);
                let string = decode_rational_string(&string_code)?;
                let fingerprint = TypeCode::from_nat_code(&type_code)?;
                if string.len() != fingerprint.size() {
                    return Err(Error::soundness(format!(
                        "vector code mixes a {}-term string with a size-{} fingerprint",
                        string.len(),
                        fingerprint.size()
                    )));
                }
                Ok(Some((string, fingerprint)))
            }
        }
    }
}

impl fmt::Display for VectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorCode::Zero => write!(f, "zero"),
            VectorCode::Coded(code) => write!(f, "{}", code.0),
        }
    }
}

/// Codes `x` under `ctx`: the coefficient string in increasing support order,
/// paired with the fingerprint of the support.  Two vectors collide exactly
/// when their strings are identical and their supports are fingerprint-equal.
pub fn f_code(x: &VectorQ, ctx: &CodingContext) -> Result<VectorCode> {
    if x.is_zero() {
        return Ok(VectorCode::Zero);
    }
    let support = x.support();
    let top = *support.last().expect("nonzero vector has support");
    if top >= ctx.size() {
        return Err(Error::domain(format!(
            "support index {top} outside the context range 0..{}",
            ctx.size()
        )));
    }
    let string_code = encode_rational_string(&x.coefficient_string());
    let type_code = ctx.type_of(&support)?.to_nat_code();
    Ok(VectorCode::Coded(pair_codes(&string_code, &type_code)))
}

/// Recovers the unordered pair {x, y} with x ≠ y, equal codes, and x + y = s,
/// when one exists.
///
/// The support of such a sum is supp(x) ∪ supp(y) exactly: shared indices carry
/// doubled coefficients 2λ_i ≠ 0 and the disjoint tails carry the original
/// λ_i ≠ 0, so nothing cancels.  Splitting the support back into the two
/// fingerprint-equal halves is the context's union reconstruction; halving the
/// shared coefficients and checking the tails agree finishes the job.
pub fn recover_pair(s: &VectorQ, ctx: &CodingContext) -> Result<Option<(VectorQ, VectorQ)>> {
    if s.is_zero() {
        // x = -y makes the strings ⟨λ_i⟩ and ⟨-λ_i⟩ differ for any nonzero x.
        return Ok(None);
    }
    let support = s.support();
    if *support.last().expect("nonzero vector has support") >= ctx.size() {
        // No vector with support inside the context can contribute to s.
        return Ok(None);
    }
    let Some((side_a, side_b)) = ctx.reconstruct_union(&support)? else {
        return Ok(None);
    };
    if side_a.len() != side_b.len() {
        return Err(Error::soundness(format!(
            "fingerprint-equal supports of sizes {} and {}",
            side_a.len(),
            side_b.len()
        )));
    }
    let shared = side_a
        .iter()
        .zip(&side_b)
        .take_while(|(a, b)| a == b)
        .count();
    let mut pairs_a = Vec::with_capacity(side_a.len());
    let mut pairs_b = Vec::with_capacity(side_b.len());
    for (i, (&alpha, &beta)) in side_a.iter().zip(&side_b).enumerate() {
        let lambda = if i < shared {
            // Shared index: s carries 2λ_i.
            s.coefficient(alpha)
                .expect("reconstructed index lies in supp(s)")
                .half()
        } else {
            // Disjoint tails: both must carry the same λ_i for the strings to
            // match; otherwise no coded pair sums to s.
            let on_a = s
                .coefficient(alpha)
                .expect("reconstructed index lies in supp(s)");
            let on_b = s
                .coefficient(beta)
                .expect("reconstructed index lies in supp(s)");
            if on_a != on_b {
                return Ok(None);
            }
            on_a.clone()
        };
        pairs_a.push((alpha, lambda.clone()));
        pairs_b.push((beta, lambda));
    }
    let x = VectorQ::from_pairs(&pairs_a)?;
    let y = VectorQ::from_pairs(&pairs_b)?;
    // The construction guarantees all three properties; check them anyway so a
    // bug upstream surfaces as a loud failure instead of a wrong witness.
    if x == y || x.add(&y) != *s || f_code(&x, ctx)? != f_code(&y, ctx)? {
        return Err(Error::soundness(format!(
            "recovered pair fails its defining equations for s = {s}"
        )));
    }
    Ok(Some((x, y)))
}

// ============================================================================
// Window scans
// ============================================================================

/// One sum realized by at least one code-equal pair from the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumWitness {
    /// The common sum u + v.
    pub sum: VectorQ,
    /// All unordered code-equal pairs from the window with that sum.
    pub pairs: Vec<(VectorQ, VectorQ)>,
}

/// Result of scanning a window for code-equal pairs with equal sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumCollisionReport {
    /// Largest number of code-equal pairs sharing one sum (0 for no pair).
    pub max: usize,
    /// Every sum realized by at least one code-equal pair, in sum order.
    pub witnesses: Vec<SumWitness>,
}

impl SumCollisionReport {
    /// JSON shape: {"max": …, "sums": [{"count": …, "pairs": …, "sum": …}]}.
    pub fn to_json(&self) -> Value {
        let sums: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                let pairs: Vec<Value> = w
                    .pairs
                    .iter()
                    .map(|(x, y)| json!([x.to_json(), y.to_json()]))
                    .collect();
                json!({
                    "count": w.pairs.len(),
                    "pairs": pairs,
                    "sum": w.sum.to_json(),
                })
            })
            .collect();
        json!({ "max": self.max, "sums": sums })
    }
}

/// Counts, for every sum s of two distinct window vectors, the unordered pairs
/// {u, v} with u ≠ v, u + v = s, and equal codes; reports the maximum count
/// over all sums.  The coding construction predicts a maximum of at most 1.
///
/// Pairs with u + v = 2x probe the symmetry set of x: each code-equal pair
/// {x - h, x + h} is one offending h, so the maximum bounds every |S_x| the
/// window can exhibit.
pub fn verify_thm3(window: &[VectorQ], ctx: &CodingContext) -> Result<SumCollisionReport> {
    let mut seen = std::collections::HashSet::new();
    for vector in window {
        if !seen.insert(vector) {
            return Err(Error::input(format!(
                "window lists the vector {vector} twice"
            )));
        }
    }
    let codes: Vec<VectorCode> = window
        .iter()
        .map(|v| f_code(v, ctx))
        .collect::<Result<_>>()?;
    let mut by_sum: BTreeMap<VectorQ, Vec<(VectorQ, VectorQ)>> = BTreeMap::new();
    for i in 0..window.len() {
        for j in (i + 1)..window.len() {
            if codes[i] == codes[j] {
                by_sum
                    .entry(window[i].add(&window[j]))
                    .or_default()
                    .push((window[i].clone(), window[j].clone()));
            }
        }
    }
    let max = by_sum.values().map(Vec::len).max().unwrap_or(0);
    let witnesses = by_sum
        .into_iter()
        .map(|(sum, pairs)| SumWitness { sum, pairs })
        .collect();
    Ok(SumCollisionReport { max, witnesses })
}

/// All nonzero vectors over basis indices 0..dims whose coefficients are drawn
/// from `coefficients` ∪ {0}.  Yields (k+1)^dims − 1 vectors for k distinct
/// nonzero coefficients, in lexicographic choice order.
pub fn coefficient_window(dims: usize, coefficients: &[Rational]) -> Result<Vec<VectorQ>> {
    let mut choices: Vec<Rational> = Vec::with_capacity(coefficients.len());
    for coefficient in coefficients {
        if coefficient.is_zero() {
            return Err(Error::input(
                "window coefficients must be nonzero (zero means absent)".to_string(),
            ));
        }
        if choices.contains(coefficient) {
            return Err(Error::input(format!(
                "window coefficient {coefficient} listed twice"
            )));
        }
        choices.push(coefficient.clone());
    }
    let per_index = choices.len() + 1;
    let mut total: usize = 1;
    for _ in 0..dims {
        total = total
            .checked_mul(per_index)
            .filter(|&t| t <= MAX_WINDOW)
            .ok_or_else(|| {
                Error::resource(format!(
                    "window of {per_index}^{dims} vectors exceeds the cap of {MAX_WINDOW}"
                ))
            })?;
    }
    let mut window = Vec::with_capacity(total.saturating_sub(1));
    let mut stack = vec![(VectorQ::zero(), 0usize)];
    // Iterative depth-first enumeration: at each index choose 0 or one of the
    // nonzero coefficients.
    while let Some((prefix, index)) = stack.pop() {
        if index == dims {
            if !prefix.is_zero() {
                window.push(prefix);
            }
            continue;
        }
        // Push choices in reverse so the popped order is 0 first, then the
        // coefficients in their given order.
        for choice in (0..per_index).rev() {
            let mut next = prefix.clone();
            if choice > 0 {
                next = next.add(&VectorQ::basis(index).scale(&choices[choice - 1]));
            }
            stack.push((next, index + 1));
        }
    }
    window.sort();
    Ok(window)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn vec_of(pairs: &[(usize, Rational)]) -> VectorQ {
        VectorQ::from_pairs(pairs).unwrap()
    }

    #[test]
    fn vector_arithmetic_and_normalization() {
        let dropped = vec_of(&[(0, q(1, 1)), (1, q(0, 1))]);
        assert_eq!(dropped.support(), vec![0], "zero coefficients are dropped");
        assert!(matches!(
            VectorQ::from_pairs(&[(2, q(1, 1)), (2, q(1, 2))]),
            Err(Error::Input(_))
        ));

        let b0 = VectorQ::basis(0);
        let doubled = b0.add(&b0);
        assert_eq!(doubled.coefficient(0), Some(&q(2, 1)));

        let b1 = VectorQ::basis(1);
        let cancelled = b0.add(&b1).add(&b1.neg());
        assert_eq!(cancelled, b0, "exact cancellation shrinks the support");

        assert!(b0.scale(&q(0, 1)).is_zero());
        let halved = vec_of(&[(0, q(1, 1)), (1, q(2, 1))]).scale(&q(1, 2));
        assert_eq!(halved.coefficient_string(), vec![q(1, 2), q(1, 1)]);
        assert!(VectorQ::zero().add(&VectorQ::zero()).is_zero());
    }

    #[test]
    fn vector_json_roundtrip() {
        let v = vec_of(&[(0, q(1, 1)), (3, q(-1, 2))]);
        let encoded = v.to_json();
        assert_eq!(
            serde_json::to_string(&encoded).unwrap(),
            r#"{"0":"1","3":"-1/2"}"#
        );
        assert_eq!(VectorQ::from_json(&encoded).unwrap(), v);

        assert_eq!(
            serde_json::to_string(&VectorQ::zero().to_json()).unwrap(),
            "{}"
        );
        assert!(VectorQ::from_json(&serde_json::json!({})).unwrap().is_zero());
        // A zero coefficient in the wire form normalizes away.
        assert!(VectorQ::from_json(&serde_json::json!({"2": "0"}))
            .unwrap()
            .is_zero());
        assert!(VectorQ::from_json(&serde_json::json!({"x": "1"})).is_err());
        assert!(VectorQ::from_json(&serde_json::json!({"1": 5})).is_err());
        assert!(VectorQ::from_json(&serde_json::json!([1, 2])).is_err());
    }

    #[test]
    fn basis_codes_match_construction() {
        let ctx = CodingContext::build(8).unwrap();
        // Singleton supports share the (empty-pattern) fingerprint and the
        // string ⟨1⟩, so all basis vectors collide.
        assert_eq!(
            f_code(&VectorQ::basis(3), &ctx).unwrap(),
            f_code(&VectorQ::basis(7), &ctx).unwrap()
        );
        // Different strings over the same support separate.
        let b0b1 = vec_of(&[(0, q(1, 1)), (1, q(1, 1))]);
        let b0_2b1 = vec_of(&[(0, q(1, 1)), (1, q(2, 1))]);
        assert_ne!(
            f_code(&b0b1, &ctx).unwrap(),
            f_code(&b0_2b1, &ctx).unwrap()
        );
        // The code is literally the pairing of string code and fingerprint code.
        let x = vec_of(&[(0, q(1, 1)), (1, q(1, 2))]);
        let expected = pair_codes(
            &encode_rational_string(&[q(1, 1), q(1, 2)]),
            &ctx.type_of(&[0, 1]).unwrap().to_nat_code(),
        );
        assert_eq!(f_code(&x, &ctx).unwrap(), VectorCode::Coded(expected));
        // The zero vector keeps its reserved code.
        let zero_code = f_code(&VectorQ::zero(), &ctx).unwrap();
        assert_eq!(zero_code, VectorCode::Zero);
        assert_ne!(zero_code, f_code(&VectorQ::basis(0), &ctx).unwrap());
    }

    #[test]
    fn code_decoding_roundtrip() {
        let ctx = CodingContext::build(6).unwrap();
        let samples = [
            VectorQ::basis(0),
            vec_of(&[(0, q(1, 1)), (1, q(1, 2))]),
            vec_of(&[(1, q(-3, 7)), (2, q(5, 1)), (4, q(22, 3))]),
        ];
        for v in &samples {
            let code = f_code(v, &ctx).unwrap();
            let (string, fingerprint) = code.decode().unwrap().unwrap();
            assert_eq!(string, v.coefficient_string());
            assert_eq!(fingerprint, ctx.type_of(&v.support()).unwrap());
        }
        assert_eq!(VectorCode::Zero.decode().unwrap(), None);
    }

    #[test]
    fn out_of_range_support() {
        let ctx = CodingContext::build(4).unwrap();
        assert!(matches!(
            f_code(&VectorQ::basis(7), &ctx),
            Err(Error::Domain(_))
        ));
        // A sum touching indices outside the context has no coded pair at all.
        let s = VectorQ::basis(1).add(&VectorQ::basis(7));
        assert_eq!(recover_pair(&s, &ctx).unwrap(), None);
    }

    #[test]
    fn recovery_trivial_sums() {
        let ctx = CodingContext::build(4).unwrap();
        assert_eq!(recover_pair(&VectorQ::zero(), &ctx).unwrap(), None);
        // 2·b0 only arises from x = y = b0, which the pair excludes.
        let twice = VectorQ::basis(0).scale(&q(2, 1));
        assert_eq!(recover_pair(&twice, &ctx).unwrap(), None);
        // A lone basis vector cannot split into two nonempty supports.
        assert_eq!(recover_pair(&VectorQ::basis(2), &ctx).unwrap(), None);
    }

    #[test]
    fn recovery_of_constructed_pairs() {
        let ctx = CodingContext::build(8).unwrap();

        // Disjoint singleton supports: s = b1 + b2 came from {b1, b2}.
        let s = VectorQ::basis(1).add(&VectorQ::basis(2));
        let (x, y) = recover_pair(&s, &ctx).unwrap().unwrap();
        assert_eq!((x, y), (VectorQ::basis(1), VectorQ::basis(2)));

        // Shared index 0 doubles its coefficient in the sum.
        let x = vec_of(&[(0, q(1, 1)), (1, q(1, 2))]);
        let y = vec_of(&[(0, q(1, 1)), (2, q(1, 2))]);
        let s = x.add(&y);
        assert_eq!(
            s,
            vec_of(&[(0, q(2, 1)), (1, q(1, 2)), (2, q(1, 2))]),
            "shared coefficients double, tails survive"
        );
        assert_eq!(recover_pair(&s, &ctx).unwrap(), Some((x, y)));

        // Halving restores a non-integer shared coefficient.
        let s = vec_of(&[(0, q(3, 1)), (1, q(1, 1)), (2, q(1, 1))]);
        let (x, y) = recover_pair(&s, &ctx).unwrap().unwrap();
        assert_eq!(x, vec_of(&[(0, q(3, 2)), (1, q(1, 1))]));
        assert_eq!(y, vec_of(&[(0, q(3, 2)), (2, q(1, 1))]));

        // Mismatched tail coefficients leave no coded pair.
        let s = vec_of(&[(0, q(1, 1)), (1, q(1, 1)), (2, q(2, 1))]);
        assert_eq!(recover_pair(&s, &ctx).unwrap(), None);
    }

    #[test]
    fn window_scan_certifies_at_most_one_pair_per_sum() {
        let ctx = CodingContext::build(4).unwrap();
        let window = coefficient_window(4, &[q(1, 1), q(1, 2)]).unwrap();
        assert_eq!(window.len(), 80, "3^4 - 1 nonzero choice vectors");

        let report = verify_thm3(&window, &ctx).unwrap();
        assert_eq!(report.max, 1, "no sum admits two code-equal pairs");
        assert!(!report.witnesses.is_empty());
        for witness in &report.witnesses {
            assert_eq!(witness.pairs.len(), 1);
            // Sum recovery finds exactly the witnessed pair.
            let (x, y) = recover_pair(&witness.sum, &ctx).unwrap().unwrap();
            let (u, v) = &witness.pairs[0];
            let recovered_matches =
                (&x, &y) == (u, v) || (&x, &y) == (v, u);
            assert!(
                recovered_matches,
                "recover_pair({}) = ({x}, {y}) but the window paired ({u}, {v})",
                witness.sum
            );
        }

        // Spot-check one expected witness: b0 and b1 share string ⟨1⟩ and
        // fingerprint, so their sum must appear.
        let s = VectorQ::basis(0).add(&VectorQ::basis(1));
        assert!(report.witnesses.iter().any(|w| w.sum == s));
    }

    #[test]
    fn window_scan_small_cases() {
        let ctx = CodingContext::build(4).unwrap();
        let lonely = verify_thm3(&[VectorQ::basis(0)], &ctx).unwrap();
        assert_eq!(lonely.max, 0);
        assert!(lonely.witnesses.is_empty());

        // Two disjoint fingerprint-equal singletons with equal strings: their
        // sum is realized exactly once.
        let pair = verify_thm3(&[VectorQ::basis(1), VectorQ::basis(2)], &ctx).unwrap();
        assert_eq!(pair.max, 1);
        assert_eq!(pair.witnesses.len(), 1);
        assert_eq!(
            pair.witnesses[0].sum,
            VectorQ::basis(1).add(&VectorQ::basis(2))
        );

        // The zero vector may sit in a window; it pairs with nothing.
        let with_zero = verify_thm3(&[VectorQ::zero(), VectorQ::basis(0)], &ctx).unwrap();
        assert_eq!(with_zero.max, 0);

        assert!(matches!(
            verify_thm3(&[VectorQ::basis(0), VectorQ::basis(0)], &ctx),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn window_generation_guards() {
        assert!(matches!(
            coefficient_window(2, &[q(0, 1)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            coefficient_window(2, &[q(1, 2), q(1, 2)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            coefficient_window(40, &[q(1, 1), q(1, 2)]),
            Err(Error::Resource(_))
        ));
        // Window contents are sorted and duplicate-free.
        let window = coefficient_window(2, &[q(1, 1)]).unwrap();
        assert_eq!(
            window,
            vec![
                VectorQ::basis(0),
                VectorQ::basis(0).add(&VectorQ::basis(1)),
                VectorQ::basis(1),
            ]
        );
    }

    #[test]
    fn report_json_shape() {
        let ctx = CodingContext::build(4).unwrap();
        let report = verify_thm3(&[VectorQ::basis(1), VectorQ::basis(2)], &ctx).unwrap();
        let json = serde_json::to_string(&report.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"max":1,"sums":[{"count":1,"pairs":[[{"1":"1"},{"2":"1"}]],"sum":{"1":"1","2":"1"}}]}"#
        );
    }
}
