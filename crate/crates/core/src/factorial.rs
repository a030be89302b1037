//! A factorial hierarchy on the positive rationals with a 4-valued coloring
//! of Q whose equal-color radius sets are finite around every point.
//!
//! Level n collects the positive rationals p/n! below 2^n.  The levels are
//! nested, each is finite, and their union is all of Q⁺.  Two points are
//! joined in the midpoint graph when their average sits two or more levels
//! below both; such edges only ever join points of the same level, and within
//! one level the graph is bipartite.  Painting each slice by its bipartition
//! (least member of every component gets 0), negatives by the mirrored bit
//! plus 2, and 0 by 0 yields a map Q → {0,1,2,3} under which an equal-color
//! pair x−h, x+h forces one of the two points into the level right above x —
//! so only finitely many radii can collide at any center.
//!
//! The slice bipartition admits a closed form, used by [`LevelColoring::color_q`]
//! instead of breadth-first search so that single queries stay cheap at any
//! level.  Writing a level-n point as p/n!, an edge through midpoint
//! z = r/(n−2)! means p + p′ = 2n(n−1)·r, so edges join the residue classes
//! ±ρ mod Q for Q = 2n(n−1).  Points in the top half [2^{n−1}, 2^n) sit above
//! every usable midpoint and are isolated, as is any point whose least
//! conceivable partner Q − (p mod Q) already overshoots the largest midpoint;
//! all remaining members of the two classes form a single component anchored
//! at its least element min(ρ, Q−ρ).  The tests cross-check this form against
//! explicit graph enumeration on every slice small enough to enumerate.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;

// Levels stay computable while the denominator's prime factors are below this.
const MAX_LEVEL: u32 = 1_000_000;
// Default bound on levels that may be fully enumerated (level 6: 46_079 points).
const DEFAULT_ENUMERATION_CAP: u32 = 6;
// Hard ceiling on enumerated points regardless of the configured cap.
const MAX_ENUMERATION: u128 = 1_000_000;
// Window scans refuse to visit more radii than this.
const MAX_WINDOW_RADII: u128 = 20_000_000;
// The precomputed scan tables cover scaled denominators up to this bound;
// wider windows fall back to per-point exact arithmetic.
const MAX_TABLE_DEN: u64 = 50_000;
// The level cache stops growing beyond this many distinct query points.
const LEVEL_CACHE_CAP: usize = 65_536;

// 0!..=25! as u128, for exact slice-bound comparisons without big integers.
const SMALL_FACTORIALS: [u128; 26] = {
    let mut table = [1u128; 26];
    let mut i = 1;
    while i < 26 {
        table[i] = table[i - 1] * i as u128;
        i += 1;
    }
    table
};

// ============================================================================
// Integer-level helpers
// ============================================================================

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn powmod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut base = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn factorial_mod(n: u32, m: u64) -> u64 {
    let mut acc = 1 % m;
    for k in 2..=n as u64 {
        acc = mulmod(acc, k, m);
    }
    acc
}

/// Least n with p^e | n!, for prime p.
///
/// After k loop steps the accumulator equals v_p((kp)!), so the answer is k·p
/// for the first k where it reaches e.
fn least_level_for_prime_power(p: u64, e: u32) -> u64 {
    let mut acc = 0u64;
    let mut k = 0u64;
    while acc < e as u64 {
        k += 1;
        let mut j = k;
        acc += 1;
        while j % p == 0 {
            acc += 1;
            j /= p;
        }
    }
    k * p
}

/// Least n ≥ 1 with d | n!, or a resource error when that n exceeds the cap.
fn level_of_denominator(d: u64) -> Result<u32> {
    let mut rest = d;
    let mut level = 1u64;
    let mut p = 2u64;
    while p <= rest / p {
        if p > MAX_LEVEL as u64 {
            break;
        }
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            level = level.max(least_level_for_prime_power(p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        // A leftover cofactor is prime or a product of primes above the trial
        // bound; either way its smallest prime factor bounds the level.
        if rest > MAX_LEVEL as u64 {
            return Err(Error::resource(format!(
                "denominator {d} first divides n! around n = {rest}, over the level cap {MAX_LEVEL}"
            )));
        }
        level = level.max(rest);
    }
    if level > MAX_LEVEL as u64 {
        return Err(Error::resource(format!(
            "denominator {d} first divides {level}!, over the level cap {MAX_LEVEL}"
        )));
    }
    Ok(level as u32)
}

/// Least n ≥ 1 with num/den < 2^n.
fn level_of_magnitude(num: &BigUint, den: u64) -> u32 {
    ((num / den).bits() as u32).max(1)
}

/// (n!/d) mod q for d | n!, without forming n!.
///
/// When d·q fits a u64 this uses n! mod (d·q) = d·((n!/d) mod q); otherwise
/// it multiplies out the prime factorization of n!/d modulo q.
fn factorial_over_den_mod(n: u32, d: u64, q: u64) -> u64 {
    match d.checked_mul(q) {
        Some(m) => factorial_mod(n, m) / d,
        None => factorial_over_den_mod_by_primes(n, d, q),
    }
}

fn factorial_over_den_mod_by_primes(n: u32, d: u64, q: u64) -> u64 {
    let top = n as usize;
    let mut composite = vec![false; top + 1];
    let mut rest = d;
    let mut acc = 1 % q;
    for p in 2..=top {
        if composite[p] {
            continue;
        }
        let mut multiple = p * p;
        while multiple <= top {
            composite[multiple] = true;
            multiple += p;
        }
        // v_p(n!) by summing n/p^i, minus the denominator's share.
        let mut e: u64 = 0;
        let mut power = p as u64;
        loop {
            e += n as u64 / power;
            match power.checked_mul(p as u64) {
                Some(next) if next <= n as u64 => power = next,
                _ => break,
            }
        }
        while rest % p as u64 == 0 {
            rest /= p as u64;
            e -= 1;
        }
        acc = mulmod(acc, powmod(p as u64, e, q), q);
    }
    debug_assert_eq!(rest, 1, "denominator must divide n!");
    acc
}

/// Whether the least conceivable partner of an active point still fits under
/// the slice's largest midpoint, in the boundary case n1 = n − 1.
///
/// Callers dispatch n ≥ 26 up front: there n!/q dwarfs the residue gap and
/// the partner always fits.
fn least_partner_fits(scaled: u128, q: u64, n: u32, qmod: u64, rho: u64) -> bool {
    debug_assert!((3..26).contains(&n));
    let fact = SMALL_FACTORIALS[n as usize];
    let p = scaled * (fact / q as u128);
    p + (qmod - rho) as u128 <= (fact << (n - 1)) - qmod as u128
}

/// Bipartition bit of the positive rational nr/dr (in lowest terms) inside
/// its slice, by the closed form described in the module docs.
fn slice_bit(nr: &BigUint, dr: u64) -> Result<u8> {
    let n0 = level_of_denominator(dr)?;
    let n1 = level_of_magnitude(nr, dr);
    let n = n0.max(n1);
    if n <= 2 || n1 == n {
        // No midpoints exist below level 3, and the top half of any slice
        // sits above every usable midpoint; both kinds of point are isolated.
        return Ok(0);
    }
    let qmod = 2 * n as u64 * (n as u64 - 1);
    let t = factorial_over_den_mod(n, dr, qmod);
    let nr_mod = (nr % qmod).to_u64().expect("residue under a u64 modulus");
    let rho = mulmod(nr_mod, t, qmod);
    debug_assert!(
        rho != 0 && 2 * rho != qmod,
        "active slice points avoid the folding axis"
    );
    let edged = if n1 + 2 <= n || n >= 26 {
        true
    } else {
        let scaled = nr
            .to_u128()
            .expect("numerator below 2^25 times a u64 denominator");
        least_partner_fits(scaled, dr, n, qmod, rho)
    };
    Ok(if edged && 2 * rho > qmod { 1 } else { 0 })
}

// ============================================================================
// LevelColoring
// ============================================================================

/// Precomputed per-denominator data for window scans in scaled arithmetic.
struct ScanTables {
    max_den: u64,
    /// Least level whose factorial each denominator divides.
    den_level: Vec<u32>,
    /// (n!/d) mod 2n(n−1) at n = den_level[d]; 0 where unused (levels ≤ 2).
    modq_at_den_level: Vec<u64>,
}

impl ScanTables {
    fn build(max_den: u64) -> Self {
        let size = max_den as usize + 1;
        let mut spf = vec![0u32; size];
        for d in 2..size {
            if spf[d] == 0 {
                let mut m = d;
                while m < size {
                    if spf[m] == 0 {
                        spf[m] = d as u32;
                    }
                    m += d;
                }
            }
        }
        let mut den_level = vec![1u32; size.max(2)];
        let mut modq_at_den_level = vec![0u64; size.max(2)];
        for d in 2..size {
            let mut rest = d as u64;
            let mut level = 1u64;
            while rest > 1 {
                let p = spf[rest as usize] as u64;
                let mut e = 0u32;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                level = level.max(least_level_for_prime_power(p, e));
            }
            den_level[d] = level as u32;
        }
        for d in 1..size {
            let n = den_level[d];
            if n >= 3 {
                let q = 2 * n as u64 * (n as u64 - 1);
                modq_at_den_level[d] = factorial_over_den_mod(n, d as u64, q);
            }
        }
        ScanTables {
            max_den,
            den_level,
            modq_at_den_level,
        }
    }
}

/// Color of the scaled value num/den (den within the table bound, any sign),
/// reduced and classified entirely in machine words.  The scan plan
/// guarantees |num| fits in u32, so the hot reduction runs single-word.
fn scaled_color(
    tables: &ScanTables,
    extra: &mut HashMap<(u32, u32), u64>,
    num: i64,
    den: u32,
) -> u8 {
    if num == 0 {
        return 0;
    }
    let shift = if num < 0 { 2 } else { 0 };
    debug_assert!(
        num.unsigned_abs() <= u32::MAX as u64,
        "scan plan keeps scaled numerators in u32"
    );
    let mag = num.unsigned_abs() as u32;
    let g = mag.gcd(&den);
    let (p, q) = (mag / g, den / g);
    let n0 = tables.den_level[q as usize];
    let n1 = (32 - (p / q).leading_zeros()).max(1);
    let n = n0.max(n1);
    if n <= 2 || n1 == n {
        return shift;
    }
    let qmod = 2 * n as u64 * (n as u64 - 1);
    let t = if n == n0 {
        tables.modq_at_den_level[q as usize]
    } else {
        *extra
            .entry((n, q))
            .or_insert_with(|| factorial_over_den_mod(n, q as u64, qmod))
    };
    let rho = mulmod(p as u64 % qmod, t, qmod);
    debug_assert!(
        rho != 0 && 2 * rho != qmod,
        "active slice points avoid the folding axis"
    );
    let edged = n1 + 2 <= n || n >= 26 || least_partner_fits(p as u128, q as u64, n, qmod, rho);
    shift + u8::from(edged && 2 * rho > qmod)
}

/// Distinct prime factors of n by trial division, into a reused buffer.
fn distinct_prime_factors(n: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut rest = n;
    let mut p = 2u64;
    while p <= rest / p {
        if rest % p == 0 {
            out.push(p as usize);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push(rest as usize);
    }
}

/// Everything a scaled window scan needs, validated to fit machine words.
struct ScaledPlan {
    xn: i64,
    xd: u64,
    hn: u64,
    hd: u64,
    tables: Arc<ScanTables>,
}

/// The level hierarchy together with its 4-valued coloring of Q.
///
/// All queries take `&self`; caches fill under short-lived locks, so a shared
/// instance can serve several threads at once.
pub struct LevelColoring {
    enumeration_cap: u32,
    levels: Mutex<HashMap<Rational, u32>>,
    scan_tables: Mutex<Option<Arc<ScanTables>>>,
}

impl Default for LevelColoring {
    fn default() -> Self {
        Self::new()
    }
}

impl LevelColoring {
    pub fn new() -> Self {
        Self::with_enumeration_cap(DEFAULT_ENUMERATION_CAP)
    }

    /// `cap` bounds the levels that may be fully enumerated (members and
    /// slice graphs); single-point queries work at any computable level.
    pub fn with_enumeration_cap(cap: u32) -> Self {
        LevelColoring {
            enumeration_cap: cap,
            levels: Mutex::new(HashMap::new()),
            scan_tables: Mutex::new(None),
        }
    }

    pub fn enumeration_cap(&self) -> u32 {
        self.enumeration_cap
    }

    /// Least n ≥ 1 with denominator(x) | n! and x < 2^n, for positive x.
    pub fn level(&self, x: &Rational) -> Result<u32> {
        if !x.is_positive() {
            return Err(Error::domain(format!(
                "levels are defined for positive rationals, got {x}"
            )));
        }
        if let Some(&hit) = self.levels.lock().unwrap().get(x) {
            return Ok(hit);
        }
        let den = x
            .denom()
            .to_u64()
            .ok_or_else(|| Error::resource("denominator exceeds the u64 range"))?;
        let n0 = level_of_denominator(den)?;
        let n1 = level_of_magnitude(x.numer().magnitude(), den);
        let level = n0.max(n1);
        let mut cache = self.levels.lock().unwrap();
        if cache.len() < LEVEL_CACHE_CAP {
            cache.insert(x.clone(), level);
        }
        Ok(level)
    }

    /// The full level-n set {p/n! : p ≥ 1, p/n! < 2^n}, ascending.
    pub fn members(&self, n: u32) -> Result<Vec<Rational>> {
        if n < 1 {
            return Err(Error::input("levels start at 1"));
        }
        let count = self.enumerable_count(n)?;
        let fact: u64 = (1..=n as u64).product();
        Ok((1..=count)
            .map(|p| Rational::new(p as i64, fact as i64).expect("positive denominator"))
            .collect())
    }

    /// The midpoint graph on the points first appearing at level n+1: edges
    /// join pairs whose average lies two or more levels below both ends.
    pub fn edges_in_slice(&self, n: u32) -> Result<MidpointGraph> {
        if n < 1 {
            return Err(Error::input("slice indices start at 1"));
        }
        let level = n + 1;
        let count = self.enumerable_count(level)?;
        let fact: u64 = (1..=level as u64).product();
        let upper = count + 1; // scaled 2^{n+1}
        let half = upper >> 1; // scaled 2^n
        let mut scaled: Vec<u64> = Vec::new();
        for p in 1..upper {
            let in_previous_level = p % level as u64 == 0 && p < half;
            if !in_previous_level {
                scaled.push(p);
            }
        }
        let mut index = vec![usize::MAX; upper as usize];
        for (i, &p) in scaled.iter().enumerate() {
            index[p as usize] = i;
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        if level >= 3 {
            // Candidate midpoints are exactly the points of level ≤ n−1,
            // which scale to the multiples of (n+1)·n below 2^n·(n+1)!/2.
            let mid_fact: u64 = (1..=(level - 2) as u64).product();
            let mid_count = (1u64 << (level - 2)) * mid_fact - 1;
            let scale = level as u64 * (level as u64 - 1);
            for r in 1..=mid_count {
                let z = r * scale;
                let cut = scaled.partition_point(|&p| p < z);
                for &p in &scaled[..cut] {
                    let partner = 2 * z - p;
                    let j = index[partner as usize];
                    if j != usize::MAX {
                        edges.push((index[p as usize], j));
                    }
                }
            }
        }
        edges.sort_unstable();
        let vertices = scaled
            .iter()
            .map(|&p| Rational::new(p as i64, fact as i64).expect("positive denominator"))
            .collect();
        Ok(MidpointGraph {
            slice: n,
            vertices,
            edges,
        })
    }

    /// The coloring Q → {0,1,2,3}: zero maps to 0, positives to their slice
    /// bipartition bit, negatives to the mirrored bit plus 2.
    pub fn color_q(&self, x: &Rational) -> Result<u8> {
        if x.is_zero() {
            return Ok(0);
        }
        if x.is_negative() {
            return Ok(2 + self.color_q(&-x)?);
        }
        let den = x
            .denom()
            .to_u64()
            .ok_or_else(|| Error::resource("denominator exceeds the u64 range"))?;
        slice_bit(x.numer().magnitude(), den)
    }

    /// All radii h ∈ (0, max_h] with denominator ≤ max_den and equal colors
    /// at x − h and x + h, each certified by the endpoint whose level is at
    /// most level(|x|) + 1.
    ///
    /// A violation the coloring forbids — around 0, past |x|, or with both
    /// endpoints deep — surfaces as a soundness error.
    pub fn s_x_window(
        &self,
        x: &Rational,
        max_h: &Rational,
        max_den: u64,
    ) -> Result<SxCertificate> {
        if !max_h.is_positive() {
            return Err(Error::input(format!(
                "window radius bound must be positive, got {max_h}"
            )));
        }
        if max_den == 0 {
            return Err(Error::input("window denominator bound must be at least 1"));
        }
        let radii = {
            let hn = max_h.numer().magnitude();
            let hd = max_h.denom().magnitude();
            let d_big = BigUint::from(max_den);
            let total = (hn * (&d_big * (&d_big + 1u32))) / (hd * 2u32);
            total.to_u128().unwrap_or(u128::MAX)
        };
        if radii > MAX_WINDOW_RADII {
            return Err(Error::resource(format!(
                "window spans about {radii} radii, over the cap {MAX_WINDOW_RADII}"
            )));
        }
        let base_level = if x.is_zero() {
            None
        } else {
            Some(self.level(&x.abs())?)
        };
        let mut violations = match self.scaled_scan_plan(x, max_h, max_den) {
            Some(plan) => self.scan_window_scaled(x, base_level, max_den, plan)?,
            None => self.scan_window_exact(x, base_level, max_h, max_den)?,
        };
        violations.sort_by(|a, b| a.h.cmp(&b.h));
        Ok(SxCertificate {
            x: x.clone(),
            level: base_level,
            violations,
        })
    }

    // ------------------------------------------------------------------
    // internals
    // ------------------------------------------------------------------

    /// Point count of level n, refusing levels past the configured cap or
    /// the hard enumeration ceiling.
    fn enumerable_count(&self, n: u32) -> Result<u64> {
        if n > self.enumeration_cap {
            return Err(Error::resource(format!(
                "level {n} is over the enumeration cap {}",
                self.enumeration_cap
            )));
        }
        let mut total: u128 = 1; // 2^n·n! as a product of 2k
        for k in 1..=n as u128 {
            total *= 2 * k;
            if total > MAX_ENUMERATION {
                return Err(Error::resource(format!(
                    "level {n} holds more than {MAX_ENUMERATION} points"
                )));
            }
        }
        Ok(total as u64 - 1)
    }

    fn ensure_tables(&self, max_den: u64) -> Arc<ScanTables> {
        let mut slot = self.scan_tables.lock().unwrap();
        match slot.as_ref() {
            Some(tables) if tables.max_den >= max_den => Arc::clone(tables),
            _ => {
                let built = Arc::new(ScanTables::build(max_den));
                *slot = Some(Arc::clone(&built));
                built
            }
        }
    }

    /// Machine-word inputs for the fast scan, when x, max_h, and the scaled
    /// denominators all fit; None selects the exact fallback.
    fn scaled_scan_plan(&self, x: &Rational, max_h: &Rational, max_den: u64) -> Option<ScaledPlan> {
        let xd = x.denom().to_u64()?;
        let xn = x.numer().to_i64()?;
        let hn = max_h.numer().to_u64()?;
        let hd = max_h.denom().to_u64()?;
        let table_den = xd.checked_mul(max_den).filter(|&v| v <= MAX_TABLE_DEN)?;
        let max_a = hn.checked_mul(max_den)? / hd;
        let bound = xd
            .checked_mul(max_a)?
            .checked_add(xn.unsigned_abs().checked_mul(max_den)?)?;
        if bound > u32::MAX as u64 {
            return None;
        }
        Some(ScaledPlan {
            xn,
            xd,
            hn,
            hd,
            tables: self.ensure_tables(table_den),
        })
    }

    fn scan_window_scaled(
        &self,
        x: &Rational,
        base_level: Option<u32>,
        max_den: u64,
        plan: ScaledPlan,
    ) -> Result<Vec<SxViolation>> {
        let ScaledPlan {
            xn,
            xd,
            hn,
            hd,
            tables,
        } = plan;
        let xa = xn.unsigned_abs();
        let mut extra: HashMap<(u32, u32), u64> = HashMap::new();
        let mut blocked: Vec<bool> = Vec::new();
        let mut factors: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for b in 1..=max_den {
            // Radii past |x| cannot collide: the endpoints then straddle 0,
            // and the two sign ranges use disjoint color pairs.
            let h_cap = ((hn as u128 * b as u128) / hd as u128) as u64;
            let x_cap = ((xa as u128 * b as u128) / xd as u128) as u64;
            let a_max = h_cap.min(x_cap) as usize;
            if a_max == 0 {
                continue;
            }
            // Sieve the radii sharing a factor with b instead of running a
            // gcd per candidate numerator.
            if blocked.len() <= a_max {
                blocked.resize(a_max + 1, false);
            }
            blocked[1..=a_max].fill(false);
            distinct_prime_factors(b, &mut factors);
            for &p in &factors {
                let mut m = p;
                while m <= a_max {
                    blocked[m] = true;
                    m += p;
                }
            }
            let den = (xd * b) as u32;
            let xb = xn * b as i64;
            for a in 1..=a_max as u64 {
                if blocked[a as usize] {
                    continue;
                }
                let off = (a * xd) as i64;
                let left = scaled_color(&tables, &mut extra, xb - off, den);
                let right = scaled_color(&tables, &mut extra, xb + off, den);
                if left == right {
                    let h = Rational::new(a as i64, b as i64).expect("positive denominator");
                    out.push(self.certify_violation(x, base_level, &h, &(x - &h), &(x + &h))?);
                }
            }
        }
        Ok(out)
    }

    fn scan_window_exact(
        &self,
        x: &Rational,
        base_level: Option<u32>,
        max_h: &Rational,
        max_den: u64,
    ) -> Result<Vec<SxViolation>> {
        let mut out = Vec::new();
        for b in 1..=max_den {
            // Same prune as the scaled scan: radii past |x| cannot collide.
            let h_cap = ((max_h.numer() * b) / max_h.denom()).to_u64().unwrap_or(0);
            let x_cap = ((x.numer().magnitude() * b) / x.denom().magnitude())
                .to_u64()
                .unwrap_or(u64::MAX);
            let a_max = h_cap.min(x_cap);
            for a in 1..=a_max {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let h = Rational::new(a as i64, b as i64).expect("positive denominator");
                let left = x - &h;
                let right = x + &h;
                if self.color_q(&left)? == self.color_q(&right)? {
                    out.push(self.certify_violation(x, base_level, &h, &left, &right)?);
                }
            }
        }
        Ok(out)
    }

    /// Classify one equal-color radius by its certifying endpoint, rejecting
    /// anything the construction proves impossible.
    fn certify_violation(
        &self,
        x: &Rational,
        base_level: Option<u32>,
        h: &Rational,
        left: &Rational,
        right: &Rational,
    ) -> Result<SxViolation> {
        let base = base_level.ok_or_else(|| {
            Error::soundness(format!(
                "equal colors at ±{h} around 0, but the sign ranges never collide"
            ))
        })?;
        if *h > x.abs() {
            return Err(Error::soundness(format!(
                "equal colors at {x} ± {h} would cross the sign split"
            )));
        }
        for (side, point) in [(WitnessSide::Left, left), (WitnessSide::Right, right)] {
            if point.is_zero() {
                continue;
            }
            let witness_level = self.level(&point.abs())?;
            if witness_level <= base + 1 {
                return Ok(SxViolation {
                    h: h.clone(),
                    side,
                    witness_level,
                });
            }
        }
        Err(Error::soundness(format!(
            "equal colors at {x} ± {h} with both endpoints above level {}",
            base + 1
        )))
    }
}

// ============================================================================
// MidpointGraph
// ============================================================================

/// The midpoint graph restricted to one slice of the hierarchy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidpointGraph {
    /// Slice index n; the vertices first appear at level n+1.
    pub slice: u32,
    /// Slice members, ascending.
    pub vertices: Vec<Rational>,
    /// Edges as (i, j) index pairs with i < j, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl MidpointGraph {
    /// Per-component bipartition bits: the least vertex of every component
    /// gets 0 and each edge flips the bit.  An odd cycle — which the
    /// construction proves impossible — is a soundness error.
    pub fn bipartition_bits(&self) -> Result<Vec<u8>> {
        let n = self.vertices.len();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        let mut bits = vec![u8::MAX; n];
        // Vertices are sorted ascending, so scanning in index order anchors
        // every component at its least member.
        for start in 0..n {
            if bits[start] != u8::MAX {
                continue;
            }
            bits[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacency[v] {
                    if bits[w] == u8::MAX {
                        bits[w] = 1 - bits[v];
                        queue.push_back(w);
                    } else if bits[w] == bits[v] {
                        return Err(Error::soundness(format!(
                            "odd cycle through {} and {} in slice {}",
                            self.vertices[v], self.vertices[w], self.slice
                        )));
                    }
                }
            }
        }
        Ok(bits)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edges": self.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            "slice": self.slice,
            "vertices": self.vertices.iter().map(|v| json!(v.to_string())).collect::<Vec<_>>(),
        })
    }
}

// ============================================================================
// Window certificates
// ============================================================================

/// Which endpoint of the probe carries the shallow-level witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSide {
    Left,
    Right,
}

impl fmt::Display for WitnessSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSide::Left => write!(f, "left"),
            WitnessSide::Right => write!(f, "right"),
        }
    }
}

/// One equal-color radius, with the endpoint certifying its finiteness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SxViolation {
    pub h: Rational,
    pub side: WitnessSide,
    pub witness_level: u32,
}

/// Result of scanning one window of radii around a center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SxCertificate {
    pub x: Rational,
    /// level(|x|); absent for x = 0.
    pub level: Option<u32>,
    /// Equal-color radii in the window, ascending.
    pub violations: Vec<SxViolation>,
}

impl SxCertificate {
    /// Just the offending radii, ascending.
    pub fn offending_radii(&self) -> Vec<Rational> {
        self.violations.iter().map(|v| v.h.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "violations": self
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "h": v.h.to_string(),
                        "witness-level": v.witness_level,
                        "witness-side": v.side.to_string(),
                    })
                })
                .collect::<Vec<_>>(),
            "x": self.x.to_string(),
        })
    }
}

// ============================================================================
// Tests
// ============================================================================
