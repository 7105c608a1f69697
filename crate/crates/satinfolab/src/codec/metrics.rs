//! Bit-budget formulas: encoding lengths, growth bounds, and information
//! measures.
//!
//! Everything here is exact. Quantities that mix integers with `log2` of a
//! non-power-of-two are computed with a certified fixed-point logarithm
//! (paired lower/upper digit recurrences) so that floors are provably
//! correct, never "probably correct from f64". Values grow far past 64 bits
//! quickly — `sat_content(L) = L·2^L` — so the public surface speaks
//! `BigUint`.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Cost model for "how many bits does a number cost" in instance-size
/// comparisons: a flat `⌈log2 K⌉` bits per number for values bounded by `K`,
/// or `⌊log2 n⌋ + 1` bits for indices up to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum CostModel {
    Uniform { k: u64 },
    Logarithmic,
}

/// `⌊log2 x⌋` for `x ≥ 1`.
fn floor_log2(x: &BigUint) -> u64 {
    assert!(!x.is_zero(), "log2 of zero");
    x.bits() - 1
}

/// Ceiling division of nonnegative big integers.
fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - BigUint::one()) / b
}

/// Certified bounds on `2^frac_bits · log2(x)` for `x ≥ 1`:
/// returns `(lo, hi)` with `lo ≤ 2^frac_bits·log2 x ≤ hi`.
///
/// The fractional part is produced by the classic squaring recurrence on a
/// fixed-point mantissa, run twice — once rounding every division down, once
/// up — so the two bit streams bracket the true value.
pub(crate) fn log2_bounds_scaled(x: &BigUint, frac_bits: u32) -> (BigUint, BigUint) {
    let ell = floor_log2(x);
    let whole = BigUint::from(ell) << frac_bits;
    if x.count_ones() == 1 {
        // Power of two: log2 is exactly the exponent.
        return (whole.clone(), whole);
    }

    let precision = frac_bits + 32;
    let scale = BigUint::one() << precision;
    let threshold = &scale << 1;
    let pow_ell = BigUint::one() << ell;

    let run = |round_up: bool| -> BigUint {
        let scaled = x << precision;
        let mut mantissa = if round_up {
            ceil_div(&scaled, &pow_ell)
        } else {
            scaled >> ell
        };
        let mut frac = BigUint::zero();
        for _ in 0..frac_bits {
            let square = &mantissa * &mantissa;
            mantissa = if round_up {
                ceil_div(&square, &scale)
            } else {
                square >> precision
            };
            frac <<= 1;
            if mantissa >= threshold {
                frac += 1u32;
                if round_up {
                    mantissa = (mantissa + BigUint::one()) >> 1;
                } else {
                    mantissa >>= 1;
                }
            }
        }
        frac
    };

    let lo = &whole + run(false);
    let hi = &whole + run(true) + BigUint::one();
    debug_assert!(lo <= hi);
    (lo, hi)
}

/// `⌊a · log2 x⌋`, exactly, for `a ≥ 0`, `x ≥ 1`.
///
/// Powers of two are exact immediately; otherwise `a·log2 x` is irrational,
/// so raising the bracket precision always separates it from the nearest
/// integer and the loop terminates.
pub(crate) fn floor_mul_log2(a: &BigUint, x: &BigUint) -> BigUint {
    if a.is_zero() {
        return BigUint::zero();
    }
    if x.count_ones() == 1 {
        return a * floor_log2(x);
    }
    let mut frac_bits = 64u32;
    loop {
        let (lo, hi) = log2_bounds_scaled(x, frac_bits);
        let p_lo = (a * lo) >> frac_bits;
        let p_hi = (a * hi) >> frac_bits;
        if p_lo == p_hi {
            return p_lo;
        }
        frac_bits *= 2;
        assert!(
            frac_bits <= 1 << 20,
            "log2 bracket failed to converge (cannot happen for irrational targets)"
        );
    }
}

/// Canonical-encoding length charged by the counting argument:
/// `⌊log2 n⌋ + 1 + 2n + 2nm` bits for an instance over `n ≥ 1` variables
/// with `m` clauses.
///
/// The concrete codec spends `⌊log2 n⌋` extra bits on its self-delimiting
/// variable-count field; see the cross-check in the tests.
pub fn paper_bit_length(n: &BigUint, m: &BigUint) -> BigUint {
    assert!(!n.is_zero(), "paper_bit_length needs n >= 1");
    let two_n = n << 1u32;
    floor_log2(n) + BigUint::one() + &two_n + two_n * m
}

/// Instance length under the uniform cost model: `12·n·w + w` bits where
/// `w = ⌈log2 K⌉` is the width of a number bounded by `K`. Needs `n ≥ 3`
/// (the family encoded this way has four 3-literal clauses per variable)
/// and `K ≥ 2`.
pub fn uniform_length(n: &BigUint, k: &BigUint) -> BigUint {
    assert!(*n >= BigUint::from(3u32), "uniform_length needs n >= 3");
    assert!(*k >= BigUint::from(2u32), "uniform_length needs K >= 2");
    let width = (k - BigUint::one()).bits(); // ⌈log2 K⌉ for K ≥ 2
    (n * 12u32 + BigUint::one()) * width
}

/// Instance length under the logarithmic cost model:
/// `12n(⌊log2 n⌋ + 2) + ⌊log2 n⌋ + 1` bits, for `n ≥ 3`.
pub fn logarithmic_length(n: &BigUint) -> BigUint {
    assert!(*n >= BigUint::from(3u32), "logarithmic_length needs n >= 3");
    let ell = BigUint::from(floor_log2(n));
    n * 12u32 * (&ell + BigUint::from(2u32)) + ell + BigUint::one()
}

/// `⌊15·n·log2 n⌋` — the smooth ceiling that [`logarithmic_length`]
/// eventually stays under. Comparing an integer against the floor is the
/// same as comparing against the real value, so this form loses nothing.
pub fn bound15(n: &BigUint) -> BigUint {
    assert!(!n.is_zero(), "bound15 needs n >= 1");
    floor_mul_log2(&(n * 15u32), n)
}

/// Does `logarithmic_length(n) ≤ 15·n·log2 n` hold at this `n`?
pub fn bound15_holds(n: &BigUint) -> bool {
    logarithmic_length(n) <= bound15(n)
}

/// Smallest `n0 ≥ 3` such that [`bound15_holds`] is true for **every**
/// `n ∈ [n0, horizon]`, or `None` if it fails at the horizon itself.
///
/// The comparison oscillates near powers of two before stabilizing (the
/// floor term drops relative to the smooth bound just past each power), so
/// a single first-success scan would be wrong; this tracks the last failure.
pub fn smallest_stable_bound15_n(horizon: u64) -> Option<u64> {
    assert!(horizon >= 3);
    let mut last_failure: Option<u64> = None;
    for n in 3..=horizon {
        // f64 prefilter: the margin |15·n·log2 n − exact| is either zero-ish
        // (near ties) or astronomically larger than f64 rounding error.
        let nf = n as f64;
        let smooth = 15.0 * nf * nf.log2();
        let ell = u64::from(n.ilog2());
        let exact = (12 * n * (ell + 2) + ell + 1) as f64;
        let holds = if (smooth - exact).abs() > 1.0 {
            exact <= smooth
        } else {
            bound15_holds(&BigUint::from(n))
        };
        if !holds {
            last_failure = Some(n);
        }
    }
    match last_failure {
        Some(n) if n == horizon => None,
        Some(n) => Some(n + 1),
        None => Some(3),
    }
}

/// Information produced by `T` relation steps: `⌊T · log2 T⌋` bits, `T ≥ 2`.
pub fn info_production(t: &BigUint) -> BigUint {
    assert!(*t >= BigUint::from(2u32), "info_production needs T >= 2");
    floor_mul_log2(t, t)
}

/// Information content of the full answer table for instances of `L` bits:
/// `L · 2^L`.
pub fn sat_content(instance_bits: u64) -> BigUint {
    assert!(instance_bits >= 1, "sat_content needs L >= 1");
    BigUint::from(instance_bits) << instance_bits
}

/// Evaluate a polynomial with nonnegative big-integer coefficients
/// (ascending degree) at `x`.
fn poly_eval(coeffs: &[BigUint], x: u64) -> BigUint {
    let x = BigUint::from(x);
    coeffs
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, c| acc * &x + c)
}

fn check_poly(coeffs: &[BigUint]) {
    assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
    assert!(
        !coeffs.last().unwrap().is_zero() || coeffs.len() == 1,
        "leading polynomial coefficient must be nonzero"
    );
}

/// Information accessible to a fixed program in polynomial time:
/// `L + |A| + ρ·q(L)` bits for an `L`-bit instance, `|A|`-bit program,
/// word size `ρ ≥ 1` and step polynomial `q` (coefficients ascending).
pub fn accessible_info(
    instance_bits: u64,
    algorithm_bits: &BigUint,
    rho: &BigUint,
    poly_coeffs: &[BigUint],
) -> BigUint {
    assert!(!rho.is_zero(), "rho must be >= 1");
    check_poly(poly_coeffs);
    BigUint::from(instance_bits) + algorithm_bits + rho * poly_eval(poly_coeffs, instance_bits)
}

/// Is `sat_content(L) > accessible_info(L, ...)`? Compares bit lengths first
/// so enormous `2^L` values are never materialized away from the boundary.
pub fn content_exceeds(
    instance_bits: u64,
    algorithm_bits: &BigUint,
    rho: &BigUint,
    poly: &[BigUint],
) -> bool {
    let accessible = accessible_info(instance_bits, algorithm_bits, rho, poly);
    let content_bits = 64 - instance_bits.leading_zeros() as u64 + instance_bits; // bitlen(L·2^L)
    let accessible_bits = accessible.bits();
    if content_bits > accessible_bits + 1 {
        return true;
    }
    if content_bits + 1 < accessible_bits {
        return false;
    }
    sat_content(instance_bits) > accessible
}

/// Smallest instance length `L` whose full answer table outweighs what a
/// fixed polynomial-time program can touch: minimal `L ≥ 1` with
/// `sat_content(L) > accessible_info(L, algorithm_bits, rho, q)`.
///
/// For very small `L` the predicate can flicker (the polynomial still beats
/// `L·2^L` locally), so the flicker-prone prefix is scanned linearly; beyond
/// it the predicate is monotone and doubling plus bisection finds the edge.
/// The returned value always satisfies the predicate while its predecessor
/// does not.
pub fn crossover(algorithm_bits: &BigUint, rho: &BigUint, poly_coeffs: &[BigUint]) -> u64 {
    check_poly(poly_coeffs);
    let degree = poly_coeffs.len() as u64 - 1;
    // Monotone once (1 + 1/L)^deg ≤ 2, i.e. L ≥ deg/ln 2; pad generously.
    let scan_end = 2 * degree + 4;
    for l in 1..=scan_end {
        if content_exceeds(l, algorithm_bits, rho, poly_coeffs) {
            return l;
        }
    }
    let mut lo = scan_end; // known false
    let mut hi = scan_end * 2;
    while !content_exceeds(hi, algorithm_bits, rho, poly_coeffs) {
        lo = hi;
        hi *= 2;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if content_exceeds(mid, algorithm_bits, rho, poly_coeffs) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `⌊log2((2^n)!)⌋ + 1` — the bits needed to name one permutation of all
/// `2^n` assignment outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutationInfo {
    /// Exact value (computed for `2^n ≤ 2^20` as the bit length of the
    /// factorial itself, via a product tree).
    Exact(BigUint),
    /// Certified enclosure `[lo, hi]` from two-sided Stirling bounds.
    Bracket { lo: BigUint, hi: BigUint },
}

// Serialized by hand so the big values come out as decimal strings.
impl Serialize for PermutationInfo {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            PermutationInfo::Exact(v) => {
                let mut s = serializer.serialize_struct("PermutationInfo", 1)?;
                s.serialize_field("exact", &v.to_string())?;
                s.end()
            }
            PermutationInfo::Bracket { lo, hi } => {
                let mut s = serializer.serialize_struct("PermutationInfo", 2)?;
                s.serialize_field("lo", &lo.to_string())?;
                s.serialize_field("hi", &hi.to_string())?;
                s.end()
            }
        }
    }
}

impl PermutationInfo {
    /// Lower end of the value (the value itself when exact).
    pub fn low(&self) -> &BigUint {
        match self {
            PermutationInfo::Exact(v) => v,
            PermutationInfo::Bracket { lo, .. } => lo,
        }
    }

    pub fn contains(&self, value: &BigUint) -> bool {
        match self {
            PermutationInfo::Exact(v) => v == value,
            PermutationInfo::Bracket { lo, hi } => lo <= value && value <= hi,
        }
    }
}

/// Product-tree factorial.
fn factorial(n: u64) -> BigUint {
    fn range_product(lo: u64, hi: u64) -> BigUint {
        if lo > hi {
            BigUint::one()
        } else if hi - lo < 8 {
            (lo..=hi).map(BigUint::from).product()
        } else {
            let mid = lo + (hi - lo) / 2;
            range_product(lo, mid) * range_product(mid + 1, hi)
        }
    }
    range_product(2, n)
}

/// A certified rational enclosure of a constant.
struct RationalBracket {
    lo: BigRational,
    hi: BigRational,
}

fn big_rat(num: i64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `ln 2 = 2·atanh(1/3)`: partial sums of the (all-positive) series plus a
/// geometric tail bound.
fn ln2_bracket() -> RationalBracket {
    let mut sum = BigRational::zero();
    let third_sq = big_rat(1, 9);
    let mut power = big_rat(1, 3); // (1/3)^(2t+1)
    let terms = 44u64; // 3^-89 ≈ 2^-141 tail, far below the 2^-96 target
    for t in 0..terms {
        sum += &power / BigInt::from(2 * t + 1);
        power *= &third_sq;
    }
    let ln2_lo = sum.clone() * BigInt::from(2);
    // Tail: 2·Σ_{t≥terms} (1/3)^(2t+1)/(2t+1) < 2/(2·terms+1)·(1/3)^(2·terms+1)·9/8.
    let tail = &power / BigInt::from(2 * terms + 1) * big_rat(9, 4);
    RationalBracket { lo: ln2_lo.clone(), hi: ln2_lo + tail }
}

/// `atan(1/x)` for integer `x ≥ 2` by the alternating series; consecutive
/// partial sums bracket the limit.
fn atan_inv_bracket(x: u64, terms: u64) -> RationalBracket {
    debug_assert!(terms.is_multiple_of(2), "even term count: last kept term is negative");
    let x_sq = BigRational::new(BigInt::one(), BigInt::from(x * x));
    let mut power = BigRational::new(BigInt::one(), BigInt::from(x));
    let mut below = BigRational::zero();
    let mut above = BigRational::zero();
    for t in 0..terms {
        let term = &power / BigInt::from(2 * t + 1);
        if t % 2 == 0 {
            above = &below + &term;
        } else {
            below = &above - &term;
        }
        power *= &x_sq;
    }
    RationalBracket { lo: below, hi: above }
}

/// `log2` of a positive rational, certified, at `frac_bits` of precision,
/// returned as a rational enclosure.
fn log2_rational_bracket(value: &RationalBracket, frac_bits: u32) -> RationalBracket {
    let scale = BigInt::one() << frac_bits;
    let part = |r: &BigRational, want_hi: bool| -> BigRational {
        let (p, q) = (r.numer().magnitude(), r.denom().magnitude());
        let (p_lo, p_hi) = log2_bounds_scaled(p, frac_bits);
        let (q_lo, q_hi) = log2_bounds_scaled(q, frac_bits);
        let scaled = if want_hi {
            BigInt::from_biguint(Sign::Plus, p_hi) - BigInt::from_biguint(Sign::Plus, q_lo)
        } else {
            BigInt::from_biguint(Sign::Plus, p_lo) - BigInt::from_biguint(Sign::Plus, q_hi)
        };
        BigRational::new(scaled, scale.clone())
    };
    RationalBracket {
        lo: part(&value.lo, false),
        hi: part(&value.hi, true),
    }
}

/// Two-sided Stirling enclosure of `⌊log2((2^n)!)⌋ + 1`, valid for any
/// `n ≥ 1`:
///
/// `log2 N! = N·n − N·log2 e + (log2 2π + n)/2 + r·log2 e`,
/// `1/(12N+1) < r < 1/(12N)`, with `N = 2^n` (so `log2 N = n` exactly).
pub fn stirling_permutation_bracket(n: u32) -> (BigUint, BigUint) {
    assert!((1..=1 << 20).contains(&n), "supported range is 1..=2^20");
    let big_n = BigInt::one() << n;

    let ln2 = ln2_bracket();
    // log2 e = 1/ln 2.
    let log2e = RationalBracket {
        lo: ln2.hi.recip(),
        hi: ln2.lo.recip(),
    };
    // π from Machin's formula, then log2(2π) = 1 + log2 π.
    let a5 = atan_inv_bracket(5, 36);
    let a239 = atan_inv_bracket(239, 10);
    let pi = RationalBracket {
        lo: &a5.lo * BigInt::from(16) - &a239.hi * BigInt::from(4),
        hi: &a5.hi * BigInt::from(16) - &a239.lo * BigInt::from(4),
    };
    let log2_pi = log2_rational_bracket(&pi, 96);
    let log2_2pi = RationalBracket {
        lo: log2_pi.lo + BigInt::one(),
        hi: log2_pi.hi + BigInt::one(),
    };

    let n_rat = BigRational::from(BigInt::from(n));
    let big_n_rat = BigRational::from(big_n.clone());
    let twelve_n = BigRational::from(BigInt::from(12) * &big_n);
    let half = big_rat(1, 2);

    let main_lo = &big_n_rat * &n_rat - &big_n_rat * &log2e.hi
        + (&log2_2pi.lo + &n_rat) * &half
        + &log2e.lo / (&twelve_n + BigRational::one());
    let main_hi = &big_n_rat * &n_rat - &big_n_rat * &log2e.lo
        + (&log2_2pi.hi + &n_rat) * &half
        + &log2e.hi / &twelve_n;

    let floor_big = |r: &BigRational| -> BigUint {
        let f = r.floor().to_integer();
        assert!(!f.is_negative(), "Stirling bracket went negative");
        f.magnitude().clone()
    };
    (
        floor_big(&main_lo) + BigUint::one(),
        floor_big(&main_hi) + BigUint::one(),
    )
}

/// `⌊log2((2^n)!)⌋ + 1`: exact for `n ≤ 20` (factorial bit length), a
/// certified Stirling enclosure beyond.
pub fn permutation_info(n: u32) -> PermutationInfo {
    assert!(n >= 1, "permutation_info needs n >= 1");
    if n <= 20 {
        PermutationInfo::Exact(BigUint::from(factorial(1u64 << n).bits()))
    } else {
        let (lo, hi) = stirling_permutation_bracket(n);
        PermutationInfo::Bracket { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::instance::encode_instance;
    use crate::dimacs::parse_dimacs;
    use num_traits::ToPrimitive;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn paper_bit_length_frozen_values() {
        assert_eq!(paper_bit_length(&big(3), &big(12)), big(80));
        assert_eq!(paper_bit_length(&big(1), &big(1)), big(5));
    }

    #[test]
    fn concrete_codec_overhead_is_the_gamma_surcharge() {
        // The self-delimiting field costs 2⌊log2 n⌋+1 bits against the
        // counting argument's ⌊log2 n⌋+1, so the gap is exactly ⌊log2 n⌋.
        for text in [
            "p cnf 1 1\n1 0\n",
            "p cnf 3 12\n1 0\n2 0\n3 0\n1 2 0\n1 3 0\n2 3 0\n-1 0\n-2 0\n-3 0\n-1 -2 0\n-1 -3 0\n-2 -3 0\n",
            "p cnf 6 2\n1 -6 0\n2 0\n",
        ] {
            let inst = parse_dimacs(text).unwrap();
            let n = big(u64::from(inst.num_vars()));
            let m = big(inst.num_clauses() as u64);
            let counted = paper_bit_length(&n, &m).to_u64().unwrap();
            let actual = encode_instance(&inst).unwrap().len() as u64;
            let gap = u64::from(inst.num_vars().ilog2());
            assert_eq!(actual, counted + gap);
            assert!(gap <= 2 * (gap + 1) + 1);
        }
    }

    #[test]
    fn uniform_length_frozen_values() {
        assert_eq!(uniform_length(&big(3), &big(2)), big(37));
        assert_eq!(uniform_length(&big(4), &big(16)), big(196));
        // Non-power-of-two K uses the bit width of values bounded by K.
        assert_eq!(uniform_length(&big(3), &big(5)), big(3 * (12 * 3 + 1)));
    }

    #[test]
    fn uniform_length_is_monotone() {
        for n in 3..20u64 {
            for k in 2..40u64 {
                let here = uniform_length(&big(n), &big(k));
                assert!(uniform_length(&big(n + 1), &big(k)) > here);
                assert!(uniform_length(&big(n), &big(k + 1)) >= here);
                assert!(uniform_length(&big(n), &big(2 * k)) > here);
            }
        }
    }

    #[test]
    fn logarithmic_length_frozen_values() {
        assert_eq!(logarithmic_length(&big(4)), big(195));
        assert_eq!(logarithmic_length(&big(8)), big(484));
    }

    #[test]
    fn certified_log2_agrees_with_f64() {
        for x in [3u64, 5, 6, 7, 9, 100, 1023, 1025, 999_983] {
            let (lo, hi) = log2_bounds_scaled(&big(x), 64);
            let scale = 2f64.powi(64);
            let lo_f = lo.to_f64().unwrap() / scale;
            let hi_f = hi.to_f64().unwrap() / scale;
            let truth = (x as f64).log2();
            assert!(lo_f <= truth + 1e-12 && truth <= hi_f + 1e-12, "x = {x}");
            assert!(hi_f - lo_f < 1e-15, "bracket too wide for x = {x}");
        }
    }

    #[test]
    fn floor_mul_log2_matches_f64_away_from_ties() {
        for (a, x) in [(15u64, 3u64), (7, 10), (1000, 999), (1, 2), (12, 4096), (5, 7)] {
            let got = floor_mul_log2(&big(a), &big(x)).to_f64().unwrap();
            let real = a as f64 * (x as f64).log2();
            let frac = real - real.floor();
            if (0.001..0.999).contains(&frac) {
                assert_eq!(got, real.floor(), "a={a} x={x}");
            } else {
                assert!((got - real.floor()).abs() <= 1.0, "a={a} x={x}");
            }
        }
    }

    #[test]
    fn bound15_is_exact_at_powers_of_two() {
        assert_eq!(bound15(&big(1 << 24)), big(15 * (1u64 << 24) * 24));
        assert_eq!(bound15(&big(1 << 25)), big(15 * (1u64 << 25) * 25));
    }

    #[test]
    fn bound15_oscillates_then_stabilizes_at_257() {
        // Exact checks at the boundary the scan must find.
        assert!(bound15_holds(&big(255)));
        assert!(!bound15_holds(&big(256)));
        assert!(bound15_holds(&big(257)));
        assert_eq!(smallest_stable_bound15_n(4096), Some(257));
    }

    #[test]
    fn bound15_holds_at_large_n() {
        for n in [big(1u64 << 24), big(1u64 << 25), big((1u64 << 24) + 12345)] {
            assert!(bound15_holds(&n), "failed at {n}");
        }
    }

    #[test]
    fn info_production_frozen_values_and_superlinearity() {
        assert_eq!(info_production(&big(2)), big(2));
        assert_eq!(info_production(&big(1024)), big(10240));
        for t in 2..200u64 {
            let double = info_production(&big(2 * t));
            let single = info_production(&big(t));
            assert!(double > &single * 2u32, "T = {t}");
            assert!(info_production(&big(t + 1)) > single);
        }
    }

    #[test]
    fn sat_content_frozen_values() {
        assert_eq!(sat_content(1), big(2));
        assert_eq!(sat_content(10), big(10240));
    }

    #[test]
    fn accessible_info_example() {
        // L=10, |A|=100, ρ=8, q(x)=x²: 10 + 100 + 8·100 = 910.
        assert_eq!(
            accessible_info(10, &big(100), &big(8), &[big(0), big(0), big(1)]),
            big(910)
        );
    }

    #[test]
    fn crossover_is_minimal() {
        let poly = [big(0), big(0), big(0), big(1)]; // q(x) = x³
        let at = crossover(&big(1000), &big(64), &poly);
        assert!(content_exceeds(at, &big(1000), &big(64), &poly));
        assert!(!content_exceeds(at - 1, &big(1000), &big(64), &poly));
        // Independent linear scan from 1.
        let scanned = (1..).find(|&l| content_exceeds(l, &big(1000), &big(64), &poly)).unwrap();
        assert_eq!(at, scanned);
    }

    #[test]
    fn crossover_handles_huge_budgets_without_materializing_tables() {
        // accessible ≈ 2^1000; crossover must land near L ≈ 1010 quickly.
        let huge = BigUint::one() << 1000;
        let at = crossover(&huge, &big(1), &[big(1)]);
        assert!((990..1020).contains(&at));
        assert!(content_exceeds(at, &huge, &big(1), &[big(1)]));
        assert!(!content_exceeds(at - 1, &huge, &big(1), &[big(1)]));
    }

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(1), big(1));
        assert_eq!(factorial(10), big(3_628_800));
    }

    #[test]
    fn permutation_info_frozen_values() {
        assert_eq!(permutation_info(1), PermutationInfo::Exact(big(2))); // 2! = 2
        assert_eq!(permutation_info(2), PermutationInfo::Exact(big(5))); // 4! = 24
    }

    #[test]
    fn stirling_bracket_contains_the_exact_value() {
        for n in 1..=14u32 {
            let exact = big(factorial(1u64 << n).bits());
            let (lo, hi) = stirling_permutation_bracket(n);
            assert!(lo <= exact && exact <= hi, "n = {n}: {exact} not in [{lo}, {hi}]");
            assert!(&hi - &lo <= big(2), "bracket at n = {n} is loose: [{lo}, {hi}]");
        }
    }

    #[test]
    fn bracket_mode_engages_past_n_20() {
        match permutation_info(24) {
            PermutationInfo::Bracket { lo, hi } => {
                assert!(lo <= hi);
                // log2(N!) ≈ N(n − log2 e) for N = 2^24: about 2^24·22.56.
                let ballpark = big((16_777_216f64 * 22.55) as u64);
                assert!(lo > ballpark);
            }
            other => panic!("expected a bracket, got {other:?}"),
        }
    }

    #[test]
    fn constant_brackets_are_tight_and_correct() {
        let ln2 = ln2_bracket();
        let lo = ln2.lo.to_f64().unwrap();
        let hi = ln2.hi.to_f64().unwrap();
        assert!(lo <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= hi);
        assert!(hi - lo < 1e-30);

        // Compare against f64 atan with slack: 0.2 is not exactly
        // representable, so (0.2f64).atan() sits about one ulp away from
        // the bracketed atan(1/5).
        let a5 = atan_inv_bracket(5, 36);
        assert!(a5.lo < a5.hi);
        let mid = (a5.lo.to_f64().unwrap() + a5.hi.to_f64().unwrap()) / 2.0;
        assert!((mid - (0.2f64).atan()).abs() < 1e-15);
    }
}
