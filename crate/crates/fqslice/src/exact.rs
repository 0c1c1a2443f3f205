//! Exact rational arithmetic helpers: enclosures of irrational values with
//! directed rounding, and exact comparisons of `a*sqrt(q)` against
//! rationals by squaring.
//!
//! Quantities like sqrt(q) and d^(13/3) are carried as rational enclosures
//! `[lo, hi]` refined to 50 bits of relative precision. Interval endpoints
//! derived from them are then rounded in whichever direction keeps the
//! stated claim sound. Comparisons that decide a regime or a threshold
//! never go through the enclosure: they are done in exact integer
//! arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Relative precision of refined enclosures.
const PRECISION_BITS: usize = 50;

/// A closed rational interval guaranteed to contain one real value.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(v: BigRational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn from_int(v: i64) -> Self {
        Self::point(BigRational::from_integer(v.into()))
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        Enclosure {
            lo: candidates.iter().min().unwrap().clone(),
            hi: candidates.iter().max().unwrap().clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Enclosure {
        self.mul(&Enclosure::point(c.clone()))
    }

    /// Square root enclosure; exact point when the input is a perfect
    /// square of rationals.
    pub fn sqrt(v: &BigRational) -> Enclosure {
        nth_root(v, 2)
    }

    /// Square root of an enclosure of a nonnegative value.
    pub fn sqrt_of(&self) -> Enclosure {
        let lo = nth_root(&self.lo, 2).lo;
        let hi = nth_root(&self.hi, 2).hi;
        Enclosure { lo, hi }
    }

    /// d^(13/3) as the cube root of d^13.
    pub fn d_13_3(d: u32) -> Enclosure {
        let d13 = BigRational::from_integer(BigInt::from(d).pow(13));
        nth_root(&d13, 3)
    }

    /// q^(n - 3/2) = q^(n-2) * sqrt(q).
    pub fn q_pow_minus_3_2(q: u64, n: u32) -> Enclosure {
        let qn2 = BigRational::from_integer(BigInt::from(q).pow(n - 2));
        Enclosure::sqrt(&BigRational::from_integer(q.into())).scale(&qn2)
    }
}

/// Enclosure of the k-th root of a nonnegative rational, refined to
/// [`PRECISION_BITS`] relative precision; exact for perfect powers.
pub fn nth_root(v: &BigRational, k: u32) -> Enclosure {
    nth_root_bits(v, k, PRECISION_BITS)
}

/// As [`nth_root`] with an explicit precision, used to re-check stored
/// endpoints at higher precision.
pub fn nth_root_bits(v: &BigRational, k: u32, bits: usize) -> Enclosure {
    assert!(!v.is_negative(), "nth_root of a negative rational");
    if v.is_zero() {
        return Enclosure::point(BigRational::zero());
    }
    // Perfect-power detection on the reduced fraction.
    let num = v.numer().to_biguint().expect("nonnegative");
    let den = v.denom().to_biguint().expect("positive");
    let num_root = num.nth_root(k);
    let den_root = den.nth_root(k);
    if num_root.pow(k) == num && den_root.pow(k) == den {
        return Enclosure::point(BigRational::new(num_root.into(), den_root.into()));
    }
    // Scaled floor root: r = floor((v * 2^(k*bits))^(1/k)) gives the
    // width-2^(-bits) enclosure [r, r+1] / 2^bits.
    let scaled = (num << (k as usize * bits)) / den;
    let r = scaled.nth_root(k);
    let denom: BigInt = BigInt::one() << bits;
    Enclosure {
        lo: BigRational::new(r.clone().into(), denom.clone()),
        hi: BigRational::new((r + BigUint::one()).into(), denom),
    }
}

/// Exact comparison of a*sqrt(q) with b, by sign analysis and squaring.
pub fn cmp_mul_sqrt(a: &BigRational, q: u64, b: &BigRational) -> Ordering {
    let sq = BigRational::from_integer(q.into());
    // Perfect squares stay rational.
    let root = BigUint::from(q).sqrt();
    if &root * &root == BigUint::from(q) {
        let exact = a * BigRational::from_integer(root.into());
        return exact.cmp(b);
    }
    let sa = if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    };
    let sb = if b.is_zero() {
        0
    } else if b.is_positive() {
        1
    } else {
        -1
    };
    match (sa, sb) {
        (0, _) => BigRational::zero().cmp(b),
        (1, s) if s <= 0 => Ordering::Greater,
        (-1, s) if s >= 0 => Ordering::Less,
        (1, 1) => (a * a * sq).cmp(&(b * b)),
        (-1, -1) => (b * b).cmp(&(a * a * sq)),
        _ => unreachable!(),
    }
}

/// Exact truth of `a*sqrt(q) + c <= b` (strict when `strict`).
pub fn sqrt_combo_le(
    a: &BigRational,
    q: u64,
    c: &BigRational,
    b: &BigRational,
    strict: bool,
) -> bool {
    let rhs = b - c;
    match cmp_mul_sqrt(a, q, &rhs) {
        Ordering::Less => true,
        Ordering::Equal => !strict,
        Ordering::Greater => false,
    }
}

/// Exact comparison of q^3 with c^3 * d^13, deciding q vs c * d^(13/3).
pub fn cmp_q_vs_c_d_13_3(q: u64, c: u32, d: u32) -> Ordering {
    let lhs = BigUint::from(q).pow(3);
    let rhs = BigUint::from(c).pow(3) * BigUint::from(d).pow(13);
    lhs.cmp(&rhs)
}

pub fn big(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn big_u(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// q^e as an exact rational.
pub fn q_pow(q: u64, e: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(q).pow(e))
}

/// Decimal rendering with directed rounding. `round_up` selects the
/// ceiling at the last kept digit, otherwise the floor.
pub fn decimal_directed(v: &BigRational, digits: u32, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = v * BigRational::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let (quot, rem) = num.div_rem(&den);
    let adjusted = if rem.is_zero() {
        quot
    } else if round_up && !num.is_negative() {
        quot + 1
    } else if !round_up && num.is_negative() {
        quot - 1
    } else {
        quot
    };
    // Format adjusted / 10^digits.
    let negative = adjusted.is_negative();
    let mag = adjusted.abs().to_string();
    let mag = if mag.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = mag.split_at(mag.len() - digits as usize);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if digits > 0 {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// Plain rational rendering "p/q" (or "p" for integers).
pub fn rational_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Lossy f64 view, for report decoration only.
pub fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parse "p/q" or a decimal string into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() {
            return Some(BigRational::from_integer(int_part));
        }
        let frac_digits: BigInt = frac.parse().ok()?;
        if frac_digits.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_rat = BigRational::new(frac_digits, scale);
        let int_rat = BigRational::from_integer(int_part);
        Some(if negative { int_rat - frac_rat } else { int_rat + frac_rat })
    } else {
        let n: BigInt = text.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_enclosure_brackets_truth() {
        for q in [2u64, 3, 5, 17, 23, 97, 101] {
            let e = Enclosure::sqrt(&big_u(q));
            assert!(&e.lo * &e.lo <= big_u(q));
            assert!(&e.hi * &e.hi >= big_u(q));
            let width = &e.hi - &e.lo;
            assert!(width < ratio(1, 1 << 40));
        }
    }

    #[test]
    fn perfect_powers_collapse_to_points() {
        assert!(Enclosure::sqrt(&big(25)).is_point());
        assert_eq!(Enclosure::sqrt(&big(25)).lo, big(5));
        assert!(nth_root(&big(27), 3).is_point());
        assert_eq!(nth_root(&big(27), 3).lo, big(3));
        // 8^13 = 2^39, so 8^(13/3) is exactly 2^13.
        assert!(Enclosure::d_13_3(8).is_point());
        assert_eq!(Enclosure::d_13_3(8).lo, big(8192));
        assert!(Enclosure::d_13_3(1).is_point());
        assert_eq!(Enclosure::d_13_3(1).lo, big(1));
    }

    #[test]
    fn cmp_mul_sqrt_exact_cases() {
        // 4*sqrt(23) + 5 vs 23: 4*sqrt(23) ~ 19.18 > 18.
        assert_eq!(cmp_mul_sqrt(&big(4), 23, &big(18)), Ordering::Greater);
        // 4*sqrt(25) = 20 exactly.
        assert_eq!(cmp_mul_sqrt(&big(4), 25, &big(20)), Ordering::Equal);
        // Negative coefficient.
        assert_eq!(cmp_mul_sqrt(&big(-2), 17, &big(0)), Ordering::Less);
        assert_eq!(cmp_mul_sqrt(&big(-2), 17, &big(-9)), Ordering::Greater);
        assert_eq!(cmp_mul_sqrt(&big(0), 17, &big(0)), Ordering::Equal);
    }

    #[test]
    fn fractional_power_comparison() {
        // 100^3 = 1e6 < 125 * 2^13 = 1_024_000 < 101^3.
        assert_eq!(cmp_q_vs_c_d_13_3(100, 5, 2), Ordering::Less);
        assert_eq!(cmp_q_vs_c_d_13_3(101, 5, 2), Ordering::Greater);
    }

    #[test]
    fn decimal_rendering_is_directed() {
        let v = ratio(1, 3);
        assert_eq!(decimal_directed(&v, 4, false), "0.3333");
        assert_eq!(decimal_directed(&v, 4, true), "0.3334");
        let neg = ratio(-1, 3);
        assert_eq!(decimal_directed(&neg, 4, false), "-0.3334");
        assert_eq!(decimal_directed(&neg, 4, true), "-0.3333");
        assert_eq!(decimal_directed(&big(2), 2, true), "2.00");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("9").unwrap(), big(9));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }
}
