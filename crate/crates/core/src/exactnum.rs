//! Exact integer and rational arithmetic used by every counting formula.
//!
//! Counts are [`Natural`] (unbounded non-negative integers) and expectations
//! are [`Rational`] (always in lowest terms with a positive denominator).
//! Floating point never enters a computation; [`render_decimal`] is the only
//! place a value is turned into a decimal string.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Arbitrary-precision rational, normalized on construction.
pub type Rational = BigRational;

/// Largest number of decimal places [`render_decimal`] accepts.
pub const MAX_PLACES: usize = 50;

/// `n` choose `k`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Natural {
    if k < 0 || k as u64 > n {
        return Natural::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Natural::one();
    // acc * (n - i) is always divisible by (i + 1) after the multiplication.
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `base^exp` as a [`Natural`], with `0^0 = 1`.
pub fn pow(base: u64, exp: u64) -> Natural {
    num_traits::pow::Pow::pow(Natural::from(base), exp)
}

/// The Möbius function, by trial-division factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::InvalidArgument("mobius is undefined at 0".into()));
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisors of 0 are unbounded".into()));
    }
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d != n / d {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    Ok(low)
}

/// Builds `num / den` as a normalized rational.
pub fn ratio(num: Natural, den: Natural) -> Rational {
    Rational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, den),
    )
}

/// Renders `x` with exactly `places` fractional digits, rounding half away
/// from zero. Exact values keep their trailing zeros (`4` renders as `4.00`).
pub fn render_decimal(x: &Rational, places: usize) -> Result<String> {
    if places > MAX_PLACES {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_PLACES} decimal places, got {places}"
        )));
    }
    let scale = num_traits::pow::Pow::pow(BigInt::from(10u32), places);
    let scaled = x.numer().abs() * &scale;
    let den = x.denom();
    let (mut q, r) = scaled.div_rem(den);
    if r * 2u32 >= *den {
        q += 1u32;
    }
    let digits = q.to_string();
    let (int_part, frac_part) = if places == 0 {
        (digits, String::new())
    } else if digits.len() <= places {
        ("0".to_string(), format!("{digits:0>places$}"))
    } else {
        let (i, f) = digits.split_at(digits.len() - places);
        (i.to_string(), f.to_string())
    };
    let negative = x.is_negative() && !q.is_zero();
    let mut out = String::with_capacity(int_part.len() + frac_part.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(&int_part);
    if places > 0 {
        out.push('.');
        out.push_str(&frac_part);
    }
    Ok(out)
}
