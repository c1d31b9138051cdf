//! Arbitrary-precision integer and rational primitives.
//!
//! Everything here is exact; no floating point enters any computation path.
//! The two binomial routines deliberately share no code: `binomial` uses the
//! multiplicative product formula, `binomial_oracle` the additive Pascal
//! recurrence, so one can certify the other.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on `n` for the Pascal-recurrence oracle.
pub const ORACLE_CAP: u64 = 20_000;

/// C(n, k) by the multiplicative product formula.
///
/// At step i the partial product equals C(n-k+i, i), so the division by i
/// is exact and intermediates never exceed the result. k > n yields 0.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        acc /= BigUint::from(i);
    }
    acc
}

/// C(n, k) by row-by-row Pascal accumulation, C(n,k) = C(n-1,k-1) + C(n-1,k).
///
/// Independent verification path for [`binomial`]; refuses n beyond `cap`.
pub fn binomial_oracle_capped(n: u64, k: u64, cap: u64) -> Result<BigUint> {
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if k > n {
        return Ok(BigUint::zero());
    }
    let k = k as usize;
    let mut row = vec![BigUint::one()];
    for _ in 1..=n {
        let width = row.len().min(k) + 1;
        let mut next = Vec::with_capacity(width);
        next.push(BigUint::one());
        for j in 1..width {
            let left = &row[j - 1];
            let right = row.get(j).cloned().unwrap_or_else(BigUint::zero);
            next.push(left + right);
        }
        row = next;
    }
    Ok(row.into_iter().nth(k).unwrap_or_else(BigUint::zero))
}

pub fn binomial_oracle(n: u64, k: u64) -> Result<BigUint> {
    binomial_oracle_capped(n, k, ORACLE_CAP)
}

/// Canonical lowest-terms fraction with positive denominator.
pub fn reduce(num: &BigInt, den: &BigInt) -> Result<BigRational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num.clone(), den.clone()))
}

pub fn floor_rat(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_rat(q: &BigRational) -> BigInt {
    q.ceil().to_integer()
}

/// Scientific rendering "D.DD…eE" with exactly `sig_digits` significant
/// digits, round-half-away-from-zero on the last digit. Zero renders as "0".
pub fn sci_string(n: &BigUint, sig_digits: usize) -> String {
    assert!(sig_digits >= 1, "sig_digits must be at least 1");
    if n.is_zero() {
        return "0".to_string();
    }
    let digits = n.to_str_radix(10);
    let mut exponent = digits.len() as i64 - 1;
    let mut mantissa: Vec<u8> = if digits.len() <= sig_digits {
        let mut m: Vec<u8> = digits.bytes().map(|b| b - b'0').collect();
        m.resize(sig_digits, 0);
        m
    } else {
        let mut m: Vec<u8> = digits[..sig_digits].bytes().map(|b| b - b'0').collect();
        // n is non-negative, so half-away-from-zero is round-half-up here.
        if digits.as_bytes()[sig_digits] - b'0' >= 5 {
            let mut i = sig_digits;
            loop {
                if i == 0 {
                    m.insert(0, 1);
                    m.pop();
                    exponent += 1;
                    break;
                }
                i -= 1;
                if m[i] == 9 {
                    m[i] = 0;
                } else {
                    m[i] += 1;
                    break;
                }
            }
        }
        m
    };
    let head = mantissa.remove(0);
    let tail: String = mantissa.iter().map(|d| (d + b'0') as char).collect();
    if tail.is_empty() {
        format!("{head}e{exponent}")
    } else {
        format!("{head}.{tail}e{exponent}")
    }
}

/// Log-magnitude estimate, presentation only (digit count of |n|).
pub fn decimal_digits(n: &BigUint) -> usize {
    if n.is_zero() {
        1
    } else {
        n.to_str_radix(10).len()
    }
}

/// Renders a rational as "num/den" in lowest terms.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses "D", "D/R" or "-D/R" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let mk = |what: &'static str, s: &str| Error::Parse {
        what,
        detail: s.to_string(),
    };
    match s.split_once('/') {
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| mk("integer", s))?;
            Ok(BigRational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk("numerator", num))?;
            let d: BigInt = den.trim().parse().map_err(|_| mk("denominator", den))?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Sign-aware conversion BigInt -> BigUint; errors on negative input.
pub fn to_nat(n: &BigInt) -> Result<BigUint> {
    if n.is_negative() {
        return Err(Error::Overflow(format!("expected non-negative, got {n}")));
    }
    Ok(n.magnitude().clone())
}
