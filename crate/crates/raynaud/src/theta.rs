//! The fine-tuned construction at slope g-1: the stable triple's numerical
//! data, the invariants of S_{R,m}(M0), the thresholds w and u, the slope
//! decomposition -a/(Rm+b) with its minimal-m solver, and the invariants of
//! the dual bundle R^r(M0).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, ceil_rat, reduce};
use crate::general::{canonical_r, BundleInvariants};

/// Invariants of the defining triple 0 -> M1 -> M0 -> F -> 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleInvariants {
    pub f: BundleInvariants,
    pub m0: BundleInvariants,
    pub m1: BundleInvariants,
}

fn check_params(g: u32, level: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    if level < 2 {
        return Err(Error::LevelTooSmall { min: 2, got: level });
    }
    Ok(())
}

/// v = (R+1)(R-1)(g-1) + R, the dimension of Hom(M1, M0).
pub fn theta_hom_dimension(g: u32, level: u32) -> Result<u64> {
    check_params(g, level)?;
    let (g, r) = (g as u64, level as u64);
    Ok((r + 1) * (r - 1) * (g - 1) + r)
}

/// deg(M0) = deg(M1) = (R+1)(1-g) - 1.
fn m0_degree(g: u32, level: u32) -> BigInt {
    BigInt::from(level as i64 + 1) * BigInt::from(1 - g as i64) - 1
}

pub fn triple_invariants(g: u32, level: u32) -> Result<TripleInvariants> {
    check_params(g, level)?;
    let d = m0_degree(g, level);
    let f = BundleInvariants::new(BigUint::from(level), BigInt::zero())?;
    let m0 = BundleInvariants::new(BigUint::from(level + 1), d.clone())?;
    let m1 = BundleInvariants::new(BigUint::one(), d)?;
    Ok(TripleInvariants { f, m0, m1 })
}

/// Invariants of S_{R,m}(M0); integer-safe regrouping of the displayed
/// (m+1)-denominator forms.
pub fn theta_s_invariants(g: u32, level: u32, m: u64) -> Result<BundleInvariants> {
    let v = theta_hom_dimension(g, level)?;
    let d = m0_degree(g, level);
    let big = BigInt::from(binomial(v + m, m + 1));
    let small = BigInt::from(binomial(v + m - 1, m));
    let rank = BigInt::from(level as u64 + 1) * &big - &small;
    let degree = d * (big - small);
    BundleInvariants::new(rank.magnitude().clone(), degree)
}

/// Slope of S_{R,m}(M0) without binomials: D(v-1)/(Rv + Rm + v - 1).
pub fn theta_s_slope(g: u32, level: u32, m: u64) -> Result<BigRational> {
    let v = theta_hom_dimension(g, level)?;
    let d = m0_degree(g, level);
    let numer = d * BigInt::from(v - 1);
    let denom = BigInt::from(level as u64 * (v + m) + v - 1);
    reduce(&numer, &denom)
}

/// w = (v-1)(r(R+1)(g-1) + r - 1), the exponent defining S_R^r(M0).
pub fn theta_w(g: u32, level: u32, r: u64) -> Result<u64> {
    let v = theta_hom_dimension(g, level)?;
    let (gg, rr) = (g as u64, level as u64);
    Ok((v - 1) * (r * (rr + 1) * (gg - 1) + r - 1))
}

/// u = ceil((r+1)^2 / 4), the canonical theta level for the mu = g-1 case.
pub fn theta_u(r: u64) -> u64 {
    canonical_r(r)
}

/// Invariants of R^r(M0) = (S^r_u(M0))^dual.
pub fn theta_raynaud_invariants(g: u32, r: u64) -> Result<BundleInvariants> {
    let level = theta_u(r);
    if level < 2 {
        return Err(Error::LevelTooSmall {
            min: 2,
            got: level as u32,
        });
    }
    let level = level
        .to_u32()
        .ok_or_else(|| Error::Overflow(format!("level {level} exceeds u32")))?;
    let m = theta_w(g, level, r)?;
    Ok(theta_s_invariants(g, level, m)?.dual())
}

/// The positive integers (a, b) with mu(S_{R,m}(M0)) = -a/(Rm+b).
pub fn cor3_decomposition(g: u32, level: u32) -> Result<(BigUint, BigUint)> {
    let v = theta_hom_dimension(g, level)?;
    let (gg, rr) = (g as u64, level as u64);
    let a = ((rr + 1) * (gg - 1) + 1) * (v - 1);
    let b = v * (rr + 1) - 1;
    Ok((BigUint::from(a), BigUint::from(b)))
}

/// The exact threshold (R-1) + (R-g)/(R(g-1)) and the least integer m with
/// mu(S_{R,m}(M0)) >= 1-g (the inequality is non-strict on both sides).
pub fn cor3_min_m(g: u32, level: u32) -> Result<(BigRational, u64)> {
    check_params(g, level)?;
    let (gg, rr) = (g as i64, level as i64);
    let threshold = BigRational::from_integer(BigInt::from(rr - 1))
        + BigRational::new(BigInt::from(rr - gg), BigInt::from(rr * (gg - 1)));
    let m_min = ceil_rat(&threshold).max(BigInt::zero());
    let m_min = m_min.to_u64().expect("threshold is at most R");

    // internal certification of the boundary
    let floor = BigRational::from_integer(BigInt::from(1 - gg));
    debug_assert!(theta_s_slope(g, level, m_min)? >= floor);
    if m_min >= 1 {
        debug_assert!(theta_s_slope(g, level, m_min - 1)? < floor);
    }
    Ok((threshold, m_min))
}
