//! Numerical side of the general construction: the Hom-space dimension v,
//! the invariants of M1, M0 and S_{mu,R,m}, the exponent threshold m*, the
//! canonical level, slope normalization and the final dual-bundle invariants.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, floor_rat, reduce};

/// A slope d/r in lowest terms, r >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSpec {
    d: BigInt,
    r: BigInt,
}

impl SlopeSpec {
    pub fn new(d: BigInt, r: BigInt) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let q = BigRational::new(d, r);
        Ok(Self::from_rational(&q))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        SlopeSpec {
            d: q.numer().clone(),
            r: q.denom().clone(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.d
    }

    pub fn denominator(&self) -> &BigInt {
        &self.r
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new_raw(self.d.clone(), self.r.clone())
    }
}

impl std::fmt::Display for SlopeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.d, self.r)
    }
}

/// Exact (rank, degree, slope) of a bundle; slope == degree/rank reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: BigUint,
    pub degree: BigInt,
    pub slope: BigRational,
}

impl BundleInvariants {
    pub fn new(rank: BigUint, degree: BigInt) -> Result<Self> {
        if rank.is_zero() {
            return Err(Error::ZeroRank);
        }
        let slope = reduce(&degree, &BigInt::from(rank.clone()))?;
        Ok(BundleInvariants { rank, degree, slope })
    }

    /// Tensor by a line bundle of degree `t_deg`: degree shifts by rank * t_deg.
    pub fn twist(&self, t_deg: &BigInt) -> Self {
        let degree = &self.degree + BigInt::from(self.rank.clone()) * t_deg;
        BundleInvariants::new(self.rank.clone(), degree).expect("rank unchanged")
    }

    /// Dual bundle: same rank, negated degree and slope.
    pub fn dual(&self) -> Self {
        BundleInvariants {
            rank: self.rank.clone(),
            degree: -&self.degree,
            slope: -&self.slope,
        }
    }
}

/// Slope-in-m decomposition mu(S) = base - a/(m+b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeDecomposition {
    pub base: BigRational,
    pub a: BigRational,
    pub b: BigRational,
}

impl SlopeDecomposition {
    pub fn at(&self, m: u64) -> BigRational {
        &self.base - &self.a / (&self.b + BigRational::from_integer(BigInt::from(m)))
    }
}

fn check_genus(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    Ok(())
}

/// mu must lie in [-g-1, -g).
fn check_slope_range(g: u32, mu: &SlopeSpec) -> Result<()> {
    let q = mu.to_rational();
    let lo = BigRational::from_integer(BigInt::from(-(g as i64) - 1));
    let hi = BigRational::from_integer(BigInt::from(-(g as i64)));
    if q < lo || q >= hi {
        return Err(Error::SlopeOutOfRange(q, g));
    }
    Ok(())
}

/// rR(g-1-mu) = rR(g-1) - Rd, the (integral) twist exponent of M1.
fn m1_degree_magnitude(g: u32, mu: &SlopeSpec, level: u32) -> BigInt {
    let big_r = BigInt::from(level);
    mu.denominator() * &big_r * BigInt::from(g as i64 - 1) - mu.numerator() * &big_r
}

fn r_times_level(mu: &SlopeSpec, level: u32) -> BigInt {
    mu.denominator() * BigInt::from(level)
}

/// g - 1 - mu as an exact rational.
fn slope_gap(g: u32, mu: &SlopeSpec) -> BigRational {
    BigRational::from_integer(BigInt::from(g as i64 - 1)) - mu.to_rational()
}

/// v = (rR+1)(1 - g + rR(g-1-mu)), the dimension of Hom(M1, M0).
pub fn hom_dimension_v(g: u32, mu: &SlopeSpec, level: u32) -> Result<BigInt> {
    check_genus(g)?;
    check_slope_range(g, mu)?;
    let rr = r_times_level(mu, level);
    let c = m1_degree_magnitude(g, mu, level);
    Ok((rr + 1) * (BigInt::from(1 - g as i64) + c))
}

/// Invariants of M1 = L_{-1}^{rR(g-1-mu)} (rank 1) and M0 = O^{rR+1}.
pub fn m1_m0_invariants(
    g: u32,
    mu: &SlopeSpec,
    level: u32,
) -> Result<(BundleInvariants, BundleInvariants)> {
    check_genus(g)?;
    check_slope_range(g, mu)?;
    let c = m1_degree_magnitude(g, mu, level);
    let m1 = BundleInvariants::new(BigUint::one(), -c)?;
    let rank0 = (r_times_level(mu, level) + 1u32).to_biguint().unwrap();
    let m0 = BundleInvariants::new(rank0, BigInt::zero())?;
    Ok((m1, m0))
}

fn v_as_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Overflow(format!("v = {v} exceeds u64")))
}

/// Invariants of S_{mu,R,m}.
///
/// The rank is evaluated as (rR+1) C(v+m, m+1) - C(v+m-1, m) so every
/// intermediate is an integer.
pub fn s_invariants(g: u32, mu: &SlopeSpec, level: u32, m: u64) -> Result<BundleInvariants> {
    let v = v_as_u64(&hom_dimension_v(g, mu, level)?)?;
    let rr = r_times_level(mu, level);
    let c = m1_degree_magnitude(g, mu, level);
    let big = BigInt::from(binomial(v + m, m + 1));
    let small = BigInt::from(binomial(v + m - 1, m));
    let rank: BigInt = (rr + 1) * big - &small;
    let degree = small * c;
    BundleInvariants::new(rank.magnitude().clone(), degree)
}

/// Slope of S_{mu,R,m} by the quotient form
/// (m+1) rR (g-1-mu) / ((m+1) rR + (v-1)(rR+1)), binomial-free.
pub fn s_slope(g: u32, mu: &SlopeSpec, level: u32, m: u64) -> Result<BigRational> {
    let v = hom_dimension_v(g, mu, level)?;
    let rr = r_times_level(mu, level);
    let c = m1_degree_magnitude(g, mu, level);
    let m1 = BigInt::from(m) + 1;
    let numer = &m1 * c;
    let denom = &m1 * &rr + (v - 1) * (rr + 1);
    reduce(&numer, &denom)
}

/// base, a, b with mu(S_{mu,R,m}) = base - a/(m+b) for all m >= 0.
pub fn slope_decomposition(g: u32, mu: &SlopeSpec, level: u32) -> Result<SlopeDecomposition> {
    let v = hom_dimension_v(g, mu, level)?;
    let rr = BigRational::from_integer(r_times_level(mu, level));
    let vm1 = BigRational::from_integer(v - 1);
    let rr1 = &rr + BigRational::one();
    let gap = slope_gap(g, mu);
    let a = &vm1 * &rr1 * &gap / &rr;
    let b = &vm1 * &rr1 / &rr + BigRational::one();
    Ok(SlopeDecomposition { base: gap, a, b })
}

fn check_multiple(mu: &SlopeSpec, rk: u64) -> Result<()> {
    if (BigInt::from(rk) % mu.denominator()).is_zero() {
        Ok(())
    } else {
        Err(Error::RankNotMultiple {
            rk,
            r: mu.denominator().clone(),
        })
    }
}

/// m* = (v-1)(rk (g-1-mu)(rR+1) - 1), the exponent defining S^rk_{mu,R}.
pub fn threshold_m_star(g: u32, mu: &SlopeSpec, level: u32, rk: u64) -> Result<u64> {
    check_multiple(mu, rk)?;
    let v = hom_dimension_v(g, mu, level)?;
    let rr1 = r_times_level(mu, level) + 1;
    let inner = BigRational::from_integer(BigInt::from(rk)) * slope_gap(g, mu)
        * BigRational::from_integer(rr1)
        - BigRational::one();
    debug_assert!(inner.is_integer());
    let m_star: BigInt = (v - 1) * inner.to_integer();
    m_star
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("m* = {m_star} exceeds u64")))
}

/// The canonical theta level ceil((rk+1)^2 / 4).
pub fn canonical_r(rk: u64) -> u64 {
    ((rk + 1) * (rk + 1) + 3) / 4
}

/// Shifts an arbitrary slope into [-g-1, -g): returns (t, mu - t) with
/// t = floor(mu) + 1 + g.
pub fn normalize_slope(mu_any: &BigRational, g: u32) -> (BigInt, SlopeSpec) {
    let t: BigInt = floor_rat(mu_any) + 1 + BigInt::from(g);
    let shifted = mu_any - BigRational::from_integer(t.clone());
    (t, SlopeSpec::from_rational(&shifted))
}

/// The full normalization/threshold/twist/dual chain behind R^rk_mu.
#[derive(Debug, Clone)]
pub struct RaynaudChain {
    pub t: BigInt,
    pub mu_norm: SlopeSpec,
    pub level: u64,
    pub m_star: u64,
}

pub fn raynaud_chain(g: u32, mu_any: &BigRational, rk: u64) -> Result<RaynaudChain> {
    check_genus(g)?;
    if rk == 0 {
        return Err(Error::ZeroRank);
    }
    let (t, mu_norm) = normalize_slope(mu_any, g);
    check_multiple(&mu_norm, rk)?;
    let level = canonical_r(rk);
    let level32 = level
        .to_u32()
        .ok_or_else(|| Error::Overflow(format!("level {level} exceeds u32")))?;
    let m_star = threshold_m_star(g, &mu_norm, level32, rk)?;
    Ok(RaynaudChain {
        t,
        mu_norm,
        level,
        m_star,
    })
}

/// Invariants of R^rk_mu: the dual of the twisted S^rk bundle.
pub fn raynaud_invariants(g: u32, mu_any: &BigRational, rk: u64) -> Result<BundleInvariants> {
    let chain = raynaud_chain(g, mu_any, rk)?;
    let s_prime = s_invariants(g, &chain.mu_norm, chain.level as u32, chain.m_star)?;
    // L_{-1} has degree -1, so the L_{-1}^{t} twist shifts slope by -t
    let s = s_prime.twist(&-&chain.t);
    Ok(s.dual())
}

/// Slope-only version of the chain: (t, mu(S'), mu(S^rk_mu), mu(R^rk_mu)).
pub struct RaynaudSlopes {
    pub t: BigInt,
    pub s_prime: BigRational,
    pub s: BigRational,
    pub r: BigRational,
}

pub fn raynaud_slopes(g: u32, mu_any: &BigRational, rk: u64) -> Result<RaynaudSlopes> {
    let chain = raynaud_chain(g, mu_any, rk)?;
    let s_prime = s_slope(g, &chain.mu_norm, chain.level as u32, chain.m_star)?;
    let s = &s_prime - BigRational::from_integer(chain.t.clone());
    let r = -&s;
    Ok(RaynaudSlopes {
        t: chain.t,
        s_prime,
        s,
        r,
    })
}

/// Destabilization margin: mu(S^rk_{mu,R}) must strictly exceed
/// g - 1 - mu - 1/(rk(rk-1)) for the semistability argument to close.
pub fn margin_check(
    g: u32,
    mu: &SlopeSpec,
    level: u32,
    rk: u64,
) -> Result<(bool, BigRational, BigRational)> {
    if rk < 2 {
        return Err(Error::DegenerateRank);
    }
    let m_star = threshold_m_star(g, mu, level, rk)?;
    let lhs = s_slope(g, mu, level, m_star)?;
    let rhs = slope_gap(g, mu)
        - BigRational::new(BigInt::one(), BigInt::from(rk * (rk - 1)));
    Ok((lhs > rhs, lhs, rhs))
}
