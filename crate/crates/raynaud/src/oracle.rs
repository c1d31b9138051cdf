//! Independent recomputation of every closed-form invariant from first
//! principles: symmetric-power dimensions by the additive recurrence,
//! rank/degree bookkeeping by exact-sequence additivity, and Euler
//! characteristics by Riemann-Roch. No code is shared with the
//! product-formula binomial or the closed-form modules beyond the plain
//! BigInt/BigRational value types.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::general::{BundleInvariants, SlopeSpec};

/// dim Sym^m of a v-dimensional space by S(v,m) = S(v-1,m) + S(v,m-1).
pub fn sym_dim(v: u64, m: u64) -> BigUint {
    sym_dim_series(v, m).pop().unwrap()
}

/// S(v, 0), S(v, 1), ..., S(v, m_max) in one pass over the recurrence.
pub fn sym_dim_series(v: u64, m_max: u64) -> Vec<BigUint> {
    assert!(v >= 1);
    // column[i] holds S(i+1, m) for the current m
    let mut column = vec![BigUint::one(); v as usize];
    let mut series = Vec::with_capacity(m_max as usize + 1);
    series.push(BigUint::one());
    for _ in 1..=m_max {
        for i in 1..column.len() {
            let (lo, hi) = column.split_at_mut(i);
            hi[0] += &lo[i - 1];
        }
        series.push(column.last().unwrap().clone());
    }
    series
}

/// Invariants of the cokernel in
/// 0 -> Sym^m x M1 -> Sym^{m+1} x M0 -> S -> 0, by additivity.
pub fn ses_invariants(
    m1: &BundleInvariants,
    m0: &BundleInvariants,
    v: u64,
    m: u64,
) -> Result<BundleInvariants> {
    let series = sym_dim_series(v, m + 1);
    ses_from_sym(m1, m0, &series[m as usize], &series[m as usize + 1])
}

fn ses_from_sym(
    m1: &BundleInvariants,
    m0: &BundleInvariants,
    sym_m: &BigUint,
    sym_m1: &BigUint,
) -> Result<BundleInvariants> {
    let rank =
        BigInt::from(sym_m1 * &m0.rank) - BigInt::from(sym_m * &m1.rank);
    if !rank.is_positive() {
        return Err(Error::InconsistentSequence);
    }
    let degree = BigInt::from(sym_m1.clone()) * &m0.degree - BigInt::from(sym_m.clone()) * &m1.degree;
    BundleInvariants::new(rank.magnitude().clone(), degree)
}

/// chi(E) = deg(E) + rk(E)(1 - g).
pub fn riemann_roch_chi(rank: &BigUint, degree: &BigInt, g: u32) -> BigInt {
    degree + BigInt::from(rank.clone()) * BigInt::from(1 - g as i64)
}

/// h^1(M1 x E) = rk(E)(g-1-mu)(rR+1) for E of rank rk and slope mu.
pub fn h1_m1_tensor_e(g: u32, mu: &SlopeSpec, level: u32, rk: u64) -> Result<BigUint> {
    let q = mu.to_rational();
    let lo = BigRational::from_integer(BigInt::from(-(g as i64) - 1));
    let hi = BigRational::from_integer(BigInt::from(-(g as i64)));
    if q < lo || q >= hi {
        return Err(Error::SlopeOutOfRange(q, g));
    }
    if !(BigInt::from(rk) % mu.denominator()).is_zero() {
        return Err(Error::RankNotMultiple {
            rk,
            r: mu.denominator().clone(),
        });
    }
    let gap = BigRational::from_integer(BigInt::from(g as i64 - 1)) - q;
    let rr1 = mu.denominator() * BigInt::from(level) + 1;
    let h1 = BigRational::from_integer(BigInt::from(rk)) * gap * BigRational::from_integer(rr1);
    debug_assert!(h1.is_integer());
    Ok(h1.to_integer().magnitude().clone())
}

/// One line of the machine-readable verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub inputs: String,
    pub status: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Grid caps for the verification sweep.
#[derive(Debug, Clone)]
pub struct GridCaps {
    pub g_max: u32,
    pub level_max: u32,
    pub m_max: u64,
    pub denom_max: u64,
}

impl Default for GridCaps {
    fn default() -> Self {
        GridCaps {
            g_max: 5,
            level_max: 4,
            m_max: 50,
            denom_max: 3,
        }
    }
}

/// All reduced d/r in [-g-1, -g) with r <= denom_max.
pub fn slope_grid(g: u32, denom_max: u64) -> Vec<SlopeSpec> {
    let mut out = Vec::new();
    for r in 1..=denom_max as i64 {
        let lo = -(g as i64 + 1) * r;
        for d in lo..lo + r {
            let s = SlopeSpec::new(BigInt::from(d), BigInt::from(r)).unwrap();
            if s.denominator() == &BigInt::from(r) {
                out.push(s);
            }
        }
    }
    out
}

/// Runs the full oracle grid and property suite. `negative_control`
/// deliberately corrupts one recomputation so failure paths can be tested.
pub fn run_verification(caps: &GridCaps, negative_control: bool) -> Vec<CheckResult> {
    use crate::exact::binomial;
    use crate::general;
    use crate::theta;

    let mut out = Vec::new();
    let mut push = |check: &str, inputs: String, ok: bool| {
        out.push(CheckResult {
            check: check.to_string(),
            inputs,
            status: if ok { "pass" } else { "fail" }.to_string(),
        });
    };

    // sym_dim recurrence vs product-formula binomial
    {
        let mut ok = true;
        for v in 1..=40u64 {
            let series = sym_dim_series(v, 120);
            for (m, s) in series.iter().enumerate() {
                if *s != binomial(v + m as u64 - 1, m as u64) {
                    ok = false;
                }
            }
        }
        if negative_control {
            ok = false;
        }
        push("sym_dim == C(v+m-1, m)", "v<=40, m<=120".into(), ok);
    }

    // general construction vs exact-sequence oracle
    for g in 2..=caps.g_max {
        for level in 1..=caps.level_max {
            for mu in slope_grid(g, caps.denom_max) {
                let v_big = general::hom_dimension_v(g, &mu, level).unwrap();
                let v: u64 = v_big.to_string().parse().unwrap();
                let (m1, m0) = general::m1_m0_invariants(g, &mu, level).unwrap();
                let series = sym_dim_series(v, caps.m_max + 1);
                let mut ok = true;
                for m in 0..=caps.m_max {
                    let oracle =
                        ses_from_sym(&m1, &m0, &series[m as usize], &series[m as usize + 1])
                            .unwrap();
                    let closed = general::s_invariants(g, &mu, level, m).unwrap();
                    if oracle != closed {
                        ok = false;
                    }
                    // the two displayed slope forms
                    if closed.slope != general::s_slope(g, &mu, level, m).unwrap() {
                        ok = false;
                    }
                    let decomp = general::slope_decomposition(g, &mu, level).unwrap();
                    if decomp.at(m) != closed.slope {
                        ok = false;
                    }
                }
                // Riemann-Roch reproduces v: chi(M1^dual x M0)
                let hom_deg = -&m1.degree * BigInt::from(m0.rank.clone());
                if riemann_roch_chi(&m0.rank, &hom_deg, g) != v_big {
                    ok = false;
                }
                // threshold identity m* = (v-1)(h^1 - 1) for rk = r, 2r
                for h in 1..=2u64 {
                    let rk = h * mu.denominator().to_string().parse::<u64>().unwrap();
                    let h1 = h1_m1_tensor_e(g, &mu, level, rk).unwrap();
                    let expect = (v_big.clone() - 1) * (BigInt::from(h1) - 1);
                    let m_star = general::threshold_m_star(g, &mu, level, rk).unwrap();
                    if BigInt::from(m_star) != expect {
                        ok = false;
                    }
                }
                push(
                    "S_{mu,R,m} closed form == exact-sequence oracle",
                    format!("g={g} mu={mu} R={level} m<={}", caps.m_max),
                    ok,
                );
            }
        }
    }

    // theta construction vs exact-sequence oracle
    for g in 2..=caps.g_max {
        for level in 2..=caps.level_max.max(2) {
            let v = theta::theta_hom_dimension(g, level).unwrap();
            let triple = theta::triple_invariants(g, level).unwrap();
            let series = sym_dim_series(v, caps.m_max + 1);
            let mut ok = true;
            for m in 0..=caps.m_max {
                let oracle = ses_from_sym(
                    &triple.m1,
                    &triple.m0,
                    &series[m as usize],
                    &series[m as usize + 1],
                )
                .unwrap();
                let closed = theta::theta_s_invariants(g, level, m).unwrap();
                if oracle != closed {
                    ok = false;
                }
                if closed.slope != theta::theta_s_slope(g, level, m).unwrap() {
                    ok = false;
                }
                // positivity of computed ranks
                if closed.rank.is_zero() {
                    ok = false;
                }
            }
            // Riemann-Roch reproduces v: chi(M1^dual x M0) with the triple's data
            let hom_deg = &triple.m0.degree - &triple.m1.degree * BigInt::from(triple.m0.rank.clone());
            if riemann_roch_chi(&triple.m0.rank, &hom_deg, g) != BigInt::from(v) {
                ok = false;
            }
            // cor3 decomposition identity and w threshold identity
            let (a, b) = theta::cor3_decomposition(g, level).unwrap();
            for m in 0..=caps.m_max {
                let expect = BigRational::new(
                    -BigInt::from(a.clone()),
                    BigInt::from(level as u64 * m) + BigInt::from(b.clone()),
                );
                if expect != theta::theta_s_slope(g, level, m).unwrap() {
                    ok = false;
                }
            }
            for r in 1..=4u64 {
                let h1_triple = r * (level as u64 + 1) * (g as u64 - 1) + r;
                let w = theta::theta_w(g, level, r).unwrap();
                if w != (v - 1) * (h1_triple - 1) {
                    ok = false;
                }
            }
            push(
                "S_{R,m}(M0) closed form == exact-sequence oracle",
                format!("g={g} R={level} m<={}", caps.m_max),
                ok,
            );
        }
    }

    // cor3 boundary and selection rule
    {
        let mut ok = true;
        for g in 2..=caps.g_max.max(8) {
            for level in 2..=caps.level_max.max(6) {
                let (_, m_min) = theta::cor3_min_m(g, level).unwrap();
                let floor = BigRational::from_integer(BigInt::from(1 - g as i64));
                if theta::theta_s_slope(g, level, m_min).unwrap() < floor {
                    ok = false;
                }
                if m_min >= 1 && theta::theta_s_slope(g, level, m_min - 1).unwrap() >= floor {
                    ok = false;
                }
                if (m_min == level as u64 - 1) != (g >= level) || m_min > level as u64 {
                    ok = false;
                }
            }
        }
        push("cor3 minimal-m boundary and selection rule", "g<=8, R<=6".into(), ok);
    }

    // normalization and monotonicity
    {
        let mut ok = true;
        for g in 2..=caps.g_max {
            for num in -15i64..=15 {
                for den in 1i64..=3 {
                    let mu = BigRational::new(BigInt::from(num), BigInt::from(den));
                    let (t, norm) = general::normalize_slope(&mu, g);
                    let q = norm.to_rational();
                    let lo = BigRational::from_integer(BigInt::from(-(g as i64) - 1));
                    let hi = BigRational::from_integer(BigInt::from(-(g as i64)));
                    if q < lo || q >= hi {
                        ok = false;
                    }
                    if &mu - q != BigRational::from_integer(t) {
                        ok = false;
                    }
                }
            }
            for mu in slope_grid(g, caps.denom_max) {
                let base = general::slope_decomposition(g, &mu, 2).unwrap().base;
                let mut prev = general::s_slope(g, &mu, 2, 0).unwrap();
                for m in 1..=caps.m_max.min(30) {
                    let cur = general::s_slope(g, &mu, 2, m).unwrap();
                    if cur <= prev || cur >= base {
                        ok = false;
                    }
                    prev = cur;
                }
            }
        }
        push("slope normalization range and monotonicity", "sampled".into(), ok);
    }

    // destabilization margin, in the regime rR >= rk-1 where the exponent
    // m* is quantitatively sufficient
    {
        let mut ok = true;
        for g in 2..=caps.g_max.min(4) {
            for level in 1..=caps.level_max.min(3) {
                for rk in 2..=4u64 {
                    for mu in slope_grid(g, caps.denom_max.min(4)) {
                        let r: u64 = mu.denominator().to_string().parse().unwrap();
                        if rk % r != 0 || r * level as u64 + 1 < rk {
                            continue;
                        }
                        let (holds, _, _) = general::margin_check(g, &mu, level, rk).unwrap();
                        if !holds {
                            ok = false;
                        }
                    }
                }
            }
        }
        push(
            "destabilization margin at m* (regime rR >= rk-1)",
            "g<=4, R<=3, rk<=4".into(),
            ok,
        );
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;
    use crate::general::{m1_m0_invariants, s_invariants};
    use crate::theta::{theta_s_invariants, triple_invariants};

    #[test]
    fn sym_dim_small() {
        assert_eq!(sym_dim(1, 7), BigUint::one());
        assert_eq!(sym_dim(3, 2), BigUint::from(6u32));
        assert_eq!(sym_dim(11, 90), BigUint::from(17310309456440u64));
    }

    #[test]
    fn ses_matches_general_example() {
        let mu = SlopeSpec::new(BigInt::from(-3), BigInt::one()).unwrap();
        let (m1, m0) = m1_m0_invariants(2, &mu, 1).unwrap();
        let got = ses_invariants(&m1, &m0, 6, 0).unwrap();
        assert_eq!(got, s_invariants(2, &mu, 1, 0).unwrap());
        assert_eq!(got.rank, BigUint::from(11u32));
        assert_eq!(got.slope, parse_rational("4/11").unwrap());
    }

    #[test]
    fn ses_matches_theta_example() {
        let t = triple_invariants(2, 2).unwrap();
        let got = ses_invariants(&t.m1, &t.m0, 5, 1).unwrap();
        assert_eq!(got, theta_s_invariants(2, 2, 1).unwrap());
        assert_eq!(got.rank, BigUint::from(40u32));
        assert_eq!(got.slope, parse_rational("-1").unwrap());
    }

    #[test]
    fn ses_rejects_inconsistent_inputs() {
        // rank-0 cokernel: identical line bundles
        let l = BundleInvariants::new(BigUint::from(5u32), BigInt::zero()).unwrap();
        let m1 = BundleInvariants::new(BigUint::from(50u32), BigInt::zero()).unwrap();
        assert!(matches!(
            ses_invariants(&m1, &l, 3, 2),
            Err(Error::InconsistentSequence)
        ));
    }

    #[test]
    fn riemann_roch_examples() {
        // hom-space check for g=2, mu=-3, R=1: deg(M1^dual x M0) = 8, rank 2
        assert_eq!(
            riemann_roch_chi(&BigUint::from(2u32), &BigInt::from(8), 2),
            BigInt::from(6)
        );
        // theta check for g=2, R=3: M0=(4,-5), M1=(1,-5); M1^dual x M0 has deg 15
        assert_eq!(
            riemann_roch_chi(&BigUint::from(4u32), &BigInt::from(15), 2),
            BigInt::from(11)
        );
        // vanishing line
        assert_eq!(
            riemann_roch_chi(&BigUint::one(), &BigInt::from(4), 5),
            BigInt::zero()
        );
    }

    #[test]
    fn h1_examples() {
        let mu = SlopeSpec::new(BigInt::from(-3), BigInt::one()).unwrap();
        assert_eq!(h1_m1_tensor_e(2, &mu, 1, 2).unwrap(), BigUint::from(16u32));
        assert_eq!(h1_m1_tensor_e(2, &mu, 3, 2).unwrap(), BigUint::from(32u32));
        let mu = SlopeSpec::new(BigInt::from(-5), BigInt::from(2)).unwrap();
        assert_eq!(h1_m1_tensor_e(2, &mu, 1, 2).unwrap(), BigUint::from(21u32));
    }

    #[test]
    fn negative_control_fails() {
        let caps = GridCaps {
            g_max: 2,
            level_max: 2,
            m_max: 5,
            denom_max: 1,
        };
        assert!(run_verification(&caps, false).iter().all(|c| c.passed()));
        assert!(!run_verification(&caps, true).iter().all(|c| c.passed()));
    }
}
