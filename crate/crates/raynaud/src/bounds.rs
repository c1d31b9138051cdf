//! Base-point bounds for |R.Theta|: the genus-quadratic closed form for
//! R = 2, the minimal-rank table entries, and the exact polynomial fit of
//! the minimal rank as a function of the genus.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::theta::{cor3_min_m, theta_s_invariants};

/// Exact rational polynomial, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPolynomial {
    coefficients: Vec<BigRational>,
}

impl RankPolynomial {
    fn from_coefficients(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.len() > 1 && coefficients.last().unwrap().is_zero() {
            coefficients.pop();
        }
        RankPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation at an integer argument.
    pub fn eval(&self, g: u32) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(g));
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// (27g^2 - 15g + 2)/2, the rank threshold past which |2.Theta| has base
/// points; coincides with rk(S_{2,1}(M0)).
pub fn prop7_bound(g: u32) -> Result<BigUint> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let g = g as u64;
    Ok(BigUint::from((27 * g * g - 15 * g + 2) / 2))
}

/// Minimal rank r for which |R.Theta| is known to have base points:
/// rk(S_{R,m_min}(M0)) with m_min from the slope boundary (R-1 when g >= R,
/// R otherwise).
pub fn basepoint_min_rank(g: u32, level: u32) -> Result<BigUint> {
    let (_, m_min) = cor3_min_m(g, level)?;
    Ok(theta_s_invariants(g, level, m_min)?.rank)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact Lagrange interpolation through (x_i, y_i).
fn lagrange(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut acc = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![yi.clone()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let scale = xi - xj;
            basis = poly_mul(&basis, &[-xj / &scale, BigRational::one() / scale]);
        }
        for (k, c) in basis.into_iter().enumerate() {
            acc[k] += c;
        }
    }
    acc
}

/// Fits the minimal base-point rank as a polynomial in g on the g >= R
/// regime, asserts its degree is exactly R, and demands exact prediction at
/// the two genera just past the sample range.
pub fn fit_rank_polynomial(level: u32, g_samples: &[u32]) -> Result<RankPolynomial> {
    if level < 2 {
        return Err(Error::LevelTooSmall { min: 2, got: level });
    }
    let need = level as usize + 1;
    if g_samples.len() < need {
        return Err(Error::TooFewSamples {
            need,
            got: g_samples.len(),
        });
    }
    for &g in g_samples {
        if g < level {
            return Err(Error::SampleOutOfRegime { g, r: level });
        }
    }
    let points: Vec<(BigRational, BigRational)> = g_samples
        .iter()
        .map(|&g| {
            let y = basepoint_min_rank(g, level)?;
            Ok((
                BigRational::from_integer(BigInt::from(g)),
                BigRational::from_integer(BigInt::from(y)),
            ))
        })
        .collect::<Result<_>>()?;
    let poly = RankPolynomial::from_coefficients(lagrange(&points));
    if poly.degree() != level as usize {
        return Err(Error::DegreeMismatch {
            expected: level as usize,
            got: poly.degree(),
        });
    }
    let top = *g_samples.iter().max().unwrap();
    for g in [top + 1, top + 2] {
        let predicted = poly.eval(g);
        let actual = BigRational::from_integer(BigInt::from(basepoint_min_rank(g, level)?));
        if predicted != actual {
            return Err(Error::PredictionMismatch { g });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    #[test]
    fn prop7_matches_rank_closed_form() {
        for g in 2..=12 {
            assert_eq!(
                prop7_bound(g).unwrap(),
                theta_s_invariants(g, 2, 1).unwrap().rank,
                "g={g}"
            );
            assert_eq!(prop7_bound(g).unwrap(), basepoint_min_rank(g, 2).unwrap());
        }
        assert_eq!(prop7_bound(2).unwrap(), BigUint::from(40u32));
        assert_eq!(prop7_bound(3).unwrap(), BigUint::from(100u32));
        assert_eq!(prop7_bound(5).unwrap(), BigUint::from(301u32));
    }

    #[test]
    fn table_entries() {
        assert_eq!(basepoint_min_rank(2, 3).unwrap(), BigUint::from(3718u32));
        assert_eq!(basepoint_min_rank(3, 4).unwrap(), BigUint::from(2443665u32));
        assert_eq!(basepoint_min_rank(4, 4).unwrap(), BigUint::from(1332800u32));
    }

    #[test]
    fn min_rank_increasing_in_genus_on_regime() {
        for level in 2..=4 {
            let mut prev = basepoint_min_rank(level, level).unwrap();
            for g in level + 1..=level + 5 {
                let cur = basepoint_min_rank(g, level).unwrap();
                assert!(cur > prev, "R={level} g={g}");
                prev = cur;
            }
        }
    }

    #[test]
    fn quadratic_fit_recovers_closed_form() {
        let p = fit_rank_polynomial(2, &[2, 3, 4]).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(
            p.coefficients(),
            &[
                parse_rational("1").unwrap(),
                parse_rational("-15/2").unwrap(),
                parse_rational("27/2").unwrap(),
            ]
        );
        assert_eq!(p.eval(5), parse_rational("301").unwrap());
    }

    #[test]
    fn cubic_fit_is_predictive() {
        let p = fit_rank_polynomial(3, &[3, 4, 5, 6]).unwrap();
        assert_eq!(p.degree(), 3);
        let expected = basepoint_min_rank(9, 3).unwrap();
        assert_eq!(p.eval(9), BigRational::from_integer(BigInt::from(expected)));
    }

    #[test]
    fn fit_rejects_bad_samples() {
        assert!(matches!(
            fit_rank_polynomial(3, &[3, 4, 5]),
            Err(Error::TooFewSamples { .. })
        ));
        assert!(matches!(
            fit_rank_polynomial(3, &[2, 3, 4, 5]),
            Err(Error::SampleOutOfRegime { .. })
        ));
    }
}
