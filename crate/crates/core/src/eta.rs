//! Eta quotients and their integer q-expansions.
//!
//! A quotient is a finite product of eta factors eta(d z)^e over distinct
//! multipliers d. Dropping the q^(1/24) prefactor of each eta leaves the
//! Euler products prod (1 - q^(d n))^e together with an aggregate leading
//! power h = (sum d*e)/24, which must come out a non-negative integer for
//! the quotient to expand inside integer power series. Quotients violating
//! that are rejected loudly rather than approximated.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ring::{rat, Int, Rat};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("cannot parse eta quotient factor {0:?}; expected d^e")]
    Parse(String),
    #[error("eta multiplier must be positive")]
    ZeroMultiplier,
    #[error("fractional leading power: sum of d*e is {weighted_sum}, not divisible by 24")]
    FractionalPower { weighted_sum: i64 },
    #[error("negative leading power {leading_power}: the quotient is not a power series")]
    NegativeValuation { leading_power: i64 },
}

/// A finite product of eta factors, keyed by multiplier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: BTreeMap<u32, i64>,
}

/// The four quotients the identity harness revolves around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedQuotient {
    /// eta(z) eta(2z) eta(3z) / eta(6z), the weight-one form with
    /// coefficients a_6(n).
    F6,
    /// eta(z)^4 / eta(2z)^2, with coefficients a_2(n) = (-1)^n r(n).
    G2,
    /// eta(z)^2 / eta(2z), the Gauss theta series sum (-1)^n q^(n^2).
    Gauss,
    /// eta(2z)^2 eta(3z) / (eta(z) eta(6z)), the Kac theta series.
    Kac,
}

impl NamedQuotient {
    pub fn quotient(self) -> EtaQuotient {
        let factors: &[(u32, i64)] = match self {
            NamedQuotient::F6 => &[(1, 1), (2, 1), (3, 1), (6, -1)],
            NamedQuotient::G2 => &[(1, 4), (2, -2)],
            NamedQuotient::Gauss => &[(1, 2), (2, -1)],
            NamedQuotient::Kac => &[(2, 2), (3, 1), (1, -1), (6, -1)],
        };
        EtaQuotient::new(factors.iter().copied()).expect("named quotients are valid")
    }
}

impl EtaQuotient {
    /// Builds from (multiplier, exponent) pairs. Repeated multipliers are
    /// merged; zero exponents vanish.
    pub fn new<I: IntoIterator<Item = (u32, i64)>>(factors: I) -> Result<Self, EtaError> {
        let mut map: BTreeMap<u32, i64> = BTreeMap::new();
        for (d, e) in factors {
            if d == 0 {
                return Err(EtaError::ZeroMultiplier);
            }
            *map.entry(d).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Ok(EtaQuotient { factors: map })
    }

    /// Factors in ascending multiplier order.
    pub fn factors(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.factors.iter().map(|(&d, &e)| (d, e))
    }

    /// Half the exponent sum; half-integral weights are legitimate
    /// (the Gauss and Kac factors have weight 1/2).
    pub fn weight(&self) -> Rat {
        let total: i64 = self.factors.values().sum();
        rat(total, 2)
    }

    /// sum of d * e over all factors.
    pub fn weighted_exponent_sum(&self) -> i64 {
        self.factors.iter().map(|(&d, &e)| d as i64 * e).sum()
    }

    /// The leading power h = (sum d*e)/24 of the expansion, validated to be
    /// a non-negative integer.
    pub fn leading_power(&self) -> Result<u64, EtaError> {
        let s = self.weighted_exponent_sum();
        if s % 24 != 0 {
            return Err(EtaError::FractionalPower { weighted_sum: s });
        }
        let h = s / 24;
        if h < 0 {
            return Err(EtaError::NegativeValuation { leading_power: h });
        }
        Ok(h as u64)
    }

    /// Integer q-expansion q^h * prod_d euler_factor(d)^(e_d) up to `order`.
    ///
    /// Negative exponents divide by the Euler factor through the series
    /// division recurrence, which stays in integer coefficients because the
    /// constant term is 1.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries<Int>, EtaError> {
        let h = self.leading_power()? as usize;
        if h > order {
            return Ok(TruncatedSeries::zero(order));
        }
        let inner = order - h;
        let mut acc = TruncatedSeries::one(inner);
        for (d, e) in self.factors() {
            let factor = euler_factor(d, inner);
            if e > 0 {
                for _ in 0..e {
                    acc = acc.mul(&factor);
                }
            } else {
                for _ in 0..(-e) {
                    acc = acc.div(&factor).expect("euler factor has constant term 1");
                }
            }
        }
        Ok(acc.shifted(h))
    }
}

impl FromStr for EtaQuotient {
    type Err = EtaError;

    /// Grammar: comma-separated "d^e" factors, whitespace ignored,
    /// e.g. "1^1,2^1,3^1,6^-1".
    fn from_str(s: &str) -> Result<Self, EtaError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut factors = Vec::new();
        for token in cleaned.split(',') {
            if token.is_empty() {
                continue;
            }
            let (d_str, e_str) = token
                .split_once('^')
                .ok_or_else(|| EtaError::Parse(token.to_string()))?;
            let d: u32 = d_str
                .parse()
                .map_err(|_| EtaError::Parse(token.to_string()))?;
            let e: i64 = e_str
                .parse()
                .map_err(|_| EtaError::Parse(token.to_string()))?;
            factors.push((d, e));
        }
        EtaQuotient::new(factors)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self.factors().map(|(d, e)| format!("{d}^{e}")).collect();
        write!(f, "{}", rendered.join(","))
    }
}

/// The Euler product prod_{n >= 1} (1 - q^(d n)) truncated at `order`; only
/// the finitely many factors with d*n <= order contribute. Each binomial is
/// folded in by one in-place descending pass.
pub fn euler_factor(d: u32, order: usize) -> TruncatedSeries<Int> {
    let mut coeffs = vec![Int::from(0); order + 1];
    coeffs[0] = Int::from(1);
    let step = d as usize;
    if step >= 1 {
        let mut n = step;
        while n <= order {
            for i in (n..=order).rev() {
                if !num_traits::Zero::is_zero(&coeffs[i - n]) {
                    coeffs[i] = &coeffs[i] - &coeffs[i - n];
                }
            }
            n += step;
        }
    }
    TruncatedSeries::from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss_a, kac_b, r_lattice};
    use crate::ring::Ring;

    fn coeffs_i64(s: &TruncatedSeries<Int>) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c).expect("small coefficient"))
            .collect()
    }

    #[test]
    fn euler_factor_pentagonal_pattern() {
        let s = euler_factor(1, 15);
        assert_eq!(
            coeffs_i64(&s),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]
        );
    }

    #[test]
    fn euler_factor_single_contribution() {
        let s = euler_factor(2, 3);
        assert_eq!(coeffs_i64(&s), vec![1, 0, -1, 0]);
        assert!(euler_factor(7, 20).coeff(0).is_one());
    }

    #[test]
    fn named_quotient_invariants() {
        let kac = NamedQuotient::Kac.quotient();
        assert_eq!(kac.weighted_exponent_sum(), 0);
        assert_eq!(kac.leading_power().unwrap(), 0);
        assert_eq!(NamedQuotient::F6.quotient().weight(), rat(1, 1));
        assert_eq!(NamedQuotient::Gauss.quotient().weight(), rat(1, 2));
        assert_eq!(NamedQuotient::Gauss.quotient().leading_power().unwrap(), 0);
    }

    #[test]
    fn f6_expansion_matches_published_table() {
        let series = NamedQuotient::F6.quotient().expand(20).unwrap();
        assert_eq!(
            coeffs_i64(&series),
            vec![1, -1, -2, 0, 1, 4, 0, 0, -2, -4, 2, 0, 0, -2, 0, 0, 1, 4, 4, 0, -4]
        );
    }

    #[test]
    fn g2_expansion_is_signed_lattice_count() {
        let series = NamedQuotient::G2.quotient().expand(60).unwrap();
        for n in 0..=60usize {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                series.coeff(n),
                &Int::from(sign * r_lattice(n as u64) as i64),
                "n={n}"
            );
        }
        assert_eq!(coeffs_i64(&series)[..6], [1, -4, 4, 0, 4, -8]);
    }

    #[test]
    fn gauss_expansion_is_square_supported() {
        let series = NamedQuotient::Gauss.quotient().expand(100).unwrap();
        for n in 0..=100u64 {
            let s = crate::arith::isqrt(n);
            let expected = if s * s == n { gauss_a(s) } else { 0 };
            assert_eq!(series.coeff(n as usize), &Int::from(expected), "n={n}");
        }
        // in particular 1, -2q, 2q^4, -2q^9
        assert_eq!(
            coeffs_i64(&series)[..10],
            [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
        );
    }

    #[test]
    fn kac_expansion_is_square_supported() {
        let series = NamedQuotient::Kac.quotient().expand(100).unwrap();
        for n in 0..=100u64 {
            let s = crate::arith::isqrt(n);
            let expected = if s * s == n { kac_b(s) } else { 0 };
            assert_eq!(series.coeff(n as usize), &Int::from(expected), "n={n}");
        }
    }

    #[test]
    fn kac_times_gauss_is_f6() {
        let order = 300;
        let kac = NamedQuotient::Kac.quotient().expand(order).unwrap();
        let gauss = NamedQuotient::Gauss.quotient().expand(order).unwrap();
        let f6 = NamedQuotient::F6.quotient().expand(order).unwrap();
        assert_eq!(kac.mul(&gauss), f6);
    }

    #[test]
    fn f6_matches_factorwise_construction() {
        // Direct expansion of prod (1-q^n)^2 / (1 - q^n + q^(2n)), assembling
        // each factor with series inversion.
        let order = 120;
        let mut acc = TruncatedSeries::<Int>::one(order);
        for n in 1..=order {
            let numer = TruncatedSeries::from_coeffs({
                let mut c = vec![Int::from(0); order + 1];
                c[0] = Int::from(1);
                c[n] = Int::from(-1);
                c
            })
            .pow(2)
            .unwrap();
            let mut denom_coeffs = vec![Int::from(0); order + 1];
            denom_coeffs[0] = Int::from(1);
            denom_coeffs[n] = Int::from(-1);
            if 2 * n <= order {
                denom_coeffs[2 * n] = Int::from(1);
            }
            let denom = TruncatedSeries::from_coeffs(denom_coeffs);
            acc = acc.mul(&numer).mul(&denom.invert().unwrap());
        }
        let f6 = NamedQuotient::F6.quotient().expand(order).unwrap();
        assert_eq!(acc, f6);
    }

    #[test]
    fn rejects_invalid_quotients() {
        let q = EtaQuotient::new([(1, 1)]).unwrap();
        assert_eq!(
            q.expand(5).unwrap_err(),
            EtaError::FractionalPower { weighted_sum: 1 }
        );
        let neg = EtaQuotient::new([(1, -24)]).unwrap();
        assert_eq!(
            neg.expand(5).unwrap_err(),
            EtaError::NegativeValuation { leading_power: -1 }
        );
        assert_eq!(EtaQuotient::new([(0, 1)]), Err(EtaError::ZeroMultiplier));
    }

    #[test]
    fn positive_leading_power_shifts_the_series() {
        // eta(z)^24 expands as q * (1 + ...) with integer coefficients
        let delta = EtaQuotient::new([(1, 24)]).unwrap();
        assert_eq!(delta.leading_power().unwrap(), 1);
        let series = delta.expand(8).unwrap();
        assert!(Ring::is_zero(series.coeff(0)));
        assert!(series.coeff(1).is_one());
        assert_eq!(series.coeff(2), &Int::from(-24));
        // leading power beyond the order leaves only zeros
        let tiny = delta.expand(0).unwrap();
        assert!(Ring::is_zero(tiny.coeff(0)));
    }

    #[test]
    fn parse_round_trip() {
        let q: EtaQuotient = "1^1, 2^1, 3^1, 6^-1".parse().unwrap();
        assert_eq!(q, NamedQuotient::F6.quotient());
        assert_eq!(q.to_string(), "1^1,2^1,3^1,6^-1");
        assert_eq!(q.to_string().parse::<EtaQuotient>().unwrap(), q);
        assert!(matches!(
            "1^".parse::<EtaQuotient>(),
            Err(EtaError::Parse(_))
        ));
        assert!(matches!(
            "abc".parse::<EtaQuotient>(),
            Err(EtaError::Parse(_))
        ));
        // duplicates merge, zero exponents drop
        let merged: EtaQuotient = "1^2,1^2,2^0".parse().unwrap();
        assert_eq!(merged, EtaQuotient::new([(1, 4)]).unwrap());
    }
}
