//! The palindromic polynomials C_n(x) counting codimension-n ideals of the
//! two-variable Laurent polynomial algebra over F_x, their quotients
//! P_n(x) = C_n(x) / (x-1)^2, and the integer specializations a_k(n) at
//! roots of unity.
//!
//! Everything here is driven by the two-parameter product
//!   1 + sum C_n(x) x^(-n) q^n = prod (1-q^n)^2 / (1 - (x + 1/x) q^n + q^(2n)),
//! expanded as a q-series whose coefficients are Laurent polynomials in x.

use thiserror::Error;

use crate::arith::{fine_coefficient, sigma, RootOrder};
use crate::ring::{rat, Cyclo12, Int, LaurentPoly, Ring};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("C_{n}(x) is not divisible by (x-1)^2")]
    NonzeroRemainder { n: usize },
    #[error("P_{n}(x) is not palindromic")]
    NotPalindromic { n: usize },
    #[error("P_{n}(x) has a negative coefficient")]
    NegativeCoefficient { n: usize },
    #[error("P_{n}(1) = {value}, expected sigma({n}) = {sigma}")]
    SigmaMismatch { n: usize, value: Int, sigma: u64 },
}

/// C_n(x), a palindromic integer polynomial supported on [0, 2n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnPolynomial {
    n: usize,
    poly: LaurentPoly,
}

impl CnPolynomial {
    pub fn index(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    /// x^(2n) C_n(1/x) = C_n(x).
    pub fn is_palindromic(&self) -> bool {
        self.poly == self.poly.reversed(2 * self.n as i64)
    }

    pub fn vanishes_at_one(&self) -> bool {
        num_traits::Zero::is_zero(&self.poly.eval_one())
    }
}

fn trinomial_series(order: usize, n: usize, middle: LaurentPoly) -> TruncatedSeries<LaurentPoly> {
    // 1 + middle*q^n + q^(2n), truncated at `order`
    let mut coeffs = vec![LaurentPoly::zero(); order + 1];
    coeffs[0] = LaurentPoly::one();
    if n <= order {
        coeffs[n] = middle;
    }
    if 2 * n <= order {
        coeffs[2 * n] = LaurentPoly::one();
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Expands the two-parameter product up to q^max_n and extracts
/// C_n(x) = x^n * [q^n] for n = 1..=max_n.
///
/// Coefficients live in the Laurent polynomial ring; each factor's inverse
/// is taken with the series inversion recurrence, which only ever divides
/// by the constant term 1. Practical up to a few hundred indices.
pub fn cn_series(max_n: usize) -> Vec<CnPolynomial> {
    assert!(max_n >= 1, "need at least one index");
    let order = max_n;
    // x + 1/x
    let interval = LaurentPoly::from_terms([(1, Int::from(1)), (-1, Int::from(1))]);
    let mut acc = TruncatedSeries::<LaurentPoly>::one(order);
    for n in 1..=order {
        let numer = trinomial_series(order, n, LaurentPoly::constant(Int::from(-2)));
        let denom = trinomial_series(order, n, LaurentPoly::neg(&interval));
        let denom_inv = denom.invert().expect("constant term is 1");
        acc = acc.mul(&numer).mul(&denom_inv);
    }
    (1..=max_n)
        .map(|n| CnPolynomial {
            n,
            poly: acc.coeff(n).shifted(n as i64),
        })
        .collect()
}

/// Divides C_n(x) by (x-1)^2 via two exact synthetic divisions and checks
/// the published structure of the quotient: palindromic, non-negative
/// coefficients, and P_n(1) equal to the divisor sum sigma(n).
pub fn pn_from_cn(c: &CnPolynomial) -> Result<LaurentPoly, HilbertError> {
    let n = c.n;
    let first = c
        .poly
        .try_div_x_minus_one()
        .ok_or(HilbertError::NonzeroRemainder { n })?;
    let p = first
        .try_div_x_minus_one()
        .ok_or(HilbertError::NonzeroRemainder { n })?;
    if !p.is_palindromic() {
        return Err(HilbertError::NotPalindromic { n });
    }
    if !p.has_nonnegative_coeffs() {
        return Err(HilbertError::NegativeCoefficient { n });
    }
    let value = p.eval_one();
    let expected = sigma(n as u64).expect("n >= 1");
    if value != Int::from(expected) {
        return Err(HilbertError::SigmaMismatch {
            n,
            value,
            sigma: expected,
        });
    }
    Ok(p)
}

/// The integer series prod (1-q^n)^2 / (1 - 2cos(2pi/k) q^n + q^(2n)) for
/// the four orders with integer 2cos(2pi/k).
pub fn a_k_product(k: RootOrder, order: usize) -> TruncatedSeries<Int> {
    let c = k.two_cos();
    let mut acc = TruncatedSeries::<Int>::one(order);
    for n in 1..=order {
        let mut numer = vec![Int::from(0); order + 1];
        numer[0] = Int::from(1);
        numer[n] = Int::from(-2);
        if 2 * n <= order {
            numer[2 * n] = Int::from(1);
        }
        let mut denom = vec![Int::from(0); order + 1];
        denom[0] = Int::from(1);
        denom[n] = Int::from(-c);
        if 2 * n <= order {
            denom[2 * n] = Int::from(1);
        }
        acc = acc
            .mul(&TruncatedSeries::from_coeffs(numer))
            .div(&TruncatedSeries::from_coeffs(denom))
            .expect("constant term is 1");
    }
    acc
}

/// Exact check of the root-of-unity specialization
/// C_n(zeta_k) = a_k(n) zeta_k^n in Q(zeta_12).
pub fn specialization_check(k: RootOrder, c: &CnPolynomial) -> bool {
    let zeta = Cyclo12::root_of_unity(k.k(), 1).expect("k divides 12");
    let lhs = c.poly.eval_cyclo(&zeta).expect("roots of unity are units");
    let ak = fine_coefficient(k, c.n as u64);
    let rhs = Cyclo12::root_of_unity(k.k(), c.n as i64)
        .expect("k divides 12")
        .scaled(&rat(ak, 1));
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::NamedQuotient;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, Int::from(c))))
    }

    #[test]
    fn c1_is_x_minus_one_squared() {
        let cs = cn_series(1);
        assert_eq!(cs[0].poly(), &poly(&[(2, 1), (1, -2), (0, 1)]));
        assert!(cs[0].is_palindromic());
        assert!(cs[0].vanishes_at_one());
    }

    #[test]
    fn c2_expansion() {
        let cs = cn_series(2);
        assert_eq!(cs[1].poly(), &poly(&[(4, 1), (3, -1), (1, -1), (0, 1)]));
        assert!(cs[1].is_palindromic());
        assert!(cs[1].vanishes_at_one());
        let p2 = pn_from_cn(&cs[1]).unwrap();
        assert_eq!(p2, poly(&[(2, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn structural_checks_through_n_12() {
        let cs = cn_series(12);
        for c in &cs {
            assert!(c.is_palindromic(), "n={}", c.index());
            assert!(c.vanishes_at_one(), "n={}", c.index());
            let p = pn_from_cn(c).unwrap();
            assert_eq!(
                p.eval_one(),
                Int::from(sigma(c.index() as u64).unwrap()),
                "n={}",
                c.index()
            );
        }
        // P_1 = 1, P_6(1) = sigma(6) = 12
        let p1 = pn_from_cn(&cs[0]).unwrap();
        assert_eq!(p1, LaurentPoly::one());
        let p6 = pn_from_cn(&cs[5]).unwrap();
        assert_eq!(p6.eval_one(), Int::from(12));
    }

    #[test]
    fn division_rejects_non_divisible_input() {
        let fake = CnPolynomial {
            n: 1,
            poly: poly(&[(2, 1), (0, 1)]), // x^2 + 1, no root at 1
        };
        assert_eq!(
            pn_from_cn(&fake),
            Err(HilbertError::NonzeroRemainder { n: 1 })
        );
    }

    #[test]
    fn a_k_product_matches_fine_formula() {
        for k in RootOrder::ALL {
            let series = a_k_product(k, 120);
            for n in 0..=120u64 {
                assert_eq!(
                    series.coeff(n as usize),
                    &Int::from(fine_coefficient(k, n)),
                    "k={:?} n={n}",
                    k
                );
            }
        }
    }

    #[test]
    fn a_k_product_matches_eta_quotients() {
        let order = 150;
        assert_eq!(
            a_k_product(RootOrder::K6, order),
            NamedQuotient::F6.quotient().expand(order).unwrap()
        );
        assert_eq!(
            a_k_product(RootOrder::K2, order),
            NamedQuotient::G2.quotient().expand(order).unwrap()
        );
    }

    #[test]
    fn specializations_hold_for_small_indices() {
        let cs = cn_series(10);
        for c in &cs {
            for k in RootOrder::ALL {
                assert!(specialization_check(k, c), "k={:?} n={}", k, c.index());
            }
        }
    }

    #[test]
    fn specialization_examples() {
        let cs = cn_series(5);
        // C_1(-1) = 4 = a_2(1) * (-1)
        let minus_one = Cyclo12::from_int(-1);
        assert_eq!(
            cs[0].poly().eval_cyclo(&minus_one).unwrap(),
            Cyclo12::from_int(4)
        );
        assert!(specialization_check(RootOrder::K2, &cs[0]));
        // C_5 at the sixth root picks up a_6(5) = 4
        assert!(specialization_check(RootOrder::K6, &cs[4]));
        assert!(specialization_check(RootOrder::K3, &cs[0]));
    }
}
