//! Sparse integer Laurent polynomials in one variable x.
//!
//! Exponents may be negative; zero coefficients are never stored, so the
//! term map is a canonical form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Cyclo12, Int, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Int>,
}

impl LaurentPoly {
    pub fn new() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, Int> = BTreeMap::new();
        for (e, c) in iter {
            let entry = terms.entry(e).or_insert_with(<Int as Ring>::zero);
            *entry = &*entry + &c;
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        LaurentPoly { terms }
    }

    pub fn monomial(exponent: i64, coeff: Int) -> Self {
        Self::from_terms([(exponent, coeff)])
    }

    pub fn x_pow(exponent: i64) -> Self {
        Self::monomial(exponent, Int::from(1))
    }

    pub fn constant(c: Int) -> Self {
        Self::monomial(0, c)
    }

    /// Coefficient of x^e (zero when absent).
    pub fn coeff(&self, e: i64) -> Int {
        self.terms.get(&e).cloned().unwrap_or_else(Zero::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Value at x = 1, i.e. the coefficient sum.
    pub fn eval_one(&self) -> Int {
        let mut total: Int = Zero::zero();
        for c in self.terms.values() {
            total += c;
        }
        total
    }

    /// Multiplies by x^s.
    pub fn shifted(&self, s: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + s, c.clone())).collect(),
        }
    }

    /// The exponent reversal e -> k - e. A polynomial supported on [0, k]
    /// is palindromic exactly when it equals its reversal about k.
    pub fn reversed(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (k - e, c.clone())).collect(),
        }
    }

    pub fn is_palindromic(&self) -> bool {
        match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => *self == self.reversed(lo + hi),
            _ => true,
        }
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Exact division by (x - 1); `None` when the remainder is nonzero.
    /// Requires an ordinary polynomial (no negative exponents).
    pub fn try_div_x_minus_one(&self) -> Option<LaurentPoly> {
        if Ring::is_zero(self) {
            return Some(LaurentPoly::new());
        }
        let lo = self.min_exponent().unwrap();
        let hi = self.max_exponent().unwrap();
        if lo < 0 {
            return None;
        }
        // Synthetic division from the top coefficient down.
        let mut quotient: BTreeMap<i64, Int> = BTreeMap::new();
        let mut carry: Int = Zero::zero();
        for e in (0..=hi).rev() {
            let cur = self.coeff(e) + &carry;
            if e > 0 {
                if !Zero::is_zero(&cur) {
                    quotient.insert(e - 1, cur.clone());
                }
                carry = cur;
            } else if !Zero::is_zero(&cur) {
                return None; // nonzero remainder
            }
        }
        Some(LaurentPoly { terms: quotient })
    }

    /// Exact evaluation at a point of Q(zeta_12). Negative exponents require
    /// the point to be invertible.
    pub fn eval_cyclo(&self, v: &Cyclo12) -> Result<Cyclo12, RingError> {
        let mut total = Cyclo12::zero();
        for (e, c) in self.terms() {
            let power = v.pow(e)?;
            let term = power.scaled(&super::Rat::from_integer(c.clone()));
            total = Cyclo12::add(&total, &term);
        }
        Ok(total)
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::new()
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::new()
    }

    fn one() -> Self {
        LaurentPoly::constant(Int::from(1))
    }

    fn add(a: &Self, b: &Self) -> Self {
        let mut terms = a.terms.clone();
        for (&e, c) in &b.terms {
            let entry = terms.entry(e).or_insert_with(<Int as Ring>::zero);
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        LaurentPoly { terms }
    }

    fn neg(a: &Self) -> Self {
        LaurentPoly {
            terms: a.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    fn mul(a: &Self, b: &Self) -> Self {
        let mut terms: BTreeMap<i64, Int> = BTreeMap::new();
        for (&ea, ca) in &a.terms {
            for (&eb, cb) in &b.terms {
                let entry = terms.entry(ea + eb).or_insert_with(<Int as Ring>::zero);
                *entry = &*entry + &(ca * cb);
            }
        }
        terms.retain(|_, c| !Zero::is_zero(c));
        LaurentPoly { terms }
    }

    fn invert(a: &Self) -> Result<Self, RingError> {
        // Over Z the only units are +-x^k.
        if a.terms.is_empty() {
            return Err(RingError::DivisionByZero);
        }
        if a.terms.len() == 1 {
            let (&e, c) = a.terms.iter().next().unwrap();
            if One::is_one(&c.abs()) {
                return Ok(LaurentPoly::monomial(-e, c.clone()));
            }
        }
        Err(RingError::NotAUnit(a.to_string()))
    }

    fn from_int(n: i64) -> Self {
        LaurentPoly::constant(Int::from(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros_and_merges() {
        let p = LaurentPoly::from_terms([
            (2, Int::from(3)),
            (2, Int::from(-3)),
            (0, Int::from(1)),
            (-1, Int::from(5)),
        ]);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(2), Int::from(0));
        assert_eq!(p.coeff(-1), Int::from(5));
    }

    #[test]
    fn invert_units_only() {
        let x = LaurentPoly::x_pow(1);
        assert_eq!(Ring::invert(&x).unwrap(), LaurentPoly::x_pow(-1));
        let neg = LaurentPoly::monomial(3, Int::from(-1));
        assert_eq!(
            Ring::invert(&neg).unwrap(),
            LaurentPoly::monomial(-3, Int::from(-1))
        );
        assert!(matches!(
            Ring::invert(&LaurentPoly::constant(Int::from(2))),
            Err(RingError::NotAUnit(_))
        ));
        assert_eq!(
            Ring::invert(&LaurentPoly::new()),
            Err(RingError::DivisionByZero)
        );
    }

    #[test]
    fn division_by_x_minus_one() {
        // (x - 1)^2 = x^2 - 2x + 1 divides down to x - 1 and then 1
        let sq = LaurentPoly::from_terms([
            (2, Int::from(1)),
            (1, Int::from(-2)),
            (0, Int::from(1)),
        ]);
        let once = sq.try_div_x_minus_one().unwrap();
        assert_eq!(
            once,
            LaurentPoly::from_terms([(1, Int::from(1)), (0, Int::from(-1))])
        );
        let twice = once.try_div_x_minus_one().unwrap();
        assert_eq!(twice, LaurentPoly::one());
        // x + 1 leaves remainder 2
        let odd = LaurentPoly::from_terms([(1, Int::from(1)), (0, Int::from(1))]);
        assert!(odd.try_div_x_minus_one().is_none());
    }

    #[test]
    fn eval_cyclo_examples() {
        // x + x^-1 - 2 at x = -1 gives -4
        let p = LaurentPoly::from_terms([
            (1, Int::from(1)),
            (-1, Int::from(1)),
            (0, Int::from(-2)),
        ]);
        let minus_one = Cyclo12::from_int(-1);
        assert_eq!(p.eval_cyclo(&minus_one).unwrap(), Cyclo12::from_int(-4));

        assert_eq!(
            LaurentPoly::one().eval_cyclo(&Cyclo12::zeta_pow(5)).unwrap(),
            Cyclo12::one()
        );

        // (x - 1)^2 vanishes at 1
        let sq = LaurentPoly::from_terms([
            (2, Int::from(1)),
            (1, Int::from(-2)),
            (0, Int::from(1)),
        ]);
        assert!(Ring::is_zero(&sq.eval_cyclo(&Cyclo12::one()).unwrap()));
    }

    #[test]
    fn palindrome_detection() {
        let p = LaurentPoly::from_terms([
            (0, Int::from(1)),
            (1, Int::from(-1)),
            (3, Int::from(-1)),
            (4, Int::from(1)),
        ]);
        assert!(p.is_palindromic());
        let q = LaurentPoly::from_terms([(0, Int::from(1)), (1, Int::from(2))]);
        assert!(!q.is_palindromic());
    }

    #[test]
    fn display_formatting() {
        let p = LaurentPoly::from_terms([
            (-1, Int::from(1)),
            (0, Int::from(-2)),
            (2, Int::from(3)),
        ]);
        assert_eq!(p.to_string(), "x^-1 - 2 + 3*x^2");
        assert_eq!(LaurentPoly::new().to_string(), "0");
    }
}
