//! Truncated formal power series in q over any coefficient ring.
//!
//! A series of order N stores the coefficients of q^0 .. q^N exactly; every
//! binary operation truncates to the smaller order of its operands, so
//! mixed-precision expressions compose without explicit casts.

use crate::ring::{Ring, RingError};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    coeffs: Vec<R>, // length == order + 1
}

impl<R: Ring> TruncatedSeries<R> {
    /// Wraps an explicit coefficient vector c[0..=N].
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// c * q^n truncated at `order`.
    pub fn monomial(order: usize, n: usize, c: R) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^n. Panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &R {
        assert!(
            n <= self.order(),
            "coefficient {n} requested beyond truncation order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&R> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Restriction to a smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| R::add(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| R::sub(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(R::neg).collect(),
        }
    }

    /// Cauchy product truncated at min(N_a, N_b). The second operand's
    /// support is collected once so the pair loop only visits nonzero
    /// terms; products with lacunary series (theta-like expansions, Euler
    /// factors) then cost far below the dense N^2 bound.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![R::zero(); order + 1];
        let support: Vec<usize> = (0..=order)
            .filter(|&j| !other.coeffs[j].is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for &j in support.iter().take_while(|&&j| j <= order - i) {
                coeffs[i + j] = R::add(&coeffs[i + j], &R::mul(a, &other.coeffs[j]));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Scales every coefficient by a fixed ring element.
    pub fn scale(&self, c: &R) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| R::mul(a, c)).collect(),
        }
    }

    /// The substitution q -> w*q, realized coefficient-wise as c_n -> w^n c_n.
    pub fn scale_argument(&self, w: &R) -> Self {
        let mut power = R::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    power = R::mul(&power, w);
                }
                R::mul(c, &power)
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Division self/other by the standard recurrence
    /// r_i = (a_i - sum_{k>=1} b_k r_{i-k}) / b_0.
    /// Errors when the divisor's constant term is not a unit.
    pub fn div(&self, other: &Self) -> Result<Self, RingError> {
        let order = self.order().min(other.order());
        let b0_inv = R::invert(&other.coeffs[0])?;
        let trivial_b0 = other.coeffs[0].is_one();
        // Precomputing the divisor's support keeps the recurrence
        // O(order * nnz(divisor)).
        let support: Vec<usize> = (1..=order)
            .filter(|&k| !other.coeffs[k].is_zero())
            .collect();
        let mut out: Vec<R> = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let mut acc = self.coeffs[i].clone();
            for &k in support.iter().take_while(|&&k| k <= i) {
                if !out[i - k].is_zero() {
                    acc = R::sub(&acc, &R::mul(&other.coeffs[k], &out[i - k]));
                }
            }
            out.push(if trivial_b0 { acc } else { R::mul(&acc, &b0_inv) });
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self, RingError> {
        Self::one(self.order()).div(self)
    }

    /// self^e by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let order = self.order();
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(order);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// q^h * self; the order grows by h so no information is lost.
    pub fn shifted(&self, h: usize) -> Self {
        let mut coeffs = vec![R::zero(); h];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Coefficient-wise ring change.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}
