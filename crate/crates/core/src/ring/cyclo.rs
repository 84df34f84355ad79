//! The cyclotomic field Q(zeta_12).
//!
//! A single field suffices for every root of unity of order dividing 12
//! (orders 1, 2, 3, 4, 6, 12), which covers all special values needed by
//! the coefficient identities in this crate.

use std::fmt;

use super::{rat, Int, Rat, Ring, RingError};

/// An element of Q(zeta_12) on the power basis {1, z, z^2, z^3} where
/// z is a primitive 12th root of unity.
///
/// The minimal polynomial is x^4 - x^2 + 1, so every product is reduced by
/// z^4 = z^2 - 1. The coordinate vector is therefore a canonical form:
/// two elements are equal iff their coordinates are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo12 {
    coords: [Rat; 4],
}

/// z^m for 0 <= m < 12 on the basis {1, z, z^2, z^3}.
/// Derived from z^4 = z^2 - 1; in particular z^6 = -1.
const ZETA_POWERS: [[i8; 4]; 12] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 1, 0],
    [0, -1, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, 0, -1, 0],
    [0, 1, 0, -1],
];

fn zero_coords() -> [Rat; 4] {
    [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()]
}

impl Cyclo12 {
    pub fn from_coords(coords: [Rat; 4]) -> Self {
        Cyclo12 { coords }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut coords = zero_coords();
        coords[0] = r;
        Cyclo12 { coords }
    }

    pub fn from_big_int(n: &Int) -> Self {
        Self::from_rat(Rat::from_integer(n.clone()))
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.coords
    }

    /// z^m for any integer m (taken modulo 12).
    pub fn zeta_pow(m: i64) -> Self {
        let row = &ZETA_POWERS[m.rem_euclid(12) as usize];
        let mut coords = zero_coords();
        for (c, &v) in coords.iter_mut().zip(row.iter()) {
            *c = rat(v as i64, 1);
        }
        Cyclo12 { coords }
    }

    /// The exact value of e^(2*pi*i*power/k) for k dividing 12.
    pub fn root_of_unity(k: u32, power: i64) -> Result<Self, RingError> {
        if k == 0 || 12 % k != 0 {
            return Err(RingError::InvalidRootOrder(k));
        }
        Ok(Self::zeta_pow((12 / k as i64) * power))
    }

    pub fn scaled(&self, s: &Rat) -> Self {
        let mut coords = zero_coords();
        for (out, c) in coords.iter_mut().zip(self.coords.iter()) {
            *out = c * s;
        }
        Cyclo12 { coords }
    }

    /// True iff the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Ring::is_zero)
    }

    pub fn rational_part(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.coords[0])
    }

    /// The field automorphism z -> z^k; k must be coprime to 12.
    fn galois(&self, k: i64) -> Self {
        debug_assert!(matches!(k.rem_euclid(12), 1 | 5 | 7 | 11));
        let mut out = Self::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = Self::add(&out, &Self::zeta_pow(i as i64 * k).scaled(c));
        }
        out
    }

    /// self^e by square-and-multiply; negative exponents go through invert.
    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let base = if e < 0 {
            Ring::invert(self)?
        } else {
            self.clone()
        };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Self::mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = Self::mul(&sq, &sq);
            }
        }
        Ok(acc)
    }
}

impl Ring for Cyclo12 {
    fn zero() -> Self {
        Cyclo12 {
            coords: zero_coords(),
        }
    }

    fn one() -> Self {
        Self::zeta_pow(0)
    }

    fn add(a: &Self, b: &Self) -> Self {
        let mut coords = zero_coords();
        for (out, (x, y)) in coords.iter_mut().zip(a.coords.iter().zip(&b.coords)) {
            *out = x + y;
        }
        Cyclo12 { coords }
    }

    fn neg(a: &Self) -> Self {
        let mut coords = zero_coords();
        for (out, x) in coords.iter_mut().zip(&a.coords) {
            *out = -x;
        }
        Cyclo12 { coords }
    }

    fn mul(a: &Self, b: &Self) -> Self {
        // Convolution up to z^6, then reduction through the power table.
        let mut conv: [Rat; 7] = std::array::from_fn(|_| Rat::zero());
        for i in 0..4 {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if b.coords[j].is_zero() {
                    continue;
                }
                conv[i + j] = &conv[i + j] + &(&a.coords[i] * &b.coords[j]);
            }
        }
        let mut coords = zero_coords();
        for (m, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, &v) in ZETA_POWERS[m].iter().enumerate() {
                if v != 0 {
                    let term = c * rat(v as i64, 1);
                    coords[t] = &coords[t] + &term;
                }
            }
        }
        Cyclo12 { coords }
    }

    fn invert(a: &Self) -> Result<Self, RingError> {
        if Ring::is_zero(a) {
            return Err(RingError::DivisionByZero);
        }
        // Product of the nontrivial Galois conjugates; a times that product
        // is the field norm, a nonzero rational.
        let conj = Self::mul(&Self::mul(&a.galois(5), &a.galois(7)), &a.galois(11));
        let norm = Self::mul(a, &conj);
        let norm = norm
            .rational_part()
            .expect("norm of a cyclotomic element is rational");
        Ok(conj.scaled(&norm.recip()))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Ring::is_zero)
    }
}

impl fmt::Display for Cyclo12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}
