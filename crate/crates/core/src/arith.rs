//! Scalar arithmetic functions behind the coefficient identities:
//! lattice-point counts r(n), the excess function E_1(n;4), the 12-periodic
//! sine values xi(m), divisor-sum coefficient formulas, and the Gauss/Kac
//! theta coefficients.
//!
//! Wherever a closed form exists, a brute-force counterpart is also provided
//! (`r_lattice`, `excess_e1_divisors`) so the two routes can be checked
//! against each other.

use num_integer::Roots;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be positive")]
    ZeroArgument,
    #[error("xi is defined on odd integers only, got {0}")]
    EvenArgument(i64),
    #[error("argument must not be divisible by 3, got {0}")]
    DivisibleByThree(u64),
    #[error("unsupported root order {0}; only 2, 3, 4, 6 have integer 2cos(2pi/k)")]
    UnsupportedOrder(u32),
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

/// Trial-division prime factorization, (prime, exponent) pairs ascending.
/// Intended for n up to about 10^9.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(factors)
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    let factors = factorize(n)?;
    let mut divs = vec![1u64];
    for (p, e) in factors {
        let snapshot = divs.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            divs.extend(snapshot.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Number of integer pairs (x, y) with x^2 + y^2 = n, by direct enumeration
/// over |x| <= sqrt(n). This is the oracle the closed forms are checked
/// against; r(0) = 1.
pub fn r_lattice(n: u64) -> u64 {
    let s = isqrt(n);
    let mut count = 0u64;
    for x in 0..=s {
        let rem = n - x * x;
        let y = isqrt(rem);
        if y * y == rem {
            let x_signs = if x == 0 { 1 } else { 2 };
            let y_signs = if y == 0 { 1 } else { 2 };
            count += x_signs * y_signs;
        }
    }
    count
}

fn mod4_weight(d: u64) -> i64 {
    match d % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// E_1(n;4) by direct divisor enumeration:
/// #{d | n : d = 1 mod 4} - #{d | n : d = 3 mod 4}.
pub fn excess_e1_divisors(n: u64) -> i64 {
    assert!(n >= 1, "excess function needs n >= 1");
    let mut excess = 0i64;
    let s = isqrt(n);
    for d in 1..=s {
        if n % d != 0 {
            continue;
        }
        excess += mod4_weight(d);
        if d != n / d {
            excess += mod4_weight(n / d);
        }
    }
    excess
}

/// E_1(n;4) from the prime factorization: zero when some prime = 3 mod 4
/// appears to an odd power, otherwise the product of (1 + a_i) over primes
/// = 1 mod 4.
pub fn excess_e1_factored(n: u64) -> Result<i64, ArithError> {
    let factors = factorize(n)?;
    let mut product = 1i64;
    for (p, e) in factors {
        match p % 4 {
            1 => product *= 1 + e as i64,
            3 if e % 2 == 1 => return Ok(0),
            _ => {} // the prime 2 and even powers of 3-mod-4 primes contribute nothing
        }
    }
    Ok(product)
}

/// r(n) = 4 E_1(n;4) for n >= 1, and r(0) = 1.
pub fn r_from_excess(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let e = excess_e1_factored(n).expect("n >= 1");
    debug_assert!(e >= 0);
    4 * e as u64
}

/// xi(m) = -2 sin(m pi / 6) for odd m; depends only on m mod 12.
pub fn xi(m: i64) -> Result<i64, ArithError> {
    match m.rem_euclid(12) {
        1 | 5 => Ok(-1),
        3 => Ok(-2),
        7 | 11 => Ok(1),
        9 => Ok(2),
        _ => Err(ArithError::EvenArgument(m)),
    }
}

/// The pair (sum xi(d), sum xi(3d)) over the odd divisors d of n, defined
/// for n coprime to 3. Both sums collapse to multiples of E_1(n;4).
pub fn xi_divisor_sums(n: u64) -> Result<(i64, i64), ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroArgument);
    }
    if n % 3 == 0 {
        return Err(ArithError::DivisibleByThree(n));
    }
    let mut sum_xi = 0i64;
    let mut sum_xi3 = 0i64;
    for d in divisors(n)? {
        if d % 2 == 1 {
            sum_xi += xi(d as i64).expect("odd divisor");
            sum_xi3 += xi(3 * d as i64).expect("odd multiple of odd");
        }
    }
    Ok((sum_xi, sum_xi3))
}

/// a_6(n) as the divisor sum of xi(2n/d - d) over odd divisors d of n;
/// the constant term a_6(0) is 1.
pub fn a6_divisor_sum(n: u64) -> i64 {
    if n == 0 {
        return 1;
    }
    let mut total = 0i64;
    for d in divisors(n).expect("n >= 1") {
        if d % 2 == 1 {
            let m = 2 * (n as i64) / (d as i64) - d as i64;
            total += xi(m).expect("2n/d - d is odd for odd d | n");
        }
    }
    total
}

/// a_6(n) through the signed r(n) closed form, split on n mod 3.
/// The divisions by 4 and by 2 are exact because r(n) is a multiple of 4
/// for n >= 1; a failed division would indicate an internal bug and panics.
pub fn a6_closed_form(n: u64) -> i64 {
    let r = r_from_excess(n) as i64;
    let m = (n / 3) as u32;
    let sign = |odd: bool| if odd { -1 } else { 1 };
    match n % 3 {
        0 => sign(m % 2 == 1) * r,
        1 => {
            assert!(r % 4 == 0, "r({n}) = {r} is not divisible by 4");
            sign(m % 2 == 0) * (r / 4)
        }
        _ => {
            assert!(r % 2 == 0, "r({n}) = {r} is not divisible by 2");
            sign(m % 2 == 0) * (r / 2)
        }
    }
}

/// a_2(n) = (-1)^n r(n).
pub fn a2_closed_form(n: u64) -> i64 {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    sign * r_from_excess(n) as i64
}

/// Checks the three-way relation between a_6 and a_2 at indices
/// 3m, 3m+1, 3m+2.
pub fn a2_a6_relation_check(m: u64) -> (bool, bool, bool) {
    let n0 = 3 * m;
    let a2_1 = a2_closed_form(n0 + 1);
    let a2_2 = a2_closed_form(n0 + 2);
    assert!(a2_1 % 4 == 0 || n0 + 1 == 0);
    assert!(a2_2 % 2 == 0);
    (
        a6_closed_form(n0) == a2_closed_form(n0),
        a6_closed_form(n0 + 1) == a2_1 / 4,
        a6_closed_form(n0 + 2) == -a2_2 / 2,
    )
}

/// The orders k for which 2cos(2pi/k) is an integer, i.e. for which the
/// two-parameter product specializes to an integer series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootOrder {
    K2,
    K3,
    K4,
    K6,
}

impl RootOrder {
    pub const ALL: [RootOrder; 4] = [
        RootOrder::K2,
        RootOrder::K3,
        RootOrder::K4,
        RootOrder::K6,
    ];

    pub fn k(self) -> u32 {
        match self {
            RootOrder::K2 => 2,
            RootOrder::K3 => 3,
            RootOrder::K4 => 4,
            RootOrder::K6 => 6,
        }
    }

    /// 2 cos(2 pi / k): -2, -1, 0, 1 for k = 2, 3, 4, 6.
    pub fn two_cos(self) -> i64 {
        match self {
            RootOrder::K2 => -2,
            RootOrder::K3 => -1,
            RootOrder::K4 => 0,
            RootOrder::K6 => 1,
        }
    }

    /// 4 sin(pi/k) sin(m pi/k) for odd m, which is an integer exactly for
    /// these four orders. Derived once from half-angle values:
    ///   k=2: 4 sin(m pi/2)          -> +-4
    ///   k=3: 2 sqrt3 sin(m pi/3)    -> +-3 or 0
    ///   k=4: 2 sqrt2 sin(m pi/4)    -> +-2
    ///   k=6: 2 sin(m pi/6)          -> -xi(m)
    pub fn sine_product(self, m: i64) -> i64 {
        let r = m.rem_euclid(2 * self.k() as i64);
        debug_assert!(r % 2 == 1, "sine table is for odd m");
        match self {
            RootOrder::K2 => match r {
                1 => 4,
                _ => -4, // r == 3
            },
            RootOrder::K3 => match r {
                1 => 3,
                3 => 0,
                _ => -3, // r == 5
            },
            RootOrder::K4 => match r {
                1 | 3 => 2,
                _ => -2, // r == 5 or 7
            },
            RootOrder::K6 => -xi(m).expect("odd m"),
        }
    }
}

impl TryFrom<u32> for RootOrder {
    type Error = ArithError;

    fn try_from(k: u32) -> Result<Self, ArithError> {
        match k {
            2 => Ok(RootOrder::K2),
            3 => Ok(RootOrder::K3),
            4 => Ok(RootOrder::K4),
            6 => Ok(RootOrder::K6),
            other => Err(ArithError::UnsupportedOrder(other)),
        }
    }
}

/// a_k(n) by Fine's divisor-sum formula, specialized to the four integer
/// orders: a_k(0) = 1 and
/// a_k(n) = -sum over odd d | n of 4 sin(pi/k) sin((2n/d - d) pi/k).
pub fn fine_coefficient(k: RootOrder, n: u64) -> i64 {
    if n == 0 {
        return 1;
    }
    let mut total = 0i64;
    for d in divisors(n).expect("n >= 1") {
        if d % 2 == 1 {
            let m = 2 * (n as i64) / (d as i64) - d as i64;
            total -= k.sine_product(m);
        }
    }
    total
}

/// Gauss theta coefficients: a(0) = 1, a(n) = 2(-1)^n for n > 0.
pub fn gauss_a(n: u64) -> i64 {
    if n == 0 {
        1
    } else if n % 2 == 0 {
        2
    } else {
        -2
    }
}

/// Kac theta coefficients: b(0) = 1, b(3m) = 2(-1)^m for m > 0, and
/// b(n) = (-1)^(n-1) when 3 does not divide n.
pub fn kac_b(n: u64) -> i64 {
    if n == 0 {
        1
    } else if n % 3 == 0 {
        if (n / 3) % 2 == 0 {
            2
        } else {
            -2
        }
    } else if n % 2 == 1 {
        1
    } else {
        -1
    }
}

/// The convolution sum of a(x) b(y) over non-negative pairs with
/// x^2 + y^2 = n; agrees with a_6(n).
pub fn a6_convolution(n: u64) -> i64 {
    let s = isqrt(n);
    let mut total = 0i64;
    for x in 0..=s {
        let rem = n - x * x;
        let y = isqrt(rem);
        if y * y == rem {
            total += gauss_a(x) * kac_b(y);
        }
    }
    total
}

/// Sum of divisors of n.
pub fn sigma(n: u64) -> Result<u64, ArithError> {
    Ok(divisors(n)?.into_iter().sum())
}
