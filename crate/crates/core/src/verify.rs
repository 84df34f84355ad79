//! The identity harness: every coefficient identity in the library becomes
//! one named check producing a machine-readable [`CoeffReport`].
//!
//! Checks scan indices in ascending order and stop at the first mismatch,
//! so a failing report always carries the smallest offending index. All
//! checks are deterministic; reports differ between runs only in
//! `elapsed_ms`.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{
    a2_closed_form, a6_closed_form, a6_convolution, a6_divisor_sum, excess_e1_factored,
    fine_coefficient, gauss_a, isqrt, kac_b, xi_divisor_sums, RootOrder,
};
use crate::eta::NamedQuotient;
use crate::hilbert::{cn_series, pn_from_cn, specialization_check};
use crate::oeis;
use crate::ring::{rat, Cyclo12, Int, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity check over a coefficient range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffReport {
    #[serde(rename = "identity")]
    pub identity_id: String,
    #[serde(rename = "order")]
    pub order_checked: u64,
    pub passed: bool,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u64,
}

impl CoeffReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for CoeffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<16} order={:<6} {} ({} ms)",
            self.identity_id,
            self.order_checked,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed_ms
        )?;
        if let Some(m) = &self.first_mismatch {
            write!(f, "  first mismatch at n={}: {} != {}", m.n, m.lhs, m.rhs)?;
        }
        Ok(())
    }
}

/// Compares two indexed term generators over 0..=order, recording the first
/// index where they disagree. This is the primitive every check reduces to.
pub fn compare_terms<T, L, R>(id: &str, order: u64, lhs: L, rhs: R) -> CoeffReport
where
    T: PartialEq + fmt::Display,
    L: Fn(u64) -> T,
    R: Fn(u64) -> T,
{
    let start = Instant::now();
    let mut first_mismatch = None;
    for n in 0..=order {
        let a = lhs(n);
        let b = rhs(n);
        if a != b {
            first_mismatch = Some(Mismatch {
                n,
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
            break;
        }
    }
    CoeffReport {
        identity_id: id.to_string(),
        order_checked: order,
        passed: first_mismatch.is_none(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn finish(mut report: CoeffReport, started: Instant) -> CoeffReport {
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    report
}

/// Product coefficients of the weight-one quotient against the signed
/// r(n)-based closed form. Identity id "thm1.1".
pub fn check_a6_closed_form(order: u64) -> CoeffReport {
    let start = Instant::now();
    let series = NamedQuotient::F6
        .quotient()
        .expand(order as usize)
        .expect("F6 is a valid quotient");
    let report = compare_terms(
        "thm1.1",
        order,
        |n| series.coeff(n as usize).clone(),
        |n| Int::from(a6_closed_form(n)),
    );
    finish(report, start)
}

/// The three divisor-sum routes to a_6(n): the xi-sum, the closed form,
/// and Fine's formula at k=6, all against the product expansion.
/// Identity id "prop2.2".
pub fn check_a6_divisor_formulas(order: u64) -> CoeffReport {
    let start = Instant::now();
    let series = NamedQuotient::F6
        .quotient()
        .expand(order as usize)
        .expect("F6 is a valid quotient");
    let report = compare_terms(
        "prop2.2",
        order,
        |n| {
            format!(
                "divisor-sum={} fine6={} product={}",
                a6_divisor_sum(n),
                fine_coefficient(RootOrder::K6, n),
                series.coeff(n as usize)
            )
        },
        |n| {
            let v = a6_closed_form(n);
            format!("divisor-sum={v} fine6={v} product={v}")
        },
    );
    finish(report, start)
}

/// Both xi divisor sums against their excess-function values, skipping
/// multiples of 3 (where the sums are undefined). Identity id "lemma2.1".
pub fn check_xi_divisor_sums(order: u64) -> CoeffReport {
    compare_terms(
        "lemma2.1",
        order,
        |n| {
            if n == 0 || n % 3 == 0 {
                "skip".to_string()
            } else {
                let (s1, s3) = xi_divisor_sums(n).expect("3 does not divide n");
                format!("({s1}, {s3})")
            }
        },
        |n| {
            if n == 0 || n % 3 == 0 {
                "skip".to_string()
            } else {
                let e = excess_e1_factored(n).expect("n >= 1");
                format!("({}, {})", -e, -2 * e)
            }
        },
    )
}

/// a_6 against the rescaled a_2 values on each residue class mod 3.
/// Identity id "eq-a2a6".
pub fn check_a2_a6_relation(order: u64) -> CoeffReport {
    compare_terms(
        "eq-a2a6",
        order,
        |n| Int::from(a6_closed_form(n)),
        |n| {
            let a2 = a2_closed_form(n);
            Int::from(match n % 3 {
                0 => a2,
                1 => a2 / 4,
                _ => -a2 / 2,
            })
        },
    )
}

/// The Gauss*Kac convolution against the closed form. Identity id
/// "lemma4.1".
pub fn check_theta_convolution(order: u64) -> CoeffReport {
    compare_terms(
        "lemma4.1",
        order,
        |n| Int::from(a6_convolution(n)),
        |n| Int::from(a6_closed_form(n)),
    )
}

fn square_supported(n: u64, value_at: impl Fn(u64) -> i64) -> i64 {
    let s = isqrt(n);
    if s * s == n {
        value_at(s)
    } else {
        0
    }
}

/// The Kac eta-quotient expands with coefficients b(m) exactly on the
/// perfect squares m^2. Identity id "kac".
pub fn check_kac_expansion(order: u64) -> CoeffReport {
    let start = Instant::now();
    let series = NamedQuotient::Kac
        .quotient()
        .expand(order as usize)
        .expect("Kac is a valid quotient");
    let report = compare_terms(
        "kac",
        order,
        |n| series.coeff(n as usize).clone(),
        |n| Int::from(square_supported(n, kac_b)),
    );
    finish(report, start)
}

/// The Gauss eta-quotient expands with coefficients a(m) exactly on the
/// perfect squares m^2. Identity id "gauss".
pub fn check_gauss_expansion(order: u64) -> CoeffReport {
    let start = Instant::now();
    let series = NamedQuotient::Gauss
        .quotient()
        .expand(order as usize)
        .expect("Gauss is a valid quotient");
    let report = compare_terms(
        "gauss",
        order,
        |n| series.coeff(n as usize).clone(),
        |n| Int::from(square_supported(n, gauss_a)),
    );
    finish(report, start)
}

/// Kac * Gauss = F6 coefficientwise. Identity id "factorization".
pub fn check_theta_factorization(order: u64) -> CoeffReport {
    let start = Instant::now();
    let order_us = order as usize;
    let kac = NamedQuotient::Kac.quotient().expand(order_us).unwrap();
    let gauss = NamedQuotient::Gauss.quotient().expand(order_us).unwrap();
    let f6 = NamedQuotient::F6.quotient().expand(order_us).unwrap();
    let product = kac.mul(&gauss);
    let report = compare_terms(
        "factorization",
        order,
        |n| product.coeff(n as usize).clone(),
        |n| f6.coeff(n as usize).clone(),
    );
    finish(report, start)
}

/// The cyclotomic linear relation: over Q(zeta_12), with j the primitive
/// cube root and g the a_2 series,
///   (1/4) g(q) + ((1-j)/4) g(jq) + ((1-j^2)/4) g(j^2 q)
/// reproduces the a_6 series. The argument scalings are realized
/// coefficient-wise as c_n -> j^n c_n. Identity id "thm1.2".
pub fn check_cyclotomic_relation(order: u64) -> CoeffReport {
    let start = Instant::now();
    let order_us = order as usize;
    let g = NamedQuotient::G2
        .quotient()
        .expand(order_us)
        .unwrap()
        .map(Cyclo12::from_big_int);
    let f = NamedQuotient::F6
        .quotient()
        .expand(order_us)
        .unwrap()
        .map(Cyclo12::from_big_int);
    let j = Cyclo12::root_of_unity(3, 1).expect("3 divides 12");
    let j2 = Cyclo12::mul(&j, &j);
    let quarter = rat(1, 4);
    let a = Cyclo12::from_rat(quarter.clone());
    let b = Cyclo12::sub(&Cyclo12::one(), &j).scaled(&quarter);
    let c = Cyclo12::sub(&Cyclo12::one(), &j2).scaled(&quarter);
    let lhs = g
        .scale(&a)
        .add(&g.scale_argument(&j).scale(&b))
        .add(&g.scale_argument(&j2).scale(&c));
    let report = compare_terms(
        "thm1.2",
        order,
        |n| lhs.coeff(n as usize).clone(),
        |n| f.coeff(n as usize).clone(),
    );
    finish(report, start)
}

/// The scalar constants behind the cyclotomic relation:
/// a+b+c = 1, a+jb+j^2c = 1/4, a+j^2b+jc = -1/2.
pub fn cyclotomic_scalar_conditions() -> [(Cyclo12, Cyclo12); 3] {
    let j = Cyclo12::root_of_unity(3, 1).expect("3 divides 12");
    let j2 = Cyclo12::mul(&j, &j);
    let quarter = rat(1, 4);
    let a = Cyclo12::from_rat(quarter.clone());
    let b = Cyclo12::sub(&Cyclo12::one(), &j).scaled(&quarter);
    let c = Cyclo12::sub(&Cyclo12::one(), &j2).scaled(&quarter);
    let combo = |x: &Cyclo12, y: &Cyclo12| {
        Cyclo12::add(&a, &Cyclo12::add(&Cyclo12::mul(x, &b), &Cyclo12::mul(y, &c)))
    };
    [
        (
            Cyclo12::add(&a, &Cyclo12::add(&b, &c)),
            Cyclo12::one(),
        ),
        (combo(&j, &j2), Cyclo12::from_rat(rat(1, 4))),
        (combo(&j2, &j), Cyclo12::from_rat(rat(-1, 2))),
    ]
}

/// The whole Hilbert-polynomial block for n = 1..=max_n: palindromicity,
/// vanishing at 1, exact division by (x-1)^2 with the published quotient
/// structure, and the root-of-unity specializations for all four orders.
/// Identity id "specialization".
pub fn check_hilbert_polynomials(max_n: u64) -> CoeffReport {
    let start = Instant::now();
    let polys = cn_series(max_n as usize);
    let mut first_mismatch = None;
    'outer: for c in &polys {
        let n = c.index() as u64;
        if !c.is_palindromic() || !c.vanishes_at_one() {
            first_mismatch = Some(Mismatch {
                n,
                lhs: c.poly().to_string(),
                rhs: "a palindromic polynomial vanishing at 1".to_string(),
            });
            break;
        }
        if let Err(err) = pn_from_cn(c) {
            first_mismatch = Some(Mismatch {
                n,
                lhs: err.to_string(),
                rhs: "C_n = (x-1)^2 P_n with P_n palindromic, P_n >= 0, P_n(1) = sigma(n)"
                    .to_string(),
            });
            break;
        }
        for k in RootOrder::ALL {
            if !specialization_check(k, c) {
                let zeta = Cyclo12::root_of_unity(k.k(), 1).unwrap();
                first_mismatch = Some(Mismatch {
                    n,
                    lhs: c.poly().eval_cyclo(&zeta).unwrap().to_string(),
                    rhs: format!(
                        "a_{}({n}) * zeta_{}^{n} = {}",
                        k.k(),
                        k.k(),
                        Cyclo12::root_of_unity(k.k(), n as i64)
                            .unwrap()
                            .scaled(&rat(fine_coefficient(k, n), 1))
                    ),
                });
                break 'outer;
            }
        }
    }
    CoeffReport {
        identity_id: "specialization".to_string(),
        order_checked: max_n,
        passed: first_mismatch.is_none(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Bundled OEIS b-files against the closed forms: A004018 vs r(n) and
/// A258210 vs a_6(n). Always uses the fixtures shipped with the crate, so
/// the check is deterministic and network-free.
pub fn check_oeis_fixtures(limit: usize) -> Vec<CoeffReport> {
    let r_file = oeis::bundled_bfile("A004018").expect("bundled fixture");
    let a6_file = oeis::bundled_bfile("A258210").expect("bundled fixture");
    vec![
        oeis::compare_sequence(&r_file, |n| Int::from(crate::arith::r_from_excess(n as u64)), limit),
        oeis::compare_sequence(&a6_file, |n| Int::from(a6_closed_form(n as u64)), limit),
    ]
}

/// Per-check truncation orders. The defaults reproduce the full published
/// tables in a few seconds of CPU time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub a6_closed_form_order: u64,
    pub cyclotomic_order: u64,
    pub divisor_formula_order: u64,
    pub xi_sums_order: u64,
    pub a2_a6_order: u64,
    pub convolution_order: u64,
    pub kac_order: u64,
    pub gauss_order: u64,
    pub factorization_order: u64,
    pub hilbert_max_n: u64,
    pub oeis_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            a6_closed_form_order: 5000,
            cyclotomic_order: 2000,
            divisor_formula_order: 5000,
            xi_sums_order: 10_000,
            a2_a6_order: 5000,
            convolution_order: 5000,
            kac_order: 10_000,
            gauss_order: 10_000,
            factorization_order: 2000,
            hilbert_max_n: 60,
            oeis_limit: 1000,
        }
    }
}

impl VerifyConfig {
    /// Overrides every per-check order with one value (the hilbert block
    /// is capped separately since its cost grows much faster).
    pub fn with_uniform_order(order: u64) -> Self {
        VerifyConfig {
            a6_closed_form_order: order,
            cyclotomic_order: order,
            divisor_formula_order: order,
            xi_sums_order: order,
            a2_a6_order: order,
            convolution_order: order,
            kac_order: order,
            gauss_order: order,
            factorization_order: order,
            hilbert_max_n: order.clamp(1, 200),
            oeis_limit: order as usize,
        }
    }
}

/// Runs every check in a fixed canonical order.
pub fn run_all(config: &VerifyConfig) -> Vec<CoeffReport> {
    let mut reports = vec![
        check_a6_closed_form(config.a6_closed_form_order),
        check_cyclotomic_relation(config.cyclotomic_order),
        check_a6_divisor_formulas(config.divisor_formula_order),
        check_xi_divisor_sums(config.xi_sums_order),
        check_a2_a6_relation(config.a2_a6_order),
        check_theta_convolution(config.convolution_order),
        check_kac_expansion(config.kac_order),
        check_gauss_expansion(config.gauss_order),
        check_theta_factorization(config.factorization_order),
        check_hilbert_polynomials(config.hilbert_max_n),
    ];
    reports.extend(check_oeis_fixtures(config.oeis_limit));
    reports
}
