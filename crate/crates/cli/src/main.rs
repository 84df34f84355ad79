//! etaq: command-line front end for exact eta-quotient q-series arithmetic.
//!
//! Subcommands: `expand` (integer q-expansions of eta quotients), `verify`
//! (the identity check suite), `hilbert` (the C_n/P_n polynomials), and
//! `table` (named coefficient sequences). Data goes to stdout, diagnostics
//! to stderr. Exit codes: 0 on success and all checks passed, 1 on a
//! verification failure, 2 on usage or parse errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use etaq_core::arith::{
    a2_closed_form, a6_closed_form, excess_e1_factored, fine_coefficient, gauss_a, kac_b,
    r_from_excess, RootOrder,
};
use etaq_core::hilbert::{cn_series, pn_from_cn, CnPolynomial};
use etaq_core::verify::{
    check_a2_a6_relation, check_a6_closed_form, check_a6_divisor_formulas,
    check_cyclotomic_relation, check_gauss_expansion, check_hilbert_polynomials,
    check_kac_expansion, check_oeis_fixtures, check_theta_convolution,
    check_theta_factorization, check_xi_divisor_sums,
};
use etaq_core::{CoeffReport, EtaQuotient, Int, LaurentPoly, VerifyConfig};

const USAGE_ERROR: u8 = 2;
const VERIFY_FAILURE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "etaq",
    version,
    about = "Exact q-series arithmetic for Dedekind eta quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Include a header row in CSV output
    #[arg(long, global = true)]
    header: bool,

    /// Never touch the network (all verification data is bundled anyway)
    #[arg(long, global = true)]
    offline: bool,

    /// OEIS cache directory (overrides ETAQ_CACHE_DIR)
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Cn,
    Pn,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an eta quotient as an integer q-series
    Expand {
        /// Comma-separated d^e factors, e.g. "1^1,2^1,3^1,6^-1"
        #[arg(long)]
        quotient: String,

        /// Truncation order
        #[arg(short = 'N', long = "order", default_value_t = 20)]
        order: usize,
    },

    /// Run identity checks and print their reports
    Verify {
        /// Identity ids (thm1.1, thm1.2, prop2.2, lemma2.1, eq-a2a6,
        /// lemma4.1, kac, gauss, factorization, specialization, oeis) or
        /// "all"
        #[arg(default_values_t = [String::from("all")])]
        identities: Vec<String>,

        /// Override the per-check order
        #[arg(short = 'N', long = "order")]
        order: Option<u64>,
    },

    /// Print the polynomials C_n(x) and P_n(x) with structure checks
    Hilbert {
        /// Single index or inclusive range, e.g. 6 or 1..5
        range: String,

        /// Which polynomials to print
        #[arg(long, value_enum, default_value_t = Show::Both)]
        show: Show,
    },

    /// Print a named coefficient sequence as a two-column table
    Table {
        /// Sequence id: a6, a2, r, e1, b, a, or ak:<k> with k in {2,3,4,6}
        #[arg(long)]
        seq: String,

        /// Largest index
        #[arg(short = 'N', long = "order", default_value_t = 20)]
        order: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Expand { quotient, order } => cmd_expand(&cli, quotient, *order),
        Command::Verify { identities, order } => cmd_verify(&cli, identities, *order),
        Command::Hilbert { range, show } => cmd_hilbert(&cli, range, *show),
        Command::Table { seq, order } => cmd_table(&cli, seq, *order),
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE_ERROR)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_indexed_values(cli: &Cli, start: u64, values: &[Int]) {
    match cli.format {
        Format::Table => {
            for (i, v) in values.iter().enumerate() {
                println!("{:>8}  {v}", start + i as u64);
            }
        }
        Format::Json => {
            let rendered: Vec<String> = values.iter().map(Int::to_string).collect();
            println!("[{}]", rendered.join(","));
        }
        Format::Csv => {
            if cli.header {
                println!("n,value");
            }
            for (i, v) in values.iter().enumerate() {
                println!("{},{v}", start + i as u64);
            }
        }
    }
}

fn cmd_expand(cli: &Cli, quotient: &str, order: usize) -> ExitCode {
    let parsed: EtaQuotient = match quotient.parse() {
        Ok(q) => q,
        Err(e) => return usage_error(&e.to_string()),
    };
    let series = match parsed.expand(order) {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    print_indexed_values(cli, 0, series.coeffs());
    ExitCode::SUCCESS
}

/// One identity id resolved to its reports; `None` for unknown ids.
fn run_check(id: &str, order: Option<u64>) -> Option<Vec<CoeffReport>> {
    let defaults = VerifyConfig::default();
    Some(match id {
        "thm1.1" => vec![check_a6_closed_form(
            order.unwrap_or(defaults.a6_closed_form_order),
        )],
        "thm1.2" => vec![check_cyclotomic_relation(
            order.unwrap_or(defaults.cyclotomic_order),
        )],
        "prop2.2" => vec![check_a6_divisor_formulas(
            order.unwrap_or(defaults.divisor_formula_order),
        )],
        "lemma2.1" => vec![check_xi_divisor_sums(order.unwrap_or(defaults.xi_sums_order))],
        "eq-a2a6" => vec![check_a2_a6_relation(order.unwrap_or(defaults.a2_a6_order))],
        "lemma4.1" => vec![check_theta_convolution(
            order.unwrap_or(defaults.convolution_order),
        )],
        "kac" => vec![check_kac_expansion(order.unwrap_or(defaults.kac_order))],
        "gauss" => vec![check_gauss_expansion(order.unwrap_or(defaults.gauss_order))],
        "factorization" => vec![check_theta_factorization(
            order.unwrap_or(defaults.factorization_order),
        )],
        "specialization" => vec![check_hilbert_polynomials(
            order
                .map(|n| n.clamp(1, 200))
                .unwrap_or(defaults.hilbert_max_n),
        )],
        "oeis" => check_oeis_fixtures(
            order
                .map(|n| n as usize)
                .unwrap_or(defaults.oeis_limit),
        ),
        _ => return None,
    })
}

fn cmd_verify(cli: &Cli, identities: &[String], order: Option<u64>) -> ExitCode {
    let mut reports = Vec::new();
    if identities.iter().any(|id| id == "all") {
        let config = match order {
            Some(n) => VerifyConfig::with_uniform_order(n),
            None => VerifyConfig::default(),
        };
        reports = etaq_core::verify::run_all(&config);
    } else {
        for id in identities {
            match run_check(id, order) {
                Some(mut batch) => reports.append(&mut batch),
                None => return usage_error(&format!("unknown identity id {id:?}")),
            }
        }
    }

    match cli.format {
        Format::Table => {
            for report in &reports {
                println!("{report}");
            }
        }
        Format::Json => {
            let rendered: Vec<String> = reports.iter().map(CoeffReport::to_json).collect();
            println!("[{}]", rendered.join(","));
        }
        Format::Csv => {
            if cli.header {
                println!("identity,order,passed,elapsed_ms,mismatch_n,mismatch_lhs,mismatch_rhs");
            }
            for report in &reports {
                let (n, lhs, rhs) = report
                    .first_mismatch
                    .as_ref()
                    .map(|m| (m.n.to_string(), m.lhs.clone(), m.rhs.clone()))
                    .unwrap_or_default();
                println!(
                    "{},{},{},{},{},{},{}",
                    csv_field(&report.identity_id),
                    report.order_checked,
                    report.passed,
                    report.elapsed_ms,
                    n,
                    csv_field(&lhs),
                    csv_field(&rhs)
                );
            }
        }
    }

    if reports.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFY_FAILURE)
    }
}

fn parse_range(range: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match range.split_once("..") {
        Some((a, b)) => {
            let lo = a.trim().parse().map_err(|_| format!("bad index {a:?}"))?;
            let b = b.trim().strip_prefix('=').unwrap_or(b.trim());
            let hi = b.parse().map_err(|_| format!("bad index {b:?}"))?;
            (lo, hi)
        }
        None => {
            let n = range
                .trim()
                .parse()
                .map_err(|_| format!("bad index {range:?}"))?;
            (n, n)
        }
    };
    if lo < 1 || hi < lo {
        return Err(format!("range must satisfy 1 <= lo <= hi, got {lo}..{hi}"));
    }
    Ok((lo, hi))
}

fn dense_coeffs(p: &LaurentPoly, degree: i64) -> Vec<Int> {
    (0..=degree.max(0)).map(|e| p.coeff(e)).collect()
}

fn coeff_list(coeffs: &[Int]) -> String {
    let rendered: Vec<String> = coeffs.iter().map(Int::to_string).collect();
    format!("[{}]", rendered.join(", "))
}

struct HilbertRow {
    n: usize,
    cn: Vec<Int>,
    pn: Vec<Int>,
    sigma: u64,
    ok: bool,
    note: String,
}

fn hilbert_row(c: &CnPolynomial) -> HilbertRow {
    let n = c.index();
    let cn = dense_coeffs(c.poly(), 2 * n as i64);
    let sigma = etaq_core::arith::sigma(n as u64).expect("n >= 1");
    let structure_ok = c.is_palindromic() && c.vanishes_at_one();
    match pn_from_cn(c) {
        Ok(p) => HilbertRow {
            n,
            cn,
            pn: dense_coeffs(&p, 2 * n as i64 - 2),
            sigma,
            ok: structure_ok,
            note: if structure_ok {
                String::new()
            } else {
                "C_n structure check failed".to_string()
            },
        },
        Err(e) => HilbertRow {
            n,
            cn,
            pn: Vec::new(),
            sigma,
            ok: false,
            note: e.to_string(),
        },
    }
}

fn cmd_hilbert(cli: &Cli, range: &str, show: Show) -> ExitCode {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    let polys = cn_series(hi);
    let rows: Vec<HilbertRow> = polys[lo - 1..].iter().map(hilbert_row).collect();

    match cli.format {
        Format::Table => {
            for row in &rows {
                let mut line = format!("n={}", row.n);
                if show != Show::Pn {
                    line += &format!("  C_{}={}", row.n, coeff_list(&row.cn));
                }
                if show != Show::Cn {
                    line += &format!("  P_{}={}", row.n, coeff_list(&row.pn));
                    let p1: Int = row.pn.iter().sum();
                    line += &format!("  P_{}(1)={p1} sigma={}", row.n, row.sigma);
                }
                line += if row.ok { "  ok" } else { "  FAIL" };
                if !row.note.is_empty() {
                    line += &format!(" ({})", row.note);
                }
                println!("{line}");
            }
        }
        Format::Json => {
            let objects: Vec<String> = rows
                .iter()
                .map(|row| {
                    let cn: Vec<String> = row.cn.iter().map(Int::to_string).collect();
                    let pn: Vec<String> = row.pn.iter().map(Int::to_string).collect();
                    let mut fields = vec![format!("\"n\":{}", row.n)];
                    if show != Show::Pn {
                        fields.push(format!("\"cn\":[{}]", cn.join(",")));
                    }
                    if show != Show::Cn {
                        fields.push(format!("\"pn\":[{}]", pn.join(",")));
                        fields.push(format!("\"sigma\":{}", row.sigma));
                    }
                    fields.push(format!("\"ok\":{}", row.ok));
                    format!("{{{}}}", fields.join(","))
                })
                .collect();
            println!("[{}]", objects.join(","));
        }
        Format::Csv => {
            if cli.header {
                println!("n,polynomial,coefficients...");
            }
            for row in &rows {
                if show != Show::Pn {
                    let cn: Vec<String> = row.cn.iter().map(Int::to_string).collect();
                    println!("{},cn,{}", row.n, cn.join(","));
                }
                if show != Show::Cn {
                    let pn: Vec<String> = row.pn.iter().map(Int::to_string).collect();
                    println!("{},pn,{}", row.n, pn.join(","));
                }
            }
        }
    }

    if rows.iter().all(|r| r.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFY_FAILURE)
    }
}

fn cmd_table(cli: &Cli, seq: &str, order: u64) -> ExitCode {
    // e1 is a divisor count difference, undefined at 0; its table starts at 1.
    let (start, values): (u64, Vec<Int>) = if let Some(k_str) = seq.strip_prefix("ak:") {
        let k: u32 = match k_str.parse() {
            Ok(k) => k,
            Err(_) => return usage_error(&format!("bad order in sequence id {seq:?}")),
        };
        let k = match RootOrder::try_from(k) {
            Ok(k) => k,
            Err(e) => return usage_error(&e.to_string()),
        };
        (0, (0..=order).map(|n| Int::from(fine_coefficient(k, n))).collect())
    } else {
        match seq {
            "a6" => (0, (0..=order).map(|n| Int::from(a6_closed_form(n))).collect()),
            "a2" => (0, (0..=order).map(|n| Int::from(a2_closed_form(n))).collect()),
            "r" => (0, (0..=order).map(|n| Int::from(r_from_excess(n))).collect()),
            "e1" => (
                1,
                (1..=order.max(1))
                    .map(|n| Int::from(excess_e1_factored(n).expect("n >= 1")))
                    .collect(),
            ),
            "b" => (0, (0..=order).map(|n| Int::from(kac_b(n))).collect()),
            "a" => (0, (0..=order).map(|n| Int::from(gauss_a(n))).collect()),
            _ => return usage_error(&format!("unknown sequence id {seq:?}")),
        }
    };
    print_indexed_values(cli, start, &values);
    ExitCode::SUCCESS
}
