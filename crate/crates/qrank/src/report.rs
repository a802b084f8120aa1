//! Per-prime report assembling the expansion, Pell, class-number and
//! complexity data, plus its CSV and JSON projections.

use serde::Serialize;

use crate::cfrac::{convergents, expand_sqrt};
use crate::complexity::{
    brute_force_dimension, classify_midpoint, closed_form_complexity, match_family,
    DimensionParams, MidpointKind,
};
use crate::error::{Error, Result};
use crate::muir::{radicand_from_solution, solve_multiplier};
use crate::primes::is_prime;
use crate::rank::{class_number, q_rank};
use num_bigint::BigInt;

/// Fixed CSV column order.
pub const CSV_HEADER: &str =
    "p,residue8,cf,period_len,midpoint,q_rank,h_K,mw_rank,c_closed,c_brute,conjecture_ok";

/// Everything the pipeline knows about one prime p = 3 mod 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    pub p: u64,
    pub residue8: u64,
    pub cf: String,
    pub period_len: usize,
    pub midpoint: String,
    pub family: Option<String>,
    pub q_rank: u32,
    pub h_k: u64,
    pub mw_rank: u64,
    pub c_closed: u32,
    pub c_brute: Option<u32>,
    pub conjecture_ok: bool,
}

impl PrimeReport {
    pub fn csv_row(&self) -> String {
        let brute = self.c_brute.map(|c| c.to_string()).unwrap_or_default();
        format!(
            "{},{},\"{}\",{},{},{},{},{},{},{},{}",
            self.p,
            self.residue8,
            self.cf,
            self.period_len,
            self.midpoint,
            self.q_rank,
            self.h_k,
            self.mw_rank,
            self.c_closed,
            brute,
            self.conjecture_ok
        )
    }
}

/// Build the full report for a prime p = 3 mod 4.
///
/// Internal cross-checks are enforced here so a
/// sweep fails loudly rather than emitting inconsistent rows: the period
/// must be even with full quotient 2 at the midpoint, the midpoint class
/// must not be `neither`, and the tuple must regenerate p through the
/// radicand formula.
pub fn prime_report(p: u64, brute: Option<DimensionParams>) -> Result<PrimeReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 {
        return Err(Error::WrongResidue {
            p,
            expected: "3 mod 4",
        });
    }
    let cf = expand_sqrt(p)?;
    let period_len = cf.period_len();
    let class = classify_midpoint(&cf)?;
    if class.kind == MidpointKind::Neither {
        return Err(Error::NotASolution);
    }
    // Midpoint identity: A_{k-1}^2 - p B_{k-1}^2 = (-1)^k * 2.
    let table = convergents(&cf, class.k)?;
    if table.q[class.k] != BigInt::from(2) {
        return Err(Error::NotASolution);
    }
    // Round trip through the period equation.
    let xs = cf.tuple()?;
    let m = solve_multiplier(&xs)?.ok_or(Error::NotASolution)?;
    if radicand_from_solution(&xs, &m)? != BigInt::from(p) {
        return Err(Error::NotASolution);
    }

    let q = q_rank(p)?;
    let h = class_number(-(p as i64))?;
    let c_closed = closed_form_complexity(p)?;
    let c_brute = match brute {
        None => None,
        Some(params) => Some(brute_force_dimension(&cf, &params)?.dimension),
    };
    Ok(PrimeReport {
        p,
        residue8: p % 8,
        cf: cf.to_string(),
        period_len,
        midpoint: class.kind.as_str().to_string(),
        family: match_family(&cf).map(|f| f.describe()),
        q_rank: q,
        h_k: h,
        mw_rank: 2 * h * q as u64,
        c_closed,
        c_brute,
        conjecture_ok: q + 1 == c_closed,
    })
}

/// Human-readable block for the `report` subcommand.
pub fn format_text(r: &PrimeReport) -> String {
    let mut out = String::new();
    let mut push = |k: &str, v: String| {
        out.push_str(&format!("{k:<14} {v}\n"));
    };
    push("p", r.p.to_string());
    push("residue8", r.residue8.to_string());
    push("cf", r.cf.clone());
    push("period_len", r.period_len.to_string());
    push("midpoint", r.midpoint.clone());
    push("family", r.family.clone().unwrap_or_else(|| "-".into()));
    push("q_rank", r.q_rank.to_string());
    push("h_K", r.h_k.to_string());
    push("mw_rank", r.mw_rank.to_string());
    push("c_closed", r.c_closed.to_string());
    push(
        "c_brute",
        r.c_brute
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into()),
    );
    push("conjecture_ok", r.conjecture_ok.to_string());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_43() {
        let r = prime_report(43, None).unwrap();
        assert_eq!(r.q_rank, 1);
        assert_eq!(r.c_closed, 2);
        assert!(r.conjecture_ok);
        assert_eq!(r.cf, "[6; 1,1,3,1,5,1,3,1,1,12]");
    }

    #[test]
    fn report_79() {
        let r = prime_report(79, None).unwrap();
        assert_eq!(r.q_rank, 0);
        assert_eq!(r.c_closed, 1);
        assert!(r.conjecture_ok);
    }

    #[test]
    fn report_rejects_wrong_residue() {
        assert!(matches!(
            prime_report(13, None),
            Err(Error::WrongResidue { .. })
        ));
        assert!(matches!(prime_report(15, None), Err(Error::NotPrime(15))));
    }

    #[test]
    fn csv_row_shape() {
        let r = prime_report(19, None).unwrap();
        assert_eq!(
            r.csv_row(),
            "19,3,\"[4; 2,1,3,1,2,8]\",6,almost-culminating,1,1,2,2,,true"
        );
    }

    #[test]
    fn brute_column_consistency() {
        let r = prime_report(19, Some(DimensionParams::default())).unwrap();
        assert_eq!(r.c_brute, Some(r.c_closed));
    }

    #[test]
    fn json_field_order_is_stable() {
        let r = prime_report(3, None).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with("{\"p\":3,\"residue8\":3,\"cf\":\"[1; 1,2]\""));
        assert!(json.contains("\"conjecture_ok\":true"));
    }
}
