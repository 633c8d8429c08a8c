//! Verification suites with machine-readable reports.
//!
//! Each suite is a list of independent checks run over the rayon pool. A
//! report records the truncation order of every check and never claims more
//! than was compared. Wall time is kept out of the deterministic payload.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bijection::{all_tuples, decode, encode};
use crate::error::{KrError, Result};
use crate::genfun::{
    build_conjecture_product, build_sum_series, series_equal, series_equal_x1, RecipeBook,
    SeriesVerdict,
};
use crate::partitions::{enumerate, members_up_to, VariantId};
use crate::qseries::Coeff;

/// Selectable suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Theorem series against enumeration, bivariate.
    Theorems,
    /// Reciprocal products against theorem series at `x = 1`.
    Conjectures,
    /// Encode and decode in both directions.
    Roundtrip,
    /// Quadruple-sum forms and the transform identity, bivariate.
    Section5,
    /// Every suite above.
    All,
}

impl Suite {
    /// Truncation used when none is requested.
    pub fn default_order(self) -> usize {
        match self {
            Suite::Theorems => 35,
            Suite::Conjectures => 60,
            Suite::Roundtrip => 24,
            Suite::Section5 => 30,
            Suite::All => 0,
        }
    }

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorems => "theorems",
            Suite::Conjectures => "conjectures",
            Suite::Roundtrip => "roundtrip",
            Suite::Section5 => "section5",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Theorems,
                Suite::Conjectures,
                Suite::Roundtrip,
                Suite::Section5,
            ],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = KrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "theorems" => Ok(Suite::Theorems),
            "conjectures" => Ok(Suite::Conjectures),
            "roundtrip" => Ok(Suite::Roundtrip),
            "section5" => Ok(Suite::Section5),
            "all" => Ok(Suite::All),
            _ => Err(KrError::Config(format!("unknown suite {s:?}"))),
        }
    }
}

/// Pass or fail of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Everything compared agreed.
    Pass,
    /// A counterexample or an error was found.
    Fail,
}

/// One check of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    /// Suite the check belongs to.
    pub suite: &'static str,
    /// Check label, e.g. `KR5` or `CONJ3`.
    pub id: String,
    /// Outcome.
    pub status: Status,
    /// Truncation order: powers of `q` for series, total weight for round trips.
    pub order: usize,
    /// Number of coefficients or objects compared.
    pub compared: u64,
    /// First counterexample or error, if any.
    pub counterexample: Option<String>,
}

/// Result of running a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// The suite requested.
    pub suite: String,
    /// Checks in a fixed order.
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Deterministic JSON payload.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks,
        })
    }
}

fn finish(
    suite: Suite,
    id: String,
    order: usize,
    outcome: Result<(u64, Option<String>)>,
) -> CheckResult {
    let (compared, counterexample) = match outcome {
        Ok(v) => v,
        Err(e) => (0, Some(e.to_string())),
    };
    let status = if counterexample.is_none() {
        Status::Pass
    } else {
        Status::Fail
    };
    CheckResult {
        suite: suite.name(),
        id,
        status,
        order,
        compared,
        counterexample,
    }
}

fn verdict_text(v: SeriesVerdict) -> Option<String> {
    match v {
        SeriesVerdict::Equal => None,
        d => Some(d.to_string()),
    }
}

fn theorem_check(v: VariantId, n: usize) -> Result<(u64, Option<String>)> {
    let s = build_sum_series(RecipeBook::builtin().theorem_for(v)?, n, n)?;
    let t = enumerate(v, n as u32);
    for q in 0..=n {
        for m in 0..=n {
            let (a, b) = (s.coeff(q, m), Coeff::from(t.entry(q as u32, m as u32)));
            if a != b {
                return Ok((0, Some(format!("q^{q} x^{m}: series {a}, enumeration {b}"))));
            }
        }
    }
    Ok((((n + 1) * (n + 1)) as u64, None))
}

fn conjecture_check(id: u8, n: usize) -> Result<(u64, Option<String>)> {
    let book = RecipeBook::builtin();
    let product = build_conjecture_product(id, n)?;
    let side = &book.product(&format!("CONJ{id}"))?.sum_side;
    let sum = build_sum_series(book.series(side)?, n, n)?;
    Ok((
        (n + 1) as u64,
        verdict_text(series_equal_x1(&sum, &product, n)?),
    ))
}

fn roundtrip_check(v: VariantId, n: usize) -> Result<(u64, Option<String>)> {
    let mut compared = 0u64;
    for lambda in members_up_to(v, n as u32) {
        let t = decode(v, &lambda)?;
        let back = encode(v, &t)?;
        if back != lambda || t.weight() != lambda.weight() {
            return Ok((
                compared,
                Some(format!("{lambda} decodes to {t} and encodes to {back}")),
            ));
        }
        compared += 1;
    }
    for t in all_tuples(v, n as u64)? {
        let lambda = encode(v, &t)?;
        let back = decode(v, &lambda)?;
        if back != t {
            return Ok((
                compared,
                Some(format!("{t} encodes to {lambda} and decodes to {back}")),
            ));
        }
        compared += 1;
    }
    Ok((compared, None))
}

/// The bivariate pairs compared by the `section5` suite.
pub const SECTION5_PAIRS: [(&str, &str); 6] = [
    ("ALT_KR5", "KR5"),
    ("ALT_KR6", "KR6"),
    ("ALT_KRC1_2", "KRC1_2"),
    ("ALT_KRC2_2", "KRC2_2"),
    ("ALT_KRC2_1", "KRC2_1"),
    ("GG1ALT_LHS", "GG1ALT_RHS"),
];

fn pair_check(a: &str, b: &str, n: usize) -> Result<(u64, Option<String>)> {
    let book = RecipeBook::builtin();
    let sa = build_sum_series(book.series(a)?, n, n)?;
    let sb = build_sum_series(book.series(b)?, n, n)?;
    Ok((
        ((n + 1) * (n + 1)) as u64,
        verdict_text(series_equal(&sa, &sb, n)?),
    ))
}

type Job = Box<dyn Fn() -> CheckResult + Send + Sync>;

fn jobs_for(suite: Suite, order: Option<usize>) -> Vec<Job> {
    let n = order.unwrap_or_else(|| suite.default_order());
    let mut jobs: Vec<Job> = Vec::new();
    match suite {
        Suite::Theorems => {
            for v in VariantId::FAMILIES {
                jobs.push(Box::new(move || {
                    finish(suite, v.tag().into(), n, theorem_check(v, n))
                }));
            }
        }
        Suite::Conjectures => {
            for id in 1..=6u8 {
                jobs.push(Box::new(move || {
                    finish(suite, format!("CONJ{id}"), n, conjecture_check(id, n))
                }));
            }
        }
        Suite::Roundtrip => {
            for v in VariantId::FAMILIES {
                jobs.push(Box::new(move || {
                    finish(suite, v.tag().into(), n, roundtrip_check(v, n))
                }));
            }
        }
        Suite::Section5 => {
            for (a, b) in SECTION5_PAIRS {
                jobs.push(Box::new(move || {
                    finish(suite, format!("{a}={b}"), n, pair_check(a, b, n))
                }));
            }
        }
        Suite::All => {}
    }
    jobs
}

/// Runs `suite`. `order` overrides the default truncation of every part.
/// Returns the report and the elapsed wall time in seconds.
pub fn run_suite(suite: Suite, order: Option<usize>) -> (VerificationReport, f64) {
    let start = Instant::now();
    let jobs: Vec<Job> = suite
        .parts()
        .into_iter()
        .flat_map(|s| jobs_for(s, order))
        .collect();
    let checks: Vec<CheckResult> = jobs.par_iter().map(|j| j()).collect();
    (
        VerificationReport {
            suite: suite.name().into(),
            checks,
        },
        start.elapsed().as_secs_f64(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [
            Suite::Theorems,
            Suite::Conjectures,
            Suite::Roundtrip,
            Suite::Section5,
        ] {
            let (r, _) = run_suite(suite, Some(12));
            assert!(r.passed(), "{suite}: {:?}", r.checks);
            assert!(r.checks.iter().all(|c| c.order == 12));
        }
    }

    #[test]
    fn order_zero_roundtrip_is_the_empty_partition() {
        let (r, _) = run_suite(Suite::Roundtrip, Some(0));
        assert!(r.passed());
        assert!(r.checks.iter().all(|c| c.compared == 2));
    }

    #[test]
    fn all_combines_parts_in_order() {
        let (r, _) = run_suite(Suite::All, Some(6));
        assert_eq!(r.checks.len(), 13 + 6 + 13 + 6);
        assert_eq!(r.checks[0].suite, "theorems");
        assert_eq!(r.checks.last().unwrap().suite, "section5");
        assert_eq!(r.to_json()["passed"], true);
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("Section5".parse::<Suite>().unwrap(), Suite::Section5);
        assert!("nope".parse::<Suite>().is_err());
    }
}
