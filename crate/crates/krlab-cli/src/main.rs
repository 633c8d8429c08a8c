//! `krlab`: enumeration, generating functions, products, bijection traces and
//! verification suites for partitions with difference conditions.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use krlab_core::bijection::{decode_traced, encode};
use krlab_core::genfun::{build_conjecture_product, build_sum_series, RecipeBook};
use krlab_core::partitions::{check, enumerate};
use krlab_core::verify::run_suite;
use krlab_core::{Family, KrError, MoveTuple, Partition, Suite, TraceStep, VariantId};

const VARIANT_HELP: &str = "\
Variant names:
  mod 9 families    kr1 kr2 kr3 kr4 kr3-1 krb1 krb4-2 krb1-1
  mod 12 families   kr5 kr6 krc1-2 krc2-2 krc2-1
  product sides     cong1 cong2 cong3 cong4 (mod 9), cong5 cong6 (mod 12)
Case, dashes and underscores are ignored, so KR3_1, kr3-1 and kr31 are the same.
`series --variant` also accepts any recipe id, e.g. alt_kr5 or gg1alt_lhs.

Environment:
  KRLAB_THREADS     number of worker threads (default: all cores)

Exit codes: 0 success, 1 verification failure, 2 usage error.";

#[derive(Parser)]
#[command(name = "krlab", version, about = "Partitions with difference conditions: counts, series, bijections", after_help = VARIANT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Theorems,
    Conjectures,
    Roundtrip,
    Section5,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Theorems => Suite::Theorems,
            SuiteArg::Conjectures => Suite::Conjectures,
            SuiteArg::Roundtrip => Suite::Roundtrip,
            SuiteArg::Section5 => Suite::Section5,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count members of a family or product side by weight and number of parts.
    Count {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a multi-sum generating function.
    Series {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        max_n: usize,
        /// Truncation in x, defaults to --max-n.
        #[arg(long)]
        max_x: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand the reciprocal product of a product side (cong1 to cong6).
    Product {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Truncation order; each suite has its own default.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a family member into its base partition and moves.
    Bijection {
        #[arg(long)]
        variant: String,
        /// Comma-separated nondecreasing parts, e.g. 1,6,7,9,11,14,14.
        #[arg(long, allow_hyphen_values = true)]
        parts: String,
        /// Also print every step of the decoding.
        #[arg(long)]
        trace: bool,
        /// Emit one JSON object instead of text.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<KrError> for Failure {
    fn from(e: KrError) -> Self {
        match e {
            KrError::Config(_) | KrError::Argument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn parse_variant(s: &str) -> Result<VariantId, Failure> {
    s.parse::<VariantId>().map_err(Failure::from)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("KRLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "KRLAB_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the thread pool: {e}")))
}

fn weight_line(t: &MoveTuple, total: u64) -> String {
    let s = |v: &[u32]| v.iter().map(|&x| u64::from(x)).sum::<u64>();
    let mut line = format!("{total} = {} + {}", t.beta.weight(), s(&t.mu));
    match t.extra_move {
        Some(extra) => line.push_str(&format!(" + ({} + {})", u8::from(extra), s(&t.eta))),
        None => line.push_str(&format!(" + {}", s(&t.eta))),
    }
    if t.spec.variant.family() == Some(Family::Mod12) {
        line.push_str(&format!(" + {}", s(&t.nu)));
    }
    line
}

fn step_text(i: usize, s: &TraceStep) -> String {
    let parts: Vec<String> = s.parts.iter().map(i64::to_string).collect();
    format!(
        "step {i:>3}: {:<10} rank {} cluster {} delta {:+}: {}",
        format!("{:?}", s.kind).to_lowercase(),
        s.rank,
        s.ordinal,
        s.weight_delta,
        parts.join(" ")
    )
}

fn cmd_bijection(
    variant: &str,
    parts: &str,
    trace: bool,
    format: Option<Format>,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let v = parse_variant(variant)?;
    if v.rule().is_none() {
        return Err(Failure::Usage(format!(
            "{v} is a product side and has no bijection"
        )));
    }
    let lambda: Partition = parts.parse().map_err(Failure::from)?;
    if let Err(violation) = check(v, &lambda) {
        return Err(Failure::Usage(format!(
            "{lambda} is not a {} partition: {violation}",
            v.alias()
        )));
    }
    let (t, steps) = decode_traced(v, &lambda)?;
    let back = encode(v, &t)?;
    if back != lambda {
        return Err(Failure::Check(format!(
            "re-encoding {t} gives {back}, not {lambda}"
        )));
    }
    let text = match format {
        Some(Format::Json) => {
            let mut obj = json!({
                "variant": v.tag(),
                "partition": lambda.parts(),
                "weight": lambda.weight(),
                "tuple": t,
                "ledger": weight_line(&t, lambda.weight()),
                "reencodes": true,
            });
            if trace {
                obj["trace"] = serde_json::to_value(&steps).expect("steps serialize");
            }
            json_text(&obj)
        }
        Some(Format::Csv) => return Err(Failure::Usage("bijection output is text or json".into())),
        None => {
            let [n1, n2, n3] = t.spec.counts;
            let mut s = format!(
                "variant: {}\npartition: {lambda}\ncase: {}, clusters n1={n1} n2={n2} n3={n3}\n{t}\nweights: {}\nre-encode: ok\n",
                v.tag(),
                t.spec.case,
                weight_line(&t, lambda.weight())
            );
            if trace {
                for (i, step) in steps.iter().enumerate() {
                    s.push_str(&step_text(i, step));
                    s.push('\n');
                }
            }
            s
        }
    };
    emit(out, &text)
}

fn product_id(variant: &str) -> Result<u8, Failure> {
    let v = parse_variant(variant)
        .or_else(|_| parse_variant(&variant.to_ascii_lowercase().replace("conj", "cong")))?;
    VariantId::CONGRUENCES
        .iter()
        .position(|&c| c == v)
        .map(|i| i as u8 + 1)
        .ok_or_else(|| Failure::Usage(format!("{v} is not a product side; use cong1 to cong6")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Count {
            variant,
            max_n,
            format,
            out,
        } => {
            let table = enumerate(parse_variant(&variant)?, max_n);
            let text = match format {
                Format::Csv => table.to_csv(),
                Format::Json => json_text(&table.to_json()),
            };
            emit(&out, &text)
        }
        Command::Series {
            variant,
            max_n,
            max_x,
            format,
            out,
        } => {
            let book = RecipeBook::builtin();
            let recipe = match variant.parse::<VariantId>() {
                Ok(v) if v.rule().is_some() => book.theorem_for(v)?,
                Ok(v) => {
                    return Err(Failure::Usage(format!(
                        "{v} is a product side; use the product command"
                    )))
                }
                Err(_) => book.series(&variant.replace('-', "_"))?,
            };
            let s = build_sum_series(recipe, max_n, max_x.unwrap_or(max_n))?;
            let text = match format {
                Format::Csv => s.to_csv(),
                Format::Json => json_text(&json!({ "recipe": recipe.id(), "series": s.to_json() })),
            };
            emit(&out, &text)
        }
        Command::Product {
            variant,
            max_n,
            format,
            out,
        } => {
            let id = product_id(&variant)?;
            let s = build_conjecture_product(id, max_n)?;
            let text = match format {
                Format::Csv => s.to_csv(),
                Format::Json => {
                    json_text(&json!({ "product": format!("CONJ{id}"), "series": s.to_json() }))
                }
            };
            emit(&out, &text)
        }
        Command::Verify { suite, max_n, out } => {
            let (report, seconds) = run_suite(suite.into(), max_n);
            for c in &report.checks {
                if let Some(why) = &c.counterexample {
                    eprintln!("FAIL {} {} to order {}: {why}", c.suite, c.id, c.order);
                }
            }
            let passed = report
                .checks
                .iter()
                .filter(|c| c.counterexample.is_none())
                .count();
            eprintln!(
                "{}: {passed}/{} checks passed in {seconds:.2}s",
                report.suite,
                report.checks.len()
            );
            emit(
                &out,
                &json_text(&json!({ "report": report.to_json(), "wall_time_seconds": seconds })),
            )?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("suite {} failed", report.suite)))
            }
        }
        Command::Bijection {
            variant,
            parts,
            trace,
            format,
            out,
        } => cmd_bijection(&variant, &parts, trace, format, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("krlab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("krlab: {msg}");
            ExitCode::from(1)
        }
    }
}
