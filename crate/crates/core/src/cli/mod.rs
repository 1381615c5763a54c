//! Command-line interface.

pub mod verify;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::arithfun::{class_number, hurwitz, tau, weighted_class_number, TauTable};
use crate::cubics::{brute_weight_enumerator, Census, CensusOptions, CodeSpec, DEFAULT_BUDGET, SINGULAR_KINDS};
use crate::ecstats::{trace_distribution_bruteforce, trace_distribution_formula, TraceDistribution};
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::field_of_order;
use crate::formulas;
use crate::macwilliams;

pub const BUDGET_ENV: &str = "CUBIC_RM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "cubic-rm", version, about = "Weight enumerators of cubic Reed-Muller codes")]
pub struct Cli {
    /// Largest number of codewords an exhaustive run may visit.
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CodeArg {
    Proj,
    Affine,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumMethod {
    Formula,
    Brute,
    Census,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatsMethod {
    Formula,
    Brute,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassVariant {
    Plain,
    Weighted,
    Hurwitz,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Census,
    Projective,
    Affine,
    Dual,
    Moments,
    Torsion,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a weight enumerator as JSON.
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "proj")]
        code: CodeArg,
        #[arg(long, value_enum, default_value = "formula")]
        method: EnumMethod,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Include elapsed wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Tabulate the singular kinds and the smooth remainder.
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Class number of a negative discriminant.
    Classnum {
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        #[arg(long, value_enum, default_value = "plain")]
        variant: ClassVariant,
    },
    /// Ramanujan's tau function.
    Tau {
        #[arg(long)]
        n: u64,
    },
    /// Trace distribution of elliptic curves over F_q.
    Ecstats {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "formula")]
        method: StatsMethod,
    },
    /// One low-weight coefficient of a dual code by every available route.
    Dual {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "proj")]
        code: CodeArg,
        #[arg(long)]
        j: u32,
    },
}

/// Outcome of a command: text for stdout and the process exit code.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn budget(cli: &Cli) -> Result<u128> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}={s} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn enumerator_json(q: u64, code: CodeArg, method: EnumMethod, w: &WeightEnumerator) -> Value {
    let code = match code {
        CodeArg::Proj => "proj",
        CodeArg::Affine => "affine",
    };
    let method = match method {
        EnumMethod::Formula => "formula",
        EnumMethod::Brute => "brute",
        EnumMethod::Census => "census",
    };
    let coeffs: Vec<Value> = w.iter().map(|(i, c)| json!([i, c.to_string()])).collect();
    json!({ "q": q, "code": code, "method": method, "N": w.length(), "coeffs": coeffs })
}

pub fn enumerate(q: u64, code: CodeArg, method: EnumMethod, budget: u128) -> Result<WeightEnumerator> {
    let field = field_of_order(q)?;
    match (method, code) {
        (EnumMethod::Formula, CodeArg::Proj) => formulas::w_projective(q),
        (EnumMethod::Formula, CodeArg::Affine) => formulas::w_affine(q),
        (EnumMethod::Brute, CodeArg::Proj) => brute_weight_enumerator(&CodeSpec::projective(field), budget),
        (EnumMethod::Brute, CodeArg::Affine) => brute_weight_enumerator(&CodeSpec::affine(field), budget),
        (EnumMethod::Census, c) => {
            let census = Census::run(field, CensusOptions::default(), budget)?;
            Ok(match c {
                CodeArg::Proj => census.projective_enumerator(),
                CodeArg::Affine => census.affine_enumerator(),
            })
        }
    }
}

pub fn run_verify(q: u64, suite: Suite, budget: u128, timing: bool) -> Result<(Value, bool)> {
    let ctx = verify::Context::new(q, budget)?;
    let names: Vec<&str> = match suite {
        Suite::All => verify::SUITES.to_vec(),
        s => vec![verify::SUITES[s as usize]],
    };
    let mut reports = Vec::new();
    let mut failed = false;
    for name in names {
        let start = Instant::now();
        let mut r = ctx.run(name)?;
        if timing {
            r.elapsed_ms = Some(start.elapsed().as_millis());
        }
        failed |= r.failed();
        reports.push(r.to_json());
    }
    let value = if reports.len() == 1 { reports.pop().unwrap() } else { json!({ "q": q.to_string(), "reports": reports }) };
    Ok((value, failed))
}

pub fn census_rows(q: u64, budget: u128) -> Result<Vec<(String, BigInt, String)>> {
    let census = Census::run(field_of_order(q)?, CensusOptions::default(), budget)?;
    let mut rows: Vec<(String, BigInt, Vec<u16>)> =
        SINGULAR_KINDS.iter().map(|k| (k.name().to_string(), BigInt::from(0), Vec::new())).collect();
    rows.push(("smooth".into(), BigInt::from(0), Vec::new()));
    for (k, &c) in &census.entries {
        let i = SINGULAR_KINDS.iter().position(|&s| s == k.kind).unwrap_or(SINGULAR_KINDS.len());
        rows[i].1 += c;
        if !rows[i].2.contains(&k.weight) {
            rows[i].2.push(k.weight);
        }
    }
    Ok(rows
        .into_iter()
        .map(|(k, c, mut w)| {
            w.sort();
            (k, c, join(&w))
        })
        .collect())
}

fn join(w: &[u16]) -> String {
    w.iter().map(u16::to_string).collect::<Vec<_>>().join(";")
}

pub fn distribution_json(d: &TraceDistribution) -> Value {
    let masses = |m: &std::collections::BTreeMap<i64, BigRational>| {
        m.iter().map(|(t, v)| json!([t, rational(v)])).collect::<Vec<_>>()
    };
    let mut v = json!({
        "q": d.q,
        "total_mass": rational(&d.total_mass()),
        "masses": masses(&d.masses),
    });
    let moments: Vec<Value> = (0..=5).map(|r| json!([2 * r, rational(&d.moment(2 * r))])).collect();
    v["moments"] = json!(moments);
    if let Some(r) = &d.restricted {
        v["full_3_torsion"] = json!(masses(r));
    }
    if let Some(s) = &d.subgroup_masses {
        v["3_divides_order"] = json!(masses(s));
    }
    v
}

pub fn dual_json(q: u64, code: CodeArg, j: u32, budget: u128) -> Result<Value> {
    let (closed, formula) = match code {
        CodeArg::Proj => (macwilliams::dual_coeff_projective(q, j)?, formulas::w_projective(q)?),
        CodeArg::Affine => (macwilliams::dual_coeff_affine(q, j)?, formulas::w_affine(q)?),
    };
    let from_formula = macwilliams::dual_coefficient(&formula, q, j as usize)?;
    let oracle = enumerate(q, code, EnumMethod::Brute, budget);
    let from_oracle = match oracle {
        Ok(w) => Some(macwilliams::dual_coefficient(&w, q, j as usize)?),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut v = json!({
        "q": q,
        "j": j,
        "closed_form": closed.to_string(),
        "from_formula": from_formula.to_string(),
    });
    v["from_oracle"] = match &from_oracle {
        Some(c) => json!(c.to_string()),
        None => json!(null),
    };
    let agree = closed == from_formula && from_oracle.as_ref().is_none_or(|c| *c == closed);
    v["agree"] = json!(agree);
    Ok(v)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let budget = budget(cli)?;
    match cli.command {
        Command::Enumerate { q, code, method } => {
            let w = enumerate(q, code, method, budget)?;
            Ok(Outcome::ok(pretty(&enumerator_json(q, code, method, &w))))
        }
        Command::Verify { q, suite, timing } => {
            let (v, failed) = run_verify(q, suite, budget, timing)?;
            Ok(Outcome { output: pretty(&v), code: failed as u8 })
        }
        Command::Census { q, format } => {
            let rows = census_rows(q, budget)?;
            let output = match format {
                Format::Csv => {
                    let mut s = String::from("kind,count,weight");
                    for (k, c, w) in rows {
                        s.push_str(&format!("\n{k},{c},{w}"));
                    }
                    s
                }
                Format::Json => pretty(&json!(rows
                    .iter()
                    .map(|(k, c, w)| json!({ "kind": k, "count": c.to_string(), "weight": w }))
                    .collect::<Vec<_>>())),
            };
            Ok(Outcome::ok(output))
        }
        Command::Classnum { delta, variant } => {
            let out = match variant {
                ClassVariant::Plain => class_number(delta)?.to_string(),
                ClassVariant::Weighted => {
                    class_number(delta)?;
                    weighted_class_number(delta).to_string()
                }
                ClassVariant::Hurwitz => {
                    if delta >= 0 || delta.rem_euclid(4) > 1 {
                        return Err(Error::InvalidDiscriminant(delta));
                    }
                    hurwitz(delta).to_string()
                }
            };
            Ok(Outcome::ok(out))
        }
        Command::Tau { n } => {
            let bound = n.max(1);
            if bound > TauTable::MAX_BOUND {
                return Err(Error::TauOutOfRange { n, bound: TauTable::MAX_BOUND });
            }
            Ok(Outcome::ok(tau(n, bound)?.to_string()))
        }
        Command::Ecstats { q, method } => {
            let d = match method {
                StatsMethod::Formula => trace_distribution_formula(q)?,
                StatsMethod::Brute => trace_distribution_bruteforce(q)?,
            };
            Ok(Outcome::ok(pretty(&distribution_json(&d))))
        }
        Command::Dual { q, code, j } => {
            let v = dual_json(q, code, j, budget)?;
            let code = if v["agree"] == json!(true) { 0 } else { 1 };
            Ok(Outcome { output: pretty(&v), code })
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match execute(&cli) {
        Ok(o) => {
            let _ = writeln!(std::io::stdout(), "{}", o.output);
            ExitCode::from(o.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome> {
        let mut full = vec!["cubic-rm"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn small_commands() {
        assert_eq!(run(&["classnum", "--delta", "-20"]).unwrap().output, "2");
        assert_eq!(run(&["tau", "--n", "7"]).unwrap().output, "-16744");
        assert!(run(&["classnum", "--delta", "-21"]).is_err());
    }

    #[test]
    fn budget_errors() {
        let e = run(&["--budget", "10", "enumerate", "--q", "3", "--method", "brute"]);
        assert!(matches!(e, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn methods_share_json_shape() {
        let a = enumerator_json(3, CodeArg::Proj, EnumMethod::Formula, &enumerate(3, CodeArg::Proj, EnumMethod::Formula, DEFAULT_BUDGET).unwrap());
        let b = enumerator_json(3, CodeArg::Proj, EnumMethod::Brute, &enumerate(3, CodeArg::Proj, EnumMethod::Brute, DEFAULT_BUDGET).unwrap());
        assert_eq!(a["coeffs"], b["coeffs"]);
        assert_eq!(b["method"], "brute");
    }

    #[test]
    fn census_csv_shape() {
        let out = run(&["census", "--q", "3"]).unwrap().output;
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], "kind,count,weight");
    }
}
