//! `qschmidt`: tables, searches, and identity suites from one binary.
//!
//! Exit codes: 0 = data produced / all checks hold; 1 = a checked claim
//! failed (an identity broke or an expected value was off); 2 = usage
//! error; 3 = I/O error. Machine formats (json, csv) are byte-identical
//! across runs, thread counts, and cache states.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qschmidt_core::schmidt_q::BivariatePoly;
use qschmidt_core::schmidt_z::{first_noninteger, least_r, schmidt_numbers, SearchRecord};
use qschmidt_core::{ExponentPlan, IdentityReport, LaurentPoly, Tables};

mod cache;
mod grids;
mod repro;

use cache::ResultCache;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Finding(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("encoding output: {0}")]
    Encode(#[from] serde_json::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Finding(_) => 1,
            CliError::Io(..) | CliError::Encode(_) => 3,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Thm11,
    Lemma12,
    Thm13,
    Step,
    Pfaff,
    All,
}

#[derive(Parser)]
#[command(name = "qschmidt", version, about = "Exact q-series tables and identity checks")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Worker threads for grid runs (0 or unset: all cores); never changes results
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache directory (beats the QSCHMIDT_CACHE_DIR environment variable)
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table slice P[k,i] for k <= i <= r*k
    Ptable {
        #[arg(short, long)]
        k: u32,
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
    },
    /// Print the coefficient polynomials c[0..=i_max] at level r
    Cpoly {
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value_t = 8)]
        i_max: u32,
    },
    /// Print the row-sum Laurent polynomials b[0..=i_max] at level r
    Bpoly {
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value_t = 6)]
        i_max: u32,
    },
    /// Print the rescaled slice T[k,i] under an exponent plan
    Tpoly {
        #[arg(short, long)]
        k: u32,
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Built-in plan name (zero, zudilin)
        #[arg(long, default_value = "zudilin")]
        plan: String,
        /// JSON file with a custom plan: {"name", "f": {"coeffs": [[..]]}, "g": {...}}
        #[arg(long)]
        plan_file: Option<PathBuf>,
    },
    /// Solve for the rational numbers c_0..c_N at exponents (r, s)
    Schmidt {
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
        #[arg(short = 'N', long, default_value_t = 8)]
        n_max: u32,
    },
    /// Scan r = s+1, s+2, ... for the least level integral through n
    SearchR {
        #[arg(short, long)]
        n: u32,
        #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        s: u32,
        #[arg(long, default_value_t = 1000)]
        r_max: u32,
    },
    /// Find the smallest non-integral entry for a pair (r, s), r > s > 1
    FirstNonint {
        #[arg(short, long)]
        r: u32,
        #[arg(short, long)]
        s: u32,
        #[arg(long, default_value_t = 10)]
        k_max: u32,
    },
    /// Run a verification suite over a parameter grid
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest n (thm11, thm13, lemma12: grid bound; pfaff: substituted-form bound)
        #[arg(long)]
        n_max: Option<u32>,
        /// Largest r for the table suites
        #[arg(long)]
        r_max: Option<u32>,
        /// Largest k for the step suite
        #[arg(long)]
        k_max: Option<u32>,
        /// Box edge for the pfaff suite
        #[arg(long)]
        max: Option<i64>,
        /// Restrict the step suite to one built-in plan
        #[arg(long)]
        plan: Option<String>,
        /// Use a custom plan for the step suite
        #[arg(long)]
        plan_file: Option<PathBuf>,
    },
    /// Re-run every shipped acceptance check
    Repro {
        /// Item ids to skip (repeatable)
        #[arg(long)]
        skip: Vec<String>,
        /// Also write the machine-readable report to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Degree only affects scheduling; a pre-existing global pool is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_owned()
    }
}

#[derive(Serialize)]
struct SeriesDoc {
    series: String,
    r: u32,
    values: BTreeMap<u32, LaurentPoly>,
}

#[derive(Serialize)]
struct TpolyDoc {
    k: u32,
    r: u32,
    plan: String,
    values: BTreeMap<u32, LaurentPoly>,
}

#[derive(Serialize)]
struct SchmidtRow {
    k: u32,
    value: String,
    integral: bool,
}

#[derive(Serialize)]
struct SchmidtDoc {
    r: u32,
    s: u32,
    rows: Vec<SchmidtRow>,
}

#[derive(Serialize)]
struct FoundEntry {
    k: u32,
    value: String,
}

#[derive(Serialize)]
struct FirstNonintDoc {
    r: u32,
    s: u32,
    k_max: u32,
    found: Option<FoundEntry>,
}

#[derive(Serialize)]
struct SuiteDoc {
    suite: String,
    checked: usize,
    failed: usize,
    failures: Vec<IdentityReport>,
}

#[derive(Serialize)]
struct VerifyDoc {
    suites: Vec<SuiteDoc>,
}

fn print_poly_rows(format: Format, values: &BTreeMap<u32, LaurentPoly>) {
    match format {
        Format::Human => {
            for (i, p) in values {
                println!("i={i}: {p}");
            }
        }
        Format::Csv => {
            println!("i,poly");
            for (i, p) in values {
                println!("{i},{}", csv_field(&p.to_string()));
            }
        }
        Format::Json => unreachable!("json handled by caller"),
    }
}

struct PlanFlags<'a> {
    name: &'a str,
    file: Option<&'a Path>,
}

#[derive(serde::Deserialize)]
struct PlanFile {
    name: String,
    f: BivariatePoly,
    g: BivariatePoly,
}

fn resolve_plan(flags: PlanFlags) -> Result<ExponentPlan, CliError> {
    if let Some(path) = flags.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading plan file {}", path.display()), e))?;
        let pf: PlanFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid plan file {}: {e}", path.display())))?;
        return Ok(ExponentPlan::Custom { name: pf.name, f: pf.f, g: pf.g });
    }
    ExponentPlan::by_name(flags.name).ok_or_else(|| {
        CliError::Usage(format!("unknown plan {:?}; built-ins: zero, zudilin", flags.name))
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Ptable { k, r } => {
            let table = Tables::new().p_table(k, r);
            if format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&table)?);
            } else {
                print_poly_rows(format, &table.entries);
            }
            Ok(0)
        }
        Command::Cpoly { r, i_max } => {
            let mut t = Tables::new();
            let mut values = BTreeMap::new();
            for i in 0..=i_max {
                let c = t.c_poly(i, r).map_err(|e| CliError::Finding(e.to_string()))?;
                values.insert(i, c);
            }
            if format == Format::Json {
                let doc = SeriesDoc { series: "c".to_owned(), r, values };
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                print_poly_rows(format, &values);
            }
            Ok(0)
        }
        Command::Bpoly { r, i_max } => {
            let mut t = Tables::new();
            let values: BTreeMap<u32, LaurentPoly> =
                (0..=i_max).map(|i| (i, t.b_poly(i, r))).collect();
            if format == Format::Json {
                let doc = SeriesDoc { series: "b".to_owned(), r, values };
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                print_poly_rows(format, &values);
            }
            Ok(0)
        }
        Command::Tpoly { k, r, plan, plan_file } => {
            let plan = resolve_plan(PlanFlags { name: &plan, file: plan_file.as_deref() })?;
            let mut t = Tables::new();
            let values: BTreeMap<u32, LaurentPoly> =
                (k..=r * k).map(|i| (i, t.t_poly(k, i, r, &plan))).collect();
            if format == Format::Json {
                let doc = TpolyDoc { k, r, plan: plan.name().to_owned(), values };
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                print_poly_rows(format, &values);
            }
            Ok(0)
        }
        Command::Schmidt { r, s, n_max } => {
            let table = schmidt_numbers(r, s, n_max);
            let rows: Vec<SchmidtRow> = table
                .values
                .iter()
                .enumerate()
                .map(|(k, c)| SchmidtRow {
                    k: k as u32,
                    value: c.to_string(),
                    integral: c.is_integer(),
                })
                .collect();
            match format {
                Format::Human => {
                    for row in &rows {
                        let mark = if row.integral { "yes" } else { "no " };
                        println!("k={:<3} integral={} c_k = {}", row.k, mark, row.value);
                    }
                }
                Format::Json => {
                    let doc = SchmidtDoc { r, s, rows };
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                Format::Csv => {
                    println!("k,value,integral");
                    for row in &rows {
                        println!("{},{},{}", row.k, csv_field(&row.value), row.integral);
                    }
                }
            }
            Ok(0)
        }
        Command::SearchR { n, s, r_max } => {
            if r_max <= s {
                return Err(CliError::Usage(format!("need r_max > s, got r_max={r_max}, s={s}")));
            }
            let store = ResultCache::resolve(cli.cache);
            let key = format!("n={n},s={s},r_max={r_max}");
            let record: SearchRecord = match store.lookup("search-r", &key) {
                Some(hit) => hit,
                None => {
                    let fresh = least_r(n, s, r_max);
                    store.store("search-r", &key, &fresh)?;
                    fresh
                }
            };
            match format {
                Format::Human => {
                    match record.r_found {
                        Some(r) => println!("r({n},{s}) = {r}"),
                        None => println!(
                            "r({n},{s}) not found for {s} < r <= {r_max}; conjecture-open up to r_max={r_max}"
                        ),
                    }
                    if !record.witnesses.is_empty() {
                        println!("witnesses:");
                        for w in &record.witnesses {
                            println!(
                                "  r={}: first non-integral k={}, value {}",
                                w.r, w.k, w.value
                            );
                        }
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
                Format::Csv => {
                    println!("r,k,value,outcome");
                    for w in &record.witnesses {
                        println!("{},{},{},witness", w.r, w.k, csv_field(&w.value.to_string()));
                    }
                    if let Some(r) = record.r_found {
                        println!("{r},,,found");
                    }
                }
            }
            Ok(0)
        }
        Command::FirstNonint { r, s, k_max } => {
            if !(r > s && s > 1) {
                return Err(CliError::Usage(format!("need r > s > 1, got r={r}, s={s}")));
            }
            let found = first_noninteger(r, s, k_max)
                .map(|(k, value)| FoundEntry { k, value: value.to_string() });
            match format {
                Format::Human => match &found {
                    Some(e) => println!("first non-integral entry: k={}, c_k = {}", e.k, e.value),
                    None => println!("all entries integral through k={k_max}"),
                },
                Format::Json => {
                    let doc = FirstNonintDoc { r, s, k_max, found };
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
                Format::Csv => {
                    println!("k,value");
                    if let Some(e) = &found {
                        println!("{},{}", e.k, csv_field(&e.value));
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { suite, n_max, r_max, k_max, max, plan, plan_file } => {
            let step_plans = || -> Result<Vec<ExponentPlan>, CliError> {
                if plan.is_none() && plan_file.is_none() {
                    return Ok(ExponentPlan::registry());
                }
                let name = plan.as_deref().unwrap_or("zudilin");
                Ok(vec![resolve_plan(PlanFlags { name, file: plan_file.as_deref() })?])
            };
            let mut suites: Vec<(&str, Vec<IdentityReport>)> = Vec::new();
            let nm = n_max.unwrap_or(8);
            let rm = r_max.unwrap_or(4);
            if matches!(suite, Suite::Thm11 | Suite::All) {
                suites.push(("thm11", grids::thm11(nm, rm)));
            }
            if matches!(suite, Suite::Lemma12 | Suite::All) {
                suites.push(("lemma12", grids::lemma12(nm, rm)));
            }
            if matches!(suite, Suite::Thm13 | Suite::All) {
                suites.push(("thm13", grids::thm13(nm, rm)));
            }
            if matches!(suite, Suite::Step | Suite::All) {
                let km = k_max.unwrap_or(3);
                let srm = r_max.unwrap_or(3);
                suites.push(("step", grids::step(km, srm, &step_plans()?)));
            }
            if matches!(suite, Suite::Pfaff | Suite::All) {
                let mut reports = grids::pfaff_box(max.unwrap_or(6));
                reports.extend(grids::pfaff_substituted(i64::from(n_max.unwrap_or(8))));
                suites.push(("pfaff", reports));
            }
            let docs: Vec<SuiteDoc> = suites
                .into_iter()
                .map(|(name, reports)| {
                    let failures: Vec<IdentityReport> =
                        reports.iter().filter(|r| !r.holds).cloned().collect();
                    SuiteDoc {
                        suite: name.to_owned(),
                        checked: reports.len(),
                        failed: failures.len(),
                        failures,
                    }
                })
                .collect();
            let any_failed = docs.iter().any(|d| d.failed > 0);
            match format {
                Format::Human => {
                    for doc in &docs {
                        for f in doc.failures.iter().take(20) {
                            println!("FAIL {} at {}", f.identity, grids::params_line(&f.params));
                        }
                        if doc.failures.len() > 20 {
                            println!("(+{} more failures)", doc.failures.len() - 20);
                        }
                        if doc.failed == 0 {
                            println!(
                                "suite {}: {} points checked, all hold",
                                doc.suite, doc.checked
                            );
                        } else {
                            println!(
                                "suite {}: {} points checked, {} failed",
                                doc.suite, doc.checked, doc.failed
                            );
                        }
                    }
                }
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&VerifyDoc { suites: docs })?)
                }
                Format::Csv => {
                    println!("suite,identity,params,holds");
                    // Full point list per suite would be redundant with the
                    // counts; rows carry the failures, the summary row the totals.
                    for doc in &docs {
                        for f in &doc.failures {
                            println!(
                                "{},{},{},false",
                                doc.suite,
                                f.identity,
                                csv_field(&grids::params_line(&f.params))
                            );
                        }
                        println!(
                            "{},summary,checked={} failed={},{}",
                            doc.suite,
                            doc.checked,
                            doc.failed,
                            doc.failed == 0
                        );
                    }
                }
            }
            Ok(if any_failed { 1 } else { 0 })
        }
        Command::Repro { skip, json } => {
            let report = repro::run(&skip);
            if let Some(path) = &json {
                let body = serde_json::to_string_pretty(&report)?;
                std::fs::write(path, body)
                    .map_err(|e| CliError::Io(format!("writing report {}", path.display()), e))?;
            }
            match format {
                Format::Human => {
                    for item in &report.items {
                        println!("{:<16} {:<4} {}", item.id, item.status, item.detail);
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Csv => {
                    println!("item,status,detail");
                    for item in &report.items {
                        println!("{},{},{}", item.id, item.status, csv_field(&item.detail));
                    }
                }
            }
            Ok(if report.items.iter().any(|i| i.status == "FAIL") { 1 } else { 0 })
        }
    }
}
