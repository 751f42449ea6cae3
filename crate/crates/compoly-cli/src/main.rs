//! Single-binary front end: compute polynomials and tables, list
//! permutitions, and run the verification suites.
//!
//! Exit codes: 0 when everything passes, 1 when a verification check
//! fails, 2 on usage or parse errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use compoly::bijection::verify_bijection;
use compoly::descent::check_dynkin_identities;
use compoly::gpoly::{f_reduced, g_recursive, reduced_p, reduced_table, PolyTable};
use compoly::nsym::{check_inversion, check_ode, check_prop1, check_qbracket_identity};
use compoly::permutition::{
    check_counts, check_specializations, check_theorem, count_permutitions, enumerate,
    enumerate_shape, Permutition, A000262_PREFIX,
};
use compoly::report::CheckReport;
use compoly::Composition;

const TABLE_GUARD: usize = 12;
const ENUMERATION_GUARD: usize = 9;
const DYNKIN_GUARD: usize = 7;

#[derive(Parser)]
#[command(
    name = "compoly",
    version,
    about = "Exact composition-polynomial computations and verifications"
)]
struct Cli {
    /// Worker threads for parallel verification (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// The raw composition polynomial g_I
    G,
    /// The reduced rational polynomial f_I = g_I/(1-q)^r
    F,
    /// The integer polynomial P_I = n! f_I
    P,
}

#[derive(Subcommand)]
enum Command {
    /// Print g_I, f_I, or P_I for one composition
    Poly {
        /// Comma-separated parts, e.g. 2,1,1
        composition: String,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Which::P)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the table of all P_I of weight n
    Table {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Cache directory; tables are stored as table_<n>.json and cache
        /// hits are emitted byte-identically
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Override the weight guard (n <= 12)
        #[arg(long)]
        force: bool,
    },
    /// List the permutitions of {1, ..., n}
    Permutitions {
        n: usize,
        /// Restrict to one shape, e.g. 2,1,1
        #[arg(long)]
        shape: Option<String>,
        /// Print the sinv statistic next to each permutition
        #[arg(long)]
        with_sinv: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Override the size guard (n <= 9)
        #[arg(long)]
        force: bool,
    },
    /// Run a verification suite (exit code 1 on failure)
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Compare enumerated permutition counts to the embedded sequence
    Oeis {
        nmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exclude the timing field from JSON output
        #[arg(long)]
        stable: bool,
        /// Override the size guard (nmax <= 9)
        #[arg(long)]
        force: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
struct ReportOpts {
    format: Format,
    stable: bool,
}

#[derive(Subcommand)]
enum Suite {
    /// sinv generating functions equal the reduced polynomials at weight n
    Theorem {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        force: bool,
    },
    /// The recursion bijection for one composition, exhaustively
    Bijection {
        /// Comma-separated parts with at least two parts, e.g. 2,1,1
        composition: String,
        /// Print every mapping in the worked-table layout
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        force: bool,
    },
    /// The recursion identity between reduced polynomials at weight n
    Recursion {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
    },
    /// Coefficient oracle, differential equation, and series inversion
    /// for degrees 1..=n
    Nsym {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
    },
    /// The iterated q-bracketing identity at degree n
    Qbracket {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
    },
    /// Descent-algebra identities at degree n (guard n <= 7)
    Dynkin {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        force: bool,
    },
    /// Enumerated counts against the recurrence for sizes 0..=n
    Counts {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        force: bool,
    },
    /// P_I(0) and P_I(1) specializations at weight n
    Specializations {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        stable: bool,
        #[arg(long)]
        force: bool,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_composition(s: &str) -> Result<Composition, ExitCode> {
    Composition::from_str(s).map_err(|e| usage_error(format!("composition {s:?}: {e}")))
}

fn check_guard(value: usize, guard: usize, what: &str, force: bool) -> Result<(), ExitCode> {
    if value > guard && !force {
        return Err(usage_error(format!(
            "{what} {value} exceeds the guard {guard}; pass --force to run anyway"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            return usage_error(format!("--jobs: {e}"));
        }
    }
    match cli.command {
        Command::Poly {
            composition,
            which,
            format,
        } => cmd_poly(&composition, which, format),
        Command::Table {
            n,
            format,
            cache,
            force,
        } => cmd_table(n, format, cache.as_deref(), force),
        Command::Permutitions {
            n,
            shape,
            with_sinv,
            format,
            force,
        } => cmd_permutitions(n, shape.as_deref(), with_sinv, format, force),
        Command::Verify { suite } => cmd_verify(suite),
        Command::Oeis {
            nmax,
            format,
            stable,
            force,
        } => cmd_oeis(nmax, format, stable, force),
    }
}

fn cmd_poly(composition: &str, which: Which, format: Format) -> ExitCode {
    let i = match parse_composition(composition) {
        Ok(i) => i,
        Err(code) => return code,
    };
    let (name, poly) = match which {
        Which::G => ("g", Ok(g_recursive(&i))),
        Which::F => ("f", f_reduced(&i)),
        Which::P => ("P", reduced_p(&i)),
    };
    let poly = match poly {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Text => println!("{poly}"),
        Format::Json => {
            let doc = serde_json::json!({
                "composition": i.parts(),
                "which": name,
                "coefficients": poly.coeff_strings(),
            });
            println!("{doc}");
        }
        Format::Csv => {
            println!("\"{i}\",{}", poly.coeff_strings().join(","));
        }
    }
    ExitCode::SUCCESS
}

/// Load `table_<n>.json` from the cache or compute and store it. The
/// returned string is the exact JSON document (cache hits are emitted
/// byte-identically).
fn table_with_cache(n: usize, cache: Option<&Path>) -> Result<(PolyTable, String), String> {
    let path = cache.map(|dir| dir.join(format!("table_{n}.json")));
    if let Some(path) = &path {
        if path.exists() {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cache read: {e}"))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("cache parse: {e}"))?;
            let table = PolyTable::from_json(&value).map_err(|e| format!("cache decode: {e}"))?;
            if table.n() != n {
                return Err(format!("cache file {} holds weight {}", path.display(), table.n()));
            }
            return Ok((table, text));
        }
    }
    let table = reduced_table(n).map_err(|e| e.to_string())?;
    let text = serde_json::to_string_pretty(&table.to_json()).expect("serializable") + "\n";
    if let Some(path) = &path {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| format!("cache dir: {e}"))?;
        }
        std::fs::write(path, &text).map_err(|e| format!("cache write: {e}"))?;
    }
    Ok((table, text))
}

fn cmd_table(n: usize, format: Format, cache: Option<&Path>, force: bool) -> ExitCode {
    if n == 0 {
        return usage_error("table weight must be at least 1");
    }
    if let Err(code) = check_guard(n, TABLE_GUARD, "table weight", force) {
        return code;
    }
    let (table, json_text) = match table_with_cache(n, cache) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Text => {
            for (i, p) in table.entries() {
                println!("{i}: {p}");
            }
        }
        Format::Json => print!("{json_text}"),
        Format::Csv => {
            for (i, p) in table.entries() {
                println!("\"{i}\",{}", p.coeff_strings().join(","));
            }
        }
    }
    ExitCode::SUCCESS
}

fn permutition_json(pi: &Permutition, with_sinv: bool) -> serde_json::Value {
    let blocks: Vec<Vec<usize>> = pi.blocks().to_vec();
    if with_sinv {
        serde_json::json!({"blocks": blocks, "sinv": pi.sinv()})
    } else {
        serde_json::json!({"blocks": blocks})
    }
}

fn cmd_permutitions(
    n: usize,
    shape: Option<&str>,
    with_sinv: bool,
    format: Format,
    force: bool,
) -> ExitCode {
    if let Err(code) = check_guard(n, ENUMERATION_GUARD, "permutition size", force) {
        return code;
    }
    let list = match shape {
        Some(s) => {
            let i = match parse_composition(s) {
                Ok(i) => i,
                Err(code) => return code,
            };
            if i.weight() != n {
                return usage_error(format!(
                    "shape {i} has weight {}, expected {n}",
                    i.weight()
                ));
            }
            enumerate_shape(&i)
        }
        None => enumerate(n),
    };
    match format {
        Format::Text => {
            for pi in &list {
                if with_sinv {
                    println!("{pi} {}", pi.sinv());
                } else {
                    println!("{pi}");
                }
            }
        }
        Format::Json => {
            let doc = serde_json::Value::Array(
                list.iter().map(|pi| permutition_json(pi, with_sinv)).collect(),
            );
            println!("{doc}");
        }
        Format::Csv => {
            for pi in &list {
                if with_sinv {
                    println!("\"{pi}\",{}", pi.sinv());
                } else {
                    println!("\"{pi}\"");
                }
            }
        }
    }
    ExitCode::SUCCESS
}

/// Render a report: one pass/fail line per check in text mode, a JSON
/// document otherwise. Returns the process exit code.
fn emit_report(command: String, report: &CheckReport, opts: ReportOpts, started: Instant) -> ExitCode {
    let wall_ms = started.elapsed().as_millis();
    match opts.format {
        Format::Text | Format::Csv => {
            for check in &report.checks {
                if check.passed {
                    println!("PASS {}", check.label);
                } else {
                    println!(
                        "FAIL {}: {}",
                        check.label,
                        check.witness.as_deref().unwrap_or("")
                    );
                }
            }
            let failed = report.failures().count();
            if failed == 0 {
                println!("ok: {} checks passed", report.checks.len());
            } else {
                println!("FAILED: {failed} of {} checks", report.checks.len());
            }
            if !opts.stable {
                eprintln!("time: {wall_ms} ms");
            }
        }
        Format::Json => {
            let checks: Vec<serde_json::Value> = report
                .checks
                .iter()
                .map(|c| {
                    let mut obj = serde_json::json!({
                        "label": c.label,
                        "status": if c.passed { "pass" } else { "fail" },
                    });
                    if let Some(w) = &c.witness {
                        obj["witness"] = serde_json::Value::String(w.clone());
                    }
                    obj
                })
                .collect();
            let mut doc = serde_json::json!({
                "command": command,
                "version": env!("CARGO_PKG_VERSION"),
                "checks": checks,
                "passed": report.passed(),
            });
            if !opts.stable {
                doc["wall_ms"] = serde_json::json!(wall_ms as u64);
            }
            println!("{doc}");
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(suite: Suite) -> ExitCode {
    let started = Instant::now();
    match suite {
        Suite::Theorem {
            n,
            format,
            stable,
            force,
        } => {
            if let Err(code) = check_guard(n, ENUMERATION_GUARD, "theorem weight", force) {
                return code;
            }
            let report = check_theorem(n);
            emit_report(
                format!("verify theorem {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Bijection {
            composition,
            trace,
            format,
            stable,
            force,
        } => {
            let i = match parse_composition(&composition) {
                Ok(i) => i,
                Err(code) => return code,
            };
            if let Err(code) = check_guard(i.weight(), ENUMERATION_GUARD, "bijection weight", force)
            {
                return code;
            }
            let verification = match verify_bijection(&i, trace) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            if trace && format != Format::Json {
                for row in &verification.trace {
                    println!("{}", row.render());
                }
            }
            emit_report(
                format!("verify bijection {i}"),
                &verification.report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Recursion { n, format, stable } => {
            if n < 2 {
                return usage_error("recursion check needs n >= 2");
            }
            let report = compoly::gpoly::check_ad_recursion(n);
            emit_report(
                format!("verify recursion {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Nsym { n, format, stable } => {
            if n < 1 {
                return usage_error("nsym check needs n >= 1");
            }
            let mut report = CheckReport::new(format!("nsym n={n}"));
            for k in 1..=n {
                report.absorb(check_prop1(k));
                report.absorb(check_ode(k));
            }
            report.absorb(check_inversion(n));
            emit_report(
                format!("verify nsym {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Qbracket { n, format, stable } => {
            if n < 1 {
                return usage_error("qbracket check needs n >= 1");
            }
            let report = check_qbracket_identity(n);
            emit_report(
                format!("verify qbracket {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Dynkin {
            n,
            format,
            stable,
            force,
        } => {
            if n < 1 {
                return usage_error("dynkin check needs n >= 1");
            }
            if let Err(code) = check_guard(n, DYNKIN_GUARD, "dynkin degree", force) {
                return code;
            }
            let report = check_dynkin_identities(n);
            emit_report(
                format!("verify dynkin {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Counts {
            n,
            format,
            stable,
            force,
        } => {
            if let Err(code) = check_guard(n, ENUMERATION_GUARD, "counts size", force) {
                return code;
            }
            let report = check_counts(n);
            emit_report(
                format!("verify counts {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
        Suite::Specializations {
            n,
            format,
            stable,
            force,
        } => {
            if n < 1 {
                return usage_error("specializations check needs n >= 1");
            }
            if let Err(code) = check_guard(n, ENUMERATION_GUARD, "specializations weight", force) {
                return code;
            }
            let report = check_specializations(n);
            emit_report(
                format!("verify specializations {n}"),
                &report,
                ReportOpts { format, stable },
                started,
            )
        }
    }
}

fn cmd_oeis(nmax: usize, format: Format, stable: bool, force: bool) -> ExitCode {
    let started = Instant::now();
    if let Err(code) = check_guard(nmax, ENUMERATION_GUARD, "oeis size", force) {
        return code;
    }
    if nmax >= A000262_PREFIX.len() {
        return usage_error(format!(
            "embedded sequence covers sizes 0..={}",
            A000262_PREFIX.len() - 1
        ));
    }
    let mut report = CheckReport::new(format!("oeis nmax={nmax}"));
    for n in 0..=nmax {
        let counted = count_permutitions(n);
        let expected = A000262_PREFIX[n];
        report.record(format!("n={n}: {counted}"), counted == expected, || {
            format!("enumerated {counted}, embedded sequence says {expected}")
        });
    }
    emit_report(
        format!("oeis {nmax}"),
        &report,
        ReportOpts { format, stable },
        started,
    )
}
