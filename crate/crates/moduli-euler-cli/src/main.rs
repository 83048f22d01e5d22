//! Command-line front end: exact values, tables, the graph oracle, the
//! edge-count generating polynomials, closed-form series, and the named
//! verification suites.
//!
//! Exit codes: 0 success, 2 usage/domain error, 3 enumeration budget
//! exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use moduli_euler::chi::{chi_tilde_g0, chi_tilde_quadratic, ChiTable, TableRecord};
use moduli_euler::closed::{a_gkp_series, a_k_series, b_k_series};
use moduli_euler::funceq::solve_chi0;
use moduli_euler::gk::{gk_dtilde, gk_series_recursion, gk_virasoro, gk_wick, vpoly_to_zseries};
use moduli_euler::graph::{enumerate_stable_graphs, feynman_sum, stratum_census};
use moduli_euler::kpoly::KPoly;
use moduli_euler::rat::{factorial, Rat};
use moduli_euler::verify::run_suite;
use moduli_euler::vpoly::VPoly;
use moduli_euler::Error;

#[derive(Parser)]
#[command(
    name = "moduli-euler",
    version,
    about = "Exact orbifold Euler characteristics of moduli of stable curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one value chi(Mbar_{g,n}), or the full refined polynomial.
    Chi(ChiArgs),
    /// Emit all stable (g, n) in a rectangle as JSON lines or CSV.
    Table(TableArgs),
    /// The fixed-edge-count generating polynomial G_k in the vertex weights.
    Gk(GkArgs),
    /// Enumerate stable graphs and evaluate the direct graph sum.
    Oracle(OracleArgs),
    /// Closed-form series for the coefficient ladders at fixed genus.
    ClosedForm(ClosedFormArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Linear,
    Quadratic,
    ClosedForm,
    FunctionalEq,
    GraphOracle,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Linear => "linear",
            Method::Quadratic => "quadratic",
            Method::ClosedForm => "closed_form",
            Method::FunctionalEq => "functional_eq",
            Method::GraphOracle => "graph_oracle",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GkMethod {
    Dtilde,
    Virasoro,
    Wick,
}

#[derive(Args)]
struct ChiArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: u32,
    /// Print the full kappa-polynomial and the t-exponent.
    #[arg(long)]
    refined: bool,
    /// Evaluate at this kappa (exact rational, e.g. 1 or 3/2).
    #[arg(long)]
    kappa: Option<Rat>,
    /// Evaluate at this t (exact rational).
    #[arg(long)]
    t: Option<Rat>,
    #[arg(long, value_enum, default_value = "linear")]
    method: Method,
    /// Append a decimal approximation, clearly marked approximate.
    #[arg(long)]
    decimal: bool,
    /// Enumeration budget (max 3g-3+n) for --method graph-oracle.
    #[arg(long, env = "MODULI_EULER_MAX_DIM", default_value_t = 3)]
    max_dim: u32,
    /// Load/store the memoized table as JSON at this path.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Emit the record as JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    g_max: u32,
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum, default_value = "json")]
    format: TableFormat,
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct GkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "dtilde")]
    method: GkMethod,
    /// Also print the series in 1/z after substituting the vertex weights,
    /// truncated at this exponent.
    #[arg(long)]
    z_order: Option<usize>,
    /// Compare against the direct series-level recursion (needs --z-order).
    #[arg(long)]
    check_series: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    g: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, env = "MODULI_EULER_MAX_DIM", default_value_t = 3)]
    max_dim: u32,
    /// One JSON record per isomorphism class.
    #[arg(long)]
    catalog: bool,
    /// Graphviz output, one graph per class.
    #[arg(long)]
    dot: bool,
    /// Class counts per edge count.
    #[arg(long)]
    census: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Genus-0 ladder series A_k(x).
    A,
    /// Genus-1 ladder series B_k(x).
    B,
    /// General-genus column series A_{g,k}^p(x).
    Agkp,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, env = "MODULI_EULER_ORDER", default_value_t = 12)]
    order: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, env = "MODULI_EULER_MAX_DIM", default_value_t = 3)]
    max_dim: u32,
}

#[derive(Serialize)]
struct OutputRecord {
    g: u32,
    n: u32,
    value: String,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    kpoly: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_exp: Option<i64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Chi(args) => cmd_chi(args),
        Command::Table(args) => cmd_table(args),
        Command::Gk(args) => cmd_gk(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ClosedForm(args) => cmd_closed_form(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_table(cache: &Option<PathBuf>) -> Result<ChiTable, Error> {
    if let Some(path) = cache {
        if path.exists() {
            let data = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read cache {}: {e}", path.display())))?;
            let records: Vec<TableRecord> = serde_json::from_str(&data)
                .map_err(|e| Error::Domain(format!("bad cache {}: {e}", path.display())))?;
            return Ok(ChiTable::from_records(records));
        }
    }
    Ok(ChiTable::new())
}

fn store_table(cache: &Option<PathBuf>, table: &ChiTable) -> Result<(), Error> {
    if let Some(path) = cache {
        let json = serde_json::to_string(&table.to_records()).expect("serializable records");
        std::fs::write(path, json)
            .map_err(|e| Error::Domain(format!("cannot write cache {}: {e}", path.display())))?;
    }
    Ok(())
}

/// chi-tilde_{g,n} by the requested route.
fn chi_tilde_by_method(
    table: &mut ChiTable,
    method: Method,
    g: u32,
    n: u32,
    max_dim: u32,
) -> Result<KPoly, Error> {
    if !moduli_euler::initial::is_stable(g, n) {
        return Err(Error::Unstable(g, n));
    }
    match method {
        Method::Linear => table.chi_tilde(g, n),
        Method::Quadratic => chi_tilde_quadratic(g, n),
        Method::GraphOracle => feynman_sum(g, n, max_dim).map(|(poly, _)| poly),
        Method::ClosedForm => {
            let n_us = n as usize;
            let coeffs: Result<Vec<Rat>, Error> = (0..=(3 * g as usize + n_us - 3))
                .map(|k| match g {
                    0 => Ok(a_k_series(k, n_us).coeff(n_us).clone()),
                    1 => Ok(b_k_series(k, n_us).coeff(n_us).clone()),
                    _ => {
                        let mut acc = Rat::zero();
                        for p in 0..=(3 * g as usize - 3) {
                            let base = chi_tilde_g0_cached(table, g)?.coeff(p);
                            acc += &(base * a_gkp_series(g, k, p, n_us)?.coeff(n_us).clone());
                        }
                        Ok(acc)
                    }
                })
                .collect();
            Ok(KPoly::from_coeffs(coeffs?))
        }
        Method::FunctionalEq => {
            if g != 0 {
                return Err(Error::Domain(
                    "the functional-equation route produces values only at genus 0".to_string(),
                ));
            }
            // [y^{n-1}] chi = n kappa chi-tilde_{0,n}: strip one power of
            // kappa and the factor n.
            let chi = solve_chi0(n as usize - 1);
            let coeff = chi.coeff(n as usize - 1);
            let coeffs = (1..=coeff.degree().unwrap_or(0))
                .map(|i| coeff.coeff(i) / Rat::from_int(n as i64))
                .collect();
            Ok(KPoly::from_coeffs(coeffs))
        }
    }
}

fn chi_tilde_g0_cached(table: &mut ChiTable, g: u32) -> Result<KPoly, Error> {
    if g >= 3 {
        chi_tilde_g0(g)
    } else {
        table.chi_tilde(g, 0)
    }
}

fn format_value(value: &Rat, decimal: bool) -> String {
    if decimal {
        format!("{value} (approx {})", value.to_f64())
    } else {
        value.to_string()
    }
}

fn cmd_chi(args: ChiArgs) -> Result<ExitCode, Error> {
    let mut table = load_table(&args.cache)?;
    let poly = chi_tilde_by_method(&mut table, args.method, args.g, args.n, args.max_dim)?;
    let t_exp = 2 - 2 * args.g as i64 - args.n as i64;
    store_table(&args.cache, &table)?;

    if args.refined {
        if args.json {
            let record = OutputRecord {
                g: args.g,
                n: args.n,
                value: poly.eval(&Rat::one()).to_string(),
                method: args.method.name(),
                kpoly: Some(poly.coeffs().iter().map(Rat::to_string).collect()),
                t_exp: Some(t_exp),
            };
            println!("{}", serde_json::to_string(&record).expect("serializable"));
        } else {
            println!("{poly}");
            println!("t_exp: {t_exp}");
        }
        return Ok(ExitCode::SUCCESS);
    }

    let kappa = args.kappa.clone().unwrap_or_else(Rat::one);
    let t = args.t.clone().unwrap_or_else(Rat::one);
    let value = Rat::from_bigint(factorial(args.n as u64)) * poly.eval(&kappa) * t.pow(t_exp);
    if args.json {
        let record = OutputRecord {
            g: args.g,
            n: args.n,
            value: value.to_string(),
            method: args.method.name(),
            kpoly: None,
            t_exp: None,
        };
        println!("{}", serde_json::to_string(&record).expect("serializable"));
    } else {
        println!("{}", format_value(&value, args.decimal));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    let mut table = load_table(&args.cache)?;
    let mut rows = Vec::new();
    for g in 0..=args.g_max {
        for n in 0..=args.n_max {
            if !moduli_euler::initial::is_stable(g, n) {
                continue;
            }
            let value = table.chi_mbar(g, n)?;
            rows.push(OutputRecord {
                g,
                n,
                value: value.to_string(),
                method: Method::Linear.name(),
                kpoly: None,
                t_exp: None,
            });
        }
    }
    store_table(&args.cache, &table)?;
    match args.format {
        TableFormat::Json => {
            for row in rows {
                println!("{}", serde_json::to_string(&row).expect("serializable"));
            }
        }
        TableFormat::Csv => {
            println!("g,n,value,method");
            for row in rows {
                println!("{},{},{},{}", row.g, row.n, row.value, row.method);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gk(args: GkArgs) -> Result<ExitCode, Error> {
    let gk: VPoly = match args.method {
        GkMethod::Dtilde => gk_dtilde(args.k),
        GkMethod::Virasoro => gk_virasoro(args.k),
        GkMethod::Wick => gk_wick(args.k),
    };
    println!("{}", serde_json::to_string(&gk.to_records()).expect("serializable"));
    if let Some(order) = args.z_order {
        let series = vpoly_to_zseries(&gk, order);
        let entries: Vec<(usize, String)> = (0..=order)
            .filter(|&e| !series.coeff(e).is_zero())
            .map(|e| (e, series.coeff(e).to_string()))
            .collect();
        println!("{}", serde_json::to_string(&entries).expect("serializable"));
        if args.check_series {
            let direct = gk_series_recursion(args.k, order);
            let agree = direct == series;
            println!("series_recursion_agrees: {agree}");
            if !agree {
                return Err(Error::Domain(
                    "series recursion disagrees with substitution".to_string(),
                ));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode, Error> {
    let classes = enumerate_stable_graphs(args.g, args.n, args.max_dim)?;
    if args.catalog {
        for class in &classes {
            let record = class.graph.catalog_record(class.aut);
            println!("{}", serde_json::to_string(&record).expect("serializable"));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if args.dot {
        for (i, class) in classes.iter().enumerate() {
            print!("{}", class.graph.to_dot(&format!("class{i}")));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if args.census {
        let census = stratum_census(args.g, args.n, args.max_dim)?;
        let entries: Vec<(usize, usize)> = census.into_iter().collect();
        println!("{}", serde_json::to_string(&entries).expect("serializable"));
        return Ok(ExitCode::SUCCESS);
    }
    let (sum, t_exp) = feynman_sum(args.g, args.n, args.max_dim)?;
    println!("classes: {}", classes.len());
    println!("graph sum: {sum}");
    println!("t_exp: {t_exp}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_closed_form(args: ClosedFormArgs) -> Result<ExitCode, Error> {
    let series = match args.family {
        Family::A => a_k_series(args.k, args.order),
        Family::B => b_k_series(args.k, args.order),
        Family::Agkp => {
            let g = args
                .g
                .ok_or_else(|| Error::Domain("--family agkp needs --g".to_string()))?;
            let p = args
                .p
                .ok_or_else(|| Error::Domain("--family agkp needs --p".to_string()))?;
            a_gkp_series(g, args.k, p, args.order)?
        }
    };
    let coeffs: Vec<String> = (0..=args.order).map(|i| series.coeff(i).to_string()).collect();
    println!("{}", serde_json::to_string(&coeffs).expect("serializable"));
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let report = run_suite(&args.suite, args.max_dim)?;
    let mut all_ok = true;
    let mut out = String::new();
    for check in &report.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        all_ok &= check.passed;
        let _ = writeln!(out, "{status} {}/{}: {}", report.suite, check.name, check.detail);
    }
    print!("{out}");
    if all_ok {
        println!("suite {}: all {} checks passed", report.suite, report.checks.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("suite {}: FAILURES present", report.suite);
        Ok(ExitCode::FAILURE)
    }
}
