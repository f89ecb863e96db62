//! Command-line surface for the kleinian toolkit.
//!
//! Subcommands: `exponent`, `loops`, `geodesics`, `ortho`, `ps-measure`,
//! `sweep`, `selftest`. Each file-producing subcommand writes a CSV series
//! and a JSON report into the output directory (`--out`, or the
//! `KLEINIAN_OUT` environment variable, or the working directory), and
//! echoes the numbers as a table on stdout.
//!
//! Every output file carries a header block with the tool version and a
//! hash of the input files plus result-affecting parameters, so identical
//! configurations are recognizable. `--workers` and `--out` never change
//! results and are excluded from the hash; outputs are byte-identical at
//! any worker count.
//!
//! Exit codes: 0 success, 2 invalid input or validation failure (with a
//! machine-readable JSON error on stderr), 3 node-budget exhaustion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kleinian::counting::{
    count_loops, count_ortho, count_primitive_geodesics, fit_exponential, CountKind, CountSeries,
    ExpFit,
};
use kleinian::exponent::{estimate_delta, lambda0_from_delta};
use kleinian::group::orbit::{
    enumerate_orbit, verify_batch_distinct, Certificate, EnumerationMode, DEFAULT_BUDGET,
};
use kleinian::io::{
    load_bodies_file, load_family_file, load_group_file, make_stamp, write_csv, write_json,
    RunStamp,
};
use kleinian::measures::{bin_masses, ps_estimate, visual_embed};
use kleinian::selftest::{all_passed, run_selftest};
use kleinian::sweep::{run_sweep, SweepConfig, SweepRow};
use kleinian::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "kleinian",
    version,
    about = "Critical exponents, boundary measures, and geodesic counting \
             for discrete hyperbolic isometry groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every computing subcommand. `workers` and `out` do not
/// affect numerical results and are excluded from the configuration hash.
#[derive(Args)]
struct Common {
    /// Node budget for orbit enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (0 = library default). Results are identical at any
    /// worker count.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output directory for the CSV/JSON reports. Defaults to the
    /// KLEINIAN_OUT environment variable, then the working directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random seed reserved for sampling-based tooling built on top of the
    /// CLI. The pipelines here are deterministic and ignore it.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the critical exponent from the orbit growth of a group.
    Exponent {
        /// Group file (TOML).
        #[arg(long)]
        group: PathBuf,
        /// Displacement cutoff.
        #[arg(long = "T")]
        t: f64,
        /// When set, re-evaluate the enumerated words and fail if two
        /// distinct words give maps closer than this tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Count geodesic loops based at the group's basepoint.
    Loops {
        /// Group file (TOML).
        #[arg(long)]
        group: PathBuf,
        /// Displacement cutoff.
        #[arg(long = "T")]
        t: f64,
        /// Fit window "lo,hi" (default: T/2,T).
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        /// When set, re-evaluate the enumerated words and fail if two
        /// distinct words give maps closer than this tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Count primitive closed geodesics up to a length cutoff.
    Geodesics {
        /// Group file (TOML).
        #[arg(long)]
        group: PathBuf,
        /// Length cutoff.
        #[arg(long = "L")]
        l: f64,
        /// Fit window "lo,hi" (default: L/2,L).
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        #[command(flatten)]
        common: Common,
    },
    /// Count orthogeodesics between two convex bodies.
    Ortho {
        /// Group file (TOML).
        #[arg(long)]
        group: PathBuf,
        /// Body-pair file (TOML).
        #[arg(long)]
        bodies: PathBuf,
        /// Length cutoff.
        #[arg(long = "T")]
        t: f64,
        /// Override of the enumeration margin added to the cutoff.
        #[arg(long)]
        margin: Option<f64>,
        /// Fit window "lo,hi" (default: T/2,T).
        #[arg(long, value_parser = parse_window)]
        window: Option<(f64, f64)>,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the Patterson-Sullivan measure as a weighted atom cloud.
    PsMeasure {
        /// Group file (TOML).
        #[arg(long)]
        group: PathBuf,
        /// Displacement cutoff.
        #[arg(long = "T")]
        t: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run every estimator along a family of groups and report
    /// convergence gaps against the limit member.
    Sweep {
        /// Family file (TOML).
        #[arg(long)]
        family: PathBuf,
        /// Override of the orthogeodesic enumeration margin.
        #[arg(long)]
        margin: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in verification suite and report each check.
    Selftest,
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `lo,hi`".into());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| "bad window low end".to_string())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| "bad window high end".to_string())?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let doc = serde_json::json!({
                "kind": "invalid-arguments",
                "error": e.to_string(),
            });
            eprintln!("{doc}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let doc = serde_json::json!({
                "kind": e.kind(),
                "error": e.to_string(),
                "partial": matches!(e, Error::BudgetExceeded { .. }),
            });
            eprintln!("{doc}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Run `f` on a dedicated thread pool when a worker count is requested;
/// otherwise use the library default.
fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> kleinian::Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot build a {workers}-thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn out_dir(common: &Common) -> kleinian::Result<PathBuf> {
    let dir = match &common.out {
        Some(d) => d.clone(),
        None => match std::env::var_os("KLEINIAN_OUT") {
            Some(d) => PathBuf::from(d),
            None => PathBuf::from("."),
        },
    };
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn cert_text(cert: &Certificate) -> String {
    match cert {
        Certificate::Exact { depth_limit } => format!("exact depth_limit={depth_limit}"),
        Certificate::PrunedWithSlack { slack } => format!("pruned slack={slack}"),
    }
}

fn kind_text(kind: CountKind) -> &'static str {
    match kind {
        CountKind::Loops => "loops",
        CountKind::PrimitiveGeodesics => "primitive_geodesics",
        CountKind::Orthogeodesics => "orthogeodesics",
    }
}

fn opt_text(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Echo an integer-grid count table for a series on stdout.
fn echo_series_table(series: &CountSeries) {
    println!("{:>6}  {:>10}", "length", "count");
    let hi = series.cutoff.floor() as i64;
    for t in 1..=hi.max(1) {
        println!("{:>6}  {:>10}", t, series.count_at(t as f64));
    }
    println!("{:>6}  {:>10}  (cutoff)", series.cutoff, series.entries.len());
}

/// Outcome of an attempted exponential fit: at most one side is set.
struct FitOutcome {
    fit: Option<ExpFit>,
    error: Option<String>,
}

fn echo_fit(FitOutcome { fit, error: note }: &FitOutcome) {
    match fit {
        Some(f) => {
            println!(
                "fit over ({}, {}): C_hat = {}, delta_hat = {}, residual = {}{}",
                f.window.0,
                f.window.1,
                f.c_hat,
                f.delta_hat,
                f.residual,
                if f.elementary { "  [elementary]" } else { "" }
            );
        }
        None => match note {
            Some(n) => println!("fit unavailable: {n}"),
            None => println!("fit unavailable"),
        },
    }
}

/// JSON payload for the series subcommands: the series summary plus the
/// exponential fit (or the reason the fit was not produced).
#[derive(Serialize)]
struct SeriesReport {
    kind: &'static str,
    cutoff: f64,
    count: usize,
    skipped_overlaps: u64,
    certificate: Certificate,
    fit: Option<ExpFit>,
    fit_error: Option<String>,
}

/// Fit a series over `window` (defaulting to the upper half of the range),
/// treating insufficient data as a missing fit rather than a failure.
fn try_fit(
    series: &CountSeries,
    window: Option<(f64, f64)>,
    cutoff: f64,
) -> kleinian::Result<FitOutcome> {
    let w = window.unwrap_or((cutoff / 2.0, cutoff));
    match fit_exponential(series, w) {
        Ok(fit) => Ok(FitOutcome { fit: Some(fit), error: None }),
        Err(Error::InsufficientData(msg)) => Ok(FitOutcome { fit: None, error: Some(msg) }),
        Err(e) => Err(e),
    }
}

/// Write the CSV + JSON pair for a counting series.
fn write_series_outputs(
    dir: &Path,
    name: &str,
    spec: &kleinian::group::GroupSpec,
    stamp: &RunStamp,
    comments: Vec<String>,
    series: &CountSeries,
    outcome: FitOutcome,
) -> kleinian::Result<()> {
    let rows: Vec<String> = series
        .entries
        .iter()
        .map(|e| format!("{},{},{}", kind_text(series.kind), e.word.format(spec), e.length))
        .collect();
    write_csv(dir.join(format!("{name}.csv")), stamp, &comments, "kind,word,length", &rows)?;
    let report = SeriesReport {
        kind: kind_text(series.kind),
        cutoff: series.cutoff,
        count: series.entries.len(),
        skipped_overlaps: series.skipped_overlaps,
        certificate: series.certificate,
        fit: outcome.fit,
        fit_error: outcome.error,
    };
    write_json(dir.join(format!("{name}.json")), stamp, &report)?;
    Ok(())
}

fn announce_outputs(dir: &Path, name: &str) {
    println!(
        "wrote {} and {}",
        dir.join(format!("{name}.csv")).display(),
        dir.join(format!("{name}.json")).display()
    );
}

/// Optional post-enumeration distinctness verification: re-evaluates the
/// enumerated words and reports a freeness violation if two distinct words
/// give the same isometry within `tol`.
fn maybe_verify(
    spec: &kleinian::group::GroupSpec,
    t: f64,
    budget: u64,
    tol: Option<f64>,
) -> kleinian::Result<()> {
    if let Some(tol) = tol {
        let batch = enumerate_orbit(spec, t, EnumerationMode::pruned(), budget)?;
        verify_batch_distinct(spec, &batch, tol)?;
        println!("distinctness verified at tolerance {tol} over {} words", batch.entries.len());
    }
    Ok(())
}

fn run(command: Command) -> kleinian::Result<()> {
    match command {
        Command::Exponent { group, t, tol, common } => {
            let spec = load_group_file(&group)?;
            let dir = out_dir(&common)?;
            let est = with_pool(common.workers, || estimate_delta(&spec, t, common.budget))??;
            maybe_verify(&spec, t, common.budget, tol)?;
            let lambda0 = lambda0_from_delta(spec.dim(), est.delta_series)?;

            let params = format!(
                "cmd=exponent group={} T={} budget={} tol={}",
                group.display(),
                t,
                common.budget,
                opt_text(tol)
            );
            let stamp = make_stamp(VERSION, &[&group], &params)?;

            // Integer-grid growth table; the estimators and flags go in the
            // JSON report.
            let lean = with_pool(common.workers, || {
                kleinian::group::enumerate_displacements(
                    &spec,
                    t,
                    EnumerationMode::pruned(),
                    common.budget,
                )
            })??;
            let hi = t.floor() as i64;
            let mut rows = Vec::new();
            for k in 1..=hi.max(1) {
                rows.push(format!("{},{}", k, lean.count_within(k as f64)));
            }
            if t > hi as f64 {
                rows.push(format!("{},{}", t, lean.count_within(t)));
            }
            let comments = vec![
                format!("group: {}", group.display()),
                format!("cutoff: {t}"),
                format!("certificate: {}", cert_text(&est.certificate)),
            ];
            write_csv(dir.join("exponent.csv"), &stamp, &comments, "t,count", &rows)?;

            #[derive(Serialize)]
            struct ExponentReport {
                estimate: kleinian::exponent::DeltaEstimate,
                lambda0: f64,
            }
            write_json(
                dir.join("exponent.json"),
                &stamp,
                &ExponentReport { estimate: est.clone(), lambda0 },
            )?;

            println!("{:>6}  {:>10}", "t", "N(t)");
            for row in &rows {
                let (a, b) = row.split_once(',').unwrap();
                println!("{a:>6}  {b:>10}");
            }
            println!(
                "delta_series = {}, delta_growth = {}, lambda0 = {}{}{}",
                est.delta_series,
                est.delta_growth,
                lambda0,
                if est.low_confidence { "  [low-confidence]" } else { "" },
                if est.elementary { "  [elementary]" } else { "" }
            );
            announce_outputs(&dir, "exponent");
            Ok(())
        }

        Command::Loops { group, t, window, tol, common } => {
            let spec = load_group_file(&group)?;
            let dir = out_dir(&common)?;
            let series = with_pool(common.workers, || count_loops(&spec, t, common.budget))??;
            maybe_verify(&spec, t, common.budget, tol)?;
            let outcome = try_fit(&series, window, t)?;

            let params = format!(
                "cmd=loops group={} T={} window={:?} budget={} tol={}",
                group.display(),
                t,
                window,
                common.budget,
                opt_text(tol)
            );
            let stamp = make_stamp(VERSION, &[&group], &params)?;
            let comments = vec![
                format!("group: {}", group.display()),
                format!("cutoff: {t}"),
                format!("certificate: {}", cert_text(&series.certificate)),
            ];
            echo_series_table(&series);
            echo_fit(&outcome);
            write_series_outputs(&dir, "loops", &spec, &stamp, comments, &series, outcome)?;
            announce_outputs(&dir, "loops");
            Ok(())
        }

        Command::Geodesics { group, l, window, common } => {
            let spec = load_group_file(&group)?;
            let dir = out_dir(&common)?;
            let series =
                with_pool(common.workers, || count_primitive_geodesics(&spec, l, common.budget))??;
            let outcome = try_fit(&series, window, l)?;

            let params = format!(
                "cmd=geodesics group={} L={} window={:?} budget={}",
                group.display(),
                l,
                window,
                common.budget
            );
            let stamp = make_stamp(VERSION, &[&group], &params)?;
            let comments = vec![
                format!("group: {}", group.display()),
                format!("cutoff: {l}"),
                format!("certificate: {}", cert_text(&series.certificate)),
            ];
            echo_series_table(&series);
            echo_fit(&outcome);
            write_series_outputs(&dir, "geodesics", &spec, &stamp, comments, &series, outcome)?;
            announce_outputs(&dir, "geodesics");
            Ok(())
        }

        Command::Ortho { group, bodies, t, margin, window, common } => {
            let spec = load_group_file(&group)?;
            let (minus, plus) = load_bodies_file(&bodies, &spec)?;
            let dir = out_dir(&common)?;
            let series = with_pool(common.workers, || {
                count_ortho(&spec, &minus, &plus, t, margin, common.budget)
            })??;
            let outcome = try_fit(&series, window, t)?;

            let params = format!(
                "cmd=ortho group={} bodies={} T={} margin={} window={:?} budget={}",
                group.display(),
                bodies.display(),
                t,
                opt_text(margin),
                window,
                common.budget
            );
            let stamp = make_stamp(VERSION, &[&group, &bodies], &params)?;
            let comments = vec![
                format!("group: {}", group.display()),
                format!("bodies: {}", bodies.display()),
                format!("cutoff: {t}"),
                format!("certificate: {}", cert_text(&series.certificate)),
                format!("skipped_overlaps: {}", series.skipped_overlaps),
            ];
            echo_series_table(&series);
            echo_fit(&outcome);
            if series.skipped_overlaps > 0 {
                println!("skipped {} overlapping translates", series.skipped_overlaps);
            }
            write_series_outputs(&dir, "ortho", &spec, &stamp, comments, &series, outcome)?;
            announce_outputs(&dir, "ortho");
            Ok(())
        }

        Command::PsMeasure { group, t, common } => {
            let spec = load_group_file(&group)?;
            let dir = out_dir(&common)?;
            let measure = with_pool(common.workers, || -> kleinian::Result<_> {
                let est = estimate_delta(&spec, t, common.budget)?;
                ps_estimate(&spec, est.delta_series, t, common.budget)
            })??;
            let basepoint = spec.basepoint();
            let bins = bin_masses(&basepoint, &measure)?;

            let params = format!(
                "cmd=ps-measure group={} T={} budget={}",
                group.display(),
                t,
                common.budget
            );
            let stamp = make_stamp(VERSION, &[&group], &params)?;

            let mut rows = Vec::with_capacity(measure.atoms.len());
            for (xi, w) in &measure.atoms {
                let [x, y, z] = visual_embed(&basepoint, xi)?;
                rows.push(format!("{x},{y},{z},{w}"));
            }
            let comments = vec![
                format!("group: {}", group.display()),
                format!("cutoff: {t}"),
                format!("exponent: {}", measure.delta_used),
                format!("certificate: {}", cert_text(&measure.certificate)),
            ];
            write_csv(dir.join("ps-measure.csv"), &stamp, &comments, "x,y,z,weight", &rows)?;

            #[derive(Serialize)]
            struct MeasureReport {
                delta: f64,
                cutoff: f64,
                atom_count: usize,
                total_mass: f64,
                bin_masses: Vec<f64>,
                certificate: Certificate,
            }
            write_json(
                dir.join("ps-measure.json"),
                &stamp,
                &MeasureReport {
                    delta: measure.delta_used,
                    cutoff: measure.cutoff,
                    atom_count: measure.atoms.len(),
                    total_mass: measure.total_mass(),
                    bin_masses: bins.to_vec(),
                    certificate: measure.certificate,
                },
            )?;

            println!("{:>4}  {:>12}", "bin", "mass");
            for (i, m) in bins.iter().enumerate() {
                println!("{i:>4}  {m:>12.8}");
            }
            println!(
                "{} atoms at exponent {} (total mass {})",
                measure.atoms.len(),
                measure.delta_used,
                measure.total_mass()
            );
            announce_outputs(&dir, "ps-measure");
            Ok(())
        }

        Command::Sweep { family, margin, common } => {
            let fam = load_family_file(&family)?;
            let dir = out_dir(&common)?;
            let config = SweepConfig { budget: common.budget, ortho_margin: margin };
            let report = with_pool(common.workers, || run_sweep(&fam, &config))??;

            let params = format!(
                "cmd=sweep family={} margin={} budget={}",
                family.display(),
                opt_text(margin),
                common.budget
            );
            let stamp = make_stamp(VERSION, &[&family], &params)?;

            let header = "label,failed,delta_series,delta_growth,lambda0,low_confidence,\
                          elementary,loop_c_hat,loop_delta_hat,loop_residual,geo_ratio,\
                          geo_ratio_prev,ortho_c_hat,ortho_delta_hat,ortho_residual";
            let row_csv = |r: &SweepRow| -> String {
                let fit3 = |f: &Option<ExpFit>| match f {
                    Some(f) => format!("{},{},{}", f.c_hat, f.delta_hat, f.residual),
                    None => ",,".to_string(),
                };
                format!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.label,
                    r.failed.clone().unwrap_or_default(),
                    opt_text(r.delta_series),
                    opt_text(r.delta_growth),
                    opt_text(r.lambda0),
                    r.low_confidence,
                    r.elementary,
                    fit3(&r.loop_fit),
                    opt_text(r.geo_ratio),
                    opt_text(r.geo_ratio_prev),
                    fit3(&r.ortho_fit),
                )
            };
            let mut rows: Vec<String> = report.rows.iter().map(row_csv).collect();
            rows.push(row_csv(&report.limit));
            let comments = vec![
                format!("family: {}", family.display()),
                format!("cutoffs: T={} L={}", report.t, report.l),
                "last row is the limit member; gaps are in the JSON report".to_string(),
            ];
            write_csv(dir.join("sweep.csv"), &stamp, &comments, header, &rows)?;
            write_json(dir.join("sweep.json"), &stamp, &report)?;

            println!(
                "{:<12} {:>12} {:>12} {:>12} {:>12} {:>10}",
                "label", "delta", "lambda0", "loop_C", "geo_ratio", "status"
            );
            for r in report.rows.iter().chain(std::iter::once(&report.limit)) {
                println!(
                    "{:<12} {:>12} {:>12} {:>12} {:>12} {:>10}",
                    r.label,
                    opt_text(r.delta_series),
                    opt_text(r.lambda0),
                    opt_text(r.loop_fit.as_ref().map(|f| f.c_hat)),
                    opt_text(r.geo_ratio),
                    r.failed.as_deref().unwrap_or("ok"),
                );
            }
            println!("gaps against the limit row:");
            println!(
                "{:<12} {:>12} {:>12} {:>12}",
                "label", "delta_gap", "lambda0_gap", "constant_gap"
            );
            for g in &report.gaps {
                println!(
                    "{:<12} {:>12} {:>12} {:>12}",
                    g.label,
                    opt_text(g.delta_gap),
                    opt_text(g.lambda0_gap),
                    opt_text(g.constant_gap),
                );
            }
            announce_outputs(&dir, "sweep");
            Ok(())
        }

        Command::Selftest => {
            let results = run_selftest();
            for r in &results {
                println!("{}: {} ({})", r.name, if r.passed { "PASS" } else { "FAIL" }, r.detail);
            }
            if all_passed(&results) {
                println!("all {} checks passed", results.len());
                Ok(())
            } else {
                let failed: Vec<&str> =
                    results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
                Err(Error::InvalidParameter(format!(
                    "selftest failures: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}
