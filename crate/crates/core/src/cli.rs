//! `bi-lab` command-line frontend.
//!
//! Exit codes: `0` success, `1` an identity failed, `2` invalid input or
//! degenerate parameters. Output is deterministic for fixed flags and seed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bi_operator::BIParams;
use crate::bi_poly::{
    bi_hypergeometric, discrete_weights, eigenvalue, grid_point, hypergeometric_lower_check, orthogonality_check,
    recurrence_coeffs,
};
use crate::dirac::{dirac_suite, DiracParams};
use crate::error::{BiError, Result};
use crate::exact::Rat;
use crate::racah::{
    build_tridiag_rep, k1_spectrum_check, racah_overlaps, verify_tridiag_rep, RacahParams, TridiagRep,
};
use crate::report::{Summary, VerificationReport};
use crate::suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bi-lab", version, about = "Bannai-Ito algebra tables and verification suites")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bannai-Ito polynomials B_0..B_nmax with eigenvalues and recurrence coefficients.
    Poly {
        #[command(flatten)]
        params: BiArgs,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
    },
    /// Run seeded verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
        /// Size per suite: monomial degree (bi), module level (sl1), N and slice m (racah), slice degree (dirac).
        #[arg(long)]
        maxdeg: Option<usize>,
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
        /// Parameter tuples per suite (defaults differ per suite).
        #[arg(long)]
        tuples: Option<usize>,
        /// Shift omega3 by one in the relation suite to exercise the failure path.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Racah representation, spectra, grid and overlaps for (mu1, mu2, mu3, N).
    Racah {
        /// mu1,mu2,mu3 as p/q rationals.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long = "N")]
        n: usize,
    },
    /// Dunkl-Dirac identities on degree slices up to maxdeg.
    Dirac {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 6)]
        maxdeg: u32,
    },
    /// N+1 point quadrature nodes, weights and orthogonality.
    Weights {
        #[command(flatten)]
        params: OptBiArgs,
        /// Racah parameters mu1,mu2,mu3; replaces the rho/r flags.
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["rho1", "rho2", "r1", "r2"])]
        mu: Option<String>,
        #[arg(long = "N")]
        n: usize,
    },
}

#[derive(Args, Debug)]
pub struct BiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rho2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: String,
}

#[derive(Args, Debug)]
pub struct OptBiArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Bi,
    Sl1,
    Racah,
    Dirac,
    All,
}

/// Rendered output plus the exit code it implies.
struct Rendered {
    text: String,
    code: i32,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INVALID;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &rendered.text),
        None => std::io::stdout().lock().write_all(rendered.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_INVALID;
    }
    rendered.code
}

fn execute(cli: &Cli) -> Result<Rendered> {
    match &cli.command {
        Command::Poly { params, nmax } => run_poly(params, *nmax, cli.format),
        Command::Verify { scope, maxdeg, seed, tuples, corrupt } => {
            Ok(run_verify(*scope, *maxdeg, *seed, *tuples, *corrupt, cli.format))
        }
        Command::Racah { mu, n } => run_racah(mu, *n, cli.format),
        Command::Dirac { mu, maxdeg } => run_dirac(mu, *maxdeg, cli.format),
        Command::Weights { params, mu, n } => run_weights(params, mu.as_deref(), *n, cli.format),
    }
}

fn parse_mu(s: &str) -> Result<[Rat; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(BiError::InvalidInput(format!("--mu expects three comma-separated values, got {s:?}")));
    }
    Ok([parts[0].parse()?, parts[1].parse()?, parts[2].parse()?])
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output is serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn exit_for(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn pretty_report(out: &mut String, rep: &VerificationReport) {
    let Summary { total, passed, failed } = rep.summary;
    let _ = writeln!(out, "{}: {passed}/{total} passed, {failed} failed", rep.name);
    for e in rep.failures() {
        let _ = writeln!(out, "  FAIL {} [{}]: {} != {}", e.relation, e.degree, e.lhs, e.rhs);
    }
    for n in &rep.notes {
        let _ = writeln!(out, "  note: {n}");
    }
}

fn report_rows<'a>(suite: &'a str, rep: &'a VerificationReport) -> impl Iterator<Item = Vec<String>> + 'a {
    rep.entries.iter().map(move |e| {
        vec![suite.to_string(), e.relation.clone(), e.degree.to_string(), e.lhs.clone(), e.rhs.clone(), e.pass.to_string()]
    })
}

const REPORT_HEADER: [&str; 6] = ["suite", "relation", "degree", "lhs", "rhs", "pass"];

// ---------------------------------------------------------------- poly

#[derive(Serialize)]
struct PolyRow {
    n: usize,
    lambda: Rat,
    coeffs: Vec<Rat>,
    #[serde(rename = "A")]
    a: Rat,
    #[serde(rename = "C")]
    c: Rat,
}

#[derive(Serialize)]
struct GridRow {
    s: usize,
    x_s: Rat,
}

#[derive(Serialize)]
struct PolyOutput {
    params: BIParams,
    nmax: usize,
    rows: Vec<PolyRow>,
    grid: Vec<GridRow>,
}

fn run_poly(args: &BiArgs, nmax: usize, format: Format) -> Result<Rendered> {
    let params = BIParams::parse(&args.rho1, &args.rho2, &args.r1, &args.r2)?;
    hypergeometric_lower_check(&params, nmax)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let rc = recurrence_coeffs(&params, n)?;
        let b = bi_hypergeometric(&params, n)?;
        rows.push(PolyRow { n, lambda: eigenvalue(&params, n), coeffs: b.coeffs().to_vec(), a: rc.a, c: rc.c });
    }
    let grid = (0..=nmax).map(|s| GridRow { s, x_s: grid_point(&params, s) }).collect();
    let out = PolyOutput { params, nmax, rows, grid };
    let text = match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut header = vec!["n".to_string(), "lambda".into(), "A".into(), "C".into()];
            header.extend((0..=nmax).map(|k| format!("c{k}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_table(
                &header,
                out.rows.iter().map(|r| {
                    let mut cells = vec![r.n.to_string(), r.lambda.to_string(), r.a.to_string(), r.c.to_string()];
                    cells.extend((0..=nmax).map(|k| r.coeffs.get(k).cloned().unwrap_or_default().to_string()));
                    cells
                }),
            )
        }
        Format::Pretty => {
            let p = &out.params;
            let mut s = format!("rho1={} rho2={} r1={} r2={} h={}\n", p.rho1(), p.rho2(), p.r1(), p.r2(), p.h());
            for r in &out.rows {
                let coeffs: Vec<String> = r.coeffs.iter().map(Rat::to_string).collect();
                let _ = writeln!(s, "n={} lambda={} A={} C={} B=[{}]", r.n, r.lambda, r.a, r.c, coeffs.join(", "));
            }
            for g in &out.grid {
                let _ = writeln!(s, "x_{} = {}", g.s, g.x_s);
            }
            s
        }
    };
    Ok(Rendered { text, code: EXIT_OK })
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct SuiteRun {
    suite: &'static str,
    tuples: usize,
    size: usize,
    report: VerificationReport,
}

#[derive(Serialize)]
struct VerifyOutput {
    scope: Scope,
    seed: u64,
    maxdeg: Option<usize>,
    passed: bool,
    summary: Summary,
    suites: Vec<SuiteRun>,
}

/// Suites for a scope, with their default tuple counts and sizes.
fn run_verify(
    scope: Scope,
    maxdeg: Option<usize>,
    seed: u64,
    tuples: Option<usize>,
    corrupt: bool,
    format: Format,
) -> Rendered {
    let t = |default: usize| tuples.unwrap_or(default);
    let size = |default: usize, cap: usize| maxdeg.unwrap_or(default).min(cap);
    let wants = |s: Scope| scope == s || scope == Scope::All;
    let mut suites = Vec::new();
    if wants(Scope::Bi) {
        let (n, d) = (t(50), maxdeg.unwrap_or(12));
        suites.push(SuiteRun { suite: "bi-relations", tuples: n, size: d, report: suite::bi_relation_suite(seed, n, d, corrupt) });
        let (n, d) = (t(20), size(10, 10));
        suites.push(SuiteRun {
            suite: "bi-polynomials",
            tuples: n,
            size: d,
            report: suite::polynomial_suite(seed, n, d, maxdeg.unwrap_or(12).min(12)),
        });
        let (n, d) = (t(10), size(10, 10));
        suites.push(SuiteRun { suite: "bi-ladders", tuples: n, size: d, report: suite::ladder_suite(seed, n, d) });
        let (n, d) = (t(10), size(10, 10));
        suites.push(SuiteRun { suite: "bi-orthogonality", tuples: n, size: d, report: suite::orthogonality_suite(seed, n, d) });
    }
    if wants(Scope::Sl1) {
        let (n, d) = (t(20), maxdeg.unwrap_or(12));
        suites.push(SuiteRun { suite: "sl1", tuples: n, size: d, report: suite::sl1_suite(seed, n, d) });
    }
    if wants(Scope::Racah) {
        let (n, d) = (t(20), size(8, 8));
        suites.push(SuiteRun { suite: "racah-exact", tuples: n, size: d, report: suite::racah_exact_suite(seed, n, d) });
        suites.push(SuiteRun { suite: "racah-overlaps", tuples: n, size: d, report: suite::racah_overlap_suite(seed, n, d) });
        let (n, d) = (t(3), size(6, 6));
        suites.push(SuiteRun { suite: "racah-tensor", tuples: n, size: d, report: suite::tensor_suite(seed, n, d) });
    }
    if wants(Scope::Dirac) {
        let (n, d) = (t(10), maxdeg.unwrap_or(6));
        suites.push(SuiteRun { suite: "dirac", tuples: n, size: d, report: suite::dirac_sweep(seed, n, d as u32) });
    }
    let mut summary = Summary::default();
    for s in &suites {
        summary.total += s.report.summary.total;
        summary.passed += s.report.summary.passed;
        summary.failed += s.report.summary.failed;
    }
    let passed = summary.failed == 0;
    let out = VerifyOutput { scope, seed, maxdeg, passed, summary, suites };
    let text = match format {
        Format::Json => json(&out),
        Format::Csv => csv_table(&REPORT_HEADER, out.suites.iter().flat_map(|s| report_rows(s.suite, &s.report))),
        Format::Pretty => {
            let mut s = String::new();
            for run in &out.suites {
                let _ = write!(s, "[{}] tuples={} size={} ", run.suite, run.tuples, run.size);
                pretty_report(&mut s, &run.report);
            }
            let _ = writeln!(
                s,
                "{}: {}/{} checks passed",
                if passed { "PASS" } else { "FAIL" },
                summary.passed,
                summary.total
            );
            s
        }
    };
    Rendered { text, code: exit_for(passed) }
}

// ---------------------------------------------------------------- racah

#[derive(Serialize)]
struct Identifications {
    rho1: Rat,
    rho2: Rat,
    r1: Rat,
    r2: Rat,
}

#[derive(Serialize)]
struct RacahOutput {
    params: RacahParams,
    identifications: Identifications,
    representation: TridiagRep,
    k3_diagonal: Vec<Rat>,
    k1_spectrum: Vec<Rat>,
    k1_spectrum_numeric: Vec<f64>,
    grid: Vec<GridRow>,
    overlaps: Vec<Vec<f64>>,
    weights: Vec<f64>,
    passed: bool,
    report: VerificationReport,
}

fn run_racah(mu: &str, n: usize, format: Format) -> Result<Rendered> {
    let [m1, m2, m3] = parse_mu(mu)?;
    let rp = RacahParams::new(m1, m2, m3, n)?;
    let rep = build_tridiag_rep(&rp)?;
    let ov = racah_overlaps(&rp)?;
    let mut report = VerificationReport::new("racah");
    report.absorb(verify_tridiag_rep(&rep, &rp));
    report.absorb(k1_spectrum_check(&rep, &rp));
    report.absorb(ov.report.clone());
    let bi = rp.identifications();
    let out = RacahOutput {
        identifications: Identifications {
            rho1: bi.rho1().clone(),
            rho2: bi.rho2().clone(),
            r1: bi.r1().clone(),
            r2: bi.r2().clone(),
        },
        k3_diagonal: rep.k3.diag(),
        k1_spectrum: (0..=n).map(|s| rp.k1_eigenvalue(s)).collect(),
        k1_spectrum_numeric: ov.theta.clone(),
        grid: ov.grid.iter().enumerate().map(|(s, x)| GridRow { s, x_s: x.clone() }).collect(),
        overlaps: ov.overlaps.clone(),
        weights: ov.w.iter().map(|w| w * w).collect(),
        passed: report.passed(),
        params: rp,
        representation: rep,
        report,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Csv => {
            let mut header: Vec<String> =
                ["k", "B", "D", "V", "U_squared", "K3", "K1_eigenvalue", "x_s", "weight"].map(String::from).to_vec();
            header.extend((0..=n).map(|k| format!("overlap_k{k}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let r = &out.representation;
            csv_table(
                &header,
                (0..=n).map(|k| {
                    let mut cells = vec![
                        k.to_string(),
                        r.b[k].to_string(),
                        r.d[k].to_string(),
                        r.v[k].to_string(),
                        if k == 0 { String::new() } else { r.u_squared[k - 1].to_string() },
                        out.k3_diagonal[k].to_string(),
                        out.k1_spectrum[k].to_string(),
                        out.grid[k].x_s.to_string(),
                        format!("{:e}", out.weights[k]),
                    ];
                    cells.extend(out.overlaps[k].iter().map(|v| format!("{v:e}")));
                    cells
                }),
            )
        }
        Format::Pretty => {
            let p = &out.params;
            let id = &out.identifications;
            let mut s = format!("mu=({}, {}, {}) N={} mu4={} mu={}\n", p.mu1(), p.mu2(), p.mu3(), p.n(), p.mu4(), p.mu());
            let _ = writeln!(s, "rho1={} rho2={} r1={} r2={}", id.rho1, id.rho2, id.r1, id.r2);
            let _ = writeln!(s, "K1 = {}", out.representation.k1);
            let _ = writeln!(s, "K2 = {}", out.representation.k2);
            let _ = writeln!(s, "K3 diagonal = {:?}", out.k3_diagonal);
            let _ = writeln!(s, "K1 spectrum = {:?}", out.k1_spectrum);
            let _ = writeln!(s, "grid = {:?}", out.grid.iter().map(|g| &g.x_s).collect::<Vec<_>>());
            let _ = writeln!(s, "weights = {:?}", out.weights);
            pretty_report(&mut s, &out.report);
            s
        }
    };
    Ok(Rendered { text, code: exit_for(out.passed) })
}

// ---------------------------------------------------------------- dirac

#[derive(Serialize)]
struct DiracOutput {
    mu: [Rat; 3],
    maxdeg: u32,
    passed: bool,
    report: VerificationReport,
}

fn run_dirac(mu: &str, maxdeg: u32, format: Format) -> Result<Rendered> {
    let [m1, m2, m3] = parse_mu(mu)?;
    let dp = DiracParams::new(m1, m2, m3)?;
    let report = dirac_suite(&dp, maxdeg);
    let out = DiracOutput { mu: [dp.mu(0).clone(), dp.mu(1).clone(), dp.mu(2).clone()], maxdeg, passed: report.passed(), report };
    let text = match format {
        Format::Json => json(&out),
        Format::Csv => csv_table(&REPORT_HEADER, report_rows("dirac", &out.report)),
        Format::Pretty => {
            let mut s = String::new();
            pretty_report(&mut s, &out.report);
            s
        }
    };
    Ok(Rendered { text, code: exit_for(out.passed) })
}

// ---------------------------------------------------------------- weights

#[derive(Serialize)]
struct QuadRow {
    node: f64,
    weight: f64,
}

#[derive(Serialize)]
struct WeightsOutput {
    params: BIParams,
    #[serde(rename = "N")]
    n: usize,
    quadrature: Vec<QuadRow>,
    grid: Vec<GridRow>,
    passed: bool,
    report: VerificationReport,
}

fn run_weights(args: &OptBiArgs, mu: Option<&str>, n: usize, format: Format) -> Result<Rendered> {
    let params = match mu {
        Some(mu) => {
            let [m1, m2, m3] = parse_mu(mu)?;
            RacahParams::new(m1, m2, m3, n)?.identifications()
        }
        None => match (&args.rho1, &args.rho2, &args.r1, &args.r2) {
            (Some(a), Some(b), Some(c), Some(d)) => BIParams::parse(a, b, c, d)?,
            _ => {
                return Err(BiError::InvalidInput("weights needs --mu or all of --rho1 --rho2 --r1 --r2".into()));
            }
        },
    };
    let nodes = discrete_weights(&params, n)?;
    let report = orthogonality_check(&params, n);
    let out = WeightsOutput {
        quadrature: nodes.iter().map(|q| QuadRow { node: q.node, weight: q.weight }).collect(),
        grid: (0..=n).map(|s| GridRow { s, x_s: grid_point(&params, s) }).collect(),
        passed: report.passed(),
        params,
        n,
        report,
    };
    let text = match format {
        Format::Json => json(&out),
        Format::Csv => csv_table(
            &["s", "x_s", "node", "weight"],
            (0..=n).map(|i| {
                vec![
                    i.to_string(),
                    out.grid[i].x_s.to_string(),
                    format!("{:e}", out.quadrature[i].node),
                    format!("{:e}", out.quadrature[i].weight),
                ]
            }),
        ),
        Format::Pretty => {
            let mut s = String::new();
            for g in &out.grid {
                let _ = writeln!(s, "x_{} = {}", g.s, g.x_s);
            }
            for q in &out.quadrature {
                let _ = writeln!(s, "node {:.12} weight {:.12}", q.node, q.weight);
            }
            pretty_report(&mut s, &out.report);
            s
        }
    };
    Ok(Rendered { text, code: exit_for(out.passed) })
}
