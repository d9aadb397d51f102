//! Command-line driver for the wilddepth pipeline.
//!
//! Every subcommand writes its result to `out` and diagnostics to `err`;
//! [`run`] returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on usage or input errors.

mod render;

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wilddepth_core::base_fields::parse_x_poly;
use wilddepth_core::depth_llc::max_certifiable_depth;
use wilddepth_core::unit_characters::{depth_census, DEPTH_CONVENTION, ENUMERATION_CAP};
use wilddepth_core::{
    as_reduce, corollary_family, enumerate_characters, galois_shift_valuations, parse_series, phi_from_ramification,
    ramification_breaks, tame_control, unit_group, verify_theorem, ASExtension, DepthReport, Error, FieldSpec,
    LaurentSeries, PLFunction, Rational,
};

use render::{csv_rows, csv_serialize, fields, rat_table, table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "wilddepth",
    version,
    about = "Depth of characters under the local Langlands correspondence for wild Artin-Schreier tori"
)]
pub struct Cli {
    /// Residue characteristic p
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,

    /// Residue degree k, so q = p^k
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,

    /// Irreducible modulus for F_q as a polynomial in x (required when k > 1), e.g. "x^2+x+1"
    #[arg(long, global = true)]
    modulus: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

/// The defining element: `--a` explicitly or `--m` for `a = t^{-m}`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ExtArgs {
    /// Artin-Schreier representative a, e.g. "t^-4 + t^-3"
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,

    /// Shortcut for a = t^-m
    #[arg(long)]
    m: Option<u32>,
}

/// Like [`ExtArgs`], but defaulting to `a = t^-1`.
#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct DefaultExtArgs {
    /// Artin-Schreier representative a (default t^-1)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,

    /// Shortcut for a = t^-m
    #[arg(long)]
    m: Option<u32>,
}

impl DefaultExtArgs {
    fn resolve(&self) -> ExtArgs {
        ExtArgs { a: self.a.clone(), m: if self.a.is_none() { Some(self.m.unwrap_or(1)) } else { None } }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce a modulo ℘(K): print a_red, m and the witness
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Ramification break from the Galois action on a uniformizer
    Breaks {
        #[command(flatten)]
        ext: ExtArgs,
    },
    /// Hasse-Herbrand function φ, optionally evaluated at --u
    Phi {
        #[command(flatten)]
        ext: ExtArgs,
        /// Evaluation point, as "a/b" or an integer
        #[arg(long)]
        u: Option<String>,
    },
    /// Parameter depth φ(e·d) for one character depth d
    DepthMap {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long)]
        d: u32,
    },
    /// Check non-preservation of depth for d = 1..dmax
    Verify {
        #[command(flatten)]
        ext: ExtArgs,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
    /// Characteristic-2 family a = t^-m, m = 1, 3, 5, ...
    Corollary {
        #[arg(long, default_value_t = 4)]
        count: u32,
    },
    /// Tame control: φ(e·d) = d for break data [(0, e)]
    Tame {
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
    },
    /// Character census of U^1_L / U^N_L
    Chars {
        #[command(flatten)]
        ext: DefaultExtArgs,
        /// Truncation level N
        #[arg(long = "n", short = 'N')]
        n: u32,
        /// Also list every character
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailure { .. } | Error::BreakMismatch { .. } | Error::Overflow => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "FAIL: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn field_spec(cli: &Cli) -> Result<FieldSpec, Failure> {
    match (&cli.modulus, cli.k) {
        (None, 1) => FieldSpec::prime(cli.p).map_err(|e| flag_error("--p", e)),
        (None, k) => Err(Failure::Usage(format!("--modulus is required when --k is {k}"))),
        (Some(text), k) => {
            let poly = parse_x_poly(text).map_err(|e| flag_error("--modulus", e))?;
            let spec = FieldSpec::new(cli.p, &poly).map_err(|e| flag_error("--modulus", e))?;
            if spec.k() != k {
                return Err(Failure::Usage(format!("--modulus has degree {} but --k is {k}", spec.k())));
            }
            Ok(spec)
        }
    }
}

fn flag_error(flag: &str, e: Error) -> Failure {
    Failure::Usage(format!("{flag}: {e}"))
}

fn extension(spec: FieldSpec, args: &ExtArgs) -> Result<ASExtension, Failure> {
    let a = match (&args.a, args.m) {
        (Some(text), _) => parse_series(text, spec).map_err(|e| flag_error("--a", e))?,
        (None, Some(m)) => {
            if m == 0 {
                return Err(Failure::Usage("--m must be positive".into()));
            }
            LaurentSeries::t_pow(spec, -(m as i64))
        }
        (None, None) => return Err(Failure::Usage("one of --a or --m is required".into())),
    };
    Ok(ASExtension::new(&a)?)
}

fn json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let spec = field_spec(cli)?;
    match &cli.command {
        Command::Reduce { a } => reduce(cli.format, spec, a, out),
        Command::Breaks { ext } => breaks(cli.format, &extension(spec, ext)?, out),
        Command::Phi { ext, u } => phi(cli.format, &extension(spec, ext)?, u.as_deref(), out),
        Command::DepthMap { ext, d } => depth_map(cli.format, &extension(spec, ext)?, *d, out),
        Command::Verify { ext, dmax } => verify(cli.format, &extension(spec, ext)?, *dmax, out, err),
        Command::Corollary { count } => corollary(cli.format, *count, out, err),
        Command::Tame { e, dmax } => tame(cli.format, spec, *e, *dmax, out, err),
        Command::Chars { ext, n, list } => chars(cli.format, &extension(spec, &ext.resolve())?, *n, *list, out, err),
    }
}

#[derive(Serialize)]
struct ReduceOutput {
    input: String,
    a_red: String,
    m: u32,
    witness: String,
}

fn reduce(format: Format, spec: FieldSpec, a: &str, out: &mut dyn Write) -> Outcome {
    let input = parse_series(a, spec).map_err(|e| flag_error("--a", e))?;
    let r = as_reduce(&input)?;
    let result =
        ReduceOutput { input: input.to_string(), a_red: r.reduced.to_string(), m: r.m, witness: r.witness.to_string() };
    match format {
        Format::Json => json(out, &result)?,
        Format::Csv => csv_serialize(out, &[result])?,
        Format::Table => fields(
            out,
            &[
                ("input", result.input),
                ("a_red", result.a_red),
                ("m", result.m.to_string()),
                ("witness", result.witness),
            ],
        )?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct ShiftRow {
    j: u32,
    i: String,
}

#[derive(Serialize)]
struct BreaksOutput {
    p: u32,
    a_red: String,
    m: u32,
    shifts: Vec<ShiftRow>,
    steps: Vec<wilddepth_core::RamificationStep>,
    breaks: Vec<i64>,
}

fn breaks(format: Format, ext: &ASExtension, out: &mut dyn Write) -> Outcome {
    let shifts: Vec<ShiftRow> =
        galois_shift_valuations(ext).into_iter().map(|s| ShiftRow { j: s.j, i: s.valuation.to_string() }).collect();
    let rd = ramification_breaks(ext)?;
    let result = BreaksOutput {
        p: ext.p(),
        a_red: ext.a_red().to_string(),
        m: ext.m(),
        shifts,
        steps: rd.steps().to_vec(),
        breaks: rd.breaks(),
    };
    match format {
        Format::Json => json(out, &result)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = result.shifts.iter().map(|s| vec![s.j.to_string(), s.i.clone()]).collect();
            csv_rows(out, &["j", "i_sigma_j"], &rows)?;
        }
        Format::Table => {
            fields(out, &[("a_red", result.a_red.clone()), ("m", result.m.to_string())])?;
            writeln!(out)?;
            let rows: Vec<Vec<String>> = result.shifts.iter().map(|s| vec![s.j.to_string(), s.i.clone()]).collect();
            table(out, &["j", "i(sigma_j) = v_L(sigma_j(pi) - pi)"], &rows)?;
            writeln!(out)?;
            let rows: Vec<Vec<String>> = result
                .steps
                .iter()
                .map(|s| vec![s.upper.map_or("inf".to_string(), |b| b.to_string()), s.order.to_string()])
                .collect();
            table(out, &["u <= ", "|G_u|"], &rows)?;
            writeln!(out, "\nramification break: {:?}", result.breaks)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct PhiOutput {
    #[serde(flatten)]
    phi: PLFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Rational>,
}

fn phi(format: Format, ext: &ASExtension, u: Option<&str>, out: &mut dyn Write) -> Outcome {
    let phi = phi_from_ramification(&ramification_breaks(ext)?)?;
    let u: Option<Rational> = u.map(str::parse).transpose().map_err(|e| flag_error("--u", e))?;
    let value = u.map(|u| phi.eval(u)).transpose()?;
    match format {
        Format::Json => json(out, &PhiOutput { phi, u, value })?,
        Format::Csv => match (u, value) {
            (Some(u), Some(v)) => csv_rows(out, &["u", "value"], &[vec![u.to_string(), v.to_string()]])?,
            _ => {
                let rows: Vec<Vec<String>> = phi
                    .breakpoints()
                    .iter()
                    .zip(phi.slopes())
                    .map(|(b, s)| vec![b.to_string(), s.to_string()])
                    .collect();
                csv_rows(out, &["breakpoint", "slope"], &rows)?;
            }
        },
        Format::Table => {
            let bps = phi.breakpoints();
            let rows: Vec<Vec<String>> = bps
                .iter()
                .zip(phi.slopes())
                .enumerate()
                .map(|(i, (b, s))| {
                    let end = bps.get(i + 1).map_or("inf".to_string(), |e| e.to_string());
                    vec![format!("[{b}, {end})"), s.to_string(), phi.eval(*b).map(rat_table).unwrap_or_default()]
                })
                .collect();
            table(out, &["interval", "slope", "phi(start)"], &rows)?;
            if let (Some(u), Some(v)) = (u, value) {
                writeln!(out, "\nphi({u}) = {v}")?;
            }
        }
    }
    Ok(true)
}

fn report_rows(reports: &[DepthReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.q.to_string(),
                r.m.to_string(),
                r.e.to_string(),
                r.d.to_string(),
                rat_table(r.parameter_depth),
                r.case.to_string(),
                rat_table(r.delta),
                r.preserved.to_string(),
            ]
        })
        .collect()
}

const REPORT_HEADER: [&str; 9] = ["p", "q", "m", "e", "d", "parameter depth", "case", "delta", "preserved"];

fn emit_reports(format: Format, reports: &[DepthReport], out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Json => json(out, &reports)?,
        Format::Csv => csv_serialize(out, reports)?,
        Format::Table => table(out, &REPORT_HEADER, &report_rows(reports))?,
    }
    Ok(())
}

fn depth_map(format: Format, ext: &ASExtension, d: u32, out: &mut dyn Write) -> Outcome {
    let depth = wilddepth_core::parameter_depth(ext, d)?;
    let report = DepthReport::new(ext.p(), ext.spec().q(), ext.m(), ext.e(), d, depth)?;
    match format {
        Format::Json => json(out, &report)?,
        Format::Csv => csv_serialize(out, &[report])?,
        Format::Table => emit_reports(format, &[report], out)?,
    }
    Ok(true)
}

/// The summary goes to stdout for tables and to stderr for machine formats.
fn summary(format: Format, out: &mut dyn Write, err: &mut dyn Write, line: &str) -> Result<(), Failure> {
    match format {
        Format::Table => writeln!(out, "\n{line}")?,
        _ => writeln!(err, "{line}")?,
    }
    Ok(())
}

fn verify(format: Format, ext: &ASExtension, dmax: u32, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let run = verify_theorem(ext, dmax)?;
    let all_strict = run.reports.iter().all(|r| !r.preserved && r.parameter_depth > Rational::integer(r.d as i64));
    match format {
        Format::Table => {
            fields(
                out,
                &[
                    ("a_red", ext.a_red().to_string()),
                    ("m", ext.m().to_string()),
                    ("depth", DEPTH_CONVENTION.to_string()),
                ],
            )?;
            writeln!(out)?;
            let mut rows = report_rows(&run.reports);
            for (row, r) in rows.iter_mut().zip(&run.reports) {
                let cert = run.certificates.iter().find(|c| c.d == r.d);
                row.push(cert.map_or("beyond cap".to_string(), |c| format!("certified (N={})", c.level)));
                row.push(if !r.preserved { "PASS" } else { "FAIL" }.to_string());
            }
            let mut header = REPORT_HEADER.to_vec();
            header.extend(["character", "status"]);
            table(out, &header, &rows)?;
        }
        _ => emit_reports(format, &run.reports, out)?,
    }
    let verdict = if all_strict { "PASS" } else { "FAIL" };
    let line = format!(
        "{verdict}: {}/{} rows with parameter depth > d; {} depths certified by explicit characters (cap d <= {})",
        run.reports.iter().filter(|r| !r.preserved).count(),
        run.reports.len(),
        run.certificates.len(),
        max_certifiable_depth(ext.spec()),
    );
    summary(format, out, err, &line)?;
    Ok(all_strict)
}

fn corollary(format: Format, count: u32, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let rows = corollary_family(count)?;
    let ok = rows.iter().all(|r| !r.report.preserved);
    let table_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.ramification_break.to_string(),
                r.report.d.to_string(),
                rat_table(r.report.parameter_depth),
                r.report.case.to_string(),
                r.report.preserved.to_string(),
            ]
        })
        .collect();
    match format {
        Format::Json => json(out, &rows)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let rep = &r.report;
                    vec![
                        r.m.to_string(),
                        r.ramification_break.to_string(),
                        rep.p.to_string(),
                        rep.q.to_string(),
                        rep.e.to_string(),
                        rep.d.to_string(),
                        rep.parameter_depth.to_string(),
                        rep.case.to_string(),
                        rep.preserved.to_string(),
                        rep.delta.to_string(),
                    ]
                })
                .collect();
            csv_rows(
                out,
                &["m", "ramification_break", "p", "q", "e", "d", "parameter_depth", "case", "preserved", "delta"],
                &rows,
            )?;
        }
        Format::Table => {
            writeln!(out, "F_2((t)), a = t^-m; rows for d = 1 (d = 1..3 verified per member)\n")?;
            table(out, &["m", "break", "d", "parameter depth", "case", "preserved"], &table_rows)?;
        }
    }
    let line = format!(
        "{}: {} pairwise distinct breaks; depth preserved in {} positive-depth rows",
        if ok { "PASS" } else { "FAIL" },
        rows.len(),
        rows.iter().filter(|r| r.report.preserved).count()
    );
    summary(format, out, err, &line)?;
    Ok(ok)
}

fn tame(format: Format, spec: FieldSpec, e: u32, dmax: u32, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if e > 0 && e % spec.p() == 0 {
        writeln!(err, "warning: e = {e} is divisible by p = {}; break data [(0, e)] is not tame", spec.p())?;
    }
    let reports = tame_control(spec.p(), e, dmax)?;
    emit_reports(format, &reports, out)?;
    let ok = reports.iter().all(|r| r.preserved);
    let line = format!(
        "{}: depth preserved in {}/{} tame rows",
        if ok { "PASS" } else { "FAIL" },
        reports.len(),
        reports.len()
    );
    summary(format, out, err, &line)?;
    Ok(ok)
}

#[derive(Serialize)]
struct CensusRow {
    depth: u32,
    count: u64,
    expected: u64,
}

#[derive(Serialize)]
struct CharsOutput {
    q: u64,
    n: u32,
    order: u64,
    invariant_factors: Vec<u64>,
    census: Vec<CensusRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    characters: Option<Vec<wilddepth_core::unit_characters::CharacterRecord>>,
}

fn chars(format: Format, ext: &ASExtension, n: u32, list: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let q = ext.spec().q();
    let g = Arc::new(unit_group(ext, n)?);
    let counts: BTreeMap<u32, u64> = depth_census(&g);
    let census: Vec<CensusRow> = (0..n)
        .map(|d| CensusRow {
            depth: d,
            count: counts.get(&d).copied().unwrap_or(0),
            expected: if d == 0 { 1 } else { q.pow(d) - q.pow(d - 1) },
        })
        .collect();
    let ok = g.order() == q.pow(n - 1) && census.iter().all(|c| c.count == c.expected);
    let result = CharsOutput {
        q,
        n,
        order: g.order(),
        invariant_factors: g.invariant_factors().to_vec(),
        census,
        characters: list.then(|| enumerate_characters(&g).iter().map(|c| c.record()).collect()),
    };
    match format {
        Format::Json => json(out, &result)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .census
                .iter()
                .map(|c| vec![c.depth.to_string(), c.count.to_string(), c.expected.to_string()])
                .collect();
            csv_rows(out, &["depth", "count", "expected"], &rows)?;
        }
        Format::Table => {
            fields(
                out,
                &[
                    ("group", format!("U^1_L / U^{n}_L, q = {q}")),
                    ("order", result.order.to_string()),
                    ("invariant factors", format!("{:?}", result.invariant_factors)),
                    ("depth", DEPTH_CONVENTION.to_string()),
                ],
            )?;
            writeln!(out)?;
            let rows: Vec<Vec<String>> = result
                .census
                .iter()
                .map(|c| vec![c.depth.to_string(), c.count.to_string(), c.expected.to_string()])
                .collect();
            table(out, &["depth", "characters", "q^d - q^(d-1)"], &rows)?;
            if let Some(chars) = &result.characters {
                writeln!(out)?;
                let rows: Vec<Vec<String>> = chars
                    .iter()
                    .map(|c| {
                        let phases: Vec<String> = c.phases.iter().map(|r| r.to_string()).collect();
                        vec![format!("[{}]", phases.join(", ")), c.depth.to_string()]
                    })
                    .collect();
                table(out, &["phases", "depth"], &rows)?;
            }
        }
    }
    let line = format!(
        "{}: |U^1/U^{n}| = {} (cap {ENUMERATION_CAP}); census matches q^d - q^(d-1)",
        if ok { "PASS" } else { "FAIL" },
        result.order
    );
    summary(format, out, err, &line)?;
    Ok(ok)
}
