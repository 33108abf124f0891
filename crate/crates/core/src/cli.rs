//! The `classtower` command line: argument parsing and rendering. Every
//! number it prints comes from the library; this module only formats.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::arith::{decimal, fmt_rat, fmt_rat_wire, parse_rat, prime_power, Interval};
use crate::bounds::{best_table, BoundReport, BoundTable, HypStatus, TableOptions};
use crate::certify::{builtin_certificate, search, verify, SearchConfig, TowerCertificate, VerificationReport};
use crate::covers::{As2Cover, CoverModel, KummerCover};
use crate::error::{Error, Result};
use crate::ffield::{parse_poly, FieldSpec};
use crate::places::{b_r_exact_rational_ff, b_r_from_counts, b_r_interval, h_ratio, l_polynomial, point_counts, Budget, DEFAULT_BUDGET};

/// Environment variable read for the default `--budget`.
pub const BUDGET_ENV: &str = "CLASSTOWER_BUDGET";
/// Largest genus for which `curve` attempts an L-polynomial.
pub const GENUS_CAP: usize = 6;
const SEARCH_BUDGET: u64 = 200_000;

#[derive(Debug, Parser)]
#[command(name = "classtower", version, about = "Exact bounds on A(q) and class field tower certificates")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on enumeration work (point-count evaluations, search candidates).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable bound on A(q^r), best lower bound marked.
    Bounds(BoundsArgs),
    /// Places of degree r: exact count and the certified interval.
    Count(CountArgs),
    /// Genus, ramification, point counts and L-polynomial of a cover.
    Curve(CurveArgs),
    /// Verify a built-in certificate (p = 7, 11, 13, 17).
    Certify {
        #[arg(long)]
        p: u64,
        /// Print the certificate itself instead of the report.
        #[arg(long)]
        emit: bool,
    },
    /// Verify a certificate JSON file.
    Verify { file: String },
    /// Search for quadratic-cover certificates over F_p.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u64,
    #[arg(long)]
    pub s: Option<u64>,
    /// θ in (0, 1/2) for the compositum bounds, as a/b.
    #[arg(long)]
    pub theta: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    /// y² = u(x).
    #[arg(long)]
    pub kummer: Option<String>,
    /// y² + y = f(x): numerator of f.
    #[arg(long = "as2")]
    pub as2: Option<String>,
    /// Denominator of f for --as2.
    #[arg(long, default_value = "1")]
    pub den: String,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub r: u32,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub q: u64,
    #[command(flatten)]
    pub cover: CoverArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub two_level: bool,
    #[arg(long)]
    pub max_linear: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub max_quad: usize,
    #[arg(long, default_value_t = 5)]
    pub max_results: usize,
}

/// Exit status: 0 pass, 1 fail or inconclusive, 2 input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    InputError = 2,
}

/// Runs the CLI on `argv` (including the program name), writing to `out`.
/// Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = writeln!(err, "error: a subcommand is required (see --help)");
                    Status::InputError as i32
                }
                _ => {
                    let first = e.to_string().lines().next().unwrap_or("usage error").to_string();
                    let _ = writeln!(err, "{first}");
                    Status::InputError as i32
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(s) => s as i32,
        // the reader went away (e.g. `| head`): nothing left to report to
        Err(Error::Output(m)) if m == "broken pipe" => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::InputError as i32
        }
    }
}

fn env_budget() -> Option<u64> {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok())
}

fn budget_or(cli: &Cli, default: u64) -> u64 {
    cli.budget.or_else(env_budget).unwrap_or(default)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Error::Output("broken pipe".into())
    } else {
        Error::Output(e.to_string())
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(cli, a, out),
        Command::Count(a) => cmd_count(cli, a, out),
        Command::Curve(a) => cmd_curve(cli, a, out),
        Command::Certify { p, emit } => {
            let cert = builtin_certificate(*p)?;
            if *emit {
                writeln!(out, "{}", cert.to_json()).map_err(io)?;
                return Ok(Status::Pass);
            }
            report_verification(cli, &verify(&cert), out)
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{file}: {e}")))?;
            let cert = TowerCertificate::from_json(&text)?;
            report_verification(cli, &verify(&cert), out)
        }
        Command::Search(a) => cmd_search(cli, a, out),
    }
}

fn field_for(q: u64) -> Result<FieldSpec> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("q = {q} is not a prime power")))?;
    FieldSpec::new(p, k)
}

fn cover_from(field: &FieldSpec, c: &CoverArgs) -> Result<CoverModel> {
    match (&c.kummer, &c.as2) {
        (Some(_), Some(_)) => Err(Error::InvalidArgument("give at most one of --kummer, --as2".into())),
        (Some(u), None) => Ok(CoverModel::Kummer(KummerCover::parse(field, u)?)),
        (None, Some(f)) => {
            let num = parse_poly(field, f)?;
            let den = parse_poly(field, &c.den)?;
            Ok(CoverModel::As2(As2Cover::new(num, den)?))
        }
        (None, None) => Ok(CoverModel::Rational(field.clone())),
    }
}

fn status_word(s: HypStatus) -> &'static str {
    match s {
        HypStatus::Verified => "verified",
        HypStatus::Assumed => "assumed",
        HypStatus::Violated => "VIOLATED",
    }
}

fn value_text(b: &BoundReport) -> String {
    match &b.exact {
        Some(v) => format!("{} ≈ {}", fmt_rat(v), b.decimal),
        None => format!("in [{}, {}]", decimal(&b.value.lo, 6), decimal(&b.value.hi, 6)),
    }
}

fn cmd_bounds(cli: &Cli, a: &BoundsArgs, out: &mut dyn Write) -> Result<Status> {
    let theta = match &a.theta {
        Some(t) => Some(parse_rat(t).ok_or_else(|| Error::Parse(format!("θ = {t:?} is not a rational a/b")))?),
        None => None,
    };
    let table = best_table(a.q, a.r, &TableOptions { s: a.s, theta })?;
    if cli.json {
        emit_json(out, &table)?;
        return Ok(Status::Pass);
    }
    render_table(&table, out).map_err(io)?;
    Ok(Status::Pass)
}

fn render_table(t: &BoundTable, out: &mut dyn Write) -> std::io::Result<()> {
    let tgt = &t.upper.target;
    writeln!(out, "Bounds for {tgt}")?;
    let width = t.lower.iter().map(|b| b.name.len()).max().unwrap_or(4).max(16);
    for (i, b) in t.lower.iter().enumerate() {
        let mark = if Some(i) == t.best { "*" } else { " " };
        let hyps: Vec<String> = b.hypotheses.iter().map(|h| format!("{} [{}]", h.description, status_word(h.status))).collect();
        writeln!(out, "{mark} lower {:<width$} {:<28} {}", b.name, value_text(b), b.source)?;
        if !hyps.is_empty() {
            writeln!(out, "        {}", hyps.join("; "))?;
        }
        for n in &b.notes {
            writeln!(out, "        note: {n}")?;
        }
    }
    writeln!(out, "  upper {:<width$} {:<28} {}", t.upper.name, value_text(&t.upper), t.upper.source)?;
    if let Some(e) = &t.exact {
        writeln!(out, "{tgt} = {} (exact, square q)", fmt_rat(e))?;
    }
    if let Some(b) = t.best_report() {
        writeln!(out, "best lower bound: {} ({})", value_text(b), b.name)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CountOut {
    q: u64,
    r: u32,
    cover: String,
    genus: usize,
    status: &'static str,
    b_r: Option<String>,
    interval: Interval,
    interval_decimal: [String; 2],
    contained: Option<bool>,
    detail: Option<String>,
}

fn cmd_count(cli: &Cli, a: &CountArgs, out: &mut dyn Write) -> Result<Status> {
    if a.r == 0 {
        return Err(Error::InvalidArgument("r ≥ 1 required".into()));
    }
    let field = field_for(a.q)?;
    let cover = cover_from(&field, &a.cover)?;
    let genus = cover.genus();
    let interval = b_r_interval(a.q, a.r, genus as u64)?;
    let budget = Budget::new(budget_or(cli, DEFAULT_BUDGET));
    let exact: Result<u64> = match &cover {
        CoverModel::Rational(f) => b_r_exact_rational_ff(f, a.r)
            .and_then(|b| u64::try_from(b).map_err(|_| Error::InvalidArgument("B_r exceeds 64 bits".into()))),
        c => point_counts(c, a.r, budget).and_then(|n| b_r_from_counts(&n, a.r)),
    };
    let (status, b_r, detail) = match exact {
        Ok(b) => ("exact", Some(b), None),
        Err(e @ Error::BudgetExceeded { .. }) => ("inconclusive", None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let contained = b_r.map(|b| interval.contains(&BigRational::from_integer(b.into())));
    let o = CountOut {
        q: a.q,
        r: a.r,
        cover: cover.to_string(),
        genus,
        status,
        b_r: b_r.map(|b| b.to_string()),
        interval_decimal: [decimal(&interval.lo, 6), decimal(&interval.hi, 6)],
        interval: interval.clone(),
        contained,
        detail,
    };
    if cli.json {
        emit_json(out, &o)?;
    } else {
        let w = |out: &mut dyn Write| -> std::io::Result<()> {
            writeln!(out, "{} (genus {}), places of degree {}", o.cover, genus, a.r)?;
            match &o.b_r {
                Some(b) => writeln!(out, "B_{} exact     {b}", a.r)?,
                None => writeln!(out, "B_{} exact     inconclusive: {}", a.r, o.detail.as_deref().unwrap_or(""))?,
            }
            writeln!(
                out,
                "interval      [{}, {}]  ≈ [{}, {}]",
                fmt_rat(&interval.lo),
                fmt_rat(&interval.hi),
                o.interval_decimal[0],
                o.interval_decimal[1]
            )?;
            if let Some(c) = contained {
                writeln!(out, "contained     {c}")?;
            }
            Ok(())
        };
        w(out).map_err(io)?;
    }
    Ok(match (status, contained) {
        ("exact", Some(true)) => Status::Pass,
        _ => Status::Fail,
    })
}

#[derive(Serialize)]
struct CurveOut {
    q: u64,
    cover: String,
    genus: usize,
    ramified: Vec<String>,
    /// Ramified places not resolved within the work cap, as (degree, count).
    unresolved: Vec<(usize, usize)>,
    counts: Vec<u64>,
    b_r: Vec<u64>,
    l_polynomial: Option<Vec<String>>,
    class_number: Option<String>,
    h_ratio_3: Option<String>,
    status: String,
}

fn cmd_curve(cli: &Cli, a: &CurveArgs, out: &mut dyn Write) -> Result<Status> {
    let field = field_for(a.q)?;
    let cover = cover_from(&field, &a.cover)?;
    let budget = Budget::new(budget_or(cli, DEFAULT_BUDGET));
    let genus = cover.genus();
    let (ramified, unresolved) = match &cover {
        CoverModel::Kummer(k) => {
            let (p, u) = k.ramified_places(budget.evaluations);
            (p.iter().map(|p| p.to_string()).collect(), u)
        }
        CoverModel::As2(c) => {
            let mut v: Vec<String> = c.denominator().monic().irreducible_factors(budget.evaluations).iter().map(|f| f.0.to_string()).collect();
            if c.pole_order_at_infinity() > 0 {
                v.push("inf".into());
            }
            (v, vec![])
        }
        _ => (vec![], vec![]),
    };
    let mut m = 4u32;
    while m > 0 && budget.check_counts(a.q, m).is_err() {
        m -= 1;
    }
    let counts = if m > 0 { point_counts(&cover, m, budget)? } else { vec![] };
    let b_r: Vec<u64> = (1..=m).map(|r| b_r_from_counts(&counts, r)).collect::<Result<_>>()?;
    let mut status = if m < 4 { format!("counts inconclusive beyond degree {m} (budget)") } else { "ok".into() };
    let (mut lpoly, mut h, mut h3) = (None, None, None);
    if genus > GENUS_CAP {
        status = format!("L-polynomial inconclusive: genus {genus} > cap {GENUS_CAP}");
    } else {
        match l_polynomial(&cover, genus, budget) {
            Ok(l) => {
                h = Some(l.class_number().to_string());
                h3 = h_ratio(&l, 3).ok().map(|x| x.to_string());
                lpoly = Some(l.coeffs.iter().map(|c| c.to_string()).collect());
            }
            Err(e @ Error::BudgetExceeded { .. }) => status = format!("L-polynomial inconclusive: {e}"),
            Err(e) => return Err(e),
        }
    }
    let o = CurveOut {
        q: a.q,
        cover: cover.to_string(),
        genus,
        ramified,
        unresolved,
        counts,
        b_r,
        l_polynomial: lpoly,
        class_number: h,
        h_ratio_3: h3,
        status,
    };
    if cli.json {
        emit_json(out, &o)?;
    } else {
        let w = |out: &mut dyn Write| -> std::io::Result<()> {
            writeln!(out, "{}", o.cover)?;
            writeln!(out, "genus         {}", o.genus)?;
            writeln!(out, "ramified      {}", o.ramified.join(", "))?;
            for (d, n) in &o.unresolved {
                writeln!(out, "              + {n} unresolved place(s) of degree {d}")?;
            }
            for (i, n) in o.counts.iter().enumerate() {
                writeln!(out, "N_{}           {n}", i + 1)?;
            }
            for (i, b) in o.b_r.iter().enumerate() {
                writeln!(out, "B_{}           {b}", i + 1)?;
            }
            if let Some(l) = &o.l_polynomial {
                writeln!(out, "L(u) coeffs   [{}]", l.join(", "))?;
            }
            if let Some(h) = &o.class_number {
                writeln!(out, "class number  {h}")?;
            }
            if let Some(h) = &o.h_ratio_3 {
                writeln!(out, "h(F_3)/h(F)   {h}")?;
            }
            writeln!(out, "status        {}", o.status)
        };
        w(out).map_err(io)?;
    }
    Ok(if o.status == "ok" { Status::Pass } else { Status::Fail })
}

fn report_verification(cli: &Cli, rep: &VerificationReport, out: &mut dyn Write) -> Result<Status> {
    if cli.json {
        writeln!(out, "{}", rep.to_json()).map_err(io)?;
    } else {
        render_report(rep, out).map_err(io)?;
    }
    Ok(if rep.passed() { Status::Pass } else { Status::Fail })
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), |v| v.to_string())
}

fn render_report(rep: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "Certificate over F_{} ({})", rep.q, rep.shape.map_or("unknown shape".into(), |s| format!("{s:?}")))?;
    if !rep.factors.is_empty() {
        let irr = rep.factors.iter().filter(|f| f.irreducible).count();
        writeln!(out, "factors: {irr}/{} irreducible", rep.factors.len())?;
    }
    if !rep.ramified_table.is_empty() {
        writeln!(out, "ramified places of the top cover:")?;
        for r in &rep.ramified_table {
            let base = r.in_base.map_or(String::new(), |b| format!("  in F: {b:?}"));
            let w = r.witness.as_ref().map_or(String::new(), |w| format!("  Q ≡ ({w})²"));
            writeln!(out, "  {:<16}{base}{w}", r.place)?;
        }
    }
    if !rep.t_table.is_empty() {
        writeln!(out, "T{}:", if rep.t_derived { " (derived)" } else { "" })?;
        for r in &rep.t_table {
            let base = r.in_base.map_or(String::new(), |b| format!("  in F: {b:?}"));
            let ch = r.characters.as_ref().map_or(String::new(), |c| format!("  chars {c}"));
            writeln!(out, "  {:<16}{base}  top: {:?}{ch}  places above: {}", r.place, r.in_top, opt(&r.t_gain))?;
        }
    }
    writeln!(out, "steps:")?;
    for s in &rep.steps {
        writeln!(out, "  [{}] {:<14} {}", if s.passed { "ok" } else { "FAIL" }, s.step, s.detail)?;
    }
    writeln!(
        out,
        "g(F) = {}  g = {}  |T| = {}  |S| = {}  d2 O_S* = {}  rank ≥ {}  GS: {}",
        opt(&rep.genus_base),
        opt(&rep.genus),
        opt(&rep.t_size),
        opt(&rep.s_size),
        opt(&rep.unit_rank),
        opt(&rep.rank_lb),
        opt(&rep.gs)
    )?;
    for n in &rep.notes {
        writeln!(out, "note: {n}")?;
    }
    for d in &rep.discrepancies {
        writeln!(out, "discrepancy: {d}")?;
    }
    let b = rep.bound.as_ref().map_or("-".into(), fmt_rat);
    writeln!(out, "bound A(q) ≥ {b}")?;
    writeln!(out, "verdict: {}", if rep.passed() { "PASS" } else { "FAIL" })
}

fn cmd_search(cli: &Cli, a: &SearchArgs, out: &mut dyn Write) -> Result<Status> {
    let cfg = SearchConfig {
        max_linear: a.max_linear.unwrap_or(usize::MAX),
        max_quad: a.max_quad,
        budget: budget_or(cli, SEARCH_BUDGET),
        seed: a.seed,
        two_level: a.two_level,
        max_results: a.max_results,
    };
    let hits = search(a.p, &cfg)?;
    if cli.json {
        let v: Vec<_> = hits
            .iter()
            .map(|h| json!({ "certificate": h.certificate, "bound": fmt_rat_wire(h.report.bound.as_ref().unwrap()), "verdict": h.report.verdict }))
            .collect();
        emit_json(out, &v)?;
    } else {
        let w = |out: &mut dyn Write| -> std::io::Result<()> {
            writeln!(out, "{} verified certificate(s) over F_{}", hits.len(), a.p)?;
            for (i, h) in hits.iter().enumerate() {
                let c = &h.certificate;
                let u = match &c.second_cover {
                    crate::certify::SecondCoverSpec::Kummer { u } => u.clone(),
                    crate::certify::SecondCoverSpec::Factors { factors } => factors.join("*"),
                };
                writeln!(out, "#{} bound {}  g = {}  |S| = {}", i + 1, fmt_rat(&c.claimed.bound), c.claimed.genus, c.claimed.s_size)?;
                if let Some(b) = &c.base_cover {
                    writeln!(out, "   F: y^2 = {}", b.u)?;
                }
                writeln!(out, "   y^2 = {u}")?;
                writeln!(out, "   T = {{{}}}", c.t.join(", "))?;
            }
            Ok(())
        };
        w(out).map_err(io)?;
    }
    Ok(if hits.is_empty() { Status::Fail } else { Status::Pass })
}
