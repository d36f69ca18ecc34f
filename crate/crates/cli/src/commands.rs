use std::io::Write;
use std::time::Instant;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::Serialize;

use moebius_core::algebra::format_rational;
use moebius_core::arith::{build_sieve, named, SieveTable};
use moebius_core::asymptotics::{alpha_table, rh_diagnostic, trend_scan, TrendKind, TrendRow};
use moebius_core::identities::{
    combinatoric_rhs, ordered_lhs, th15_lhs, th15_rhs, th1_lhs, th1_rhs, th2_lhs, th2_rhs,
    verify_identity, IdentityId, IdentityReport, Params,
};
use moebius_core::Int;

use crate::args::{Format, IdentityArgs};
use crate::output::{write_csv, write_json_lines, Out};
use crate::Mismatch;

pub struct Ctx {
    pub format: Format,
    pub sieve_limit: Option<u64>,
}

impl Ctx {
    fn sieve(&self, needed: u64) -> anyhow::Result<SieveTable> {
        let limit = self.sieve_limit.unwrap_or(needed).max(1);
        Ok(build_sieve(limit)?)
    }
}

/// Rough tuple count `x (ln x + 1)^{r−1}` visited by a pruned enumeration.
const LHS_GUARD: f64 = 5e9;

fn parse_identity(args: &IdentityArgs) -> anyhow::Result<IdentityId> {
    let name = match (args.identity.as_str(), args.line) {
        ("cor9", Some(line)) => format!("cor9.{line}"),
        ("cor9", None) => bail!("cor9 needs --line"),
        (other, _) => other.to_string(),
    };
    Ok(name.parse()?)
}

fn params(args: &IdentityArgs) -> Params {
    let mut p = Params::new();
    if let Some(v) = args.r {
        p.set("r", v);
    }
    if let Some(v) = args.x {
        p.set("x", v);
    }
    if let Some(v) = args.n {
        p.set("n", v);
    }
    if let Some(v) = &args.k {
        p.set("k", v);
    }
    if let Some(v) = args.e {
        p.set("e", v);
    }
    if let Some(v) = &args.f {
        p.set("f", v);
    }
    if let Some(v) = args.q {
        p.set("q", v);
    }
    p
}

#[derive(Serialize)]
struct ReportRow<'a> {
    identity: &'a str,
    r: String,
    x: String,
    lhs: String,
    rhs: String,
    equal: bool,
    lhs_ms: f64,
    rhs_ms: f64,
}

fn report_row<'a>(rep: &'a IdentityReport, var: &str) -> ReportRow<'a> {
    ReportRow {
        identity: &rep.identity_id,
        r: rep.params.get("r").cloned().unwrap_or_default(),
        x: rep.params.get(var).cloned().unwrap_or_default(),
        lhs: rep.lhs.to_string(),
        rhs: rep.rhs.to_string(),
        equal: rep.equal,
        lhs_ms: rep.lhs_ms,
        rhs_ms: rep.rhs_ms,
    }
}

fn write_reports(
    ctx: &Ctx,
    reports: &[IdentityReport],
    var: &str,
    out: &mut Out,
) -> anyhow::Result<()> {
    match ctx.format {
        Format::Json => write_json_lines(out, reports),
        Format::Csv => {
            let rows: Vec<ReportRow> = reports.iter().map(|r| report_row(r, var)).collect();
            write_csv(out, &rows)
        }
        Format::Human => {
            for rep in reports {
                let params: Vec<String> =
                    rep.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "{}  {}", rep.identity_id, params.join(" "))?;
                writeln!(out, "  lhs   = {}", rep.lhs)?;
                writeln!(out, "  rhs   = {}", rep.rhs)?;
                writeln!(
                    out,
                    "  equal = {}  (lhs {:.3} ms, rhs {:.3} ms)",
                    rep.equal, rep.lhs_ms, rep.rhs_ms
                )?;
            }
            Ok(())
        }
    }
}

pub fn verify(ctx: &Ctx, args: &IdentityArgs, out: &mut Out) -> anyhow::Result<()> {
    let id = parse_identity(args)?;
    let p = params(args);
    let sieve = ctx.sieve(id.required_sieve_limit(&p)?)?;
    let rep = verify_identity(id, &p, &sieve)?;
    write_reports(ctx, std::slice::from_ref(&rep), id.scan_variable(), out)?;
    if !rep.equal {
        out.flush()?;
        return Err(Mismatch(format!("{id}: lhs = {}, rhs = {}", rep.lhs, rep.rhs)).into());
    }
    Ok(())
}

pub fn scan(
    ctx: &Ctx,
    args: &IdentityArgs,
    x_min: u64,
    x_max: Option<u64>,
    step: u64,
    out: &mut Out,
) -> anyhow::Result<()> {
    let id = parse_identity(args)?;
    let x_max = x_max.context("scan needs --x-max")?;
    if step == 0 {
        bail!("--step must be at least 1");
    }
    if x_min == 0 || x_min > x_max {
        bail!("empty range {x_min}..={x_max}");
    }
    let var = id.scan_variable();
    let base = params(args);
    let top = base.clone().with(var, x_max);
    let sieve = ctx.sieve(id.required_sieve_limit(&top)?)?;

    let points: Vec<u64> = (x_min..=x_max).step_by(step as usize).collect();
    let reports: Vec<IdentityReport> = points
        .par_iter()
        .map(|&v| verify_identity(id, &base.clone().with(var, v), &sieve))
        .collect::<Result<_, _>>()?;
    write_reports(ctx, &reports, var, out)?;

    if let Some(bad) = reports.iter().find(|r| !r.equal) {
        out.flush()?;
        let at = bad.params.get(var).cloned().unwrap_or_default();
        return Err(Mismatch(format!(
            "{id}: first mismatch at {var} = {at}: lhs = {}, rhs = {}",
            bad.lhs, bad.rhs
        ))
        .into());
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchRow {
    identity: String,
    r: u32,
    x: u64,
    lhs_ms: Option<f64>,
    rhs_ms: f64,
    speedup: Option<f64>,
}

fn timed<T>(f: impl FnOnce() -> moebius_core::Result<T>) -> anyhow::Result<(T, f64)> {
    let t = Instant::now();
    let v = f()?;
    Ok((v, t.elapsed().as_secs_f64() * 1e3))
}

pub fn bench(ctx: &Ctx, args: &IdentityArgs, rhs_only: bool, out: &mut Out) -> anyhow::Result<()> {
    let id = parse_identity(args)?;
    let r = args.r.context("bench needs --r")?;
    let x = args.x.context("bench needs --x")?;
    if !matches!(
        id,
        IdentityId::Th1 | IdentityId::Th15 | IdentityId::Th2 | IdentityId::Cor3
    ) {
        bail!("bench supports th1, th15, th2 and cor3");
    }
    if !rhs_only {
        let work = x as f64 * ((x as f64).ln() + 1.0).powi(r.saturating_sub(1) as i32);
        if work > LHS_GUARD {
            bail!("enumeration side too large for r = {r}, x = {x}; use --rhs-only");
        }
    }
    let sieve = ctx.sieve(x)?;
    let table = match id {
        IdentityId::Th2 => {
            let k = args.k.as_deref().map(str::parse::<u32>).transpose()?;
            let f = named::by_name(args.f.as_deref().unwrap_or("mu"), k)?;
            f.integer_table(x, &sieve)?
        }
        _ => Vec::new(),
    };

    let (rhs, rhs_ms): (Int, f64) = match id {
        IdentityId::Th1 => timed(|| th1_rhs(r, x, &sieve))?,
        IdentityId::Th15 => timed(|| th15_rhs(r, x, &sieve))?,
        IdentityId::Th2 => timed(|| th2_rhs(r, x, &table))?,
        _ => timed(|| combinatoric_rhs(r, x, &sieve))?,
    };
    let lhs_ms = if rhs_only {
        None
    } else {
        let (lhs, ms): (Int, f64) = match id {
            IdentityId::Th1 => timed(|| th1_lhs(r, x, &sieve))?,
            IdentityId::Th15 => timed(|| th15_lhs(r, x, &sieve))?,
            IdentityId::Th2 => timed(|| th2_lhs(r, x, &table))?,
            _ => timed(|| ordered_lhs(r, x, &sieve))?,
        };
        if lhs != rhs {
            return Err(Mismatch(format!("{id} r={r} x={x}: lhs = {lhs}, rhs = {rhs}")).into());
        }
        Some(ms)
    };
    let row = BenchRow {
        identity: id.to_string(),
        r,
        x,
        lhs_ms,
        rhs_ms,
        speedup: lhs_ms.map(|l| l / rhs_ms.max(1e-6)),
    };
    match ctx.format {
        Format::Json => write_json_lines(out, std::slice::from_ref(&row))?,
        Format::Csv => write_csv(out, std::slice::from_ref(&row))?,
        Format::Human => {
            writeln!(out, "{} r={r} x={x}  value = {rhs}", row.identity)?;
            match (row.lhs_ms, row.speedup) {
                (Some(l), Some(s)) => {
                    writeln!(out, "  lhs {l:.3} ms, rhs {rhs_ms:.3} ms, speedup {s:.1}x")?
                }
                _ => writeln!(out, "  rhs {rhs_ms:.3} ms (lhs skipped)")?,
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct AsymRow<'a> {
    identity: String,
    r: u32,
    #[serde(flatten)]
    row: &'a TrendRow,
    alpha: String,
}

#[derive(Serialize)]
struct AsymCsvRow {
    identity: String,
    r: u32,
    x: u64,
    exact: String,
    main_term: f64,
    residual: f64,
    normalized_residual: f64,
    alpha: String,
}

pub fn asym(ctx: &Ctx, identity: &str, r: u32, grid: &[u64], out: &mut Out) -> anyhow::Result<()> {
    let kind: TrendKind = identity.parse()?;
    let needed = grid.iter().copied().max().context("empty --grid")?;
    let sieve = ctx.sieve(needed)?;
    let rows = trend_scan(kind, r, grid, &sieve)?;
    let alpha = match kind {
        TrendKind::Th2Main if r >= 3 => alpha_table(r)?.map(|a| a.to_string()).unwrap_or_default(),
        _ => String::new(),
    };
    match ctx.format {
        Format::Json => {
            let json: Vec<AsymRow> = rows
                .iter()
                .map(|row| AsymRow {
                    identity: kind.to_string(),
                    r,
                    row,
                    alpha: alpha.clone(),
                })
                .collect();
            write_json_lines(out, &json)?;
        }
        Format::Csv => {
            let csv: Vec<AsymCsvRow> = rows
                .iter()
                .map(|row| AsymCsvRow {
                    identity: kind.to_string(),
                    r,
                    x: row.x,
                    exact: row.exact.to_string(),
                    main_term: row.main_term,
                    residual: row.residual,
                    normalized_residual: row.normalized_residual,
                    alpha: alpha.clone(),
                })
                .collect();
            write_csv(out, &csv)?;
        }
        Format::Human => {
            writeln!(out, "{kind} r={r}")?;
            if !alpha.is_empty() {
                writeln!(out, "  error exponent alpha_r = {alpha}")?;
            }
            writeln!(
                out,
                "{:>12} {:>16} {:>18} {:>14} {:>12}",
                "x", "exact", "main term", "residual", "residual/x"
            )?;
            for row in &rows {
                writeln!(
                    out,
                    "{:>12} {:>16} {:>18.3} {:>14.3} {:>12.6}",
                    row.x, row.exact, row.main_term, row.residual, row.normalized_residual
                )?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct RhRow {
    k: u32,
    x: u64,
    scaled: f64,
}

pub fn rh_scan(ctx: &Ctx, k: u32, grid: &[u64], out: &mut Out) -> anyhow::Result<()> {
    let needed = grid.iter().copied().max().context("empty --grid")?;
    let sieve = ctx.sieve(needed)?;
    let rows: Vec<RhRow> = rh_diagnostic(k, grid, &sieve)?
        .into_iter()
        .map(|(x, scaled)| RhRow { k, x, scaled })
        .collect();
    match ctx.format {
        Format::Json => write_json_lines(out, &rows)?,
        Format::Csv => write_csv(out, &rows)?,
        Format::Human => {
            for row in &rows {
                writeln!(out, "x = {:>12}  sum/sqrt(x) = {:.6}", row.x, row.scaled)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    n: u64,
    value: String,
}

pub fn table(
    ctx: &Ctx,
    function: &str,
    k: Option<u32>,
    x: u64,
    out: &mut Out,
) -> anyhow::Result<()> {
    if x == 0 {
        bail!("--x must be at least 1");
    }
    let f = named::by_name(function, k)?;
    let sieve = ctx.sieve(x)?;
    let values = f.tabulate(x, &sieve)?;
    let rows: Vec<TableRow> = (1..=x)
        .map(|n| TableRow {
            n,
            value: format_rational(&values[n as usize]),
        })
        .collect();
    match ctx.format {
        Format::Json => write_json_lines(out, &rows)?,
        Format::Csv => write_csv(out, &rows)?,
        Format::Human => {
            for row in &rows {
                writeln!(out, "{:>8}  {}", row.n, row.value)?;
            }
        }
    }
    Ok(())
}
