//! Subcommand implementations. Each returns the record to print and whether
//! every internal check held.

use std::collections::BTreeMap;

use clap::ValueEnum;
use rayleigh_core::disk_spectrum::{disk_power_sum, disk_sum_l2_closed_form, sigma};
use rayleigh_core::eig_bounds::{bound_ratio_pair, bound_root_pair, BoundPair};
use rayleigh_core::eigen_spectrum::Spectrum;
use rayleigh_core::exact_rayleigh::{
    rayleigh_bernoulli, rayleigh_newton, rayleigh_recursion, RayleighTable, NEWTON_MAX_P,
};
use rayleigh_core::numeric::format_rational;
use rayleigh_core::spectral_oracles::{direct_sum, nystrom_trace_power, OracleReport};
use rayleigh_core::verify::{run_checks, VerifyConfig};
use rayleigh_core::{BigRational, Result};

use crate::output::{format_decimal, OutputRecord, ResultRow};

pub struct Outcome {
    pub record: OutputRecord,
    pub ok: bool,
    /// Human-readable reasons for `ok == false`.
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(record: OutputRecord) -> Self {
        Outcome { record, ok: true, failures: Vec::new() }
    }

    fn fail(&mut self, reason: String) {
        self.ok = false;
        self.failures.push(reason);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumMethod {
    #[value(alias = "theorem3")]
    Recursion,
    Bernoulli,
    Newton,
    Direct,
    Nystrom,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Root,
    Ratio,
    Both,
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn spectrum(count: usize) -> Result<Outcome> {
    let s = Spectrum::new()?;
    let mut out = Outcome::new(OutputRecord::new("spectrum", inputs(&[("count", count.to_string())])));
    for entry in s.entries(count)? {
        let f = s.eigenfunction(entry.index)?;
        let (left, right) = f.boundary_residual();
        out.record.results.push(
            ResultRow::new(format!("lambda_{}", entry.index))
                .decimal(entry.value)
                .field("family", entry.family.name())
                .field("residual_left", format_decimal(left))
                .field("residual_right", format_decimal(right)),
        );
    }
    Ok(out)
}

fn exact_table(method: SumMethod, max_p: usize) -> Result<RayleighTable> {
    match method {
        SumMethod::Bernoulli => rayleigh_bernoulli(max_p),
        SumMethod::Newton => rayleigh_newton(max_p),
        _ => rayleigh_recursion(max_p),
    }
}

fn exact_rows(table: &RayleighTable, tag: bool) -> Vec<ResultRow> {
    let name = table.method.name();
    table
        .values()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let label = if tag { format!("A_{}[{name}]", i + 1) } else { format!("A_{}", i + 1) };
            ResultRow::new(label)
                .exact(format_rational(a))
                .decimal(rayleigh_core::numeric::rational_to_f64(a))
                .field("method", name)
        })
        .collect()
}

fn oracle_row(label: String, report: &OracleReport) -> ResultRow {
    let mut row = ResultRow::new(label)
        .decimal(report.value)
        .field("method", report.method.name())
        .field("reference", format_rational(&report.reference))
        .field("abs_err", format_decimal(report.abs_err));
    if let Some(bound) = report.tail_bound {
        row = row.error_bound(bound).field("within_bound", yes_no(report.within_bound()));
    }
    if report.underflow {
        row = row.field("underflow", "true");
    }
    row
}

fn direct_rows(out: &mut Outcome, max_p: usize, terms: usize, tag: bool) -> Result<()> {
    for p in 1..=max_p {
        let label = if tag { format!("A_{p}[direct]") } else { format!("A_{p}") };
        if p == 1 {
            out.record.results.push(
                ResultRow::new(label).field("method", "direct").field("status", "skipped: conditionally summable"),
            );
            continue;
        }
        let report = direct_sum(p, terms)?;
        if !report.within_bound() {
            out.fail(format!("direct sum for A_{p} outside its certified bound"));
        }
        out.record.results.push(oracle_row(label, &report));
    }
    Ok(())
}

fn nystrom_rows(out: &mut Outcome, max_p: usize, nodes: usize, tag: bool) -> Result<()> {
    for p in 1..=max_p {
        let label = if tag { format!("A_{p}[nystrom]") } else { format!("A_{p}") };
        let report = nystrom_trace_power(nodes, p)?;
        out.record.results.push(oracle_row(label, &report));
    }
    Ok(())
}

pub fn sums(max_p: usize, method: SumMethod, terms: usize, nodes: usize) -> Result<Outcome> {
    let method_name = method.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut pairs = vec![("max_p", max_p.to_string()), ("method", method_name)];
    if matches!(method, SumMethod::Direct | SumMethod::All) {
        pairs.push(("terms", terms.to_string()));
    }
    if matches!(method, SumMethod::Nystrom | SumMethod::All) {
        pairs.push(("nodes", nodes.to_string()));
    }
    let mut out = Outcome::new(OutputRecord::new("sums", inputs(&pairs)));
    match method {
        SumMethod::Recursion | SumMethod::Bernoulli | SumMethod::Newton => {
            let table = exact_table(method, max_p)?;
            out.record.results.extend(exact_rows(&table, false));
        }
        SumMethod::Direct => direct_rows(&mut out, max_p, terms, false)?,
        SumMethod::Nystrom => nystrom_rows(&mut out, max_p, nodes, false)?,
        SumMethod::All => {
            let mut tables = vec![rayleigh_recursion(max_p)?, rayleigh_bernoulli(max_p)?];
            if max_p <= NEWTON_MAX_P {
                tables.push(rayleigh_newton(max_p)?);
            }
            for t in &tables {
                out.record.results.extend(exact_rows(t, true));
            }
            direct_rows(&mut out, max_p, terms, true)?;
            nystrom_rows(&mut out, max_p, nodes, true)?;
            let discrepancy = max_discrepancy(&tables);
            let methods: Vec<&str> = tables.iter().map(|t| t.method.name()).collect();
            if discrepancy != BigRational::from_integer(0.into()) {
                out.fail(format!("exact methods disagree by {}", format_rational(&discrepancy)));
            }
            out.record.results.push(
                ResultRow::new("max_exact_discrepancy")
                    .exact(format_rational(&discrepancy))
                    .decimal(rayleigh_core::numeric::rational_to_f64(&discrepancy))
                    .field("method", methods.join("+")),
            );
        }
    }
    Ok(out)
}

fn max_discrepancy(tables: &[RayleighTable]) -> BigRational {
    let zero = BigRational::from_integer(0.into());
    let first = &tables[0];
    let mut worst = zero.clone();
    for t in &tables[1..] {
        for (a, b) in first.values().iter().zip(t.values()) {
            let d = if a > b { a - b } else { b - a };
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn bound_row(pair: &BoundPair, lambda0: f64) -> ResultRow {
    let mut row = ResultRow::new(format!("{} m={}", pair.scheme.name(), pair.m))
        .field("scheme", pair.scheme.name())
        .field("lower", format_decimal(pair.lower))
        .field("upper", format_decimal(pair.upper))
        .field("contains_lambda0", yes_no(pair.contains(lambda0)));
    if pair.degenerate_lower {
        row = row.field("degenerate_lower", "true");
    } else {
        row = row.decimal(pair.midpoint()).error_bound(0.5 * pair.width());
    }
    row
}

pub fn bounds(m_max: usize, scheme: SchemeArg) -> Result<Outcome> {
    let scheme_name = scheme.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut out =
        Outcome::new(OutputRecord::new("bounds", inputs(&[("m_max", m_max.to_string()), ("scheme", scheme_name)])));
    let table = rayleigh_recursion(2 * m_max + 1)?;
    let lambda0 = Spectrum::new()?.lambda0();
    for m in 1..=m_max {
        let mut pairs = Vec::new();
        if matches!(scheme, SchemeArg::Root | SchemeArg::Both) {
            pairs.push(bound_root_pair(m, &table)?);
        }
        if matches!(scheme, SchemeArg::Ratio | SchemeArg::Both) {
            pairs.push(bound_ratio_pair(m, &table)?);
        }
        for pair in pairs {
            if !pair.contains(lambda0) {
                out.fail(format!("{} bound at m = {m} misses lambda_0", pair.scheme.name()));
            }
            out.record.results.push(bound_row(&pair, lambda0));
        }
    }
    out.record.results.push(ResultRow::new("lambda0").decimal(lambda0).field("source", "-4 alpha^2"));
    Ok(out)
}

pub fn disk(max_l: usize, tol: f64) -> Result<Outcome> {
    let mut out =
        Outcome::new(OutputRecord::new("disk", inputs(&[("max_l", max_l.to_string()), ("tol", format_decimal(tol))])));
    out.record.results.push(ResultRow::new("l=1").field("status", "divergent"));
    for l in 2..=max_l {
        let d = disk_power_sum(l, tol)?;
        let mut row = ResultRow::new(format!("l={l}"))
            .decimal(d.value)
            .error_bound(d.tail_bound)
            .field("nu_cutoff", d.nu_cutoff.to_string())
            .field("sigma_2l(0)", format_rational(&sigma(l, 0)?));
        if l == 2 {
            let closed = disk_sum_l2_closed_form();
            let diff = (d.value - closed).abs();
            if diff > d.tail_bound + 4.0 * f64::EPSILON {
                out.fail(format!("l = 2 sum differs from the closed form by {diff:e}"));
            }
            row = row.field("closed_form", format_decimal(closed)).field("closed_form_diff", format_decimal(diff));
        }
        out.record.results.push(row);
    }
    Ok(out)
}

pub fn verify(alpha_perturbation: f64) -> Result<Outcome> {
    let mut out = Outcome::new(OutputRecord::new(
        "verify",
        inputs(&[("alpha_perturbation", format_decimal(alpha_perturbation))]),
    ));
    for check in run_checks(&VerifyConfig { alpha_perturbation }) {
        if !check.passed {
            out.fail(format!("check {} failed: {}", check.name, check.detail));
        }
        out.record
            .results
            .push(ResultRow::new(check.name).field("passed", yes_no(check.passed)).field("detail", check.detail));
    }
    Ok(out)
}
