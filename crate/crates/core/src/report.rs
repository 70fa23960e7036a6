//! Evaluation reports for `∫ e^{ix}/(x² + a²) dx` and the corpus harness.
//!
//! JSON is the format of record; CSV flattens the same columns and the human
//! table is a lossy summary. Floats are written with 17 significant digits.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::identities::SuiteOutcome;
use crate::oracles::{
    integrate_by_residues, integrate_cos_projection, CorpusEntry, RationalIntegrand, DEFAULT_BUDGET,
};
use crate::resum::{closed_form, resum_exp_series, term_table, SeriesDiagnostics, TermRow};

/// Environment variable overriding the quadrature sample budget.
pub const BUDGET_ENV: &str = "NDIM_EVAL_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ndim,
    Residue,
    Quad,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ndim, Method::Residue, Method::Quad];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ndim => "ndim",
            Method::Residue => "residue",
            Method::Quad => "quad",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ndim" => Ok(Method::Ndim),
            "residue" => Ok(Method::Residue),
            "quad" | "quadrature" => Ok(Method::Quad),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Parses a comma-separated method list, keeping the canonical order.
pub fn parse_methods(list: &str) -> Result<Vec<Method>> {
    let mut methods = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Method::from_str)
        .collect::<Result<Vec<_>>>()?;
    methods.sort();
    methods.dedup();
    if methods.is_empty() {
        return Err(Error::Config("at least one method must be selected".into()));
    }
    Ok(methods)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" | "table" => Ok(OutputFormat::Human),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Parses `--a` lists (`1,2.5`) and ranges (`start:stop:step`, inclusive).
pub fn parse_a_values(list: Option<&str>, range: Option<&str>) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    if let Some(list) = list {
        for item in list.split(',').filter(|s| !s.trim().is_empty()) {
            let v: f64 = item
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad a value `{item}`")))?;
            values.push(v);
        }
    }
    if let Some(range) = range {
        let parts: Vec<f64> = range
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Config(format!("bad range `{range}`")))?;
        let [start, stop, step] = parts[..] else {
            return Err(Error::Config(format!(
                "range `{range}` must be start:stop:step"
            )));
        };
        if step.is_nan() || step <= 0.0 || stop < start {
            return Err(Error::Config(format!(
                "range `{range}` needs step > 0 and stop >= start"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        values.extend((0..=count).map(|i| start + i as f64 * step));
    }
    if values.is_empty() {
        return Err(Error::Config("no a values given".into()));
    }
    if let Some(bad) = values.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(Error::Config(format!(
            "a values must be positive, got {bad}"
        )));
    }
    Ok(values)
}

/// Reads [`BUDGET_ENV`], falling back to the default budget.
pub fn budget_from_env() -> Result<usize> {
    match std::env::var(BUDGET_ENV) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|b| *b > 0)
            .ok_or_else(|| {
                Error::Config(format!("{BUDGET_ENV}=`{raw}` is not a positive integer"))
            }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub quad_abs: f64,
    pub quad_rel: f64,
    pub series_stop: f64,
    pub max_terms: usize,
    /// Largest pairwise relative discrepancy accepted.
    pub comparison: f64,
    pub budget: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quad_abs: 1e-14,
            quad_rel: 1e-12,
            series_stop: 1e-16,
            max_terms: 400,
            comparison: 1e-9,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub methods: Vec<Method>,
    pub a_values: Vec<f64>,
    pub tolerances: Tolerances,
    pub format: OutputFormat,
    pub terms_table: Option<u32>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("at least one method must be selected".into()));
        }
        if self.a_values.is_empty() || self.a_values.iter().any(|a| a.is_nan() || *a <= 0.0) {
            return Err(Error::Config(
                "a values must be non-empty and positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodValue {
    pub value: f64,
    pub error_estimate: Option<f64>,
    pub evaluations: Option<usize>,
    pub timing_ms: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub first: Method,
    pub second: Method,
    pub abs: f64,
    pub rel: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub a: f64,
    pub closed_form: f64,
    pub ndim: Option<MethodValue>,
    pub series: Option<SeriesDiagnostics>,
    pub residue: Option<MethodValue>,
    pub quadrature: Option<MethodValue>,
    pub terms: Option<Vec<TermRow>>,
}

fn relative(x: f64, y: f64) -> f64 {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        0.0
    } else {
        (x - y).abs() / scale
    }
}

impl EvaluationReport {
    pub fn value(&self, method: Method) -> Option<f64> {
        match method {
            Method::Ndim => self.ndim.as_ref(),
            Method::Residue => self.residue.as_ref(),
            Method::Quad => self.quadrature.as_ref(),
        }
        .map(|m| m.value)
    }

    /// Pairwise discrepancies, recomputed from the stored values.
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        let mut out = Vec::new();
        for (i, first) in Method::ALL.iter().enumerate() {
            for second in &Method::ALL[i + 1..] {
                if let (Some(x), Some(y)) = (self.value(*first), self.value(*second)) {
                    out.push(Discrepancy {
                        first: *first,
                        second: *second,
                        abs: (x - y).abs(),
                        rel: relative(x, y),
                    });
                }
            }
        }
        out
    }

    pub fn max_relative(&self) -> f64 {
        self.discrepancies()
            .iter()
            .map(|d| d.rel)
            .fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.discrepancies().iter().all(|d| d.rel <= tol)
    }
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let out = f()?;
    Ok((out, start.elapsed().as_secs_f64() * 1e3))
}

fn method_failure(method: Method) -> impl Fn(Error) -> Error {
    move |e| Error::MethodFailure {
        method: method.name().to_string(),
        source: Box::new(e),
    }
}

/// Evaluates `∫ e^{ix}/(x² + a²) dx` by every selected method.
pub fn evaluate(a: f64, config: &RunConfig) -> Result<EvaluationReport> {
    let tol = &config.tolerances;
    let mut report = EvaluationReport {
        a,
        closed_form: closed_form(a),
        ndim: None,
        series: None,
        residue: None,
        quadrature: None,
        terms: None,
    };
    for method in &config.methods {
        match method {
            Method::Ndim => {
                let ((value, diag), ms) =
                    timed(|| resum_exp_series(a, tol.series_stop, tol.max_terms))
                        .map_err(method_failure(*method))?;
                report.ndim = Some(MethodValue {
                    value,
                    error_estimate: Some(diag.last_term_magnitude),
                    evaluations: Some(diag.terms_used),
                    timing_ms: ms,
                });
                report.series = Some(diag);
            }
            Method::Residue => {
                let (value, ms) = timed(|| {
                    let integrand = RationalIntegrand::lorentzian(a, 1.0)?;
                    integrate_by_residues(&integrand)
                })
                .map_err(method_failure(*method))?;
                report.residue = Some(MethodValue {
                    value: value.re,
                    error_estimate: None,
                    evaluations: None,
                    timing_ms: ms,
                });
            }
            Method::Quad => {
                let (res, ms) = timed(|| {
                    let integrand = RationalIntegrand::lorentzian(a, 1.0)?;
                    integrate_cos_projection(&integrand, tol.quad_abs, tol.quad_rel, tol.budget)
                })
                .map_err(method_failure(*method))?;
                report.quadrature = Some(MethodValue {
                    value: res.value,
                    error_estimate: Some(res.error_estimate),
                    evaluations: Some(res.evaluations),
                    timing_ms: ms,
                });
            }
        }
    }
    if let Some(m_max) = config.terms_table {
        report.terms = Some(term_table(a, m_max)?);
    }
    Ok(report)
}

/// One report per `a`, in input order.
pub fn evaluate_sweep(config: &RunConfig) -> Result<Vec<EvaluationReport>> {
    config.validate()?;
    config
        .a_values
        .par_iter()
        .map(|a| evaluate(*a, config))
        .collect()
}

/// 17 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(format_float(x).parse().expect("valid JSON number"))
    } else {
        Value::Null
    }
}

fn opt_num(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

fn method_json(m: &MethodValue, timing: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("value".into(), num(m.value));
    obj.insert("error_estimate".into(), opt_num(m.error_estimate));
    obj.insert(
        "evaluations".into(),
        m.evaluations.map(Value::from).unwrap_or(Value::Null),
    );
    if timing {
        obj.insert("timing_ms".into(), num(m.timing_ms));
    }
    Value::Object(obj)
}

fn series_json(d: &SeriesDiagnostics) -> Value {
    json!({
        "terms_used": d.terms_used,
        "last_term_magnitude": num(d.last_term_magnitude),
        "partial_sums": d.partial_sums.iter().map(|x| num(*x)).collect::<Vec<_>>(),
        "converged": d.converged,
        "closed_form_target": opt_num(d.closed_form_target),
    })
}

pub fn report_json(r: &EvaluationReport, timing: bool) -> Value {
    let mut methods = Map::new();
    for (method, value) in [
        (Method::Ndim, &r.ndim),
        (Method::Residue, &r.residue),
        (Method::Quad, &r.quadrature),
    ] {
        if let Some(v) = value {
            methods.insert(method.name().into(), method_json(v, timing));
        }
    }
    let discrepancies: Vec<Value> = r
        .discrepancies()
        .iter()
        .map(|d| {
            json!({
                "methods": format!("{}-{}", d.first.name(), d.second.name()),
                "abs": num(d.abs),
                "rel": num(d.rel),
            })
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("a".into(), num(r.a));
    obj.insert("closed_form".into(), num(r.closed_form));
    obj.insert("methods".into(), Value::Object(methods));
    obj.insert("discrepancies".into(), Value::Array(discrepancies));
    obj.insert("max_relative".into(), num(r.max_relative()));
    if let Some(d) = &r.series {
        obj.insert("series".into(), series_json(d));
    }
    if let Some(rows) = &r.terms {
        let rows: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "m": row.m,
                    "term_exact": row.term.to_string(),
                    "term": num(row.term_value),
                    "partial_sum": num(row.partial_sum),
                })
            })
            .collect();
        obj.insert("terms".into(), Value::Array(rows));
    }
    Value::Object(obj)
}

pub fn render_json(reports: &[EvaluationReport], timing: bool) -> String {
    let arr = Value::Array(reports.iter().map(|r| report_json(r, timing)).collect());
    serde_json::to_string_pretty(&arr).expect("serializable") + "\n"
}

const CSV_HEADER: &str = "a,closed_form,ndim,residue,quad,quad_error,quad_evals,\
ndim_residue_abs,ndim_residue_rel,ndim_quad_abs,ndim_quad_rel,residue_quad_abs,residue_quad_rel,\
series_terms,series_converged,ndim_ms,residue_ms,quad_ms";

pub fn render_csv(reports: &[EvaluationReport], timing: bool) -> String {
    let cell = |x: Option<f64>| x.map(format_float).unwrap_or_default();
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let disc = r.discrepancies();
        let pair = |a: Method, b: Method| disc.iter().find(|d| d.first == a && d.second == b);
        let mut cols = vec![
            format_float(r.a),
            format_float(r.closed_form),
            cell(r.value(Method::Ndim)),
            cell(r.value(Method::Residue)),
            cell(r.value(Method::Quad)),
            cell(r.quadrature.as_ref().and_then(|q| q.error_estimate)),
            r.quadrature
                .as_ref()
                .and_then(|q| q.evaluations)
                .map(|n| n.to_string())
                .unwrap_or_default(),
        ];
        for (a, b) in [
            (Method::Ndim, Method::Residue),
            (Method::Ndim, Method::Quad),
            (Method::Residue, Method::Quad),
        ] {
            cols.push(cell(pair(a, b).map(|d| d.abs)));
            cols.push(cell(pair(a, b).map(|d| d.rel)));
        }
        cols.push(
            r.series
                .as_ref()
                .map(|s| s.terms_used.to_string())
                .unwrap_or_default(),
        );
        cols.push(
            r.series
                .as_ref()
                .map(|s| s.converged.to_string())
                .unwrap_or_default(),
        );
        for m in [&r.ndim, &r.residue, &r.quadrature] {
            cols.push(if timing {
                cell(m.as_ref().map(|v| v.timing_ms))
            } else {
                String::new()
            });
        }
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    let tables: Vec<_> = reports
        .iter()
        .filter_map(|r| r.terms.as_ref().map(|t| (r.a, t)))
        .collect();
    if !tables.is_empty() {
        out.push_str("\na,m,term_exact,term,partial_sum\n");
        for (a, rows) in tables {
            for row in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_float(a),
                    row.m,
                    row.term,
                    format_float(row.term_value),
                    format_float(row.partial_sum)
                );
            }
        }
    }
    out
}

pub fn render_human(reports: &[EvaluationReport], tol: f64) -> String {
    let show = |x: Option<f64>| x.map(|v| format!("{v:.15}")).unwrap_or_else(|| "-".into());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8}  {:>19}  {:>19}  {:>19}  {:>19}  {:>10}  status",
        "a", "closed form", "ndim", "residue", "quad", "max rel"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:>8}  {:>19}  {:>19}  {:>19}  {:>19}  {:>10.2e}  {}",
            r.a,
            format!("{:.15}", r.closed_form),
            show(r.value(Method::Ndim)),
            show(r.value(Method::Residue)),
            show(r.value(Method::Quad)),
            r.max_relative(),
            if r.within(tol) { "ok" } else { "MISMATCH" }
        );
    }
    for r in reports {
        if let Some(rows) = &r.terms {
            let _ = writeln!(out, "\nterm ledger, a = {}", r.a);
            let _ = writeln!(
                out,
                "{:>4}  {:>28}  {:>22}  {:>22}",
                "m", "term (exact)", "term", "partial sum"
            );
            for row in rows {
                let _ = writeln!(
                    out,
                    "{:>4}  {:>28}  {:>22.15e}  {:>22.15}",
                    row.m,
                    row.term.to_string(),
                    row.term_value,
                    row.partial_sum
                );
            }
        }
    }
    out
}

pub fn render(reports: &[EvaluationReport], config: &RunConfig, timing: bool) -> String {
    match config.format {
        OutputFormat::Json => render_json(reports, timing),
        OutputFormat::Csv => render_csv(reports, timing),
        OutputFormat::Human => render_human(reports, config.tolerances.comparison),
    }
}

/// Residue versus quadrature on one corpus entry.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusOutcome {
    pub name: String,
    pub line: usize,
    pub residue_re: f64,
    pub residue_im: f64,
    pub quadrature: f64,
    pub quad_error: f64,
    pub evaluations: usize,
    pub expected: Option<f64>,
    pub passed: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorpusTolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for CorpusTolerance {
    fn default() -> Self {
        CorpusTolerance {
            abs: 1e-9,
            rel: 1e-8,
        }
    }
}

impl CorpusTolerance {
    pub fn agrees(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.abs.max(self.rel * x.abs().max(y.abs()))
    }
}

pub fn run_corpus_entry(
    entry: &CorpusEntry,
    tol: CorpusTolerance,
    quad: &Tolerances,
) -> CorpusOutcome {
    let name = entry.record.name.clone();
    let mut outcome = CorpusOutcome {
        name,
        line: entry.line,
        residue_re: f64::NAN,
        residue_im: f64::NAN,
        quadrature: f64::NAN,
        quad_error: f64::NAN,
        evaluations: 0,
        expected: entry.record.expected,
        passed: false,
        failure: None,
    };
    let residue = match integrate_by_residues(&entry.integrand) {
        Ok(v) => v,
        Err(e) => {
            outcome.failure = Some(format!("residue: {e}"));
            return outcome;
        }
    };
    outcome.residue_re = residue.re;
    outcome.residue_im = residue.im;
    let numeric =
        match integrate_cos_projection(&entry.integrand, quad.quad_abs, quad.quad_rel, quad.budget)
        {
            Ok(v) => v,
            Err(e) => {
                outcome.failure = Some(format!("quadrature: {e}"));
                return outcome;
            }
        };
    outcome.quadrature = numeric.value;
    outcome.quad_error = numeric.error_estimate;
    outcome.evaluations = numeric.evaluations;
    if !tol.agrees(residue.re, numeric.value) {
        outcome.failure = Some(format!(
            "residue {} vs quadrature {}",
            format_float(residue.re),
            format_float(numeric.value)
        ));
    } else if let Some(expected) = entry
        .record
        .expected
        .filter(|e| !tol.agrees(residue.re, *e))
    {
        outcome.failure = Some(format!(
            "residue {} vs expected {}",
            format_float(residue.re),
            format_float(expected)
        ));
    } else {
        outcome.passed = true;
    }
    outcome
}

pub fn run_corpus(
    entries: &[CorpusEntry],
    tol: CorpusTolerance,
    quad: &Tolerances,
) -> Vec<CorpusOutcome> {
    entries
        .par_iter()
        .map(|e| run_corpus_entry(e, tol, quad))
        .collect()
}

pub fn render_corpus(outcomes: &[CorpusOutcome], format: OutputFormat) -> String {
    let passed = outcomes.iter().filter(|o| o.passed).count();
    match format {
        OutputFormat::Json => {
            let entries: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "name": o.name,
                        "line": o.line,
                        "residue_re": num(o.residue_re),
                        "residue_im": num(o.residue_im),
                        "quadrature": num(o.quadrature),
                        "quad_error": num(o.quad_error),
                        "evaluations": o.evaluations,
                        "expected": opt_num(o.expected),
                        "passed": o.passed,
                        "failure": o.failure,
                    })
                })
                .collect();
            let doc = json!({
                "entries": entries,
                "summary": {"total": outcomes.len(), "passed": passed, "failed": outcomes.len() - passed},
            });
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("name,line,residue_re,residue_im,quadrature,quad_error,evaluations,expected,passed\n");
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    o.name,
                    o.line,
                    format_float(o.residue_re),
                    format_float(o.residue_im),
                    format_float(o.quadrature),
                    format_float(o.quad_error),
                    o.evaluations,
                    o.expected.map(format_float).unwrap_or_default(),
                    o.passed
                );
            }
            out
        }
        OutputFormat::Human => {
            let mut out = String::new();
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{:<4} {:<22} residue {:>22.15e}  quad {:>22.15e}{}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.residue_re,
                    o.quadrature,
                    o.failure
                        .as_ref()
                        .map(|f| format!("  ({f})"))
                        .unwrap_or_default()
                );
            }
            let _ = writeln!(out, "{passed}/{} entries passed", outcomes.len());
            out
        }
    }
}

pub fn render_identities(outcomes: &[SuiteOutcome], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(outcomes).expect("serializable") + "\n",
        OutputFormat::Csv => {
            let mut out = String::from("suite,checks,failures,passed\n");
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    o.suite,
                    o.checks,
                    o.failures,
                    o.passed()
                );
            }
            out
        }
        OutputFormat::Human => {
            let mut out = String::new();
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{:<4} {:<22} {:>6} checks, {} failures{}",
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.suite,
                    o.checks,
                    o.failures,
                    o.note
                        .as_ref()
                        .map(|n| format!("  [{n}]"))
                        .unwrap_or_default()
                );
                for ex in &o.examples {
                    let _ = writeln!(out, "       {ex}");
                }
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(methods: &str, a: &str) -> RunConfig {
        RunConfig {
            methods: parse_methods(methods).unwrap(),
            a_values: parse_a_values(Some(a), None).unwrap(),
            tolerances: Tolerances::default(),
            format: OutputFormat::Json,
            terms_table: None,
        }
    }

    #[test]
    fn parse_lists_and_ranges() {
        assert_eq!(parse_a_values(Some("2,5"), None).unwrap(), vec![2.0, 5.0]);
        assert_eq!(
            parse_a_values(None, Some("0.5:2:0.5")).unwrap(),
            vec![0.5, 1.0, 1.5, 2.0]
        );
        assert!(parse_a_values(Some("-1"), None).is_err());
        assert!(parse_a_values(Some("x"), None).is_err());
        assert!(parse_a_values(None, Some("1:2")).is_err());
        assert!(parse_a_values(None, None).is_err());
        assert_eq!(
            parse_methods("quad,ndim,ndim").unwrap(),
            vec![Method::Ndim, Method::Quad]
        );
        assert!(parse_methods("").is_err());
        assert!(parse_methods("ndim,bogus").is_err());
    }

    #[test]
    fn three_methods_agree() {
        let cfg = config("ndim,residue,quad", "1");
        let reports = evaluate_sweep(&cfg).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert_eq!(r.discrepancies().len(), 3);
        assert!(r.within(1e-9), "{}", r.max_relative());
    }

    #[test]
    fn discrepancies_track_values() {
        let mut r = evaluate(1.0, &config("ndim,residue", "1")).unwrap();
        r.residue.as_mut().unwrap().value *= 1.0 + 1e-6;
        assert!(!r.within(1e-9));
        assert!((r.max_relative() - 1e-6).abs() < 1e-9);
    }

    #[test]
    fn json_uses_seventeen_digits() {
        let r = evaluate(1.0, &config("residue", "1")).unwrap();
        let text = render_json(&[r], false);
        assert!(text.contains("1.1557273497909217e+0"), "{text}");
        assert!(!text.contains("timing_ms"));
    }

    #[test]
    fn csv_rows_follow_input_order() {
        let mut cfg = config("ndim,quad", "5,2");
        cfg.format = OutputFormat::Csv;
        let reports = evaluate_sweep(&cfg).unwrap();
        let text = render_csv(&reports, false);
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("5.0000000000000000e0,"));
        assert!(lines[2].starts_with("2.0000000000000000e0,"));
    }

    #[test]
    fn corpus_tolerance() {
        let t = CorpusTolerance::default();
        assert!(t.agrees(1.0, 1.0 + 5e-9));
        assert!(!t.agrees(1.0, 1.0 + 5e-8));
        assert!(t.agrees(0.0, 5e-10));
    }
}
