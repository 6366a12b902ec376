//! Job parsing, dispatch, and report serialization for the `baumbott`
//! binary.
//!
//! Jobs arrive as JSON (stdin or file), are validated into a [`JobSpec`]
//! before any computation starts (unknown keys rejected), and produce a
//! [`Report`]. Exact values serialize as rational strings (`"16/3"`),
//! never as floats; floating approximations ride alongside. Every
//! domain error surfaces as a structured `{code, message}` object with
//! a stable code.

use baumbott::charclass::{ScalarMatrix, ScalarValue, SymmetricPolynomial};
use baumbott::error::Error;
use baumbott::foliation::{
    bb_residue_with, global_sum_check, FoliationP2, SingularPoint, VectorField,
};
use baumbott::localalg::{milnor_number, MonomialOrder, ResidueCalculator};
use baumbott::parse::parse_polynomial;
use baumbott::rational::GaussianRational;
use baumbott::regnum::{convergence_study, ChiProfile, QuadratureMode, ShellQuadrature};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const SCHEMA_VERSION: u32 = 1;

/// A validated job. Unknown keys are rejected at parse time.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    /// Points in affine coordinates; entries are integers or exact
    /// scalar strings such as `"1/2"` or `"1/2 + i"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<serde_json::Value>>>,
    /// Per-chart point lists for the projective sum check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart_points: Option<[Vec<Vec<serde_json::Value>>; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// Exact matrix entries for `phi-eval`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_schedule: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeKind>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Residue,
    Milnor,
    Bb,
    SumCheckP2,
    Numeric,
    PhiEval,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Residue => "residue",
            Command::Milnor => "milnor",
            Command::Bb => "bb",
            Command::SumCheckP2 => "sum-check-p2",
            Command::Numeric => "numeric",
            Command::PhiEval => "phi-eval",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ChiKind {
    Cubic,
    Quintic,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Grevlex,
    Lex,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum ModeKind {
    #[serde(rename = "shell-only")]
    ShellOnly,
    #[serde(rename = "full-ball")]
    FullBall,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResultRow {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SumSection {
    pub exact: String,
    pub expected: String,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConvergenceEntry {
    pub eps: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_nodes: Option<usize>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ErrorObject {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub job: serde_json::Value,
    pub results: Vec<ResultRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum: Option<SumSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<Vec<ConvergenceEntry>>,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorObject>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            None => 0,
            Some(e) if e.code == "ParseError" => 3,
            Some(_) => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

fn float_value(q: &GaussianRational) -> serde_json::Value {
    let z = q.to_complex64();
    if z.im == 0.0 {
        serde_json::json!(z.re)
    } else {
        serde_json::json!({ "re": z.re, "im": z.im })
    }
}

fn complex_value(z: Complex64) -> serde_json::Value {
    if z.im == 0.0 {
        serde_json::json!(z.re)
    } else {
        serde_json::json!({ "re": z.re, "im": z.im })
    }
}

fn parse_coordinate(v: &serde_json::Value) -> Result<GaussianRational, Error> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(GaussianRational::from_int(i))
            } else {
                Err(Error::Parse {
                    offset: 0,
                    message: format!("non-integer numeric coordinate {n}; pass exact values as strings"),
                })
            }
        }
        serde_json::Value::String(s) => {
            // A constant polynomial in zero variables is an exact scalar.
            Ok(parse_polynomial(s, 0)?.constant_term())
        }
        other => Err(Error::Parse {
            offset: 0,
            message: format!("coordinate must be an integer or exact string, got {other}"),
        }),
    }
}

fn parse_point(coords: &[serde_json::Value]) -> Result<Vec<GaussianRational>, Error> {
    coords.iter().map(parse_coordinate).collect()
}

struct JobContext<'a> {
    job: &'a JobSpec,
}

impl<'a> JobContext<'a> {
    fn require_n(&self) -> Result<usize, Error> {
        self.job.n.ok_or_else(|| missing("n"))
    }

    fn order(&self) -> MonomialOrder {
        match self.job.order {
            Some(OrderKind::Lex) => MonomialOrder::Lex,
            _ => MonomialOrder::GrevLex,
        }
    }

    fn chi(&self) -> ChiProfile {
        match self.job.chi {
            Some(ChiKind::Cubic) => ChiProfile::cubic(),
            _ => ChiProfile::quintic(),
        }
    }

    fn field(&self, n: usize) -> Result<VectorField, Error> {
        let srcs = self.job.field.as_ref().ok_or_else(|| missing("field"))?;
        if srcs.len() != n {
            return Err(Error::Parse {
                offset: 0,
                message: format!("field has {} components but n = {n}", srcs.len()),
            });
        }
        let comps = srcs
            .iter()
            .map(|s| parse_polynomial(s, n))
            .collect::<Result<Vec<_>, _>>()?;
        VectorField::new(comps)
    }

    fn phi(&self, n: usize) -> Result<SymmetricPolynomial, Error> {
        let src = self.job.phi.as_ref().ok_or_else(|| missing("phi"))?;
        SymmetricPolynomial::parse_or_preset(src, n)
    }

    fn quadrature(&self, n: usize) -> ShellQuadrature {
        let mut q = ShellQuadrature::for_dim(n, self.job.eps.unwrap_or(1e-2));
        if let Some(g) = self.job.grid {
            q.grid = g;
        }
        if let Some(r) = self.job.radius {
            q.radius = r;
        }
        if let Some(ModeKind::FullBall) = self.job.mode {
            q.mode = QuadratureMode::FullBall;
        }
        q
    }
}

fn missing(key: &str) -> Error {
    Error::Parse { offset: 0, message: format!("missing required key '{key}'") }
}

/// Run a validated job; errors become the report's error object.
pub fn run(job: &JobSpec) -> Report {
    let started = Instant::now();
    let ctx = JobContext { job };
    let mut results = Vec::new();
    let mut sum = None;
    let mut convergence = None;
    let mut diagnostics = Diagnostics::default();

    let outcome: Result<(), Error> = (|| {
        match job.command {
            Command::Residue => {
                let n = ctx.require_n()?;
                let x = ctx.field(n)?;
                let h_src = job.h.as_ref().ok_or_else(|| missing("h"))?;
                let h = parse_polynomial(h_src, n)?;
                let calc = ResidueCalculator::new(x.components(), ctx.order())?;
                diagnostics.quotient_dimension = Some(calc.quotient.dimension);
                diagnostics.groebner_elements = Some(calc.gb.elements.len());
                let r = calc.residue(&h)?;
                results.push(ResultRow {
                    label: "residue".into(),
                    exact: Some(r.to_string()),
                    float: Some(float_value(&r)),
                });
            }
            Command::Milnor => {
                let n = ctx.require_n()?;
                let x = ctx.field(n)?;
                let dim = milnor_number(x.components())?;
                diagnostics.quotient_dimension = Some(dim);
                results.push(ResultRow {
                    label: "milnor".into(),
                    exact: Some(dim.to_string()),
                    float: Some(serde_json::json!(dim as f64)),
                });
            }
            Command::Bb => {
                let n = ctx.require_n()?;
                let x = ctx.field(n)?;
                let phi = ctx.phi(n)?;
                let points = job.points.as_ref().ok_or_else(|| missing("points"))?;
                for (i, coords) in points.iter().enumerate() {
                    let pt = SingularPoint::new(parse_point(coords)?, &x)
                        .map_err(|e| e.with_context(format!("point {i}")))?;
                    let r = bb_residue_with(&x, &pt, &phi, ctx.order())
                        .map_err(|e| e.with_context(format!("point {i}")))?;
                    results.push(ResultRow {
                        label: format!("point {i}"),
                        exact: Some(r.to_string()),
                        float: Some(float_value(&r)),
                    });
                }
            }
            Command::SumCheckP2 => {
                let srcs = job.field.as_ref().ok_or_else(|| missing("field"))?;
                if srcs.len() != 2 {
                    return Err(Error::Parse {
                        offset: 0,
                        message: "sum-check-p2 needs field = [P, Q]".into(),
                    });
                }
                let degree = job.degree.ok_or_else(|| missing("degree"))?;
                let p = parse_polynomial(&srcs[0], 2)?;
                let q = parse_polynomial(&srcs[1], 2)?;
                let f = FoliationP2::new(degree, p, q, false)?;
                let phi = ctx.phi(2)?;
                let raw = job.chart_points.as_ref().ok_or_else(|| missing("chart_points"))?;
                let mut by_chart: [Vec<Vec<GaussianRational>>; 3] = Default::default();
                for (c, list) in raw.iter().enumerate() {
                    for coords in list {
                        by_chart[c].push(parse_point(coords)?);
                    }
                }
                let report = global_sum_check(&f, &by_chart, &phi)?;
                for row in &report.per_point {
                    results.push(ResultRow {
                        label: format!("chart {} point", row.chart),
                        exact: Some(row.residue.to_string()),
                        float: Some(float_value(&row.residue)),
                    });
                }
                sum = Some(SumSection {
                    exact: report.sum.to_string(),
                    expected: report.expected.to_string(),
                    matched: report.matched,
                });
            }
            Command::Numeric => {
                let n = ctx.require_n()?;
                let x = ctx.field(n)?;
                let phi = ctx.phi(n)?;
                let q = ctx.quadrature(n);
                diagnostics.quadrature_nodes = Some(q.grid.pow(2 * n as u32));
                let schedule = match &job.eps_schedule {
                    Some(s) if !s.is_empty() => s.clone(),
                    _ => vec![q.eps],
                };
                let table = convergence_study(&x, &phi, &ctx.chi(), &schedule, &q)?;
                results.push(ResultRow {
                    label: "exact".into(),
                    exact: Some(table.exact.to_string()),
                    float: Some(float_value(&table.exact)),
                });
                for row in &table.rows {
                    results.push(ResultRow {
                        label: format!("numeric eps={}", row.eps),
                        exact: None,
                        float: Some(complex_value(row.value)),
                    });
                }
                convergence = Some(
                    table
                        .rows
                        .iter()
                        .map(|r| ConvergenceEntry {
                            eps: r.eps,
                            value_re: r.value.re,
                            value_im: r.value.im,
                            abs_error: r.abs_error,
                        })
                        .collect(),
                );
            }
            Command::PhiEval => {
                let n = ctx.require_n()?;
                let phi = ctx.phi(n)?;
                let rows = job.matrix.as_ref().ok_or_else(|| missing("matrix"))?;
                let entries = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| Ok(parse_polynomial(s, 0)?.constant_term()))
                            .collect::<Result<Vec<_>, Error>>()
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                let value = ScalarMatrix::Exact(entries).phi_eval(&phi)?;
                match value {
                    ScalarValue::Exact(v) => results.push(ResultRow {
                        label: "phi".into(),
                        exact: Some(v.to_string()),
                        float: Some(float_value(&v)),
                    }),
                    ScalarValue::Float(z) => results.push(ResultRow {
                        label: "phi".into(),
                        exact: None,
                        float: Some(complex_value(z)),
                    }),
                }
            }
        }
        Ok(())
    })();

    diagnostics.wall_ms = started.elapsed().as_millis() as u64;
    let error = outcome.err().map(|e| ErrorObject { code: e.code().into(), message: e.to_string() });
    Report {
        schema_version: SCHEMA_VERSION,
        command: job.command.name().into(),
        job: serde_json::to_value(job).unwrap_or(serde_json::Value::Null),
        results,
        sum,
        convergence,
        diagnostics,
        error,
    }
}

/// Serialize a report; JSON is canonical, CSV only carries convergence
/// tables. Byte-stable for identical reports.
pub fn emit(report: &Report, format: OutputFormat) -> Result<Vec<u8>, Error> {
    match format {
        OutputFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report).map_err(|e| Error::Parse {
                offset: 0,
                message: format!("serialization failed: {e}"),
            })?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        OutputFormat::Csv => {
            let rows = report.convergence.as_ref().ok_or_else(|| Error::Parse {
                offset: 0,
                message: "csv output is only available for convergence tables".into(),
            })?;
            let mut out = String::from("eps,value_re,value_im,abs_error\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{}\n", r.eps, r.value_re, r.value_im, r.abs_error));
            }
            Ok(out.into_bytes())
        }
    }
}

/// Parse job JSON; malformed input becomes a ParseError report so the
/// caller still gets a structured object and exit code 3.
pub fn parse_job(input: &str) -> Result<JobSpec, Box<Report>> {
    match serde_json::from_str::<JobSpec>(input) {
        Ok(job) => Ok(job),
        Err(e) => Err(Box::new(Report {
            schema_version: SCHEMA_VERSION,
            command: "unknown".into(),
            job: serde_json::Value::Null,
            results: Vec::new(),
            sum: None,
            convergence: None,
            diagnostics: Diagnostics::default(),
            error: Some(ErrorObject { code: "ParseError".into(), message: e.to_string() }),
        })),
    }
}
