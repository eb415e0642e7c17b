//! Machine-readable and human-readable renderings of gap reports and
//! successor tables.
//!
//! JSON carries exact coefficients as decimal strings so that arbitrarily
//! large integers survive any JSON reader; field order is fixed by the
//! struct definitions below, so re-serializing parsed output is byte-identical.

use serde::{Deserialize, Serialize};

use crate::gap::{GapReport, Orbit, PointIndex};
use crate::numeric::{FieldValue, REPORT_DIGITS};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    HumanTable,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
}

impl From<&FieldValue> for ExactJson {
    fn from(v: &FieldValue) -> Self {
        ExactJson {
            a: v.a().to_string(),
            b: v.b().to_string(),
            c: v.c().to_string(),
            d: v.d().to_string(),
        }
    }
}

impl ExactJson {
    pub fn to_value(&self) -> Result<FieldValue> {
        let int = |s: &str| {
            s.parse::<num_bigint::BigInt>()
                .map_err(|e| crate::GapError::Parse(format!("bad integer {s:?}: {e}")))
        };
        FieldValue::new(int(&self.a)?, int(&self.b)?, int(&self.c)?, int(&self.d)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub kind: String,
    pub length_exact: ExactJson,
    pub length_decimal: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapsJson {
    pub alpha: String,
    pub n: usize,
    pub first: Option<usize>,
    pub last: Option<usize>,
    pub m: Option<usize>,
    pub classes: Vec<ClassJson>,
}

impl From<&GapReport> for GapsJson {
    fn from(r: &GapReport) -> Self {
        GapsJson {
            alpha: r.config.alpha().to_string(),
            n: r.config.n_points(),
            first: r.first,
            last: r.last,
            m: r.m_total,
            classes: r
                .classes
                .iter()
                .map(|c| ClassJson {
                    kind: c.kind.to_string(),
                    length_exact: (&c.length).into(),
                    length_decimal: c.length.to_decimal(REPORT_DIGITS),
                    count: c.count,
                })
                .collect(),
        }
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn gaps_json(report: &GapReport) -> String {
    let mut s = serde_json::to_string_pretty(&GapsJson::from(report)).expect("plain data");
    s.push('\n');
    s
}

pub fn gaps_csv(report: &GapReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["alpha", "n", "first", "last", "kind", "length_decimal", "count"])
        .expect("in-memory writer");
    let alpha = report.config.alpha().to_string();
    let n = report.config.n_points().to_string();
    let first = report.first.map(|v| v.to_string()).unwrap_or_default();
    let last = report.last.map(|v| v.to_string()).unwrap_or_default();
    for c in &report.classes {
        w.write_record([
            alpha.as_str(),
            &n,
            &first,
            &last,
            c.kind.as_str(),
            &c.length.to_decimal(REPORT_DIGITS),
            &c.count.to_string(),
        ])
        .expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
}

pub fn gaps_table(report: &GapReport) -> String {
    let mut out = format!(
        "alpha  {}\nN      {}\nfirst  {}\nlast   {}\nM      {}\n\n",
        report.config.alpha(),
        report.config.n_points(),
        opt(report.first),
        opt(report.last),
        opt(report.m_total),
    );
    out.push_str(&format!(
        "{:<12} {:>8}  {:<16} {}\n",
        "kind", "count", "length", "exact"
    ));
    for c in &report.classes {
        out.push_str(&format!(
            "{:<12} {:>8}  {:<16} {}\n",
            c.kind.as_str(),
            c.count,
            c.length.to_decimal(REPORT_DIGITS),
            c.length
        ));
    }
    out
}

pub fn render_gaps(report: &GapReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::HumanTable => gaps_table(report),
        OutputFormat::Json => gaps_json(report),
        OutputFormat::Csv => gaps_csv(report),
    }
}

/// One successor, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfterRow {
    pub m: usize,
    pub after: usize,
    pub branch: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfterJson {
    pub alpha: String,
    pub n: usize,
    pub first: usize,
    pub last: usize,
    pub rows: Vec<AfterRow>,
}

/// Closed-form and inductive successor disagree: a bug, never a domain condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub m: usize,
    pub closed_form: usize,
    pub inductive: usize,
}

/// Successor rows for `rows` (all points when `None`), each checked against
/// the inductive construction.
pub fn after_rows(
    orbit: &Orbit,
    only: Option<usize>,
) -> Result<std::result::Result<AfterJson, Disagreement>> {
    let n = orbit.n_points();
    let (first, last) = (orbit.first()?, orbit.last()?);
    let ms: Vec<usize> = match only {
        Some(m) => {
            orbit.after_closed_form(PointIndex(m))?;
            vec![m]
        }
        None => (0..n).collect(),
    };
    let mut rows = Vec::with_capacity(ms.len());
    for m in ms {
        let (closed, branch) = orbit.after_closed_form(PointIndex(m))?;
        let inductive = orbit.after_inductive(PointIndex(m))?;
        if closed != inductive {
            return Ok(Err(Disagreement { m, closed_form: closed, inductive }));
        }
        rows.push(AfterRow {
            m,
            after: closed,
            branch: branch.to_string(),
        });
    }
    Ok(Ok(AfterJson {
        alpha: orbit.config().alpha().to_string(),
        n,
        first,
        last,
        rows,
    }))
}

pub fn render_after(table: &AfterJson, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("plain data");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["alpha", "n", "m", "after", "branch"])
                .expect("in-memory writer");
            for r in &table.rows {
                w.write_record([
                    table.alpha.clone(),
                    table.n.to_string(),
                    r.m.to_string(),
                    r.after.to_string(),
                    r.branch.clone(),
                ])
                .expect("in-memory writer");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 fields")
        }
        OutputFormat::HumanTable => {
            let mut out = format!(
                "alpha  {}\nN      {}\nfirst  {}\nlast   {}\n\n{:>8} {:>8}  branch\n",
                table.alpha, table.n, table.first, table.last, "m", "after"
            );
            for r in &table.rows {
                out.push_str(&format!("{:>8} {:>8}  {}\n", r.m, r.after, r.branch));
            }
            if table.rows.len() > 1 {
                let perm: Vec<String> = table.rows.iter().map(|r| r.after.to_string()).collect();
                out.push_str(&format!("\npermutation [{}]\n", perm.join(",")));
            }
            out
        }
    }
}
