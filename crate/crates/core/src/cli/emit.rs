//! Rendering of polynomials and reports as text tables, JSON and CSV.

use clap::ValueEnum;

use crate::classify::{BasicClassReport, Q2Comparison};
use crate::ring::LaurentPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Right-aligned columns separated by two spaces.
pub fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain(std::iter::once(headers[i].len()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(headers);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

fn csv_string(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn polynomial_rows(poly: &LaurentPolynomial) -> (Vec<String>, Vec<Vec<String>>) {
    let mut headers: Vec<String> = poly.vars().to_vec();
    headers.push("coeff".into());
    let rows = poly
        .terms()
        .map(|(e, c)| {
            e.as_slice()
                .iter()
                .map(i64::to_string)
                .chain(std::iter::once(c.to_string()))
                .collect()
        })
        .collect();
    (headers, rows)
}

pub fn polynomial(poly: &LaurentPolynomial, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = poly.to_json();
            s.push('\n');
            s
        }
        Format::Text => {
            let (h, r) = polynomial_rows(poly);
            format!("{poly}\n{}", table(&h, &r))
        }
        Format::Csv => {
            let (h, r) = polynomial_rows(poly);
            csv_string(&h, &r)
        }
    }
}

fn report_rows(report: &BasicClassReport) -> (Vec<String>, Vec<Vec<String>>) {
    let mut headers: Vec<String> = report.vars.iter().map(|v| format!("{v}_exp")).collect();
    headers.push("coeff".into());
    headers.push("divisibility".into());
    let rows = report
        .classes
        .iter()
        .map(|c| {
            c.exponents
                .iter()
                .map(i64::to_string)
                .chain([c.coeff.to_string(), c.divisibility.to_string()])
                .collect()
        })
        .collect();
    (headers, rows)
}

fn multiset<T: ToString>(v: &[T]) -> String {
    format!(
        "{{{}}}",
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    )
}

pub fn report(report: &BasicClassReport, format: Format) -> String {
    let (h, r) = report_rows(report);
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report serialization");
            s.push('\n');
            s
        }
        Format::Csv => csv_string(&h, &r),
        Format::Text => format!(
            "{}count: {}\ncoefficient multiset: {}\n±1 divisibility multiset: {}\n",
            table(&h, &r),
            report.count,
            multiset(&report.coefficient_multiset),
            multiset(&report.divisibility_multiset),
        ),
    }
}

pub fn comparison(cmp: &Q2Comparison, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string(cmp).expect("comparison serialization");
        s.push('\n');
        return s;
    }
    let headers: Vec<String> = ["p", "count", "coefficients", "±1 divisibilities"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let row = |p: u32, rep: &BasicClassReport| {
        vec![
            p.to_string(),
            rep.count.to_string(),
            multiset(&rep.coefficient_multiset),
            multiset(&rep.divisibility_multiset),
        ]
    };
    format!(
        "n = {}, q = 2, r = {}\n{}verdict: {}\n",
        cmp.n,
        cmp.r,
        table(&headers, &[row(cmp.p1, &cmp.first), row(cmp.p2, &cmp.second)]),
        cmp.verdict
    )
}

/// Generic rows for commands that produce a table of integers.
pub fn rows(headers: &[&str], rows: &[Vec<String>], format: Format) -> String {
    let headers: Vec<String> = headers.iter().map(|s| s.to_string()).collect();
    match format {
        Format::Text => table(&headers, rows),
        Format::Csv => csv_string(&headers, rows),
        Format::Json => {
            let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    headers
                        .iter()
                        .zip(r)
                        .map(|(h, v)| {
                            let value = match v.parse::<i64>() {
                                Ok(i) => serde_json::Value::from(i),
                                Err(_) => match v.as_str() {
                                    "true" => serde_json::Value::Bool(true),
                                    "false" => serde_json::Value::Bool(false),
                                    _ => serde_json::Value::String(v.clone()),
                                },
                            };
                            (h.clone(), value)
                        })
                        .collect()
                })
                .collect();
            let mut s = serde_json::to_string(&objs).expect("row serialization");
            s.push('\n');
            s
        }
    }
}
