//! Command-line front end.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 on success, 1
//! when a verified identity fails (or output cannot be written), 2 on usage
//! errors including out-of-range parameters and unreadable input files.

pub mod emit;
pub mod verify;

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::alexander::{alexander_closed_form, alexander_via_determinant, XI};
use crate::braid::FamilyParams;
use crate::classify::{basic_classes, count_formula, distinguish_q2, lambda_closed_form, lambda_set};
use crate::ring::LaurentPolynomial;
use crate::swcalc::{collapse, sw_fiber_sum_general, sw_link_surgery, F};
use emit::Format;
use verify::{Suite, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "torus-sw",
    version,
    about = "Alexander polynomials of braid-plus-axis links and Seiberg-Witten basic classes of link-surgery manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Det,
    Closed,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Alexander polynomial of L_{p,q} in (x, t)
    Alexander {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// SW invariant of E(n,r)_{L_{p,q}} in (xi, tau)
    Sw {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// SW invariant of X # E(r) along T_{p,q}, given SW(X) as a polynomial file
    Fibersum {
        #[arg(long)]
        swx: PathBuf,
        #[arg(long, default_value = F)]
        fiber_var: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Set tau equal to the fiber class and count the surviving terms
    Collapse {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to `xi` or `f`, whichever the polynomial uses
        #[arg(long)]
        fiber_var: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Basic classes of E(n,r)_{L_{p,q}} with coefficients and divisibilities
    BasicClasses {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Also write the classes as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed-form basic-class counts of E(n,1)_{L_{p,q}} over a grid
    Count {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        p: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        q: RangeInclusive<u32>,
        /// Compare against enumeration and the lattice set; exit 1 on mismatch
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare E(n,r)_{L_{p1,2}} and E(n,r)_{L_{p2,2}} by basic-class divisibilities
    Distinguish {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p1: u32,
        #[arg(long)]
        p2: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run identity suites over a parameter grid; exit 1 on the first failure
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = parse_range, default_value = "1..8")]
        p: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "2..8")]
        q: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "1..4")]
        n: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "1..4")]
        r: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parses `A..B`, `A..=B` (both inclusive) or a single `A`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            Ok(v..=v)
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn io_failure(e: std::io::Error) -> CliError {
    CliError::Failure(format!("write failed: {e}"))
}

fn read_polynomial(path: &Path) -> Result<LaurentPolynomial, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    LaurentPolynomial::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) => format!("error: {m}\n"),
                CliError::Failure(m) => format!("failure: {m}\n"),
            };
            let _ = err.write_all(msg.as_bytes());
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let text = match command {
        Command::Alexander { p, q, method, format } => {
            let det = || alexander_via_determinant(p, q).map_err(usage);
            let closed = || alexander_closed_form(p, q).map_err(usage);
            match method {
                Method::Det => emit::polynomial(&det()?, format),
                Method::Closed => emit::polynomial(&closed()?, format),
                Method::Both => {
                    let (d, c) = (det()?, closed()?);
                    both_alexander(&d, &c, format)
                }
            }
        }
        Command::Sw { n, r, p, q, format } => {
            let params = FamilyParams::new(p, q, n, r).map_err(usage)?;
            emit::polynomial(&sw_link_surgery(params).map_err(usage)?.poly, format)
        }
        Command::Fibersum {
            swx,
            fiber_var,
            r,
            p,
            q,
            format,
        } => {
            let sw_x = read_polynomial(&swx)?;
            let fs = sw_fiber_sum_general(&sw_x, &fiber_var, r, p, q).map_err(usage)?;
            emit::polynomial(&fs.poly, format)
        }
        Command::Collapse {
            input,
            fiber_var,
            format,
        } => {
            let poly = read_polynomial(&input)?;
            let fiber = match fiber_var {
                Some(v) => v,
                None => [XI, F]
                    .into_iter()
                    .find(|v| poly.var_index(v).is_some())
                    .ok_or_else(|| CliError::Usage("no `xi` or `f` variable; pass --fiber-var".into()))?
                    .to_string(),
            };
            let collapsed = collapse(&poly, &fiber).map_err(usage)?;
            let mut s = emit::polynomial(&collapsed, format);
            if format == Format::Text {
                s.push_str(&format!("terms: {}\n", collapsed.len()));
            }
            s
        }
        Command::BasicClasses {
            n,
            r,
            p,
            q,
            csv,
            format,
        } => {
            let params = FamilyParams::new(p, q, n, r).map_err(usage)?;
            let report = basic_classes(&sw_link_surgery(params).map_err(usage)?.poly);
            if let Some(path) = csv {
                std::fs::write(&path, emit::report(&report, Format::Csv)).map_err(io_failure)?;
            }
            emit::report(&report, format)
        }
        Command::Count {
            n,
            p,
            q,
            verify,
            format,
        } => count_command(n, p, q, verify, format, out)?,
        Command::Distinguish { n, p1, p2, json } => {
            emit::comparison(&distinguish_q2(n, p1, p2).map_err(usage)?, json)
        }
        Command::Verify {
            suite,
            p,
            q,
            n,
            r,
            format,
        } => {
            let spec = SweepSpec { p, q, n, r, suite };
            let report = verify::run_verify(&spec).map_err(usage)?;
            let rendered = match format {
                Format::Text => verify::render_text(&report, suite),
                Format::Csv => verify::render_csv(&report),
                Format::Json => {
                    let mut s = serde_json::to_string(&report).expect("report serialization");
                    s.push('\n');
                    s
                }
            };
            out.write_all(rendered.as_bytes()).map_err(io_failure)?;
            if let Some(c) = report.first_failure() {
                let detail = c.counterexample.as_deref().unwrap_or("");
                let _ = writeln!(err, "counterexample: {} [{}] {}", c.identity, c.cell, detail);
                return Err(CliError::Failure(format!("{} of {} checks failed", report.failed, report.total)));
            }
            return Ok(());
        }
    };
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn both_alexander(det: &LaurentPolynomial, closed: &LaurentPolynomial, format: Format) -> String {
    let matched = det == closed;
    match format {
        Format::Text => format!(
            "det:    {det}\nclosed: {closed}\nmatch: {}\n",
            if matched { "yes" } else { "no" }
        ),
        Format::Json => format!(
            "{{\"det\":{},\"closed\":{},\"match\":{matched}}}\n",
            det.to_json(),
            closed.to_json()
        ),
        Format::Csv => {
            let mut s = String::from("method,");
            let body = |label: &str, p: &LaurentPolynomial| {
                emit::polynomial(p, Format::Csv)
                    .lines()
                    .skip(1)
                    .map(|l| format!("{label},{l}\n"))
                    .collect::<String>()
            };
            s.push_str(emit::polynomial(det, Format::Csv).lines().next().unwrap_or(""));
            s.push('\n');
            s.push_str(&body("det", det));
            s.push_str(&body("closed", closed));
            s
        }
    }
}

fn count_command(
    n: RangeInclusive<u32>,
    p: RangeInclusive<u32>,
    q: RangeInclusive<u32>,
    verify: bool,
    format: Format,
    out: &mut dyn Write,
) -> Result<String, CliError> {
    for (name, r) in [("n", &n), ("p", &p), ("q", &q)] {
        if r.is_empty() {
            return Err(CliError::Usage(format!("range for {name} is empty")));
        }
    }
    // validity of the formula is checked on the range corners
    count_formula(*n.start(), *p.start(), *q.start()).map_err(usage)?;
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for nn in n.clone() {
        for pp in p.clone() {
            for qq in q.clone() {
                let formula = count_formula(nn, pp, qq).map_err(usage)?;
                let mut row = vec![nn.to_string(), pp.to_string(), qq.to_string(), formula.to_string()];
                if verify {
                    let params = FamilyParams::new(pp, qq, nn, 1).map_err(usage)?;
                    let enumerated = basic_classes(&sw_link_surgery(params).map_err(usage)?.poly).count as i64;
                    let lambda = lambda_set(nn, pp, qq).map_err(usage)?.cardinality as i64;
                    let lambda_cf = lambda_closed_form(nn, pp, qq).map_err(usage)?;
                    let ok = enumerated == formula && lambda == lambda_cf && formula == lambda + 2 * i64::from(nn);
                    if !ok {
                        mismatches += 1;
                    }
                    row.extend([
                        enumerated.to_string(),
                        lambda.to_string(),
                        lambda_cf.to_string(),
                        ok.to_string(),
                    ]);
                }
                rows.push(row);
            }
        }
    }
    let headers: &[&str] = if verify {
        &["n", "p", "q", "formula", "enumerated", "lambda", "lambda_closed", "ok"]
    } else {
        &["n", "p", "q", "formula"]
    };
    let text = emit::rows(headers, &rows, format);
    if mismatches > 0 {
        out.write_all(text.as_bytes()).map_err(io_failure)?;
        return Err(CliError::Failure(format!("{mismatches} cells disagree")));
    }
    Ok(text)
}
