//! Text, CSV and JSON renderings of the report records.

use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use dworkbench_core::report::{
    CartanRecord, DecompRecord, LabelRecord, MarksRecord, RadicalRecord, VerifyRecord,
};
use dworkbench_core::GeneratorSubset;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Left-aligned columns separated by two spaces, trailing blanks trimmed.
fn columns(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn subset(mask: u16) -> String {
    GeneratorSubset(mask).to_string()
}

fn label_cells(l: &LabelRecord) -> Vec<String> {
    vec![(l.index + 1).to_string(), l.iso_type.clone(), subset(l.mask), l.beta.clone()]
}

fn label_header() -> Vec<String> {
    ["#", "type", "subset", "beta"].map(String::from).to_vec()
}

pub fn marks(rec: &MarksRecord, format: Format) -> Result<String> {
    let mut header = label_header();
    header.extend((1..=rec.labels.len()).map(|k| k.to_string()));
    let rows: Vec<Vec<String>> = rec
        .labels
        .iter()
        .zip(&rec.matrix)
        .map(|(l, row)| {
            let mut cells = label_cells(l);
            cells.extend(row.iter().cloned());
            cells
        })
        .collect();
    match format {
        Format::Json => json(rec),
        Format::Csv => csv(&header, &rows),
        Format::Text => {
            let mut out = format!(
                "table of marks of {}: {} classes of parabolic subgroups\n\n",
                rec.descriptor,
                rec.labels.len()
            );
            out.push_str(&columns(&std::iter::once(header).chain(rows).collect::<Vec<_>>()));
            Ok(out)
        }
    }
}

fn one_based(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(", ")
}

pub fn decomp(rec: &DecompRecord, format: Format) -> Result<String> {
    let mut header = label_header();
    header.extend(rec.primes.iter().map(|p| format!("p = {}", p.p)));
    let rows: Vec<Vec<String>> = rec
        .labels
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let mut cells = label_cells(l);
            cells.extend(rec.primes.iter().map(|p| p.entries[k].clone()));
            cells
        })
        .collect();
    match format {
        Format::Json => json(rec),
        Format::Csv => csv(&header, &rows),
        Format::Text => {
            let mut out = format!("decomposition matrices of {}\n\n", rec.descriptor);
            out.push_str(&columns(&std::iter::once(header).chain(rows).collect::<Vec<_>>()));
            for p in &rec.primes {
                let _ = write!(out, "\np = {}: s = {}, F = {{{}}}\n", p.p, p.s, one_based(&p.f));
                for c in &p.classes {
                    let _ = writeln!(out, "  class {{{}}}", one_based(c));
                }
            }
            Ok(out)
        }
    }
}

fn terms(coeffs: &[String]) -> String {
    let mut out = String::new();
    for (mask, c) in coeffs.iter().enumerate() {
        if c == "0" {
            continue;
        }
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, c.as_str()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != "1" {
            out.push_str(abs);
            out.push(' ');
        }
        let _ = write!(out, "x{}", subset(mask as u16));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn radical(rec: &RadicalRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => json(rec),
        Format::Csv => {
            let mut header: Vec<String> = vec!["characteristic".into(), "vector".into()];
            header.extend((0..rec.algebra_dimension).map(|m| subset(m as u16)));
            let rows: Vec<Vec<String>> = rec
                .parts
                .iter()
                .flat_map(|part| {
                    part.basis.iter().enumerate().map(move |(i, v)| {
                        let mut cells = vec![part.characteristic.to_string(), (i + 1).to_string()];
                        cells.extend(v.iter().cloned());
                        cells
                    })
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Text => {
            let mut out = format!(
                "radical of the descent algebra of {} (dimension {})\n",
                rec.descriptor, rec.algebra_dimension
            );
            for part in &rec.parts {
                let (field, count) = match part.characteristic {
                    0 => ("Q".to_string(), "r"),
                    p => (format!("F_{p}"), "s"),
                };
                let _ = write!(
                    out,
                    "\nover {field}: {count} = {}, radical dimension {}\n",
                    part.irreducibles, part.dimension
                );
                for (i, v) in part.basis.iter().enumerate() {
                    let _ = writeln!(out, "  {:>3}  {}", i + 1, terms(v));
                }
            }
            Ok(out)
        }
    }
}

fn matrix_rows(index: &[usize], entries: &[Vec<u64>]) -> Vec<Vec<String>> {
    let mut rows = vec![std::iter::once(String::new())
        .chain(index.iter().map(|i| (i + 1).to_string()))
        .collect::<Vec<_>>()];
    for (i, row) in index.iter().zip(entries) {
        rows.push(
            std::iter::once((i + 1).to_string())
                .chain(row.iter().map(u64::to_string))
                .collect(),
        );
    }
    rows
}

pub fn cartan(rec: &CartanRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => json(rec),
        Format::Csv => {
            let header: Vec<String> = ["matrix", "p", "row", "column", "value"].map(String::from).to_vec();
            let mut rows = Vec::new();
            let mut push = |name: &str, p: u64, index: &[usize], m: &[Vec<u64>]| {
                for (i, row) in index.iter().zip(m) {
                    for (j, v) in index.iter().zip(row) {
                        rows.push(vec![name.into(), p.to_string(), (i + 1).to_string(), (j + 1).to_string(), v.to_string()]);
                    }
                }
            };
            push("C", 0, &rec.c.index, &rec.c.entries);
            for p in &rec.primes {
                push("C~", p.p, &p.c_tilde.index, &p.c_tilde.entries);
                push("DtCD", p.p, &p.c_tilde.index, &p.dt_c_d);
            }
            csv(&header, &rows)
        }
        Format::Text => {
            let mut out = format!("Cartan matrices of {}\n\nC (characteristic 0):\n", rec.descriptor);
            out.push_str(&columns(&matrix_rows(&rec.c.index, &rec.c.entries)));
            for p in &rec.primes {
                let _ = write!(out, "\np = {}: C~:\n", p.p);
                out.push_str(&columns(&matrix_rows(&p.c_tilde.index, &p.c_tilde.entries)));
                let _ = writeln!(out, "p = {}: D^T C D:", p.p);
                out.push_str(&columns(&matrix_rows(&p.c_tilde.index, &p.dt_c_d)));
                let _ = writeln!(out, "p = {}: {}", p.p, if p.equal { "EQUAL" } else { "NOT EQUAL" });
            }
            Ok(out)
        }
    }
}

pub fn verify(rec: &VerifyRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => json(rec),
        Format::Csv => {
            let header: Vec<String> = ["check", "count", "status", "failure"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = rec
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.checks.to_string(),
                        if c.passed() { "PASS" } else { "FAIL" }.into(),
                        c.failures.first().cloned().unwrap_or_default(),
                    ]
                })
                .collect();
            csv(&header, &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for c in &rec.checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status}  {} ({} checks)", c.name, c.checks);
                for f in c.failures.iter().take(20) {
                    let _ = writeln!(out, "      {f}");
                }
                if c.failures.len() > 20 {
                    let _ = writeln!(out, "      ... {} more", c.failures.len() - 20);
                }
            }
            let _ = writeln!(
                out,
                "{}: {}",
                rec.descriptor,
                if rec.passed() { "all checks passed" } else { "VERIFICATION FAILED" }
            );
            Ok(out)
        }
    }
}
