use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use crate::convergence::fitted_order;
use crate::error::Result;

fn read(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut rd = csv::Reader::from_path(path)?;
    let header = rd.headers()?.iter().map(String::from).collect();
    let rows = rd.records().map(|r| r.map(|r| r.iter().map(String::from).collect())).collect::<std::result::Result<_, _>>()?;
    Ok((header, rows))
}

fn column(header: &[String], name: &str) -> Option<usize> {
    header.iter().position(|h| h == name)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or(f64::NAN)
}

/// Markdown summary of every CSV under `dir`, recognized by its columns.
pub fn summarize(dir: &Path) -> Result<String> {
    let mut paths: Vec<_> = walk(dir)?;
    paths.sort();
    let mut out = String::from("# Experiment summary\n");
    for p in paths {
        let (header, rows) = read(&p)?;
        let name = p.strip_prefix(dir).unwrap_or(&p).display().to_string();
        let _ = writeln!(out, "\n## {name}\n");
        if let (Some(r), Some(rel)) = (column(&header, "residual"), column(&header, "relative_residual")) {
            let last = rows.last();
            let _ = writeln!(out, "- outer iterations: {}", rows.len());
            if let Some(l) = last {
                let _ = writeln!(out, "- final residual: {:.3e} (relative {:.3e})", num(&l[r]), num(&l[rel]));
            }
        } else if let (Some(e), Some(m), Some(err)) =
            (column(&header, "epsilon"), column(&header, "M"), column(&header, "l2_error"))
        {
            let mut by_eps: BTreeMap<String, (Vec<usize>, Vec<f64>)> = BTreeMap::new();
            for row in &rows {
                let entry = by_eps.entry(row[e].clone()).or_default();
                entry.0.push(row[m].parse().unwrap_or(0));
                entry.1.push(num(&row[err]));
            }
            let _ = writeln!(out, "| ε | finest error | fitted order |\n|---|---|---|");
            for (eps, (ms, errs)) in by_eps {
                let _ = writeln!(out, "| {eps} | {:.3e} | {:.3} |", errs.last().unwrap_or(&f64::NAN), fitted_order(&ms, &errs));
            }
        } else if let (Some(meth), Some(md)) = (column(&header, "method"), column(&header, "dominant_modulus")) {
            let mut worst: BTreeMap<String, f64> = BTreeMap::new();
            for row in &rows {
                let w = worst.entry(row[meth].clone()).or_insert(0.0);
                *w = w.max(num(&row[md]));
            }
            let _ = writeln!(out, "| method | max modulus |\n|---|---|");
            for (k, v) in worst {
                let _ = writeln!(out, "| {k} | {v:.6} |");
            }
        } else {
            let shown = if header.len() > 12 {
                format!("{}, ... ({} in all)", header[..8].join(", "), header.len())
            } else {
                header.join(", ")
            };
            let _ = writeln!(out, "- {} rows, columns: {shown}", rows.len());
        }
    }
    Ok(out)
}

fn walk(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let p = entry?.path();
        if p.is_dir() {
            out.extend(walk(&p)?);
        } else if p.extension().is_some_and(|e| e == "csv") {
            out.push(p);
        }
    }
    Ok(out)
}
