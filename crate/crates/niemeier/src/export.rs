//! Machine-readable JSON exports: the lattice catalog with Gram
//! matrices, the coefficient-polynomial table, Fourier expansions and
//! certification reports.

use serde::Serialize;

use crate::error::Result;
use crate::forms3::coefficient_polynomials;
use crate::fourier::FourierExpansion;
use crate::lattices::{build, CatalogEntry};

/// One catalog row of `lattices.json`.
#[derive(Debug, Serialize)]
pub struct LatticeRecord {
    pub name: String,
    pub symbol: String,
    pub coxeter_number: i64,
    pub root_count: i64,
    /// 24 rows of 24 integers.
    pub gram: Vec<Vec<String>>,
}

/// Serialize the full catalog, building (and validating) every lattice.
pub fn lattices_json(entries: &[CatalogEntry]) -> Result<String> {
    let mut records = Vec::with_capacity(entries.len());
    for entry in entries {
        let lat = build(entry)?;
        records.push(LatticeRecord {
            name: lat.name.clone(),
            symbol: lat.symbol.clone(),
            coxeter_number: lat.coxeter_number,
            root_count: lat.expected_root_count(),
            gram: lat
                .gram
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
        });
    }
    Ok(serde_json::to_string_pretty(&records)?)
}

/// One row of `table1.json`: the weight-12 expression coefficients.
#[derive(Debug, Serialize)]
pub struct Table1Row {
    pub name: String,
    pub symbol: String,
    pub coxeter_number: i64,
    pub c0: String,
    pub c1: String,
    pub c2: String,
}

pub fn table1_json(entries: &[CatalogEntry]) -> Result<String> {
    let rows: Vec<Table1Row> = entries
        .iter()
        .map(|e| {
            let (c0, c1, c2) = coefficient_polynomials(e.coxeter_number);
            Table1Row {
                name: e.name.to_string(),
                symbol: e.symbol.to_string(),
                coxeter_number: e.coxeter_number,
                c0: c0.to_string(),
                c1: c1.to_string(),
                c2: c2.to_string(),
            }
        })
        .collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

#[derive(Debug, Serialize)]
struct ExpansionEntry {
    t: Vec<i64>,
    num: String,
    den: String,
}

#[derive(Debug, Serialize)]
struct ExpansionDoc {
    degree: u8,
    weight: i64,
    entries: Vec<ExpansionEntry>,
}

/// Serialize an expansion; entries follow the index total order.
pub fn expansion_json(f: &FourierExpansion) -> Result<String> {
    let doc = ExpansionDoc {
        degree: f.degree(),
        weight: f.weight(),
        entries: f
            .entries()
            .map(|(t, v)| ExpansionEntry {
                t: t.encode_compact(),
                num: v.numer().to_string(),
                den: v.denom().to_string(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Serialize any certification report.
pub fn report_json<T: Serialize>(report: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::lattices::catalog;

    #[test]
    fn table1_rows_match_known_coefficients() {
        let json = table1_json(&catalog()).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 24);
        let alpha = &rows[0];
        assert_eq!(alpha["name"], "alpha");
        assert_eq!(alpha["c0"], "384");
        assert_eq!(alpha["c1"], "12288");
        assert_eq!(alpha["c2"], "3076224");
        let omega = &rows[23];
        assert_eq!(omega["c0"], "-720");
    }

    #[test]
    fn expansion_round_trips_as_json() {
        let mut ctx = Context::new();
        let f = ctx.theta("psi", 2).unwrap();
        let json = expansion_json(&f).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(doc["degree"], 2);
        assert_eq!(doc["weight"], 12);
        let entries = doc["entries"].as_array().unwrap();
        assert_eq!(entries.len(), f.covered().count());
        // [1,1,1] carries the coefficient 0 for this lattice.
        let e = entries
            .iter()
            .find(|e| e["t"] == serde_json::json!([1, 1, 1]))
            .unwrap();
        assert_eq!(e["num"], "0");
        assert_eq!(e["den"], "1");
    }

    #[test]
    fn lattices_export_covers_catalog() {
        let json = lattices_json(&catalog()).unwrap();
        let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(rows.as_array().unwrap().len(), 24);
        for row in rows.as_array().unwrap() {
            assert_eq!(row["gram"].as_array().unwrap().len(), 24);
        }
        assert_eq!(rows[23]["root_count"], 0);
    }
}
