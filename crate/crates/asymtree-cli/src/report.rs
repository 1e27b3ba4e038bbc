//! Report rendering. CSV uses `.` decimals, `,` separators, a header
//! row, and LF line endings; identical inputs produce identical bytes.

use asymtree_core::correspond::ConvergenceRow;
use asymtree_core::levelled::Spectrum;
use asymtree_core::rat;
use clap::ValueEnum;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::verify::SuiteResult;
use crate::{format_rows, GridCell, GridSummary};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn json_text(value: Value) -> String {
    let mut text = serde_json::to_string(&value).expect("report serialization is infallible");
    text.push('\n');
    text
}

pub fn verify_report(results: &[SuiteResult], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("suite,property,trials,violations\n");
            for r in results {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    r.suite, r.property, r.trials, r.violations
                ));
            }
            out
        }
        Format::Json => json_text(Value::Array(
            results
                .iter()
                .map(|r| {
                    json!({
                        "suite": r.suite,
                        "property": r.property,
                        "trials": r.trials,
                        "violations": r.violations,
                    })
                })
                .collect(),
        )),
    }
}

pub fn grid_report(cells: &[GridCell], summary: &[GridSummary], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("kind,r1,r2,phi,n,limit,scaled,error\n");
            for c in cells {
                out.push_str(&format!(
                    "cell,{},{},{},{},{},{},{}\n",
                    c.r1, c.r2, c.phi, c.scale, c.limit, c.scaled, c.error
                ));
            }
            for s in summary {
                out.push_str(&format!("summary,,,,{},,,{}\n", s.scale, s.max_error));
            }
            out
        }
        Format::Json => json_text(json!({
            "cells": cells
                .iter()
                .map(|c| {
                    json!({
                        "r1": c.r1,
                        "r2": c.r2,
                        "phi": c.phi,
                        "n": c.scale,
                        "limit": c.limit,
                        "scaled": c.scaled,
                        "error": c.error,
                    })
                })
                .collect::<Vec<_>>(),
            "summary": summary
                .iter()
                .map(|s| json!({ "n": s.scale, "max_error": s.max_error }))
                .collect::<Vec<_>>(),
        })),
    }
}

pub fn rows_report(rows: &[ConvergenceRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("pair,n,tree_delta,hyper_scaled,error\n");
            for cols in format_rows(rows) {
                out.push_str(&cols.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => json_text(Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "pair": format!("{}-{}", r.pair.0, r.pair.1),
                        "n": r.scale,
                        "tree_delta": rat::fmt(&r.tree_delta),
                        "hyper_scaled": r.hyper_scaled,
                        "error": r.error,
                    })
                })
                .collect(),
        )),
    }
}

pub fn spectrum_report(spectrum: &Spectrum<BigRational>, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("coefficient,level\n");
            for e in spectrum.entries() {
                out.push_str(&format!(
                    "{},{}\n",
                    rat::fmt(&e.coefficient),
                    rat::fmt(e.level.exponent())
                ));
            }
            out
        }
        Format::Json => json_text(Value::Array(
            spectrum
                .entries()
                .iter()
                .map(|e| {
                    json!({
                        "coefficient": rat::fmt(&e.coefficient),
                        "level": rat::fmt(e.level.exponent()),
                    })
                })
                .collect(),
        )),
    }
}
