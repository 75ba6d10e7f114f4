use serde::Serialize;

use qsd_sr::asymptotics::lambda_approx;
use qsd_sr::eigensolver::{dominant_eigenvalue, DEFAULT_TOL};
use qsd_sr::Error;

use crate::args::{Format, Table1Args};
use crate::failure::{params, tolerance, Failure, Outcome};
use crate::output::{emit, to_json, Table};

/// Published −λ at μ = 1, exact to the 12 printed decimals.
pub const GOLDEN: [(f64, f64); 8] = [
    (20.0, 0.058856148622),
    (30.0, 0.037786534271),
    (40.0, 0.027727324417),
    (50.0, 0.021861600950),
    (100.0, 0.010563106075),
    (500.0, 0.002033066472),
    (1000.0, 0.001009517200),
    (10000.0, 0.000100139278),
];

pub fn golden(mu: f64, threshold: f64) -> Option<f64> {
    if mu.abs() != 1.0 {
        return None;
    }
    GOLDEN.iter().find(|g| g.0 == threshold).map(|g| g.1)
}

#[derive(Serialize)]
struct Row {
    #[serde(rename = "A")]
    threshold: f64,
    minus_lambda: f64,
    minus_lambda_1: Option<f64>,
    minus_lambda_2: Option<f64>,
    minus_lambda_3: Option<f64>,
    published: Option<f64>,
    abs_error: Option<f64>,
    pass: Option<bool>,
}

#[derive(Serialize)]
struct Report {
    mu: f64,
    tol: f64,
    rows: Vec<Row>,
    warnings: Vec<String>,
}

/// Rounded to 12 decimals, trailing zeros dropped as in the printed table.
fn twelve(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0');
    s.strip_suffix('.').unwrap_or(s).to_string()
}

pub fn run(args: &Table1Args) -> Outcome {
    let tol = tolerance(args.tol)?;
    let thresholds: Vec<f64> = if args.thresholds.is_empty() {
        GOLDEN.iter().map(|g| g.0).collect()
    } else {
        args.thresholds.clone()
    };
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut mismatches = Vec::new();
    for &a in &thresholds {
        let p = params(args.mu, a)?;
        let lambda = dominant_eigenvalue(&p, DEFAULT_TOL)?.lambda;
        let mut approx = [None; 3];
        for order in 1..=3u8 {
            match lambda_approx(order, &p) {
                Ok(v) => approx[order as usize - 1] = Some(-v),
                Err(e @ Error::ThresholdTooSmall { .. }) => {
                    warnings.push(format!("A = {a}: order-{order} approximation omitted: {e}"))
                }
                Err(e) => return Err(e.into()),
            }
        }
        let published = golden(args.mu, a);
        let abs_error = published.map(|g| (-lambda - g).abs());
        let pass = abs_error.map(|e| e <= tol);
        if pass == Some(false) {
            mismatches.push(format!(
                "A = {a}: -lambda = {} differs from {} by {:.3e} > {tol:e}",
                -lambda,
                published.unwrap(),
                abs_error.unwrap()
            ));
        }
        rows.push(Row {
            threshold: a,
            minus_lambda: -lambda,
            minus_lambda_1: approx[0],
            minus_lambda_2: approx[1],
            minus_lambda_3: approx[2],
            published,
            abs_error,
            pass,
        });
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let text = match args.output.format {
        Format::Csv => {
            let cell = |v: Option<f64>| v.map(twelve).unwrap_or_default();
            Table {
                columns: ["A", "-lambda", "-lambda*", "-lambda**", "-lambda***"]
                    .map(String::from)
                    .to_vec(),
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.threshold.to_string(),
                            twelve(r.minus_lambda),
                            cell(r.minus_lambda_1),
                            cell(r.minus_lambda_2),
                            cell(r.minus_lambda_3),
                        ]
                    })
                    .collect(),
            }
            .to_csv()
        }
        Format::Json => to_json(&Report {
            mu: args.mu,
            tol,
            rows,
            warnings,
        }),
    };
    emit(&text, args.output.out.as_deref())?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(mismatches))
    }
}
