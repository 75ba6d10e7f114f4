use serde::Serialize;

use qsd_sr::asymptotics::ApproxSolution;
use qsd_sr::eigensolver::DEFAULT_TOL;
use qsd_sr::qsd::{build_solution, QsdSolution};
use qsd_sr::Error;

use crate::args::{ApproxArgs, Format, GridArgs};
use crate::failure::{params, Failure, Outcome};
use crate::output::{emit, number, to_json, Table};

#[derive(Serialize)]
struct Report<'a> {
    mu: f64,
    #[serde(rename = "A")]
    threshold: f64,
    lambda: f64,
    columns: &'a [String],
    rows: Vec<Vec<f64>>,
    warnings: &'a [String],
}

fn abscissae(args: &GridArgs) -> Result<Vec<f64>, Failure> {
    let xmin = args.xmin.unwrap_or(0.0);
    let xmax = args.xmax.unwrap_or(args.threshold);
    if args.grid < 2 {
        return Err(Failure::Usage(format!("--grid must be at least 2, got {}", args.grid)));
    }
    if !(xmin.is_finite() && xmax.is_finite() && xmin < xmax) {
        return Err(Failure::Usage(format!(
            "need finite --xmin < --xmax, got [{xmin}, {xmax}]"
        )));
    }
    let n = args.grid - 1;
    Ok((0..=n)
        .map(|i| {
            if i == n {
                xmax
            } else {
                xmin + (xmax - xmin) * i as f64 / n as f64
            }
        })
        .collect())
}

fn solve(args: &GridArgs) -> Result<QsdSolution, Failure> {
    Ok(build_solution(&params(args.mu, args.threshold)?, DEFAULT_TOL)?)
}

fn write(args: &GridArgs, sol: &QsdSolution, columns: Vec<(String, Vec<f64>)>, warnings: &[String]) -> Outcome {
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let names: Vec<String> = columns.iter().map(|c| c.0.clone()).collect();
    let rows: Vec<Vec<f64>> = (0..columns[0].1.len())
        .map(|i| columns.iter().map(|c| c.1[i]).collect())
        .collect();
    let text = match args.output.format {
        Format::Csv => Table {
            columns: names,
            rows: rows.iter().map(|r| r.iter().map(|&v| number(v)).collect()).collect(),
        }
        .to_csv(),
        Format::Json => to_json(&Report {
            mu: args.mu,
            threshold: args.threshold,
            lambda: sol.lambda(),
            columns: &names,
            rows,
            warnings,
        }),
    };
    emit(&text, args.output.out.as_deref())?;
    Ok(())
}

pub fn pdf(args: &GridArgs) -> Outcome {
    let xs = abscissae(args)?;
    let sol = solve(args)?;
    let q = xs.iter().map(|&x| sol.pdf(x)).collect();
    write(args, &sol, vec![("x".into(), xs), ("q".into(), q)], &[])
}

pub fn cdf(args: &GridArgs) -> Outcome {
    let xs = abscissae(args)?;
    let sol = solve(args)?;
    let q = xs.iter().map(|&x| sol.cdf(x)).collect();
    write(args, &sol, vec![("x".into(), xs), ("Q".into(), q)], &[])
}

pub fn approx(args: &ApproxArgs) -> Outcome {
    let g = &args.grid;
    let xs = abscissae(g)?;
    let sol = solve(g)?;
    let p = sol.params();
    let exact: Vec<f64> = xs.iter().map(|&x| sol.pdf(x)).collect();
    let orders: Vec<u8> = match args.order {
        Some(k) => vec![k],
        None => vec![1, 2, 3],
    };
    let mut approx_cols = Vec::new();
    let mut error_cols = Vec::new();
    let mut warnings = Vec::new();
    for k in orders {
        let stars = "*".repeat(k as usize);
        match ApproxSolution::new(k, p) {
            Ok(a) => {
                let q: Vec<f64> = xs.iter().map(|&x| a.pdf(x)).collect::<Result<_, _>>()?;
                let err = q.iter().zip(&exact).map(|(a, e)| (a - e).abs()).collect();
                approx_cols.push((format!("q{stars}"), q));
                error_cols.push((format!("|q-q{stars}|"), err));
            }
            Err(e @ Error::ThresholdTooSmall { .. }) => {
                warnings.push(format!("order-{k} approximation omitted: {e}"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut columns = vec![("x".to_string(), xs), ("q".to_string(), exact)];
    columns.extend(approx_cols);
    columns.extend(error_cols);
    write(g, &sol, columns, &warnings)
}
