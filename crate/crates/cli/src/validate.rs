use num_complex::Complex64;
use serde::Serialize;

use qsd_sr::asymptotics::{index_derivative_identity, numerical_index_derivative};
use qsd_sr::eigensolver::{dominant_eigenvalue, DEFAULT_TOL};
use qsd_sr::oracle::{
    integral_identity_check, norm_identity_check, simulate_killed_sr, sturm_liouville_eigen,
    EmpiricalLaw, SimulationConfig,
};
use qsd_sr::qsd::build_solution;
use qsd_sr::quadrature::Tolerance;
use qsd_sr::{ModelParams, Result};

use crate::args::{Suite, ValidateArgs};
use crate::failure::{params, tolerance, Failure, Outcome};
use crate::output::{emit, to_json};
use crate::table1::GOLDEN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
struct Check {
    suite: &'static str,
    name: String,
    status: Status,
    residual: Option<f64>,
    tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct Report {
    passed: bool,
    failed: Vec<String>,
    checks: Vec<Check>,
}

/// Kolmogorov–Smirnov critical value at the 1% level.
const KS_99: f64 = 1.6276;

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        self.checks.push(Check {
            suite: self.suite.name(),
            name: name.into(),
            status: if residual <= tol { Status::Pass } else { Status::Fail },
            residual: Some(residual),
            tolerance: Some(tol),
            detail: None,
        });
    }

    fn record_detail(&mut self, name: impl Into<String>, residual: f64, tol: f64, detail: String) {
        self.record(name, residual, tol);
        self.checks.last_mut().unwrap().detail = Some(detail);
    }

    /// A suite that stopped on an error counts as one failed check.
    fn error(&mut self, e: qsd_sr::Error) {
        self.checks.push(Check {
            suite: self.suite.name(),
            name: "suite".into(),
            status: Status::Fail,
            residual: None,
            tolerance: None,
            detail: Some(e.to_string()),
        });
    }
}

fn eigenvalues(r: &mut Recorder, tol: f64) -> Result<()> {
    for &(a, published) in &GOLDEN {
        let l = dominant_eigenvalue(&ModelParams::new(1.0, a)?, DEFAULT_TOL)?.lambda;
        r.record(format!("table1 A={a}"), (-l - published).abs(), tol);
    }
    Ok(())
}

fn normalization(r: &mut Recorder) -> Result<()> {
    let mut worst: [(f64, String); 4] = Default::default();
    let mut bump = |i: usize, v: f64, tag: &str| {
        if !(v <= worst[i].0) {
            worst[i] = (v, tag.to_string());
        }
    };
    for &mu in &[0.5, 1.0, 1.5] {
        for &a in &[5.0, 20.0, 100.0] {
            let tag = format!("worst at mu={mu}, A={a}");
            let sol = build_solution(&ModelParams::new(mu, a)?, DEFAULT_TOL)?;
            let mass = sol.mass_between(0.0, a, Tolerance::new(1e-14, 1e-12))?;
            bump(0, (mass - 1.0).abs(), &tag);
            bump(1, (sol.boundary_flux_identity() / sol.lambda() - 1.0).abs(), &tag);
            let m = sol.moments(20)?;
            for n in 1..=20 {
                let rel = m.recurrence_residual(n).unwrap().abs() / m.recurrence_scale(n).unwrap();
                bump(2, rel, &tag);
            }
            for n in 1..=5u32 {
                let q = sol.moment_by_quadrature(n, Tolerance::new(0.0, 1e-11))?;
                bump(3, (q / m.get(n as usize).unwrap() - 1.0).abs(), &tag);
            }
        }
    }
    let names = ["mass", "boundary flux", "moment recurrence", "moments vs quadrature"];
    let tols = [1e-8, 1e-5, 1e-12, 1e-6];
    for ((name, tol), (v, tag)) in names.iter().zip(tols).zip(worst) {
        r.record_detail(*name, v, tol, tag);
    }
    Ok(())
}

fn identities(r: &mut Recorder, p: &ModelParams) -> Result<()> {
    for (b, z, tol) in [
        (Complex64::new(0.2, 0.0), 1.0, 1e-8),
        (Complex64::new(0.5, 0.0), 2.0, 1e-14),
        (Complex64::new(0.0, 0.25), 0.5, 1e-7),
    ] {
        r.record(format!("integral identity b={b} z={z}"), integral_identity_check(b, z)?, tol);
    }
    let l = dominant_eigenvalue(p, DEFAULT_TOL)?.lambda;
    let se = qsd_sr::SpectralIndex::for_params(l, p)?;
    r.record("eigenfunction norm", norm_identity_check(p, &se, 2e-3)?.relative_residual, 1e-4);
    for k in 1..=3u8 {
        let mut worst: f64 = 0.0;
        for &x in &[0.5, 2.0, 10.0] {
            let exact = index_derivative_identity(k, x)?;
            worst = worst.max((numerical_index_derivative(k, x)? / exact - 1.0).abs());
        }
        r.record(format!("index derivative k={k}"), worst, 1e-5);
    }
    Ok(())
}

fn oracle(r: &mut Recorder, p: &ModelParams, n_grid: usize) -> Result<()> {
    let sol = build_solution(p, DEFAULT_TOL)?;
    let g = sturm_liouville_eigen(p, n_grid)?;
    r.record("finite-volume eigenvalue", (g.lambda_hat / sol.lambda() - 1.0).abs(), 1e-4);
    let dev = g
        .grid
        .iter()
        .zip(&g.q_hat)
        .map(|(&x, &q)| (q - sol.pdf(x)).abs())
        .fold(0.0, f64::max);
    r.record("finite-volume density", dev, 1e-4);
    Ok(())
}

fn monte_carlo(r: &mut Recorder, p: &ModelParams, args: &ValidateArgs) -> Result<()> {
    let sol = build_solution(p, DEFAULT_TOL)?;
    let a = p.threshold();
    let t = args.horizon;
    let mut laws: Vec<EmpiricalLaw> = Vec::new();
    for (i, h) in [0.0, 0.25 * a, 0.75 * a].into_iter().enumerate() {
        let mut cfg = SimulationConfig::new(h, args.dt, t, args.paths, args.seed.wrapping_add(i as u64));
        cfg.checkpoints = vec![0.5 * t, 0.75 * t, t];
        let law = simulate_killed_sr(p, &cfg)?;
        let band = KS_99 / (law.n_survivors as f64).sqrt();
        r.record_detail(
            format!("ks vs cdf r={h}"),
            law.ks_distance(|x| sol.cdf(x)),
            band,
            format!("{} survivors of {}", law.n_survivors, law.n_paths_total),
        );
        laws.push(law);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let (n, m) = (laws[i].n_survivors as f64, laws[j].n_survivors as f64);
            r.record(
                format!("ks r={} vs r={}", laws[i].headstart, laws[j].headstart),
                laws[i].ks_two_sample(&laws[j]),
                KS_99 * ((n + m) / (n * m)).sqrt(),
            );
        }
    }
    let rate = laws[1].survival_decay_rate().unwrap_or(f64::NAN);
    r.record_detail(
        "survival decay rate",
        (rate / sol.lambda() - 1.0).abs(),
        0.1,
        format!("fitted {rate}, lambda {}", sol.lambda()),
    );
    Ok(())
}

pub fn run(args: &ValidateArgs) -> Outcome {
    let tol = tolerance(args.tol)?;
    let p = params(args.mu, args.threshold)?;
    if args.grid < 100 {
        return Err(Failure::Usage(format!("--grid must be at least 100, got {}", args.grid)));
    }
    if !(args.dt > 0.0 && args.horizon > args.dt && args.paths > 0) {
        return Err(Failure::Usage(format!(
            "need --dt > 0, --horizon > --dt and --paths > 0 (dt = {}, horizon = {}, paths = {})",
            args.dt, args.horizon, args.paths
        )));
    }
    let mut checks = Vec::new();
    for suite in [Suite::Eigenvalues, Suite::Normalization, Suite::Identities, Suite::Oracle, Suite::Mc] {
        let mut r = Recorder {
            suite,
            checks: Vec::new(),
        };
        if args.skip.contains(&suite) {
            checks.push(Check {
                suite: suite.name(),
                name: "suite".into(),
                status: Status::Skipped,
                residual: None,
                tolerance: None,
                detail: None,
            });
            continue;
        }
        let result = match suite {
            Suite::Eigenvalues => eigenvalues(&mut r, tol),
            Suite::Normalization => normalization(&mut r),
            Suite::Identities => identities(&mut r, &p),
            Suite::Oracle => oracle(&mut r, &p, args.grid),
            Suite::Mc => monte_carlo(&mut r, &p, args),
        };
        if let Err(e) = result {
            r.error(e);
        }
        checks.extend(r.checks);
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| format!("{}: {}", c.suite, c.name))
        .collect();
    let report = Report {
        passed: failed.is_empty(),
        failed: failed.clone(),
        checks,
    };
    emit(&to_json(&report), args.out.as_deref())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(failed))
    }
}
