use qsd_sr::asymptotics::{
    index_derivative_identity, lambda_approx, numerical_index_derivative, pdf_approx,
};
use qsd_sr::eigensolver::{dominant_eigenvalue, DEFAULT_TOL};
use qsd_sr::qsd::build_solution;
use qsd_sr::quadrature::Tolerance;
use qsd_sr::specfun::{lower_bound_l, speed_density, whittaker_w, WhittakerIndex};
use qsd_sr::{ModelParams, SpectralIndex};

fn p(mu: f64, a: f64) -> ModelParams {
    ModelParams::new(mu, a).unwrap()
}

#[test]
fn normalized_across_drifts_and_thresholds() {
    for &mu in &[0.5, 1.0, 1.5] {
        for &a in &[5.0, 20.0, 100.0, 1000.0] {
            let sol = build_solution(&p(mu, a), DEFAULT_TOL).unwrap();
            let mass = sol.mass_between(0.0, a, Tolerance::new(1e-14, 1e-12)).unwrap();
            assert!((mass - 1.0).abs() <= 1e-8, "mu={mu} A={a}: {mass}");
        }
    }
}

#[test]
fn approaches_the_stationary_law() {
    let sup_gap = |a: f64| {
        let pr = p(1.0, a);
        let sol = build_solution(&pr, DEFAULT_TOL).unwrap();
        (0..=1000)
            .map(|i| 0.1 + 9.9 * i as f64 / 1000.0)
            .map(|x| (sol.pdf(x) - speed_density(x, &pr)).abs())
            .fold(0.0, f64::max)
    };
    let gaps: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|&a| sup_gap(a)).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

#[test]
fn modes_shift_with_drift() {
    // Larger μ concentrates the law nearer 0.
    let modes: Vec<f64> = [0.5, 1.0, 1.5]
        .iter()
        .map(|&mu| build_solution(&p(mu, 20.0), DEFAULT_TOL).unwrap().mode().unwrap())
        .collect();
    assert!(modes.windows(2).all(|w| w[1] < w[0]), "{modes:?}");
    for (&mu, &m) in [0.5, 1.0, 1.5].iter().zip(&modes) {
        let sol = build_solution(&p(mu, 20.0), DEFAULT_TOL).unwrap();
        assert!(sol.pdf_derivative(m).abs() < 1e-10);
    }
}

#[test]
fn first_order_gap_shrinks_like_a_to_the_three_halves() {
    let table = [20.0, 30.0, 40.0, 50.0, 100.0, 500.0, 1000.0, 10000.0];
    for &a in &table {
        let pr = p(1.0, a);
        let gap = (dominant_eigenvalue(&pr, DEFAULT_TOL).unwrap().lambda
            - lambda_approx(1, &pr).unwrap())
        .abs();
        assert!(a.powf(1.5) * gap < 1.0, "A={a}: {}", a.powf(1.5) * gap);
    }
}

#[test]
fn first_index_derivative_is_exact_across_range() {
    for i in 0..=40 {
        let x = 0.1 + (20.0 - 0.1) * i as f64 / 40.0;
        let exact = index_derivative_identity(1, x).unwrap();
        let num = numerical_index_derivative(1, x).unwrap();
        assert!((num / exact - 1.0).abs() <= 1e-5, "x={x}");
    }
}

#[test]
fn second_order_coefficient_emerges_from_the_exact_function() {
    // [W(λ) − W(0) − λ·(2/μ²)e^{−u/2}]/λ² → (2/μ²)²e^{−u/2}L(u), with an O(λ) error.
    let pr = p(1.0, 20.0);
    let x = 10.0;
    let u = pr.whittaker_arg(x);
    let k = 2.0 / pr.mu_sq();
    let w = |l: f64| {
        let se = SpectralIndex::for_params(l, &pr).unwrap();
        whittaker_w(WhittakerIndex::from_spectral(1, &se).unwrap(), u).unwrap()
    };
    let target = k * k * (-0.5 * u).exp() * lower_bound_l(u).unwrap();
    let errs: Vec<f64> = [-4e-3, -2e-3, -1e-3]
        .iter()
        .map(|&l| ((w(l) - w(0.0) - l * k * (-0.5 * u).exp()) / (l * l) / target - 1.0).abs())
        .collect();
    assert!(errs.windows(2).all(|e| (1.6..2.4).contains(&(e[0] / e[1]))), "{errs:?}");
    assert!(errs[2] < 1e-2, "{errs:?}");
}

#[test]
fn approximate_densities_improve_with_order() {
    let pr = p(1.0, 20.0);
    let sol = build_solution(&pr, DEFAULT_TOL).unwrap();
    let sup_err = |order: u8| {
        (1..1000)
            .map(|i| 20.0 * i as f64 / 1000.0)
            .map(|x| (pdf_approx(order, x, &pr).unwrap() - sol.pdf(x)).abs())
            .fold(0.0, f64::max)
    };
    let e = [sup_err(1), sup_err(2), sup_err(3)];
    assert!(e[2] < e[1] && e[1] < e[0], "{e:?}");
}
