use num_complex::Complex64;
use proptest::prelude::*;

use qsd_sr::eigensolver::{dominant_eigenvalue, eigen_bracket, DEFAULT_TOL, RESIDUAL_TOL};
use qsd_sr::oracle::integral_identity_check;
use qsd_sr::qsd::build_solution;
use qsd_sr::specfun::{whittaker_w, whittaker_w_real_b, WhittakerIndex};
use qsd_sr::ModelParams;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn real_index_sign_symmetry(a in 0u8..=2, b in 0.0f64..0.5, z in 0.01f64..80.0) {
        let plus = whittaker_w_real_b(a, b, z).unwrap();
        let minus = whittaker_w_real_b(a, -b, z).unwrap();
        prop_assert!((plus - minus).abs() <= 1e-11 * plus.abs(), "{plus} vs {minus}");
    }

    #[test]
    fn imaginary_index_sign_symmetry(a in 0u8..=2, beta in 0.0f64..3.0, z in 0.01f64..80.0) {
        let plus = whittaker_w(WhittakerIndex::imaginary(a, beta).unwrap(), z).unwrap();
        let minus = whittaker_w(WhittakerIndex::imaginary(a, -beta).unwrap(), z).unwrap();
        prop_assert!((plus - minus).abs() <= 1e-11 * plus.abs().max(1e-300), "{plus} vs {minus}");
    }

    #[test]
    fn whittaker_equation_residual(
        a in 0u8..=2,
        b in 0.0f64..0.5,
        imaginary in any::<bool>(),
        z in 0.2f64..80.0,
    ) {
        let idx = if imaginary {
            WhittakerIndex::imaginary(a, 4.0 * b).unwrap()
        } else {
            WhittakerIndex::real(a, b).unwrap()
        };
        let w = |t: f64| whittaker_w(idx, t).unwrap();
        let h = 1e-2 * z.min(1.0);
        let d2 = (-w(z + 2.0 * h) + 16.0 * w(z + h) - 30.0 * w(z) + 16.0 * w(z - h) - w(z - 2.0 * h))
            / (12.0 * h * h);
        let coef = -0.25 + a as f64 / z + (0.25 - idx.b_squared()) / (z * z);
        let scale = d2.abs() + (coef * w(z)).abs();
        prop_assert!((d2 + coef * w(z)).abs() <= 1e-6 * scale, "residual {} scale {scale}", d2 + coef * w(z));
    }

    #[test]
    fn eigenvalue_residual_bracket_and_mu_sign(mu in 0.3f64..3.0, a in 2.0f64..2000.0) {
        let p = ModelParams::new(mu, a).unwrap();
        let r = dominant_eigenvalue(&p, DEFAULT_TOL).unwrap();
        prop_assert!(r.residual <= RESIDUAL_TOL);
        prop_assert!(eigen_bracket(&p).contains(r.lambda));
        let m = dominant_eigenvalue(&ModelParams::new(-mu, a).unwrap(), DEFAULT_TOL).unwrap();
        prop_assert_eq!(r.lambda, m.lambda);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn integral_identity_real(b in 0.0f64..=0.5, z in 0.2f64..20.0) {
        let r = integral_identity_check(Complex64::new(b, 0.0), z).unwrap();
        prop_assert!(r <= 1e-8, "residual {r}");
    }

    #[test]
    fn integral_identity_imaginary(beta in 0.0f64..2.0, z in 0.2f64..20.0) {
        let r = integral_identity_check(Complex64::new(0.0, beta), z).unwrap();
        prop_assert!(r <= 1e-8, "residual {r}");
    }

    #[test]
    fn cdf_is_the_integral_of_pdf(mu in 0.4f64..2.0, a in 3.0f64..300.0, t in 0.05f64..0.95) {
        let sol = build_solution(&ModelParams::new(mu, a).unwrap(), DEFAULT_TOL).unwrap();
        let x = t * a;
        let h = 1e-4 * x;
        let fd = (sol.cdf(x + h) - sol.cdf(x - h)) / (2.0 * h);
        let scale = sol.pdf(x).max(1.0 / a);
        prop_assert!((fd - sol.pdf(x)).abs() <= 1e-6 * scale, "fd {fd} pdf {}", sol.pdf(x));
    }

    #[test]
    fn density_is_a_probability_law(mu in 0.4f64..2.0, a in 3.0f64..300.0) {
        let sol = build_solution(&ModelParams::new(mu, a).unwrap(), DEFAULT_TOL).unwrap();
        let mass = sol
            .mass_between(0.0, a, qsd_sr::quadrature::Tolerance::new(1e-14, 1e-12))
            .unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-8);
        prop_assert_eq!(sol.cdf(a), 1.0);
        prop_assert_eq!(sol.pdf(a), 0.0);
        let mode = sol.mode().unwrap();
        prop_assert!(mode > 0.0 && mode < a);
        prop_assert!(sol.variance() >= 0.0);
    }
}
