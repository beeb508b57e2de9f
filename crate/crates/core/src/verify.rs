//! The full check list: exact identities plus the floating-point suites
//! that tie the closed forms to the determinant formula.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactfield::{abc_exact, nu0_exact, verify_appendix_a, verify_appendix_b};
use crate::exactfield::{VerificationReport, VerifyOptions};
use crate::kernel::{
    abc_coeffs, bracket_coeffs_abc, bracket_cubic, factored_determinant_g3, kernel_g3_mu3zero,
    kernel_gn, reduced_determinant_g3, Matrix,
};
use crate::symcore::PolyPoint;
use crate::zerofind::nu0;

/// Seed of every sampled suite below.
pub const NUMERIC_SEED: u64 = 0;
pub const CLOSED_FORM_POINTS: usize = 1000;
pub const CLOSED_FORM_TOL: f64 = 1e-9;
pub const CHAIN_POINTS: usize = 100;
pub const CHAIN_TOL: f64 = 1e-10;
pub const MOMENT_CASES: usize = 100;
pub const MOMENT_TOL: f64 = 1e-9;

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Largest relative gap between the dimension-3 closed form and the
/// determinant formula over `points` seeded draws.
pub fn closed_form_max_error(points: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < points {
        let lambda: Vec<Complex64> = (0..3).map(|_| disc_point(&mut rng, 0.95)).collect();
        let mu1 = disc_point(&mut rng, 0.95);
        let mu2 = disc_point(&mut rng, 0.95);
        let (Ok(l), Ok(m)) = (
            PolyPoint::in_domain(lambda.clone()),
            PolyPoint::in_domain(vec![mu1, mu2, Complex64::new(0.0, 0.0)]),
        ) else {
            continue;
        };
        let (Ok(direct), Ok(closed)) = (
            kernel_gn(&l, &m),
            kernel_g3_mu3zero([lambda[0], lambda[1], lambda[2]], [mu1, mu2]),
        ) else {
            continue;
        };
        worst = worst.max(rel(direct.value, closed));
        done += 1;
    }
    worst
}

/// Largest relative gap, over seeded `(nu, z)`, between the reduced
/// determinant and its factored form, and between the bracket and
/// `(z - 1)(A z^2 - B z + 2C)`.
pub fn appendix_a_chain_max_error(points: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut det_worst, mut bracket_worst) = (0.0f64, 0.0f64);
    for _ in 0..points {
        let nu = [0; 3].map(|_| disc_point(&mut rng, 0.95));
        let z = disc_point(&mut rng, 0.95);
        det_worst = det_worst.max(rel(
            reduced_determinant_g3(nu, z),
            factored_determinant_g3(nu, z),
        ));
        let cubic = bracket_cubic(nu);
        let lhs = cubic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
        let [a, b, c] = bracket_coeffs_abc(nu);
        let rhs = (z - 1.0) * (a * z * z - b * z + c * 2.0);
        bracket_worst = bracket_worst.max(rel(lhs, rhs));
    }
    (det_worst, bracket_worst)
}

fn det3(rows: [[Complex64; 3]; 3]) -> Complex64 {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).det()
}

fn cauchy_sq(l: Complex64, m: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) - l * m.conj();
    (d * d).inv()
}

/// Taylor coefficients of `f_3(x) = Delta_3(x, lambda_2, lambda_3; mu)` at 0
/// compared with `(j + 1) det[conj(mu)^j; row lambda_2; row lambda_3]`.
/// Returns the largest relative gap with the corrected second row
/// `(.., (1 - lambda_2 conj(mu_3))^-2)` and the smallest gap when the third
/// entry of that row is `(1 - lambda_2 conj(mu_2))^-2` instead.
pub fn moment_determinant_errors(cases: usize, seed: u64) -> (f64, f64) {
    const NODES: usize = 128;
    const RADIUS: f64 = 0.5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst, mut typo_best) = (0.0f64, f64::INFINITY);
    for _ in 0..cases {
        let l2 = disc_point(&mut rng, 0.9);
        let l3 = disc_point(&mut rng, 0.9);
        let mu = [0; 3].map(|_| disc_point(&mut rng, 0.9));
        let row = |l: Complex64| [cauchy_sq(l, mu[0]), cauchy_sq(l, mu[1]), cauchy_sq(l, mu[2])];
        let f3 = |x: Complex64| det3([row(x), row(l2), row(l3)]);
        let samples: Vec<Complex64> = (0..NODES)
            .map(|k| f3(Complex64::from_polar(RADIUS, TAU * k as f64 / NODES as f64)))
            .collect();
        for j in 0..3 {
            let coeff = samples
                .iter()
                .enumerate()
                .map(|(k, v)| v * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / NODES as f64))
                .sum::<Complex64>()
                / (NODES as f64 * RADIUS.powi(j as i32));
            let moments = mu.map(|m| m.conj().powi(j as i32));
            let exact = det3([moments, row(l2), row(l3)]) * (j + 1) as f64;
            worst = worst.max(rel(coeff, exact));
            let mut typo = row(l2);
            typo[2] = cauchy_sq(l2, mu[1]);
            let printed = det3([moments, typo, row(l3)]) * (j + 1) as f64;
            typo_best = typo_best.min(rel(coeff, printed));
        }
    }
    (worst, typo_best)
}

/// Every check: the exact identities of both appendices, then the numeric
/// suites.
pub fn verify_paper(options: &VerifyOptions) -> VerificationReport {
    let mut report = verify_appendix_a();
    report.extend(verify_appendix_b(options));

    let exact = abc_exact(&nu0_exact()).map(|v| v.to_c64());
    let float = abc_coeffs(nu0());
    let gap = [float.a, float.b, float.c]
        .iter()
        .zip(&exact)
        .map(|(f, e)| rel(*f, *e))
        .fold(0.0, f64::max);
    report.push(
        "numeric.abc_float_vs_exact",
        "floating a, b, c at nu0 match the exact values to 1e-14 relative",
        gap < 1e-14,
        Some(format!("max relative gap {gap:.3e}")),
    );

    let err = closed_form_max_error(CLOSED_FORM_POINTS, NUMERIC_SEED);
    report.push(
        "numeric.closed_form_vs_determinant",
        "the dimension-3 quadratic closed form equals the determinant formula at 1000 seeded points to 1e-9 relative",
        err < CLOSED_FORM_TOL,
        Some(format!("max relative gap {err:.3e}")),
    );

    let (det_err, bracket_err) = appendix_a_chain_max_error(CHAIN_POINTS, NUMERIC_SEED);
    report.push(
        "numeric.reduced_determinant_factorization",
        "det[(1-nu_j)^-2, (1-z nu_j)^-2, 1] equals its factored form at 100 seeded points to 1e-10 relative",
        det_err < CHAIN_TOL,
        Some(format!("max relative gap {det_err:.3e}")),
    );
    report.push(
        "numeric.bracket_factorization",
        "the bracket equals (z-1)(A z^2 - B z + 2C) at 100 seeded points to 1e-10 relative",
        bracket_err < CHAIN_TOL,
        Some(format!("max relative gap {bracket_err:.3e}")),
    );

    let (moment_err, typo_err) = moment_determinant_errors(MOMENT_CASES, NUMERIC_SEED);
    report.push(
        "numeric.f3_moment_determinants",
        "the j-th Taylor coefficient of f_3 at 0 is (j+1) det[conj(mu)^j; row lambda_2; row lambda_3], second row ending in (1 - lambda_2 conj(mu_3))^-2",
        moment_err < MOMENT_TOL && typo_err > 1e-3,
        Some(format!(
            "max relative gap {moment_err:.3e}; with (1 - lambda_2 conj(mu_2))^-2 in that slot the gap is at least {typo_err:.3e}"
        )),
    );
    report
}
