//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdisc::exactfield::{alg_sign, verify_appendix_a, verify_appendix_b, AlgNum, Sign, VerifyOptions};
use symdisc::kernel::{abc_coeffs, kernel_gn, kernel_gn_stable};
use symdisc::symcore::{elem_sym, roots_from_sym, PolyPoint};
use symdisc::verify::closed_form_max_error;
use symdisc::zerofind::{
    construct_zero_dim3, lift_zero, nu0, sample_nonvanishing, solve_abc_quadratic, x0,
    Construction, LiftConfig, SampleMode, DEFAULT_MU1_MODULUS, DEFAULT_RHO,
};

const EXACT_BUDGET: Duration = Duration::from_secs(10);
const X0_CENTER: f64 = 0.983345;
const X0_BAND: f64 = 1e-5;
const ROOT_TOL: f64 = 1e-10;
const DIM3_BUDGET: Duration = Duration::from_secs(1);
const DIM3_RESIDUAL: f64 = 1e-10;
const WITNESS_FACTOR: f64 = 1e3;
const LIFT_RESIDUAL: f64 = 1e-8;
const LIFT_BUDGET: Duration = Duration::from_secs(30);
const CLOSED_FORM_POINTS: usize = 1000;
const CLOSED_FORM_TOL: f64 = 1e-9;
const CONFLUENT_CASES: usize = 100;
const CONFLUENT_TOL: f64 = 1e-6;
const HERMITIAN_TOL: f64 = 1e-12;
const PERMUTATION_TOL: f64 = 1e-12;
const DIAGONAL_SAMPLES: usize = 10_000;
const ROUND_TRIP_TOL: f64 = 1e-9;
const SAMPLING_COUNT: usize = 100_000;
const SAMPLING_BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

fn disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn point(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> PolyPoint {
    PolyPoint::in_domain((0..n).map(|_| disc(rng, radius)).collect()).unwrap()
}

fn exact_verification() -> Outcome {
    let start = Instant::now();
    let mut report = verify_appendix_a();
    report.extend(verify_appendix_b(&VerifyOptions::default()));
    let elapsed = start.elapsed();
    let names = [
        "appendix_b.pi31",
        "appendix_b.pi32",
        "appendix_b.pi33",
        "appendix_b.a_value",
        "appendix_b.b_value",
        "appendix_b.c_value",
        "appendix_b.p_substitution",
        "appendix_b.discriminant_value",
        "appendix_b.discriminant_positive",
        "appendix_b.p0_positive",
        "appendix_b.p1_negative",
        "appendix_b.leading_positive",
        "appendix_b.smaller_root_in_unit_interval",
        "appendix_a.bracket_cubic",
        "appendix_a.determinant_reduction",
        "appendix_a.a_coefficient",
        "appendix_a.b_coefficient",
        "appendix_a.c_coefficient",
        "appendix_a.factorization",
    ];
    let missing: Vec<_> = names.iter().filter(|n| report.get(n).is_none()).collect();
    let failed: Vec<_> = report.failures().iter().map(|c| c.name.clone()).collect();
    check(
        missing.is_empty() && failed.is_empty() && elapsed < EXACT_BUDGET,
        format!(
            "{} exact checks, failures {failed:?}, missing {missing:?}, {elapsed:.2?} (budget {EXACT_BUDGET:?})",
            report.checks.len()
        ),
    )
}

/// `p(x) = (3√3-5)x² + (3√6-6√2)x + 4√3-6` at a rational point, exactly.
fn p_sign(x: &BigRational) -> Sign {
    let lead = AlgNum::from_ints(-5, 0, 3, 0, 1);
    let lin = AlgNum::from_ints(0, -6, 0, 3, 1);
    let cst = AlgNum::from_ints(-6, 0, 4, 0, 1);
    let x = AlgNum::from_rational(x.clone());
    let quad = &(&lead * &x) * &x;
    let value = &(&quad + &(&lin * &x)) + &cst;
    alg_sign(&value)
}

fn root_reproduction() -> Outcome {
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    if p_sign(&zero) != Sign::Positive || p_sign(&one) != Sign::Negative {
        return Err("p does not change sign on (0, 1)".into());
    }
    let (mut lo, mut hi) = (zero, one);
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..48 {
        let mid = (&lo + &hi) / &two;
        match p_sign(&mid) {
            Sign::Positive => lo = mid,
            Sign::Negative => hi = mid,
            Sign::Zero => {
                lo = mid.clone();
                hi = mid;
                break;
            }
        }
    }
    let to_f64 = |q: &BigRational| {
        q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()
    };
    let oracle = 0.5 * (to_f64(&lo) + to_f64(&hi));
    let in_band = (oracle - X0_CENTER).abs() <= X0_BAND;
    let closed_form_gap = (x0() - oracle).abs();
    let roots = solve_abc_quadratic(&abc_coeffs(nu0())).map_err(|e| e.to_string())?;
    let target = Complex64::from_polar(oracle, -FRAC_PI_4);
    let root_gap = (roots[0] - target).norm();
    check(
        in_band && closed_form_gap < 1e-12 && root_gap < ROOT_TOL,
        format!(
            "bisection x0 = {oracle:.15} (band {X0_CENTER} ± {X0_BAND:e}), closed form gap {closed_form_gap:.1e}, quadratic root gap {root_gap:.1e} (tol {ROOT_TOL:e})"
        ),
    )
}

fn dim3_certificate() -> Outcome {
    let start = Instant::now();
    let cert = construct_zero_dim3(DEFAULT_RHO, DEFAULT_MU1_MODULUS).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    cert.validate().map_err(|e| e.to_string())?;
    let w = cert.fn_witness;
    let witness_ratio = w.value_abs / (w.scale * cert.tolerances.certify);
    let ok = cert.n == 3
        && cert.lambda.max_modulus() < 1.0
        && cert.mu.max_modulus() < 1.0
        && cert.lambda.has_distinct_coords()
        && cert.mu.has_distinct_coords()
        && cert.residual_rel < DIM3_RESIDUAL
        && witness_ratio > WITNESS_FACTOR
        && elapsed < DIM3_BUDGET;
    check(
        ok,
        format!(
            "residual {:.2e} (tol {DIM3_RESIDUAL:e}), max modulus {:.6}, |f3|/(tol scale) = {witness_ratio:.2e} (> {WITNESS_FACTOR:e}), {elapsed:.2?} (budget {DIM3_BUDGET:?})",
            cert.residual_rel,
            cert.lambda.max_modulus().max(cert.mu.max_modulus())
        ),
    )
}

fn lifted_certificates() -> Outcome {
    let start = Instant::now();
    let config = LiftConfig::default();
    let mut cert = construct_zero_dim3(DEFAULT_RHO, DEFAULT_MU1_MODULUS).map_err(|e| e.to_string())?;
    let mut residuals = Vec::new();
    let mut ok = true;
    for n in 4..=6 {
        cert = lift_zero(&cert, &config).map_err(|e| format!("lift to {n}: {e}"))?;
        cert.validate().map_err(|e| e.to_string())?;
        let appended_ok = (3..n).all(|j| {
            let (l, m) = (cert.lambda.coords()[j], cert.mu.coords()[j]);
            l == m && l.im == 0.0 && l.re > 0.0 && l.re < 1.0
        });
        ok &= cert.n == n
            && cert.construction == Construction::Lift
            && cert.residual_rel < LIFT_RESIDUAL
            && appended_ok
            && cert.lambda.max_modulus() < 1.0
            && cert.mu.max_modulus() < 1.0;
        residuals.push(format!("n={n}: {:.2e}", cert.residual_rel));
    }
    let elapsed = start.elapsed();
    check(
        ok && elapsed < LIFT_BUDGET,
        format!(
            "residuals [{}] (tol {LIFT_RESIDUAL:e}), appended lambda_j = mu_j in (0, 1), {elapsed:.2?} (budget {LIFT_BUDGET:?})",
            residuals.join(", ")
        ),
    )
}

fn closed_form_equivalence() -> Outcome {
    let err = closed_form_max_error(CLOSED_FORM_POINTS, SEED);
    check(
        err < CLOSED_FORM_TOL,
        format!("{CLOSED_FORM_POINTS} points, max relative gap {err:.2e} (tol {CLOSED_FORM_TOL:e})"),
    )
}

/// Confluent case: `lambda` and/or `mu` carry a repeated coordinate (pair) or a
/// tripled one; the perturbed points split it symmetrically, so the kernel
/// depends on `eps^2` (pair) or `eps^3` (triple) and Richardson removes the
/// leading term.
fn confluent_case(rng: &mut ChaCha8Rng, case: usize) -> Result<f64, String> {
    let n = 2 + case % 3;
    let triple = n >= 3 && case.is_multiple_of(5);
    let kind = case % 3;
    let make = |rng: &mut ChaCha8Rng, confluent: bool| {
        let mut base: Vec<Complex64> = (0..n).map(|_| disc(rng, 0.8)).collect();
        let k = if confluent { if triple { 3 } else { 2 } } else { 0 };
        for j in 1..k {
            base[j] = base[0];
        }
        (base, k)
    };
    let (lam, kl) = make(rng, kind != 1);
    let (mu, km) = make(rng, kind != 0);
    let split = |v: &[Complex64], k: usize, eps: f64| {
        let mut out = v.to_vec();
        match k {
            2 => {
                out[0] += eps;
                out[1] -= eps;
            }
            3 => {
                for (j, c) in out.iter_mut().take(3).enumerate() {
                    *c += Complex64::from_polar(eps, TAU * j as f64 / 3.0);
                }
            }
            _ => {}
        }
        PolyPoint::in_domain(out).unwrap()
    };
    let eps = if triple { 1e-2 } else { 1e-3 };
    let at = |e: f64| kernel_gn(&split(&lam, kl, e), &split(&mu, km, e)).map(|k| k.value);
    let (full, half) = (at(eps).map_err(|e| e.to_string())?, at(eps / 2.0).map_err(|e| e.to_string())?);
    let extrapolated = if triple {
        (half * 8.0 - full) / 7.0
    } else {
        (half * 4.0 - full) / 3.0
    };
    let s = elem_sym(&PolyPoint::raw(lam).unwrap());
    let t = elem_sym(&PolyPoint::raw(mu).unwrap());
    let stable = kernel_gn_stable(&s, &t).map_err(|e| e.to_string())?.value;
    Ok(rel(stable, extrapolated))
}

fn confluent_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for case in 0..CONFLUENT_CASES {
        worst = worst.max(confluent_case(&mut rng, case)?);
    }
    check(
        worst < CONFLUENT_TOL,
        format!("{CONFLUENT_CASES} cases, max relative gap {worst:.2e} (tol {CONFLUENT_TOL:e})"),
    )
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut herm, mut perm) = (0.0f64, 0.0f64);
    for i in 0..500 {
        let n = 2 + i % 4;
        let l = point(&mut rng, n, 0.9);
        let m = point(&mut rng, n, 0.9);
        let k = kernel_gn(&l, &m).map_err(|e| e.to_string())?.value;
        let back = kernel_gn(&m, &l).map_err(|e| e.to_string())?.value;
        herm = herm.max(rel(back, k.conj()));
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.rotate_left(1 + i % (n - 1));
        sigma.swap(0, n - 1);
        let kp = kernel_gn(&l.permuted(&sigma), &m).map_err(|e| e.to_string())?.value;
        perm = perm.max(rel(kp, k));
    }
    let mut nonpositive = 0;
    for i in 0..DIAGONAL_SAMPLES {
        let l = point(&mut rng, 1 + i % 5, 0.95);
        let k = kernel_gn(&l, &l).map_err(|e| e.to_string())?.value;
        if !(k.re > 0.0 && k.im.abs() <= 1e-9 * k.re) {
            nonpositive += 1;
        }
    }
    let mut trip = 0.0f64;
    for i in 0..400 {
        let n = 1 + i % 8;
        let l = point(&mut rng, n, 0.95);
        let roots = roots_from_sym(&elem_sym(&l), i as u64).map_err(|e| e.to_string())?;
        let mut left = roots.clone();
        for c in l.coords() {
            let (j, d) = left
                .iter()
                .enumerate()
                .map(|(j, r)| (j, (r - c).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            trip = trip.max(d);
            left.swap_remove(j);
        }
    }
    check(
        herm < HERMITIAN_TOL && perm < PERMUTATION_TOL && nonpositive == 0 && trip < ROUND_TRIP_TOL,
        format!(
            "hermitian {herm:.1e} (tol {HERMITIAN_TOL:e}), permutation {perm:.1e} (tol {PERMUTATION_TOL:e}), diagonal non-positive {nonpositive}/{DIAGONAL_SAMPLES}, round trip {trip:.1e} (tol {ROUND_TRIP_TOL:e})"
        ),
    )
}

fn nonvanishing_sampling() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for mode in [SampleMode::G2Full, SampleMode::G3EqualThird] {
        let r = sample_nonvanishing(mode, SAMPLING_COUNT, SEED, 0).map_err(|e| e.to_string())?;
        ok &= r.min_scaled_delta > 0.0 && r.certified_zeros == 0 && r.skipped == 0;
        parts.push(format!(
            "{mode}: min |Delta|/scale {:.2e}, certified zeros {}",
            r.min_scaled_delta, r.certified_zeros
        ));
    }
    let elapsed = start.elapsed();
    check(
        ok && elapsed < SAMPLING_BUDGET,
        format!(
            "{SAMPLING_COUNT} samples each; {}; {elapsed:.2?} (budget {SAMPLING_BUDGET:?})",
            parts.join("; ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("exact verification of both appendices", exact_verification),
        ("root reproduction", root_reproduction),
        ("dimension-3 certificate", dim3_certificate),
        ("lifted certificates n = 4, 5, 6", lifted_certificates),
        ("closed form vs determinant formula", closed_form_equivalence),
        ("confluent consistency", confluent_consistency),
        ("property suite", property_suite),
        ("nonvanishing sampling", nonvanishing_sampling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
