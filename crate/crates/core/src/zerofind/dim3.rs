use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

use num_complex::Complex64;

use super::witness::find_witness;
use super::{solve_abc_quadratic, Construction, Tolerances, ZeroCertificate, ZeroError, CERT_VERSION};
use crate::kernel::abc_coeffs;
use crate::symcore::PolyPoint;

pub const DEFAULT_RHO: f64 = 0.999;
pub const DEFAULT_MU1_MODULUS: f64 = 0.9995;

/// `(e^{i pi/6}, e^{i pi/3}, e^{-i pi/6})`, the unimodular point at which the
/// quadratic has a root inside the disc.
pub fn nu0() -> [Complex64; 3] {
    [
        Complex64::from_polar(1.0, FRAC_PI_6),
        Complex64::from_polar(1.0, FRAC_PI_3),
        Complex64::from_polar(1.0, -FRAC_PI_6),
    ]
}

/// Modulus of the smaller root at `nu0`:
/// `(6 - 3 sqrt3 - sqrt(40 sqrt3 - 69)) / (sqrt2 (3 sqrt3 - 5))`.
pub fn x0() -> f64 {
    let r3 = 3f64.sqrt();
    // 40 sqrt3 - 69 = 39 / (40 sqrt3 + 69), without the cancellation
    let root = (39.0 / (40.0 * r3 + 69.0)).sqrt();
    (6.0 - 3.0 * r3 - root) / (2f64.sqrt() * (3.0 * r3 - 5.0))
}

/// Certificate for `n = 3` with `nu = rho nu0`, `mu_1 = mu1_modulus` (real),
/// `lambda_j = nu_j / mu_1`, `mu_2 = conj(z) mu_1`, `mu_3 = 0`.
pub fn construct_zero_dim3(rho: f64, mu1_modulus: f64) -> Result<ZeroCertificate, ZeroError> {
    construct_zero_dim3_with(rho, mu1_modulus, &Tolerances::default(), 0, 1e-4)
}

/// [`construct_zero_dim3`] with explicit tolerances, witness seed and
/// witness disc radius (clamped to half the distance from `lambda_1` to the
/// unit circle).
pub fn construct_zero_dim3_with(
    rho: f64,
    mu1_modulus: f64,
    tolerances: &Tolerances,
    seed: u64,
    witness_radius: f64,
) -> Result<ZeroCertificate, ZeroError> {
    if !(rho > 0.0 && rho < mu1_modulus && mu1_modulus < 1.0) {
        return Err(ZeroError::InvalidScaling { rho, mu1_modulus });
    }
    let nu = nu0().map(|v| v * rho);
    let q = abc_coeffs(nu);
    let roots = match solve_abc_quadratic(&q) {
        Ok(r) => r,
        Err(ZeroError::NoSolution) => return Err(ZeroError::NoRootInUnitDisc),
        Err(e) => return Err(e),
    };
    let target = Complex64::from_polar(x0(), -FRAC_PI_4);
    let z = roots
        .into_iter()
        .filter(|z| z.norm() < 1.0)
        .min_by(|a, b| (a - target).norm().total_cmp(&(b - target).norm()))
        .ok_or(ZeroError::NoRootInUnitDisc)?;
    let mu1 = Complex64::new(mu1_modulus, 0.0);
    let lambda = PolyPoint::in_domain(nu.iter().map(|v| v / mu1.conj()).collect())?;
    let mu = PolyPoint::in_domain(vec![mu1, z.conj() * mu1, Complex64::new(0.0, 0.0)])?;
    let check = ZeroCertificate::measure(&lambda, &mu, tolerances)?;
    let radius = witness_radius.min(0.5 * (1.0 - lambda.coords()[0].norm()));
    let fn_witness = find_witness(&lambda, &mu, radius, tolerances, seed)?;
    Ok(ZeroCertificate {
        version: CERT_VERSION,
        n: 3,
        lambda,
        mu,
        residual_rel: check.residual_rel,
        kernel_abs: check.kernel_abs,
        construction: Construction::Dim3,
        parent: None,
        fn_witness,
        seed,
        tolerances: *tolerances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::delta_n_scaled;

    #[test]
    fn reference_modulus() {
        assert!((x0() - 0.983_341_919_893_987_1).abs() < 1e-14);
    }

    #[test]
    fn default_certificate() {
        let cert = construct_zero_dim3(DEFAULT_RHO, DEFAULT_MU1_MODULUS).unwrap();
        assert!(cert.residual_rel < 1e-10);
        assert!(cert.lambda.max_modulus() < 1.0 && cert.mu.max_modulus() < 1.0);
        assert!(cert.lambda.has_distinct_coords() && cert.mu.has_distinct_coords());
        let (d, scale) = delta_n_scaled(&cert.lambda, &cert.mu).unwrap();
        assert!(d.norm() < 1e-10 * scale);
        assert_eq!(cert.mu.coords()[2], Complex64::new(0.0, 0.0));
        assert_eq!(cert.mu.coords()[0].im, 0.0);
        cert.validate().unwrap();
    }

    #[test]
    fn invalid_scalings() {
        for (rho, m) in [(0.999, 0.999), (0.999, 0.5), (0.5, 1.0), (0.0, 0.5), (-0.1, 0.5)] {
            assert!(
                matches!(construct_zero_dim3(rho, m), Err(ZeroError::InvalidScaling { .. })),
                "{rho} {m}"
            );
        }
    }

    #[test]
    fn small_rho_has_no_root_in_disc() {
        for rho in [1e-300, 1e-6, 0.5, 0.9] {
            assert_eq!(construct_zero_dim3(rho, 0.9995), Err(ZeroError::NoRootInUnitDisc));
        }
    }
}
