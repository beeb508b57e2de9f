//! Dimension 3 with `mu_3 = 0`: the kernel reduces to a quadratic in
//! `z = conj(mu_2) / conj(mu_1)` whose coefficients are symmetric functions
//! of `nu_j = lambda_j conj(mu_1)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::KernelError;
use crate::symcore::elem_sym_values;

/// Coefficients of `a z^2 - b z + 2c` at a given `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticData {
    pub nu: [Complex64; 3],
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl QuadraticData {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.a * z * z - self.b * z + self.c * 2.0
    }
}

/// `a = e2 (2 - e1) + e3 (2 e1 - 3)`,
/// `b = (e1 - 2)(e2 - 2 e1 + 3) + 3 (e3 - e1 + 2)`,
/// `c = e2 - 2 e1 + 3`, with `e_k` the elementary symmetric values of `nu`.
pub fn abc_coeffs(nu: [Complex64; 3]) -> QuadraticData {
    let e = elem_sym_values(&nu);
    let (e1, e2, e3) = (e[0], e[1], e[2]);
    let two = Complex64::new(2.0, 0.0);
    let three = Complex64::new(3.0, 0.0);
    let c = e2 - e1 * 2.0 + three;
    QuadraticData {
        nu,
        a: e2 * (two - e1) + e3 * (e1 * 2.0 - three),
        b: (e1 - two) * c + (e3 - e1 + two) * 3.0,
        c,
    }
}

/// `K(pi_3(lambda), pi_3(mu_1, mu_2, 0))` from the quadratic closed form.
pub fn kernel_g3_mu3zero(
    lambda: [Complex64; 3],
    mu12: [Complex64; 2],
) -> Result<Complex64, KernelError> {
    let [mu1, mu2] = mu12;
    if mu1 == Complex64::new(0.0, 0.0) {
        return Err(KernelError::MuOneZero);
    }
    let z = mu2.conj() / mu1.conj();
    let nu = lambda.map(|l| l * mu1.conj());
    let q = abc_coeffs(nu);
    let mut denom = Complex64::new(PI.powi(3), 0.0);
    for l in lambda {
        for m in [mu1, mu2] {
            let d = Complex64::new(1.0, 0.0) - l * m.conj();
            denom *= d * d;
        }
    }
    Ok(q.eval(z) / denom)
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(A, B, C)` read off from the bracket
///
/// ```text
/// (nu1 + nu3 - 2)(z nu2 + z nu3 - 2)(1 - z nu1)^2 (1 - nu2)^2
///   - (nu2 + nu3 - 2)(z nu1 + z nu3 - 2)(1 - nu1)^2 (1 - z nu2)^2
/// ```
///
/// expanded as a cubic in `z`: the `z^3` coefficient is `A`, the constant
/// term is `-2C` and the `z` coefficient is `B + 2C`.
pub fn bracket_coeffs_abc(nu: [Complex64; 3]) -> [Complex64; 3] {
    let cubic = bracket_cubic(nu);
    let a = cubic[3];
    let c = -cubic[0] / 2.0;
    let b = cubic[1] - c * 2.0;
    [a, b, c]
}

/// Ascending z-coefficients of the bracket above.
pub fn bracket_cubic(nu: [Complex64; 3]) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let [n1, n2, n3] = nu;
    // (p + n3 - 2)(z (q + n3) - 2)(1 - z p)^2 (1 - q)^2
    let term = |p: Complex64, q: Complex64| {
        let lin = [-two, q + n3];
        let sq = poly_mul(&[one, -p], &[one, -p]);
        let k = (p + n3 - two) * (one - q) * (one - q);
        poly_mul(&lin, &sq).into_iter().map(|v| v * k).collect::<Vec<_>>()
    };
    let first = term(n1, n2);
    let second = term(n2, n1);
    first.iter().zip(&second).map(|(x, y)| x - y).collect()
}

/// `det[[(1 - nu_j)^-2, (1 - z nu_j)^-2, 1]]_{j=1..3}`.
pub fn reduced_determinant_g3(nu: [Complex64; 3], z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let rows: Vec<Vec<Complex64>> = nu
        .iter()
        .map(|&v| {
            let p = one - v;
            let q = one - z * v;
            vec![(p * p).inv(), (q * q).inv(), one]
        })
        .collect();
    super::Matrix::from_rows(rows).det()
}

/// `(nu1 - nu3)(nu2 - nu3) z (z - 1)(A z^2 - B z + 2C) / prod_j (1 - nu_j)^2 (1 - z nu_j)^2`,
/// the factored form of [`reduced_determinant_g3`].
pub fn factored_determinant_g3(nu: [Complex64; 3], z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let [a, b, c] = bracket_coeffs_abc(nu);
    let [n1, n2, n3] = nu;
    let mut denom = one;
    for v in nu {
        let p = one - v;
        let q = one - z * v;
        denom *= p * p * q * q;
    }
    (n1 - n3) * (n2 - n3) * z * (z - one) * (a * z * z - b * z + c * 2.0) / denom
}
