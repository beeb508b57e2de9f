//! Bergman kernel of the symmetrized polydisc.
//!
//! For `lambda, mu` in the polydisc with pairwise distinct coordinates,
//!
//! ```text
//! K(pi(lambda), pi(mu)) = det[(1 - lambda_j conj(mu_k))^-2]
//!                         / (pi^n prod_{j<k} (lambda_j - lambda_k)(conj(mu_j) - conj(mu_k)))
//! ```
//!
//! The second argument is always the conjugated one. The determinant in the
//! numerator is [`delta_n`]; the whole quotient is [`kernel_gn`]. Where
//! coordinates coincide the quotient extends smoothly, and
//! [`kernel_gn_confluent`] evaluates that extension with derivative rows.

mod det;
pub mod dim3;

pub use det::Matrix;
pub use dim3::{
    abc_coeffs, bracket_coeffs_abc, bracket_cubic, factored_determinant_g3, kernel_g3_mu3zero,
    reduced_determinant_g3, QuadraticData,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symcore::{self, PolyPoint, SymError, SymPoint};

/// Largest supported dimension.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} is outside the supported range 1..={MAX_DIM}")]
    DimensionUnsupported(usize),
    #[error("entry ({row}, {col}) is singular: 1 - lambda_j conj(mu_k) = 0")]
    SingularEntry { row: usize, col: usize },
    #[error("{argument} has a repeated coordinate; use the confluent evaluation")]
    RepeatedCoordinate { argument: &'static str },
    #[error("{argument} is not in the symmetrized polydisc")]
    NotInDomain { argument: &'static str },
    #[error("mu_1 = 0: permute mu_1, mu_2 or use the confluent evaluation")]
    MuOneZero,
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Which kernel argument enters conjugated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjugated {
    Second,
}

/// A kernel value together with the pieces it was assembled from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub value: Complex64,
    /// The Cauchy-power determinant (or its confluent counterpart).
    pub numerator: Complex64,
    /// `pi^n` times the Vandermonde pair product.
    pub denominator: Complex64,
    /// Product of the row norms of the matrix whose determinant is `numerator`,
    /// so that `|numerator| / scale` lies in `[0, 1]`.
    pub scale: f64,
    pub conjugated: Conjugated,
}

impl KernelEval {
    /// `|numerator| / scale`, the quantity zero certificates are measured by.
    pub fn residual_rel(&self) -> f64 {
        self.numerator.norm() / self.scale
    }
}

fn check_dims(lambda: &PolyPoint, mu: &PolyPoint) -> Result<usize, KernelError> {
    let n = lambda.dim();
    if n != mu.dim() {
        return Err(KernelError::DimensionMismatch(n, mu.dim()));
    }
    if n == 0 || n > MAX_DIM {
        return Err(KernelError::DimensionUnsupported(n));
    }
    Ok(n)
}

/// `(1 - x w)^-2` as a row over the conjugated second-argument coordinates.
pub fn cauchy_row(x: Complex64, mu: &[Complex64]) -> Vec<Complex64> {
    mu.iter()
        .map(|m| {
            let d = Complex64::new(1.0, 0.0) - x * m.conj();
            (d * d).inv()
        })
        .collect()
}

/// Derivative in `x` of [`cauchy_row`]: `2 w (1 - x w)^-3`.
pub fn cauchy_row_derivative(x: Complex64, mu: &[Complex64]) -> Vec<Complex64> {
    mu.iter()
        .map(|m| {
            let w = m.conj();
            let d = Complex64::new(1.0, 0.0) - x * w;
            w * 2.0 / (d * d * d)
        })
        .collect()
}

/// The Cauchy-power matrix `[(1 - lambda_j conj(mu_k))^-2]`.
pub fn cauchy_power_matrix(lambda: &PolyPoint, mu: &PolyPoint) -> Result<Matrix, KernelError> {
    check_dims(lambda, mu)?;
    let mut m = Matrix::zeros(lambda.dim());
    for (j, l) in lambda.coords().iter().enumerate() {
        for (k, v) in mu.coords().iter().enumerate() {
            let d = Complex64::new(1.0, 0.0) - l * v.conj();
            if d == Complex64::new(0.0, 0.0) {
                return Err(KernelError::SingularEntry { row: j, col: k });
            }
            m.set(j, k, (d * d).inv());
        }
    }
    Ok(m)
}

/// Determinant of the Cauchy-power matrix.
pub fn delta_n(lambda: &PolyPoint, mu: &PolyPoint) -> Result<Complex64, KernelError> {
    Ok(cauchy_power_matrix(lambda, mu)?.det())
}

/// Determinant together with its Hadamard scale.
pub fn delta_n_scaled(lambda: &PolyPoint, mu: &PolyPoint) -> Result<(Complex64, f64), KernelError> {
    let m = cauchy_power_matrix(lambda, mu)?;
    Ok((m.det(), m.hadamard_bound()))
}

fn pi_pow(n: usize) -> f64 {
    PI.powi(n as i32)
}

/// Kernel value from the determinant formula; both arguments must have
/// pairwise distinct coordinates.
pub fn kernel_gn(lambda: &PolyPoint, mu: &PolyPoint) -> Result<KernelEval, KernelError> {
    let n = check_dims(lambda, mu)?;
    if !lambda.has_distinct_coords() {
        return Err(KernelError::RepeatedCoordinate { argument: "lambda" });
    }
    if !mu.has_distinct_coords() {
        return Err(KernelError::RepeatedCoordinate { argument: "mu" });
    }
    let m = cauchy_power_matrix(lambda, mu)?;
    let numerator = m.det();
    let denominator = symcore::vandermonde_pair(lambda, mu) * pi_pow(n);
    Ok(KernelEval {
        value: numerator / denominator,
        numerator,
        denominator,
        scale: m.hadamard_bound(),
        conjugated: Conjugated::Second,
    })
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `d_u^d d_w^e (1 - u w)^-2 / (d! e!)`.
pub fn confluent_entry(u: Complex64, d: usize, w: Complex64, e: usize) -> Complex64 {
    let base = (Complex64::new(1.0, 0.0) - u * w).inv();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..=d.min(e) {
        let coeff = binomial(d, i) * binomial(d + 1 + e - i, e - i);
        let power = (d + 2 + e - i) as i32;
        sum += w.powi((d - i) as i32) * u.powi((e - i) as i32) * base.powi(power) * coeff;
    }
    sum * (d + 1) as f64
}

/// Groups bitwise-equal coordinates, keeping first-occurrence order.
pub fn group_coordinates(p: &PolyPoint) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for &x in p.coords() {
        match groups.iter_mut().find(|g| g.0 == x) {
            Some(g) => g.1 += 1,
            None => groups.push((x, 1)),
        }
    }
    groups
}

fn expand_nodes(groups: &[(Complex64, usize)]) -> Vec<(Complex64, usize, usize)> {
    // (node, derivative order, group index)
    groups
        .iter()
        .enumerate()
        .flat_map(|(g, &(x, m))| (0..m).map(move |d| (x, d, g)))
        .collect()
}

/// `prod_{j<k, different groups} (x_k - x_j)` in flattened node order.
fn between_group_vandermonde(nodes: &[(Complex64, usize, usize)]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for j in 0..nodes.len() {
        for k in j + 1..nodes.len() {
            if nodes[j].2 != nodes[k].2 {
                v *= nodes[k].0 - nodes[j].0;
            }
        }
    }
    v
}

/// Smooth extension of the kernel at grouped preimages: `(node, multiplicity)`
/// lists for each argument. Repeated rows and columns are replaced by
/// normalized derivatives, and the matching factors drop out of the
/// Vandermonde product.
pub fn kernel_from_groups(
    lambda: &[(Complex64, usize)],
    mu: &[(Complex64, usize)],
) -> Result<KernelEval, KernelError> {
    let rows = expand_nodes(lambda);
    let cols = expand_nodes(mu);
    let n = rows.len();
    if n != cols.len() {
        return Err(KernelError::DimensionMismatch(n, cols.len()));
    }
    if n == 0 || n > MAX_DIM {
        return Err(KernelError::DimensionUnsupported(n));
    }
    let mut m = Matrix::zeros(n);
    for (j, &(u, d, _)) in rows.iter().enumerate() {
        for (k, &(v, e, _)) in cols.iter().enumerate() {
            let w = v.conj();
            if Complex64::new(1.0, 0.0) - u * w == Complex64::new(0.0, 0.0) {
                return Err(KernelError::SingularEntry { row: j, col: k });
            }
            m.set(j, k, confluent_entry(u, d, w, e));
        }
    }
    let numerator = m.det();
    let conj_cols: Vec<_> = cols.iter().map(|&(v, e, g)| (v.conj(), e, g)).collect();
    let denominator =
        between_group_vandermonde(&rows) * between_group_vandermonde(&conj_cols) * pi_pow(n);
    Ok(KernelEval {
        value: numerator / denominator,
        numerator,
        denominator,
        scale: m.hadamard_bound(),
        conjugated: Conjugated::Second,
    })
}

/// Kernel at preimages that may contain exactly repeated coordinates.
pub fn kernel_gn_confluent(lambda: &PolyPoint, mu: &PolyPoint) -> Result<KernelEval, KernelError> {
    check_dims(lambda, mu)?;
    kernel_from_groups(&group_coordinates(lambda), &group_coordinates(mu))
}

/// Kernel on `G_n x G_n` in symmetrized coordinates, valid at every point
/// including those whose preimages have coincident coordinates.
pub fn kernel_gn_stable(s: &SymPoint, t: &SymPoint) -> Result<KernelEval, KernelError> {
    if s.dim() != t.dim() {
        return Err(KernelError::DimensionMismatch(s.dim(), t.dim()));
    }
    if !symcore::in_gn(s)? {
        return Err(KernelError::NotInDomain { argument: "s" });
    }
    if !symcore::in_gn(t)? {
        return Err(KernelError::NotInDomain { argument: "t" });
    }
    let gs = symcore::roots_with_multiplicity(s, 0)?;
    let gt = symcore::roots_with_multiplicity(t, 0)?;
    if gs.iter().chain(gt.iter()).all(|g| g.1 == 1) {
        let lambda = PolyPoint::raw(gs.iter().map(|g| g.0).collect())?;
        let mu = PolyPoint::raw(gt.iter().map(|g| g.0).collect())?;
        return kernel_gn(&lambda, &mu);
    }
    kernel_from_groups(&gs, &gt)
}
