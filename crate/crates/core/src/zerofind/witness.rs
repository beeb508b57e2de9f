use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Tolerances, ZeroCertificate, ZeroError};
use crate::kernel::delta_n_scaled;
use crate::symcore::PolyPoint;

/// Largest number of disc samples tried before giving up.
pub const WITNESS_SAMPLE_CAP: usize = 4096;

/// A point where `f_n` is visibly nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FnWitness {
    pub point: Complex64,
    /// `|f_n(point)|`.
    pub value_abs: f64,
    /// Hadamard scale of the matrix defining `f_n(point)`.
    pub scale: f64,
    /// Samples drawn, the successful one included.
    pub samples: usize,
}

/// `f_n(x) = Delta_n(x, lambda_2, .., lambda_n; mu)` and its scale.
pub fn fn_value(
    lambda: &PolyPoint,
    mu: &PolyPoint,
    x: Complex64,
) -> Result<(Complex64, f64), ZeroError> {
    let mut coords = lambda.coords().to_vec();
    coords[0] = x;
    Ok(delta_n_scaled(&PolyPoint::raw(coords)?, mu)?)
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * inv;
        i /= base;
        inv /= base as f64;
    }
    out
}

/// `index`-th point of the (2, 3) Halton sequence, shifted modulo 1 and
/// mapped onto the disc of given center and radius with uniform area density.
pub fn halton_disc(index: u64, shift: (f64, f64), center: Complex64, radius: f64) -> Complex64 {
    let u = (radical_inverse(index + 1, 2) + shift.0).fract();
    let v = (radical_inverse(index + 1, 3) + shift.1).fract();
    center + Complex64::from_polar(radius * u.sqrt(), TAU * v)
}

pub(crate) fn find_witness(
    lambda: &PolyPoint,
    mu: &PolyPoint,
    radius: f64,
    tolerances: &Tolerances,
    seed: u64,
) -> Result<FnWitness, ZeroError> {
    if !mu.has_distinct_coords() {
        return Err(ZeroError::InvalidCertificate("mu has repeated coordinates".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift = (rng.gen::<f64>(), rng.gen::<f64>());
    let center = lambda.coords()[0];
    let threshold = tolerances.witness_threshold();
    for i in 0..WITNESS_SAMPLE_CAP {
        let x = halton_disc(i as u64, shift, center, radius);
        let (f, scale) = fn_value(lambda, mu, x)?;
        if f.norm() > threshold * scale {
            return Ok(FnWitness {
                point: x,
                value_abs: f.norm(),
                scale,
                samples: i + 1,
            });
        }
    }
    Err(ZeroError::WitnessNotFound {
        samples: WITNESS_SAMPLE_CAP,
    })
}

/// Searches `D(lambda_1, radius)` for a point showing `f_n` is not
/// identically zero.
pub fn fn_nontrivial(cert: &ZeroCertificate, radius: f64) -> Result<FnWitness, ZeroError> {
    find_witness(&cert.lambda, &cert.mu, radius, &cert.tolerances, cert.seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerofind::{construct_zero_dim3, DEFAULT_MU1_MODULUS, DEFAULT_RHO};

    #[test]
    fn halton_points_stay_in_disc() {
        let c = Complex64::new(0.3, -0.2);
        for i in 0..500 {
            assert!((halton_disc(i, (0.7, 0.1), c, 0.05) - c).norm() <= 0.05);
        }
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
    }

    #[test]
    fn dim3_witness_is_quick() {
        let cert = construct_zero_dim3(DEFAULT_RHO, DEFAULT_MU1_MODULUS).unwrap();
        let w = fn_nontrivial(&cert, 1e-4).unwrap();
        assert!(w.samples <= 64, "{} samples", w.samples);
        assert!(w.value_abs > 1e3 * cert.tolerances.certify * w.scale);
        assert!((w.point - cert.lambda.coords()[0]).norm() <= 1e-4);
    }

    #[test]
    fn generic_dimension_two_data() {
        // lambda_1 is free; (lambda_2, mu_1, mu_2) generic
        let c = |re, im| Complex64::new(re, im);
        let lambda = PolyPoint::raw(vec![c(0.1, 0.1), c(-0.3, 0.2)]).unwrap();
        let mu = PolyPoint::raw(vec![c(0.4, -0.1), c(0.0, 0.5)]).unwrap();
        let w = find_witness(&lambda, &mu, 0.2, &Tolerances::default(), 0).unwrap();
        assert_eq!(w.samples, 1);
    }

    #[test]
    fn repeated_mu_rejected() {
        let lambda = PolyPoint::from_reals(&[0.1, 0.2]).unwrap();
        let mu = PolyPoint::from_reals(&[0.3, 0.3]).unwrap();
        assert!(find_witness(&lambda, &mu, 0.1, &Tolerances::default(), 0).is_err());
    }
}
