use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ZeroError;

/// Smallest admissible `|g / g'|` on the contour.
pub const CONTOUR_GUARD: f64 = 1e-8;
/// Largest admissible distance between the integral and the nearest integer.
pub const MAX_GAP: f64 = 0.1;

const START_NODES: usize = 64;
const MAX_NODES: usize = 1 << 16;
const CONVERGED: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingCount {
    pub count: i64,
    /// `|integral - count|`.
    pub gap: f64,
    /// Trapezoid nodes used by the final estimate.
    pub nodes: usize,
}

/// Number of zeros of `g` inside the circle `|x - center| = radius`,
/// counted with multiplicity through `(1 / 2 pi i) ∮ g'/g`.
///
/// The trapezoid rule is doubled from 64 nodes until two successive
/// estimates agree; `g'` comes from central differences with step
/// `1e-7 radius`.
pub fn count_zeros_disc<G>(g: G, center: Complex64, radius: f64) -> Result<WindingCount, ZeroError>
where
    G: Fn(Complex64) -> Result<Complex64, ZeroError>,
{
    if !(radius > 0.0) {
        return Err(ZeroError::InvalidConfig(format!("contour radius {radius}")));
    }
    let h = 1e-7 * radius;
    let term = |k: usize, n: usize| -> Result<Complex64, ZeroError> {
        let dir = Complex64::from_polar(1.0, TAU * k as f64 / n as f64);
        let x = center + dir * radius;
        let gx = g(x)?;
        let dg = (g(x + h)? - g(x - h)?) / (2.0 * h);
        let distance = if dg.norm() == 0.0 {
            f64::INFINITY
        } else {
            (gx / dg).norm()
        };
        if !(distance >= CONTOUR_GUARD) || gx.norm() == 0.0 {
            return Err(ZeroError::ContourTooClose { distance });
        }
        Ok(dg / gx * dir)
    };

    let mut n = START_NODES;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += term(k, n)?;
    }
    let mut estimate = (sum * radius / n as f64).re;
    loop {
        // the new nodes are the odd ones of the doubled rule
        let mut fresh = Complex64::new(0.0, 0.0);
        for k in 0..n {
            fresh += term(2 * k + 1, 2 * n)?;
        }
        sum += fresh;
        n *= 2;
        let next = (sum * radius / n as f64).re;
        let settled = (next - estimate).abs() < CONVERGED;
        estimate = next;
        if settled || n >= MAX_NODES {
            break;
        }
    }
    let count = estimate.round();
    let gap = (estimate - count).abs();
    if gap > MAX_GAP {
        return Err(ZeroError::NonIntegerWinding {
            winding: estimate,
            gap,
        });
    }
    Ok(WindingCount {
        count: count as i64,
        gap,
        nodes: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_constant() {
        let w = count_zeros_disc(Ok, c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(w.count, 1);
        let w = count_zeros_disc(|_| Ok(c(1.0, 0.0)), c(0.0, 0.0), 1.0).unwrap();
        assert_eq!(w.count, 0);
    }

    #[test]
    fn multiplicities_and_outside_zeros() {
        let g = |x: Complex64| Ok((x - 0.1) * (x - 0.1) * (x + c(0.0, 0.3)) * (x - 2.0));
        assert_eq!(count_zeros_disc(g, c(0.0, 0.0), 0.5).unwrap().count, 3);
        assert_eq!(count_zeros_disc(g, c(2.0, 0.0), 0.5).unwrap().count, 1);
    }

    #[test]
    fn invariant_under_nonvanishing_factor() {
        let g = |x: Complex64| Ok((x - c(0.2, 0.1)) * (x + 0.4));
        let ge = |x: Complex64| Ok((x - c(0.2, 0.1)) * (x + 0.4) * (x * 3.0).exp());
        for r in [0.1, 0.3, 0.6] {
            let a = count_zeros_disc(g, c(0.1, 0.0), r).unwrap().count;
            let b = count_zeros_disc(ge, c(0.1, 0.0), r).unwrap().count;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_on_contour() {
        let r = count_zeros_disc(|x| Ok(x - 1.0), c(0.0, 0.0), 1.0);
        assert!(matches!(r, Err(ZeroError::ContourTooClose { .. })));
    }
}
