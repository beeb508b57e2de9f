use num_complex::Complex64;

use super::ZeroError;
use crate::kernel::QuadraticData;

/// Roots of `a z^2 - b z + 2c`, sorted by modulus.
///
/// Uses the cancellation-free pair `q = (b + sgn sqrt(b^2 - 8ac)) / 2`,
/// `z = q / a`, `z' = 2c / q`, followed by one Newton step on each root.
pub fn solve_abc_quadratic(q: &QuadraticData) -> Result<Vec<Complex64>, ZeroError> {
    let zero = Complex64::new(0.0, 0.0);
    let (a, b, c2) = (q.a, q.b, q.c * 2.0);
    if a == zero {
        if b == zero {
            return Err(ZeroError::NoSolution);
        }
        return Ok(vec![c2 / b]);
    }
    let disc = (b * b - a * c2 * 4.0).sqrt();
    // pick the sign that avoids cancellation in b +- disc
    let s = if (b.conj() * disc).re >= 0.0 { b + disc } else { b - disc };
    let mut roots = if s == zero {
        // b = 0 and disc = 0: double root at zero
        vec![zero, zero]
    } else {
        let half = s / 2.0;
        vec![half / a, c2 / half]
    };
    for z in roots.iter_mut() {
        let d = a * *z * 2.0 - b;
        if d != zero {
            *z -= (a * *z * *z - b * *z + c2) / d;
        }
    }
    roots.sort_by(|x, y| x.norm().total_cmp(&y.norm()));
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::abc_coeffs;
    use proptest::prelude::*;

    fn quad(a: f64, b: f64, c: f64) -> QuadraticData {
        let z = Complex64::new(0.0, 0.0);
        QuadraticData {
            nu: [z; 3],
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(solve_abc_quadratic(&quad(0.0, 1.0, 1.0)).unwrap(), vec![2.0.into()]);
        let r = solve_abc_quadratic(&quad(1.0, 3.0, 1.0)).unwrap();
        assert!((r[0] - 1.0).norm() < 1e-15 && (r[1] - 2.0).norm() < 1e-15);
        assert_eq!(solve_abc_quadratic(&quad(0.0, 0.0, 1.0)), Err(ZeroError::NoSolution));
    }

    #[test]
    fn reference_root() {
        let q = abc_coeffs(crate::zerofind::nu0());
        let r = solve_abc_quadratic(&q).unwrap();
        let expected = Complex64::from_polar(crate::zerofind::x0(), -std::f64::consts::FRAC_PI_4);
        assert!((r[0] - expected).norm() < 1e-12, "{} vs {}", r[0], expected);
        assert!(r[1].norm() > 1.0);
    }

    proptest! {
        #[test]
        fn residual_bound(ar in -2.0..2.0f64, ai in -2.0..2.0f64, br in -2.0..2.0f64,
                          bi in -2.0..2.0f64, cr in -2.0..2.0f64, ci in -2.0..2.0f64) {
            let z = Complex64::new(0.0, 0.0);
            let q = QuadraticData {
                nu: [z; 3],
                a: Complex64::new(ar, ai),
                b: Complex64::new(br, bi),
                c: Complex64::new(cr, ci),
            };
            prop_assume!(q.a.norm() > 1e-3 || q.b.norm() > 1e-3);
            let scale = q.a.norm() + q.b.norm() + q.c.norm();
            let roots = solve_abc_quadratic(&q).unwrap();
            for w in roots.windows(2) {
                prop_assert!(w[0].norm() <= w[1].norm());
            }
            for r in roots {
                prop_assert!(q.eval(r).norm() < 1e-12 * scale * r.norm_sqr().max(1.0));
            }
        }
    }
}
