use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::witness::{find_witness, fn_value};
use super::{
    count_zeros_disc, in_pool, Construction, WindingCount, ZeroCertificate, ZeroError,
    CERT_VERSION,
};
use crate::kernel::{cauchy_row, KernelError, Matrix};
use crate::symcore::PolyPoint;

const NEWTON_MAX_ITER: usize = 50;
const NEWTON_STEP_TOL: f64 = 1e-13;
const DISTINCT_ZEROS: f64 = 1e-10;
const MIN_SEPARATION: f64 = 1e-12;
const COLLISION_RETRIES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftConfig {
    /// Radius `r` of the disc `D` around `lambda_1`; clamped to half the
    /// distance from `lambda_1` to the unit circle.
    pub disc_radius: f64,
    /// Samples of `|f_n|` on the circle `dD`.
    pub boundary_samples: usize,
    /// Both sides of the `dD x closed-unit-disc` grid for `max |h_n|`.
    pub grid_samples: usize,
    /// First attempt uses `1 - |t| = append_modulus_step`; each retry halves it.
    pub append_modulus_step: f64,
    pub max_retries: usize,
    /// Append `t` on the positive real axis; otherwise opposite to `lambda_1`.
    pub real_positive_append: bool,
    /// `t` must satisfy `(1 - |t|^2)^2 < safety * m`.
    pub safety: f64,
    /// Worker threads for the grid; 0 means the rayon default.
    pub parallelism: usize,
}

impl Default for LiftConfig {
    fn default() -> Self {
        Self {
            disc_radius: 1e-4,
            boundary_samples: 256,
            grid_samples: 64,
            append_modulus_step: 0.5,
            max_retries: 64,
            real_positive_append: true,
            safety: 0.5,
            parallelism: 0,
        }
    }
}

impl LiftConfig {
    pub fn validate(&self) -> Result<(), ZeroError> {
        let bad = |m: &str| Err(ZeroError::InvalidConfig(m.into()));
        if !(self.disc_radius > 0.0 && self.disc_radius < 1.0) {
            return bad("disc_radius must lie in (0, 1)");
        }
        if self.boundary_samples < 64 {
            return bad("boundary_samples must be at least 64");
        }
        if self.grid_samples < 4 {
            return bad("grid_samples must be at least 4");
        }
        if !(self.append_modulus_step > 0.0 && self.append_modulus_step < 1.0) {
            return bad("append_modulus_step must lie in (0, 1)");
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return bad("safety must lie in (0, 1]");
        }
        Ok(())
    }
}

/// One candidate for the appended coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftAttempt {
    pub t: Complex64,
    /// `(1 - |t|^2)^2`.
    pub attained: f64,
    /// `safety * m`.
    pub bound: f64,
    /// Whether `|f_n| > (1 - |t|^2)^2 |h_n(., t)|` held at every boundary sample.
    pub rouche_on_samples: bool,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftLog {
    pub radius: f64,
    pub f_min: f64,
    pub h_max: f64,
    pub m: f64,
    pub attempts: Vec<LiftAttempt>,
    pub winding: WindingCount,
    pub zeros_found: usize,
}

/// Context for one lift: the parent data with a free first coordinate.
struct Step<'a> {
    lambda: &'a [Complex64],
    mu: &'a [Complex64],
}

impl Step<'_> {
    /// `(n+1)`-dimensional matrix rows with first coordinate `x` and
    /// appended `t`; `corner` replaces the `(n+1, n+1)` entry when given.
    fn det(&self, x: Complex64, t: Complex64, corner: Option<Complex64>) -> Result<Complex64, ZeroError> {
        let mut mu = self.mu.to_vec();
        mu.push(t);
        let rows = std::iter::once(x)
            .chain(self.lambda[1..].iter().copied())
            .chain(std::iter::once(t))
            .map(|l| cauchy_row(l, &mu))
            .collect();
        let mut m = Matrix::from_rows(rows);
        let n = m.dim();
        if let Some(c) = corner {
            m.set(n - 1, n - 1, c);
        }
        for i in 0..n {
            for j in 0..n {
                if !m.get(i, j).is_finite() {
                    return Err(KernelError::SingularEntry { row: i, col: j }.into());
                }
            }
        }
        Ok(m.det())
    }

    /// `g_{n+1}(x, t)`.
    fn g(&self, x: Complex64, t: Complex64) -> Result<Complex64, ZeroError> {
        self.det(x, t, None)
    }

    /// `h_n(x, t)`: `g_{n+1}` with the corner entry removed, which is exactly
    /// `g_{n+1} - f_n(x) / (1 - |t|^2)^2` by linearity in that entry.
    fn h(&self, x: Complex64, t: Complex64) -> Result<Complex64, ZeroError> {
        self.det(x, t, Some(Complex64::new(0.0, 0.0)))
    }
}

fn circle(center: Complex64, radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| center + Complex64::from_polar(radius, TAU * k as f64 / count as f64))
        .collect()
}

/// Points of the closed unit disc on a polar grid with `count` nodes.
fn closed_disc_grid(count: usize) -> Vec<Complex64> {
    let rings = (count as f64).sqrt().floor().max(2.0) as usize;
    let spokes = (count / rings).max(1);
    let mut out = Vec::with_capacity(rings * spokes);
    for i in 0..rings {
        let r = i as f64 / (rings - 1) as f64;
        for k in 0..spokes {
            out.push(Complex64::from_polar(r, TAU * k as f64 / spokes as f64));
        }
    }
    out
}

fn newton(
    g: impl Fn(Complex64) -> Result<Complex64, ZeroError>,
    start: Complex64,
    h: f64,
) -> Result<Option<Complex64>, ZeroError> {
    let mut x = start;
    for _ in 0..NEWTON_MAX_ITER {
        let gx = g(x)?;
        if gx.norm() == 0.0 {
            return Ok(Some(x));
        }
        let dg = (g(x + h)? - g(x - h)?) / (2.0 * h);
        if dg.norm() == 0.0 || !dg.is_finite() {
            return Ok(None);
        }
        let step = gx / dg;
        x -= step;
        if !x.is_finite() {
            return Ok(None);
        }
        if step.norm() < NEWTON_STEP_TOL {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn min_separation(xs: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, a) in xs.iter().enumerate() {
        for b in &xs[i + 1..] {
            best = best.min((a - b).norm());
        }
    }
    best
}

/// One induction step `n -> n + 1`, with a log of the intermediate numbers.
pub fn lift_zero_logged(
    cert: &ZeroCertificate,
    config: &LiftConfig,
) -> Result<(ZeroCertificate, LiftLog), ZeroError> {
    config.validate()?;
    cert.validate()?;
    let mut radius = config
        .disc_radius
        .min(0.5 * (1.0 - cert.lambda.coords()[0].norm()));
    let mut last = None;
    for _ in 0..=COLLISION_RETRIES {
        match lift_at_radius(cert, config, radius) {
            Err(e @ ZeroError::DegenerateLift { .. }) => {
                last = Some(e);
                radius *= 0.5;
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

fn lift_at_radius(
    cert: &ZeroCertificate,
    config: &LiftConfig,
    radius: f64,
) -> Result<(ZeroCertificate, LiftLog), ZeroError> {
    let step = Step {
        lambda: cert.lambda.coords(),
        mu: cert.mu.coords(),
    };
    let center = step.lambda[0];
    let phase = if config.real_positive_append || center.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        -center / center.norm()
    };

    let boundary = circle(center, radius, config.boundary_samples);
    let f_abs = boundary
        .iter()
        .map(|&x| fn_value(&cert.lambda, &cert.mu, x).map(|(f, _)| f.norm()))
        .collect::<Result<Vec<_>, _>>()?;
    let f_min = f_abs.iter().copied().fold(f64::INFINITY, f64::min);
    if !(f_min > 0.0) {
        return Err(ZeroError::ContourTooClose { distance: 0.0 });
    }

    let grid_boundary = circle(center, radius, config.grid_samples);
    let grid_disc = closed_disc_grid(config.grid_samples);
    let h_max = in_pool(config.parallelism, || {
        grid_boundary
            .par_iter()
            .map(|&x| {
                grid_disc
                    .iter()
                    .map(|&t| step.h(x, t).map(|v| v.norm()))
                    .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))
            })
            .try_reduce(|| 0.0f64, |a, b| Ok(a.max(b)))
    })??;
    let m = if h_max > 0.0 { f_min / h_max } else { f64::INFINITY };
    let bound = config.safety * m;

    let mut attempts = Vec::new();
    let mut gap = config.append_modulus_step;
    let mut chosen = None;
    for _ in 0..=config.max_retries {
        let t = phase * (1.0 - gap);
        let one_minus_sq = gap * (2.0 - gap);
        let attained = one_minus_sq * one_minus_sq;
        let mut rouche_on_samples = false;
        if attained < bound {
            rouche_on_samples = true;
            for (&x, &f) in boundary.iter().zip(&f_abs) {
                if !(step.h(x, t)?.norm() * attained < f) {
                    rouche_on_samples = false;
                    break;
                }
            }
        }
        let accepted = attained < bound && rouche_on_samples;
        attempts.push(LiftAttempt {
            t,
            attained,
            bound,
            rouche_on_samples,
            accepted,
        });
        if accepted {
            chosen = Some(t);
            break;
        }
        gap *= 0.5;
    }
    let Some(t) = chosen else {
        let a = attempts.last().expect("at least one attempt");
        return Err(ZeroError::RoucheBoundViolated {
            attained: a.attained,
            bound: a.bound,
        });
    };

    let g = |x: Complex64| step.g(x, t);
    let winding = count_zeros_disc(g, center, radius)?;
    if winding.count < 1 {
        return Err(ZeroError::NoZeroInDisc);
    }
    let h = 1e-7 * radius;
    let mut starts = vec![center];
    starts.extend(circle(center, 0.5 * radius, 8));
    let mut zeros: Vec<Complex64> = Vec::new();
    for s in starts {
        if zeros.len() as i64 >= winding.count {
            break;
        }
        if let Some(z) = newton(g, s, h)? {
            if (z - center).norm() < radius && zeros.iter().all(|w| (w - z).norm() > DISTINCT_ZEROS) {
                zeros.push(z);
            }
        }
    }
    let new_first = zeros
        .iter()
        .copied()
        .min_by(|a, b| (a - center).norm().total_cmp(&(b - center).norm()))
        .ok_or(ZeroError::NoZeroInDisc)?;

    let mut lam = step.lambda.to_vec();
    lam[0] = new_first;
    lam.push(t);
    let mut mu = step.mu.to_vec();
    mu.push(t);
    let separation = min_separation(&lam).min(min_separation(&mu));
    if separation < MIN_SEPARATION {
        return Err(ZeroError::DegenerateLift { separation });
    }
    let lambda = PolyPoint::in_domain(lam)?;
    let mu = PolyPoint::in_domain(mu)?;
    let check = ZeroCertificate::measure(&lambda, &mu, &cert.tolerances)?;
    let witness_radius = config.disc_radius.min(0.5 * (1.0 - new_first.norm()));
    let fn_witness = find_witness(&lambda, &mu, witness_radius, &cert.tolerances, cert.seed)?;

    let lifted = ZeroCertificate {
        version: CERT_VERSION,
        n: cert.n + 1,
        lambda,
        mu,
        residual_rel: check.residual_rel,
        kernel_abs: check.kernel_abs,
        construction: Construction::Lift,
        parent: Some(Box::new(cert.clone())),
        fn_witness,
        seed: cert.seed,
        tolerances: cert.tolerances,
    };
    let log = LiftLog {
        radius,
        f_min,
        h_max,
        m,
        attempts,
        winding,
        zeros_found: zeros.len(),
    };
    Ok((lifted, log))
}

/// One induction step `n -> n + 1`.
pub fn lift_zero(cert: &ZeroCertificate, config: &LiftConfig) -> Result<ZeroCertificate, ZeroError> {
    lift_zero_logged(cert, config).map(|(c, _)| c)
}

/// Lifts repeatedly until dimension `n`.
pub fn lift_chain(
    cert: &ZeroCertificate,
    n: usize,
    config: &LiftConfig,
) -> Result<ZeroCertificate, ZeroError> {
    let mut cur = cert.clone();
    while cur.n < n {
        cur = lift_zero(&cur, config)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zerofind::{construct_zero_dim3, DEFAULT_MU1_MODULUS, DEFAULT_RHO};

    fn base() -> ZeroCertificate {
        construct_zero_dim3(DEFAULT_RHO, DEFAULT_MU1_MODULUS).unwrap()
    }

    #[test]
    fn single_lift() {
        let (cert, log) = lift_zero_logged(&base(), &LiftConfig::default()).unwrap();
        assert_eq!(cert.n, 4);
        assert!(cert.residual_rel < 1e-8);
        let t = cert.appended().unwrap();
        assert_eq!(t.im, 0.0);
        assert!(t.re > 0.0 && t.re < 1.0);
        assert_eq!(cert.mu.coords()[3], t);
        assert!(log.winding.count >= 1);
        assert!(log.zeros_found >= 1 && log.zeros_found as i64 <= log.winding.count);
        cert.validate().unwrap();
    }

    #[test]
    fn chain_to_six() {
        let cfg = LiftConfig::default();
        let cert = lift_chain(&base(), 6, &cfg).unwrap();
        for c in cert.lineage() {
            assert!(c.residual_rel < 1e-8, "n = {} residual {}", c.n, c.residual_rel);
            assert!(c.lambda.max_modulus() < 1.0 && c.mu.max_modulus() < 1.0);
        }
        assert_eq!(cert.lineage().len(), 4);
        cert.validate().unwrap();
    }

    #[test]
    fn coarse_step_needs_retries() {
        let strict = LiftConfig {
            max_retries: 0,
            ..LiftConfig::default()
        };
        assert!(matches!(
            lift_zero(&base(), &strict),
            Err(ZeroError::RoucheBoundViolated { .. })
        ));
        let (_, log) = lift_zero_logged(&base(), &LiftConfig::default()).unwrap();
        assert!(log.attempts.len() > 1);
        assert!(!log.attempts[0].accepted);
        assert!(log.attempts.last().unwrap().accepted);
    }

    #[test]
    fn thread_count_does_not_change_result() {
        let one = LiftConfig {
            parallelism: 1,
            ..LiftConfig::default()
        };
        let four = LiftConfig {
            parallelism: 4,
            ..LiftConfig::default()
        };
        assert_eq!(lift_zero(&base(), &one).unwrap(), lift_zero(&base(), &four).unwrap());
    }

    #[test]
    fn bad_config() {
        let cfg = LiftConfig {
            boundary_samples: 32,
            ..LiftConfig::default()
        };
        assert!(matches!(lift_zero(&base(), &cfg), Err(ZeroError::InvalidConfig(_))));
    }

    #[test]
    fn count_matches_refined_zeros_for_f3() {
        let cert = base();
        let center = cert.lambda.coords()[0];
        let f = |x| fn_value(&cert.lambda, &cert.mu, x).map(|(v, _)| v);
        let w = count_zeros_disc(f, center, 1e-4).unwrap();
        assert_eq!(w.count, 1);
        let z = newton(f, center + 3e-5, 1e-11).unwrap().unwrap();
        assert!((z - center).norm() < 1e-9);
    }
}
