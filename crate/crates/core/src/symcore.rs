//! Elementary symmetric polynomials and the symmetrization map.
//!
//! A point of the polydisc `D^n` is a [`PolyPoint`]; its image under the
//! symmetrization map (the vector of elementary symmetric polynomials) is a
//! [`SymPoint`]. The map is inverted by solving the monic polynomial whose
//! coefficients are the signed symmetric values, using Aberth–Ehrlich
//! simultaneous iteration.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Iteration cap of the simultaneous root finder.
pub const ROOT_MAX_ITER: usize = 500;

/// Width of the grey zone around the unit circle in membership tests.
pub const MEMBERSHIP_GUARD: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymError {
    #[error("coordinate {index} has modulus {modulus} >= 1")]
    OutsideDisc { index: usize, modulus: f64 },
    #[error("a point needs at least one coordinate")]
    Empty,
    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("root finder did not converge after {iterations} iterations")]
    SolverFailure { iterations: usize },
}

/// Point of `C^n` in pre-symmetrization coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyPoint {
    coords: Vec<Complex64>,
}

impl PolyPoint {
    /// Point of the open polydisc; every coordinate must have modulus `< 1`.
    pub fn in_domain(coords: Vec<Complex64>) -> Result<Self, SymError> {
        let p = Self::raw(coords)?;
        for (index, c) in p.coords.iter().enumerate() {
            let modulus = c.norm();
            if modulus >= 1.0 {
                return Err(SymError::OutsideDisc { index, modulus });
            }
        }
        Ok(p)
    }

    /// Arbitrary finite complex tuple, e.g. the unimodular reference point
    /// used by the dimension-3 construction.
    pub fn raw(coords: Vec<Complex64>) -> Result<Self, SymError> {
        if coords.is_empty() {
            return Err(SymError::Empty);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(SymError::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self, SymError> {
        Self::raw(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.coords
    }

    pub fn max_modulus(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when no two coordinates are bitwise equal.
    pub fn has_distinct_coords(&self) -> bool {
        let c = &self.coords;
        (0..c.len()).all(|i| (i + 1..c.len()).all(|j| c[i] != c[j]))
    }

    /// Smallest pairwise distance between coordinates (infinite for n = 1).
    pub fn min_separation(&self) -> f64 {
        let c = &self.coords;
        let mut best = f64::INFINITY;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                best = best.min((c[i] - c[j]).norm());
            }
        }
        best
    }

    /// Applies a permutation: output coordinate `k` is input coordinate `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim(), "permutation length mismatch");
        Self {
            coords: perm.iter().map(|&i| self.coords[i]).collect(),
        }
    }
}

/// Point of `C^n` in symmetrized coordinates `(s_1, ..., s_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymPoint {
    coords: Vec<Complex64>,
}

impl SymPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, SymError> {
        if coords.is_empty() {
            return Err(SymError::Empty);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(SymError::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Ascending coefficients of `x^n - s_1 x^{n-1} + s_2 x^{n-2} - ...`.
    pub fn monic_coefficients(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[n] = Complex64::new(1.0, 0.0);
        for (k, s) in self.coords.iter().enumerate() {
            let k = k + 1;
            c[n - k] = if k % 2 == 0 { *s } else { -*s };
        }
        c
    }
}

/// Elementary symmetric polynomials of the coordinates.
pub fn elem_sym(p: &PolyPoint) -> SymPoint {
    SymPoint {
        coords: elem_sym_values(p.coords()),
    }
}

/// `e_1, ..., e_n` of a slice, by the usual one-factor-at-a-time recurrence.
pub fn elem_sym_values(xs: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, &x) in xs.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += x * prev;
        }
    }
    e.remove(0);
    e
}

/// Value and derivative of a polynomial given by ascending coefficients.
pub(crate) fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `sum |c_i| |z|^i`, the scale of rounding error in a Horner evaluation.
fn horner_abs(c: &[Complex64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

/// All roots of the polynomial with symmetric values `s`, i.e. a preimage of
/// `s` under the symmetrization map. Deterministic for a fixed `seed`.
pub fn roots_from_sym(s: &SymPoint, seed: u64) -> Result<Vec<Complex64>, SymError> {
    let mut coeffs = s.monic_coefficients();
    let mut roots = Vec::with_capacity(s.dim());
    // exact zero roots: strip them before iterating
    while coeffs.len() > 1 && coeffs[0] == Complex64::new(0.0, 0.0) {
        coeffs.remove(0);
        roots.push(Complex64::new(0.0, 0.0));
    }
    if coeffs.len() > 1 {
        roots.extend(aberth(&coeffs, seed, ROOT_MAX_ITER)?);
    }
    Ok(roots)
}

fn initial_guesses(c: &[Complex64], seed: u64) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n].norm();
    let radius = (1..=n)
        .map(|k| (c[n - k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE.sqrt());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    let offset = 0.4 + rng.gen::<f64>() * tau / n as f64;
    (0..n)
        .map(|k| {
            let r = radius * (1.0 + 0.01 * rng.gen::<f64>());
            Complex64::from_polar(r, offset + tau * k as f64 / n as f64)
        })
        .collect()
}

fn aberth(c: &[Complex64], seed: u64, max_iter: usize) -> Result<Vec<Complex64>, SymError> {
    let n = c.len() - 1;
    let mut z = initial_guesses(c, seed);
    let mut done = vec![false; n];
    let eps = f64::EPSILON;
    for _ in 0..max_iter {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner_with_derivative(c, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let backward = 4.0 * (n as f64 + 1.0) * eps * horner_abs(c, z[k].norm());
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() <= 2.0 * eps * z[k].norm() || p.norm() <= backward {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(SymError::SolverFailure {
        iterations: max_iter,
    })
}

/// Roots grouped into clusters that numerically represent one multiple root.
///
/// Each approximation `z_k` carries a Weierstrass inclusion disk of radius
/// `2n |p(z_k) / prod_{j != k} (z_k - z_j)|`, inflated by the evaluation error
/// bound; overlapping disks are merged. A cluster of size `m` is replaced by
/// its centroid refined with Newton steps on `p^{(m-1)}`.
pub fn roots_with_multiplicity(
    s: &SymPoint,
    seed: u64,
) -> Result<Vec<(Complex64, usize)>, SymError> {
    let roots = roots_from_sym(s, seed)?;
    let coeffs = s.monic_coefficients();
    let n = roots.len();
    let eps = f64::EPSILON;
    let radius: Vec<f64> = (0..n)
        .map(|k| {
            let (p, _) = horner_with_derivative(&coeffs, roots[k]);
            let err = 4.0 * (n as f64 + 1.0) * eps * horner_abs(&coeffs, roots[k].norm());
            let denom: f64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (roots[k] - roots[j]).norm())
                .product();
            if denom == 0.0 {
                f64::INFINITY
            } else {
                2.0 * n as f64 * (p.norm() + err) / denom
            }
        })
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() <= radius[i] + radius[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut out: Vec<(Complex64, usize)> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let members: Vec<Complex64> = (0..n)
            .filter(|&j| find(&mut parent, j) == r)
            .map(|j| roots[j])
            .collect();
        let m = members.len();
        let centroid = members.iter().sum::<Complex64>() / m as f64;
        let center = if m == 1 {
            centroid
        } else {
            let spread = members
                .iter()
                .map(|z| (z - centroid).norm())
                .fold(0.0, f64::max);
            refine_multiple_root(&coeffs, centroid, m, spread)
        };
        out.push((center, m));
    }
    Ok(out)
}

fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * i as f64)
        .collect()
}

/// Newton on the `(m-1)`-th derivative, which has a simple root at a root of
/// multiplicity `m`. Falls back to the centroid if the iteration wanders off.
fn refine_multiple_root(c: &[Complex64], start: Complex64, m: usize, spread: f64) -> Complex64 {
    let mut d = c.to_vec();
    for _ in 1..m {
        d = derivative(&d);
    }
    let mut z = start;
    for _ in 0..8 {
        let (p, dp) = horner_with_derivative(&d, z);
        if p == Complex64::new(0.0, 0.0) || dp == Complex64::new(0.0, 0.0) {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= 2.0 * f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    if (z - start).norm() <= 2.0 * spread.max(f64::EPSILON) {
        z
    } else {
        start
    }
}

/// Outcome of a membership test for the open set `G_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Inside,
    Outside,
    /// Some root lies within [`MEMBERSHIP_GUARD`] of the unit circle.
    BoundaryIndeterminate,
}

pub fn membership(s: &SymPoint, seed: u64) -> Result<Membership, SymError> {
    let roots = roots_from_sym(s, seed)?;
    let mut result = Membership::Inside;
    for r in roots {
        let m = r.norm();
        if m > 1.0 + MEMBERSHIP_GUARD {
            return Ok(Membership::Outside);
        }
        if m >= 1.0 - MEMBERSHIP_GUARD {
            result = Membership::BoundaryIndeterminate;
        }
    }
    Ok(result)
}

/// True iff every preimage coordinate has modulus below `1 - MEMBERSHIP_GUARD`.
pub fn in_gn(s: &SymPoint) -> Result<bool, SymError> {
    Ok(membership(s, 0)? == Membership::Inside)
}

/// `prod_{j<k} (lambda_j - lambda_k)(conj(mu_j) - conj(mu_k))`.
pub fn vandermonde_pair(lambda: &PolyPoint, mu: &PolyPoint) -> Complex64 {
    assert_eq!(lambda.dim(), mu.dim(), "dimension mismatch");
    let (l, m) = (lambda.coords(), mu.coords());
    let mut v = Complex64::new(1.0, 0.0);
    for j in 0..l.len() {
        for k in j + 1..l.len() {
            v *= (l[j] - l[k]) * (m[j].conj() - m[k].conj());
        }
    }
    v
}
