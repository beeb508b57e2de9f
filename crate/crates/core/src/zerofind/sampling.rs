use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{in_pool, Tolerances, ZeroError};
use crate::kernel::kernel_gn;
use crate::symcore::PolyPoint;

/// Samples are drawn from `(1 - SAMPLE_SHRINK) D^n`.
pub const SAMPLE_SHRINK: f64 = 1e-3;
const CHUNK: usize = 4096;
const DIAGONAL_DIM: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Independent `lambda, mu` in `D^2`.
    G2Full,
    /// `lambda, mu` in `D^3` with `lambda_3 = mu_3`.
    G3EqualThird,
    /// `lambda = mu` in `D^3`.
    Diagonal,
}

impl SampleMode {
    pub fn dim(self) -> usize {
        match self {
            SampleMode::G2Full => 2,
            SampleMode::G3EqualThird | SampleMode::Diagonal => DIAGONAL_DIM,
        }
    }
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleMode::G2Full => "g2_full",
            SampleMode::G3EqualThird => "g3_equal_third",
            SampleMode::Diagonal => "diagonal",
        })
    }
}

impl FromStr for SampleMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "g2_full" => Ok(SampleMode::G2Full),
            "g3_equal_third" => Ok(SampleMode::G3EqualThird),
            "diagonal" => Ok(SampleMode::Diagonal),
            _ => Err(format!("unknown mode {s:?} (g2_full | g3_equal_third | diagonal)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub mode: SampleMode,
    pub samples: usize,
    pub seed: u64,
    /// Smallest `|Delta_n| / scale` seen.
    pub min_scaled_delta: f64,
    pub argmin_lambda: PolyPoint,
    pub argmin_mu: PolyPoint,
    /// Smallest `|K|` seen.
    pub min_kernel_abs: f64,
    /// Samples whose scaled determinant fell below the certification tolerance.
    pub certified_zeros: usize,
    /// Diagonal mode only: samples whose kernel value was not real positive.
    pub nonpositive_diagonal: usize,
    /// Samples skipped because a coordinate repeated.
    pub skipped: usize,
}

#[derive(Clone)]
struct Partial {
    min_scaled: f64,
    argmin: (usize, Vec<Complex64>, Vec<Complex64>),
    min_kernel: f64,
    certified: usize,
    nonpositive: usize,
    skipped: usize,
}

impl Partial {
    fn empty() -> Self {
        Self {
            min_scaled: f64::INFINITY,
            argmin: (usize::MAX, Vec::new(), Vec::new()),
            min_kernel: f64::INFINITY,
            certified: 0,
            nonpositive: 0,
            skipped: 0,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        // ties go to the lower sample index, independent of scheduling
        if o.min_scaled < self.min_scaled
            || (o.min_scaled == self.min_scaled && o.argmin.0 < self.argmin.0)
        {
            self.min_scaled = o.min_scaled;
            self.argmin = o.argmin;
        }
        self.min_kernel = self.min_kernel.min(o.min_kernel);
        self.certified += o.certified;
        self.nonpositive += o.nonpositive;
        self.skipped += o.skipped;
        self
    }
}

fn disc_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = (1.0 - SAMPLE_SHRINK) * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, TAU * rng.gen::<f64>())
}

fn draw(mode: SampleMode, rng: &mut ChaCha8Rng) -> (Vec<Complex64>, Vec<Complex64>) {
    let n = mode.dim();
    let lambda: Vec<Complex64> = (0..n).map(|_| disc_point(rng)).collect();
    let mu = match mode {
        SampleMode::G2Full => (0..n).map(|_| disc_point(rng)).collect(),
        SampleMode::G3EqualThird => {
            let mut m: Vec<Complex64> = (0..n - 1).map(|_| disc_point(rng)).collect();
            m.push(lambda[n - 1]);
            m
        }
        SampleMode::Diagonal => lambda.clone(),
    };
    (lambda, mu)
}

fn run_chunk(mode: SampleMode, seed: u64, chunk: usize, len: usize, tol: f64) -> Partial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let mut acc = Partial::empty();
    for i in 0..len {
        let index = chunk * CHUNK + i;
        let (l, m) = draw(mode, &mut rng);
        let (Ok(lp), Ok(mp)) = (PolyPoint::in_domain(l.clone()), PolyPoint::in_domain(m.clone())) else {
            acc.skipped += 1;
            continue;
        };
        let Ok(eval) = kernel_gn(&lp, &mp) else {
            acc.skipped += 1;
            continue;
        };
        let scaled = eval.residual_rel();
        if scaled < acc.min_scaled {
            acc.min_scaled = scaled;
            acc.argmin = (index, l, m);
        }
        acc.min_kernel = acc.min_kernel.min(eval.value.norm());
        if scaled < tol {
            acc.certified += 1;
        }
        if mode == SampleMode::Diagonal {
            let v = eval.value;
            if !(v.re > 0.0 && v.im.abs() <= 1e-9 * v.norm()) {
                acc.nonpositive += 1;
            }
        }
    }
    acc
}

/// Minimum of `|Delta_n| / scale` over `samples` seeded draws of the given
/// family. Only reports; it never asserts that the kernel has no zero.
///
/// Sample `i` comes from ChaCha stream `i / 4096` of `seed`, so the report
/// does not depend on `parallelism` (0 means the rayon default).
pub fn sample_nonvanishing(
    mode: SampleMode,
    samples: usize,
    seed: u64,
    parallelism: usize,
) -> Result<SampleReport, ZeroError> {
    if samples == 0 {
        return Err(ZeroError::InvalidConfig("samples must be at least 1".into()));
    }
    let tol = Tolerances::default().certify;
    let chunks = samples.div_ceil(CHUNK);
    let total = in_pool(parallelism, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(mode, seed, c, CHUNK.min(samples - c * CHUNK), tol))
            .reduce(Partial::empty, Partial::merge)
    })?;
    if total.argmin.0 == usize::MAX {
        return Err(ZeroError::InvalidConfig("every sample was skipped".into()));
    }
    Ok(SampleReport {
        mode,
        samples,
        seed,
        min_scaled_delta: total.min_scaled,
        argmin_lambda: PolyPoint::raw(total.argmin.1)?,
        argmin_mu: PolyPoint::raw(total.argmin.2)?,
        min_kernel_abs: total.min_kernel,
        certified_zeros: total.certified,
        nonpositive_diagonal: total.nonpositive,
        skipped: total.skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse_and_print() {
        for m in [SampleMode::G2Full, SampleMode::G3EqualThird, SampleMode::Diagonal] {
            assert_eq!(m.to_string().parse::<SampleMode>().unwrap(), m);
        }
        assert!("g4".parse::<SampleMode>().is_err());
    }

    #[test]
    fn small_runs() {
        for mode in [SampleMode::G2Full, SampleMode::G3EqualThird, SampleMode::Diagonal] {
            let r = sample_nonvanishing(mode, 5000, 7, 2).unwrap();
            assert!(r.min_scaled_delta > 0.0);
            assert_eq!(r.certified_zeros, 0);
            assert_eq!(r.nonpositive_diagonal, 0);
            assert!(r.argmin_lambda.max_modulus() < 1.0 - SAMPLE_SHRINK);
        }
    }

    #[test]
    fn equal_third_is_respected() {
        let r = sample_nonvanishing(SampleMode::G3EqualThird, 100, 1, 1).unwrap();
        assert_eq!(r.argmin_lambda.coords()[2], r.argmin_mu.coords()[2]);
    }

    #[test]
    fn independent_of_thread_count() {
        let a = sample_nonvanishing(SampleMode::G2Full, 9000, 3, 1).unwrap();
        let b = sample_nonvanishing(SampleMode::G2Full, 9000, 3, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(sample_nonvanishing(SampleMode::Diagonal, 0, 0, 1).is_err());
    }
}
