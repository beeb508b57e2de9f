//! Certified zeros of the kernel.
//!
//! A zero in dimension 3 comes from a root of the quadratic `a z^2 - b z + 2c`
//! near the unimodular point `nu0`; higher dimensions are reached by
//! appending a common coordinate `t` to both arguments and following the
//! zero in the first coordinate as `|t| -> 1` (Rouché).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod dim3;
mod lift;
mod quadratic;
mod sampling;
mod winding;
mod witness;

pub use dim3::{
    construct_zero_dim3, construct_zero_dim3_with, nu0, x0, DEFAULT_MU1_MODULUS, DEFAULT_RHO,
};
pub use lift::{lift_chain, lift_zero, lift_zero_logged, LiftAttempt, LiftConfig, LiftLog};
pub use quadratic::solve_abc_quadratic;
pub use sampling::{sample_nonvanishing, SampleMode, SampleReport, SAMPLE_SHRINK};
pub use winding::{count_zeros_disc, WindingCount, CONTOUR_GUARD, MAX_GAP};
pub use witness::{fn_nontrivial, fn_value, halton_disc, FnWitness, WITNESS_SAMPLE_CAP};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{self, KernelError};
use crate::symcore::{PolyPoint, SymError};

/// Runs `f` on a pool of `threads` workers, or on the global pool when 0.
pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, ZeroError> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| ZeroError::InvalidConfig(e.to_string()))?;
    Ok(pool.install(f))
}

/// Schema version written into every certificate.
pub const CERT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZeroError {
    #[error("a = b = 0 and c != 0: the quadratic has no root")]
    NoSolution,
    #[error("no root of the quadratic lies in the unit disc")]
    NoRootInUnitDisc,
    #[error("need 0 < rho < mu1_modulus < 1, got rho = {rho}, mu1_modulus = {mu1_modulus}")]
    InvalidScaling { rho: f64, mu1_modulus: f64 },
    #[error("no point with |f_n| above threshold after {samples} samples")]
    WitnessNotFound { samples: usize },
    #[error("g has a zero within {distance:e} of the contour")]
    ContourTooClose { distance: f64 },
    #[error("winding number {winding} is not close to an integer (gap {gap})")]
    NonIntegerWinding { winding: f64, gap: f64 },
    #[error("(1 - |t|^2)^2 = {attained:e} does not beat safety * m = {bound:e}")]
    RoucheBoundViolated { attained: f64, bound: f64 },
    #[error("lifted coordinates collide (separation {separation:e})")]
    DegenerateLift { separation: f64 },
    #[error("no zero of g found in the disc")]
    NoZeroInDisc,
    #[error("residual {residual_rel:e} exceeds tolerance {tolerance:e}")]
    NotCertified { residual_rel: f64, tolerance: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("certificate json: {0}")]
    Json(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on `|Delta_n| / scale` for a point to count as a zero.
    pub certify: f64,
    /// A witness needs `|f_n| / scale > witness_factor * certify`.
    pub witness_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            certify: 1e-12,
            witness_factor: 1e3,
        }
    }
}

impl Tolerances {
    pub fn witness_threshold(&self) -> f64 {
        self.witness_factor * self.certify
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Dim3,
    Lift,
}

/// Record that `K(pi(lambda), pi(mu)) = 0`, with enough data to re-check it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub version: u32,
    pub n: usize,
    pub lambda: PolyPoint,
    pub mu: PolyPoint,
    pub residual_rel: f64,
    pub kernel_abs: f64,
    pub construction: Construction,
    pub parent: Option<Box<ZeroCertificate>>,
    pub fn_witness: FnWitness,
    pub seed: u64,
    pub tolerances: Tolerances,
}

/// Freshly recomputed residual and kernel modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recheck {
    pub residual_rel: f64,
    pub kernel_abs: f64,
}

fn within_factor_two(a: f64, b: f64) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi <= 2.0 * lo.max(f64::MIN_POSITIVE)
}

impl ZeroCertificate {
    /// Residual and `|K|` at `(lambda, mu)`, or an error when the point is not
    /// a zero to within `tolerances.certify`.
    pub(crate) fn measure(
        lambda: &PolyPoint,
        mu: &PolyPoint,
        tolerances: &Tolerances,
    ) -> Result<Recheck, ZeroError> {
        let eval = kernel::kernel_gn(lambda, mu)?;
        let residual_rel = eval.residual_rel();
        if !(residual_rel < tolerances.certify) {
            return Err(ZeroError::NotCertified {
                residual_rel,
                tolerance: tolerances.certify,
            });
        }
        Ok(Recheck {
            residual_rel,
            kernel_abs: eval.value.norm(),
        })
    }

    pub fn recheck(&self) -> Result<Recheck, ZeroError> {
        let eval = kernel::kernel_gn(&self.lambda, &self.mu)?;
        Ok(Recheck {
            residual_rel: eval.residual_rel(),
            kernel_abs: eval.value.norm(),
        })
    }

    /// Checks every structural invariant, re-evaluates the residual, kernel
    /// modulus and witness, and recurses into the parent.
    pub fn validate(&self) -> Result<Recheck, ZeroError> {
        let bad = |msg: String| Err(ZeroError::InvalidCertificate(msg));
        if self.version != CERT_VERSION {
            return bad(format!("unsupported version {}", self.version));
        }
        if self.lambda.dim() != self.n || self.mu.dim() != self.n {
            return bad(format!("coordinate count differs from n = {}", self.n));
        }
        for (name, p) in [("lambda", &self.lambda), ("mu", &self.mu)] {
            if p.max_modulus() >= 1.0 {
                return bad(format!("{name} leaves the unit polydisc"));
            }
            if !p.has_distinct_coords() {
                return bad(format!("{name} has repeated coordinates"));
            }
        }
        let fresh = self.recheck()?;
        if !(fresh.residual_rel < self.tolerances.certify) {
            return Err(ZeroError::NotCertified {
                residual_rel: fresh.residual_rel,
                tolerance: self.tolerances.certify,
            });
        }
        if !within_factor_two(fresh.residual_rel, self.residual_rel) {
            return bad(format!(
                "recorded residual {:e}, recomputed {:e}",
                self.residual_rel, fresh.residual_rel
            ));
        }
        if !within_factor_two(fresh.kernel_abs, self.kernel_abs) {
            return bad(format!(
                "recorded |K| {:e}, recomputed {:e}",
                self.kernel_abs, fresh.kernel_abs
            ));
        }
        let (f, scale) = fn_value(&self.lambda, &self.mu, self.fn_witness.point)?;
        if !(f.norm() > self.tolerances.witness_threshold() * scale) {
            return bad("witness no longer clears its threshold".into());
        }
        match (self.construction, &self.parent) {
            (Construction::Dim3, None) => {
                if self.n != 3 {
                    return bad("dim3 construction with n != 3".into());
                }
            }
            (Construction::Lift, Some(parent)) => {
                if parent.n + 1 != self.n {
                    return bad("parent dimension is not n - 1".into());
                }
                let last = self.n - 1;
                if self.lambda.coords()[last] != self.mu.coords()[last] {
                    return bad("appended coordinates differ".into());
                }
                if self.lambda.coords()[1..last] != parent.lambda.coords()[1..]
                    || self.mu.coords()[..last] != parent.mu.coords()[..]
                {
                    return bad("lift does not extend its parent".into());
                }
                parent.validate()?;
            }
            _ => return bad("construction tag and parent link disagree".into()),
        }
        Ok(fresh)
    }

    /// Chain of certificates from the dimension-3 root up to `self`.
    pub fn lineage(&self) -> Vec<&ZeroCertificate> {
        let mut out = vec![self];
        let mut cur = self;
        while let Some(p) = &cur.parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    /// The appended coordinate of a lifted certificate.
    pub fn appended(&self) -> Option<Complex64> {
        match self.construction {
            Construction::Lift => Some(self.lambda.coords()[self.n - 1]),
            Construction::Dim3 => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, ZeroError> {
        serde_json::from_str(s).map_err(|e| ZeroError::Json(e.to_string()))
    }
}
