//! Bergman kernel of the symmetrized polydisc `G_n`.
//!
//! - [`symcore`]: points of `D^n` and `G_n`, root finding, membership.
//! - [`kernel`]: the Cauchy-power determinant formula and its confluent limit.
//! - [`exactfield`]: exact arithmetic in `Q(√2, √3)` and the identity checks.
//! - [`zerofind`]: zero construction, lifting, certificates, sampling.
//! - [`verify`]: exact and floating-point checks run together.
//!
//! ```
//! use symdisc::zerofind::{construct_zero_dim3, lift_zero, LiftConfig};
//!
//! let c3 = construct_zero_dim3(0.999, 0.9995)?;
//! let c4 = lift_zero(&c3, &LiftConfig::default())?;
//! c4.validate()?;
//! # Ok::<(), symdisc::zerofind::ZeroError>(())
//! ```

pub mod exactfield;
pub mod kernel;
pub mod symcore;
pub mod verify;
pub mod zerofind;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/symmetrized.md")]
    mod symmetrized {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/zeros.md")]
    mod zeros {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
