//! Exact arithmetic in `Q(√2, √3)` and its complexification.
//!
//! Elements are stored as four rationals on the basis `{1, √2, √3, √6}`.
//! Every root of unity `e^{i pi k / 12}` has both parts in this field, which
//! is enough to state the dimension-3 reference point and its coefficients
//! exactly. Signs are decided by interval enclosures of escalating precision
//! ([`alg_sign`]); polynomial identities are decided by full expansion
//! ([`ExactPoly`]).

mod algnum;
pub mod poly;
mod sign;
pub mod verify;

use thiserror::Error;

pub use algnum::{AlgComplex, AlgNum};
pub use poly::{ExactPoly, Ring};
pub use sign::{alg_sign, alg_sign_with_precision, Sign, DEFAULT_SIGN_BITS};
pub use verify::{
    abc_exact, displayed_p, nu0_exact, verify_appendix_a, verify_appendix_b, Check, Fault,
    VerificationReport, VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}
