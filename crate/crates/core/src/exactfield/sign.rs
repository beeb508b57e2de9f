use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AlgNum;

/// Starting working precision of [`alg_sign`], in bits.
pub const DEFAULT_SIGN_BITS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// `[floor(√d 2^bits), floor(√d 2^bits) + 1] / 2^bits`, an interval holding `√d`.
fn sqrt_interval(d: u32, bits: u32) -> (BigRational, BigRational) {
    let scaled = BigUint::from(d) << (2 * bits as usize);
    let s = BigInt::from(scaled.sqrt());
    let denom = BigInt::one() << bits as usize;
    (
        BigRational::new(s.clone(), denom.clone()),
        BigRational::new(s + 1, denom),
    )
}

fn scaled_interval(q: &BigRational, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    if q.is_negative() {
        (q * hi, q * lo)
    } else {
        (q * lo, q * hi)
    }
}

/// Sign of `x` and the precision (bits) at which it was decided.
///
/// Zero is detected exactly from the coordinates; otherwise `√2, √3, √6` are
/// enclosed in dyadic intervals and the enclosure of `x` is refined, doubling
/// the precision each round, until it excludes zero. Since `1, √2, √3, √6`
/// are linearly independent over `Q`, a nonzero element never has value 0
/// and the loop terminates.
pub fn alg_sign_with_precision(x: &AlgNum, start_bits: u32) -> (Sign, u32) {
    if x.is_zero() {
        return (Sign::Zero, 0);
    }
    let mut bits = start_bits.max(8);
    loop {
        let mut lo = x.q0.clone();
        let mut hi = x.q0.clone();
        for (q, d) in [(&x.q2, 2), (&x.q3, 3), (&x.q6, 6)] {
            if q.is_zero() {
                continue;
            }
            let (rl, rh) = sqrt_interval(d, bits);
            let (a, b) = scaled_interval(q, &rl, &rh);
            lo += a;
            hi += b;
        }
        if lo > BigRational::zero() {
            return (Sign::Positive, bits);
        }
        if hi < BigRational::zero() {
            return (Sign::Negative, bits);
        }
        bits *= 2;
    }
}

pub fn alg_sign(x: &AlgNum) -> Sign {
    alg_sign_with_precision(x, DEFAULT_SIGN_BITS).0
}
