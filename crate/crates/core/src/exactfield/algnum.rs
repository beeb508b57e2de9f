use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element `q0 + q2 √2 + q3 √3 + q6 √6` of the real field `Q(√2, √3)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgNum {
    pub q0: BigRational,
    pub q2: BigRational,
    pub q3: BigRational,
    pub q6: BigRational,
}

impl AlgNum {
    pub fn new(q0: BigRational, q2: BigRational, q3: BigRational, q6: BigRational) -> Self {
        Self { q0, q2, q3, q6 }
    }

    /// Integer coordinates divided by a common positive denominator.
    pub fn from_ints(q0: i64, q2: i64, q3: i64, q6: i64, denom: i64) -> Self {
        let d = rat(denom);
        Self::new(rat(q0) / &d, rat(q2) / &d, rat(q3) / &d, rat(q6) / &d)
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::new(q, Zero::zero(), Zero::zero(), Zero::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1, 0, 0, 1)
    }

    pub fn sqrt3() -> Self {
        Self::from_ints(0, 0, 1, 0, 1)
    }

    pub fn sqrt6() -> Self {
        Self::from_ints(0, 0, 0, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q2.is_zero() && self.q3.is_zero() && self.q6.is_zero()
    }

    pub fn coords(&self) -> [&BigRational; 4] {
        [&self.q0, &self.q2, &self.q3, &self.q6]
    }

    /// Image under `√2 -> -√2`.
    fn flip2(&self) -> Self {
        Self::new(self.q0.clone(), -&self.q2, self.q3.clone(), -&self.q6)
    }

    /// Image under `√3 -> -√3`.
    fn flip3(&self) -> Self {
        Self::new(self.q0.clone(), self.q2.clone(), -&self.q3, -&self.q6)
    }

    /// Multiplicative inverse via the product of the three Galois conjugates,
    /// whose product with `self` is the rational norm.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let c2 = self.flip2();
        let c3 = self.flip3();
        let c23 = c2.flip3();
        let adj = &(&c2 * &c3) * &c23;
        let norm = self * &adj;
        debug_assert!(norm.q2.is_zero() && norm.q3.is_zero() && norm.q6.is_zero());
        let n = norm.q0;
        Ok(Self::new(adj.q0 / &n, adj.q2 / &n, adj.q3 / &n, adj.q6 / &n))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.q0 * q, &self.q2 * q, &self.q3 * q, &self.q6 * q)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Rough double-precision value; use [`super::alg_sign`] for decisions.
    pub fn to_f64(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        f(&self.q0) + f(&self.q2) * 2f64.sqrt() + f(&self.q3) * 3f64.sqrt() + f(&self.q6) * 6f64.sqrt()
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (q, unit) in [(&self.q0, ""), (&self.q2, "√2"), (&self.q3, "√3"), (&self.q6, "√6")] {
            if q.is_zero() {
                continue;
            }
            let sign = if q.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if q.is_negative() {
                write!(f, "-")?;
            }
            let a = q.abs();
            if unit.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{unit}")?;
            } else if a.is_integer() {
                write!(f, "{a}{unit}")?;
            } else {
                write!(f, "({a}){unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, o: &AlgNum) -> AlgNum {
        AlgNum::new(&self.q0 + &o.q0, &self.q2 + &o.q2, &self.q3 + &o.q3, &self.q6 + &o.q6)
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, o: &AlgNum) -> AlgNum {
        AlgNum::new(&self.q0 - &o.q0, &self.q2 - &o.q2, &self.q3 - &o.q3, &self.q6 - &o.q6)
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, o: &AlgNum) -> AlgNum {
        let (a0, a2, a3, a6) = (&self.q0, &self.q2, &self.q3, &self.q6);
        let (b0, b2, b3, b6) = (&o.q0, &o.q2, &o.q3, &o.q6);
        // √2√2 = 2, √3√3 = 3, √6√6 = 6, √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2
        let two = rat(2);
        let three = rat(3);
        let six = rat(6);
        let q0 = a0 * b0 + &two * (a2 * b2) + &three * (a3 * b3) + &six * (a6 * b6);
        let q2 = a0 * b2 + a2 * b0 + &three * (a3 * b6 + a6 * b3);
        let q3 = a0 * b3 + a3 * b0 + &two * (a2 * b6 + a6 * b2);
        let q6 = a0 * b6 + a6 * b0 + a2 * b3 + a3 * b2;
        AlgNum::new(q0, q2, q3, q6)
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum::new(-&self.q0, -&self.q2, -&self.q3, -&self.q6)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*};
}
forward_owned!(AlgNum, Add add, Sub sub, Mul mul);

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

/// Complex number with both parts in `Q(√2, √3)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgComplex {
    pub re: AlgNum,
    pub im: AlgNum,
}

impl AlgComplex {
    pub fn new(re: AlgNum, im: AlgNum) -> Self {
        Self { re, im }
    }

    pub fn real(re: AlgNum) -> Self {
        Self::new(re, AlgNum::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(AlgNum::from_int(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(AlgNum::zero(), AlgNum::one())
    }

    /// `e^{i pi k / 12}`; every such root of unity has parts in the field.
    pub fn exp_i_pi_twelfths(k: i64) -> Self {
        Self::new(cos_15deg(k), cos_15deg(6 - k))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> AlgNum {
        &self.re.square() + &self.im.square()
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let n = self.norm_sqr().inv()?;
        let c = self.conj();
        Ok(Self::new(&c.re * &n, &c.im * &n))
    }

    pub fn scale(&self, x: &AlgNum) -> Self {
        Self::new(&self.re * x, &self.im * x)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// `cos(15° k)` as an element of the field.
fn cos_15deg(k: i64) -> AlgNum {
    let k = k.rem_euclid(24);
    // cos is even and cos(180° - t) = -cos(t)
    let (k, sign) = match k {
        0..=6 => (k, 1),
        7..=12 => (12 - k, -1),
        13..=18 => (k - 12, -1),
        _ => (24 - k, 1),
    };
    let v = match k {
        0 => AlgNum::from_int(1),
        1 => AlgNum::from_ints(0, 1, 0, 1, 4),
        2 => AlgNum::from_ints(0, 0, 1, 0, 2),
        3 => AlgNum::from_ints(0, 1, 0, 0, 2),
        4 => AlgNum::from_ints(1, 0, 0, 0, 2),
        5 => AlgNum::from_ints(0, -1, 0, 1, 4),
        _ => AlgNum::zero(),
    };
    if sign < 0 {
        -v
    } else {
        v
    }
}

impl fmt::Debug for AlgComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i({})", self.im)
        } else {
            write!(f, "({}) + i({})", self.re, self.im)
        }
    }
}

impl Add for &AlgComplex {
    type Output = AlgComplex;
    fn add(self, o: &AlgComplex) -> AlgComplex {
        AlgComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &AlgComplex {
    type Output = AlgComplex;
    fn sub(self, o: &AlgComplex) -> AlgComplex {
        AlgComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &AlgComplex {
    type Output = AlgComplex;
    fn mul(self, o: &AlgComplex) -> AlgComplex {
        AlgComplex::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl Neg for &AlgComplex {
    type Output = AlgComplex;
    fn neg(self) -> AlgComplex {
        AlgComplex::new(-&self.re, -&self.im)
    }
}

forward_owned!(AlgComplex, Add add, Sub sub, Mul mul);

impl Neg for AlgComplex {
    type Output = AlgComplex;
    fn neg(self) -> AlgComplex {
        -&self
    }
}
