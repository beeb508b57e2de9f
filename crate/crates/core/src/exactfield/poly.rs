use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{AlgComplex, AlgNum};

/// Number of variables of an [`ExactPoly`].
pub const NVARS: usize = 4;
pub const NU1: usize = 0;
pub const NU2: usize = 1;
pub const NU3: usize = 2;
pub const Z: usize = 3;
/// Variable slot used for univariate polynomials.
pub const X: usize = 0;

/// Largest total degree the identity checks ever produce.
pub const MAX_TOTAL_DEGREE: u32 = 12;

/// Exact commutative ring used as a coefficient domain.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for AlgNum {
    fn zero() -> Self {
        AlgNum::zero()
    }
    fn from_int(n: i64) -> Self {
        AlgNum::from_int(n)
    }
    fn is_zero(&self) -> bool {
        AlgNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Ring for AlgComplex {
    fn zero() -> Self {
        AlgComplex::zero()
    }
    fn from_int(n: i64) -> Self {
        AlgComplex::from_int(n)
    }
    fn is_zero(&self) -> bool {
        AlgComplex::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

type Exponent = [u32; NVARS];

/// Sparse polynomial in up to four variables; zero coefficients are never
/// stored, so equality of polynomials is equality of the term maps.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactPoly<C: Ring> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Ring> Default for ExactPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Ring> ExactPoly<C> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, [0; NVARS])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; NVARS];
        e[i] = 1;
        Self::monomial(C::from_int(1), e)
    }

    pub fn monomial(c: C, exponent: Exponent) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, c);
        p
    }

    fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca.mul(cb));
            }
        }
        debug_assert!(out.total_degree() <= MAX_TOTAL_DEGREE);
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v.mul(c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::from_int(1), |acc, _| acc.mul(self))
    }

    /// Coefficient of `var^degree`, as a polynomial in the other variables.
    pub fn coefficient_of(&self, var: usize, degree: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == degree {
                let mut e = *e;
                e[var] = 0;
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            let k = rest[var];
            rest[var] = 0;
            out = out.add(&Self::monomial(c.clone(), rest).mul(&value.pow(k)));
        }
        out
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.terms.get(&[0; NVARS]).cloned().unwrap_or_else(C::zero)
    }
}

/// Determinant of a 3x3 polynomial matrix by cofactor expansion.
pub fn det3<C: Ring>(m: &[[ExactPoly<C>; 3]; 3]) -> ExactPoly<C> {
    let minor = |a: usize, b: usize, c: usize, d: usize| {
        m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]))
    };
    m[0][0]
        .mul(&minor(1, 2, 2, 1))
        .sub(&m[0][1].mul(&minor(0, 2, 2, 0)))
        .add(&m[0][2].mul(&minor(0, 1, 1, 0)))
}
