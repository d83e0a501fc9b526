//! Coefficient rings: the integers, the rationals and prime fields.

use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which coefficient ring an element lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientDomain {
    Integers,
    Rationals,
    ModP(u64),
}

impl CoefficientDomain {
    /// 0 for the integers and rationals, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            CoefficientDomain::ModP(p) => p,
            _ => 0,
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::Rationals => write!(f, "Q"),
            CoefficientDomain::ModP(p) => write!(f, "F_{p}"),
        }
    }
}

/// A commutative ring given as a context object, so that `F_p` can carry its
/// modulus.
pub trait Ring: Clone + Debug + PartialEq {
    type Elem: Clone + PartialEq + Debug;

    fn domain(&self) -> CoefficientDomain;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, n: u64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_string(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, n: i64) -> Self::Elem {
        let v = self.from_u64(n.unsigned_abs());
        if n < 0 {
            self.neg(&v)
        } else {
            v
        }
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is prime and fits comfortably in 32 bits.
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p) && p < 1 << 32, "{p} is not a supported prime");
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes dividing `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Ring for Integers {
    type Elem = BigInt;

    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_u64(&self, n: u64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn to_string(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_u64(&self, n: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_string(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::ModP(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r = if r.is_negative() { r + self.p } else { r };
        r.to_u64().expect("residue fits")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_string(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
}
