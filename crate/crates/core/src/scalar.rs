//! Exact arithmetic in the quadratic field Q(√5).
//!
//! Root coordinates of the non-crystallographic types (H3, H4, I2(5)) live in
//! Z[τ] with τ = (1 + √5)/2; every crystallographic type only ever uses the
//! rational part.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// An element `a + b·√5` with rational `a`, `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    a: Rational64,
    b: Rational64,
}

impl FieldScalar {
    pub fn new(a: Rational64, b: Rational64) -> Self {
        Self { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational64::from_integer(n), Rational64::zero())
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The golden ratio τ = (1 + √5)/2.
    pub fn golden_ratio() -> Self {
        let half = Rational64::new(1, 2);
        Self::new(half, half)
    }

    pub fn rational_part(&self) -> Rational64 {
        self.a
    }

    pub fn sqrt5_part(&self) -> Rational64 {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real number `a + b√5`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational64::zero());
        let sb = self.b.cmp(&Rational64::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Opposite signs: compare a² with 5b².
            (sa, _) => {
                let a2 = self.a * self.a;
                let b2 = self.b * self.b * Rational64::from_integer(5);
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }
}

impl Add for FieldScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for FieldScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for FieldScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for FieldScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let five = Rational64::from_integer(5);
        Self::new(
            self.a * rhs.a + five * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        if b.is_one() {
            write!(f, "{} {} √5", self.a, sign)
        } else {
            write!(f, "{} {} {}√5", self.a, sign, b)
        }
    }
}
