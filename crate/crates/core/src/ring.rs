//! Quadratic orders `Z[γ]` with `γ² = tγ - n`, their elements, and the 2x2
//! integer matrices used for module actions.

use crate::error::{Error, Result};
use crate::forms::{is_square, Discriminant};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticRing {
    #[serde(with = "crate::json")]
    pub t: BigInt,
    #[serde(with = "crate::json")]
    pub n: BigInt,
}

/// The element `x + yγ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingElement {
    #[serde(with = "crate::json")]
    pub x: BigInt,
    #[serde(with = "crate::json")]
    pub y: BigInt,
}

impl RingElement {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        RingElement {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn generator() -> Self {
        Self::new(0, 1)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}γ", self.x, self.y)
    }
}

impl QuadraticRing {
    /// A ring with nonzero, non-square discriminant.
    pub fn new(t: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let ring = QuadraticRing {
            t: t.into(),
            n: n.into(),
        };
        let d = ring.discriminant();
        if d.is_zero() || is_square(&d) {
            return Err(Error::DegenerateRing {
                t: ring.t,
                n: ring.n,
            });
        }
        Ok(ring)
    }

    /// The presentation `(D mod 2, (D mod 2 - D) / 4)` of the order of
    /// discriminant `d`.
    pub fn of_discriminant(d: &Discriminant) -> Self {
        let p = d.principal_form();
        QuadraticRing { t: p.b, n: p.c }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.t * &self.t - BigInt::from(4) * &self.n
    }

    /// Two presentations of the same order: equal discriminants.
    pub fn same_order(&self, other: &QuadraticRing) -> bool {
        self.discriminant() == other.discriminant()
    }

    pub fn mul(&self, u: &RingElement, v: &RingElement) -> RingElement {
        let yy = &u.y * &v.y;
        RingElement {
            x: &u.x * &v.x - &self.n * &yy,
            y: &u.x * &v.y + &v.x * &u.y + &self.t * &yy,
        }
    }

    /// `(Tr u, Nm u) = (2x + ty, x² + txy + ny²)`.
    pub fn trace_norm(&self, u: &RingElement) -> (BigInt, BigInt) {
        let (x, y) = (&u.x, &u.y);
        let tr = BigInt::from(2) * x + &self.t * y;
        let nm = x * x + &self.t * x * y + &self.n * y * y;
        (tr, nm)
    }

    /// The standard involution `x + yγ -> (x + ty) - yγ`.
    pub fn involution(&self, u: &RingElement) -> RingElement {
        RingElement {
            x: &u.x + &self.t * &u.y,
            y: -&u.y,
        }
    }

    /// The presentation with generator `γ + k`.
    pub fn shifted(&self, k: &BigInt) -> QuadraticRing {
        QuadraticRing {
            t: &self.t + BigInt::from(2) * k,
            n: k * k + &self.t * k + &self.n,
        }
    }
}

impl fmt::Display for QuadraticRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[γ]/(γ² - {}γ + {})", self.t, self.n)
    }
}

/// Integer matrix `[[m11, m12], [m21, m22]]` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub m11: BigInt,
    pub m12: BigInt,
    pub m21: BigInt,
    pub m22: BigInt,
}

impl Matrix2 {
    pub fn new(
        m11: impl Into<BigInt>,
        m12: impl Into<BigInt>,
        m21: impl Into<BigInt>,
        m22: impl Into<BigInt>,
    ) -> Self {
        Matrix2 {
            m11: m11.into(),
            m12: m12.into(),
            m21: m21.into(),
            m22: m22.into(),
        }
    }

    pub fn scalar(k: &BigInt) -> Self {
        Matrix2 {
            m11: k.clone(),
            m12: BigInt::zero(),
            m21: BigInt::zero(),
            m22: k.clone(),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(&BigInt::one())
    }

    pub fn trace(&self) -> BigInt {
        &self.m11 + &self.m22
    }

    pub fn det(&self) -> BigInt {
        &self.m11 * &self.m22 - &self.m12 * &self.m21
    }

    pub fn transpose(&self) -> Self {
        Matrix2 {
            m11: self.m11.clone(),
            m12: self.m21.clone(),
            m21: self.m12.clone(),
            m22: self.m22.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Matrix2 {
            m11: &self.m11 * k,
            m12: &self.m12 * k,
            m21: &self.m21 * k,
            m22: &self.m22 * k,
        }
    }

    pub fn apply(&self, v: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (
            &self.m11 * &v.0 + &self.m12 * &v.1,
            &self.m21 * &v.0 + &self.m22 * &v.1,
        )
    }

    /// Coefficients `(1, -tr, det)` of the characteristic polynomial
    /// `T² - tr T + det`.
    pub fn char_poly(&self) -> (BigInt, BigInt) {
        (self.trace(), self.det())
    }
}

impl Add for &Matrix2 {
    type Output = Matrix2;
    fn add(self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            m11: &self.m11 + &o.m11,
            m12: &self.m12 + &o.m12,
            m21: &self.m21 + &o.m21,
            m22: &self.m22 + &o.m22,
        }
    }
}

impl Sub for &Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            m11: &self.m11 - &o.m11,
            m12: &self.m12 - &o.m12,
            m21: &self.m21 - &o.m21,
            m22: &self.m22 - &o.m22,
        }
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            m11: &self.m11 * &o.m11 + &self.m12 * &o.m21,
            m12: &self.m11 * &o.m12 + &self.m12 * &o.m22,
            m21: &self.m21 * &o.m11 + &self.m22 * &o.m21,
            m22: &self.m21 * &o.m12 + &self.m22 * &o.m22,
        }
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.m11, self.m12, self.m21, self.m22
        )
    }
}
