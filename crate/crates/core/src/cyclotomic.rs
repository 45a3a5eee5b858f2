//! Exact arithmetic in `Z[ζ_m] = Z[x]/Φ_m(x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The root of unity `ζ_order^exponent`, with `exponent` reduced mod
/// `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct RootOfUnity {
    pub exponent: usize,
    pub order: usize,
}

impl RootOfUnity {
    pub fn new(exponent: usize, order: usize) -> Self {
        assert!(order > 0, "root of unity of order 0");
        RootOfUnity {
            exponent: exponent % order,
            order,
        }
    }

    pub fn one(order: usize) -> Self {
        Self::new(0, order)
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        assert_eq!(self.order, other.order);
        Self::new(self.exponent + other.exponent, self.order)
    }

    /// Inverse, which is also the complex conjugate.
    pub fn conj(&self) -> RootOfUnity {
        Self::new(self.order - self.exponent, self.order)
    }

    /// Exact multiplicative order of this element.
    pub fn multiplicative_order(&self) -> usize {
        self.order / num_integer::gcd(self.exponent, self.order)
    }
}

impl From<RootOfUnity> for [usize; 2] {
    fn from(z: RootOfUnity) -> Self {
        [z.exponent, z.order]
    }
}

impl From<[usize; 2]> for RootOfUnity {
    fn from([k, m]: [usize; 2]) -> Self {
        RootOfUnity::new(k, m.max(1))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "1"),
            k => write!(f, "ζ{}^{}", self.order, k),
        }
    }
}

/// Integer polynomial, coefficients in increasing degree, no trailing zeros.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Poly> {
    let (mut rem, q) = div_rem(num, den);
    rem = trim(rem);
    rem.is_empty().then_some(q)
}

fn div_rem(num: &[BigInt], den: &[BigInt]) -> (Poly, Poly) {
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (rem, Vec::new());
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let lead = rem[i + dd].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, c) in den.iter().enumerate() {
            rem[i + j] -= &lead * c;
        }
        q[i] = lead;
    }
    rem.truncate(dd);
    (trim(rem), trim(q))
}

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    assert!(m > 0);
    let mut p: Poly = vec![BigInt::zero(); m + 1];
    p[0] = -BigInt::one();
    p[m] = BigInt::one();
    for d in (1..m).filter(|&d| m.is_multiple_of(d)) {
        p = div_exact(&p, &cyclotomic_polynomial(d)).expect("cyclotomic divisor");
    }
    p
}

/// The ring `Z[x]/Φ_m(x)`.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    order: usize,
    modulus: Poly,
}

/// An element of `Z[ζ_m]` as its reduced coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt(Vec<BigInt>);

impl CyclotomicInt {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    /// The integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.0.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }
}

impl CyclotomicField {
    pub fn new(order: usize) -> Self {
        CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, p: Poly) -> CyclotomicInt {
        CyclotomicInt(div_rem(&p, &self.modulus).0)
    }

    pub fn zero(&self) -> CyclotomicInt {
        CyclotomicInt(Vec::new())
    }

    pub fn integer(&self, k: impl Into<BigInt>) -> CyclotomicInt {
        self.reduce(vec![k.into()])
    }

    pub fn root(&self, z: RootOfUnity) -> CyclotomicInt {
        assert_eq!(z.order, self.order, "root of unity from another field");
        let mut p = vec![BigInt::zero(); z.exponent + 1];
        p[z.exponent] = BigInt::one();
        self.reduce(p)
    }

    pub fn add(&self, u: &CyclotomicInt, v: &CyclotomicInt) -> CyclotomicInt {
        let n = u.0.len().max(v.0.len());
        let p = (0..n)
            .map(|i| {
                let a = u.0.get(i).cloned().unwrap_or_default();
                let b = v.0.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        CyclotomicInt(trim(p))
    }

    pub fn mul(&self, u: &CyclotomicInt, v: &CyclotomicInt) -> CyclotomicInt {
        if u.is_zero() || v.is_zero() {
            return self.zero();
        }
        let mut p = vec![BigInt::zero(); u.0.len() + v.0.len() - 1];
        for (i, a) in u.0.iter().enumerate() {
            for (j, b) in v.0.iter().enumerate() {
                p[i + j] += a * b;
            }
        }
        self.reduce(p)
    }

    pub fn sum_of_roots(&self, roots: impl IntoIterator<Item = RootOfUnity>) -> CyclotomicInt {
        roots
            .into_iter()
            .fold(self.zero(), |acc, z| self.add(&acc, &self.root(z)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in 2..=30 {
            let k = CyclotomicField::new(m);
            let s = k.sum_of_roots((0..m).map(|e| RootOfUnity::new(e, m)));
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn roots_multiply_by_adding_exponents() {
        let k = CyclotomicField::new(7);
        let (u, v) = (RootOfUnity::new(3, 7), RootOfUnity::new(6, 7));
        assert_eq!(k.mul(&k.root(u), &k.root(v)), k.root(u.mul(&v)));
        assert_eq!(k.mul(&k.root(u), &k.root(u.conj())), k.integer(1));
    }

    #[test]
    fn root_of_unity_basics() {
        let z = RootOfUnity::new(4, 6);
        assert_eq!(z.multiplicative_order(), 3);
        assert_eq!(z.conj(), RootOfUnity::new(2, 6));
        assert!(RootOfUnity::new(6, 6).is_one());
        assert_eq!(serde_json::to_string(&z).unwrap(), "[4,6]");
    }
}
