//! Integral binary quadratic forms: arithmetic, reduction, equivalence and
//! enumeration of proper-equivalence classes.
//!
//! A form `(a, b, c)` is the polynomial `ax^2 + bxy + cy^2`. Unimodular maps
//! act on the right: `f.transform(m)` is `(x, y) -> f(px + qy, rx + sy)`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Mul;

/// Upper bound on reduction steps. Reduction is logarithmic in the size of
/// the coefficients, so hitting this means a bug.
const MAX_REDUCTION_STEPS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryForm {
    #[serde(with = "crate::json")]
    pub a: BigInt,
    #[serde(with = "crate::json")]
    pub b: BigInt,
    #[serde(with = "crate::json")]
    pub c: BigInt,
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// An integral 2x2 matrix `[[p, q], [r, s]]` with determinant +1 or -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    #[serde(with = "crate::json")]
    pub p: BigInt,
    #[serde(with = "crate::json")]
    pub q: BigInt,
    #[serde(with = "crate::json")]
    pub r: BigInt,
    #[serde(with = "crate::json")]
    pub s: BigInt,
}

/// A nonzero, non-square integer congruent to 0 or 1 mod 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiscriminantRepr", into = "DiscriminantRepr")]
pub struct Discriminant(BigInt);

#[derive(Serialize, Deserialize)]
struct DiscriminantRepr(#[serde(with = "crate::json")] BigInt);

impl TryFrom<DiscriminantRepr> for Discriminant {
    type Error = Error;
    fn try_from(r: DiscriminantRepr) -> Result<Self> {
        Discriminant::new(r.0)
    }
}

impl From<Discriminant> for DiscriminantRepr {
    fn from(d: Discriminant) -> Self {
        DiscriminantRepr(d.0)
    }
}

pub(crate) fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// `x < sqrt(d)` for integer `x` and positive non-square `d`.
fn lt_sqrt(x: &BigInt, d: &BigInt) -> bool {
    !x.is_positive() || x * x < *d
}

/// `x > sqrt(d)` for integer `x` and positive non-square `d`.
fn gt_sqrt(x: &BigInt, d: &BigInt) -> bool {
    x.is_positive() && x * x > *d
}

impl Discriminant {
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return Err(Error::InvalidDiscriminant(d, "zero"));
        }
        let r = d.mod_floor(&BigInt::from(4));
        if !(r.is_zero() || r.is_one()) {
            return Err(Error::InvalidDiscriminant(d, "not 0 or 1 mod 4"));
        }
        if is_square(&d) {
            return Err(Error::InvalidDiscriminant(d, "perfect square"));
        }
        Ok(Discriminant(d))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The principal form `(1, D mod 2, (D mod 2 - D) / 4)`.
    pub fn principal_form(&self) -> BinaryForm {
        let b = self.0.mod_floor(&BigInt::from(2));
        let c = (&b * &b - &self.0) / 4;
        BinaryForm {
            a: BigInt::one(),
            b,
            c,
        }
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl UnimodularMap {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = UnimodularMap {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        };
        let det = m.det();
        if det.abs().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(det))
        }
    }

    pub fn identity() -> Self {
        Self::unchecked(1, 0, 0, 1)
    }

    /// `(x, y) -> (y, x)`, determinant -1.
    pub fn swap() -> Self {
        Self::unchecked(0, 1, 1, 0)
    }

    /// `(x, y) -> (x + ky, y)`.
    pub fn translation(k: impl Into<BigInt>) -> Self {
        UnimodularMap {
            p: BigInt::one(),
            q: k.into(),
            r: BigInt::zero(),
            s: BigInt::one(),
        }
    }

    /// `(x, y) -> (-y, x)`.
    pub fn rotation() -> Self {
        Self::unchecked(0, -1, 1, 0)
    }

    fn unchecked(p: i64, q: i64, r: i64, s: i64) -> Self {
        UnimodularMap {
            p: p.into(),
            q: q.into(),
            r: r.into(),
            s: s.into(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        UnimodularMap {
            p: &self.s * &det,
            q: -&self.q * &det,
            r: -&self.r * &det,
            s: &self.p * &det,
        }
    }

    pub fn as_array(&self) -> [BigInt; 4] {
        [
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
            self.s.clone(),
        ]
    }
}

impl Mul for &UnimodularMap {
    type Output = UnimodularMap;
    fn mul(self, o: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }
}

impl BinaryForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        BinaryForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// The discriminant, validated as nonzero and non-square.
    pub fn checked_discriminant(&self) -> Result<Discriminant> {
        Discriminant::new(self.discriminant()).map_err(|_| self.degenerate())
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `gcd(a, b, c)`; zero only for the zero form.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn transform(&self, m: &UnimodularMap) -> Result<BinaryForm> {
        let det = m.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det));
        }
        Ok(self.transform_unchecked(m))
    }

    fn transform_unchecked(&self, m: &UnimodularMap) -> BinaryForm {
        let (p, q, r, s) = (&m.p, &m.q, &m.r, &m.s);
        let two = BigInt::from(2);
        BinaryForm {
            a: self.evaluate(p, r),
            b: &two * &self.a * p * q + &self.b * (p * s + q * r) + &two * &self.c * r * s,
            c: self.evaluate(q, s),
        }
    }

    /// `(a, -b, c)`: the same lattice with the opposite orientation.
    pub fn flip_orientation(&self) -> BinaryForm {
        BinaryForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    pub fn negate(&self) -> BinaryForm {
        BinaryForm {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
        }
    }

    pub fn as_array(&self) -> [BigInt; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    fn degenerate(&self) -> Error {
        Error::DegenerateForm {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    fn imprimitive(&self) -> Error {
        Error::Imprimitive {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Definite forms are positive or negative definite according to `a`.
    pub fn is_negative_definite(&self) -> bool {
        self.discriminant().is_negative() && self.a.is_negative()
    }

    /// Validates the reduction preconditions and returns the discriminant.
    fn check_reducible(&self) -> Result<Discriminant> {
        let d = self.checked_discriminant()?;
        if !self.is_primitive() {
            return Err(self.imprimitive());
        }
        if self.is_negative_definite() {
            return Err(Error::NegativeDefinite {
                a: self.a.clone(),
                b: self.b.clone(),
                c: self.c.clone(),
            });
        }
        Ok(d)
    }

    /// Reduce to the canonical representative (definite case) or to a
    /// reduced form in the cycle (indefinite case), together with a
    /// determinant +1 map carrying `self` to the result.
    pub fn reduce(&self) -> Result<(BinaryForm, UnimodularMap)> {
        let d = self.check_reducible()?;
        if d.is_negative() {
            reduce_definite(self)
        } else {
            reduce_indefinite(self, d.value())
        }
    }

    /// Whether the form satisfies the reduction inequalities for its sign
    /// of discriminant. Degenerate forms are never reduced.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d.is_negative() {
            let (a, b, c) = (&self.a, &self.b, &self.c);
            a.is_positive()
                && b.abs() <= *a
                && a <= c
                && (!(b.abs() == *a || a == c) || !b.is_negative())
        } else if d.is_positive() && !is_square(&d) {
            is_reduced_indefinite(self, &d)
        } else {
            false
        }
    }

    /// Proper (SL2) equivalence. Definite forms of opposite sign are never
    /// equivalent; two negative definite forms are compared after negation.
    pub fn proper_equivalent(&self, other: &BinaryForm) -> Result<bool> {
        let d1 = self.discriminant();
        let d2 = other.discriminant();
        if d1 != d2 {
            return Err(Error::DiscriminantMismatch(d1, d2));
        }
        Ok(canonical_form(self)? == canonical_form(other)?)
    }
}

fn is_reduced_indefinite(f: &BinaryForm, d: &BigInt) -> bool {
    let two_a = BigInt::from(2) * f.a.abs();
    f.b.is_positive()
        && lt_sqrt(&f.b, d)
        && gt_sqrt(&(&two_a + &f.b), d)
        && lt_sqrt(&(&two_a - &f.b), d)
}

fn apply(f: &mut BinaryForm, m: &mut UnimodularMap, step: &UnimodularMap) {
    *f = f.transform_unchecked(step);
    *m = &*m * step;
}

fn reduce_definite(f: &BinaryForm) -> Result<(BinaryForm, UnimodularMap)> {
    let mut g = f.clone();
    let mut m = UnimodularMap::identity();
    for _ in 0..MAX_REDUCTION_STEPS {
        // bring b into (-a, a]
        let two_a = BigInt::from(2) * &g.a;
        let k = (&g.a - &g.b).div_floor(&two_a);
        if !k.is_zero() {
            apply(&mut g, &mut m, &UnimodularMap::translation(k));
        }
        if g.a > g.c {
            apply(&mut g, &mut m, &UnimodularMap::rotation());
            continue;
        }
        if g.a == g.c && g.b.is_negative() {
            apply(&mut g, &mut m, &UnimodularMap::rotation());
        }
        return Ok((g, m));
    }
    Err(Error::Invariant(format!(
        "definite reduction of {f} did not terminate"
    )))
}

/// One step of the indefinite reduction operator together with its map.
fn rho_step(f: &BinaryForm, d: &BigInt) -> (BinaryForm, UnimodularMap) {
    let abs_c = f.c.abs();
    let two_c = BigInt::from(2) * &abs_c;
    let b_next = if gt_sqrt(&abs_c, d) {
        // -|c| < b' <= |c|
        let k = (&abs_c + &f.b).div_floor(&two_c);
        -&f.b + &two_c * k
    } else {
        // largest b' < sqrt(D) with b' = -b mod 2|c|
        let s = d.sqrt();
        &s - (&s + &f.b).mod_floor(&two_c)
    };
    let k = (&b_next + &f.b) / (BigInt::from(2) * &f.c);
    let step = UnimodularMap {
        p: BigInt::zero(),
        q: -BigInt::one(),
        r: BigInt::one(),
        s: k,
    };
    (f.transform_unchecked(&step), step)
}

fn reduce_indefinite(f: &BinaryForm, d: &BigInt) -> Result<(BinaryForm, UnimodularMap)> {
    let mut g = f.clone();
    let mut m = UnimodularMap::identity();
    for _ in 0..MAX_REDUCTION_STEPS {
        if is_reduced_indefinite(&g, d) {
            return Ok((g, m));
        }
        let (next, step) = rho_step(&g, d);
        g = next;
        m = &m * &step;
    }
    Err(Error::Invariant(format!(
        "indefinite reduction of {f} did not terminate"
    )))
}

/// The cycle of reduced forms containing the reduced indefinite form `f`,
/// starting at `f`.
pub fn reduction_cycle(f: &BinaryForm) -> Result<Vec<BinaryForm>> {
    let d = f.discriminant();
    if !d.is_positive() || !is_reduced_indefinite(f, &d) {
        return Err(Error::NotReduced {
            a: f.a.clone(),
            b: f.b.clone(),
            c: f.c.clone(),
        });
    }
    let mut cycle = vec![f.clone()];
    let mut g = rho_step(f, &d).0;
    while g != *f {
        if cycle.len() > MAX_REDUCTION_STEPS {
            return Err(Error::Invariant(format!("cycle of {f} did not close")));
        }
        cycle.push(g.clone());
        g = rho_step(&g, &d).0;
    }
    Ok(cycle)
}

/// Ordering used to pick one representative per indefinite cycle: smallest
/// `|a|`, positive `a` first, then smallest `|b|`, positive `b` first.
fn cycle_key(f: &BinaryForm) -> (BigInt, bool, BigInt, bool, BigInt) {
    (
        f.a.abs(),
        f.a.is_negative(),
        f.b.abs(),
        f.b.is_negative(),
        f.c.clone(),
    )
}

/// Canonical representative of the proper-equivalence class of a primitive
/// form. Negative definite forms map to the negation of the reduced form of
/// their negation.
pub fn canonical_form(f: &BinaryForm) -> Result<BinaryForm> {
    if f.is_negative_definite() {
        return Ok(canonical_form(&f.negate())?.negate());
    }
    let (g, _) = f.reduce()?;
    if g.discriminant().is_negative() {
        return Ok(g);
    }
    let cycle = reduction_cycle(&g)?;
    Ok(cycle
        .into_iter()
        .min_by_key(cycle_key)
        .expect("cycle is nonempty"))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            let j = n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All primitive reduced forms of discriminant `d`: for `d < 0` the positive
/// definite ones, for `d > 0` every form satisfying the indefinite
/// reduction inequalities.
pub fn reduced_forms(d: &Discriminant) -> Vec<BinaryForm> {
    let dv = d.value();
    let mut out = Vec::new();
    if d.is_negative() {
        let abs_d = dv.abs();
        let mut a = BigInt::one();
        while BigInt::from(3) * &a * &a <= abs_d {
            let mut b: BigInt = -&a + 1;
            while b <= a {
                let num = &b * &b - dv;
                let four_a = BigInt::from(4) * &a;
                if (&num % &four_a).is_zero() {
                    let f = BinaryForm::new(a.clone(), b.clone(), num / four_a);
                    if f.is_reduced() && f.is_primitive() {
                        out.push(f);
                    }
                }
                b += 1;
            }
            a += 1;
        }
    } else {
        let s = dv.sqrt();
        let mut b = BigInt::one();
        while b <= s {
            let num = dv - &b * &b;
            if (&num % 4u32).is_zero() {
                let n = num / 4;
                for a0 in divisors(&n) {
                    let c0 = &n / &a0;
                    for sign in [1i32, -1] {
                        let f = BinaryForm::new(&a0 * sign, b.clone(), -&c0 * sign);
                        if is_reduced_indefinite(&f, dv) && f.is_primitive() {
                            out.push(f);
                        }
                    }
                }
            }
            b += 1;
        }
    }
    out
}

/// Representatives of the proper-equivalence classes of primitive forms of
/// discriminant `d`, principal class first. Definite discriminants use
/// positive definite forms only.
pub fn enumerate_classes(d: &Discriminant) -> Result<Vec<BinaryForm>> {
    let mut reps = if d.is_negative() {
        reduced_forms(d)
    } else {
        let all: BTreeSet<BinaryForm> = reduced_forms(d).into_iter().collect();
        let mut seen: HashSet<BinaryForm> = HashSet::new();
        let mut reps = Vec::new();
        for f in &all {
            if seen.contains(f) {
                continue;
            }
            let cycle = reduction_cycle(f)?;
            seen.extend(cycle.iter().cloned());
            reps.push(cycle.into_iter().min_by_key(cycle_key).expect("nonempty"));
        }
        reps
    };
    reps.sort_by_key(cycle_key);
    Ok(reps)
}
