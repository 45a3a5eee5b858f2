//! The even Clifford functor (form -> ring and module) and the norm functor
//! (module -> form), with the canonical orientation between them.
//!
//! For `Q = (A, B, C)` on `Z e1 + Z e2` the even Clifford ring is generated
//! by `ξ = e1e2` with `ξ² = Bξ - AC`, so it is the order `(t, n) = (B, AC)`.
//! The odd part `Z e1 + Z e2` is a module over it; we record the action of
//! `ξ` by right multiplication, `e1·ξ = A e2` and `e2·ξ = B e2 - C e1`.
//!
//! Two signs are fixed here and certified symbolically in
//! [`crate::universal::verify_canonical_orientation`]: the side of the
//! action and the trivialization of the value line. With right action and
//! value sign -1 the regular module has norm form `(1, t, n)` and
//! `norm_form(clifford(Q)) = Q` on the nose.

use crate::error::{Error, Result};
use crate::forms::{canonical_form, BinaryForm};
use crate::module::GoodFrameModule;
use crate::ring::{Matrix2, QuadraticRing, RingElement};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// The minimal ring interface shared by integers and symbolic polynomials,
/// so that the convention formulas below run on both.
pub trait CoeffRing:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
}

impl CoeffRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
}

/// Entries `[m11, m12, m21, m22]` of the action of `e1e2` on the odd
/// Clifford module of `(a, b, c)`, basis `(e1, e2)`.
pub fn clifford_action_entries<R: CoeffRing>(a: &R, b: &R, c: &R) -> [R; 4] {
    [a.zero_like(), -c.clone(), a.clone(), b.clone()]
}

/// Coefficients of the norm form of an action matrix `[m11, m12, m21, m22]`:
/// minus the exterior form `-m21 x² + (m11 - m22) xy + m12 y²`.
pub fn norm_coefficients<R: CoeffRing>(m: &[R; 4]) -> [R; 3] {
    let [m11, m12, m21, m22] = m.clone();
    [m21, m22 - m11, -m12]
}

/// The exterior form `E(x1, x2)` of an action matrix, before the value line
/// is trivialized.
pub fn exterior_coefficients<R: CoeffRing>(m: &[R; 4]) -> [R; 3] {
    let [m11, m12, m21, m22] = m.clone();
    [-m21, m11 - m22, m12]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

impl From<Orientation> for i8 {
    fn from(o: Orientation) -> i8 {
        o.sign()
    }
}

impl TryFrom<i8> for Orientation {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Orientation::Positive),
            -1 => Ok(Orientation::Negative),
            other => Err(format!("orientation must be +1 or -1, got {other}")),
        }
    }
}

/// Even Clifford ring and odd Clifford module of a form, with the
/// orientation identifying `e1e2` with the ring generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordPair {
    pub ring: QuadraticRing,
    pub module: GoodFrameModule,
    pub orientation: Orientation,
}

pub fn clifford(f: &BinaryForm) -> Result<CliffordPair> {
    f.checked_discriminant()?;
    let ring = QuadraticRing::new(f.b.clone(), &f.a * &f.c)?;
    let [m11, m12, m21, m22] = clifford_action_entries(&f.a, &f.b, &f.c);
    let module = GoodFrameModule::good_frame(&ring, &Matrix2 { m11, m12, m21, m22 })?;
    Ok(CliffordPair {
        ring,
        module,
        orientation: Orientation::Positive,
    })
}

/// The norm form of a module given in good frame.
pub fn norm_form(module: &GoodFrameModule) -> Result<BinaryForm> {
    if !module.is_good() {
        return Err(Error::NotGoodFrame("t must equal a and n must equal -bc"));
    }
    Ok(module.norm_form())
}

/// `N(u·x) = Nm(u) N(x)` for one concrete element and coordinate vector.
pub fn norm_multiplicativity_check(
    module: &GoodFrameModule,
    u: &RingElement,
    x: &(BigInt, BigInt),
) -> bool {
    let q = module.norm_form();
    let ux = module.element_action(u).apply(x);
    let (_, nm) = module.ring.trace_norm(u);
    q.evaluate(&ux.0, &ux.1) == nm * q.evaluate(&x.0, &x.1)
}

/// Outcome of matching `e1e2` in the Clifford ring of the norm form with the
/// module's generator: `e1e2 = ±γ + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationMatch {
    pub orientation: Orientation,
    /// Trace of `e1e2`.
    #[serde(with = "crate::json")]
    pub trace: BigInt,
    /// Norm of `e1e2`.
    #[serde(with = "crate::json")]
    pub norm: BigInt,
    #[serde(with = "crate::json")]
    pub shift: BigInt,
}

/// The canonical orientation of a pseudoregular invertible module.
///
/// The Clifford action of `e1e2` on the module, rebuilt from its norm form,
/// must differ from the action of `γ` by a scalar; the characteristic
/// polynomials of `e1e2` and `γ + shift` are then compared. Any mismatch is
/// a convention bug and is reported as an invariant violation.
pub fn canonical_orientation(module: &GoodFrameModule) -> Result<OrientationMatch> {
    if !module.is_invertible() {
        return Err(Error::NotInvertible(module.norm_form().content()));
    }
    let q = module.norm_form();
    let [m11, m12, m21, m22] = clifford_action_entries(&q.a, &q.b, &q.c);
    let xi = Matrix2 { m11, m12, m21, m22 };
    let gamma = module.action_matrix();
    let (orientation, shift) = if xi.m12 == gamma.m12 && xi.m21 == gamma.m21 {
        (Orientation::Positive, &xi.m11 - &gamma.m11)
    } else if xi.m12 == -&gamma.m12 && xi.m21 == -&gamma.m21 {
        (Orientation::Negative, &xi.m11 + &gamma.m11)
    } else {
        return Err(Error::Invariant(format!("e1e2 is not ±γ + k on {module}")));
    };
    let expected = &gamma.scale(&BigInt::from(orientation.sign())) + &Matrix2::scalar(&shift);
    if expected != xi {
        return Err(Error::Invariant(format!("e1e2 is not ±γ + k on {module}")));
    }
    let image = RingElement {
        x: shift.clone(),
        y: BigInt::from(orientation.sign()),
    };
    let (tr, nm) = module.ring.trace_norm(&image);
    let (xi_tr, xi_nm) = (q.b.clone(), &q.a * &q.c);
    if tr != xi_tr || nm != xi_nm {
        return Err(Error::Invariant(format!(
            "characteristic polynomial mismatch on {module}: ({xi_tr}, {xi_nm}) vs ({tr}, {nm})"
        )));
    }
    if orientation == Orientation::Negative {
        return Err(Error::Invariant(format!(
            "canonical orientation of {module} is reversed"
        )));
    }
    Ok(OrientationMatch {
        orientation,
        trace: xi_tr,
        norm: xi_nm,
        shift,
    })
}

/// Oriented similarity of primitive forms: properly equivalent, or properly
/// equivalent after the improper change of basis `e2 -> -e2` combined with
/// the similitude factor -1, which together preserve the orientation.
pub fn oriented_similar(f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
    let (d1, d2) = (f.discriminant(), g.discriminant());
    if d1 != d2 {
        return Err(Error::DiscriminantMismatch(d1, d2));
    }
    let cf = canonical_form(f)?;
    Ok(cf == canonical_form(g)? || cf == canonical_form(&g.flip_orientation().negate())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm::new(a, b, c)
    }

    #[test]
    fn clifford_examples() {
        let cl = clifford(&f(1, 0, 1)).unwrap();
        assert_eq!(cl.ring, QuadraticRing::new(0, 1).unwrap());
        let m = cl.module.action_matrix();
        let unit_entries = [&m.m11, &m.m12, &m.m21, &m.m22];
        assert!(unit_entries.iter().all(|e| e.magnitude() <= &1u32.into()));
        assert_eq!(m.trace(), BigInt::zero());
        assert_eq!(m.det(), BigInt::from(1));

        let cl = clifford(&f(1, 1, 6)).unwrap();
        assert_eq!(cl.ring, QuadraticRing::new(1, 6).unwrap());
        assert_eq!(cl.ring.discriminant(), BigInt::from(-23));
    }

    #[test]
    fn clifford_rejects_degenerate() {
        assert!(matches!(
            clifford(&f(1, 2, 1)),
            Err(Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn norm_form_examples() {
        for (t, n) in [(0, 1), (1, 6), (2, -7)] {
            let reg = GoodFrameModule::regular(&QuadraticRing::new(t, n).unwrap());
            assert_eq!(norm_form(&reg).unwrap(), f(1, t, n));
        }
        let cl = clifford(&f(2, 1, 3)).unwrap();
        assert_eq!(norm_form(&cl.module).unwrap(), f(2, 1, 3));
    }

    #[test]
    fn norm_form_rejects_bad_frame() {
        let mut m = clifford(&f(2, 1, 3)).unwrap().module;
        m.a += 1;
        assert!(matches!(norm_form(&m), Err(Error::NotGoodFrame(_))));
    }

    #[test]
    fn multiplicativity_examples() {
        let reg = GoodFrameModule::regular(&QuadraticRing::new(0, 1).unwrap());
        let x = (BigInt::from(1), BigInt::from(0));
        assert!(norm_multiplicativity_check(
            &reg,
            &RingElement::new(0, 1),
            &x
        ));
        let m = clifford(&f(2, 1, 3)).unwrap().module;
        let x = (BigInt::from(4), BigInt::from(-7));
        assert!(norm_multiplicativity_check(&m, &RingElement::one(), &x));
        assert!(norm_multiplicativity_check(
            &m,
            &RingElement::new(-3, 5),
            &x
        ));
    }

    #[test]
    fn canonical_orientation_examples() {
        let reg = GoodFrameModule::regular(&QuadraticRing::new(3, 5).unwrap());
        let o = canonical_orientation(&reg).unwrap();
        assert_eq!(o.orientation, Orientation::Positive);
        assert_eq!((o.trace, o.norm), (3.into(), 5.into()));

        let o = canonical_orientation(&clifford(&f(2, 1, 3)).unwrap().module).unwrap();
        assert_eq!(
            (o.orientation, o.trace, o.norm),
            (Orientation::Positive, 1.into(), 6.into())
        );
        let o = canonical_orientation(&clifford(&f(5, 3, 7)).unwrap().module).unwrap();
        assert_eq!(
            (o.orientation, o.trace, o.norm),
            (Orientation::Positive, 3.into(), 35.into())
        );
    }

    #[test]
    fn canonical_orientation_of_shifted_frame() {
        // shift 0 and a != 0: e1e2 = γ - a
        let m = GoodFrameModule::from_frame(1, 6, 1, -3, 2).unwrap();
        let o = canonical_orientation(&m).unwrap();
        assert_eq!(o.orientation, Orientation::Positive);
        assert_eq!(o.shift, BigInt::from(-1));
    }

    #[test]
    fn oriented_similarity_examples() {
        assert!(oriented_similar(&f(2, 1, 3), &f(2, 1, 3)).unwrap());
        assert!(!oriented_similar(&f(2, 1, 3), &f(2, -1, 3)).unwrap());
        assert!(oriented_similar(&f(1, 1, 6), &f(-1, -1, -6)).unwrap());
        assert!(matches!(
            oriented_similar(&f(1, 1, 6), &f(1, 0, 1)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn orientation_serializes_as_sign() {
        assert_eq!(i8::from(Orientation::Negative), -1);
        assert_eq!(Orientation::try_from(1i8), Ok(Orientation::Positive));
        assert!(Orientation::try_from(0i8).is_err());
        assert_eq!(Orientation::Positive.flip().flip(), Orientation::Positive);
    }
}
