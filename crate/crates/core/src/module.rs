//! Rank-2 modules over quadratic orders, presented in a good frame.
//!
//! A module is a lattice `Z e1 + Z e2` with an action of the ring generator
//! `γ`. Action matrices act on column coordinate vectors: column `j` holds
//! the coordinates of `γ·e_j`. In a good frame the action of `γ - shift` is
//! `[[a, b], [c, 0]]`, and pseudoregularity reads `t' = a`, `n' = -bc` for
//! the shifted generator.

use crate::clifford;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::ring::{Matrix2, QuadraticRing, RingElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoodFrameModule {
    pub ring: QuadraticRing,
    #[serde(with = "crate::json")]
    pub a: BigInt,
    #[serde(with = "crate::json")]
    pub b: BigInt,
    #[serde(with = "crate::json")]
    pub c: BigInt,
    /// `γ` acts as `[[a, b], [c, 0]] + shift·Id`.
    #[serde(with = "crate::json")]
    pub shift: BigInt,
}

impl fmt::Display for GoodFrameModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "frame ({}, {}, {}) shift {} over (t, n) = ({}, {})",
            self.a, self.b, self.c, self.shift, self.ring.t, self.ring.n
        )
    }
}

/// Pseudoregularity of a candidate module over the raw pair `(t, n)`.
///
/// The matrix must satisfy `M² = tM - n·Id`. Rings with zero discriminant or
/// `n = 0` are rejected as degenerate; split rings are otherwise allowed.
pub fn is_pseudoregular(t: &BigInt, n: &BigInt, m: &Matrix2) -> Result<bool> {
    let disc = t * t - BigInt::from(4) * n;
    if disc.is_zero() || n.is_zero() {
        return Err(Error::DegenerateRing {
            t: t.clone(),
            n: n.clone(),
        });
    }
    let lhs = m * m;
    let rhs = &m.scale(t) - &Matrix2::scalar(n);
    if lhs != rhs {
        return Err(Error::NotAModule);
    }
    Ok(m.trace() == *t)
}

impl GoodFrameModule {
    /// Normalize a pseudoregular action matrix of `γ` by shifting the
    /// generator until the lower-right entry vanishes.
    pub fn good_frame(ring: &QuadraticRing, m: &Matrix2) -> Result<Self> {
        if !is_pseudoregular(&ring.t, &ring.n, m)? {
            return Err(Error::NotPseudoregular {
                trace: m.trace(),
                t: ring.t.clone(),
            });
        }
        let shift = m.m22.clone();
        Ok(GoodFrameModule {
            ring: ring.clone(),
            a: &m.m11 - &shift,
            b: m.m12.clone(),
            c: m.m21.clone(),
            shift,
        })
    }

    /// A module given directly by `(t, n, a, b, c)` with `γ` acting as
    /// `[[a, b], [c, 0]]`; requires `t = a` and `n = -bc`.
    pub fn from_frame(
        t: impl Into<BigInt>,
        n: impl Into<BigInt>,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        let ring = QuadraticRing::new(t, n)?;
        let (a, b, c) = (a.into(), b.into(), c.into());
        if ring.t != a {
            return Err(Error::NotGoodFrame("t must equal a"));
        }
        if ring.n != -(&b * &c) {
            return Err(Error::NotGoodFrame("n must equal -bc"));
        }
        Ok(GoodFrameModule {
            ring,
            a,
            b,
            c,
            shift: BigInt::zero(),
        })
    }

    /// The ring acting on itself, in the basis `(1, γ)`.
    pub fn regular(ring: &QuadraticRing) -> Self {
        let m = Matrix2 {
            m11: BigInt::zero(),
            m12: -&ring.n,
            m21: BigInt::one(),
            m22: ring.t.clone(),
        };
        Self::good_frame(ring, &m).expect("regular module is pseudoregular")
    }

    /// The ring generated by `γ - shift`, for which the frame is good.
    pub fn frame_ring(&self) -> QuadraticRing {
        self.ring.shifted(&-&self.shift)
    }

    pub fn frame_matrix(&self) -> Matrix2 {
        Matrix2 {
            m11: self.a.clone(),
            m12: self.b.clone(),
            m21: self.c.clone(),
            m22: BigInt::zero(),
        }
    }

    /// The action matrix of `γ` itself.
    pub fn action_matrix(&self) -> Matrix2 {
        &self.frame_matrix() + &Matrix2::scalar(&self.shift)
    }

    /// The action matrix of `x + yγ`.
    pub fn element_action(&self, u: &RingElement) -> Matrix2 {
        &Matrix2::scalar(&u.x) + &self.action_matrix().scale(&u.y)
    }

    pub fn is_good(&self) -> bool {
        let fr = self.frame_ring();
        fr.t == self.a && fr.n == -(&self.b * &self.c)
    }

    /// The same module over another presentation of the same order.
    pub fn over_ring(&self, ring: &QuadraticRing) -> Result<Self> {
        if !self.ring.same_order(ring) {
            return Err(Error::RingMismatch(
                self.ring.discriminant(),
                ring.discriminant(),
            ));
        }
        // the new generator is γ + k
        let k = (&ring.t - &self.ring.t) / 2;
        Ok(GoodFrameModule {
            ring: ring.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            shift: &self.shift + k,
        })
    }

    /// The norm form `(c, -a, -b)`: the exterior form of the action with
    /// the value line trivialized so that the regular module gives
    /// `(1, t, n)`.
    pub fn norm_form(&self) -> BinaryForm {
        let [a, b, c] = clifford::norm_coefficients(&self.action_matrix_array());
        BinaryForm { a, b, c }
    }

    pub(crate) fn action_matrix_array(&self) -> [BigInt; 4] {
        let m = self.action_matrix();
        [m.m11, m.m12, m.m21, m.m22]
    }

    /// Invertible modules are exactly those with primitive norm form.
    pub fn is_invertible(&self) -> bool {
        self.norm_form().is_primitive()
    }

    fn ensure_invertible(&self) -> Result<()> {
        let content = self.norm_form().content();
        if content.is_one() {
            Ok(())
        } else {
            Err(Error::NotInvertible(content))
        }
    }

    /// The dual module `Hom(I, Z)`; the action is transposed.
    pub fn dual(&self) -> Self {
        let m = self.action_matrix().transpose();
        Self::good_frame(&self.ring, &m).expect("dual of a pseudoregular module is pseudoregular")
    }

    /// Precompose the ring action with the standard involution and reverse
    /// the second basis vector; the norm form becomes `(a, -b, c)`.
    pub fn flip_orientation(&self) -> Self {
        GoodFrameModule {
            ring: self.ring.clone(),
            a: -&self.a,
            b: self.b.clone(),
            c: self.c.clone(),
            shift: &self.a + &self.shift,
        }
    }

    /// Isomorphism of modules over the same order, decided on norm forms.
    pub fn is_isomorphic(&self, other: &GoodFrameModule) -> Result<bool> {
        if !self.ring.same_order(&other.ring) {
            return Err(Error::RingMismatch(
                self.ring.discriminant(),
                other.ring.discriminant(),
            ));
        }
        clifford::oriented_similar(&self.norm_form(), &other.norm_form())
    }

    /// A positively oriented basis of a lattice in `Q(γ)` isomorphic to this
    /// module, whose norm form relative to that basis is `self.norm_form()`.
    fn positive_lattice(&self) -> Result<[RingElement; 2]> {
        let m = self.action_matrix();
        if m.m21.is_zero() {
            return Err(Error::Invariant(format!("{self}: γ has an eigenvector")));
        }
        // e1 -> m21, e2 -> γ - m11 is γ-equivariant
        let e1 = RingElement {
            x: m.m21.clone(),
            y: BigInt::zero(),
        };
        let e2 = RingElement {
            x: -&m.m11,
            y: BigInt::one(),
        };
        if m.m21.is_positive() {
            return Ok([e1, e2]);
        }
        if self.ring.discriminant().is_negative() {
            // only the basis can absorb the sign: use (e1, -e2)
            let e2 = RingElement { x: -e2.x, y: -e2.y };
            return Ok([e1, e2]);
        }
        let lambda = negative_norm_element(&self.ring)?;
        Ok([self.ring.mul(&lambda, &e1), self.ring.mul(&lambda, &e2)])
    }

    /// Build the module carried by a lattice with basis `(v1, v2)`.
    pub fn from_lattice(ring: &QuadraticRing, v1: &RingElement, v2: &RingElement) -> Result<Self> {
        let basis = Matrix2 {
            m11: v1.x.clone(),
            m12: v2.x.clone(),
            m21: v1.y.clone(),
            m22: v2.y.clone(),
        };
        let det = basis.det();
        if det.is_zero() {
            return Err(Error::Invariant("lattice basis is singular".into()));
        }
        let gamma = RingElement::generator();
        let mut cols = Vec::with_capacity(2);
        for v in [v1, v2] {
            let w = ring.mul(&gamma, v);
            // solve basis * (p, q) = w by Cramer's rule
            let p = &w.x * &basis.m22 - &basis.m12 * &w.y;
            let q = &basis.m11 * &w.y - &w.x * &basis.m21;
            if !(&p % &det).is_zero() || !(&q % &det).is_zero() {
                return Err(Error::Invariant("lattice is not stable under γ".into()));
            }
            cols.push((p / &det, q / &det));
        }
        let m = Matrix2 {
            m11: cols[0].0.clone(),
            m12: cols[1].0.clone(),
            m21: cols[0].1.clone(),
            m22: cols[1].1.clone(),
        };
        Self::good_frame(ring, &m)
    }

    /// Product of two invertible modules over the same order, computed as
    /// the product of lattices in `Q(γ)` with a positively oriented Hermite
    /// basis. The result lives over `self.ring`.
    pub fn mul(&self, other: &GoodFrameModule) -> Result<GoodFrameModule> {
        let other = other.over_ring(&self.ring)?;
        self.ensure_invertible()?;
        other.ensure_invertible()?;
        let ring = &self.ring;
        let l1 = self.positive_lattice()?;
        let l2 = other.positive_lattice()?;
        let gens: Vec<RingElement> = l1
            .iter()
            .flat_map(|u| l2.iter().map(move |v| ring.mul(u, v)))
            .collect();
        let [v1, v2] = hermite_basis(&gens)?;
        Self::from_lattice(ring, &v1, &v2)
    }
}

/// An element `k + γ` of negative norm; exists when the discriminant is
/// positive.
fn negative_norm_element(ring: &QuadraticRing) -> Result<RingElement> {
    let k = (-&ring.t).div_floor(&BigInt::from(2));
    let u = RingElement {
        x: k,
        y: BigInt::one(),
    };
    let (_, nm) = ring.trace_norm(&u);
    if nm.is_negative() {
        Ok(u)
    } else {
        Err(Error::Invariant(format!(
            "no negative norm element found in {ring}"
        )))
    }
}

/// Hermite basis `(A, 0), (B, C)` with `A, C > 0` and `0 <= B < A` of the
/// lattice spanned by `gens` in coordinates `(x, y)` of `x + yγ`.
pub(crate) fn hermite_basis(gens: &[RingElement]) -> Result<[RingElement; 2]> {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut first_col = BigInt::zero();
    for g in gens {
        let v = (g.x.clone(), g.y.clone());
        if v.1.is_zero() {
            first_col = first_col.gcd(&v.0);
            continue;
        }
        match pivot.take() {
            None => pivot = Some(v),
            Some(p) => {
                let e = p.1.extended_gcd(&v.1);
                let combined = (&e.x * &p.0 + &e.y * &v.0, &e.x * &p.1 + &e.y * &v.1);
                let pq = &p.1 / &e.gcd;
                let vq = &v.1 / &e.gcd;
                let zero_y = &vq * &p.0 - &pq * &v.0;
                first_col = first_col.gcd(&zero_y);
                pivot = Some(combined);
            }
        }
    }
    let (mut bx, mut cy) = pivot.ok_or_else(|| Error::Invariant("lattice has rank < 2".into()))?;
    if first_col.is_zero() {
        return Err(Error::Invariant("lattice has rank < 2".into()));
    }
    if cy.is_negative() {
        bx = -bx;
        cy = -cy;
    }
    let a = first_col.abs();
    bx = bx.mod_floor(&a);
    Ok([
        RingElement {
            x: a,
            y: BigInt::zero(),
        },
        RingElement { x: bx, y: cy },
    ])
}
