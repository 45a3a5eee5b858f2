//! Orthogonal modular forms of trivial weight on the class group of an
//! imaginary quadratic order, and the Hecke operators at split primes.
//!
//! A form is a function `Pic S -> C`; `T_P` sends `f` to `A -> f(AP)`. The
//! operators are permutations of the class indices and the characters of
//! the group are their simultaneous eigenvectors. All values are exact
//! roots of unity.

use crate::classgroup::{ClassGroup, Variant};
use crate::cyclotomic::{CyclotomicField, RootOfUnity};
use crate::error::{Error, Result};
use crate::forms::{BinaryForm, Discriminant};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// The space of functions on the class group of a negative discriminant.
#[derive(Clone, Debug)]
pub struct OmfSpace {
    pub group: ClassGroup,
}

impl OmfSpace {
    pub fn new(d: &Discriminant) -> Result<Self> {
        if !d.is_negative() {
            return Err(Error::Unsupported(
                "modular forms need a definite form (D < 0)",
            ));
        }
        Ok(OmfSpace {
            group: ClassGroup::new(d, Variant::Wide)?,
        })
    }

    pub fn dimension(&self) -> usize {
        self.group.order()
    }

    pub fn disc(&self) -> &Discriminant {
        &self.group.disc
    }

    fn check_same(&self, d: &Discriminant) -> Result<()> {
        if d != self.disc() {
            return Err(Error::DiscriminantMismatch(
                d.value().clone(),
                self.disc().value().clone(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Splitting {
    Split { form: BinaryForm, class: usize },
    Inert,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// The form `(p, b, (b² - D) / 4p)` with the least `b >= 0` solving
/// `b² = D mod 4p`, or `None` when `p` is inert. Primes dividing `D` are
/// rejected.
pub fn prime_form(d: &Discriminant, p: u64) -> Result<Option<BinaryForm>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.into()));
    }
    let dv = d.value();
    let pb = BigInt::from(p);
    if (dv % &pb).is_zero() {
        return Err(Error::BadPrime(pb));
    }
    let four_p = BigInt::from(4) * &pb;
    let target = dv.mod_floor(&four_p);
    // b ranges over [0, 2p); b and 2p - b give the two conjugate primes
    let mut b = BigInt::zero();
    let two_p = BigInt::from(2) * &pb;
    while b < two_p {
        if (&b * &b).mod_floor(&four_p) == target {
            let c = (&b * &b - dv) / &four_p;
            return Ok(Some(BinaryForm::new(pb, b, c)));
        }
        b += BigInt::one();
    }
    Ok(None)
}

/// Whether `p` splits in the order, and if so the class of the prime
/// above it.
pub fn split_prime_class(space: &OmfSpace, p: u64) -> Result<Splitting> {
    Ok(match prime_form(space.disc(), p)? {
        Some(form) => {
            let class = space.group.class_of(&form)?;
            Splitting::Split { form, class }
        }
        None => Splitting::Inert,
    })
}

/// Which of the two primes above a split `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeChoice {
    P,
    Conjugate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeOperator {
    #[serde(skip)]
    disc: Discriminant,
    pub prime: u64,
    pub ideal_class: usize,
    /// `permutation[i]` is the class `A_i P`.
    pub permutation: Vec<usize>,
}

impl HeckeOperator {
    /// Translation by the class with index `class`.
    pub fn translation(space: &OmfSpace, prime: u64, class: usize) -> Self {
        let permutation = (0..space.dimension())
            .map(|i| space.group.mul(i, class))
            .collect();
        HeckeOperator {
            disc: space.disc().clone(),
            prime,
            ideal_class: class,
            permutation,
        }
    }

    /// `(T f)(A) = f(AP)`.
    pub fn apply<T: Clone>(&self, f: &[T]) -> Vec<T> {
        self.permutation.iter().map(|&j| f[j].clone()).collect()
    }

    /// The 0/1 matrix with `M[i][j] = 1` iff `j = A_i P`, so that
    /// `T f = M f`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.permutation.len();
        self.permutation
            .iter()
            .map(|&j| (0..n).map(|k| u8::from(k == j)).collect())
            .collect()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.permutation.len()];
        for &j in &self.permutation {
            if j >= seen.len() || seen[j] {
                return false;
            }
            seen[j] = true;
        }
        true
    }

    pub fn compose(&self, other: &HeckeOperator) -> Vec<usize> {
        // (S T f)(A) = (T f)(A P_S) = f(A P_S P_T)
        self.permutation
            .iter()
            .map(|&j| other.permutation[j])
            .collect()
    }

    pub fn commutes_with(&self, other: &HeckeOperator) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// The transpose permutation.
    pub fn adjoint(&self) -> Vec<usize> {
        let mut inv = vec![0; self.permutation.len()];
        for (i, &j) in self.permutation.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }
}

pub fn hecke_operator(space: &OmfSpace, p: u64, which: PrimeChoice) -> Result<HeckeOperator> {
    match split_prime_class(space, p)? {
        Splitting::Inert => Err(Error::NotSplit(p.into())),
        Splitting::Split { class, .. } => {
            let class = match which {
                PrimeChoice::P => class,
                PrimeChoice::Conjugate => space.group.inverse(class),
            };
            Ok(HeckeOperator::translation(space, p, class))
        }
    }
}

/// A character of the class group, determined by its exponents on the
/// generators of the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    #[serde(skip)]
    disc: Discriminant,
    /// `k_j mod d_j`: the generator of order `d_j` goes to `ζ_{d_j}^{k_j}`.
    pub exponents: Vec<usize>,
    /// Value on each class, as a power of `ζ_m` with `m` the group exponent.
    pub values: Vec<RootOfUnity>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(RootOfUnity::is_one)
    }

    pub fn value(&self, class: usize) -> RootOfUnity {
        self.values[class]
    }
}

/// All `|G|` characters, in lexicographic order of their exponent vectors
/// (the trivial character first). Each is checked against the table.
pub fn eigenforms(space: &OmfSpace) -> Result<Vec<Character>> {
    let g = &space.group;
    let m = g.exponent();
    let orders: Vec<usize> = g.structure.iter().map(|f| f.order).collect();
    let mut out = Vec::with_capacity(g.order());
    for idx in 0..g.order() {
        let mut rest = idx;
        let exponents: Vec<usize> = orders
            .iter()
            .map(|&d| {
                let k = rest % d;
                rest /= d;
                k
            })
            .collect();
        let values = (0..g.order())
            .map(|class| {
                let e = g
                    .coordinates(class)
                    .iter()
                    .zip(&exponents)
                    .zip(&orders)
                    .map(|((&c, &k), &d)| c * k * (m / d))
                    .sum::<usize>();
                RootOfUnity::new(e, m)
            })
            .collect();
        let chi = Character {
            disc: space.disc().clone(),
            exponents,
            values,
        };
        for i in 0..g.order() {
            for j in 0..g.order() {
                if chi.value(g.mul(i, j)) != chi.value(i).mul(&chi.value(j)) {
                    return Err(Error::Invariant(format!(
                        "character {:?} is not multiplicative",
                        chi.exponents
                    )));
                }
            }
        }
        out.push(chi);
    }
    Ok(out)
}

/// `χ([P])`, after checking exactly that `T χ = χ([P]) χ`.
pub fn eigenvalue(chi: &Character, t: &HeckeOperator) -> Result<RootOfUnity> {
    if chi.disc != t.disc {
        return Err(Error::DiscriminantMismatch(
            chi.disc.value().clone(),
            t.disc.value().clone(),
        ));
    }
    let lambda = chi.value(t.ideal_class);
    let image = t.apply(&chi.values);
    let scaled: Vec<RootOfUnity> = chi.values.iter().map(|v| v.mul(&lambda)).collect();
    if image != scaled {
        return Err(Error::Invariant(format!(
            "character {:?} is not an eigenvector of T_{}",
            chi.exponents, t.prime
        )));
    }
    Ok(lambda)
}

/// Checks `X X* = |G| I` for the character table `X` in `Z[ζ_m]`, which
/// makes `X` invertible.
pub fn verify_characters_span(space: &OmfSpace, chars: &[Character]) -> Result<()> {
    space.check_same(
        &chars
            .first()
            .map_or(space.disc().clone(), |c| c.disc.clone()),
    )?;
    let n = space.dimension();
    if chars.len() != n {
        return Err(Error::Invariant(format!(
            "{} characters for a group of order {n}",
            chars.len()
        )));
    }
    let field = CyclotomicField::new(space.group.exponent());
    for (i, x) in chars.iter().enumerate() {
        for (j, y) in chars.iter().enumerate() {
            let s = field.sum_of_roots(
                x.values
                    .iter()
                    .zip(&y.values)
                    .map(|(u, v)| u.mul(&v.conj())),
            );
            let expected = if i == j {
                field.integer(n)
            } else {
                field.zero()
            };
            if s != expected {
                return Err(Error::Invariant(format!(
                    "characters {i} and {j} are not orthogonal"
                )));
            }
        }
    }
    Ok(())
}

/// One row of the `hecke` table: an admissible prime, its operator, and
/// the eigenvalue of every character.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeRow {
    pub p: u64,
    pub form: BinaryForm,
    pub class: usize,
    pub permutation: Vec<usize>,
    pub eigenvalues: Vec<RootOfUnity>,
}

/// Operators and eigenvalues for every split prime `p <= pmax` not dividing
/// the discriminant.
pub fn hecke_table(space: &OmfSpace, pmax: u64) -> Result<(Vec<Character>, Vec<HeckeRow>)> {
    let chars = eigenforms(space)?;
    verify_characters_span(space, &chars)?;
    let mut rows = Vec::new();
    let dv = space.disc().value();
    for p in (2..=pmax).filter(|&p| is_prime(p)) {
        if (dv % BigInt::from(p)).is_zero() {
            continue;
        }
        let Splitting::Split { form, class } = split_prime_class(space, p)? else {
            continue;
        };
        let t = HeckeOperator::translation(space, p, class);
        let eigenvalues = chars
            .iter()
            .map(|chi| eigenvalue(chi, &t))
            .collect::<Result<_>>()?;
        rows.push(HeckeRow {
            p,
            form,
            class,
            permutation: t.permutation,
            eigenvalues,
        });
    }
    Ok((chars, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(d: i64) -> OmfSpace {
        OmfSpace::new(&Discriminant::new(d).unwrap()).unwrap()
    }

    #[test]
    fn split_prime_examples() {
        let s = space(-23);
        match split_prime_class(&s, 2).unwrap() {
            Splitting::Split { form, class } => {
                assert_eq!(form, BinaryForm::new(2, 1, 3));
                assert_eq!(class, s.group.class_of(&BinaryForm::new(2, 1, 3)).unwrap());
            }
            Splitting::Inert => panic!("2 splits for D = -23"),
        }
        assert_eq!(split_prime_class(&space(-4), 3).unwrap(), Splitting::Inert);
        assert!(matches!(split_prime_class(&s, 23), Err(Error::BadPrime(_))));
        assert!(matches!(split_prime_class(&s, 9), Err(Error::NotPrime(_))));
    }

    #[test]
    fn hecke_operator_examples() {
        let s = space(-23);
        let t2 = hecke_operator(&s, 2, PrimeChoice::P).unwrap();
        assert!(t2.is_permutation());
        assert!(t2.permutation.iter().enumerate().all(|(i, &j)| i != j));
        let t2c = hecke_operator(&s, 2, PrimeChoice::Conjugate).unwrap();
        let id: Vec<usize> = (0..3).collect();
        assert_eq!(t2.compose(&t2c), id);
        assert_eq!(t2.adjoint(), t2c.permutation);
        assert!(matches!(
            hecke_operator(&s, 5, PrimeChoice::P),
            Err(Error::NotSplit(_))
        ));
        assert!(OmfSpace::new(&Discriminant::new(12).unwrap()).is_err());
    }

    #[test]
    fn eigenform_examples() {
        let chars = eigenforms(&space(-4)).unwrap();
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_trivial());

        let s = space(-23);
        let chars = eigenforms(&s).unwrap();
        assert_eq!(chars.len(), 3);
        verify_characters_span(&s, &chars).unwrap();
        let t2 = hecke_operator(&s, 2, PrimeChoice::P).unwrap();
        let t2c = hecke_operator(&s, 2, PrimeChoice::Conjugate).unwrap();
        let mut exps: Vec<usize> = chars
            .iter()
            .map(|c| eigenvalue(c, &t2).unwrap().exponent)
            .collect();
        exps.sort();
        assert_eq!(exps, vec![0, 1, 2]);
        for c in &chars {
            assert_eq!(
                eigenvalue(c, &t2c).unwrap(),
                eigenvalue(c, &t2).unwrap().conj()
            );
        }

        assert_eq!(eigenforms(&space(-47)).unwrap().len(), 5);
    }

    #[test]
    fn eigenvalue_rejects_foreign_operator() {
        let chi = eigenforms(&space(-23)).unwrap().remove(0);
        let t = hecke_operator(&space(-47), 2, PrimeChoice::P).unwrap();
        assert!(matches!(
            eigenvalue(&chi, &t),
            Err(Error::DiscriminantMismatch(..))
        ));
    }
}
