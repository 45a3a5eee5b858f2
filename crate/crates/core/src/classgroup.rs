//! Composition of forms and the class groups built from it.
//!
//! [`compose`] transports the product of invertible modules back to forms
//! through the Clifford and norm functors. [`dirichlet_compose`] is the
//! classical united-forms algorithm, kept as an independent oracle.

use crate::clifford::clifford;
use crate::error::{Error, Result};
use crate::forms::{canonical_form, enumerate_classes, BinaryForm, Discriminant, UnimodularMap};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

fn check_pair(f: &BinaryForm, g: &BinaryForm) -> Result<Discriminant> {
    let d = f.checked_discriminant()?;
    let d2 = g.discriminant();
    if *d.value() != d2 {
        return Err(Error::DiscriminantMismatch(d.value().clone(), d2));
    }
    for h in [f, g] {
        if !h.is_primitive() {
            return Err(Error::Imprimitive {
                a: h.a.clone(),
                b: h.b.clone(),
                c: h.c.clone(),
            });
        }
    }
    Ok(d)
}

/// Compose through the Clifford route: build both odd Clifford modules,
/// multiply them as lattices, and take the norm form of the product.
/// The result is the canonical representative of its proper-equivalence
/// class.
pub fn compose(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    check_pair(f, g)?;
    let mf = clifford(f)?.module;
    let mg = clifford(g)?.module;
    let product = mf.mul(&mg)?;
    canonical_form(&product.norm_form())
}

/// A form properly equivalent to `g` whose leading coefficient is coprime
/// to `m`.
fn with_leading_coprime_to(g: &BinaryForm, m: &BigInt) -> Result<BinaryForm> {
    if g.a.gcd(m).is_one() {
        return Ok(g.clone());
    }
    // a primitive form represents an integer coprime to any given m with a
    // small primitive vector; search boxes of growing size
    for bound in 1i64.. {
        if bound > 1 << 16 {
            break;
        }
        for x in 0..=bound {
            for y in [-bound, bound].into_iter().chain(-bound + 1..bound) {
                let (x, y) = (BigInt::from(x), BigInt::from(y));
                if !x.gcd(&y).is_one() {
                    continue;
                }
                let v = g.evaluate(&x, &y);
                if v.is_zero() || !v.gcd(m).is_one() {
                    continue;
                }
                // complete (x, y) to a determinant +1 matrix [[x, q], [y, s]]
                let e = x.extended_gcd(&y);
                let (s, q) = (&e.x * &e.gcd, -&e.y * &e.gcd);
                let map = UnimodularMap { p: x, q, r: y, s };
                return g.transform(&map);
            }
        }
    }
    Err(Error::Invariant(format!(
        "{g} represents no value coprime to {m}"
    )))
}

/// Dirichlet composition via united forms `(a1, B, a2 C)`, `(a2, B, a1 C)`
/// whose product is `(a1 a2, B, C)`. `B` is the smallest nonnegative
/// solution of `B = b1 mod 2|a1|`, `B = b2 mod 2|a2|`.
pub fn dirichlet_compose(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    let d = check_pair(f, g)?;
    let g = with_leading_coprime_to(g, &f.a)?;
    let (a1, b1) = (&f.a, &f.b);
    let (a2, b2) = (&g.a, &g.b);
    let (m1, m2) = (a1.abs(), a2.abs());
    // B = b1 + 2 m1 k with m1 k = (b2 - b1) / 2 mod m2
    let half_diff: BigInt = (b2 - b1) / 2;
    let inv: BigInt = m1.extended_gcd(&m2).x;
    let k = (half_diff * inv).mod_floor(&m2);
    let modulus = BigInt::from(2) * &m1 * &m2;
    let big_b = (b1 + BigInt::from(2) * &m1 * k).mod_floor(&modulus);
    let a3 = a1 * a2;
    let num = &big_b * &big_b - d.value();
    let den = BigInt::from(4) * &a3;
    if !(&num % &den).is_zero() {
        return Err(Error::Invariant(format!(
            "united forms for {f}, {g} are inconsistent"
        )));
    }
    canonical_form(&BinaryForm::new(a3, big_b, num / den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Oriented similarity classes: the class group of the order.
    Wide,
    /// Proper equivalence classes: the narrow class group.
    Narrow,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Wide => "wide",
            Variant::Narrow => "narrow",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub order: usize,
    pub generator: usize,
}

/// A finite abelian group of form classes with its full composition table.
/// Index 0 is always the principal class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassGroup {
    pub disc: Discriminant,
    pub variant: Variant,
    pub reps: Vec<BinaryForm>,
    pub table: Vec<Vec<usize>>,
    /// Invariant factors `d1 | d2 | ...` with generators.
    pub structure: Vec<CyclicFactor>,
    #[serde(skip)]
    narrow_index: HashMap<BinaryForm, usize>,
    #[serde(skip)]
    narrow_to_class: Vec<usize>,
    #[serde(skip)]
    coords: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn new(d: &Discriminant, variant: Variant) -> Result<Self> {
        let narrow_reps = enumerate_classes(d)?;
        let narrow_index: HashMap<BinaryForm, usize> = narrow_reps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        let lookup = |f: &BinaryForm| -> Result<usize> {
            narrow_index
                .get(&canonical_form(f)?)
                .copied()
                .ok_or_else(|| Error::Invariant(format!("{f} matches no enumerated class")))
        };

        // On the wide side, Q is identified with -flip(Q): the same module
        // with the opposite basis orientation.
        let (reps, narrow_to_class) = if variant == Variant::Wide && !d.is_negative() {
            let mut map = vec![usize::MAX; narrow_reps.len()];
            let mut reps = Vec::new();
            for (i, f) in narrow_reps.iter().enumerate() {
                if map[i] != usize::MAX {
                    continue;
                }
                let j = lookup(&f.flip_orientation().negate())?;
                map[i] = reps.len();
                map[j] = reps.len();
                reps.push(f.clone());
            }
            (reps, map)
        } else {
            let n = narrow_reps.len();
            (narrow_reps, (0..n).collect())
        };

        let mut group = ClassGroup {
            disc: d.clone(),
            variant,
            reps,
            table: Vec::new(),
            structure: Vec::new(),
            narrow_index,
            narrow_to_class,
            coords: Vec::new(),
        };
        if group.class_of(&d.principal_form())? != 0 {
            return Err(Error::Invariant("principal class is not first".into()));
        }
        let mut table = Vec::with_capacity(group.reps.len());
        for f in &group.reps {
            let row = group
                .reps
                .iter()
                .map(|g| group.class_of(&compose(f, g)?))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        group.table = table;
        let (structure, coords) = abelian_structure(&group.table)?;
        group.structure = structure;
        group.coords = coords;
        Ok(group)
    }

    /// The class number.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i]
            .iter()
            .position(|&k| k == 0)
            .expect("group table has inverses")
    }

    pub fn element_order(&self, i: usize) -> usize {
        element_order(&self.table, i)
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> usize {
        self.structure.last().map_or(1, |c| c.order)
    }

    /// Exponents of element `i` on the generators of `structure`.
    pub fn coordinates(&self, i: usize) -> &[usize] {
        &self.coords[i]
    }

    /// Index of the class of a primitive form of this discriminant.
    pub fn class_of(&self, f: &BinaryForm) -> Result<usize> {
        let d = f.discriminant();
        if d != *self.disc.value() {
            return Err(Error::DiscriminantMismatch(d, self.disc.value().clone()));
        }
        if !f.is_primitive() {
            return Err(Error::Imprimitive {
                a: f.a.clone(),
                b: f.b.clone(),
                c: f.c.clone(),
            });
        }
        // a negative definite form names the same module as its positive
        // counterpart -flip(f)
        let g = if f.is_negative_definite() {
            f.flip_orientation().negate()
        } else {
            f.clone()
        };
        let narrow = self
            .narrow_index
            .get(&canonical_form(&g)?)
            .copied()
            .ok_or_else(|| Error::Invariant(format!("{f} matches no class representative")))?;
        Ok(self.narrow_to_class[narrow])
    }

    /// Whether two forms lie in the same class of this group.
    pub fn same_class(&self, f: &BinaryForm, g: &BinaryForm) -> Result<bool> {
        Ok(self.class_of(f)? == self.class_of(g)?)
    }

    /// Exhaustive check of identity, inverses, commutativity and
    /// associativity.
    pub fn check_axioms(&self) -> Result<()> {
        check_group_table(&self.table)
    }
}

/// Identity at index 0, closure, inverses, commutativity, associativity.
pub fn check_group_table(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    let fail = |msg: String| Err(Error::Invariant(msg));
    for (i, row) in table.iter().enumerate() {
        if row.len() != n || row.iter().any(|&k| k >= n) {
            return fail(format!("row {i} is malformed"));
        }
        if row[0] != i || table[0][i] != i {
            return fail(format!("0 is not an identity for {i}"));
        }
        if !row.contains(&0) {
            return fail(format!("{i} has no inverse"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return fail(format!("{i} and {j} do not commute"));
            }
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return fail(format!("associativity fails at ({i}, {j}, {k})"));
                }
            }
        }
    }
    Ok(())
}

fn element_order(table: &[Vec<usize>], i: usize) -> usize {
    let mut x = i;
    let mut k = 1;
    while x != 0 {
        x = table[x][i];
        k += 1;
    }
    k
}

fn power(table: &[Vec<usize>], x: usize, e: usize) -> usize {
    (0..e).fold(0, |acc, _| table[acc][x])
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Greedy basis of a finite abelian group given by its table: per prime,
/// repeatedly take a coset of largest order in the quotient by the span so
/// far and lift it to an element of the same order; the p-parts are then
/// merged into invariant factors. Returns the factors in increasing
/// (dividing) order and the coordinates of every element.
pub fn abelian_structure(table: &[Vec<usize>]) -> Result<(Vec<CyclicFactor>, Vec<Vec<usize>>)> {
    let n = table.len();
    let orders: Vec<usize> = (0..n).map(|i| element_order(table, i)).collect();
    // per prime: generators in decreasing order of order
    let mut p_parts: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in prime_factors(n) {
        let sylow: Vec<usize> = (0..n)
            .filter(|&i| prime_factors(orders[i]).iter().all(|&q| q == p))
            .collect();
        let mut span = vec![false; n];
        span[0] = true;
        let mut span_size = 1;
        let mut gens = Vec::new();
        while span_size < sylow.len() {
            let coset_order = |x: usize| {
                let mut y = x;
                let mut k = 1;
                while !span[y] {
                    y = table[y][x];
                    k += 1;
                }
                k
            };
            let best = sylow
                .iter()
                .map(|&x| coset_order(x))
                .max()
                .expect("nonempty");
            let lift = sylow
                .iter()
                .copied()
                .find(|&x| coset_order(x) == best && orders[x] == best)
                .ok_or_else(|| Error::Invariant("no lift of maximal order".into()))?;
            let members: Vec<usize> = (0..n).filter(|&y| span[y]).collect();
            let mut xk = lift;
            for _ in 1..best {
                for &y in &members {
                    span[table[y][xk]] = true;
                }
                xk = table[xk][lift];
            }
            span_size = span.iter().filter(|&&s| s).count();
            gens.push((best, lift));
        }
        p_parts.push(gens);
    }
    let rank = p_parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut factors: Vec<CyclicFactor> = (0..rank)
        .map(|i| {
            p_parts.iter().filter_map(|g| g.get(i)).fold(
                CyclicFactor {
                    order: 1,
                    generator: 0,
                },
                |acc, &(ord, gen)| CyclicFactor {
                    order: acc.order * ord,
                    generator: table[acc.generator][gen],
                },
            )
        })
        .collect();
    factors.reverse();

    let mut coords = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let total: usize = factors.iter().map(|f| f.order).product();
    for idx in 0..total {
        let mut rest = idx;
        let mut exps = Vec::with_capacity(factors.len());
        let mut x = 0;
        for f in &factors {
            let e = rest % f.order;
            rest /= f.order;
            exps.push(e);
            x = table[x][power(table, f.generator, e)];
        }
        if seen[x] {
            return Err(Error::Invariant("generators are not independent".into()));
        }
        seen[x] = true;
        coords[x] = exps;
    }
    if total != n {
        return Err(Error::Invariant("generators do not span the group".into()));
    }
    Ok((factors, coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm::new(a, b, c)
    }

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn compose_examples() {
        for g in [f(1, 1, 6), f(2, 1, 3), f(2, -1, 3)] {
            assert_eq!(compose(&f(1, 1, 6), &g).unwrap(), g);
        }
        assert_eq!(compose(&f(2, 1, 3), &f(2, 1, 3)).unwrap(), f(2, -1, 3));
        assert_eq!(compose(&f(2, 1, 3), &f(2, -1, 3)).unwrap(), f(1, 1, 6));
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(
            dirichlet_compose(&f(2, 1, 3), &f(2, 1, 3)).unwrap(),
            f(2, -1, 3)
        );
        assert_eq!(
            dirichlet_compose(&f(1, 1, 6), &f(2, -1, 3)).unwrap(),
            f(2, -1, 3)
        );
        assert_eq!(
            dirichlet_compose(&f(3, 1, 2), &f(2, 1, 3)).unwrap(),
            f(1, 1, 6)
        );
    }

    #[test]
    fn compose_errors() {
        assert!(matches!(
            compose(&f(1, 1, 6), &f(1, 0, 1)),
            Err(Error::DiscriminantMismatch(..))
        ));
        assert!(matches!(
            compose(&f(2, 2, 4), &f(1, 0, 7)),
            Err(Error::Imprimitive { .. })
        ));
        assert!(matches!(
            dirichlet_compose(&f(1, 0, 1), &f(1, 1, 6)),
            Err(Error::DiscriminantMismatch(..))
        ));
    }

    #[test]
    fn class_group_examples() {
        let g = ClassGroup::new(&disc(-4), Variant::Wide).unwrap();
        assert_eq!(g.reps, vec![f(1, 0, 1)]);
        assert!(g.structure.is_empty());

        let g = ClassGroup::new(&disc(-23), Variant::Wide).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(
            g.structure.iter().map(|c| c.order).collect::<Vec<_>>(),
            vec![3]
        );
        g.check_axioms().unwrap();

        let narrow = ClassGroup::new(&disc(12), Variant::Narrow).unwrap();
        assert_eq!(narrow.order(), 2);
        assert_ne!(
            narrow.class_of(&f(1, 0, -3)).unwrap(),
            narrow.class_of(&f(-1, 0, 3)).unwrap()
        );
        let wide = ClassGroup::new(&disc(12), Variant::Wide).unwrap();
        assert_eq!(wide.order(), 1);
    }

    #[test]
    fn class_of_examples() {
        let g = ClassGroup::new(&disc(-23), Variant::Wide).unwrap();
        assert_eq!(g.class_of(&f(1, 1, 6)).unwrap(), g.identity());
        let i = g.class_of(&f(6, 5, 2)).unwrap();
        assert_ne!(i, g.identity());
        let m = UnimodularMap::new(3, 2, 4, 3).unwrap();
        assert_eq!(g.class_of(&f(6, 5, 2).transform(&m).unwrap()).unwrap(), i);
        assert!(g.class_of(&f(1, 0, 1)).is_err());
    }

    #[test]
    fn structure_of_non_cyclic_group() {
        // D = -420 has class group (Z/2)^3
        let g = ClassGroup::new(&disc(-420), Variant::Wide).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(
            g.structure.iter().map(|c| c.order).collect::<Vec<_>>(),
            vec![2, 2, 2]
        );
        g.check_axioms().unwrap();
    }

    #[test]
    fn check_group_table_rejects_broken_tables() {
        assert!(check_group_table(&[vec![0, 1], vec![1, 0]]).is_ok());
        assert!(check_group_table(&[vec![0, 1], vec![1, 1]]).is_err());
        assert!(check_group_table(&[vec![1, 0], vec![0, 1]]).is_err());
    }
}
