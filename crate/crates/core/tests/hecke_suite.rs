mod common;

use common::{represented, small};
use gauss_core::hecke::{
    eigenforms, eigenvalue, hecke_operator, hecke_table, is_prime, split_prime_class,
    verify_characters_span, OmfSpace, PrimeChoice, Splitting,
};
use gauss_core::Discriminant;

fn space(d: i64) -> OmfSpace {
    OmfSpace::new(&Discriminant::new(d).unwrap()).unwrap()
}

/// Kronecker symbol (D/p) for a prime p, by direct search for square roots.
fn splits(d: i64, p: i64) -> bool {
    if p == 2 {
        return d.rem_euclid(8) == 1;
    }
    (0..p).any(|x| (x * x - d).rem_euclid(p) == 0)
}

#[test]
fn operators_commute_and_characters_are_eigenforms() {
    for d in [-23i64, -47, -71, -84, -231, -420] {
        let s = space(d);
        let (chars, rows) = hecke_table(&s, 100).unwrap();
        assert_eq!(chars.len(), s.dimension());
        let ops: Vec<_> = rows
            .iter()
            .map(|r| hecke_operator(&s, r.p, PrimeChoice::P).unwrap())
            .collect();
        for t in &ops {
            assert!(t.is_permutation());
            let tc = hecke_operator(&s, t.prime, PrimeChoice::Conjugate).unwrap();
            assert_eq!(t.adjoint(), tc.permutation);
            for u in &ops {
                assert!(t.commutes_with(u));
            }
            for chi in &chars {
                let lambda = eigenvalue(chi, t).unwrap();
                assert_eq!(lambda, chi.value(t.ideal_class));
                assert_eq!(eigenvalue(chi, &tc).unwrap(), lambda.conj());
            }
        }
    }
}

#[test]
fn admissible_primes_are_the_split_primes() {
    for d in [-23i64, -47, -84] {
        let s = space(d);
        let (_, rows) = hecke_table(&s, 100).unwrap();
        let ps: Vec<u64> = rows.iter().map(|r| r.p).collect();
        let expected: Vec<u64> = (2..=100)
            .filter(|&p| is_prime(p) && d % p as i64 != 0 && splits(d, p as i64))
            .collect();
        assert_eq!(ps, expected, "D = {d}");
        for r in &rows {
            assert_eq!(r.form.discriminant(), d.into());
            assert!(represented(small(&r.form), r.p as i64));
        }
    }
}

#[test]
fn smallest_prime_with_trivial_class_for_minus_23() {
    let s = space(-23);
    let trivial: Vec<u64> = (2..=200u64)
        .filter(|&p| is_prime(p) && p != 23)
        .filter(|&p| {
            matches!(
                split_prime_class(&s, p).unwrap(),
                Splitting::Split { class: 0, .. }
            )
        })
        .collect();
    assert_eq!(trivial[0], 59);
    // independent check: these are the primes x² + xy + 6y² represents
    let brute: Vec<u64> = (2..=200u64)
        .filter(|&p| is_prime(p) && p != 23 && represented((1, 1, 6), p as i64))
        .collect();
    assert_eq!(trivial, brute);
    let t = hecke_operator(&s, 59, PrimeChoice::P).unwrap();
    assert_eq!(t.permutation, vec![0, 1, 2]);
}

#[test]
fn t2_has_all_cube_roots_of_unity() {
    let s = space(-23);
    let chars = eigenforms(&s).unwrap();
    verify_characters_span(&s, &chars).unwrap();
    let t2 = hecke_operator(&s, 2, PrimeChoice::P).unwrap();
    let mut eig: Vec<(usize, usize)> = chars
        .iter()
        .map(|c| {
            let z = eigenvalue(c, &t2).unwrap();
            (z.exponent, z.order)
        })
        .collect();
    eig.sort();
    assert_eq!(eig, vec![(0, 3), (1, 3), (2, 3)]);
}

#[test]
fn character_counts() {
    for (d, h) in [(-4i64, 1usize), (-23, 3), (-47, 5), (-71, 7), (-420, 8)] {
        let s = space(d);
        let chars = eigenforms(&s).unwrap();
        assert_eq!(chars.len(), h);
        verify_characters_span(&s, &chars).unwrap();
    }
}
