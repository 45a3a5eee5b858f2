//! Independent reference implementations used only by the test suites.
//! None of these call into the library's reduction or composition code.
#![allow(dead_code)]

use gauss_core::BinaryForm;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn form(a: i64, b: i64, c: i64) -> BinaryForm {
    BinaryForm::new(a, b, c)
}

pub fn small(f: &BinaryForm) -> (i64, i64, i64) {
    (
        f.a.to_i64().unwrap(),
        f.b.to_i64().unwrap(),
        f.c.to_i64().unwrap(),
    )
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && isqrt(n).pow(2) == n
}

fn apply(f: (i64, i64, i64), p: i64, q: i64, r: i64, s: i64) -> (i64, i64, i64) {
    let (a, b, c) = f;
    (
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )
}

/// Searches all determinant +1 matrices with entries in `[-bound, bound]`
/// for one carrying `f` to `g`.
pub fn brute_sl2_equivalent(f: (i64, i64, i64), g: (i64, i64, i64), bound: i64) -> bool {
    for p in -bound..=bound {
        for r in -bound..=bound {
            if gcd(p, r) != 1 {
                continue;
            }
            // first column must represent g.a
            let (a, b, c) = f;
            if a * p * p + b * p * r + c * r * r != g.0 {
                continue;
            }
            for q in -bound..=bound {
                // s from p s - q r = 1
                if p != 0 {
                    if (1 + q * r) % p != 0 {
                        continue;
                    }
                    let s = (1 + q * r) / p;
                    if apply(f, p, q, r, s) == g {
                        return true;
                    }
                } else {
                    for s in -bound..=bound {
                        if p * s - q * r == 1 && apply(f, p, q, r, s) == g {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Class number of a negative discriminant by counting reduced primitive
/// forms: `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn brute_class_number_negative(d: i64) -> usize {
    assert!(d < 0);
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && (-b == a || a == c)) {
                continue;
            }
            if gcd(gcd(a, b), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

/// Narrow class number of a positive discriminant as the number of cycles
/// of Gauss-reduced forms (`0 < b < √D`, `√D - b < 2|a| < √D + b`) under
/// the right-neighbour operator.
pub fn brute_narrow_class_number_positive(d: i64) -> usize {
    assert!(d > 0 && !is_square(d));
    let sd = (d as f64).sqrt();
    let reduced = |a: i64, b: i64| {
        let (a, b) = (a as f64, b as f64);
        b > 0.0 && b < sd && sd - b < 2.0 * a.abs() && 2.0 * a.abs() < sd + b
    };
    let mut forms = Vec::new();
    for b in 1..=isqrt(d) {
        if (b * b - d) % 4 != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let c = ac / sa;
                if reduced(sa, b) && gcd(gcd(sa, b), c) == 1 {
                    forms.push((sa, b, c));
                }
            }
        }
    }
    // right neighbour: (a, b, c) -> (c, b', *) with b' = -b mod 2c and
    // √D - 2|c| < b' < √D
    let neighbour = |(_, b, c): (i64, i64, i64)| {
        let m = 2 * c.abs();
        let top = isqrt(d);
        let mut bp = (-b).rem_euclid(m);
        while bp + m <= top {
            bp += m;
        }
        while bp > top {
            bp -= m;
        }
        (c, bp, (bp * bp - d) / (4 * c))
    };
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0;
    for i in 0..forms.len() {
        if seen[i] {
            continue;
        }
        cycles += 1;
        let mut f = forms[i];
        loop {
            let j = forms
                .iter()
                .position(|&g| g == f)
                .expect("neighbour of reduced is reduced");
            if seen[j] {
                break;
            }
            seen[j] = true;
            f = neighbour(f);
        }
    }
    cycles
}

/// Norm of the fundamental unit of the order of discriminant `d > 0`, from
/// the least `y > 0` with `x² - D y² = ±4`.
pub fn fundamental_unit_norm(d: i64) -> i64 {
    for y in 1i64.. {
        let dy2 = d * y * y;
        if is_square(dy2 - 4) {
            return -1;
        }
        if is_square(dy2 + 4) {
            return 1;
        }
    }
    unreachable!()
}

/// Whether `p = x² + xy + 6y²` has a solution, by direct search.
pub fn represented(f: (i64, i64, i64), n: i64) -> bool {
    let bound = 4 * isqrt(n.abs()) + 4;
    (-bound..=bound).any(|x| (-bound..=bound).any(|y| f.0 * x * x + f.1 * x * y + f.2 * y * y == n))
}

/// A random primitive form with coefficients in `[-bound, bound]` and
/// nonzero, non-square discriminant.
pub fn random_primitive_form<R: Rng>(rng: &mut R, bound: i64) -> BinaryForm {
    loop {
        let (a, b, c) = (
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        let d = BigInt::from(b) * b - BigInt::from(4) * a * c;
        if d == BigInt::from(0) || a == 0 {
            continue;
        }
        if let Some(dd) = d.to_i64() {
            if is_square(dd) {
                continue;
            }
        } else if d > BigInt::from(0) && num_integer::Roots::sqrt(&d).pow(2) == d {
            continue;
        }
        if gcd(gcd(a, b), c) == 1 {
            return form(a, b, c);
        }
    }
}

pub const DISCRIMINANTS: [i64; 9] = [-4, -23, -47, -71, -163, -231, 12, 40, 229];
