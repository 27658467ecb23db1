// SPDX-License-Identifier: Apache-2.0
//! Local data over Q: Hilbert symbols, Hasse invariants, local isotropy.

use crate::arith;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// A place of Q. Finite primes sort before the real place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    P(BigInt),
    Real,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::P(p) => write!(f, "{p}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

impl Place {
    pub fn parse(s: &str) -> Option<Place> {
        if s == "inf" || s == "oo" || s == "real" {
            return Some(Place::Real);
        }
        let b = s.len() < 200 && !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
        if !b {
            return None;
        }
        let p: BigInt = s.parse().ok()?;
        let pu = p.to_u64()?;
        if arith::is_prime_u64(pu) {
            Some(Place::P(p))
        } else {
            None
        }
    }
}

/// Squarefree integer in the square class of a nonzero rational.
pub fn sqf(q: &BigRational) -> BigInt {
    arith::squarefree(&(q.numer() * q.denom()))
}

fn mod8(u: &BigInt) -> u32 {
    u.mod_floor(&BigInt::from(8)).to_u32().unwrap()
}

/// (a,b)_v for nonzero integers a, b as ±1.
pub fn hilbert(a: &BigInt, b: &BigInt, v: &Place) -> i32 {
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::P(p) => {
            let (alpha, u) = arith::split_valuation(a, p);
            let (beta, w) = arith::split_valuation(b, p);
            if p == &BigInt::from(2) {
                let eps = |x: &BigInt| ((mod8(x) - 1) / 2) % 2;
                let omega = |x: &BigInt| {
                    let r = mod8(x);
                    ((r * r - 1) / 8) % 2
                };
                let e = eps(&u) * eps(&w) + alpha * omega(&w) + beta * omega(&u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let pu = p.to_u64().expect("prime fits in u64");
                let mut s = 1;
                if (alpha * beta) % 2 == 1 && pu % 4 == 3 {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= arith::legendre_big(&u, pu);
                }
                if alpha % 2 == 1 {
                    s *= arith::legendre_big(&w, pu);
                }
                s
            }
        }
    }
}

/// Places relevant for symbols built from these integers: primes dividing them, 2 and the real place.
pub fn support(ints: &[BigInt]) -> BTreeSet<Place> {
    let mut s = BTreeSet::new();
    s.insert(Place::Real);
    s.insert(Place::P(BigInt::from(2)));
    for a in ints {
        for p in arith::odd_prime_divisors(a) {
            s.insert(Place::P(BigInt::from(p)));
        }
    }
    s
}

/// Places where the quaternion symbol (a,b) ramifies.
pub fn ramification(a: &BigInt, b: &BigInt) -> BTreeSet<Place> {
    let set: BTreeSet<Place> = support(&[a.clone(), b.clone()])
        .into_iter()
        .filter(|v| hilbert(a, b, v) == -1)
        .collect();
    assert!(set.len().is_multiple_of(2), "Hilbert reciprocity failed for ({a},{b})");
    set
}

/// Hasse invariant Π_{i<j}(a_i,a_j)_v.
pub fn hasse(a: &[BigInt], v: &Place) -> i32 {
    let mut s = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            s *= hilbert(&a[i], &a[j], v);
        }
    }
    s
}

pub fn is_local_square(x: &BigInt, v: &Place) -> bool {
    match v {
        Place::Real => x.is_positive(),
        Place::P(p) => {
            let (val, u) = arith::split_valuation(x, p);
            if val % 2 == 1 {
                return false;
            }
            if p == &BigInt::from(2) {
                mod8(&u) == 1
            } else {
                arith::legendre_big(&u, p.to_u64().unwrap()) == 1
            }
        }
    }
}

pub fn product(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| acc * x)
}

/// Isotropy of the diagonal form ⟨a⟩ over Q_v.
pub fn locally_isotropic(a: &[BigInt], v: &Place) -> bool {
    let n = a.len();
    let d = product(a);
    match n {
        0 | 1 => false,
        2 => is_local_square(&-d, v),
        3 => hilbert(&BigInt::from(-1), &-d, v) == hasse(a, v),
        4 => !(is_local_square(&d, v) && hasse(a, v) == -hilbert(&BigInt::from(-1), &BigInt::from(-1), v)),
        _ => match v {
            Place::Real => a.iter().any(|x| x.is_positive()) && a.iter().any(|x| x.is_negative()),
            Place::P(_) => true,
        },
    }
}

/// Hasse–Minkowski decision for a diagonal integer form.
pub fn globally_isotropic(a: &[BigInt]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    if n == 2 {
        return arith::exact_sqrt(&-(&a[0] * &a[1])).is_some();
    }
    if n >= 5 {
        return locally_isotropic(a, &Place::Real);
    }
    support(a).iter().all(|v| locally_isotropic(a, v))
}

/// Bounded search for a nonzero integer zero of Σ a_i x_i², last coordinate solved for.
pub fn search_zero(a: &[BigInt], max_evals: u64) -> Option<Vec<BigInt>> {
    let n = a.len();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return None;
    }
    let mut evals = 0u64;
    let mut bound = 1i64;
    loop {
        let mut x = vec![-bound; n - 1];
        loop {
            // Only vectors on the shell of the current box, to avoid repeats.
            let on_shell = bound == 1 || x.iter().any(|v| v.abs() == bound);
            let first_nz = x.iter().find(|v| **v != 0);
            let canonical = first_nz.is_none_or(|v| *v > 0);
            if on_shell && canonical {
                evals += 1;
                let mut s = BigInt::zero();
                for (ai, xi) in a.iter().zip(&x) {
                    s += ai * BigInt::from(*xi) * BigInt::from(*xi);
                }
                let last = &a[n - 1];
                if s.is_zero() {
                    if first_nz.is_some() {
                        let mut v: Vec<BigInt> = x.iter().map(|t| BigInt::from(*t)).collect();
                        v.push(BigInt::zero());
                        return Some(v);
                    }
                } else if (&-&s % last).is_zero() {
                    let q = -&s / last;
                    if let Some(r) = arith::exact_sqrt(&q) {
                        let mut v: Vec<BigInt> = x.iter().map(|t| BigInt::from(*t)).collect();
                        v.push(r);
                        return Some(v);
                    }
                } else {
                    // x_n rational: -s/last = r² with r = u/w means -s·last is a square times last².
                    let num = -&s * last;
                    if num.is_positive() {
                        if let Some(r) = arith::exact_sqrt(&num) {
                            let mut v: Vec<BigInt> = x.iter().map(|t| BigInt::from(*t) * last).collect();
                            v.push(r);
                            return Some(v);
                        }
                    }
                }
                if evals >= max_evals {
                    return None;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == n - 1 {
                    break;
                }
                if x[i] < bound {
                    x[i] += 1;
                    break;
                }
                x[i] = -bound;
                i += 1;
            }
            if i == n - 1 {
                break;
            }
        }
        bound += 1;
        if bound > 1_000_000 {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn symbol_values() {
        assert_eq!(hilbert(&b(-1), &b(-1), &Place::Real), -1);
        assert_eq!(hilbert(&b(-1), &b(-1), &Place::P(b(2))), -1);
        assert_eq!(hilbert(&b(2), &b(3), &Place::P(b(3))), -1);
        assert_eq!(hilbert(&b(-1), &b(3), &Place::P(b(3))), -1);
        assert_eq!(hilbert(&b(-1), &b(3), &Place::P(b(2))), -1);
        let r: Vec<String> = ramification(&b(2), &b(3)).iter().map(|p| p.to_string()).collect();
        assert_eq!(r, vec!["2", "3"]);
    }

    #[test]
    fn isotropy_examples() {
        assert!(globally_isotropic(&[b(1), b(1), b(1), b(1), b(-7)]));
        assert!(!globally_isotropic(&[b(1), b(1), b(1), b(1)]));
        assert!(!globally_isotropic(&[b(1), b(-2), b(-3), b(6)]));
        assert!(globally_isotropic(&[b(1), b(1), b(-2)]));
        let v = search_zero(&[b(1), b(1), b(1), b(1), b(-7)], 1_000_000).unwrap();
        let s: BigInt = [1, 1, 1, 1, -7].iter().zip(&v).map(|(a, x)| b(*a) * x * x).sum();
        assert!(s.is_zero());
    }
}
