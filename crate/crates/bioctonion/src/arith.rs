// SPDX-License-Identifier: Apache-2.0
//! Integer helpers: primality, factorization, residues.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Legendre symbol of a modulo an odd prime p: 0, 1 or -1.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn legendre_big(a: &BigInt, p: u64) -> i32 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb).to_u64().unwrap();
    legendre(r, p)
}

/// Tonelli–Shanks square root modulo an odd prime.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Smallest quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    let mut z = 2;
    while legendre(z, p) != -1 {
        z += 1;
    }
    z
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bases: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    'outer: for a in bases {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(&n);
    let rest = &n / &d;
    factor_into(d, out);
    factor_into(rest, out);
}

/// Prime factorization of a positive integer.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let mut p = 2u64;
    while p < 10_000 {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        while (&n % &pb).is_zero() {
            n /= &pb;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    factor_into(n, &mut out);
    out
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree(n: &BigInt) -> BigInt {
    let mut r = BigUint::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            r *= p;
        }
    }
    BigInt::from_biguint(if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus }, r)
}

/// Exact integer square root when n is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Odd primes dividing n (absolute value).
pub fn odd_prime_divisors(n: &BigInt) -> Vec<BigUint> {
    factor(n.magnitude()).into_keys().filter(|p| p != &BigUint::from(2u32)).collect()
}

/// p-adic valuation and unit part.
pub fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    (v, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = factor(&BigUint::from(360u32));
        assert_eq!(f.get(&BigUint::from(2u32)), Some(&3));
        assert_eq!(f.get(&BigUint::from(3u32)), Some(&2));
        assert_eq!(f.get(&BigUint::from(5u32)), Some(&1));
    }

    #[test]
    fn factor_semiprime_via_rho() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
        assert!(f.contains_key(&BigUint::from(998_244_353u64)));
    }

    #[test]
    fn sqrt_mod_agrees() {
        for p in [5u64, 7, 13, 17, 41, 97] {
            for a in 1..p {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a);
                } else {
                    assert_eq!(legendre(a, p), -1);
                }
            }
        }
    }

    #[test]
    fn squarefree_signs() {
        assert_eq!(squarefree(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree(&BigInt::from(18)), BigInt::from(2));
    }
}
