// SPDX-License-Identifier: Apache-2.0
//! Exact ground fields: the rationals, prime fields, one quadratic layer,
//! and monomial Laurent towers.

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use std::cmp::Ordering;
use std::fmt::Debug;

/// Runs `$body` with `$f` bound to the typed field behind a runtime descriptor (ℚ or 𝔽_p).
#[macro_export]
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            $crate::fields::FieldDesc::Q => {
                let $f = $crate::fields::Rationals;
                $body
            }
            $crate::fields::FieldDesc::Fp(p) => {
                let $f = $crate::fields::PrimeField::new(*p)?;
                $body
            }
            other => Err($crate::Error::UnsupportedField(format!("{other:?} is not Q or F_p"))),
        }
    };
}

/// Arithmetic over an arithmetic-complete field (or the split étale ring).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero (and for zero divisors of the split ring).
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;
    fn descriptor(&self) -> FieldDesc;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|i| self.mul(a, &i))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn scale_int(&self, n: i64, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_i64(n), a)
    }
    fn mat_mul(&self, a: &Mat<Self::Elem>, b: &Mat<Self::Elem>) -> Mat<Self::Elem> {
        linalg::mat_mul_generic(self, a, b)
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Self::Elem {
        loop {
            let x = self.random(rng, height);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        let n = arith::exact_sqrt(a.numer())?;
        let d = arith::exact_sqrt(a.denom())?;
        Some(BigRational::new(n, d))
    }
    fn cmp_elem(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Q(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Q(q) => Ok(q.clone()),
            _ => Err(Error::MixedFields),
        }
    }
    fn descriptor(&self) -> FieldDesc {
        FieldDesc::Q
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> BigRational {
        let n = rng.gen_range(-height..=height);
        let d = if rng.gen_range(0..4) == 0 { 2 } else { 1 };
        BigRational::new(n.into(), BigInt::from(d))
    }
    fn mat_mul(&self, a: &Mat<BigRational>, b: &Mat<BigRational>) -> Mat<BigRational> {
        rational_mat_mul(a, b)
    }
}

fn common_denom(m: &Mat<BigRational>) -> BigInt {
    m.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Clears denominators and multiplies over i128 when the bound allows, else over BigInt.
fn rational_mat_mul(a: &Mat<BigRational>, b: &Mat<BigRational>) -> Mat<BigRational> {
    assert_eq!(a.cols, b.rows);
    let (da, db) = (common_denom(a), common_denom(b));
    let ia: Vec<BigInt> = a.data.iter().map(|x| x.numer() * (&da / x.denom())).collect();
    let ib: Vec<BigInt> = b.data.iter().map(|x| x.numer() * (&db / x.denom())).collect();
    let bits = |v: &[BigInt]| v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let budget = bits(&ia) + bits(&ib) + 64 - (a.cols.max(1) as u64).leading_zeros() as u64;
    let den = da * db;
    let (n, k, m) = (a.rows, a.cols, b.cols);
    let mut out = Vec::with_capacity(n * m);
    if budget < 126 {
        let sa: Vec<i128> = ia.iter().map(|x| x.to_i128().unwrap()).collect();
        let sb: Vec<i128> = ib.iter().map(|x| x.to_i128().unwrap()).collect();
        let mut acc = vec![0i128; n * m];
        for i in 0..n {
            for t in 0..k {
                let x = sa[i * k + t];
                if x == 0 {
                    continue;
                }
                let row = &sb[t * m..(t + 1) * m];
                let dst = &mut acc[i * m..(i + 1) * m];
                for (d, y) in dst.iter_mut().zip(row) {
                    *d += x * y;
                }
            }
        }
        for v in acc {
            out.push(BigRational::new(BigInt::from(v), den.clone()));
        }
    } else {
        let mut acc = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let x = &ia[i * k + t];
                if x.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let y = &ib[t * m + j];
                    if !y.is_zero() {
                        acc[i * m + j] += x * y;
                    }
                }
            }
        }
        for v in acc {
            out.push(BigRational::new(v, den.clone()));
        }
    }
    Mat { rows: n, cols: m, data: out }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(5..(1 << 31)).contains(&p) || !arith::is_prime_u64(p) {
            return Err(Error::UnsupportedField(format!("p = {p} must be a prime with 5 <= p < 2^31")));
        }
        Ok(PrimeField { p })
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(arith::pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sqrt(&self, a: &u64) -> Option<u64> {
        arith::sqrt_mod(*a, self.p)
    }
    fn cmp_elem(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Fp(*a)
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u64> {
        match s {
            Scalar::Fp(v) if *v < self.p => Ok(*v),
            _ => Err(Error::MixedFields),
        }
    }
    fn descriptor(&self) -> FieldDesc {
        FieldDesc::Fp(self.p)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _height: i64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn mat_mul(&self, a: &Mat<u64>, b: &Mat<u64>) -> Mat<u64> {
        assert_eq!(a.cols, b.rows);
        let (n, k, m) = (a.rows, a.cols, b.cols);
        // entries < 2^31, products < 2^62: u128 sums cannot overflow
        let mut acc = vec![0u128; n * m];
        for i in 0..n {
            for t in 0..k {
                let x = a.data[i * k + t] as u128;
                if x == 0 {
                    continue;
                }
                let row = &b.data[t * m..(t + 1) * m];
                for (d, y) in acc[i * m..(i + 1) * m].iter_mut().zip(row) {
                    *d += x * (*y as u128);
                }
            }
        }
        let p = self.p as u128;
        Mat { rows: n, cols: m, data: acc.into_iter().map(|v| (v % p) as u64).collect() }
    }
}

/// k[√d]; a field when d is a nonsquare, the split étale algebra k × k when d = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Quad<F: Field> {
    pub base: F,
    pub d: F::Elem,
}

impl<F: Field> Quad<F> {
    pub fn new(base: F, d: F::Elem) -> Self {
        Quad { base, d }
    }
    pub fn is_split(&self) -> bool {
        self.base.sqrt(&self.d).is_some()
    }
    pub fn embed(&self, a: &F::Elem) -> (F::Elem, F::Elem) {
        (a.clone(), self.base.zero())
    }
    pub fn sqrt_d(&self) -> (F::Elem, F::Elem) {
        (self.base.zero(), self.base.one())
    }
    pub fn conj(&self, x: &(F::Elem, F::Elem)) -> (F::Elem, F::Elem) {
        (x.0.clone(), self.base.neg(&x.1))
    }
    pub fn norm(&self, x: &(F::Elem, F::Elem)) -> F::Elem {
        let b = &self.base;
        b.sub(&b.mul(&x.0, &x.0), &b.mul(&self.d, &b.mul(&x.1, &x.1)))
    }
    pub fn trace(&self, x: &(F::Elem, F::Elem)) -> F::Elem {
        self.base.add(&x.0, &x.0)
    }
}

impl<F: Field> Field for Quad<F> {
    type Elem = (F::Elem, F::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        (self.base.from_i64(n), self.base.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let re = k.add(&k.mul(&a.0, &b.0), &k.mul(&self.d, &k.mul(&a.1, &b.1)));
        let im = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        (re, im)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let ni = self.base.inv(&self.norm(a))?;
        let c = self.conj(a);
        Some((self.base.mul(&c.0, &ni), self.base.mul(&c.1, &ni)))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.0) && self.base.is_zero(&a.1)
    }
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let k = &self.base;
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if k.is_zero(&a.1) {
            if let Some(r) = k.sqrt(&a.0) {
                return Some((r, k.zero()));
            }
            let q = k.div(&a.0, &self.d)?;
            return k.sqrt(&q).map(|v| (k.zero(), v));
        }
        let n = k.sqrt(&self.norm(a))?;
        let half = k.inv(&k.from_i64(2))?;
        for s in [n.clone(), k.neg(&n)] {
            let u2 = k.mul(&k.add(&a.0, &s), &half);
            if let Some(u) = k.sqrt(&u2) {
                if k.is_zero(&u) {
                    continue;
                }
                let v = k.div(&a.1, &k.add(&u, &u))?;
                let cand = (u, v);
                if &self.mul(&cand, &cand) == a {
                    return Some(cand);
                }
            }
        }
        None
    }
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        self.base.cmp_elem(&a.0, &b.0).then_with(|| self.base.cmp_elem(&a.1, &b.1))
    }
    fn to_scalar(&self, a: &Self::Elem) -> Scalar {
        Scalar::Quad(Box::new(self.base.to_scalar(&a.0)), Box::new(self.base.to_scalar(&a.1)))
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem> {
        match s {
            Scalar::Quad(a, b) => Ok((self.base.from_scalar(a)?, self.base.from_scalar(b)?)),
            other => Ok((self.base.from_scalar(other)?, self.base.zero())),
        }
    }
    fn descriptor(&self) -> FieldDesc {
        FieldDesc::Quad(Box::new(self.base.descriptor()), Box::new(self.base.to_scalar(&self.d)))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Self::Elem {
        (self.base.random(rng, height), self.base.random(rng, height))
    }
}

/// Runtime description of a ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDesc {
    Q,
    Fp(u64),
    /// Base field and d; d = 1 encodes the split étale algebra.
    Quad(Box<FieldDesc>, Box<Scalar>),
    Laurent(Box<FieldDesc>, Vec<String>),
}

/// Backend-tagged scalar in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64),
    /// a + b√d
    Quad(Box<Scalar>, Box<Scalar>),
    /// c · t^e with c a base scalar; zero is c = 0 with all exponents 0.
    Mono(Box<Scalar>, Vec<i64>),
}

impl Scalar {
    pub fn q(n: i64) -> Scalar {
        Scalar::Q(BigRational::from_integer(n.into()))
    }
    pub fn as_q(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty() {
        return Err(bad());
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let ok = |x: &str| {
        let x = x.strip_prefix('-').unwrap_or(x);
        !x.is_empty() && x.len() <= 4096 && x.bytes().all(|c| c.is_ascii_digit())
    };
    if !ok(n) || !ok(d) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}

impl FieldDesc {
    pub fn fp(p: u64) -> Result<FieldDesc> {
        PrimeField::new(p)?;
        Ok(FieldDesc::Fp(p))
    }

    pub fn quad(base: FieldDesc, d: Scalar) -> Result<FieldDesc> {
        if !matches!(base, FieldDesc::Q | FieldDesc::Fp(_)) {
            return Err(Error::UnsupportedField("quadratic layer must sit over Q or F_p".into()));
        }
        base.check(&d)?;
        if base.is_zero(&d) {
            return Err(Error::ZeroInput);
        }
        let d = if base.is_square(&d)? { base.one() } else { base.square_class(&d)? };
        Ok(FieldDesc::Quad(Box::new(base), Box::new(d)))
    }

    pub fn laurent(base: FieldDesc, vars: Vec<String>) -> Result<FieldDesc> {
        if !matches!(base, FieldDesc::Q | FieldDesc::Fp(_)) {
            return Err(Error::UnsupportedField("Laurent tower must sit over Q or F_p".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && v != "sqrt";
            if !ok || !seen.insert(v.clone()) {
                return Err(Error::Parse(format!("bad or duplicate variable name '{v}'")));
            }
        }
        Ok(FieldDesc::Laurent(Box::new(base), vars))
    }

    /// Char != 2, 3 and well-formed parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldDesc::Q => Ok(()),
            FieldDesc::Fp(p) => PrimeField::new(*p).map(|_| ()),
            FieldDesc::Quad(b, d) => {
                b.validate()?;
                let again = FieldDesc::quad((**b).clone(), (**d).clone())?;
                if &again != self {
                    return Err(Error::Invalid("quadratic parameter not in canonical form".into()));
                }
                Ok(())
            }
            FieldDesc::Laurent(b, vars) => {
                b.validate()?;
                FieldDesc::laurent((**b).clone(), vars.clone()).map(|_| ())
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Q => 0,
            FieldDesc::Fp(p) => *p,
            FieldDesc::Quad(b, _) | FieldDesc::Laurent(b, _) => b.characteristic(),
        }
    }

    pub fn is_arith_complete(&self) -> bool {
        !matches!(self, FieldDesc::Laurent(..))
    }

    pub fn is_split_quad(&self) -> bool {
        matches!(self, FieldDesc::Quad(b, d) if **d == b.one())
    }

    pub fn nvars(&self) -> usize {
        match self {
            FieldDesc::Laurent(_, v) => v.len(),
            _ => 0,
        }
    }

    /// The prime subfield-level base (Q or F_p).
    pub fn ground(&self) -> &FieldDesc {
        match self {
            FieldDesc::Quad(b, _) | FieldDesc::Laurent(b, _) => b,
            other => other,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::Q(BigRational::zero()),
            FieldDesc::Fp(_) => Scalar::Fp(0),
            FieldDesc::Quad(b, _) => Scalar::Quad(Box::new(b.zero()), Box::new(b.zero())),
            FieldDesc::Laurent(b, v) => Scalar::Mono(Box::new(b.zero()), vec![0; v.len()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::q(n),
            FieldDesc::Fp(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
            FieldDesc::Quad(b, _) => Scalar::Quad(Box::new(b.from_i64(n)), Box::new(b.zero())),
            FieldDesc::Laurent(b, v) => {
                let c = b.from_i64(n);
                Scalar::Mono(Box::new(c), vec![0; v.len()])
            }
        }
    }

    /// Monomial c·t^e in a Laurent tower.
    pub fn mono(&self, c: Scalar, e: Vec<i64>) -> Result<Scalar> {
        match self {
            FieldDesc::Laurent(b, v) => {
                b.check(&c)?;
                if e.len() != v.len() {
                    return Err(Error::MixedFields);
                }
                if b.is_zero(&c) {
                    return Ok(self.zero());
                }
                Ok(Scalar::Mono(Box::new(c), e))
            }
            _ => Err(Error::UnsupportedField("monomials need a Laurent tower".into())),
        }
    }

    /// The variable t_i of a Laurent tower.
    pub fn var(&self, i: usize) -> Result<Scalar> {
        let n = self.nvars();
        if i >= n {
            return Err(Error::Invalid(format!("no variable {i}")));
        }
        let mut e = vec![0; n];
        e[i] = 1;
        self.mono(self.ground().one(), e)
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        match (self, s) {
            (FieldDesc::Q, Scalar::Q(_)) => Ok(()),
            (FieldDesc::Fp(p), Scalar::Fp(v)) if v < p => Ok(()),
            (FieldDesc::Quad(b, _), Scalar::Quad(x, y)) => {
                b.check(x)?;
                b.check(y)
            }
            (FieldDesc::Laurent(b, v), Scalar::Mono(c, e)) if e.len() == v.len() => b.check(c),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(v) => *v == 0,
            Scalar::Quad(a, b) => self.ground().is_zero(a) && self.ground().is_zero(b),
            Scalar::Mono(c, _) => self.ground().is_zero(c),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (self, a, b) {
            (FieldDesc::Q, Scalar::Q(x), Scalar::Q(y)) => Ok(Scalar::Q(x + y)),
            (FieldDesc::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Ok(Scalar::Fp((x + y) % p)),
            (FieldDesc::Quad(k, _), Scalar::Quad(a0, a1), Scalar::Quad(b0, b1)) => {
                Ok(Scalar::Quad(Box::new(k.add(a0, b0)?), Box::new(k.add(a1, b1)?)))
            }
            (FieldDesc::Laurent(k, _), Scalar::Mono(c1, e1), Scalar::Mono(c2, e2)) => {
                if k.is_zero(c1) {
                    return Ok(b.clone());
                }
                if k.is_zero(c2) {
                    return Ok(a.clone());
                }
                if e1 != e2 {
                    return Err(Error::NonMonomialSum);
                }
                let c = k.add(c1, c2)?;
                if k.is_zero(&c) {
                    Ok(self.zero())
                } else {
                    Ok(Scalar::Mono(Box::new(c), e1.clone()))
                }
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Result<Scalar> {
        self.mul(&self.from_i64(-1), a)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (self, a, b) {
            (FieldDesc::Q, Scalar::Q(x), Scalar::Q(y)) => Ok(Scalar::Q(x * y)),
            (FieldDesc::Fp(p), Scalar::Fp(x), Scalar::Fp(y)) => Ok(Scalar::Fp(x * y % p)),
            (FieldDesc::Quad(k, d), Scalar::Quad(a0, a1), Scalar::Quad(b0, b1)) => {
                let re = k.add(&k.mul(a0, b0)?, &k.mul(d, &k.mul(a1, b1)?)?)?;
                let im = k.add(&k.mul(a0, b1)?, &k.mul(a1, b0)?)?;
                Ok(Scalar::Quad(Box::new(re), Box::new(im)))
            }
            (FieldDesc::Laurent(k, v), Scalar::Mono(c1, e1), Scalar::Mono(c2, e2)) => {
                if e1.len() != v.len() || e2.len() != v.len() {
                    return Err(Error::MixedFields);
                }
                let c = k.mul(c1, c2)?;
                if k.is_zero(&c) {
                    return Ok(self.zero());
                }
                let e = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                Ok(Scalar::Mono(Box::new(c), e))
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (FieldDesc::Q, Scalar::Q(x)) => Ok(Scalar::Q(x.recip())),
            (FieldDesc::Fp(p), Scalar::Fp(x)) => Ok(Scalar::Fp(arith::pow_mod(*x, p - 2, *p))),
            (FieldDesc::Quad(k, _), Scalar::Quad(a0, a1)) => {
                let n = self.quad_norm(a)?;
                let ni = k.inv(&n)?;
                Ok(Scalar::Quad(Box::new(k.mul(a0, &ni)?), Box::new(k.neg(&k.mul(a1, &ni)?)?)))
            }
            (FieldDesc::Laurent(k, _), Scalar::Mono(c, e)) => {
                Ok(Scalar::Mono(Box::new(k.inv(c)?), e.iter().map(|x| -x).collect()))
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        self.mul(a, &self.inv(b)?)
    }

    pub fn pow(&self, a: &Scalar, e: u32) -> Result<Scalar> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a)?;
        }
        Ok(r)
    }

    pub fn quad_norm(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (FieldDesc::Quad(k, d), Scalar::Quad(a0, a1)) => {
                k.sub(&k.mul(a0, a0)?, &k.mul(d, &k.mul(a1, a1)?)?)
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn quad_trace(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (FieldDesc::Quad(k, _), Scalar::Quad(a0, _)) => k.add(a0, a0),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn quad_conj(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (FieldDesc::Quad(k, _), Scalar::Quad(a0, a1)) => {
                Ok(Scalar::Quad(a0.clone(), Box::new(k.neg(a1)?)))
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// Embeds a base scalar into the quadratic layer.
    pub fn quad_embed(&self, a: &Scalar) -> Result<Scalar> {
        match self {
            FieldDesc::Quad(k, _) => {
                k.check(a)?;
                Ok(Scalar::Quad(Box::new(a.clone()), Box::new(k.zero())))
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// Exponent vector of a Laurent scalar.
    pub fn exponents<'a>(&self, a: &'a Scalar) -> Result<(&'a Scalar, &'a [i64])> {
        match a {
            Scalar::Mono(c, e) => Ok((c, e)),
            _ => Err(Error::MixedFields),
        }
    }

    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        self.check(a)?;
        if self.is_zero(a) {
            return Ok(true);
        }
        Ok(match (self, a) {
            (FieldDesc::Q, Scalar::Q(x)) => {
                !x.is_negative()
                    && arith::exact_sqrt(x.numer()).is_some()
                    && arith::exact_sqrt(x.denom()).is_some()
            }
            (FieldDesc::Fp(p), Scalar::Fp(x)) => arith::legendre(*x, *p) == 1,
            (FieldDesc::Quad(..), Scalar::Quad(..)) => self.sqrt(a)?.is_some(),
            (FieldDesc::Laurent(k, _), Scalar::Mono(c, e)) => {
                e.iter().all(|x| x % 2 == 0) && k.is_square(c)?
            }
            _ => return Err(Error::MixedFields),
        })
    }

    pub fn sqrt(&self, a: &Scalar) -> Result<Option<Scalar>> {
        self.check(a)?;
        match self {
            FieldDesc::Q => Ok(Rationals.sqrt(&Rationals.from_scalar(a)?).map(Scalar::Q)),
            FieldDesc::Fp(p) => {
                let f = PrimeField { p: *p };
                Ok(f.sqrt(&f.from_scalar(a)?).map(Scalar::Fp))
            }
            FieldDesc::Quad(..) => {
                let f = DynField::new(self.clone())?;
                Ok(f.sqrt(a))
            }
            FieldDesc::Laurent(k, _) => {
                let (c, e) = self.exponents(a)?;
                if self.is_zero(a) {
                    return Ok(Some(self.zero()));
                }
                if e.iter().any(|x| x % 2 != 0) {
                    return Ok(None);
                }
                Ok(k.sqrt(c)?.map(|r| Scalar::Mono(Box::new(r), e.iter().map(|x| x / 2).collect())))
            }
        }
    }

    /// Canonical representative of the square class of a nonzero scalar.
    pub fn square_class(&self, a: &Scalar) -> Result<Scalar> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroInput);
        }
        match (self, a) {
            (FieldDesc::Q, Scalar::Q(x)) => {
                let n = x.numer() * x.denom();
                Ok(Scalar::Q(BigRational::from_integer(arith::squarefree(&n))))
            }
            (FieldDesc::Fp(p), Scalar::Fp(x)) => {
                if arith::legendre(*x, *p) == 1 {
                    Ok(Scalar::Fp(1))
                } else {
                    Ok(Scalar::Fp(arith::least_nonresidue(*p)))
                }
            }
            (FieldDesc::Quad(k, _), Scalar::Quad(a0, a1)) => {
                if self.is_square(a)? {
                    return Ok(self.one());
                }
                match &**k {
                    FieldDesc::Fp(_) => Ok(self.quad_fp_nonsquare()),
                    _ => {
                        let q0 = a0.as_q().ok_or(Error::MixedFields)?;
                        let q1 = a1.as_q().ok_or(Error::MixedFields)?;
                        let l = q0.denom().lcm(q1.denom());
                        let n0 = q0.numer() * (&l / q0.denom());
                        let n1 = q1.numer() * (&l / q1.denom());
                        let g = n0.gcd(&n1);
                        let mut sq = BigInt::one();
                        for (p, e) in arith::factor(g.magnitude()) {
                            let pb = BigInt::from_biguint(Sign::Plus, p);
                            for _ in 0..e / 2 {
                                sq *= &pb;
                            }
                        }
                        let s2 = &sq * &sq;
                        Ok(Scalar::Quad(
                            Box::new(Scalar::Q(BigRational::from_integer(n0 / &s2))),
                            Box::new(Scalar::Q(BigRational::from_integer(n1 / &s2))),
                        ))
                    }
                }
            }
            (FieldDesc::Laurent(k, _), Scalar::Mono(c, e)) => Ok(Scalar::Mono(
                Box::new(k.square_class(c)?),
                e.iter().map(|x| x.rem_euclid(2)).collect(),
            )),
            _ => Err(Error::MixedFields),
        }
    }

    fn quad_fp_nonsquare(&self) -> Scalar {
        let FieldDesc::Quad(k, _) = self else { unreachable!() };
        let mut a = 0i64;
        loop {
            let cand = Scalar::Quad(Box::new(k.from_i64(a)), Box::new(k.one()));
            if !self.is_square(&cand).unwrap_or(true) {
                return cand;
            }
            a += 1;
        }
    }

    /// Same square class.
    pub fn same_class(&self, a: &Scalar, b: &Scalar) -> Result<bool> {
        let q = self.div(a, b)?;
        self.is_square(&q)
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.len() > 8192 {
            return Err(Error::Parse("scalar too long".into()));
        }
        match self {
            FieldDesc::Q => parse_rational(s).map(Scalar::Q),
            FieldDesc::Fp(p) => {
                let q = parse_rational(s)?;
                let pb = BigInt::from(*p);
                let n = q.numer().mod_floor(&pb).to_u64().unwrap();
                let d = q.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Fp(n * arith::pow_mod(d, p - 2, *p) % p))
            }
            FieldDesc::Quad(k, _) => self.parse_quad(k, s),
            FieldDesc::Laurent(k, vars) => self.parse_mono(k, vars, s),
        }
    }

    fn parse_quad(&self, k: &FieldDesc, s: &str) -> Result<Scalar> {
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !matches!(prev, Some('*') | Some('/')) {
                terms.push(std::mem::take(&mut cur));
            }
            if !ch.is_whitespace() {
                prev = Some(ch);
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut re = k.zero();
        let mut im = k.zero();
        for t in terms {
            let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            if let Some(head) = t.strip_suffix("sqrt") {
                let coef = match head.strip_suffix('*') {
                    Some(c) => c.to_string(),
                    None => head.to_string(),
                };
                let c = match coef.as_str() {
                    "" | "+" => k.one(),
                    "-" => k.from_i64(-1),
                    other => k.parse_scalar(other)?,
                };
                im = k.add(&im, &c)?;
            } else {
                re = k.add(&re, &k.parse_scalar(&t)?)?;
            }
        }
        Ok(Scalar::Quad(Box::new(re), Box::new(im)))
    }

    fn parse_mono(&self, k: &FieldDesc, vars: &[String], s: &str) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b.to_string()),
            None => (false, s.strip_prefix('+').unwrap_or(&s).to_string()),
        };
        if body.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut c = k.one();
        let mut e = vec![0i64; vars.len()];
        for f in body.split('*') {
            if f.is_empty() {
                return Err(Error::Parse(format!("bad monomial '{s}'")));
            }
            if f.chars().next().unwrap().is_ascii_alphabetic() {
                let (name, exp) = match f.split_once('^') {
                    Some((n, x)) => {
                        let ok = {
                            let y = x.strip_prefix('-').unwrap_or(x);
                            !y.is_empty() && y.len() < 12 && y.bytes().all(|b| b.is_ascii_digit())
                        };
                        if !ok {
                            return Err(Error::Parse(format!("bad exponent in '{f}'")));
                        }
                        (n, x.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in '{f}'")))?)
                    }
                    None => (f, 1),
                };
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                e[i] = e[i].checked_add(exp).ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            } else {
                c = k.mul(&c, &k.parse_scalar(f)?)?;
            }
        }
        if neg {
            c = k.neg(&c)?;
        }
        if k.is_zero(&c) {
            return Ok(self.zero());
        }
        Ok(Scalar::Mono(Box::new(c), e))
    }

    pub fn fmt_scalar(&self, s: &Scalar) -> String {
        match (self, s) {
            (_, Scalar::Q(q)) => fmt_rational(q),
            (_, Scalar::Fp(v)) => v.to_string(),
            (FieldDesc::Quad(k, _), Scalar::Quad(a, b)) => {
                let zero_a = k.is_zero(a);
                if k.is_zero(b) {
                    return k.fmt_scalar(a);
                }
                let bs = k.fmt_scalar(b);
                let im = if bs == "1" {
                    "sqrt".to_string()
                } else if bs == "-1" {
                    "-sqrt".to_string()
                } else {
                    format!("{bs}*sqrt")
                };
                if zero_a {
                    im
                } else if im.starts_with('-') {
                    format!("{}{}", k.fmt_scalar(a), im)
                } else {
                    format!("{}+{}", k.fmt_scalar(a), im)
                }
            }
            (FieldDesc::Laurent(k, vars), Scalar::Mono(c, e)) => {
                if k.is_zero(c) {
                    return "0".into();
                }
                let mut parts = Vec::new();
                for (v, x) in vars.iter().zip(e) {
                    match *x {
                        0 => {}
                        1 => parts.push(v.clone()),
                        x => parts.push(format!("{v}^{x}")),
                    }
                }
                let cs = k.fmt_scalar(c);
                if parts.is_empty() {
                    return cs;
                }
                let body = parts.join("*");
                match cs.as_str() {
                    "1" => body,
                    "-1" => format!("-{body}"),
                    _ => format!("{cs}*{body}"),
                }
            }
            _ => format!("{s:?}"),
        }
    }

    /// Random nonzero scalar for property tests.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        loop {
            let s = self.random(rng, height);
            if !self.is_zero(&s) {
                return s;
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        match self {
            FieldDesc::Q => Scalar::Q(Rationals.random(rng, height)),
            FieldDesc::Fp(p) => Scalar::Fp(rng.gen_range(0..*p)),
            FieldDesc::Quad(k, _) => Scalar::Quad(Box::new(k.random(rng, height)), Box::new(k.random(rng, height))),
            FieldDesc::Laurent(k, v) => {
                let c = k.random_nonzero(rng, height);
                let e = (0..v.len()).map(|_| rng.gen_range(-2..=2)).collect();
                Scalar::Mono(Box::new(c), e)
            }
        }
    }

    /// Sign of a nonzero rational, for the real place.
    pub fn sign(&self, a: &Scalar) -> Result<i32> {
        match a {
            Scalar::Q(q) if !q.is_zero() => Ok(if q.is_negative() { -1 } else { 1 }),
            Scalar::Q(_) => Err(Error::ZeroInput),
            _ => Err(Error::UnsupportedField("signs exist only over Q".into())),
        }
    }
}

/// Dynamic field usable with the generic linear algebra (no Laurent towers).
#[derive(Clone, Debug, PartialEq)]
pub struct DynField(pub FieldDesc);

impl DynField {
    pub fn new(desc: FieldDesc) -> Result<Self> {
        if !desc.is_arith_complete() {
            return Err(Error::UnsupportedField("Laurent towers are not arithmetic-complete".into()));
        }
        Ok(DynField(desc))
    }
}

impl Field for DynField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn from_i64(&self, n: i64) -> Scalar {
        self.0.from_i64(n)
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.add(a, b).expect("mixed scalars in dynamic field")
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.sub(a, b).expect("mixed scalars in dynamic field")
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.mul(a, b).expect("mixed scalars in dynamic field")
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        self.0.neg(a).expect("mixed scalars in dynamic field")
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        self.0.inv(a).ok()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        self.0.is_zero(a)
    }
    fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match &self.0 {
            FieldDesc::Quad(k, d) => {
                let q = Quad::new(DynField((**k).clone()), (**d).clone());
                let e = q.from_scalar(a).ok()?;
                q.sqrt(&e).map(|r| q.to_scalar(&r))
            }
            other => other.sqrt(a).ok().flatten(),
        }
    }
    fn cmp_elem(&self, a: &Scalar, b: &Scalar) -> Ordering {
        match (a, b) {
            (Scalar::Q(x), Scalar::Q(y)) => x.cmp(y),
            (Scalar::Fp(x), Scalar::Fp(y)) => x.cmp(y),
            (Scalar::Quad(a0, a1), Scalar::Quad(b0, b1)) => {
                self.cmp_elem(a0, b0).then_with(|| self.cmp_elem(a1, b1))
            }
            _ => Ordering::Equal,
        }
    }
    fn to_scalar(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
    fn from_scalar(&self, s: &Scalar) -> Result<Scalar> {
        self.0.check(s)?;
        Ok(s.clone())
    }
    fn descriptor(&self) -> FieldDesc {
        self.0.clone()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        self.0.random(rng, height)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ql() -> FieldDesc {
        FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into()]).unwrap()
    }

    #[test]
    fn rational_add() {
        let f = FieldDesc::Q;
        let a = f.parse_scalar("1/2").unwrap();
        let b = f.parse_scalar("1/3").unwrap();
        assert_eq!(f.fmt_scalar(&f.add(&a, &b).unwrap()), "5/6");
    }

    #[test]
    fn prime_inverse() {
        let f = FieldDesc::fp(7).unwrap();
        assert_eq!(f.inv(&Scalar::Fp(3)).unwrap(), Scalar::Fp(5));
    }

    #[test]
    fn laurent_product_and_sum() {
        let f = FieldDesc::laurent(FieldDesc::Q, vec!["t".into()]).unwrap();
        let a = f.parse_scalar("2*t").unwrap();
        let b = f.parse_scalar("3*t^-1").unwrap();
        assert_eq!(f.fmt_scalar(&f.mul(&a, &b).unwrap()), "6");
        assert_eq!(f.add(&a, &b), Err(Error::NonMonomialSum));
    }

    #[test]
    fn square_classes() {
        let q = FieldDesc::Q;
        assert_eq!(q.fmt_scalar(&q.square_class(&Scalar::q(18)).unwrap()), "2");
        let f7 = FieldDesc::fp(7).unwrap();
        assert_eq!(f7.square_class(&Scalar::Fp(2)).unwrap(), Scalar::Fp(1));
        let l = ql();
        let x = l.parse_scalar("-12*t1^3*t2^2").unwrap();
        assert_eq!(l.fmt_scalar(&l.square_class(&x).unwrap()), "-3*t1");
        assert_eq!(q.square_class(&Scalar::q(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn etale_ops() {
        let e = FieldDesc::quad(FieldDesc::Q, Scalar::q(-1)).unwrap();
        let x = e.parse_scalar("2+3*sqrt").unwrap();
        assert_eq!(e.quad_norm(&x).unwrap(), Scalar::q(13));
        let r2 = FieldDesc::quad(FieldDesc::Q, Scalar::q(2)).unwrap();
        let y = r2.parse_scalar("1+sqrt").unwrap();
        assert_eq!(r2.quad_trace(&y).unwrap(), Scalar::q(2));
        let split = FieldDesc::quad(FieldDesc::Q, Scalar::q(4)).unwrap();
        assert!(split.is_split_quad());
        // (5,7) in k × k is 6 - sqrt under the e = (1 ± sqrt)/2 identification.
        let z = split.parse_scalar("6-sqrt").unwrap();
        let c = split.quad_conj(&z).unwrap();
        assert_eq!(split.fmt_scalar(&c), "6+sqrt");
    }

    #[test]
    fn roundtrip_formatting() {
        let l = ql();
        for s in ["-3*t1^3*t2^-1", "t1", "-t2", "5", "1/2*t1^2"] {
            let x = l.parse_scalar(s).unwrap();
            assert_eq!(l.fmt_scalar(&x), s);
        }
        let e = FieldDesc::quad(FieldDesc::Q, Scalar::q(-1)).unwrap();
        for s in ["2+3*sqrt", "-sqrt", "1/2-1/3*sqrt", "7"] {
            let x = e.parse_scalar(s).unwrap();
            assert_eq!(e.fmt_scalar(&x), s);
        }
    }

    #[test]
    fn square_class_invariant_under_squares() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fields = [FieldDesc::Q, FieldDesc::fp(11).unwrap(), ql(), FieldDesc::quad(FieldDesc::fp(7).unwrap(), Scalar::Fp(3)).unwrap()];
        for f in fields {
            for _ in 0..1000 {
                let x = f.random_nonzero(&mut rng, 30);
                let y = f.random_nonzero(&mut rng, 30);
                let xy2 = f.mul(&x, &f.mul(&y, &y).unwrap()).unwrap();
                assert_eq!(f.square_class(&x).unwrap(), f.square_class(&xy2).unwrap());
            }
        }
    }

    #[test]
    fn quad_sqrt_roundtrip() {
        let e = Quad::new(Rationals, BigRational::from_integer((-1).into()));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let x = e.random(&mut rng, 9);
            let y = e.mul(&x, &x);
            let r = e.sqrt(&y).unwrap();
            assert_eq!(e.mul(&r, &r), y);
        }
    }

    #[test]
    fn norm_multiplicative_and_conj_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [-1i64, 2, 1] {
            let e = Quad::new(Rationals, BigRational::from_integer(d.into()));
            for _ in 0..200 {
                let x = e.random(&mut rng, 9);
                let y = e.random(&mut rng, 9);
                assert_eq!(e.norm(&e.mul(&x, &y)), e.base.mul(&e.norm(&x), &e.norm(&y)));
                assert_eq!(e.conj(&e.conj(&x)), x);
                assert_eq!(e.conj(&e.mul(&x, &y)), e.mul(&e.conj(&x), &e.conj(&y)));
            }
        }
    }
}
