// SPDX-License-Identifier: Apache-2.0
//! Mod-2 Galois cohomology of the supported fields, with canonical payloads.

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{FieldDesc, Scalar};
use crate::hilbert::{self, Place};
use crate::qforms::QuadraticForm;
use num_bigint::BigInt;
use num_traits::{One, Signed};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// Q in degree 0 and ≥ 3, F_p in every degree.
    Bit(bool),
    /// Q in degree 1: squarefree integer.
    Sq(BigInt),
    /// Q in degree 2: ramified places.
    Ram(BTreeSet<Place>),
    /// Laurent tower: variable-index subset S ↦ base class of degree deg − |S|.
    Terms(BTreeMap<Vec<usize>, Class>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Class {
    pub field: FieldDesc,
    pub degree: usize,
    pub payload: Payload,
}

fn guard(field: &FieldDesc) -> Result<()> {
    match field {
        FieldDesc::Q | FieldDesc::Fp(_) | FieldDesc::Laurent(..) => Ok(()),
        FieldDesc::Quad(..) => Err(Error::UnsupportedField("cohomology over a quadratic layer".into())),
    }
}

fn base_of(field: &FieldDesc) -> &FieldDesc {
    match field {
        FieldDesc::Laurent(b, _) => b,
        f => f,
    }
}

impl Class {
    pub fn zero(field: &FieldDesc, degree: usize) -> Class {
        let payload = match field {
            FieldDesc::Q => match degree {
                1 => Payload::Sq(BigInt::one()),
                2 => Payload::Ram(BTreeSet::new()),
                _ => Payload::Bit(false),
            },
            FieldDesc::Laurent(..) => Payload::Terms(BTreeMap::new()),
            _ => Payload::Bit(false),
        };
        Class { field: field.clone(), degree, payload }
    }

    pub fn one(field: &FieldDesc) -> Class {
        match field {
            FieldDesc::Laurent(b, _) => {
                let mut m = BTreeMap::new();
                m.insert(Vec::new(), Class::one(b));
                Class { field: field.clone(), degree: 0, payload: Payload::Terms(m) }
            }
            _ => Class { field: field.clone(), degree: 0, payload: Payload::Bit(true) },
        }
    }

    /// The degree-1 class (c).
    pub fn of_scalar(field: &FieldDesc, c: &Scalar) -> Result<Class> {
        guard(field)?;
        field.check(c)?;
        if field.is_zero(c) {
            return Err(Error::ZeroSlot);
        }
        Ok(match (field, c) {
            (FieldDesc::Q, Scalar::Q(q)) => Class { field: field.clone(), degree: 1, payload: Payload::Sq(hilbert::sqf(q)) },
            (FieldDesc::Fp(_), _) => Class { field: field.clone(), degree: 1, payload: Payload::Bit(!field.is_square(c)?) },
            (FieldDesc::Laurent(b, _), Scalar::Mono(u, e)) => {
                let mut m = BTreeMap::new();
                let uc = Class::of_scalar(b, u)?;
                if !uc.is_zero() {
                    m.insert(Vec::new(), uc);
                }
                for (i, x) in e.iter().enumerate() {
                    if x.rem_euclid(2) == 1 {
                        m.insert(vec![i], Class::one(b));
                    }
                }
                Class { field: field.clone(), degree: 1, payload: Payload::Terms(m) }
            }
            _ => return Err(Error::MixedFields),
        })
    }

    pub fn minus_one(field: &FieldDesc) -> Class {
        Class::of_scalar(field, &field.from_i64(-1)).expect("-1 is nonzero")
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Bit(b) => !b,
            Payload::Sq(s) => s.is_one(),
            Payload::Ram(r) => r.is_empty(),
            Payload::Terms(m) => m.is_empty(),
        }
    }

    fn same(&self, other: &Class) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Class) -> Result<Class> {
        self.same(other)?;
        if self.degree != other.degree {
            return Err(Error::Invalid(format!("adding classes of degrees {} and {}", self.degree, other.degree)));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Bit(a), Payload::Bit(b)) => Payload::Bit(a ^ b),
            (Payload::Sq(a), Payload::Sq(b)) => Payload::Sq(arith::squarefree(&(a * b))),
            (Payload::Ram(a), Payload::Ram(b)) => Payload::Ram(a.symmetric_difference(b).cloned().collect()),
            (Payload::Terms(a), Payload::Terms(b)) => {
                let mut m = a.clone();
                for (k, v) in b {
                    let nv = match m.get(k) {
                        Some(x) => x.add(v)?,
                        None => v.clone(),
                    };
                    if nv.is_zero() {
                        m.remove(k);
                    } else {
                        m.insert(k.clone(), nv);
                    }
                }
                Payload::Terms(m)
            }
            _ => return Err(Error::Internal("payload mismatch".into())),
        };
        Ok(Class { field: self.field.clone(), degree: self.degree, payload })
    }

    /// Restriction to the real place (Q only).
    fn real_bit(&self) -> bool {
        match &self.payload {
            Payload::Bit(b) => *b,
            Payload::Sq(s) => s.is_negative(),
            Payload::Ram(r) => r.contains(&Place::Real),
            Payload::Terms(_) => false,
        }
    }

    pub fn cup(&self, other: &Class) -> Result<Class> {
        self.same(other)?;
        let deg = self.degree + other.degree;
        let field = &self.field;
        if let (Payload::Terms(a), Payload::Terms(b)) = (&self.payload, &other.payload) {
            let base = base_of(field);
            let m1 = Class::minus_one(base);
            let mut out = Class::zero(field, deg);
            for (s, h) in a {
                for (t, g) in b {
                    let inter = s.iter().filter(|i| t.contains(i)).count();
                    let mut c = h.cup(g)?;
                    for _ in 0..inter {
                        c = c.cup(&m1)?;
                    }
                    if c.is_zero() {
                        continue;
                    }
                    let mut key: Vec<usize> = s.iter().chain(t).cloned().collect::<BTreeSet<_>>().into_iter().collect();
                    key.sort();
                    let mut m = BTreeMap::new();
                    m.insert(key, c);
                    out = out.add(&Class { field: field.clone(), degree: deg, payload: Payload::Terms(m) })?;
                }
            }
            return Ok(out);
        }
        if self.degree == 0 {
            return Ok(if self.is_zero() { Class::zero(field, deg) } else { other.clone() });
        }
        if other.degree == 0 {
            return Ok(if other.is_zero() { Class::zero(field, deg) } else { self.clone() });
        }
        match field {
            FieldDesc::Q => {
                if let (Payload::Sq(a), Payload::Sq(b)) = (&self.payload, &other.payload) {
                    return Ok(Class { field: field.clone(), degree: 2, payload: Payload::Ram(hilbert::ramification(a, b)) });
                }
                Ok(Class { field: field.clone(), degree: deg, payload: Payload::Bit(self.real_bit() && other.real_bit()) })
            }
            _ => Ok(Class::zero(field, deg)),
        }
    }

    /// x·(−1)^m
    pub fn times_minus_one(&self, m: usize) -> Result<Class> {
        let m1 = Class::minus_one(&self.field);
        let mut c = self.clone();
        for _ in 0..m {
            c = c.cup(&m1)?;
        }
        Ok(c)
    }

    /// Membership in (−1)^m · H^{deg−m}.
    pub fn in_minus_one_power(&self, m: usize) -> bool {
        if self.is_zero() || m == 0 {
            return true;
        }
        if self.degree < m {
            return false;
        }
        match &self.payload {
            Payload::Terms(t) => t.values().all(|h| h.in_minus_one_power(m)),
            _ => match &self.field {
                FieldDesc::Q => match self.degree {
                    d if d >= 3 => true,
                    2 => {
                        let Payload::Ram(r) = &self.payload else { return false };
                        if m == 2 {
                            let target: BTreeSet<Place> = [Place::P(BigInt::from(2)), Place::Real].into_iter().collect();
                            return *r == target;
                        }
                        let primes: Vec<BigInt> = r
                            .iter()
                            .filter_map(|v| match v {
                                Place::P(p) => Some(p.clone()),
                                Place::Real => None,
                            })
                            .chain(std::iter::once(BigInt::from(2)))
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .collect();
                        let minus = BigInt::from(-1);
                        for mask in 0u64..(1u64 << primes.len().min(20)) {
                            let mut a = BigInt::one();
                            for (i, p) in primes.iter().enumerate() {
                                if mask >> i & 1 == 1 {
                                    a *= p;
                                }
                            }
                            for sgn in [1, -1] {
                                let av = &a * BigInt::from(sgn);
                                if hilbert::ramification(&minus, &av) == *r {
                                    return true;
                                }
                            }
                        }
                        false
                    }
                    // degree 1, m = 1
                    _ => matches!(&self.payload, Payload::Sq(s) if *s == BigInt::from(-1)),
                },
                FieldDesc::Fp(_) => {
                    if self.degree >= 2 {
                        return true;
                    }
                    // degree 1, m = 1: the only nonzero class is (−1) iff −1 is a nonsquare
                    !Class::minus_one(&self.field).is_zero()
                }
                _ => false,
            },
        }
    }

    /// x·(−1)^m = 0
    pub fn in_j(&self, m: usize) -> bool {
        self.times_minus_one(m).map(|c| c.is_zero()).unwrap_or(false)
    }

    fn terms(&self) -> BTreeMap<Vec<usize>, Class> {
        match &self.payload {
            Payload::Terms(m) => m.clone(),
            _ => {
                let mut m = BTreeMap::new();
                if !self.is_zero() {
                    m.insert(Vec::new(), self.clone());
                }
                m
            }
        }
    }

    /// View a class over a lower tower (or the base) as a class over `field`.
    fn embed(&self, field: &FieldDesc) -> Class {
        Class { field: field.clone(), degree: self.degree, payload: Payload::Terms(self.terms()) }
    }

    /// (t_i)·x for x already embedded over the tower, i not occurring in x.
    fn times_var(&self, i: usize) -> Class {
        let mut m = BTreeMap::new();
        for (k, v) in self.terms() {
            let mut k2 = k.clone();
            k2.push(i);
            k2.sort();
            m.insert(k2, v);
        }
        Class { field: self.field.clone(), degree: self.degree + 1, payload: Payload::Terms(m) }
    }
}

pub fn symbol(field: &FieldDesc, slots: &[Scalar]) -> Result<Class> {
    guard(field)?;
    let mut c = Class::one(field);
    for s in slots {
        c = c.cup(&Class::of_scalar(field, s)?)?;
    }
    Ok(c)
}

/// Places where the Hasse invariant differs from that of the hyperbolic form of the same dimension.
pub fn e2_q_places(q: &QuadraticForm) -> Result<BTreeSet<Place>> {
    let a = q.q_ints()?;
    let m = q.dim() / 2;
    let h: Vec<BigInt> = (0..m).flat_map(|_| [BigInt::one(), BigInt::from(-1)]).collect();
    Ok(hilbert::support(&a).into_iter().filter(|v| hilbert::hasse(&a, v) != hilbert::hasse(&h, v)).collect())
}

/// The invariant e_n on a form whose class lies in I^n.
pub fn e_n(n: usize, q: &QuadraticForm) -> Result<Class> {
    let f = &q.field;
    guard(f)?;
    if n == 0 {
        return Ok(Class { field: f.clone(), degree: 0, payload: Payload::Bit(q.dim() % 2 == 1) }.embed_if_laurent());
    }
    if !q.in_ideal(n)? {
        return Err(Error::NotInIdeal(format!("e_{n} needs a class in I^{n}")));
    }
    match f {
        FieldDesc::Laurent(..) => {
            let sp = q.springer()?;
            let last = f.nvars() - 1;
            let a = e_n(n, &sp.q0.sum(&sp.q1)?)?.embed(f);
            let b = e_n(n - 1, &sp.q1)?.embed(f).times_var(last);
            a.add(&b)
        }
        _ if n == 1 => Class::of_scalar(f, &q.signed_disc()),
        FieldDesc::Q if n == 2 => Ok(Class { field: f.clone(), degree: 2, payload: Payload::Ram(e2_q_places(q)?) }),
        FieldDesc::Q => {
            let sig = q.signature()?;
            Ok(Class { field: f.clone(), degree: n, payload: Payload::Bit((sig >> n) & 1 == 1) })
        }
        _ => Ok(Class::zero(f, n)),
    }
}

impl Class {
    fn embed_if_laurent(self) -> Class {
        if matches!(self.field, FieldDesc::Laurent(..)) {
            let base = base_of(&self.field).clone();
            let inner = Class { field: base, degree: self.degree, payload: self.payload.clone() };
            return inner.embed(&self.field);
        }
        self
    }
}

/// Stiefel–Whitney class w_i of a diagonal form.
pub fn stiefel_whitney(i: usize, q: &QuadraticForm) -> Result<Class> {
    let f = &q.field;
    guard(f)?;
    let mut w: Vec<Class> = vec![Class::one(f)];
    for a in &q.entries {
        let c = Class::of_scalar(f, a)?;
        let mut next = w.clone();
        next.push(Class::zero(f, w.len()));
        for j in 1..next.len() {
            let t = w[j - 1].cup(&c)?;
            next[j] = next[j].add(&t)?;
        }
        w = next;
        w.truncate(i + 1);
    }
    Ok(if i < w.len() { w[i].clone() } else { Class::zero(f, i) })
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        match &self.payload {
            Payload::Bit(_) if self.degree == 0 => write!(f, "1"),
            Payload::Bit(_) => write!(f, "(-1)^{}", self.degree),
            Payload::Sq(s) => write!(f, "({s})"),
            Payload::Ram(r) => {
                let v: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                write!(f, "ram{{{}}}", v.join(","))
            }
            Payload::Terms(m) => {
                let names = match &self.field {
                    FieldDesc::Laurent(_, v) => v.clone(),
                    _ => Vec::new(),
                };
                let parts: Vec<String> = m
                    .iter()
                    .map(|(k, h)| {
                        let vars: String = k.iter().map(|i| format!("({})", names[*i])).collect();
                        match (vars.is_empty(), h.degree == 0) {
                            (true, _) => h.to_string(),
                            (false, true) => vars,
                            (false, false) => format!("{vars}*{h}"),
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDesc {
        FieldDesc::Q
    }

    #[test]
    fn symbol_examples() {
        let c = symbol(&q(), &[Scalar::q(2), Scalar::q(3)]).unwrap();
        assert_eq!(c.to_string(), "ram{2,3}");
        assert!(symbol(&q(), &[Scalar::q(2), Scalar::q(3), Scalar::q(5)]).unwrap().is_zero());
        assert!(!symbol(&q(), &vec![Scalar::q(-1); 3]).unwrap().is_zero());
    }

    #[test]
    fn arithmetic_examples() {
        let a = Class::of_scalar(&q(), &Scalar::q(7)).unwrap();
        let b = Class::of_scalar(&q(), &Scalar::q(-7)).unwrap();
        assert!(a.cup(&b).unwrap().is_zero());
        let two = Class::of_scalar(&q(), &Scalar::q(2)).unwrap();
        let three = Class::of_scalar(&q(), &Scalar::q(3)).unwrap();
        let five = Class::of_scalar(&q(), &Scalar::q(5)).unwrap();
        let lhs = two.add(&three).unwrap().cup(&five).unwrap();
        let rhs = two.cup(&five).unwrap().add(&three.cup(&five).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_examples() {
        assert!(Class::zero(&q(), 4).in_minus_one_power(2));
        let c = symbol(&q(), &[Scalar::q(2), Scalar::q(3)]).unwrap();
        // (2)(3) = (−1)(3): both ramify exactly at {2,3}
        assert!(c.in_minus_one_power(1));
        let f5 = FieldDesc::fp(5).unwrap();
        assert!(Class::of_scalar(&f5, &Scalar::Fp(2)).unwrap().in_j(1));
    }

    #[test]
    fn en_examples() {
        let f = q();
        let qd = QuadraticForm::ints(&f, &[1, -5]);
        assert_eq!(e_n(1, &qd).unwrap(), Class::of_scalar(&f, &Scalar::q(5)).unwrap());
        let p = QuadraticForm::pfister(&f, &[Scalar::q(2), Scalar::q(3)]).unwrap();
        assert_eq!(e_n(2, &p).unwrap(), symbol(&f, &[Scalar::q(2), Scalar::q(3)]).unwrap());
        let l = FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into()]).unwrap();
        let cs: Vec<Scalar> = ["-1", "t1", "t2"].iter().map(|s| l.parse_scalar(s).unwrap()).collect();
        let p = QuadraticForm::pfister(&l, &cs).unwrap();
        let e = e_n(3, &p).unwrap();
        assert_eq!(e, symbol(&l, &cs).unwrap());
        assert_eq!(e.to_string(), "(t1)(t2)*(-1)");
    }

    #[test]
    fn stiefel_whitney_examples() {
        let f = q();
        let w1 = stiefel_whitney(1, &QuadraticForm::ints(&f, &[2, 3])).unwrap();
        assert_eq!(w1, Class::of_scalar(&f, &Scalar::q(6)).unwrap());
        let w2 = stiefel_whitney(2, &QuadraticForm::ints(&f, &[2, 3])).unwrap();
        assert_eq!(w2, symbol(&f, &[Scalar::q(2), Scalar::q(3)]).unwrap());
    }
}
