// SPDX-License-Identifier: Apache-2.0
//! Diagonal quadratic forms and Witt-ring machinery.

use crate::arith;
use crate::error::{Error, Result};
use crate::fields::{DynField, Field, FieldDesc, Scalar};
use crate::hilbert::{self, Place};
use crate::linalg::Mat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

const Q_SEARCH_EVALS: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub field: FieldDesc,
    pub entries: Vec<Scalar>,
}

/// Anisotropic kernel plus the number of split-off hyperbolic planes.
#[derive(Clone, Debug)]
pub struct WittClass {
    pub kernel: QuadraticForm,
    pub hyperbolic: usize,
}

impl PartialEq for WittClass {
    fn eq(&self, other: &Self) -> bool {
        self.kernel.isometric(&other.kernel).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Similarity {
    Similar(Scalar),
    NotSimilar,
    Undecided,
}

/// Linear functional on E = k(√d), s(a + b√d) = a·s1 + b·s2.
#[derive(Clone, Debug)]
pub enum Functional {
    Trace,
    Custom(Scalar, Scalar),
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| self.field.fmt_scalar(e)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// Symmetric Gaussian elimination. Returns diagonal values and the new basis (as columns).
pub fn diagonalize<F: Field>(f: &F, g: &Mat<F::Elem>) -> Option<(Vec<F::Elem>, Vec<Vec<F::Elem>>)> {
    let n = g.rows;
    let mut a = g.clone();
    let mut basis: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    let swap = |a: &mut Mat<F::Elem>, basis: &mut Vec<Vec<F::Elem>>, i: usize, j: usize| {
        for k in 0..n {
            a.data.swap(i * n + k, j * n + k);
        }
        for k in 0..n {
            a.data.swap(k * n + i, k * n + j);
        }
        basis.swap(i, j);
    };
    for i in 0..n {
        if f.is_zero(a.get(i, i)) {
            if let Some(j) = (i + 1..n).find(|&j| !f.is_zero(a.get(j, j))) {
                swap(&mut a, &mut basis, i, j);
            } else {
                let j = (i + 1..n).find(|&j| !f.is_zero(a.get(i, j)))?;
                // e_i <- e_i + e_j
                for k in 0..n {
                    let v = f.add(a.get(i, k), a.get(j, k));
                    a.set(i, k, v);
                }
                for k in 0..n {
                    let v = f.add(a.get(k, i), a.get(k, j));
                    a.set(k, i, v);
                }
                let bj = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(&bj) {
                    *x = f.add(x, y);
                }
            }
        }
        let inv = f.inv(a.get(i, i))?;
        for j in i + 1..n {
            if f.is_zero(a.get(j, i)) {
                continue;
            }
            let c = f.mul(a.get(j, i), &inv);
            for k in 0..n {
                let v = f.sub(a.get(j, k), &f.mul(&c, a.get(i, k)));
                a.set(j, k, v);
            }
            for k in 0..n {
                let v = f.sub(a.get(k, j), &f.mul(&c, a.get(k, i)));
                a.set(k, j, v);
            }
            let bi = basis[i].clone();
            for (x, y) in basis[j].iter_mut().zip(&bi) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
    }
    let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
    Some((diag, basis))
}

fn lower_field(field: &FieldDesc) -> Result<FieldDesc> {
    match field {
        FieldDesc::Laurent(b, vars) if !vars.is_empty() => {
            if vars.len() == 1 {
                Ok((**b).clone())
            } else {
                Ok(FieldDesc::Laurent(b.clone(), vars[..vars.len() - 1].to_vec()))
            }
        }
        _ => Err(Error::UnsupportedField("not a Laurent tower".into())),
    }
}

/// Splits c·t^e into (lower scalar, last exponent).
fn project(field: &FieldDesc, s: &Scalar) -> Result<(Scalar, i64)> {
    let (c, e) = field.exponents(s)?;
    let m = e.len();
    let last = e[m - 1];
    if m == 1 {
        Ok(((*c).clone(), last))
    } else {
        Ok((Scalar::Mono(Box::new(c.clone()), e[..m - 1].to_vec()), last))
    }
}

/// Inverse of `project`.
pub fn lift(field: &FieldDesc, s: &Scalar, last: i64) -> Result<Scalar> {
    let m = field.nvars();
    let g = field.ground();
    let (c, mut e) = match s {
        Scalar::Mono(c, e) => ((**c).clone(), e.clone()),
        other => (other.clone(), Vec::new()),
    };
    if g.is_zero(&c) {
        return Ok(field.zero());
    }
    e.push(last);
    if e.len() != m {
        return Err(Error::MixedFields);
    }
    Ok(Scalar::Mono(Box::new(c), e))
}

/// Springer pieces of a Laurent form: q ≅ q0 ⊥ ⟨t⟩q1 with q0, q1 over the lower tower.
pub struct Springer {
    pub lower: FieldDesc,
    pub q0: QuadraticForm,
    pub q1: QuadraticForm,
    pub idx0: Vec<(usize, i64)>,
    pub idx1: Vec<(usize, i64)>,
}

impl QuadraticForm {
    pub fn diagonal(field: FieldDesc, entries: Vec<Scalar>) -> Result<Self> {
        for e in &entries {
            field.check(e)?;
            if field.is_zero(e) {
                return Err(Error::ZeroEntry);
            }
        }
        Ok(QuadraticForm { field, entries })
    }

    pub fn parse(field: &FieldDesc, entries: &[&str]) -> Result<Self> {
        let v = entries.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>()?;
        QuadraticForm::diagonal(field.clone(), v)
    }

    pub fn ints(field: &FieldDesc, entries: &[i64]) -> Self {
        QuadraticForm::diagonal(field.clone(), entries.iter().map(|&n| field.from_i64(n)).collect())
            .expect("nonzero integer entries")
    }

    pub fn empty(field: &FieldDesc) -> Self {
        QuadraticForm { field: field.clone(), entries: Vec::new() }
    }

    pub fn hyperbolic(field: &FieldDesc, m: usize) -> Self {
        let mut e = Vec::new();
        for _ in 0..m {
            e.push(field.one());
            e.push(field.from_i64(-1));
        }
        QuadraticForm { field: field.clone(), entries: e }
    }

    /// ⟨⟨c1,…,cn⟩⟩ = ⊗⟨1,−ci⟩.
    pub fn pfister(field: &FieldDesc, cs: &[Scalar]) -> Result<Self> {
        let mut q = QuadraticForm::diagonal(field.clone(), vec![field.one()])?;
        for c in cs {
            field.check(c)?;
            if field.is_zero(c) {
                return Err(Error::ZeroEntry);
            }
            let f = QuadraticForm::diagonal(field.clone(), vec![field.one(), field.neg(c)?])?;
            q = q.tensor(&f)?;
        }
        Ok(q)
    }

    /// Strips the leading ⟨1⟩ of a Pfister form.
    pub fn pure_part(&self) -> Result<Self> {
        if self.entries.first().map(|e| *e == self.field.one()) != Some(true) {
            return Err(Error::Invalid("pure part needs a leading <1>".into()));
        }
        Ok(QuadraticForm { field: self.field.clone(), entries: self.entries[1..].to_vec() })
    }

    pub fn gram(field: &FieldDesc, g: &Mat<Scalar>) -> Result<Self> {
        let f = DynField::new(field.clone())?;
        for i in 0..g.rows {
            for j in 0..g.cols {
                if g.get(i, j) != g.get(j, i) {
                    return Err(Error::Invalid("Gram matrix is not symmetric".into()));
                }
            }
        }
        let (diag, _) = diagonalize(&f, g).ok_or(Error::DegenerateGram)?;
        QuadraticForm::diagonal(field.clone(), diag)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        Ok(QuadraticForm { field: self.field.clone(), entries: e })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        self.field.check(c)?;
        if self.field.is_zero(c) {
            return Err(Error::ZeroEntry);
        }
        let e = self.entries.iter().map(|x| self.field.mul(c, x)).collect::<Result<Vec<_>>>()?;
        Ok(QuadraticForm { field: self.field.clone(), entries: e })
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_i64(-1)).expect("scaling by -1")
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let mut e = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                e.push(self.field.mul(a, b)?);
            }
        }
        Ok(QuadraticForm { field: self.field.clone(), entries: e })
    }

    /// m·q in the Witt ring, as a form (negative m uses −q).
    pub fn multiple(&self, m: i64) -> Self {
        let base = if m < 0 { self.neg() } else { self.clone() };
        let mut e = Vec::new();
        for _ in 0..m.unsigned_abs() {
            e.extend(base.entries.iter().cloned());
        }
        QuadraticForm { field: self.field.clone(), entries: e }
    }

    pub fn disc(&self) -> Scalar {
        self.entries.iter().fold(self.field.one(), |acc, x| self.field.mul(&acc, x).expect("same field"))
    }

    /// (−1)^{n(n−1)/2}·disc.
    pub fn signed_disc(&self) -> Scalar {
        let n = self.dim();
        let d = self.disc();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            self.field.neg(&d).expect("same field")
        } else {
            d
        }
    }

    pub fn signature(&self) -> Result<i64> {
        if self.field != FieldDesc::Q {
            return Err(Error::UnsupportedField("signature needs Q".into()));
        }
        let mut s = 0;
        for e in &self.entries {
            s += self.field.sign(e)? as i64;
        }
        Ok(s)
    }

    pub fn value(&self, v: &[Scalar]) -> Result<Scalar> {
        if v.len() != self.dim() {
            return Err(Error::Invalid("vector length".into()));
        }
        let mut s = self.field.zero();
        for (a, x) in self.entries.iter().zip(v) {
            s = self.field.add(&s, &self.field.mul(a, &self.field.mul(x, x)?)?)?;
        }
        Ok(s)
    }

    /// Squarefree integer representatives of the entries (over Q).
    pub fn q_ints(&self) -> Result<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.as_q().map(hilbert::sqf).ok_or_else(|| Error::UnsupportedField("needs Q".into())))
            .collect()
    }

    pub fn hasse_q(&self, v: &Place) -> Result<i32> {
        Ok(hilbert::hasse(&self.q_ints()?, v))
    }

    pub fn springer(&self) -> Result<Springer> {
        let lower = lower_field(&self.field)?;
        let mut e0 = Vec::new();
        let mut e1 = Vec::new();
        let mut idx0 = Vec::new();
        let mut idx1 = Vec::new();
        for (i, s) in self.entries.iter().enumerate() {
            let (c, last) = project(&self.field, s)?;
            if last.rem_euclid(2) == 0 {
                e0.push(c);
                idx0.push((i, last));
            } else {
                e1.push(c);
                idx1.push((i, last));
            }
        }
        Ok(Springer {
            q0: QuadraticForm { field: lower.clone(), entries: e0 },
            q1: QuadraticForm { field: lower.clone(), entries: e1 },
            lower,
            idx0,
            idx1,
        })
    }

    fn is_finite_like(&self) -> bool {
        match &self.field {
            FieldDesc::Fp(_) => true,
            FieldDesc::Quad(b, _) => matches!(**b, FieldDesc::Fp(_)),
            _ => false,
        }
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        let n = self.dim();
        match &self.field {
            FieldDesc::Q => Ok(hilbert::globally_isotropic(&self.q_ints()?)),
            FieldDesc::Laurent(..) => {
                let s = self.springer()?;
                Ok(s.q0.is_isotropic()? || s.q1.is_isotropic()?)
            }
            _ if self.is_finite_like() => {
                if n >= 3 {
                    return Ok(true);
                }
                if n < 2 {
                    return Ok(false);
                }
                let m = self.field.neg(&self.field.mul(&self.entries[0], &self.entries[1])?)?;
                self.field.is_square(&m)
            }
            _ => Err(Error::UnsupportedField("isotropy over a quadratic number field".into())),
        }
    }

    /// Nonzero isotropic vector, if the form is isotropic.
    pub fn isotropic_vector(&self) -> Result<Option<Vec<Scalar>>> {
        if !self.is_isotropic()? {
            return Ok(None);
        }
        let v = match &self.field {
            FieldDesc::Q => self.q_witness()?,
            FieldDesc::Laurent(..) => self.laurent_witness()?,
            _ => self.finite_witness()?,
        };
        if self.field.is_zero(&self.value(&v)?) && v.iter().any(|x| !self.field.is_zero(x)) {
            Ok(Some(v))
        } else {
            Err(Error::Internal("isotropic witness failed verification".into()))
        }
    }

    fn finite_witness(&self) -> Result<Vec<Scalar>> {
        let f = &self.field;
        let n = self.dim();
        let mut v = vec![f.zero(); n];
        let a = &self.entries;
        if n == 2 {
            let r = f.sqrt(&f.neg(&f.div(&a[0], &a[1])?)?)?.ok_or_else(|| Error::Internal("no root".into()))?;
            v[0] = f.one();
            v[1] = r;
            return Ok(v);
        }
        let elems: Vec<Scalar> = match f {
            FieldDesc::Fp(p) => (0..*p).map(Scalar::Fp).collect(),
            FieldDesc::Quad(b, _) => {
                let FieldDesc::Fp(p) = **b else { unreachable!() };
                let mut out = Vec::new();
                for x in 0..p {
                    for y in 0..p {
                        out.push(Scalar::Quad(Box::new(Scalar::Fp(x)), Box::new(Scalar::Fp(y))));
                    }
                }
                out
            }
            _ => unreachable!(),
        };
        for x in &elems {
            let t = f.div(&f.neg(&f.add(&a[2], &f.mul(&a[0], &f.mul(x, x)?)?)?)?, &a[1])?;
            if let Some(y) = f.sqrt(&t)? {
                v[0] = x.clone();
                v[1] = y;
                v[2] = f.one();
                return Ok(v);
            }
        }
        Err(Error::Internal("finite-field ternary form did not represent".into()))
    }

    fn laurent_witness(&self) -> Result<Vec<Scalar>> {
        let s = self.springer()?;
        let n = self.dim();
        let mut v = vec![self.field.zero(); n];
        if let Some(w) = s.q0.isotropic_vector()? {
            for ((i, e), x) in s.idx0.iter().zip(&w) {
                v[*i] = lift(&self.field, x, -e / 2)?;
            }
        } else if let Some(w) = s.q1.isotropic_vector()? {
            for ((i, e), x) in s.idx1.iter().zip(&w) {
                v[*i] = lift(&self.field, x, -(e - 1).div_euclid(2))?;
            }
        } else {
            return Err(Error::Internal("Springer pieces anisotropic".into()));
        }
        Ok(v)
    }

    fn q_witness(&self) -> Result<Vec<Scalar>> {
        let ints = self.q_ints()?;
        let n = ints.len();
        let sub = choose_isotropic_subset(&ints).ok_or_else(|| Error::Internal("no isotropic subform".into()))?;
        let sub_ints: Vec<BigInt> = sub.iter().map(|&i| ints[i].clone()).collect();
        let w = hilbert::search_zero(&sub_ints, Q_SEARCH_EVALS)
            .ok_or_else(|| Error::Internal("isotropic witness search exceeded its bound".into()))?;
        let mut v = vec![Scalar::q(0); n];
        for (k, &i) in sub.iter().enumerate() {
            // entry = s·r² with s squarefree, so x = w / r.
            let a = self.entries[i].as_q().unwrap();
            let r2 = a / BigRational::from_integer(ints[i].clone());
            let r = crate::fields::Rationals.sqrt(&r2).ok_or_else(|| Error::Internal("square part".into()))?;
            v[i] = Scalar::Q(BigRational::from_integer(w[k].clone()) / r);
        }
        Ok(v)
    }

    pub fn is_hyperbolic(&self) -> Result<bool> {
        let n = self.dim();
        if n % 2 == 1 {
            return Ok(false);
        }
        if n == 0 {
            return Ok(true);
        }
        match &self.field {
            FieldDesc::Q => {
                if self.signature()? != 0 {
                    return Ok(false);
                }
                self.isometric(&QuadraticForm::hyperbolic(&self.field, n / 2))
            }
            FieldDesc::Laurent(..) => {
                let s = self.springer()?;
                Ok(s.q0.is_hyperbolic()? && s.q1.is_hyperbolic()?)
            }
            _ if self.is_finite_like() => self.field.is_square(&self.signed_disc()),
            _ => Err(Error::UnsupportedField("Witt equality over a quadratic number field".into())),
        }
    }

    /// Equality in the Witt ring.
    pub fn witt_eq(&self, other: &Self) -> Result<bool> {
        self.sum(&other.neg())?.is_hyperbolic()
    }

    pub fn is_witt_zero(&self) -> Result<bool> {
        self.is_hyperbolic()
    }

    pub fn isometric(&self, other: &Self) -> Result<bool> {
        self.same_field(other)?;
        if self.dim() != other.dim() {
            return Ok(false);
        }
        match &self.field {
            FieldDesc::Q => {
                if self.signature()? != other.signature()? {
                    return Ok(false);
                }
                if !self.field.same_class(&self.disc(), &other.disc())? {
                    return Ok(false);
                }
                let a = self.q_ints()?;
                let b = other.q_ints()?;
                let mut all = a.clone();
                all.extend(b.iter().cloned());
                for v in hilbert::support(&all) {
                    if hilbert::hasse(&a, &v) != hilbert::hasse(&b, &v) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ if self.is_finite_like() => self.field.same_class(&self.disc(), &other.disc()),
            FieldDesc::Laurent(..) => self.witt_eq(other),
            _ => Err(Error::UnsupportedField("isometry over a quadratic number field".into())),
        }
    }

    pub fn witt_decompose(&self) -> Result<WittClass> {
        let n = self.dim();
        let kernel = match &self.field {
            FieldDesc::Q => self.q_kernel()?,
            FieldDesc::Laurent(..) => {
                let s = self.springer()?;
                let k0 = s.q0.witt_decompose()?.kernel;
                let k1 = s.q1.witt_decompose()?.kernel;
                let mut e = Vec::new();
                for x in &k0.entries {
                    e.push(lift(&self.field, x, 0)?);
                }
                for x in &k1.entries {
                    e.push(lift(&self.field, x, 1)?);
                }
                QuadraticForm { field: self.field.clone(), entries: e }
            }
            _ if self.is_finite_like() => self.finite_kernel()?,
            _ => return Err(Error::UnsupportedField("Witt decomposition over a quadratic number field".into())),
        };
        let hyperbolic = (n - kernel.dim()) / 2;
        Ok(WittClass { kernel, hyperbolic })
    }

    fn finite_kernel(&self) -> Result<QuadraticForm> {
        let f = &self.field;
        let n = self.dim();
        let d = self.disc();
        if n % 2 == 1 {
            let c = if ((n - 1) / 2) % 2 == 1 { f.neg(&d)? } else { d };
            return QuadraticForm::diagonal(f.clone(), vec![f.square_class(&c)?]);
        }
        if f.is_square(&self.signed_disc())? {
            return Ok(QuadraticForm::empty(f));
        }
        // the unique anisotropic plane ⟨1, −g⟩
        let g = self.nonsquare_rep()?;
        QuadraticForm::diagonal(f.clone(), vec![f.one(), f.neg(&g)?])
    }

    fn nonsquare_rep(&self) -> Result<Scalar> {
        let f = &self.field;
        let mut k = 2;
        loop {
            let c = f.from_i64(k);
            if !f.is_zero(&c) && !f.is_square(&c)? {
                return f.square_class(&c);
            }
            if k > 1000 {
                let x = Scalar::Quad(Box::new(f.ground().zero()), Box::new(f.ground().one()));
                return f.square_class(&x);
            }
            k += 1;
        }
    }

    fn q_kernel(&self) -> Result<QuadraticForm> {
        let mut ints = self.q_ints()?;
        loop {
            // cancel ⟨a, −a⟩ pairs
            let mut changed = true;
            while changed {
                changed = false;
                'pairs: for i in 0..ints.len() {
                    for j in i + 1..ints.len() {
                        if ints[i] == -&ints[j] {
                            ints.remove(j);
                            ints.remove(i);
                            changed = true;
                            break 'pairs;
                        }
                    }
                }
            }
            if !hilbert::globally_isotropic(&ints) {
                break;
            }
            let sub = choose_isotropic_subset(&ints).ok_or_else(|| Error::Internal("no isotropic subform".into()))?;
            let sub_ints: Vec<BigInt> = sub.iter().map(|&i| ints[i].clone()).collect();
            let w = hilbert::search_zero(&sub_ints, Q_SEARCH_EVALS)
                .ok_or_else(|| Error::Internal("isotropic witness search exceeded its bound".into()))?;
            let rest = split_plane_q(&sub_ints, &w)?;
            let mut next: Vec<BigInt> = ints.iter().enumerate().filter(|(i, _)| !sub.contains(i)).map(|(_, x)| x.clone()).collect();
            next.extend(rest);
            ints = next;
        }
        QuadraticForm::diagonal(
            FieldDesc::Q,
            ints.into_iter().map(|x| Scalar::Q(BigRational::from_integer(x))).collect(),
        )
    }

    pub fn lambda2(&self) -> Result<Self> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::DimTooSmall);
        }
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push(self.field.mul(&self.entries[i], &self.entries[j])?);
            }
        }
        Ok(QuadraticForm { field: self.field.clone(), entries: e })
    }

    /// Membership of the Witt class in I^n.
    pub fn in_ideal(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Ok(true);
        }
        if self.dim() % 2 == 1 {
            return Ok(false);
        }
        if n == 1 {
            return Ok(true);
        }
        match &self.field {
            FieldDesc::Laurent(..) => {
                let s = self.springer()?;
                Ok(s.q1.in_ideal(n - 1)? && s.q0.sum(&s.q1)?.in_ideal(n)?)
            }
            FieldDesc::Q => {
                if !self.field.is_square(&self.signed_disc())? {
                    return Ok(false);
                }
                if n >= 3 && !crate::cohomology::e2_q_places(self)?.is_empty() {
                    return Ok(false);
                }
                if n >= 4 {
                    let sig = self.signature()?;
                    return Ok(sig.rem_euclid(1 << n) == 0);
                }
                Ok(true)
            }
            _ if self.is_finite_like() => self.field.is_square(&self.signed_disc()),
            _ => Err(Error::UnsupportedField("ideal membership over a quadratic number field".into())),
        }
    }

    /// Does the form represent c? (isotropic forms represent everything)
    pub fn represents(&self, c: &Scalar) -> Result<bool> {
        if self.is_isotropic()? {
            return Ok(true);
        }
        self.sum(&QuadraticForm::diagonal(self.field.clone(), vec![self.field.neg(c)?])?)?
            .is_isotropic()
    }

    pub fn similar(&self, other: &Self) -> Result<Similarity> {
        self.same_field(other)?;
        if self.dim() != other.dim() {
            return Ok(Similarity::NotSimilar);
        }
        let f = &self.field;
        let n = self.dim();
        if n == 0 {
            return Ok(Similarity::Similar(f.one()));
        }
        if n % 2 == 1 {
            let c = f.square_class(&f.div(&other.disc(), &self.disc())?)?;
            return Ok(if self.scale(&c)?.isometric(other)? { Similarity::Similar(c) } else { Similarity::NotSimilar });
        }
        match f {
            FieldDesc::Q => self.similar_q(other),
            FieldDesc::Laurent(b, _) => {
                let complete = matches!(**b, FieldDesc::Fp(_));
                for c in self.laurent_scale_candidates(other)? {
                    if self.scale(&c)?.isometric(other)? {
                        return Ok(Similarity::Similar(c));
                    }
                }
                Ok(if complete { Similarity::NotSimilar } else { Similarity::Undecided })
            }
            _ if self.is_finite_like() => {
                Ok(if self.isometric(other)? { Similarity::Similar(f.one()) } else { Similarity::NotSimilar })
            }
            _ => Err(Error::UnsupportedField("similarity over a quadratic number field".into())),
        }
    }

    fn laurent_scale_candidates(&self, other: &Self) -> Result<Vec<Scalar>> {
        let FieldDesc::Laurent(b, vars) = &self.field else { unreachable!() };
        let m = vars.len();
        let base_classes: Vec<Scalar> = match &**b {
            FieldDesc::Fp(p) => vec![Scalar::Fp(1), Scalar::Fp(arith::least_nonresidue(*p))],
            _ => {
                let mut primes: BTreeSet<BigInt> = BTreeSet::new();
                primes.insert(BigInt::from(2));
                for e in self.entries.iter().chain(&other.entries) {
                    let (c, _) = self.field.exponents(e)?;
                    for p in arith::odd_prime_divisors(&hilbert::sqf(c.as_q().unwrap())) {
                        primes.insert(BigInt::from(p));
                    }
                }
                let primes: Vec<BigInt> = primes.into_iter().take(10).collect();
                let mut out = Vec::new();
                for mask in 0u32..(1 << primes.len()) {
                    let mut v = BigInt::one();
                    for (i, p) in primes.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            v *= p;
                        }
                    }
                    out.push(Scalar::Q(BigRational::from_integer(v.clone())));
                    out.push(Scalar::Q(BigRational::from_integer(-v)));
                }
                out
            }
        };
        let mut out = Vec::new();
        for u in &base_classes {
            for mask in 0u32..(1 << m) {
                let e = (0..m).map(|i| (mask >> i & 1) as i64).collect();
                out.push(Scalar::Mono(Box::new(u.clone()), e));
            }
        }
        Ok(out)
    }

    fn similar_q(&self, other: &Self) -> Result<Similarity> {
        let f = &self.field;
        if !f.same_class(&self.disc(), &other.disc())? {
            return Ok(Similarity::NotSimilar);
        }
        let s1 = self.signature()?;
        let s2 = other.signature()?;
        if s1.abs() != s2.abs() {
            return Ok(Similarity::NotSimilar);
        }
        let signs: Vec<i64> = if s1 == 0 {
            vec![1, -1]
        } else if s1 == s2 {
            vec![1]
        } else {
            vec![-1]
        };
        let a = self.q_ints()?;
        let b = other.q_ints()?;
        let delta = hilbert::sqf(self.signed_disc().as_q().unwrap());
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        all.push(delta.clone());
        let places = hilbert::support(&all);
        let eps: Vec<(Place, i32)> = places.iter().map(|v| (v.clone(), hilbert::hasse(&a, v) * hilbert::hasse(&b, v))).collect();
        // necessary local conditions
        for (v, e) in &eps {
            if *e == -1 && hilbert::is_local_square(&delta, v) {
                return Ok(Similarity::NotSimilar);
            }
        }
        let real_eps = eps.iter().find(|(v, _)| *v == Place::Real).map(|x| x.1).unwrap_or(1);
        let signs: Vec<i64> = signs
            .into_iter()
            .filter(|&sg| {
                let sym = if sg < 0 && delta.is_negative() { -1 } else { 1 };
                sym == real_eps
            })
            .collect();
        if signs.is_empty() {
            return Ok(Similarity::NotSimilar);
        }
        let primes: Vec<BigInt> = places
            .iter()
            .filter_map(|v| match v {
                Place::P(p) => Some(p.clone()),
                Place::Real => None,
            })
            .take(14)
            .collect();
        let try_c = |c: &BigInt| -> Result<bool> {
            let cs = Scalar::Q(BigRational::from_integer(c.clone()));
            self.scale(&cs)?.isometric(other)
        };
        let mut aux: Vec<BigInt> = vec![BigInt::one()];
        let mut ell = 3u64;
        while aux.len() < 40 {
            let lb = BigInt::from(ell);
            if arith::is_prime_u64(ell) && !primes.contains(&lb) {
                aux.push(lb);
            }
            ell += 2;
        }
        for extra in &aux {
            for mask in 0u32..(1 << primes.len()) {
                let mut v = extra.clone();
                for (i, p) in primes.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v *= p;
                    }
                }
                for &sg in &signs {
                    let c = &v * BigInt::from(sg);
                    if try_c(&c)? {
                        return Ok(Similarity::Similar(Scalar::Q(BigRational::from_integer(c))));
                    }
                }
            }
        }
        Ok(Similarity::Undecided)
    }
}

/// Smallest subset of entries spanning an isotropic subform.
fn choose_isotropic_subset(a: &[BigInt]) -> Option<Vec<usize>> {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if hilbert::globally_isotropic(&[a[i].clone(), a[j].clone()]) {
                return Some(vec![i, j]);
            }
        }
    }
    let mut combos = 0;
    for size in 3..=4usize.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let sub: Vec<BigInt> = idx.iter().map(|&i| a[i].clone()).collect();
            if hilbert::globally_isotropic(&sub) {
                return Some(idx);
            }
            combos += 1;
            if combos > 5000 {
                break;
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for t in k..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    if n >= 5 {
        // indefinite: take mixed signs
        let pos: Vec<usize> = (0..n).filter(|&i| a[i].is_positive()).collect();
        let neg: Vec<usize> = (0..n).filter(|&i| a[i].is_negative()).collect();
        if pos.is_empty() || neg.is_empty() {
            return None;
        }
        let mut s = vec![pos[0], neg[0]];
        for i in 0..n {
            if s.len() == 5 {
                break;
            }
            if !s.contains(&i) {
                s.push(i);
            }
        }
        s.sort();
        return Some(s);
    }
    None
}

/// Splits a hyperbolic plane off ⟨a⟩ using isotropic w; returns squarefree complement entries.
fn split_plane_q(a: &[BigInt], w: &[BigInt]) -> Result<Vec<BigInt>> {
    let f = crate::fields::Rationals;
    let n = a.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let g = Mat::from_fn(n, n, |i, j| if i == j { q(&a[i]) } else { BigRational::zero() });
    // constraints: B(x, w) = 0 and B(x, e_j) = 0 for a coordinate j with a_j w_j ≠ 0
    let j = (0..n).find(|&j| !w[j].is_zero()).ok_or_else(|| Error::Internal("zero witness".into()))?;
    let cons = Mat::from_fn(2, n, |r, c| {
        if r == 0 {
            q(&(&a[c] * &w[c]))
        } else if c == j {
            q(&a[c])
        } else {
            BigRational::zero()
        }
    });
    let comp = crate::linalg::nullspace(&f, &cons);
    if comp.len() != n - 2 {
        return Err(Error::Internal("plane complement has wrong dimension".into()));
    }
    let gc = Mat::from_fn(comp.len(), comp.len(), |r, c| {
        let gv = crate::linalg::mat_vec(&f, &g, &comp[c]);
        crate::linalg::dot(&f, &comp[r], &gv)
    });
    if comp.is_empty() {
        return Ok(Vec::new());
    }
    let (diag, _) = diagonalize(&f, &gc).ok_or(Error::DegenerateGram)?;
    Ok(diag.iter().map(hilbert::sqf).collect())
}

/// Scharlau transfer along a functional on E = k(√d) (d = 1: split).
pub fn transfer_additive(q: &QuadraticForm, functional: &Functional) -> Result<QuadraticForm> {
    let FieldDesc::Quad(k, d) = &q.field else {
        return Err(Error::UnsupportedField("transfer needs a form over a quadratic layer".into()));
    };
    let (s1, s2) = match functional {
        Functional::Trace => (k.from_i64(2), k.zero()),
        Functional::Custom(a, b) => (a.clone(), b.clone()),
    };
    if k.is_zero(&s1) && k.is_zero(&s2) {
        return Err(Error::DegenerateFunctional);
    }
    let s = |x: &Scalar| -> Result<Scalar> {
        let Scalar::Quad(a, b) = x else { return Err(Error::MixedFields) };
        k.add(&k.mul(a, &s1)?, &k.mul(b, &s2)?)
    };
    let n = q.dim();
    let mut g = Mat::from_fn(2 * n, 2 * n, |_, _| k.zero());
    let sqrt_d = Scalar::Quad(Box::new(k.zero()), Box::new(k.one()));
    let d_e = q.field.quad_embed(d)?;
    for (i, e) in q.entries.iter().enumerate() {
        let a11 = s(e)?;
        let a12 = s(&q.field.mul(e, &sqrt_d)?)?;
        let a22 = s(&q.field.mul(e, &d_e)?)?;
        g.set(2 * i, 2 * i, a11);
        g.set(2 * i, 2 * i + 1, a12.clone());
        g.set(2 * i + 1, 2 * i, a12);
        g.set(2 * i + 1, 2 * i + 1, a22);
    }
    QuadraticForm::gram(k, &g)
}

/// Form over the split layer k[√1] ≅ k × k built from a pair of base forms.
pub fn split_pair(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<QuadraticForm> {
    q1.same_field(q2)?;
    if q1.dim() != q2.dim() {
        return Err(Error::Invalid("split pair needs equal dimensions".into()));
    }
    let k = q1.field.clone();
    let e = FieldDesc::quad(k.clone(), k.one())?;
    let half = k.inv(&k.from_i64(2))?;
    let mut out = Vec::new();
    for (x, y) in q1.entries.iter().zip(&q2.entries) {
        let a = k.mul(&k.add(x, y)?, &half)?;
        let b = k.mul(&k.sub(x, y)?, &half)?;
        out.push(Scalar::Quad(Box::new(a), Box::new(b)));
    }
    QuadraticForm::diagonal(e, out)
}

/// Multiplicative transfer: ιq ⊗_E q restricted to the switch-fixed points.
pub fn transfer_mult(q: &QuadraticForm) -> Result<QuadraticForm> {
    let FieldDesc::Quad(k, _) = &q.field else {
        return Err(Error::UnsupportedField("norm transfer needs a form over a quadratic layer".into()));
    };
    let ef = &q.field;
    let n = q.dim();
    let sqrt_d = Scalar::Quad(Box::new(k.zero()), Box::new(k.one()));
    // fixed basis as sparse E-coefficient lists over the pairs (i, j)
    let mut basis: Vec<Vec<((usize, usize), Scalar)>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j {
                basis.push(vec![((i, i), ef.one())]);
            } else {
                basis.push(vec![((i, j), ef.one()), ((j, i), ef.one())]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            basis.push(vec![((i, j), sqrt_d.clone()), ((j, i), ef.neg(&sqrt_d)?)]);
        }
    }
    let conj_e: Vec<Scalar> = q.entries.iter().map(|e| ef.quad_conj(e)).collect::<Result<_>>()?;
    let bil = |u: &[((usize, usize), Scalar)], w: &[((usize, usize), Scalar)]| -> Result<Scalar> {
        let mut s = ef.zero();
        for ((i, j), x) in u {
            for ((k2, l), y) in w {
                if i == k2 && j == l {
                    let t = ef.mul(&ef.mul(x, y)?, &ef.mul(&conj_e[*i], &q.entries[*j])?)?;
                    s = ef.add(&s, &t)?;
                }
            }
        }
        Ok(s)
    };
    let m = basis.len();
    let mut g = Mat::from_fn(m, m, |_, _| k.zero());
    for r in 0..m {
        for c in r..m {
            let v = bil(&basis[r], &basis[c])?;
            let Scalar::Quad(re, im) = v else { return Err(Error::MixedFields) };
            if !k.is_zero(&im) {
                return Err(Error::Internal("norm form value outside the base field".into()));
            }
            g.set(r, c, (*re).clone());
            g.set(c, r, *re);
        }
    }
    QuadraticForm::gram(k, &g)
}

/// P_n(q) = (dim q/2)⟨1⟩ + λ²(q) − 2^{n−1}q as a form representative.
pub fn pn_form(n: u32, q: &QuadraticForm) -> Result<QuadraticForm> {
    if n < 1 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if !q.in_ideal(n as usize)? {
        return Err(Error::NotInIdeal(format!("P_{n} needs a class in I^{n}")));
    }
    let f = &q.field;
    let mut out = QuadraticForm::ints(f, &vec![1; q.dim() / 2]);
    if q.dim() >= 2 {
        out = out.sum(&q.lambda2()?)?;
    }
    out.sum(&q.multiple(-(1i64 << (n - 1))))
}

pub fn pn(n: u32, q: &QuadraticForm) -> Result<WittClass> {
    pn_form(n, q)?.witt_decompose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(e: &[i64]) -> QuadraticForm {
        QuadraticForm::ints(&FieldDesc::Q, e)
    }

    #[test]
    fn build_examples() {
        let f = FieldDesc::Q;
        let p = QuadraticForm::pfister(&f, &[Scalar::q(-1), Scalar::q(-1), Scalar::q(-1)]).unwrap();
        assert_eq!(p, qf(&[1; 8]));
        let d = QuadraticForm::pfister(&f, &[Scalar::q(5)]).unwrap();
        assert_eq!(d.pure_part().unwrap(), qf(&[-5]));
        assert_eq!(qf(&[1, -3]).scale(&Scalar::q(2)).unwrap(), qf(&[2, -6]));
    }

    #[test]
    fn gram_diagonalizes() {
        let f = FieldDesc::Q;
        let g = Mat::from_rows(&[vec![Scalar::q(0), Scalar::q(1)], vec![Scalar::q(1), Scalar::q(0)]], 2);
        let q = QuadraticForm::gram(&f, &g).unwrap();
        assert!(q.is_hyperbolic().unwrap());
        let z = Mat::from_rows(&[vec![Scalar::q(0), Scalar::q(0)], vec![Scalar::q(0), Scalar::q(1)]], 2);
        assert_eq!(QuadraticForm::gram(&f, &z), Err(Error::DegenerateGram));
    }

    #[test]
    fn isotropy_examples() {
        let q = qf(&[1, 1, 1, 1, -7]);
        let v = q.isotropic_vector().unwrap().unwrap();
        assert!(FieldDesc::Q.is_zero(&q.value(&v).unwrap()));
        assert!(!qf(&[1; 8]).is_isotropic().unwrap());
        let l = FieldDesc::laurent(FieldDesc::Q, vec!["t".into()]).unwrap();
        let q = QuadraticForm::parse(&l, &["1", "-t"]).unwrap();
        assert!(!q.is_isotropic().unwrap());
        let q = QuadraticForm::parse(&l, &["t", "-4*t^3", "5"]).unwrap();
        let v = q.isotropic_vector().unwrap().unwrap();
        assert!(l.is_zero(&q.value(&v).unwrap()));
    }

    #[test]
    fn witt_examples() {
        let w = qf(&[1, -1, 1, -1, 5]).witt_decompose().unwrap();
        assert_eq!(w.hyperbolic, 2);
        assert_eq!(w.kernel, qf(&[5]));
        let p = QuadraticForm::pfister(&FieldDesc::Q, &[Scalar::q(1), Scalar::q(2), Scalar::q(3)]).unwrap();
        let w = p.witt_decompose().unwrap();
        assert_eq!((w.kernel.dim(), w.hyperbolic), (0, 4));
        let f5 = FieldDesc::fp(5).unwrap();
        let w = QuadraticForm::ints(&f5, &[1, 1, 1, 1]).witt_decompose().unwrap();
        assert_eq!((w.kernel.dim(), w.hyperbolic), (0, 2));
    }

    #[test]
    fn isometry_examples() {
        assert!(qf(&[1, -1]).isometric(&qf(&[2, -2])).unwrap());
        let f5 = FieldDesc::fp(5).unwrap();
        assert!(!QuadraticForm::ints(&f5, &[1, 1]).isometric(&QuadraticForm::ints(&f5, &[1, 2])).unwrap());
        let l = FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into()]).unwrap();
        let a = QuadraticForm::parse(&l, &["t1", "t2"]).unwrap();
        let b = QuadraticForm::parse(&l, &["t1", "4*t1*t2"]).unwrap();
        assert!(!a.isometric(&b).unwrap());
    }

    #[test]
    fn signature_examples() {
        assert_eq!(qf(&[1, 1, -1]).signature().unwrap(), 1);
        assert_eq!(qf(&[1; 8]).signature().unwrap(), 8);
        assert_eq!(qf(&[1, -1]).signature().unwrap(), 0);
    }

    #[test]
    fn similarity_examples() {
        let f = FieldDesc::Q;
        let m1 = QuadraticForm::pfister(&f, &vec![Scalar::q(-1); 3]).unwrap().pure_part().unwrap();
        let m2 = QuadraticForm::pfister(&f, &vec![Scalar::q(1); 3]).unwrap().pure_part().unwrap();
        let q = m1.sum(&m2.neg()).unwrap();
        match q.similar(&q.neg()).unwrap() {
            Similarity::Similar(c) => assert!(q.scale(&c).unwrap().isometric(&q.neg()).unwrap()),
            other => panic!("{other:?}"),
        }
        let a = QuadraticForm::pfister(&f, &[Scalar::q(2), Scalar::q(3)]).unwrap();
        let b = QuadraticForm::pfister(&f, &[Scalar::q(-1), Scalar::q(-1)]).unwrap();
        assert_eq!(a.similar(&b).unwrap(), Similarity::NotSimilar);
    }

    #[test]
    fn transfer_examples() {
        let e = FieldDesc::quad(FieldDesc::Q, Scalar::q(3)).unwrap();
        let one = QuadraticForm::ints(&e, &[1]);
        let t = transfer_additive(&one, &Functional::Trace).unwrap();
        assert!(t.isometric(&qf(&[2, 6])).unwrap());
        let h = QuadraticForm::ints(&e, &[1, -1]);
        let n = transfer_mult(&h).unwrap();
        assert!(n.isometric(&qf(&[2, -6, 1, -1])).unwrap());
        let q1 = qf(&[1, 3]);
        let q2 = qf(&[2, 5]);
        let sp = split_pair(&q1, &q2).unwrap();
        assert!(transfer_additive(&sp, &Functional::Trace).unwrap().isometric(&q1.sum(&q2).unwrap()).unwrap());
        assert!(transfer_mult(&sp).unwrap().isometric(&q1.tensor(&q2).unwrap()).unwrap());
    }

    #[test]
    fn lambda2_examples() {
        let l = qf(&[2, 3, 5]).lambda2().unwrap();
        assert_eq!(l, qf(&[6, 10, 15]));
        assert_eq!(qf(&[1, -1]).lambda2().unwrap(), qf(&[-1]));
        assert_eq!(qf(&[1]).lambda2(), Err(Error::DimTooSmall));
    }
}
