// SPDX-License-Identifier: Apache-2.0
//! Cohomological invariants of bi-octonion algebras and of forms in I³₁₂ and I³₁₄,
//! plus the division and isotopy decisions.

use crate::algebras::{build_product, malcev_centroid, Algebra, CentroidKind, ProductDesc};
use crate::cohomology::{e_n, Class};
use crate::error::{Error, Result};
use crate::fields::{Field, FieldDesc, Scalar};
use crate::linalg;
use crate::qforms::{self, Functional, QuadraticForm, Similarity};
use crate::structurable::{self, albert_data};
use crate::with_field;
use std::collections::BTreeMap;

/// t^e·α in E = k(√d), k being ℚ, 𝔽_p or a Laurent tower over them and α in k₀(√d).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerQuad {
    pub unit: Scalar,
    pub exps: Vec<i64>,
}

/// The quadratic extension E = k(√d) with d taken from the ground field k₀.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadOver {
    pub base: FieldDesc,
    /// k₀(√d) with d canonical.
    pub layer: FieldDesc,
}

impl QuadOver {
    pub fn new(base: &FieldDesc, d: &Scalar) -> Result<Self> {
        base.check(d)?;
        let d0 = match d {
            Scalar::Mono(c, e) => {
                if e.iter().any(|&x| x != 0) {
                    return Err(Error::UnsupportedField("d must lie in the ground field of the tower".into()));
                }
                (**c).clone()
            }
            other => other.clone(),
        };
        let layer = FieldDesc::quad(base.ground().clone(), d0)?;
        Ok(QuadOver { base: base.clone(), layer })
    }

    pub fn d(&self) -> Scalar {
        match &self.layer {
            FieldDesc::Quad(_, d) => (**d).clone(),
            _ => unreachable!(),
        }
    }

    pub fn is_split(&self) -> bool {
        self.layer.is_split_quad()
    }

    fn nvars(&self) -> usize {
        self.base.nvars()
    }

    /// c·t^e in k for c in k₀.
    fn lift(&self, c: Scalar, exps: &[i64]) -> Result<Scalar> {
        match &self.base {
            FieldDesc::Laurent(..) => self.base.mono(c, exps.to_vec()),
            _ => Ok(c),
        }
    }

    pub fn elem(&self, unit: Scalar, exps: Vec<i64>) -> Result<TowerQuad> {
        self.layer.check(&unit)?;
        if self.layer.is_zero(&unit) {
            return Err(Error::ZeroInput);
        }
        if exps.len() != self.nvars() {
            return Err(Error::MixedFields);
        }
        Ok(TowerQuad { unit, exps })
    }

    /// Embeds a scalar of the ground layer.
    pub fn unit(&self, unit: Scalar) -> Result<TowerQuad> {
        self.elem(unit, vec![0; self.nvars()])
    }

    /// Embeds a scalar of k.
    pub fn from_base(&self, c: &Scalar) -> Result<TowerQuad> {
        self.base.check(c)?;
        let (c0, e) = match c {
            Scalar::Mono(c0, e) => ((**c0).clone(), e.clone()),
            other => (other.clone(), Vec::new()),
        };
        self.elem(self.layer.quad_embed(&c0)?, if e.is_empty() { vec![0; self.nvars()] } else { e })
    }

    pub fn sqrt_d(&self) -> TowerQuad {
        let g = self.base.ground();
        TowerQuad { unit: Scalar::Quad(Box::new(g.zero()), Box::new(g.one())), exps: vec![0; self.nvars()] }
    }

    pub fn mul(&self, a: &TowerQuad, b: &TowerQuad) -> Result<TowerQuad> {
        Ok(TowerQuad {
            unit: self.layer.mul(&a.unit, &b.unit)?,
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn neg(&self, a: &TowerQuad) -> Result<TowerQuad> {
        Ok(TowerQuad { unit: self.layer.neg(&a.unit)?, exps: a.exps.clone() })
    }

    /// tr_{E/k}, or `None` when it vanishes.
    pub fn trace(&self, a: &TowerQuad) -> Result<Option<Scalar>> {
        let t = self.layer.quad_trace(&a.unit)?;
        if self.base.ground().is_zero(&t) {
            return Ok(None);
        }
        self.lift(t, &a.exps).map(Some)
    }

    pub fn norm(&self, a: &TowerQuad) -> Result<Scalar> {
        let n = self.layer.quad_norm(&a.unit)?;
        let e: Vec<i64> = a.exps.iter().map(|x| 2 * x).collect();
        self.lift(n, &e)
    }

    /// T_{E/k}(⟨a⟩) for the trace functional: ⟨tr a⟩⟨⟨−d·N(a)⟩⟩, or ℍ when tr a = 0.
    pub fn transfer_one(&self, a: &TowerQuad) -> Result<QuadraticForm> {
        let k = &self.base;
        match self.trace(a)? {
            None => Ok(QuadraticForm::hyperbolic(k, 1)),
            Some(t) => {
                let dn = k.mul(&self.lift(self.d(), &vec![0; self.nvars()])?, &self.norm(a)?)?;
                QuadraticForm::diagonal(k.clone(), vec![t.clone(), k.mul(&t, &dn)?])
            }
        }
    }

    /// T_{E/k}(⟨δ⟩φ′) for φ = ⟨⟨z₁,…,z_n⟩⟩.
    pub fn transfer_pure(&self, delta: &TowerQuad, z: &[TowerQuad]) -> Result<QuadraticForm> {
        let mut q = QuadraticForm::empty(&self.base);
        for e in self.pure_entries(z)? {
            q = q.sum(&self.transfer_one(&self.mul(delta, &e)?)?)?;
        }
        Ok(q)
    }

    /// Entries Π_{i∈S}(−z_i), S ≠ ∅, of the pure Pfister form.
    pub fn pure_entries(&self, z: &[TowerQuad]) -> Result<Vec<TowerQuad>> {
        let mut out = Vec::new();
        let one = self.unit(self.layer.one())?;
        for mask in 1usize..(1 << z.len()) {
            let mut p = one.clone();
            for (i, zi) in z.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p = self.mul(&p, &self.neg(zi)?)?;
                }
            }
            out.push(p);
        }
        Ok(out)
    }
}

/// Rost–Wittkop closed form for N_{E/k}(⟨⟨z₁,…,z_n⟩⟩) in the Witt ring:
/// 2^{n−1}⟨⟨d⟩⟩ if some tr z_i = 0, else 2^{n−1}⟨⟨d⟩⟩ + ⊗⟨⟨tr z_i, −d·N z_i⟩⟩.
pub fn norm_closed_form(e: &QuadOver, z: &[TowerQuad]) -> Result<QuadraticForm> {
    let k = &e.base;
    let n = z.len();
    if n == 0 {
        return Err(Error::Invalid("empty Pfister form".into()));
    }
    let d = e.lift(e.d(), &vec![0; e.nvars()])?;
    let nd = QuadraticForm::pfister(k, std::slice::from_ref(&d))?.multiple(1 << (n - 1));
    let mut slots = Vec::new();
    for zi in z {
        match e.trace(zi)? {
            None => return Ok(nd),
            Some(t) => {
                slots.push(t);
                slots.push(k.neg(&k.mul(&d, &e.norm(zi)?)?)?);
            }
        }
    }
    nd.sum(&QuadraticForm::pfister(k, &slots)?)
}

/// The symbol Π(tr z_i)·(−d·N z_i), or zero if some trace vanishes.
pub fn norm_symbol(e: &QuadOver, z: &[TowerQuad]) -> Result<Class> {
    let k = &e.base;
    let d = e.lift(e.d(), &vec![0; e.nvars()])?;
    let mut slots = Vec::new();
    for zi in z {
        match e.trace(zi)? {
            None => return Ok(Class::zero(k, 2 * z.len())),
            Some(t) => {
                slots.push(t);
                slots.push(k.neg(&k.mul(&d, &e.norm(zi)?)?)?);
            }
        }
    }
    crate::cohomology::symbol(k, &slots)
}

#[derive(Clone, Debug, PartialEq)]
pub enum RostSpec {
    /// ⟨c⟩(φ₁′ ⊥ ⟨−1⟩φ₂′) with φ_i = ⟨⟨slots⟩⟩.
    TwoPfister { field: FieldDesc, c: Scalar, phi1: Vec<Scalar>, phi2: Vec<Scalar> },
    /// T_{E/k}(⟨δ⟩φ′), E = k(√d), φ = ⟨⟨slots⟩⟩ over E, tr δ = 0.
    Transfer { field: FieldDesc, d: Scalar, delta: TowerQuad, phi: Vec<TowerQuad> },
}

impl RostSpec {
    pub fn field(&self) -> &FieldDesc {
        match self {
            RostSpec::TwoPfister { field, .. } | RostSpec::Transfer { field, .. } => field,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RostOutput {
    pub form: QuadraticForm,
    /// Bi-octonion witness; `None` over Laurent towers, where algebras are not built.
    pub desc: Option<ProductDesc>,
}

pub fn rost_construct(spec: &RostSpec) -> Result<RostOutput> {
    match spec {
        RostSpec::TwoPfister { field, c, phi1, phi2 } => {
            let p1 = QuadraticForm::pfister(field, phi1)?.pure_part()?;
            let p2 = QuadraticForm::pfister(field, phi2)?.pure_part()?;
            let form = p1.sum(&p2.neg())?.scale(c)?;
            let desc = field.is_arith_complete().then(|| ProductDesc::Decomposable {
                field: field.clone(),
                mu1: phi1.clone(),
                mu2: phi2.clone(),
            });
            Ok(RostOutput { form, desc })
        }
        RostSpec::Transfer { field, d, delta, phi } => {
            let e = QuadOver::new(field, d)?;
            if e.is_split() {
                return Err(Error::NotANonsquare);
            }
            e.elem(delta.unit.clone(), delta.exps.clone())?;
            for z in phi {
                e.elem(z.unit.clone(), z.exps.clone())?;
            }
            if e.trace(delta)?.is_some() {
                return Err(Error::DeltaNotTraceZero);
            }
            let form = e.transfer_pure(delta, phi)?;
            let desc = if field.is_arith_complete() {
                Some(ProductDesc::Corestriction {
                    field: field.clone(),
                    d: e.d(),
                    mu: phi.iter().map(|z| z.unit.clone()).collect(),
                })
            } else {
                None
            };
            Ok(RostOutput { form, desc })
        }
    }
}

/// b₆ of the algebra behind a Rost description, from the closed forms.
pub fn b6_of_spec(spec: &RostSpec) -> Result<Class> {
    match spec {
        RostSpec::TwoPfister { field, phi1, phi2, .. } => {
            let a = e_n(phi1.len(), &QuadraticForm::pfister(field, phi1)?)?;
            let b = e_n(phi2.len(), &QuadraticForm::pfister(field, phi2)?)?;
            a.cup(&b)
        }
        RostSpec::Transfer { field, d, phi, .. } => norm_symbol(&QuadOver::new(field, d)?, phi),
    }
}

/// Albert form of a descriptor, read off the parameters: n₁′ ⊥ ⟨−1⟩n₂′ or T_{E/k}(⟨−√d⟩n′).
pub fn albert_form(desc: &ProductDesc) -> Result<QuadraticForm> {
    match desc {
        ProductDesc::Decomposable { field, mu1, mu2 } => {
            let p1 = QuadraticForm::pfister(field, mu1)?.pure_part()?;
            let p2 = QuadraticForm::pfister(field, mu2)?.pure_part()?;
            p1.sum(&p2.neg())
        }
        ProductDesc::Corestriction { field, d, mu } => {
            let e = QuadOver::new(field, d)?;
            let z = mu.iter().map(|m| e.unit(m.clone())).collect::<Result<Vec<_>>>()?;
            let delta = e.neg(&e.sqrt_d())?;
            e.transfer_pure(&delta, &z)
        }
    }
}

/// N_{E/k}(n_C) for a descriptor (n₁·n₂ in the decomposable case).
pub fn norm_transfer(desc: &ProductDesc) -> Result<QuadraticForm> {
    match desc {
        ProductDesc::Decomposable { field, mu1, mu2 } => {
            QuadraticForm::pfister(field, mu1)?.tensor(&QuadraticForm::pfister(field, mu2)?)
        }
        ProductDesc::Corestriction { mu, .. } => {
            let e = desc.quad_field()?;
            qforms::transfer_mult(&QuadraticForm::pfister(&e, mu)?)
        }
    }
}

fn centroid_norm(field: &FieldDesc, d: Option<&Scalar>) -> Result<QuadraticForm> {
    match d {
        None => Ok(QuadraticForm::hyperbolic(field, 1)),
        Some(d) => QuadraticForm::pfister(field, std::slice::from_ref(d)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BInvariants {
    pub b1: Class,
    pub b3: Class,
    pub b6: Class,
}

pub fn b_invariants(desc: &ProductDesc) -> Result<BInvariants> {
    with_field!(desc.field(), f => {
        let a = build_product(&f, desc)?;
        b_invariants_of(&a, desc)
    })
}

/// The b-invariants of an algebra built from `desc`, with b₆ computed twice.
pub fn b_invariants_of<F: Field>(a: &Algebra<F>, desc: &ProductDesc) -> Result<BInvariants> {
    if desc.dims() != (8, 8) {
        return Err(Error::InvalidDims(desc.dims()));
    }
    let f = &a.field;
    let k = f.descriptor();
    let cen = malcev_centroid(a)?;
    let cd = match &cen.kind {
        CentroidKind::SplitEtale { .. } => None,
        CentroidKind::FieldEtale { d } => Some(f.to_scalar(d)),
    };
    let b1 = match &cd {
        None => Class::zero(&k, 1),
        Some(d) => Class::of_scalar(&k, d)?,
    };
    let desc_d = match desc {
        ProductDesc::Decomposable { .. } => None,
        ProductDesc::Corestriction { d, .. } => Some(d.clone()),
    };
    let b1_desc = match &desc_d {
        None => Class::zero(&k, 1),
        Some(d) => Class::of_scalar(&k, d)?,
    };
    if b1 != b1_desc {
        return Err(Error::Internal("centroid class differs from the descriptor's quadratic extension".into()));
    }
    let q = albert_data(a)?.form()?;
    let b3 = e_n(3, &q)?;

    let n_e = centroid_norm(&k, desc_d.as_ref())?;
    let s = centroid_norm(&k, cd.as_ref())?;
    let norm = norm_transfer(desc)?;
    let b6 = e_n(6, &norm.sum(&n_e.multiple(-4))?)?;
    let t128 = structurable::trace_form(a)?.scale(&k.from_i64(128))?;
    let b6_trace = e_n(6, &t128.sum(&s.multiple(-4))?)?;
    if b6 != b6_trace || !t128.witt_eq(&norm)? {
        return Err(Error::Internal("b6 via the norm transfer and via the trace form disagree".into()));
    }
    Ok(BInvariants { b1, b3, b6 })
}

fn check_h(field: &FieldDesc, h: &Class) -> Result<()> {
    if h.field != *field {
        return Err(Error::MixedFields);
    }
    if !h.in_j(1) {
        return Err(Error::HNotInJ1);
    }
    Ok(())
}

/// h·(q(v))·x with v the first basis vector of the diagonal form.
fn rost_twist(q: &QuadraticForm, h: &Class, x: &Class) -> Result<Class> {
    check_h(&q.field, h)?;
    let v = q.entries.first().ok_or(Error::DimTooSmall)?;
    h.cup(&Class::of_scalar(&q.field, v)?)?.cup(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AInvariants {
    pub a3: Class,
    pub a6: Class,
    pub ah: Option<Class>,
}

pub fn a_invariants(q: &QuadraticForm, h: Option<&Class>) -> Result<AInvariants> {
    if q.dim() != 14 || !q.in_ideal(3)? {
        return Err(Error::NotI14);
    }
    let a3 = e_n(3, q)?;
    let a6 = e_n(6, &qforms::pn_form(3, q)?)?;
    let ah = h.map(|h| rost_twist(q, h, &a6)).transpose()?;
    Ok(AInvariants { a3, a6, ah })
}

/// a₇ = a¹, defined when (−1) = 0.
pub fn a7(q: &QuadraticForm) -> Result<Class> {
    let one = Class::one(&q.field);
    Ok(a_invariants(q, Some(&one))?.ah.expect("h given"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZInvariants {
    pub z3: Class,
    pub z5: Class,
    pub zh: Option<Class>,
    /// The factorization q ≅ ⟨⟨c⟩⟩r used for z₅.
    pub c: Scalar,
    pub r: QuadraticForm,
}

fn check_i12(q: &QuadraticForm) -> Result<()> {
    if q.dim() != 12 || !q.in_ideal(3)? {
        return Err(Error::NotI12);
    }
    Ok(())
}

pub fn z_invariants(q: &QuadraticForm, h: Option<&Class>) -> Result<ZInvariants> {
    check_i12(q)?;
    let (c, r) = i12_parameterize(q)?;
    let z3 = e_n(3, q)?;
    let z5 = Class::of_scalar(&q.field, &c)?.cup(&e_n(4, &qforms::pn_form(2, &r)?)?)?;
    let zh = h.map(|h| rost_twist(q, h, &z5)).transpose()?;
    Ok(ZInvariants { z3, z5, zh, c, r })
}

/// Pairs the entries of `entries` as (a, −c·a) up to squares; returns the first member of each pair.
fn pair_off(field: &FieldDesc, entries: &[Scalar], c: &Scalar) -> Result<Option<(Vec<Scalar>, Vec<Scalar>)>> {
    let mc = field.neg(c)?;
    let mut open: Vec<(Scalar, Scalar)> = Vec::new();
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    for a in entries {
        let want = field.square_class(&field.mul(a, &mc)?)?;
        if let Some(pos) = open.iter().position(|(cls, _)| *cls == want) {
            let (_, b) = open.remove(pos);
            firsts.push(b);
            seconds.push(a.clone());
        } else {
            open.push((field.square_class(a)?, a.clone()));
        }
    }
    Ok(open.is_empty().then_some((firsts, seconds)))
}

fn try_factor(q: &QuadraticForm, entries: &[Scalar], c: &Scalar) -> Result<Option<QuadraticForm>> {
    let f = &q.field;
    let Some((firsts, seconds)) = pair_off(f, entries, c)? else { return Ok(None) };
    let cpf = QuadraticForm::pfister(f, std::slice::from_ref(c))?;
    // swapping one pair multiplies the discriminant by −c
    for flip in [None, Some(0usize)] {
        let mut r = firsts.clone();
        if let Some(i) = flip {
            r[i] = seconds[i].clone();
        }
        let r = QuadraticForm::diagonal(f.clone(), r)?;
        if r.in_ideal(2)? && cpf.tensor(&r)?.isometric(q)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Finds c and r ∈ I²₆ with ⟨⟨c⟩⟩r ≅ q by pairing diagonal entries.
pub fn i12_parameterize(q: &QuadraticForm) -> Result<(Scalar, QuadraticForm)> {
    check_i12(q)?;
    let f = &q.field;
    if q.is_hyperbolic()? {
        return Ok((f.one(), QuadraticForm::hyperbolic(f, 3)));
    }
    let mut reps = vec![q.entries.clone()];
    let w = q.witt_decompose()?;
    let mut seen = Vec::new();
    for entries in reps.drain(..).chain(std::iter::once(w.kernel.entries.clone())) {
        let n = entries.len();
        let pairs = (1..n).map(|j| (0, j)).chain((1..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
        for (i, j) in pairs {
            let c = f.square_class(&f.neg(&f.div(&entries[j], &entries[i])?)?)?;
            if seen.contains(&c) && entries.len() == q.dim() {
                continue;
            }
            seen.push(c.clone());
            let mut full = entries.clone();
            // hyperbolic planes of the Witt decomposition as ⟨⟨c⟩⟩⟨1,−1⟩ = ⟨1,−c,−1,c⟩
            let planes = (q.dim() - n) / 2;
            if planes % 2 == 1 {
                continue;
            }
            for _ in 0..planes / 2 {
                full.extend([f.one(), f.neg(&c)?, f.from_i64(-1), c.clone()]);
            }
            if let Some(r) = try_factor(q, &full, &c)? {
                return Ok((c, r));
            }
        }
    }
    Err(Error::ParameterizationNotFound)
}

/// Serre's bʰ(q) = h·(a₁)·…·(a_{n−1}) on a diagonalization ⟨a₁,…,a_n⟩.
pub fn serre_bh(q: &QuadraticForm, h: &Class) -> Result<Class> {
    let n = q.dim();
    if n <= 2 || n % 2 == 1 || !q.in_ideal(2)? {
        return Err(Error::NotI2);
    }
    check_h(&q.field, h)?;
    let mut c = h.clone();
    for a in &q.entries[..n - 1] {
        c = c.cup(&Class::of_scalar(&q.field, a)?)?;
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub enum DivisionInput {
    Algebra(ProductDesc),
    Form(RostSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Nonzero skew element s of A with Q(s) = 0, so L_s is not invertible.
    IsotropicSkew(Vec<Scalar>),
    /// Isotropic vector of the diagonal Albert form of a form-level input.
    IsotropicVector(Vec<Scalar>),
    /// The center is k[z] with z² − αz − β = 0 and α² + 4β a square.
    SplitCenter(Scalar),
    /// Anisotropic Albert form; `center_d` is the nonsquare discriminant of a quadratic center.
    Anisotropic { center_d: Option<Scalar> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisionVerdict {
    pub division: bool,
    pub certificate: Certificate,
}

pub fn is_division(input: &DivisionInput) -> Result<DivisionVerdict> {
    match input {
        DivisionInput::Algebra(desc) => with_field!(desc.field(), f => {
            let a = build_product(&f, desc)?;
            division_of(&a, desc)
        }),
        DivisionInput::Form(spec) => {
            let q = rost_construct(spec)?.form;
            Ok(match q.isotropic_vector()? {
                Some(v) => DivisionVerdict { division: false, certificate: Certificate::IsotropicVector(v) },
                None => DivisionVerdict { division: true, certificate: Certificate::Anisotropic { center_d: None } },
            })
        }
    }
}

/// Discriminant of a two-dimensional center, or `None` when Z(A) = k.
fn center_disc<F: Field>(a: &Algebra<F>) -> Result<Option<F::Elem>> {
    let f = &a.field;
    let z = a.center();
    match z.len() {
        1 => Ok(None),
        2 => {
            let x = z.iter().find(|v| a.as_scalar(v).is_none()).ok_or_else(|| Error::Internal("center".into()))?;
            let sol = linalg::coords_in_basis(f, &[x.clone(), a.unit.clone()], &a.mul(x, x))
                .ok_or_else(|| Error::Internal("center is not closed".into()))?;
            Ok(Some(f.add(&f.mul(&sol[0], &sol[0]), &f.mul(&f.from_i64(4), &sol[1]))))
        }
        n => Err(Error::Invalid(format!("division test needs a center of dimension at most 2, found {n}"))),
    }
}

pub fn division_of<F: Field>(a: &Algebra<F>, desc: &ProductDesc) -> Result<DivisionVerdict> {
    let f = &a.field;
    let (m1, m2) = desc.dims();
    let disc = if m1.min(m2) <= 2 { center_disc(a)? } else { None };
    if let Some(dz) = &disc {
        if f.sqrt(dz).is_some() {
            return Ok(DivisionVerdict { division: false, certificate: Certificate::SplitCenter(f.to_scalar(dz)) });
        }
    }
    let ad = albert_data(a)?;
    let (diag, basis) = qforms::diagonalize(f, &ad.gram).ok_or(Error::DegenerateGram)?;
    let k = f.descriptor();
    let form = QuadraticForm::diagonal(k.clone(), diag.iter().map(|x| f.to_scalar(x)).collect())?;
    let witness = form.isotropic_vector()?;
    // Cor (cor:cor) cross-check: isotropy of the transfer form from the parameters
    if let ProductDesc::Corestriction { .. } = desc {
        if albert_form(desc)?.is_isotropic()? != witness.is_some() {
            return Err(Error::Internal("transfer-form isotropy disagrees with the Albert form".into()));
        }
    }
    match witness {
        Some(v) => {
            let mut c = vec![f.zero(); ad.dim()];
            for (vi, b) in v.iter().zip(&basis) {
                let vi = f.from_scalar(vi)?;
                c = linalg::vec_add(f, &c, &linalg::vec_scale(f, &vi, b));
            }
            let s = ad.skew.combine(f, &c);
            if linalg::is_zero_vec(f, &s) || !f.is_zero(&ad.q(&s)?) {
                return Err(Error::Internal("isotropic skew witness failed verification".into()));
            }
            Ok(DivisionVerdict { division: false, certificate: Certificate::IsotropicSkew(structurable::elem_to_scalars(f, &s)) })
        }
        None => Ok(DivisionVerdict {
            division: true,
            certificate: Certificate::Anisotropic { center_d: disc.map(|d| f.to_scalar(&d)) },
        }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Isotopy {
    /// Q₂ ≅ ⟨c⟩Q₁.
    Isotopic(Scalar),
    NotIsotopic,
    Undecided,
}

pub fn is_isotopic(d1: &ProductDesc, d2: &ProductDesc) -> Result<Isotopy> {
    if d1.field() != d2.field() {
        return Err(Error::MixedFields);
    }
    if d1.dims() != d2.dims() {
        return Ok(Isotopy::NotIsotopic);
    }
    let q1 = albert_form(d1)?;
    let q2 = albert_form(d2)?;
    Ok(match q1.similar(&q2)? {
        Similarity::Similar(c) => Isotopy::Isotopic(c),
        Similarity::NotSimilar => Isotopy::NotIsotopic,
        Similarity::Undecided => Isotopy::Undecided,
    })
}

/// Transfer T_{E/k}(⟨a⟩) along the trace, over a quadratic layer (cross-check of the closed form).
pub fn transfer_trace(q: &QuadraticForm) -> Result<QuadraticForm> {
    qforms::transfer_additive(q, &Functional::Trace)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub id: String,
    pub invariants: BTreeMap<String, Class>,
    pub division: Option<bool>,
    pub decomposable: Option<bool>,
    pub albert_form: Option<QuadraticForm>,
}

pub fn algebra_report(id: &str, desc: &ProductDesc) -> Result<InvariantReport> {
    with_field!(desc.field(), f => {
        let a = build_product(&f, desc)?;
        let mut invariants = BTreeMap::new();
        let mut decomposable = None;
        if desc.dims() == (8, 8) {
            let b = b_invariants_of(&a, desc)?;
            decomposable = Some(b.b1.is_zero());
            invariants.insert("b1".to_string(), b.b1);
            invariants.insert("b3".to_string(), b.b3);
            invariants.insert("b6".to_string(), b.b6);
        }
        let division = division_of(&a, desc)?.division;
        Ok(InvariantReport {
            id: id.to_string(),
            invariants,
            division: Some(division),
            decomposable,
            albert_form: Some(albert_data(&a)?.form()?),
        })
    })
}

/// Invariants of a bare form: a₃, a₆ (and a₇ when (−1) = 0) in dimension 14, z₃, z₅ in dimension 12.
pub fn form_report(id: &str, q: &QuadraticForm) -> Result<InvariantReport> {
    let mut invariants = BTreeMap::new();
    match q.dim() {
        14 => {
            let one = Class::one(&q.field);
            let h = one.in_j(1).then_some(&one);
            let a = a_invariants(q, h)?;
            invariants.insert("a3".to_string(), a.a3);
            invariants.insert("a6".to_string(), a.a6);
            if let Some(x) = a.ah {
                invariants.insert("a7".to_string(), x);
            }
        }
        12 => {
            let z = z_invariants(q, None)?;
            invariants.insert("z3".to_string(), z.z3);
            invariants.insert("z5".to_string(), z.z5);
        }
        _ => return Err(Error::Invalid("form invariants need dimension 12 or 14".into())),
    }
    Ok(InvariantReport {
        id: id.to_string(),
        invariants,
        division: Some(!q.is_isotropic()?),
        decomposable: None,
        albert_form: Some(q.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::symbol;

    fn q(n: i64) -> Scalar {
        Scalar::q(n)
    }

    fn reals(mu1: i64, mu2: i64) -> ProductDesc {
        ProductDesc::Decomposable { field: FieldDesc::Q, mu1: vec![q(mu1); 3], mu2: vec![q(mu2); 3] }
    }

    #[test]
    fn closed_transfer_matches_gram_transfer() {
        let e = QuadOver::new(&FieldDesc::Q, &q(-1)).unwrap();
        let ef = e.layer.clone();
        for (x, y) in [(1, 1), (0, 3), (2, -5), (3, 0)] {
            let a = Scalar::Quad(Box::new(q(x)), Box::new(q(y)));
            let closed = e.transfer_one(&e.unit(a.clone()).unwrap()).unwrap();
            let gram = transfer_trace(&QuadraticForm::diagonal(ef.clone(), vec![a]).unwrap()).unwrap();
            assert!(closed.isometric(&gram).unwrap(), "{x} {y}");
        }
    }

    #[test]
    fn albert_form_matches_algebra() {
        let f = crate::fields::PrimeField::new(5).unwrap();
        let fd = FieldDesc::Fp(5);
        let e = FieldDesc::quad(fd.clone(), Scalar::Fp(2)).unwrap();
        let mu = vec![
            Scalar::Quad(Box::new(Scalar::Fp(1)), Box::new(Scalar::Fp(1))),
            Scalar::Quad(Box::new(Scalar::Fp(3)), Box::new(Scalar::Fp(0))),
        ];
        for z in &mu {
            e.check(z).unwrap();
        }
        let desc = ProductDesc::Corestriction { field: fd, d: Scalar::Fp(2), mu };
        let a = build_product(&f, &desc).unwrap();
        let from_alg = albert_data(&a).unwrap().form().unwrap();
        assert!(from_alg.isometric(&albert_form(&desc).unwrap()).unwrap());
    }

    #[test]
    fn reals_table() {
        let f = FieldDesc::Q;
        let b = b_invariants(&reals(1, 1)).unwrap();
        assert!(b.b1.is_zero() && b.b3.is_zero() && b.b6.is_zero());
        let b = b_invariants(&reals(1, -1)).unwrap();
        assert!(b.b1.is_zero() && b.b6.is_zero());
        assert_eq!(b.b3, symbol(&f, &vec![q(-1); 3]).unwrap());
        let b = b_invariants(&reals(-1, -1)).unwrap();
        assert!(b.b1.is_zero() && b.b3.is_zero());
        assert_eq!(b.b6, symbol(&f, &vec![q(-1); 6]).unwrap());
        let cor = ProductDesc::Corestriction {
            field: f.clone(),
            d: q(-1),
            mu: vec![Scalar::Quad(Box::new(q(1)), Box::new(q(0))); 3],
        };
        let b = b_invariants(&cor).unwrap();
        assert_eq!(b.b1, Class::minus_one(&f));
        assert!(b.b3.is_zero() && b.b6.is_zero());
    }

    #[test]
    fn i12_recovers_factorization() {
        let f = FieldDesc::Q;
        let r = QuadraticForm::ints(&f, &[-6, -10, 15, 7, 11, -77]);
        assert!(r.in_ideal(2).unwrap());
        let qf = QuadraticForm::pfister(&f, &[q(3)]).unwrap().tensor(&r).unwrap();
        let (c, r2) = i12_parameterize(&qf).unwrap();
        let back = QuadraticForm::pfister(&f, &[c]).unwrap().tensor(&r2).unwrap();
        assert!(back.isometric(&qf).unwrap());
        let (c, r) = i12_parameterize(&QuadraticForm::hyperbolic(&f, 6)).unwrap();
        assert_eq!(c, q(1));
        assert!(r.is_hyperbolic().unwrap());
    }

    #[test]
    fn errors() {
        let f = FieldDesc::Q;
        assert_eq!(a_invariants(&QuadraticForm::ints(&f, &[1, 1]), None), Err(Error::NotI14));
        assert_eq!(i12_parameterize(&QuadraticForm::ints(&f, &[1; 12])).unwrap_err(), Error::NotI12);
        let h = QuadraticForm::hyperbolic(&f, 7);
        assert_eq!(a_invariants(&h, Some(&Class::minus_one(&f))), Err(Error::HNotInJ1));
        let e = QuadOver::new(&f, &q(-1)).unwrap();
        let spec = RostSpec::Transfer { field: f, d: q(-1), delta: e.unit(Scalar::Quad(Box::new(q(1)), Box::new(q(1)))).unwrap(), phi: vec![] };
        assert_eq!(rost_construct(&spec).unwrap_err(), Error::DeltaNotTraceZero);
    }
}
