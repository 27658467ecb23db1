// SPDX-License-Identifier: Apache-2.0
//! The acceptance suite, shared by the `acceptance` test target and `bioct selftest`.

use crate::algebras::{build_product, corestriction, decomposable, Algebra, ProductDesc};
use crate::cohomology::{e_n, stiefel_whitney, symbol, Class};
use crate::error::{Error, Result};
use crate::fields::{Field, FieldDesc, PrimeField, Rationals, Scalar};
use crate::hilbert::{self, Place};
use crate::invariants::*;
use crate::linalg;
use crate::qforms::{self, QuadraticForm};
use crate::structurable::{self as st, albert_data};
use crate::tkk::{composition_der_dim, graded_profile};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct Config {
    pub seed: u64,
    /// Overrides the per-criterion sample counts.
    pub trials: Option<usize>,
}


impl Config {
    fn n(&self, default: usize) -> usize {
        self.trials.unwrap_or(default).max(1)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "structurable identity"),
    (2, "TKK graded profiles"),
    (3, "matrix factorization of the octic norm"),
    (4, "Albert-form identities"),
    (5, "trace form and transfers"),
    (6, "real bi-octonion table"),
    (7, "closed-form invariants at generic points"),
    (8, "finite-difference residue laws"),
    (9, "division and isotopy logic"),
    (10, "Witt and cohomology self-consistency"),
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Literal statements that fail while a corrected form holds.
    pub deviations: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.deviations.is_empty()
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} criterion {:>2}: {} ({} checks, {:.1}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks,
            self.seconds
        );
        for f in self.failures.iter().take(5) {
            s.push_str(&format!("\n    failure: {f}"));
        }
        if self.failures.len() > 5 {
            s.push_str(&format!("\n    ... {} more failures", self.failures.len() - 5));
        }
        for d in &self.deviations {
            s.push_str(&format!("\n    deviation: {d}"));
        }
        for n in &self.notes {
            s.push_str(&format!("\n    note: {n}"));
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    deviations: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn ok<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    /// Counts a batch of `n` checks of which `bad` failed.
    fn batch(&mut self, n: usize, bad: usize, what: &str) {
        self.checks += n;
        if bad > 0 {
            self.failures.push(format!("{what}: {bad} of {n}"));
        }
    }

    fn deviation(&mut self, literal_ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !literal_ok {
            let w = what();
            if !self.deviations.contains(&w) {
                self.deviations.push(w);
            }
        }
    }
}

pub fn run_criterion(id: u8, cfg: &Config) -> CriterionResult {
    let start = Instant::now();
    let mut t = Tally::default();
    let r = match id {
        1 => c1(cfg, &mut t),
        2 => c2(&mut t),
        3 => c3(cfg, &mut t),
        4 => c4(cfg, &mut t),
        5 => c5(cfg, &mut t),
        6 => c6(&mut t),
        7 => c7(cfg, &mut t),
        8 => c8(cfg, &mut t),
        9 => c9(cfg, &mut t),
        10 => c10(cfg, &mut t),
        _ => Err(Error::Invalid(format!("no criterion {id}"))),
    };
    if let Err(e) = r {
        t.failures.push(format!("aborted: {e}"));
    }
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    CriterionResult {
        id,
        title,
        checks: t.checks,
        failures: t.failures,
        deviations: t.deviations,
        notes: t.notes,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(cfg: &Config) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, cfg)).collect()
}

fn f5() -> PrimeField {
    PrimeField::new(5).expect("5 is prime")
}

fn qi(n: i64) -> Scalar {
    Scalar::q(n)
}

fn qs(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| Scalar::q(n)).collect()
}

fn quad(k0: &FieldDesc, a: i64, b: i64) -> Scalar {
    Scalar::Quad(Box::new(k0.from_i64(a)), Box::new(k0.from_i64(b)))
}

fn tower(base: FieldDesc) -> Result<FieldDesc> {
    FieldDesc::laurent(base, (1..=6).map(|i| format!("t{i}")).collect())
}

fn base_of(k: &FieldDesc) -> FieldDesc {
    match k {
        FieldDesc::Laurent(b, _) => (**b).clone(),
        other => other.clone(),
    }
}

fn rand_exps(rng: &mut ChaCha8Rng) -> Vec<i64> {
    (0..6).map(|_| if rng.gen_bool(0.35) { rng.gen_range(-1..=2) } else { 0 }).collect()
}

/// A random unit monomial u·t^e of a tower.
fn rand_mono(k: &FieldDesc, rng: &mut ChaCha8Rng) -> Result<Scalar> {
    let b = base_of(k);
    let units: &[i64] = if b == FieldDesc::Q { &[1, -1, 2, -2, 3, -3, 5, -6, 7] } else { &[1, 2, 3, 4] };
    let c = b.from_i64(units[rng.gen_range(0..units.len())]);
    k.mono(c, rand_exps(rng))
}

fn mm(k: &FieldDesc) -> Result<Class> {
    Class::minus_one(k).cup(&Class::minus_one(k))
}

// 1. [V_{x,y},V_{z,w}] = V_{{x,y,z},w} − V_{z,{y,x,w}}

fn residual_batch<F: Field>(a: &Algebra<F>, rng: &mut ChaCha8Rng, n: usize, height: i64) -> usize {
    let quads: Vec<Vec<Vec<F::Elem>>> = (0..n).map(|_| (0..4).map(|_| a.random(rng, height)).collect()).collect();
    quads
        .par_iter()
        .filter(|v| !linalg::is_zero_mat(&a.field, &st::structurable_residual(a, &v[0], &v[1], &v[2], &v[3])))
        .count()
}

fn c1(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(1);
    let fp = f5();
    let a = decomposable(&fp, &[1, 1, 1], &[1, 1, 1])?;
    let n = cfg.n(1000);
    t.batch(n, residual_batch(&a, &mut rng, n, 5), "nonzero residual over F_5");
    let q = Rationals;
    let one = q.one();
    let a = decomposable(&q, &[one.clone(), one.clone(), one.clone()], &[one.clone(), one.clone(), one])?;
    let n = cfg.n(100);
    t.batch(n, residual_batch(&a, &mut rng, n, 3), "nonzero residual over Q");
    Ok(())
}

// 2. graded profiles of K(A,−)

fn c2(t: &mut Tally) -> Result<()> {
    let cases: [((usize, usize), Option<[usize; 5]>, usize, &str); 6] = [
        ((3, 3), Some([14, 64, 92, 64, 14]), 248, "E8"),
        ((3, 0), Some([7, 8, 22, 8, 7]), 52, "F4"),
        ((3, 2), None, 133, "E7"),
        ((3, 1), None, 78, "E6"),
        ((2, 2), None, 66, "D6"),
        ((1, 2), None, 35, "A5"),
    ];
    for p in [5u64, 7] {
        let f = PrimeField::new(p)?;
        for ((n1, n2), dims, total, label) in cases {
            let a = decomposable(&f, &vec![1; n1], &vec![1; n2])?;
            let (m1, m2) = (1usize << n1, 1usize << n2);
            let Some(prof) = t.ok(graded_profile(&a), &format!("profile ({m1},{m2}) over F_{p}")) else { continue };
            let der = composition_der_dim(m1).unwrap_or(0) + composition_der_dim(m2).unwrap_or(0);
            let formula = 2 * (m1 + m2 - 2) + 3 * m1 * m2 + der;
            t.check(prof.total == total && formula == total, || format!("({m1},{m2}) over F_{p}: total {} formula {formula}", prof.total));
            t.check(prof.type_label == label, || format!("({m1},{m2}): type {}", prof.type_label));
            if let Some(d) = dims {
                t.check(prof.dims == d, || format!("({m1},{m2}) over F_{p}: dims {:?}", prof.dims));
            }
        }
    }
    t.notes.push("(4,4) is reported as D6 with the flag \"table-entry ambiguous\"".into());
    Ok(())
}

// 3. M_x² = N_A(x)·id

fn factorization_family<F: Field>(t: &mut Tally, a: &Algebra<F>, rng: &mut ChaCha8Rng, n: usize, height: i64, name: &str) -> Result<()> {
    let f = &a.field;
    let ad = albert_data(a)?;
    t.check(st::norm(a, &ad, &a.unit)? == f.one(), || format!("{name}: N_A(1) ≠ 1"));
    let s1 = ad.basepoint().ok_or(Error::BadBasepoint)?;
    let s2 = ad.skew.basis.iter().rev().find(|b| !f.is_zero(&ad.q(b).unwrap_or_else(|_| f.zero())) && **b != s1).cloned();
    let s2 = s2.ok_or_else(|| Error::Internal("no second basepoint".into()))?;
    let xs: Vec<Vec<F::Elem>> = (0..n).map(|_| a.random(rng, height)).collect();
    let bad: Vec<String> = xs
        .par_iter()
        .filter_map(|x| {
            let check = || -> Result<bool> {
                let n1 = st::octic_norm(a, &ad, x, &s1)?;
                let n2 = st::octic_norm(a, &ad, x, &s2)?;
                let m = st::matrix_factorization(a, &ad, x)?;
                let scale = f.mul(&n1, &ad.multiplier());
                Ok(n1 == n2 && linalg::mat_mul(f, &m, &m) == linalg::scalar_mat(f, ad.dim(), &scale))
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some("identity fails".to_string()),
                Err(e) => Some(e.to_string()),
            }
        })
        .collect();
    t.batch(n, bad.len(), &format!("{name}: M_x² = N_A(x)·m·id or basepoint independence"));
    Ok(())
}

fn c3(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(3);
    let fp = f5();
    let n = cfg.n(200);
    factorization_family(t, &decomposable(&fp, &[1, 2, 3], &[2, 4, 1])?, &mut rng, n, 5, "decomposable over F_5")?;
    factorization_family(t, &corestriction(&fp, &2, &[(1, 1), (3, 0), (2, 4)])?, &mut rng, n, 5, "corestriction over F_5")?;
    let q = Rationals;
    let r = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    let n = cfg.n(20);
    factorization_family(t, &decomposable(&q, &r(&[-1, -1, -1]), &r(&[1, 2, 3]))?, &mut rng, n, 2, "decomposable over Q")?;
    let mu: Vec<_> = [(1, 1), (-1, 0), (2, 1)].iter().map(|&(x, y)| (q.from_i64(x), q.from_i64(y))).collect();
    factorization_family(t, &corestriction(&q, &q.from_i64(-1), &mu)?, &mut rng, n, 2, "corestriction over Q")?;
    t.notes.push("m is the ♮ multiplier: 1 for decomposable algebras, d for corestrictions (see notes)".into());
    Ok(())
}

// 4. L_sL_{s♮} = −Q(s)id, ŝ = Q(s)⁻¹s♮, Q(sts) = Q(s)²Q(t), θ-relations

fn albert_family<F: Field>(t: &mut Tally, a: &Algebra<F>, rng: &mut ChaCha8Rng, n: usize, name: &str) -> Result<()> {
    let f = &a.field;
    let ad = albert_data(a)?;
    let samples: Vec<[Vec<F::Elem>; 3]> = (0..n).map(|_| std::array::from_fn(|_| ad.random_skew(rng, 3))).collect();
    let results: Vec<Result<[bool; 4]>> = samples
        .par_iter()
        .map(|[r, s, u]| {
            let q = ad.q(s)?;
            let inv = st::conjugate_inverse(a, s)?;
            let inv_ok = if f.is_zero(&q) {
                inv.is_none()
            } else {
                let qi = f.inv(&q).ok_or(Error::DivisionByZero)?;
                inv == Some(a.scale(&qi, &ad.natural_of(s)?))
            };
            Ok([
                st::check_ls_identity(a, &ad, s)?,
                inv_ok,
                st::check_composition(a, &ad, s, u)?,
                st::check_theta(a, &ad, r, s, u)?,
            ])
        })
        .collect();
    let names = ["L_sL_{s♮} = −Q(s)id", "ŝ = Q(s)⁻¹s♮", "Q(sts)·m = Q(s)²Q(t)", "θ-relations"];
    for (i, what) in names.iter().enumerate() {
        let bad = results.iter().filter(|r| !matches!(r, Ok(v) if v[i])).count();
        t.batch(n, bad, &format!("{name}: {what}"));
    }
    Ok(())
}

fn c4(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(4);
    let fp = f5();
    let n = cfg.n(200);
    albert_family(t, &decomposable(&fp, &[1, 1, 1], &[2, 3, 1])?, &mut rng, n, "decomposable")?;
    albert_family(t, &corestriction(&fp, &2, &[(1, 1), (3, 0), (2, 4)])?, &mut rng, n, "corestriction")?;
    t.notes.push("the composition identity carries the ♮ multiplier d for corestrictions (see notes)".into());
    Ok(())
}

// 5. trace form vs norm transfer, the Rost–Wittkop norm formula and the λ² identity

fn c5(cfg: &Config, t: &mut Tally) -> Result<()> {
    let q = FieldDesc::Q;
    let el = |a: i64, b: i64| quad(&q, a, b);
    let descs = vec![
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[1, 2, 3]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, 3]), mu2: qs(&[2, -3, 5]) },
        ProductDesc::Corestriction { field: q.clone(), d: qi(-1), mu: vec![el(1, 0); 3] },
        ProductDesc::Corestriction { field: q.clone(), d: qi(2), mu: vec![el(-1, 0), el(3, 1), el(1, 1)] },
        ProductDesc::Corestriction { field: q.clone(), d: qi(-3), mu: vec![el(2, 1), el(1, 0), el(5, 0)] },
    ];
    let lemma: Vec<Result<bool>> = descs
        .par_iter()
        .map(|d| {
            let a = build_product(&Rationals, d)?;
            st::trace_form(&a)?.scale(&qi(128))?.witt_eq(&norm_transfer(d)?)
        })
        .collect();
    for (d, r) in descs.iter().zip(lemma) {
        let ok = t.ok(r, "trace form vs norm transfer");
        t.check(ok == Some(true), || format!("⟨128⟩T_A ≠ N(n) for {d:?}"));
    }

    let mut rng = cfg.rng(5);
    let ds = [-1i64, 2, -3, 5, -5, 6, -7];
    let (mut zero_trace, n) = (0, cfg.n(50));
    let mut inputs = Vec::new();
    for _ in 0..n {
        let d = ds[rng.gen_range(0..ds.len())];
        let len = [1, 2, 2, 3][rng.gen_range(0..4)];
        let z: Vec<(i64, i64)> = (0..len)
            .map(|_| {
                let a = if rng.gen_bool(0.25) { 0 } else { rng.gen_range(-3..=3) };
                let b = if a == 0 { rng.gen_range(1..=3) } else { rng.gen_range(-3..=3) };
                (a, b)
            })
            .collect();
        zero_trace += usize::from(z.iter().any(|p| p.0 == 0));
        inputs.push((d, z));
    }
    let results: Vec<Result<bool>> = inputs
        .par_iter()
        .map(|(d, z)| {
            let e = QuadOver::new(&q, &qi(*d))?;
            let zs = z.iter().map(|&(a, b)| e.unit(quad(&q, a, b))).collect::<Result<Vec<_>>>()?;
            let closed = norm_closed_form(&e, &zs)?;
            let pf = QuadraticForm::pfister(&e.layer, &zs.iter().map(|x| x.unit.clone()).collect::<Vec<_>>())?;
            closed.witt_eq(&qforms::transfer_mult(&pf)?)
        })
        .collect();
    let bad = results.iter().filter(|r| !matches!(r, Ok(true))).count();
    t.batch(n, bad, "Rost–Wittkop closed form ≠ N_{E/k}");
    t.check(zero_trace > 0 || n < 10, || "no zero-trace input was drawn".into());

    let mut inputs = Vec::new();
    for _ in 0..cfg.n(50) {
        let d = ds[rng.gen_range(0..ds.len())];
        let len = rng.gen_range(1..=3);
        let x: Vec<(i64, i64)> = (0..len)
            .map(|_| loop {
                let p = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                if p != (0, 0) {
                    break p;
                }
            })
            .collect();
        inputs.push((d, x));
    }
    let results: Vec<Result<bool>> = inputs
        .par_iter()
        .map(|(d, x)| {
            let e = QuadOver::new(&q, &qi(*d))?;
            let xq = QuadraticForm::diagonal(e.layer.clone(), x.iter().map(|&(a, b)| quad(&q, a, b)).collect())?;
            let tx = transfer_trace(&xq)?;
            let lhs = tx.lambda2()?;
            let tl = if xq.dim() >= 2 { transfer_trace(&xq.lambda2()?)? } else { QuadraticForm::empty(&q) };
            let rhs = tl.sum(&qforms::transfer_mult(&xq)?.scale(&e.d())?)?;
            lhs.witt_eq(&rhs)
        })
        .collect();
    let bad = results.iter().filter(|r| !matches!(r, Ok(true))).count();
    t.batch(inputs.len(), bad, "λ²(T(x)) ≠ T(λ²x) + ⟨d⟩N(x)");
    Ok(())
}

// 6. the real table

fn c6(t: &mut Tally) -> Result<()> {
    let q = FieldDesc::Q;
    let dec = |a: i64, b: i64| ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[a; 3]), mu2: qs(&[b; 3]) };
    let rows = [
        ("O_split ⊗ O_split", dec(1, 1), [false, false, false]),
        ("O_split ⊗ O_div", dec(1, -1), [false, true, false]),
        ("O_div ⊗ O_div", dec(-1, -1), [false, false, true]),
        ("cor_{C/R}(O_C)", ProductDesc::Corestriction { field: q.clone(), d: qi(-1), mu: vec![quad(&q, 1, 0); 3] }, [true, false, false]),
    ];
    let m1 = qi(-1);
    let expect = [Class::minus_one(&q), symbol(&q, &vec![m1.clone(); 3])?, symbol(&q, &vec![m1; 6])?];
    for (name, d, pattern) in &rows {
        let Some(b) = t.ok(b_invariants(d), name) else { continue };
        for (i, c) in [&b.b1, &b.b3, &b.b6].into_iter().enumerate() {
            let ok = if pattern[i] { *c == expect[i] } else { c.is_zero() };
            t.check(ok, || format!("{name}: b{} = {c}", [1, 3, 6][i]));
        }
    }
    let mut class: Vec<usize> = (0..rows.len()).collect();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            match is_isotopic(&rows[i].1, &rows[j].1)? {
                Isotopy::Isotopic(_) => {
                    let (ci, cj) = (class[i], class[j]);
                    class.iter_mut().filter(|c| **c == cj).for_each(|c| *c = ci);
                }
                Isotopy::NotIsotopic => {}
                Isotopy::Undecided => t.check(false, || format!("isotopy of rows {i},{j} undecided")),
            }
        }
    }
    let mut distinct = class.clone();
    distinct.sort();
    distinct.dedup();
    t.check(distinct.len() == 2, || format!("{} isotopy classes", distinct.len()));
    t.check(class[0] == class[2] && class[0] == class[3] && class[1] != class[0], || format!("partition {class:?}"));
    if let Ok(s) = albert_form(&rows[1].1).and_then(|f| f.signature()) {
        t.check(s.abs() == 8, || format!("signature {s} for O_split ⊗ O_div"));
    }
    Ok(())
}

// 7. closed forms over towers

fn c7(_cfg: &Config, t: &mut Tally) -> Result<()> {
    for base in [FieldDesc::Fp(5), FieldDesc::Q] {
        let k = tower(base.clone())?;
        let v: Vec<Scalar> = (0..6).map(|i| k.var(i)).collect::<Result<_>>()?;
        let m1 = k.from_i64(-1);
        let name = if base == FieldDesc::Q { "Q-tower" } else { "F_5-tower" };
        if base == FieldDesc::Fp(5) {
            // −1 is a sum of two squares: a₆ = (x₁)(x₂)(x₃)(y₁)(y₂)(y₃)
            let spec = RostSpec::TwoPfister { field: k.clone(), c: k.one(), phi1: v[..3].to_vec(), phi2: v[3..].to_vec() };
            let a = a_invariants(&rost_construct(&spec)?.form, None)?;
            t.check(a.a6 == symbol(&k, &v)?, || format!("{name}: a6 at the generic two-Pfister point"));
            // transfer spec, generic up to the unramified representation
            let f5 = FieldDesc::Fp(5);
            let e = QuadOver::new(&k, &k.from_i64(2))?;
            let ex = |pairs: &[(usize, i64)]| {
                let mut e = vec![0; 6];
                pairs.iter().for_each(|&(i, x)| e[i] = x);
                e
            };
            let delta = e.elem(quad(&f5, 0, 1), ex(&[(5, 1)]))?;
            for z in [
                vec![e.elem(quad(&f5, 1, 1), ex(&[(0, 1)]))?, e.elem(quad(&f5, 2, 3), ex(&[(1, 1), (2, 1)]))?, e.elem(quad(&f5, 4, 1), ex(&[(3, 1), (4, -1)]))?],
                vec![e.elem(quad(&f5, 1, 1), ex(&[(0, 1)]))?, e.elem(quad(&f5, 0, 2), ex(&[(3, 1)]))?, e.elem(quad(&f5, 3, 1), ex(&[(2, 1)]))?],
            ] {
                let spec = RostSpec::Transfer { field: k.clone(), d: k.from_i64(2), delta: delta.clone(), phi: z.clone() };
                let a6 = a_invariants(&rost_construct(&spec)?.form, None)?.a6;
                let nd = e.norm(&delta)?;
                let mut slots = Vec::new();
                let mut zero = false;
                for zi in &z {
                    match e.trace(zi)? {
                        Some(tr) => slots.push(tr),
                        None => zero = true,
                    }
                    // −δ²N(z) = N(δ)N(z) since δ̄ = −δ
                    slots.push(k.mul(&nd, &e.norm(zi)?)?);
                }
                let expect = if zero { Class::zero(&k, 6) } else { symbol(&k, &slots)? };
                t.check(a6 == expect, || format!("{name}: a6 at a transfer point"));
            }
        } else {
            let c = k.mul(&k.from_i64(3), &v[5])?;
            let phi1 = vec![v[0].clone(), m1.clone(), k.mul(&k.from_i64(2), &v[1])?];
            let phi2 = vec![v[2].clone(), v[3].clone(), k.mul(&k.from_i64(-5), &v[4])?];
            let spec = RostSpec::TwoPfister { field: k.clone(), c: c.clone(), phi1: phi1.clone(), phi2: phi2.clone() };
            let a = a_invariants(&rost_construct(&spec)?.form, None)?;
            let (e1, e2) = (symbol(&k, &phi1)?, symbol(&k, &phi2)?);
            let mmk = mm(&k)?;
            let expect = e1
                .cup(&e2)?
                .add(&mmk.cup(&symbol(&k, std::slice::from_ref(&c))?)?.cup(&e1)?)?
                .add(&mmk.cup(&symbol(&k, &[k.neg(&c)?])?)?.cup(&e2)?)?;
            t.check(a.a6 == expect, || format!("{name}: a6 of ⟨c⟩(φ₁′ ⊥ −φ₂′)"));
        }
        let h = if base == FieldDesc::Q { symbol(&k, &[k.from_i64(2)])? } else { Class::one(&k) };
        let sc = |n: i64, i: usize| k.mul(&k.from_i64(n), &v[i]);
        let points = [
            [v[5].clone(), v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()],
            [sc(3, 5)?, sc(-1, 0)?, sc(2, 1)?, m1.clone(), sc(7, 3)?, v[4].clone()],
        ];
        for [d, c, x1, y1, x2, y2] in points {
            let p1 = QuadraticForm::pfister(&k, &[x1.clone(), y1.clone()])?.pure_part()?;
            let p2 = QuadraticForm::pfister(&k, &[x2.clone(), y2.clone()])?.pure_part()?;
            let r = p1.sum(&p2.neg())?.scale(&d)?;
            let qf = QuadraticForm::pfister(&k, std::slice::from_ref(&c))?.tensor(&r)?;
            let z = z_invariants(&qf, Some(&h))?;
            let (e1, e2) = (symbol(&k, &[x1.clone(), y1.clone()])?, symbol(&k, &[x2.clone(), y2.clone()])?);
            let cc = symbol(&k, std::slice::from_ref(&c))?;
            t.check(z.z3 == cc.cup(&e1)?.add(&cc.cup(&e2)?)?, || format!("{name}: z3"));
            let z5 = cc
                .cup(&e1)?
                .cup(&e2)?
                .add(&symbol(&k, &[m1.clone(), c.clone(), d.clone()])?.cup(&e1)?)?
                .add(&symbol(&k, &[m1.clone(), c.clone(), k.neg(&d)?])?.cup(&e2)?)?;
            t.check(z.z5 == z5, || format!("{name}: z5"));
            let zh = h.cup(&symbol(&k, &[d.clone(), c.clone(), x1, y1, x2, y2])?)?;
            t.check(z.zh.as_ref() == Some(&zh), || format!("{name}: zh"));
            let w2 = stiefel_whitney(2, &r)?;
            let w4 = stiefel_whitney(4, &r)?;
            let mmk = mm(&k)?;
            t.deviation(cc.cup(&w2)? == z.z3, || format!("{name}: (c)·w₂(r) = z₃(q) fails; (c)·w₂(r) = z₃(q) + (−1)(−1)(c) holds"));
            t.check(cc.cup(&w2)? == z.z3.add(&mmk.cup(&cc)?)?, || format!("{name}: corrected w₂ identity"));
            t.deviation(cc.cup(&w4)? == z.z5.add(&mmk.cup(&z.z3)?)?, || {
                format!("{name}: (c)·w₄(r) = z₅(q) + (−1)(−1)z₃(q) fails; (c)·w₄(r) = z₅(q) holds")
            });
            t.check(cc.cup(&w4)? == z.z5, || format!("{name}: corrected w₄ identity"));
            t.check(cc.cup(&serre_bh(&r, &h)?)? == zh, || format!("{name}: (c)·bʰ(r) = zʰ(q)"));
        }
    }
    if !t.deviations.is_empty() {
        t.notes.push("w₂ of a 6-dimensional form in I² is e₂ + (−1)(−1) under w = Π(1 + (aᵢ)); the literal identities hold where (−1) = 0".into());
    }
    Ok(())
}

// 8. residue laws

fn rand_spec(k: &FieldDesc, rng: &mut ChaCha8Rng) -> Result<RostSpec> {
    let b = base_of(k);
    if b == FieldDesc::Fp(5) && rng.gen_bool(0.4) {
        let e = QuadOver::new(k, &k.from_i64(2))?;
        let delta = e.elem(quad(&b, 0, rng.gen_range(1..5)), rand_exps(rng))?;
        let mut phi = Vec::new();
        for _ in 0..3 {
            let u = quad(&b, rng.gen_range(0..5), rng.gen_range(1..5));
            phi.push(e.elem(u, rand_exps(rng))?);
        }
        return Ok(RostSpec::Transfer { field: k.clone(), d: k.from_i64(2), delta, phi });
    }
    let v: Vec<Scalar> = (0..7).map(|_| rand_mono(k, rng)).collect::<Result<_>>()?;
    Ok(RostSpec::TwoPfister { field: k.clone(), c: v[6].clone(), phi1: v[..3].to_vec(), phi2: v[3..6].to_vec() })
}

fn rand_i12(k: &FieldDesc, rng: &mut ChaCha8Rng) -> Result<QuadraticForm> {
    let v: Vec<Scalar> = (0..6).map(|_| rand_mono(k, rng)).collect::<Result<_>>()?;
    let p1 = QuadraticForm::pfister(k, &v[2..4])?.pure_part()?;
    let p2 = QuadraticForm::pfister(k, &v[4..6])?.pure_part()?;
    let r = p1.sum(&p2.neg())?.scale(&v[0])?;
    QuadraticForm::pfister(k, &v[1..2])?.tensor(&r)
}

fn j1_class(k: &FieldDesc) -> Result<Class> {
    // (2)·(−1) = 0 over ℚ
    if base_of(k) == FieldDesc::Q {
        symbol(k, &[k.from_i64(2)])
    } else {
        Ok(Class::one(k))
    }
}

fn c8(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(8);
    let per = cfg.n(50).div_ceil(2);
    let (mut moved_a, mut moved_z) = (0, 0);
    for base in [FieldDesc::Fp(5), FieldDesc::Q] {
        let k = tower(base)?;
        let h = j1_class(&k)?;
        let m1 = Class::minus_one(&k);
        let mmk = mm(&k)?;
        let mut jobs = Vec::new();
        for _ in 0..per {
            jobs.push((rand_spec(&k, &mut rng)?, rand_mono(&k, &mut rng)?, rand_i12(&k, &mut rng)?, rand_mono(&k, &mut rng)?));
        }
        let res: Vec<Result<[bool; 6]>> = jobs
            .par_iter()
            .map(|(spec, c, q12, b)| {
                let q = rost_construct(spec)?.form;
                let a = a_invariants(&q, Some(&h))?;
                let ac = a_invariants(&q.scale(c)?, Some(&h))?;
                let cc = symbol(&k, std::slice::from_ref(c))?;
                let a6_law = ac.a6.add(&a.a6)? == mmk.cup(&cc)?.cup(&a.a3)?;
                let ah_law = ac.ah.clone().unwrap().add(a.ah.as_ref().unwrap())? == cc.cup(&h)?.cup(&a.a6)?;
                let z = z_invariants(q12, Some(&h))?;
                let zb = z_invariants(&q12.scale(b)?, Some(&h))?;
                let bb = symbol(&k, std::slice::from_ref(b))?;
                let z5_law = zb.z5.add(&z.z5)? == bb.cup(&m1)?.cup(&z.z3)?;
                let zh_law = zb.zh.clone().unwrap().add(z.zh.as_ref().unwrap())? == bb.cup(&h)?.cup(&z.z5)?;
                Ok([a6_law && ac.a3 == a.a3, ah_law, z5_law && zb.z3 == z.z3, zh_law, ac.a6 != a.a6, zb.z5 != z.z5 || zb.zh != z.zh])
            })
            .collect();
        let names = ["a₆(⟨c⟩Q) − a₆(Q) = (−1)(−1)(c)a₃", "aʰ(⟨c⟩Q) − aʰ(Q) = (c)h·a₆", "z₅(⟨b⟩q) − z₅(q) = (b)(−1)z₃", "zʰ(⟨b⟩q) − zʰ(q) = (b)h·z₅"];
        for (i, n) in names.iter().enumerate() {
            let bad = res.iter().filter(|r| !matches!(r, Ok(v) if v[i])).count();
            t.batch(per, bad, n);
        }
        moved_a += res.iter().filter(|r| matches!(r, Ok(v) if v[4])).count();
        moved_z += res.iter().filter(|r| matches!(r, Ok(v) if v[5])).count();
        // isotropic Q: a₆ ∈ (−1)·H⁵
        for i in 0..6 {
            let q = if i % 2 == 0 {
                rand_i12(&k, &mut rng)?.sum(&QuadraticForm::hyperbolic(&k, 1))?
            } else {
                let mut v: Vec<Scalar> = (0..5).map(|_| rand_mono(&k, &mut rng)).collect::<Result<_>>()?;
                v.insert(0, k.one());
                let spec = RostSpec::TwoPfister { field: k.clone(), c: rand_mono(&k, &mut rng)?, phi1: v[..3].to_vec(), phi2: v[3..].to_vec() };
                rost_construct(&spec)?.form
            };
            let a6 = a_invariants(&q, None)?.a6;
            t.check(q.is_isotropic()? && a6.in_minus_one_power(1), || format!("a6-vanish: {a6}"));
        }
    }
    t.notes.push(format!("a₆ moved on {moved_a} pairs, z₅/zʰ on {moved_z} pairs"));
    t.check(moved_a > 0 && moved_z > 0, || "every finite difference vanished".into());
    Ok(())
}

// 9. division and isotopy

/// Bounded search for a zero of Σ aᵢxᵢ² with support at most 4 and 1 ≤ |xᵢ| ≤ 3.
pub fn search_small_zero(a: &[i128]) -> bool {
    fn rec(a: &[i128], start: usize, support: &mut Vec<usize>) -> bool {
        if support.len() >= 2 {
            let mut vals = vec![1i128; support.len()];
            'outer: loop {
                if support.iter().zip(&vals).map(|(&i, v)| a[i] * v * v).sum::<i128>() == 0 {
                    return true;
                }
                for v in vals.iter_mut() {
                    if *v < 3 {
                        *v += 1;
                        continue 'outer;
                    }
                    *v = 1;
                }
                break;
            }
        }
        if support.len() == 4 {
            return false;
        }
        for i in start..a.len() {
            support.push(i);
            if rec(a, i + 1, support) {
                return true;
            }
            support.pop();
        }
        false
    }
    rec(a, 0, &mut Vec::new())
}

/// Forms of dimension ≤ 2 over 𝔽_p by enumeration; dimension ≥ 3 is always isotropic.
fn fp_anisotropic(p: i128, a: &[i128]) -> bool {
    match a.len() {
        0 | 1 => true,
        2 => (0..p).all(|x| (0..p).all(|y| (x == 0 && y == 0) || (a[0] * x * x + a[1] * y * y).rem_euclid(p) != 0)),
        _ => false,
    }
}

/// Brute isotropy oracle over ℚ: `Some(true)` isotropic, `Some(false)` anisotropic, `None` undecided.
/// Uses a bounded search, definiteness, and Springer's theorem at odd primes below 200.
pub fn brute_q_isotropy(entries: &[Scalar]) -> Option<bool> {
    let a: Vec<i128> = entries
        .iter()
        .map(|s| match s {
            Scalar::Q(r) => hilbert::sqf(r).to_i128(),
            _ => None,
        })
        .collect::<Option<_>>()?;
    if search_small_zero(&a) {
        return Some(true);
    }
    if a.iter().all(|x| *x > 0) || a.iter().all(|x| *x < 0) {
        return Some(false);
    }
    let primes = (3i128..200).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0));
    for p in primes {
        let (units, rest): (Vec<i128>, Vec<i128>) = a.iter().partition(|x| *x % p != 0);
        let rest: Vec<i128> = rest.iter().map(|x| x / p).collect();
        if fp_anisotropic(p, &units) && fp_anisotropic(p, &rest) {
            return Some(false);
        }
    }
    None
}

/// Iterated Springer over 𝔽_p((t₁..tₙ)) for diagonal monomial forms.
pub fn springer_tower_isotropy(entries: &[Scalar]) -> Option<bool> {
    let mut classes: BTreeMap<Vec<i64>, Vec<i128>> = BTreeMap::new();
    for s in entries {
        let Scalar::Mono(c, e) = s else { return None };
        let Scalar::Fp(u) = **c else { return None };
        classes.entry(e.iter().map(|x| x.rem_euclid(2)).collect()).or_default().push(u as i128);
    }
    Some(!classes.values().all(|v| fp_anisotropic(5, v)))
}

fn c9(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(9);
    let q = FieldDesc::Q;
    let pool = [-1i64, -2, -3, -5, -6, -7, 2, 3, 5, 6, 7, 10, 11, 13, 15, 21];
    let mut descs = vec![
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[1, -1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[-1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[-1, -1, -1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, 3, -7]), mu2: qs(&[2, -3, 5]) },
        ProductDesc::Corestriction { field: q.clone(), d: qi(2), mu: vec![quad(&q, -1, 0); 3] },
    ];
    for _ in 0..cfg.n(24) {
        let shape = [(2, 2), (2, 1), (3, 1), (2, 0), (3, 3), (1, 0)][rng.gen_range(0..6)];
        let mut pick = |n: usize| (0..n).map(|_| qi(pool[rng.gen_range(0..pool.len())])).collect::<Vec<_>>();
        let mu1 = pick(shape.0);
        descs.push(ProductDesc::Decomposable { field: q.clone(), mu1, mu2: pick(shape.1) });
    }
    let (mut conclusive, mut division) = (0, 0);
    for desc in &descs {
        let Some(v) = t.ok(is_division(&DivisionInput::Algebra(desc.clone())), "is_division") else { continue };
        let a = build_product(&Rationals, desc)?;
        if let Certificate::IsotropicSkew(s) = &v.certificate {
            let s = st::elem_from_scalars(&Rationals, s)?;
            t.check(linalg::rank(&Rationals, &a.left_mul(&s)) < a.dim, || format!("L_s invertible for witness of {desc:?}"));
        }
        let oracle = match &v.certificate {
            Certificate::SplitCenter(_) => Some(true),
            _ => brute_q_isotropy(&albert_data(&a)?.form()?.entries),
        };
        if let Some(iso) = oracle {
            conclusive += 1;
            division += usize::from(!iso);
            t.check(v.division == !iso, || format!("verdict {} vs oracle for {desc:?}", v.division));
        }
        if desc.dims() == (8, 8) {
            let b = b_invariants(desc)?;
            let a6 = a_invariants(&albert_form(desc)?, None)?.a6;
            t.check(a6.add(&b.b6)?.in_minus_one_power(2), || format!("big-calc for {desc:?}"));
            if !v.division {
                t.check(b.b6.in_minus_one_power(1), || format!("symbols(iii) for {desc:?}"));
            }
        }
    }
    let k = tower(FieldDesc::Fp(5))?;
    for i in 0..cfg.n(20) {
        let spec = if i % 3 == 2 {
            let e = QuadOver::new(&k, &k.from_i64(2))?;
            let f5 = FieldDesc::Fp(5);
            let delta = e.elem(quad(&f5, 0, 1), rand_exps(&mut rng))?;
            let mut phi = Vec::new();
            for _ in 0..3 {
                let u = quad(&f5, rng.gen_range(0..5), rng.gen_range(1..5));
                phi.push(e.elem(u, rand_exps(&mut rng))?);
            }
            RostSpec::Transfer { field: k.clone(), d: k.from_i64(2), delta, phi }
        } else {
            rand_spec(&k, &mut rng)?
        };
        let form = rost_construct(&spec)?.form;
        let v = is_division(&DivisionInput::Form(spec.clone()))?;
        if let Some(iso) = springer_tower_isotropy(&form.entries) {
            conclusive += 1;
            division += usize::from(!iso);
            t.check(v.division == !iso, || format!("tower verdict {} vs Springer oracle", v.division));
        }
        if let Certificate::IsotropicVector(x) = &v.certificate {
            t.check(k.is_zero(&form.value(x)?), || "isotropic vector does not vanish".into());
        }
        let a6 = a_invariants(&form, None)?.a6;
        let b6 = b6_of_spec(&spec)?;
        t.check(a6.add(&b6)?.in_minus_one_power(2), || "big-calc on a tower spec".into());
        if !v.division {
            t.check(b6.in_minus_one_power(1), || "symbols(iii) on a tower spec".into());
        }
    }
    t.check(conclusive >= 20.min(cfg.n(20)), || format!("only {conclusive} conclusive oracle instances"));
    t.notes.push(format!("{conclusive} instances decided by the brute oracles, {division} division"));

    let octs: [[i64; 3]; 5] = [[-1, -1, -1], [1, 2, 3], [-1, -1, 3], [2, -3, 5], [-1, 3, -7]];
    let dq = |i: usize, j: usize| ProductDesc::Decomposable { field: q.clone(), mu1: qs(&octs[i]), mu2: qs(&octs[j]) };
    let mut pairs = Vec::new();
    for i in 0..octs.len() {
        for j in i + 1..octs.len() {
            pairs.push(((i, j), (j, i)));
            pairs.push(((i, i), (j, j)));
        }
    }
    pairs.truncate(cfg.n(12));
    let mut keys: Vec<(usize, usize)> = pairs.iter().flat_map(|(x, y)| [*x, *y]).collect();
    keys.sort();
    keys.dedup();
    let binv: BTreeMap<(usize, usize), Result<BInvariants>> = keys.par_iter().map(|&(i, j)| ((i, j), b_invariants(&dq(i, j)))).collect();
    for (x, y) in &pairs {
        let iso = is_isotopic(&dq(x.0, x.1), &dq(y.0, y.1))?;
        t.check(matches!(iso, Isotopy::Isotopic(_)), || format!("{x:?} and {y:?} not detected as isotopic"));
        let (Ok(bx), Ok(by)) = (&binv[x], &binv[y]) else {
            t.check(false, || format!("b-invariants of {x:?} or {y:?}"));
            continue;
        };
        t.check(bx.b3 == by.b3 && bx.b6.add(&by.b6)?.in_minus_one_power(2), || format!("isotopy invariants for {x:?} {y:?}"));
    }
    t.check(is_isotopic(&dq(0, 1), &dq(0, 0))? == Isotopy::NotIsotopic, || "split and non-split classes merged".into());
    Ok(())
}

// 10. Hilbert reciprocity, P_n, e₃ on I⁴, b₃ = 0 ⇒ hyperbolic

fn rand_pfister(k: &FieldDesc, rng: &mut ChaCha8Rng, n: usize) -> Result<QuadraticForm> {
    let pool = [-1i64, 2, -2, 3, -3, 5, -5, 6, 7, -7, 10, 11, -13];
    let slots: Vec<Scalar> = (0..n).map(|_| k.from_i64(pool[rng.gen_range(0..pool.len())])).collect();
    QuadraticForm::pfister(k, &slots)
}

fn c10(cfg: &Config, t: &mut Tally) -> Result<()> {
    let mut rng = cfg.rng(10);
    let n = cfg.n(1000);
    let mut bad = 0;
    for _ in 0..n {
        let mut draw = || loop {
            let x: i64 = rng.gen_range(-2000..=2000);
            if x != 0 {
                break BigInt::from(x);
            }
        };
        let (a, b) = (draw(), draw());
        let mut places = hilbert::support(&[a.clone(), b.clone()]);
        places.insert(Place::P(BigInt::from(3)));
        places.insert(Place::P(BigInt::from(2003)));
        let prod: i32 = places.iter().map(|v| hilbert::hilbert(&a, &b, v)).product();
        let p2003 = hilbert::hilbert(&a, &b, &Place::P(BigInt::from(2003)));
        if prod != 1 || p2003 != 1 {
            bad += 1;
        }
    }
    t.batch(n, bad, "Hilbert reciprocity");

    let q = FieldDesc::Q;
    let mut combos = Vec::new();
    for i in 0..cfg.n(100) {
        let n = [1u32, 1, 2, 2, 2, 3][i % 6];
        let x = rand_pfister(&q, &mut rng, n as usize)?.scale(&qi([1, -1, 3, -6, 10][rng.gen_range(0..5)]))?;
        let y = rand_pfister(&q, &mut rng, n as usize)?.scale(&qi([1, 2, -5, 7][rng.gen_range(0..4)]))?;
        let c = qi([-1, 2, 3, -5, 6][rng.gen_range(0..5)]);
        combos.push((n, x, y, c));
    }
    let res: Vec<Result<[bool; 3]>> = combos
        .par_iter()
        .map(|(n, x, y, c)| {
            let n = *n;
            let pf = x.scale(&q.inv(&x.entries[0])?)?;
            let pfister = qforms::pn_form(n, &pf)?.is_witt_zero()?;
            let two = 1i64 << (n - 1);
            let sim_rhs = qforms::pn_form(n, x)?.sum(&QuadraticForm::pfister(&q, std::slice::from_ref(c))?.tensor(x)?.multiple(two))?;
            let sim = qforms::pn_form(n, &x.scale(c)?)?.witt_eq(&sim_rhs)?;
            let sum_rhs = qforms::pn_form(n, x)?.sum(&x.tensor(y)?)?.sum(&qforms::pn_form(n, y)?)?;
            let sum = qforms::pn_form(n, &x.sum(y)?)?.witt_eq(&sum_rhs)?;
            Ok([pfister, sim, sum])
        })
        .collect();
    for (i, name) in ["P_n(Pfister) = 0", "P_n(⟨c⟩q) = P_n(q) + 2^{n−1}⟨⟨c⟩⟩q", "P_n(x+y) = P_n(x) + xy + P_n(y)"].iter().enumerate() {
        let bad = res.iter().filter(|r| !matches!(r, Ok(v) if v[i])).count();
        t.batch(combos.len(), bad, name);
    }

    // e₃ vanishes on I⁴
    let k = tower(FieldDesc::Q)?;
    for i in 0..8 {
        let (f, p1, p2) = if i % 2 == 0 {
            (q.clone(), rand_pfister(&q, &mut rng, 4)?, rand_pfister(&q, &mut rng, 4)?)
        } else {
            let s: Vec<Scalar> = (0..8).map(|_| rand_mono(&k, &mut rng)).collect::<Result<_>>()?;
            (k.clone(), QuadraticForm::pfister(&k, &s[..4])?, QuadraticForm::pfister(&k, &s[4..])?)
        };
        let form = p1.sum(&p2.scale(&f.from_i64(-3))?)?;
        t.check(e_n(3, &form)?.is_zero(), || format!("e₃ ≠ 0 on an I⁴ form over {f:?}"));
    }

    // b₃ = 0 ⇒ the Albert form is hyperbolic
    let el = |a: i64, b: i64| quad(&q, a, b);
    let descs = vec![
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, 3, 5]), mu2: qs(&[-1, 3, 5]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[-1, -1, -1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[1, 1, 1]), mu2: qs(&[2, 3, 5]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, 3]), mu2: qs(&[2, -3, 5]) },
        ProductDesc::Corestriction { field: q.clone(), d: qi(-1), mu: vec![el(1, 0); 3] },
        ProductDesc::Corestriction { field: q.clone(), d: qi(2), mu: vec![el(-1, 0), el(3, 1), el(1, 1)] },
        ProductDesc::Decomposable { field: FieldDesc::Fp(5), mu1: vec![Scalar::Fp(2); 3], mu2: vec![Scalar::Fp(3), Scalar::Fp(1), Scalar::Fp(2)] },
    ];
    let mut zero_b3 = 0;
    for d in &descs {
        let form = albert_form(d)?;
        let b3 = e_n(3, &form)?;
        if b3.is_zero() {
            zero_b3 += 1;
            t.check(form.is_hyperbolic()?, || format!("b₃ = 0 but the Albert form of {d:?} is not hyperbolic"));
        }
    }
    t.check(zero_b3 >= 3, || format!("only {zero_b3} instances with b₃ = 0"));
    Ok(())
}
