// SPDX-License-Identifier: Apache-2.0
use bioctonion::cohomology::{symbol, Class};
use bioctonion::fields::{FieldDesc, Scalar};
use bioctonion::invariants::*;
use bioctonion::qforms::QuadraticForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARS: usize = 6;

fn tower(base: FieldDesc) -> FieldDesc {
    FieldDesc::laurent(base, (1..=VARS).map(|i| format!("t{i}")).collect()).unwrap()
}

fn units(base: &FieldDesc) -> Vec<i64> {
    match base {
        FieldDesc::Q => vec![1, -1, 2, -2, 3, -3, 5, -6, 7],
        _ => vec![1, 2, 3, 4],
    }
}

fn base_of(k: &FieldDesc) -> FieldDesc {
    match k {
        FieldDesc::Laurent(b, _) => (**b).clone(),
        _ => unreachable!(),
    }
}

fn rand_exps(rng: &mut ChaCha8Rng) -> Vec<i64> {
    (0..VARS).map(|_| if rng.gen_bool(0.35) { rng.gen_range(-1..=2) } else { 0 }).collect()
}

fn rand_scalar(k: &FieldDesc, rng: &mut ChaCha8Rng) -> Scalar {
    let b = base_of(k);
    let u = units(&b);
    let c = b.from_i64(u[rng.gen_range(0..u.len())]);
    k.mono(c, rand_exps(rng)).unwrap()
}

fn sym(k: &FieldDesc, s: &[Scalar]) -> Class {
    symbol(k, s).unwrap()
}

fn rand_spec(k: &FieldDesc, rng: &mut ChaCha8Rng) -> RostSpec {
    let b = base_of(k);
    if b == FieldDesc::Fp(5) && rng.gen_bool(0.4) {
        let e = QuadOver::new(k, &k.from_i64(2)).unwrap();
        let q = |a: i64, c: i64| Scalar::Quad(Box::new(b.from_i64(a)), Box::new(b.from_i64(c)));
        let delta = e.elem(q(0, rng.gen_range(1..5)), rand_exps(rng)).unwrap();
        let phi = (0..3).map(|_| e.elem(q(rng.gen_range(0..5), rng.gen_range(1..5)), rand_exps(rng)).unwrap()).collect();
        return RostSpec::Transfer { field: k.clone(), d: k.from_i64(2), delta, phi };
    }
    let mut v: Vec<Scalar> = (0..6).map(|_| rand_scalar(k, rng)).collect();
    let phi2 = v.split_off(3);
    RostSpec::TwoPfister { field: k.clone(), c: rand_scalar(k, rng), phi1: v, phi2 }
}

fn rand_i12(k: &FieldDesc, rng: &mut ChaCha8Rng) -> QuadraticForm {
    let v: Vec<Scalar> = (0..6).map(|_| rand_scalar(k, rng)).collect();
    let p1 = QuadraticForm::pfister(k, &v[2..4]).unwrap().pure_part().unwrap();
    let p2 = QuadraticForm::pfister(k, &v[4..6]).unwrap().pure_part().unwrap();
    let r = p1.sum(&p2.neg()).unwrap().scale(&v[0]).unwrap();
    QuadraticForm::pfister(k, &v[1..2]).unwrap().tensor(&r).unwrap()
}

fn j1_class(k: &FieldDesc) -> Class {
    // (2)·(−1) = 0 over ℚ; over 𝔽₅ every class is killed by (−1) = 0
    if base_of(k) == FieldDesc::Q {
        sym(k, &[k.from_i64(2)])
    } else {
        Class::one(k)
    }
}

#[test]
fn a6_and_ah_under_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut pairs, mut moved) = (0, 0);
    for base in [FieldDesc::Fp(5), FieldDesc::Q] {
        let k = tower(base);
        let h = j1_class(&k);
        let mm = Class::minus_one(&k).cup(&Class::minus_one(&k)).unwrap();
        for _ in 0..30 {
            let q = rost_construct(&rand_spec(&k, &mut rng)).unwrap().form;
            let c = rand_scalar(&k, &mut rng);
            let a = a_invariants(&q, Some(&h)).unwrap();
            let b = a_invariants(&q.scale(&c).unwrap(), Some(&h)).unwrap();
            let cc = sym(&k, &[c]);
            assert_eq!(b.a3, a.a3);
            moved += usize::from(b.a6 != a.a6);
            assert_eq!(b.a6.add(&a.a6).unwrap(), mm.cup(&cc).unwrap().cup(&a.a3).unwrap());
            let dh = b.ah.unwrap().add(&a.ah.unwrap()).unwrap();
            assert_eq!(dh, cc.cup(&h).unwrap().cup(&a.a6).unwrap());
            pairs += 1;
        }
    }
    assert!(pairs >= 50);
    assert!(moved >= 5, "only {moved} pairs changed");
}

#[test]
fn z5_and_zh_under_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut pairs, mut moved) = (0, 0);
    for base in [FieldDesc::Fp(5), FieldDesc::Q] {
        let k = tower(base);
        let h = j1_class(&k);
        let m1 = Class::minus_one(&k);
        for _ in 0..30 {
            let q = rand_i12(&k, &mut rng);
            let b = rand_scalar(&k, &mut rng);
            let z = z_invariants(&q, Some(&h)).unwrap();
            let zb = z_invariants(&q.scale(&b).unwrap(), Some(&h)).unwrap();
            let bb = sym(&k, &[b]);
            assert_eq!(zb.z3, z.z3);
            moved += usize::from(zb.z5 != z.z5 || zb.zh != z.zh);
            assert_eq!(zb.z5.add(&z.z5).unwrap(), bb.cup(&m1).unwrap().cup(&z.z3).unwrap());
            let dh = zb.zh.unwrap().add(&z.zh.unwrap()).unwrap();
            assert_eq!(dh, bb.cup(&h).unwrap().cup(&z.z5).unwrap());
            pairs += 1;
        }
    }
    assert!(pairs >= 50);
    assert!(moved >= 5, "only {moved} pairs changed");
}

#[test]
fn a6_of_isotropic_forms_is_divisible_by_minus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for base in [FieldDesc::Fp(5), FieldDesc::Q] {
        let k = tower(base);
        for i in 0..12 {
            let q = if i % 2 == 0 {
                rand_i12(&k, &mut rng).sum(&QuadraticForm::hyperbolic(&k, 1)).unwrap()
            } else {
                let mut v: Vec<Scalar> = (0..5).map(|_| rand_scalar(&k, &mut rng)).collect();
                v.insert(0, k.one());
                let phi2 = v.split_off(3);
                let spec = RostSpec::TwoPfister { field: k.clone(), c: rand_scalar(&k, &mut rng), phi1: v, phi2 };
                rost_construct(&spec).unwrap().form
            };
            assert!(q.is_isotropic().unwrap());
            let a6 = a_invariants(&q, None).unwrap().a6;
            assert!(a6.in_minus_one_power(1), "{a6:?}");
        }
    }
}
