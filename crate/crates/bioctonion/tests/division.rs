// SPDX-License-Identifier: Apache-2.0
use bioctonion::algebras::{build_product, ProductDesc};
use bioctonion::fields::{Field, FieldDesc, PrimeField, Rationals, Scalar};
use bioctonion::invariants::*;
use bioctonion::linalg;
use bioctonion::selftest::{brute_q_isotropy, search_small_zero, springer_tower_isotropy};
use bioctonion::structurable::{albert_data, elem_from_scalars};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn qs(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| Scalar::q(n)).collect()
}

fn check_certificate<F: Field>(f: &F, desc: &ProductDesc, v: &DivisionVerdict) {
    let a = build_product(f, desc).unwrap();
    match &v.certificate {
        Certificate::IsotropicSkew(s) => {
            let s = elem_from_scalars(f, s).unwrap();
            assert!(!a.is_zero(&s));
            assert_eq!(a.conj(&s), a.scale(&f.from_i64(-1), &s));
            assert!(linalg::rank(f, &a.left_mul(&s)) < a.dim, "L_s is invertible");
        }
        Certificate::SplitCenter(_) => assert!(!v.division),
        Certificate::Anisotropic { .. } => assert!(v.division),
        Certificate::IsotropicVector(_) => unreachable!(),
    }
}

#[test]
fn division_verdicts_agree_with_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let q = FieldDesc::Q;
    let pool = [-1, -2, -3, -5, -6, -7, 2, 3, 5, 6, 7, 10, 11, 13, 15, 21];
    let mut descs = vec![
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[1, -1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, 3]), mu2: vec![] },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[-1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[1]) },
        ProductDesc::Decomposable { field: q.clone(), mu1: qs(&[-1, -1, -1]), mu2: qs(&[-1, -1, -1]) },
        ProductDesc::Corestriction {
            field: q.clone(),
            d: Scalar::q(2),
            mu: vec![Scalar::Quad(Box::new(Scalar::q(-1)), Box::new(Scalar::q(0))); 3],
        },
    ];
    for _ in 0..24 {
        let shape = [(2, 2), (2, 1), (3, 1), (2, 0), (3, 3), (1, 0)][rng.gen_range(0..6)];
        let mut pick = |n: usize| (0..n).map(|_| Scalar::q(pool[rng.gen_range(0..pool.len())])).collect::<Vec<_>>();
        let mu1 = pick(shape.0);
        descs.push(ProductDesc::Decomposable { field: q.clone(), mu1, mu2: pick(shape.1) });
    }
    let (mut conclusive, mut division) = (0, 0);
    for desc in &descs {
        let v = is_division(&DivisionInput::Algebra(desc.clone())).unwrap();
        check_certificate(&Rationals, desc, &v);
        let a = build_product(&Rationals, desc).unwrap();
        let form = albert_data(&a).unwrap().form().unwrap();
        let oracle = match &v.certificate {
            Certificate::SplitCenter(_) => Some(false),
            _ => brute_q_isotropy(&form.entries).map(|iso| !iso),
        };
        if let Some(o) = oracle {
            assert_eq!(v.division, o, "{desc:?}");
            conclusive += 1;
            division += usize::from(o);
        }
    }
    // finite fields: only (2,1) with a nonsquare and (1,1) are division
    let f5 = FieldDesc::Fp(5);
    let fp = PrimeField::new(5).unwrap();
    for (mu1, mu2, expect) in [(vec![2], vec![], true), (vec![1], vec![], false), (vec![2, 3], vec![], false), (vec![2, 2, 3], vec![3], false)] {
        let desc = ProductDesc::Decomposable {
            field: f5.clone(),
            mu1: mu1.iter().map(|&x| Scalar::Fp(x)).collect(),
            mu2: mu2.iter().map(|&x| Scalar::Fp(x)).collect(),
        };
        let v = is_division(&DivisionInput::Algebra(desc.clone())).unwrap();
        check_certificate(&fp, &desc, &v);
        assert_eq!(v.division, expect);
        conclusive += 1;
    }
    assert!(conclusive >= 20, "{conclusive}");
    assert!(division >= 3, "{division}");
}

fn tower(base: FieldDesc) -> FieldDesc {
    FieldDesc::laurent(base, (1..=6).map(|i| format!("t{i}")).collect()).unwrap()
}

fn mono(k: &FieldDesc, rng: &mut ChaCha8Rng) -> Scalar {
    let e = (0..6).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-1..=1) } else { 0 }).collect();
    k.mono(Scalar::Fp(rng.gen_range(1..5)), e).unwrap()
}

#[test]
fn form_level_division_over_tower() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let k = tower(FieldDesc::Fp(5));
    let (mut aniso, mut iso) = (0, 0);
    for i in 0..30 {
        let spec = if i % 3 == 2 {
            let e = QuadOver::new(&k, &k.from_i64(2)).unwrap();
            let qd = |a: u64, b: u64| Scalar::Quad(Box::new(Scalar::Fp(a)), Box::new(Scalar::Fp(b)));
            let ex = |rng: &mut ChaCha8Rng| (0..6).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-1..=1) } else { 0 }).collect::<Vec<_>>();
            let delta = e.elem(qd(0, 1), ex(&mut rng)).unwrap();
            let phi = (0..3)
                .map(|_| {
                    let u = qd(rng.gen_range(0..5), rng.gen_range(1..5));
                    e.elem(u, ex(&mut rng)).unwrap()
                })
                .collect();
            RostSpec::Transfer { field: k.clone(), d: k.from_i64(2), delta, phi }
        } else {
            let v: Vec<Scalar> = (0..7).map(|_| mono(&k, &mut rng)).collect();
            RostSpec::TwoPfister { field: k.clone(), c: v[6].clone(), phi1: v[..3].to_vec(), phi2: v[3..6].to_vec() }
        };
        let q = rost_construct(&spec).unwrap().form;
        let v = is_division(&DivisionInput::Form(spec)).unwrap();
        assert_eq!(v.division, !springer_tower_isotropy(&q.entries).unwrap());
        match v.certificate {
            Certificate::IsotropicVector(x) => {
                assert!(x.iter().any(|c| !k.is_zero(c)));
                assert!(k.is_zero(&q.value(&x).unwrap()));
                iso += 1;
            }
            Certificate::Anisotropic { .. } => aniso += 1,
            _ => unreachable!(),
        }
    }
    assert!(aniso >= 3 && iso >= 3, "{aniso} {iso}");
}

fn q_desc(mu1: &[i64], mu2: &[i64]) -> ProductDesc {
    ProductDesc::Decomposable { field: FieldDesc::Q, mu1: qs(mu1), mu2: qs(mu2) }
}

#[test]
fn symbol_membership_and_isotopy_invariance() {
    let octs: [[i64; 3]; 5] = [[-1, -1, -1], [1, 2, 3], [-1, -1, 3], [2, -3, 5], [-1, 3, -7]];
    let mut cache: BTreeMap<(usize, usize), BInvariants> = BTreeMap::new();
    let mut binv = |i: usize, j: usize| cache.entry((i, j)).or_insert_with(|| b_invariants(&q_desc(&octs[i], &octs[j])).unwrap()).clone();
    let mut pairs = 0;
    for i in 0..octs.len() {
        for j in i..octs.len() {
            // bi-octonions over ℚ are never division: b₆ ∈ (−1)·H⁵
            let d = q_desc(&octs[i], &octs[j]);
            let bi = binv(i, j);
            assert!(!is_division(&DivisionInput::Algebra(d.clone())).unwrap().division);
            assert!(bi.b6.in_minus_one_power(1));
            let c = [1, -1, 3, -10][(i + j) % 4];
            let a6 = a_invariants(&albert_form(&d).unwrap().scale(&Scalar::q(c)).unwrap(), None).unwrap().a6;
            assert!(a6.add(&bi.b6).unwrap().in_minus_one_power(2));
            // C₁⊗C₂ ~ C₂⊗C₁, and C⊗C ~ C′⊗C′ (both split Albert forms)
            for (x, y) in [((i, j), (j, i)), ((i, i), (j, j))] {
                let Isotopy::Isotopic(_) = is_isotopic(&q_desc(&octs[x.0], &octs[x.1]), &q_desc(&octs[y.0], &octs[y.1])).unwrap() else {
                    panic!("{x:?} {y:?} not isotopic");
                };
                let (bx, by) = (binv(x.0, x.1), binv(y.0, y.1));
                assert_eq!(bx.b3, by.b3);
                assert!(bx.b6.add(&by.b6).unwrap().in_minus_one_power(2));
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 10);
    let d = q_desc(&octs[0], &octs[1]);
    assert_eq!(is_isotopic(&d, &q_desc(&octs[0], &octs[0])).unwrap(), Isotopy::NotIsotopic);
}

#[test]
fn big_calc_over_q_tower() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let k = tower(FieldDesc::Q);
    let units = [1, -1, 2, -2, 3, -3, 5, 6, -7];
    for _ in 0..20 {
        let v: Vec<Scalar> = (0..7)
            .map(|_| {
                let e = (0..6).map(|_| if rng.gen_bool(0.4) { rng.gen_range(-1..=1) } else { 0 }).collect();
                k.mono(Scalar::q(units[rng.gen_range(0..units.len())]), e).unwrap()
            })
            .collect();
        let spec = RostSpec::TwoPfister { field: k.clone(), c: v[6].clone(), phi1: v[..3].to_vec(), phi2: v[3..6].to_vec() };
        let q = rost_construct(&spec).unwrap().form;
        let a6 = a_invariants(&q, None).unwrap().a6;
        let b6 = b6_of_spec(&spec).unwrap();
        assert!(a6.add(&b6).unwrap().in_minus_one_power(2));
    }
}

#[test]
fn oracle_self_check() {
    assert!(search_small_zero(&[1, 1, -2]));
    assert!(!search_small_zero(&[1, 1, 1]));
    assert_eq!(brute_q_isotropy(&qs(&[1, 1, 1, 1])), Some(false));
    assert_eq!(brute_q_isotropy(&qs(&[1, -3])), Some(false));
    // anisotropic only at 2
    assert_eq!(brute_q_isotropy(&qs(&[1, 1, 1, -7])), None);
    assert_eq!(brute_q_isotropy(&qs(&[1, 2, -5, -10])), Some(false));
}
