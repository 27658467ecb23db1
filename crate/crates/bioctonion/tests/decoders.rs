// SPDX-License-Identifier: Apache-2.0
//! Replays the fuzz corpus and random mutations of it through every decoder.

use bioctonion::fields::{FieldDesc, Scalar};
use bioctonion::hilbert::Place;
use bioctonion::json::*;
use bioctonion::structurable::OperatorKind;
use proptest::prelude::*;
use std::path::PathBuf;

fn fields() -> Vec<FieldDesc> {
    let q = FieldDesc::Q;
    let f5 = FieldDesc::Fp(5);
    vec![
        q.clone(),
        FieldDesc::Fp(7),
        FieldDesc::quad(q.clone(), Scalar::q(-1)).unwrap(),
        FieldDesc::quad(f5.clone(), f5.from_i64(2)).unwrap(),
        FieldDesc::laurent(q, vec!["t1".into(), "t2".into()]).unwrap(),
        FieldDesc::laurent(f5, vec!["x".into(), "y".into(), "z".into()]).unwrap(),
    ]
}

/// Mirrors the fuzz target of the same name.
fn run(target: &str, data: &[u8]) {
    match target {
        "scalar" => {
            let Some((&sel, rest)) = data.split_first() else { return };
            let fs = fields();
            let k = &fs[sel as usize % fs.len()];
            if let Ok(s) = std::str::from_utf8(rest) {
                if let Ok(x) = k.parse_scalar(s) {
                    assert_eq!(k.parse_scalar(&k.fmt_scalar(&x)).unwrap(), x, "{s:?}");
                }
            }
        }
        _ => {
            let Ok(s) = std::str::from_utf8(data) else { return };
            match target {
                "place" => {
                    if let Some(p) = Place::parse(s) {
                        assert_eq!(Place::parse(&p.to_string()), Some(p));
                    }
                }
                "operator_kind" => {
                    let _ = OperatorKind::parse(s);
                }
                "field_json" => {
                    if let Ok(k) = field_from_str(s) {
                        assert_eq!(field_from_json(&field_to_json(&k)).unwrap(), k);
                    }
                }
                _ => {
                    let Ok(v) = parse(s) else { return };
                    match target {
                        "form_json" => {
                            if let Ok(q) = form_from_json(&v, Some(&FieldDesc::Q)) {
                                assert_eq!(form_from_json(&form_to_json(&q), None).unwrap(), q);
                            }
                            let _ = witt_from_json(&v, Some(&FieldDesc::Fp(5)));
                        }
                        "class_json" => {
                            let ks = [FieldDesc::Q, FieldDesc::Fp(5), FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into(), "t3".into()]).unwrap()];
                            for k in &ks {
                                if let Ok(c) = class_from_json(k, &v) {
                                    assert_eq!(class_from_json(k, &class_to_json(&c)).unwrap(), c);
                                }
                            }
                        }
                        "descriptor_json" => {
                            if let Ok(d) = desc_from_json(&v, Some(&FieldDesc::Q)) {
                                assert_eq!(desc_from_json(&desc_to_json(&d), None).unwrap(), d);
                            }
                        }
                        "rost_spec_json" => {
                            if let Ok(spec) = rost_spec_from_json(&v, Some(&FieldDesc::Fp(5))) {
                                let back = rost_spec_to_json(&spec).unwrap();
                                assert_eq!(rost_spec_from_json(&back, None).unwrap(), spec);
                            }
                        }
                        "report_json" => {
                            let _ = report_from_json(&v, &FieldDesc::Q);
                            let _ = profile_from_json(&v);
                            let _ = verdict_from_json(&FieldDesc::Fp(7), &v);
                            let _ = isotopy_from_json(&FieldDesc::Q, &v);
                        }
                        other => panic!("unknown target {other}"),
                    }
                }
            }
        }
    }
}

const TARGETS: [&str; 9] = ["scalar", "place", "operator_kind", "field_json", "form_json", "class_json", "descriptor_json", "rost_spec_json", "report_json"];

fn corpus() -> Vec<(&'static str, Vec<u8>)> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut out = Vec::new();
    for t in TARGETS {
        let mut files: Vec<_> = std::fs::read_dir(root.join(t)).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        for f in files {
            out.push((t, std::fs::read(f).unwrap()));
        }
    }
    out
}

#[test]
fn corpus_seeds_decode() {
    let c = corpus();
    assert!(c.len() >= 2 * TARGETS.len());
    for (t, data) in &c {
        run(t, data);
    }
    // every JSON seed is accepted by its own decoder
    let accepted = |t: &str, s: &str| match t {
        "form_json" => form_from_json(&parse(s).unwrap(), Some(&FieldDesc::Q)).is_ok() || witt_from_json(&parse(s).unwrap(), Some(&FieldDesc::Q)).is_ok(),
        "descriptor_json" => desc_from_json(&parse(s).unwrap(), Some(&FieldDesc::Q)).is_ok(),
        "rost_spec_json" => rost_spec_from_json(&parse(s).unwrap(), Some(&FieldDesc::Q)).is_ok(),
        _ => true,
    };
    for (t, data) in &c {
        assert!(accepted(t, std::str::from_utf8(data).unwrap_or("")), "{t}: {}", String::from_utf8_lossy(data));
    }
}

fn mutate(seed: &[u8], edits: &[(usize, u8, u8)]) -> Vec<u8> {
    let mut d = seed.to_vec();
    for &(pos, op, byte) in edits {
        let i = if d.is_empty() { 0 } else { pos % (d.len() + 1) };
        match op % 4 {
            0 if i < d.len() => d[i] = byte,
            1 => d.insert(i, byte),
            2 if i < d.len() => {
                d.remove(i);
            }
            _ => {
                // splice in a token that decoders care about
                let toks: [&[u8]; 8] = [b"-", b"/", b"^", b"*sqrt", b"\"", b"0", b"99999999999999999999", b"{}"];
                for (j, b) in toks[byte as usize % toks.len()].iter().enumerate() {
                    d.insert((i + j).min(d.len()), *b);
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 3000, ..ProptestConfig::default() })]

    #[test]
    fn mutated_seeds_never_panic(which in any::<prop::sample::Index>(), edits in prop::collection::vec((any::<usize>(), any::<u8>(), any::<u8>()), 1..6)) {
        let c = corpus();
        let (t, seed) = &c[which.index(c.len())];
        run(t, &mutate(seed, &edits));
    }

    #[test]
    fn arbitrary_bytes_never_panic(t in 0..TARGETS.len(), data in prop::collection::vec(any::<u8>(), 0..64)) {
        run(TARGETS[t], &data);
    }

    #[test]
    fn scalar_strings_round_trip(sel in any::<u8>(), s in "[-+]?[0-9]{1,3}(/[1-9][0-9]?)?([-+][0-9]?\\*?sqrt)?(\\*(t1|t2|x|y)(\\^-?[0-9])?){0,2}") {
        let mut data = vec![sel];
        data.extend_from_slice(s.as_bytes());
        run("scalar", &data);
    }
}
