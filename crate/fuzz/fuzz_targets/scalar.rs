// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::{FieldDesc, Scalar};
use libfuzzer_sys::fuzz_target;

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

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let fs = fields();
    let k = &fs[sel as usize % fs.len()];
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(x) = k.parse_scalar(s) {
            assert_eq!(k.parse_scalar(&k.fmt_scalar(&x)).unwrap(), x);
        }
    }
});
