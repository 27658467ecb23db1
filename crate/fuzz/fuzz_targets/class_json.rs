// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::FieldDesc;
use bioctonion::json::{class_from_json, class_to_json, parse};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let fields = [
        FieldDesc::Q,
        FieldDesc::Fp(5),
        FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into(), "t3".into()]).unwrap(),
    ];
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse(s) {
            for k in &fields {
                if let Ok(c) = class_from_json(k, &v) {
                    assert_eq!(class_from_json(k, &class_to_json(&c)).unwrap(), c);
                }
            }
        }
    }
});
