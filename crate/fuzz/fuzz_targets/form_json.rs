// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::FieldDesc;
use bioctonion::json::{form_from_json, form_to_json, parse, witt_from_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse(s) {
            if let Ok(q) = form_from_json(&v, Some(&FieldDesc::Q)) {
                assert_eq!(form_from_json(&form_to_json(&q), None).unwrap(), q);
            }
            let _ = witt_from_json(&v, Some(&FieldDesc::Fp(5)));
        }
    }
});
