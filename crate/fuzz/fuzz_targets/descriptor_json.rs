// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::FieldDesc;
use bioctonion::json::{desc_from_json, desc_to_json, parse};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse(s) {
            if let Ok(d) = desc_from_json(&v, Some(&FieldDesc::Q)) {
                assert_eq!(desc_from_json(&desc_to_json(&d), None).unwrap(), d);
            }
        }
    }
});
