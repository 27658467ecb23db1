// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::FieldDesc;
use bioctonion::json::{parse, rost_spec_from_json, rost_spec_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse(s) {
            if let Ok(spec) = rost_spec_from_json(&v, Some(&FieldDesc::Fp(5))) {
                let back = rost_spec_to_json(&spec).unwrap();
                assert_eq!(rost_spec_from_json(&back, None).unwrap(), spec);
            }
        }
    }
});
