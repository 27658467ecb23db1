// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::json::{field_from_json, field_from_str, field_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(k) = field_from_str(s) {
            assert_eq!(field_from_json(&field_to_json(&k)).unwrap(), k);
        }
    }
});
