// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::fields::FieldDesc;
use bioctonion::json::{isotopy_from_json, parse, profile_from_json, report_from_json, verdict_from_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = parse(s) {
            let _ = report_from_json(&v, &FieldDesc::Q);
            let _ = profile_from_json(&v);
            let _ = verdict_from_json(&FieldDesc::Fp(7), &v);
            let _ = isotopy_from_json(&FieldDesc::Q, &v);
        }
    }
});
