// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::structurable::OperatorKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = OperatorKind::parse(s);
    }
});
