// SPDX-License-Identifier: Apache-2.0
#![no_main]
use bioctonion::hilbert::Place;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Some(p) = Place::parse(s) {
            assert_eq!(Place::parse(&p.to_string()), Some(p));
        }
    }
});
