// SPDX-License-Identifier: Apache-2.0
use bioctonion::selftest::{run_criterion, Config, CRITERIA};
use std::process::ExitCode;

/// Criteria whose literal statement is known to fail while a corrected form holds.
const DOCUMENTED_DEVIATIONS: [u8; 1] = [7];

fn main() -> ExitCode {
    let cfg = Config { seed: 2024, trials: None };
    let mut broken = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &cfg);
        println!("{}", r.line());
        if !r.failures.is_empty() || (!r.deviations.is_empty() && !DOCUMENTED_DEVIATIONS.contains(&id)) {
            broken.push(id);
        }
    }
    if broken.is_empty() {
        println!("acceptance: only documented deviations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {broken:?}");
        ExitCode::FAILURE
    }
}
