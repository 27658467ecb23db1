// SPDX-License-Identifier: Apache-2.0
use bioctonion::fields::FieldDesc;
use bioctonion::json as js;
use bioctonion::qforms::QuadraticForm;
use bioctonion::selftest::search_small_zero;
use serde_json::{json, Value};
use std::process::Command;

fn bioct(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bioct")).args(args).output().expect("run bioct");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn ok_json(args: &[&str]) -> Value {
    let (code, out, err) = bioct(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

const SPLIT_88: &str = r#"{"kind":"decomposable","mu1":["1","1","1"],"mu2":["1","1","1"]}"#;
const DIV_DIV: &str = r#"{"kind":"decomposable","mu1":["-1","-1","-1"],"mu2":["-1","-1","-1"]}"#;
const TOWER_Q: &str = r#"{"kind":"laurent","base":{"kind":"Q"},"vars":["t1"]}"#;

#[test]
fn tkk_profile_of_split_88() {
    let v = ok_json(&["tkk-profile", "--field", "F5", "--in", SPLIT_88]);
    assert_eq!(v, json!({"dims":[14,64,92,64,14],"total":248,"type":"E8"}));
    assert_eq!(js::profile_from_json(&v).unwrap().total, 248);
}

#[test]
fn invariants_of_div_div_over_q() {
    let v = ok_json(&["algebra-invariants", "--field", "Q", "--in", DIV_DIV]);
    assert_eq!(v["b6"], json!({"degree": 6, "backend": "Q", "bit": 1}));
    assert_eq!(v["b1"]["class"], "1");
    assert_eq!(v["b3"]["bit"], 0);
    assert_eq!(v["division"], false);
    assert_eq!(v["decomposable"], true);
    let r = js::report_from_json(&v, &FieldDesc::Q).unwrap();
    assert_eq!(js::report_to_json(&r), v);
    assert_eq!(r.albert_form.unwrap().signature().unwrap(), 0);
}

#[test]
fn e3_of_isotropic_pfister_is_zero() {
    let q = QuadraticForm::pfister(&FieldDesc::Q, &[FieldDesc::Q.from_i64(2), FieldDesc::Q.from_i64(3), FieldDesc::Q.from_i64(5)]).unwrap();
    let ints: Vec<i128> = q.entries.iter().map(|s| s.as_q().unwrap().to_integer().try_into().unwrap()).collect();
    // an isotropic Pfister form is hyperbolic, so every e_n vanishes on it
    assert!(search_small_zero(&ints));
    let input = js::form_to_json(&q).to_string();
    let v = ok_json(&["form-en", "--n", "3", "--in", &input]);
    let c = js::class_from_json(&FieldDesc::Q, &v).unwrap();
    assert!(c.is_zero());
    assert_eq!(c.degree, 3);
}

#[test]
fn batch_keeps_input_order_and_reports_errors() {
    let input = format!(r#"[{DIV_DIV}, {{"kind":"decomposable","mu1":["-1","-1","-1"]}}, {{"kind":"bogus"}}]"#);
    let (code, out, _) = bioct(&["algebra-division", "--field", "Q", "--in", &input]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["division"], false);
    assert_eq!(v[1]["division"], true);
    assert_eq!(v[1]["certificate"]["kind"], "anisotropic");
    assert_eq!(v[2]["exit"], 1);
    let verdict = js::verdict_from_json(&FieldDesc::Q, &v[0]).unwrap();
    assert_eq!(js::verdict_to_json(&FieldDesc::Q, &verdict), v[0]);
}

#[test]
fn isotopy_and_similarity() {
    let pair = r#"{"a":{"kind":"decomposable","mu1":[-1,-1,-1],"mu2":[1,2,3]},"b":{"kind":"decomposable","mu1":[1,2,3],"mu2":[-1,-1,-1]}}"#;
    let v = ok_json(&["algebra-isotopic", "--field", "Q", "--in", pair]);
    assert_eq!(v["isotopic"], true);
    assert!(matches!(js::isotopy_from_json(&FieldDesc::Q, &v), Ok(bioctonion::invariants::Isotopy::Isotopic(_))));
    let forms = r#"{"a":{"entries":["1","1"]},"b":{"entries":["t1","t1"]}}"#;
    let v = ok_json(&["form-similar", "--field", TOWER_Q, "--in", forms]);
    assert_eq!(v, json!({"similar": true, "scale": "t1"}));
}

#[test]
fn undecided_exits_with_three() {
    let forms = r#"{"a":{"entries":["1","1"]},"b":{"entries":["1","3"]}}"#;
    let (code, _, err) = bioct(&["form-similar", "--field", TOWER_Q, "--in", forms]);
    assert_eq!(code, 3, "{err}");
    let v = ok_json(&["form-similar", "--allow-undecided", "--field", TOWER_Q, "--in", forms]);
    assert_eq!(v["undecided"], true);
}

#[test]
fn invalid_input_exits_with_one() {
    for (args, what) in [
        (vec!["form-witt", "--field", "Q", "--in", "{oops"], "syntax"),
        (vec!["form-witt", "--field", "Q", "--in", r#"{"entries":["1","0"]}"#], "zero entry"),
        (vec!["form-witt", "--in", r#"{"entries":["1"]}"#], "no field"),
        (vec!["tkk-profile", "--field", "F6", "--in", SPLIT_88], "composite modulus"),
        (vec!["algebra-build", "--field", "Q", "--in", r#"{"kind":"corestriction","d":"4","mu":["1"]}"#], "square d"),
        (vec!["rost-construct", "--field", "Q", "--in", r#"{"kind":"two-pfister","c":"1","phi1":["1"],"phi2":["2"]}"#], "short Pfister"),
    ] {
        let (code, _, _) = bioct(&args);
        assert_eq!(code, 1, "{what}");
    }
}

#[test]
fn witt_decompose_and_rost_construct_round_trip() {
    let v = ok_json(&["form-witt", "--field", "Q", "--in", r#"{"entries":[1,-1,2,3]}"#]);
    assert_eq!(v["hyperbolic"], 1);
    let w = js::witt_from_json(&v, None).unwrap();
    assert_eq!(js::witt_to_json(&w), v);
    let spec = r#"{"kind":"two-pfister","c":"3","phi1":["-1","2","5"],"phi2":["3","-7","11"]}"#;
    let v = ok_json(&["rost-construct", "--field", "Q", "--in", spec]);
    let q = js::form_from_json(&v["form"], None).unwrap();
    assert_eq!(q.dim(), 14);
    assert_eq!(v["descriptor"]["kind"], "decomposable");
}

#[test]
fn build_and_decompose() {
    let v = ok_json(&["algebra-build", "--field", "Q", "--in", DIV_DIV]);
    assert_eq!(v["dim"], 64);
    assert_eq!(v["skew_dim"], 14);
    let cor = r#"{"kind":"corestriction","d":"2","mu":[[1,1],"3","2+4*sqrt"]}"#;
    let v = ok_json(&["algebra-decompose", "--field", "F5", "--in", cor]);
    assert_eq!(v["kind"], "corestriction");
    assert_eq!(v["dim"], 8);
    let v = ok_json(&["algebra-decompose", "--field", "F5", "--in", SPLIT_88]);
    assert_eq!(v["kind"], "decomposable");
    assert_eq!(v["factors"][0]["dim"], 8);
}

#[test]
fn text_output_and_out_file() {
    let (code, out, _) = bioct(&["algebra-invariants", "--format", "text", "--field", "Q", "--in", DIV_DIV]);
    assert_eq!(code, 0);
    assert!(out.contains("b6 = (-1)^6"), "{out}");
    let path = std::env::temp_dir().join(format!("bioct-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = bioct(&["tkk-profile", "--field", "F7", "--in", SPLIT_88, "--out", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["total"], 248);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn selftest_is_deterministic() {
    let args = ["selftest", "--criteria", "6,10", "--seed", "7", "--trials", "20"];
    let a = ok_json(&args);
    let b = ok_json(&args);
    assert_eq!(a, b);
    assert_eq!(a["passed"], 2);
    let (code, _, _) = bioct(&["selftest", "--criteria", "11"]);
    assert_eq!(code, 1);
}
