// SPDX-License-Identifier: Apache-2.0
use bioctonion::algebras::{build_product, decompose, Decomposition};
use bioctonion::cohomology::e_n;
use bioctonion::fields::{Field, FieldDesc};
use bioctonion::invariants::{algebra_report, is_division, is_isotopic, rost_construct, DivisionInput, Isotopy};
use bioctonion::json::{self as js, parse};
use bioctonion::qforms::Similarity;
use bioctonion::selftest::{self, Config};
use bioctonion::structurable::albert_data;
use bioctonion::tkk::graded_profile;
use bioctonion::{with_field, Error};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bioct", version, about = "Bi-octonion algebras, Albert forms and their cohomological invariants")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Default ground field for inputs without a "field" key: Q, F7, or field JSON.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Input file, `-` for stdin, or inline JSON. A JSON array is processed as a batch.
    #[arg(long = "in", global = true)]
    input: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Report undecided verdicts instead of exiting with status 3.
    #[arg(long, global = true)]
    allow_undecided: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Verb {
    /// Build an algebra and verify its axioms.
    AlgebraBuild,
    /// b-invariants, division verdict and Albert form.
    AlgebraInvariants,
    AlgebraDivision,
    /// Isotopy of two algebras, given as {"a": …, "b": …}.
    AlgebraIsotopic,
    /// Recover the factors or the corestriction data.
    AlgebraDecompose,
    /// Anisotropic kernel and Witt index of a form.
    FormWitt,
    /// The invariant e_n of a form in I^n.
    FormEn {
        #[arg(long)]
        n: usize,
    },
    /// Similarity of two forms, given as {"a": …, "b": …}.
    FormSimilar,
    /// Graded dimensions of the TKK Lie algebra.
    TkkProfile,
    /// The 14-dimensional form of a two-Pfister or transfer construction.
    RostConstruct,
    /// Run the acceptance suite.
    Selftest {
        /// Restrict to these criteria.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

enum Fail {
    Input(String),
    Internal(String),
    Undecided(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Input(_) => 1,
            Fail::Internal(_) => 2,
            Fail::Undecided(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fail::Input(m) | Fail::Internal(m) | Fail::Undecided(m) => m,
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Fail::Internal(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

struct Out {
    json: Value,
    text: String,
}

struct Ctx {
    field: Option<FieldDesc>,
    allow_undecided: bool,
}

impl Ctx {
    fn field(&self) -> Option<&FieldDesc> {
        self.field.as_ref()
    }

    fn undecided(&self, what: &str) -> Result<(), Fail> {
        if self.allow_undecided {
            Ok(())
        } else {
            Err(Fail::Undecided(format!("{what} is undecided; pass --allow-undecided to report it")))
        }
    }
}

fn pair(v: &Value) -> Result<(&Value, &Value), Fail> {
    match v {
        Value::Object(o) => match (o.get("a"), o.get("b")) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Fail::Input("expected {\"a\": …, \"b\": …}".into())),
        },
        _ => Err(Fail::Input("expected an object with keys a and b".into())),
    }
}

fn algebra_build(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let desc = js::desc_from_json(v, ctx.field())?;
    let out = with_field!(desc.field(), f => {
        let a = build_product(&f, &desc)?;
        a.check_axioms()?;
        let ad = albert_data(&a)?;
        Ok::<_, Error>(json!({
            "descriptor": js::desc_to_json(&desc),
            "dim": a.dim,
            "factor_dims": a.factor_dims(),
            "skew_dim": a.skew_basis().len(),
            "center_dim": a.center().len(),
            "albert_form": js::form_to_json(&ad.form()?),
        }))
    })?;
    let text = format!(
        "dim {}  factors {}  skew {}  center {}\nalbert form {}",
        out["dim"], out["factor_dims"], out["skew_dim"], out["center_dim"], out["albert_form"]["entries"]
    );
    Ok(Out { json: out, text })
}

fn algebra_invariants(ctx: &Ctx, v: &Value, id: &str) -> Result<Out, Fail> {
    let desc = js::desc_from_json(v, ctx.field())?;
    let id = v.get("id").and_then(Value::as_str).unwrap_or(id);
    let r = algebra_report(id, &desc)?;
    let mut text = String::new();
    for (k, c) in &r.invariants {
        text.push_str(&format!("{k} = {c}\n"));
    }
    text.push_str(&format!("division = {:?}\ndecomposable = {:?}", r.division, r.decomposable));
    if let Some(q) = &r.albert_form {
        text.push_str(&format!("\nalbert form = {q}"));
    }
    Ok(Out { json: js::report_to_json(&r), text })
}

fn algebra_division(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let is_spec = matches!(v.get("kind").and_then(Value::as_str), Some("two-pfister" | "transfer"));
    let (input, k) = if is_spec {
        let s = js::rost_spec_from_json(v, ctx.field())?;
        let k = s.field().clone();
        (DivisionInput::Form(s), k)
    } else {
        let d = js::desc_from_json(v, ctx.field())?;
        let k = d.field().clone();
        (DivisionInput::Algebra(d), k)
    };
    let verdict = is_division(&input)?;
    let text = format!("division = {}\ncertificate = {:?}", verdict.division, verdict.certificate);
    Ok(Out { json: js::verdict_to_json(&k, &verdict), text })
}

fn algebra_isotopic(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let (a, b) = pair(v)?;
    let (da, db) = (js::desc_from_json(a, ctx.field())?, js::desc_from_json(b, ctx.field())?);
    let iso = is_isotopic(&da, &db)?;
    if iso == Isotopy::Undecided {
        ctx.undecided("isotopy")?;
    }
    let text = match &iso {
        Isotopy::Isotopic(c) => format!("isotopic, Q_b = <{}> Q_a", da.field().fmt_scalar(c)),
        Isotopy::NotIsotopic => "not isotopic".into(),
        Isotopy::Undecided => "undecided".into(),
    };
    Ok(Out { json: js::isotopy_to_json(da.field(), &iso), text })
}

fn algebra_decompose(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let desc = js::desc_from_json(v, ctx.field())?;
    let out = with_field!(desc.field(), f => {
        let a = build_product(&f, &desc)?;
        Ok::<_, Error>(match decompose(&a)? {
            Decomposition::Factors(c1, c2) => json!({
                "kind": "decomposable",
                "factors": [
                    {"dim": c1.dim, "norm_form": js::form_to_json(&c1.norm_form()?)},
                    {"dim": c2.dim, "norm_form": js::form_to_json(&c2.norm_form()?)},
                ],
            }),
            Decomposition::CorestrictionData { d, octonion } => json!({
                "kind": "corestriction",
                "d": f.descriptor().fmt_scalar(&f.to_scalar(&d)),
                "dim": octonion.dim,
                "norm_form": js::form_to_json(&octonion.norm_form()?),
            }),
        })
    })?;
    let text = match out["kind"].as_str() {
        Some("decomposable") => format!(
            "C1 ⊗ C2 with norm forms {} and {}",
            out["factors"][0]["norm_form"]["entries"], out["factors"][1]["norm_form"]["entries"]
        ),
        _ => format!("cor of a composition algebra over k(sqrt({})), norm form {}", out["d"].as_str().unwrap_or("?"), out["norm_form"]["entries"]),
    };
    Ok(Out { json: out, text })
}

fn form_witt(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let q = js::form_from_json(v, ctx.field())?;
    let w = q.witt_decompose()?;
    let text = format!("kernel {}  hyperbolic planes {}", w.kernel, w.hyperbolic);
    Ok(Out { json: js::witt_to_json(&w), text })
}

fn form_en(ctx: &Ctx, v: &Value, n: usize) -> Result<Out, Fail> {
    let q = js::form_from_json(v, ctx.field())?;
    let c = e_n(n, &q)?;
    Ok(Out { text: format!("e{n} = {c}"), json: js::class_to_json(&c) })
}

fn form_similar(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let (a, b) = pair(v)?;
    let (qa, qb) = (js::form_from_json(a, ctx.field())?, js::form_from_json(b, ctx.field())?);
    let s = qa.similar(&qb)?;
    let k = &qa.field;
    let (json, text) = match &s {
        Similarity::Similar(c) => (json!({"similar": true, "scale": k.fmt_scalar(c)}), format!("b ≅ <{}> a", k.fmt_scalar(c))),
        Similarity::NotSimilar => (json!({"similar": false}), "not similar".to_string()),
        Similarity::Undecided => {
            ctx.undecided("similarity")?;
            (json!({"similar": null, "undecided": true}), "undecided".to_string())
        }
    };
    Ok(Out { json, text })
}

fn tkk_profile(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let desc = js::desc_from_json(v, ctx.field())?;
    let p = with_field!(desc.field(), f => graded_profile(&build_product(&f, &desc)?))?;
    let mut text = format!("{:?}  total {}  type {}", p.dims, p.total, p.type_label);
    if let Some(n) = &p.note {
        text.push_str(&format!("  ({n})"));
    }
    Ok(Out { json: js::profile_to_json(&p), text })
}

fn rost(ctx: &Ctx, v: &Value) -> Result<Out, Fail> {
    let spec = js::rost_spec_from_json(v, ctx.field())?;
    let r = rost_construct(&spec)?;
    let text = format!("form {}", r.form);
    let json = json!({"form": js::form_to_json(&r.form), "descriptor": r.desc.as_ref().map(js::desc_to_json)});
    Ok(Out { json, text })
}

fn run_one(cli: &Cli, ctx: &Ctx, v: &Value, index: usize) -> Result<Out, Fail> {
    match &cli.verb {
        Verb::AlgebraBuild => algebra_build(ctx, v),
        Verb::AlgebraInvariants => algebra_invariants(ctx, v, &index.to_string()),
        Verb::AlgebraDivision => algebra_division(ctx, v),
        Verb::AlgebraIsotopic => algebra_isotopic(ctx, v),
        Verb::AlgebraDecompose => algebra_decompose(ctx, v),
        Verb::FormWitt => form_witt(ctx, v),
        Verb::FormEn { n } => form_en(ctx, v, *n),
        Verb::FormSimilar => form_similar(ctx, v),
        Verb::TkkProfile => tkk_profile(ctx, v),
        Verb::RostConstruct => rost(ctx, v),
        Verb::Selftest { .. } => unreachable!(),
    }
}

fn read_input(spec: Option<&str>) -> Result<String, Fail> {
    let spec = spec.unwrap_or("-");
    let t = spec.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(spec.to_string());
    }
    let mut s = String::new();
    if spec == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Fail::Input(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(spec).map_err(|e| Fail::Input(format!("{spec}: {e}")))?;
    }
    Ok(s)
}

fn selftest(cli: &Cli, criteria: &[u8]) -> Result<(Out, u8), Fail> {
    let cfg = Config { seed: cli.seed, trials: cli.trials };
    let ids: Vec<u8> = if criteria.is_empty() { selftest::CRITERIA.iter().map(|c| c.0).collect() } else { criteria.to_vec() };
    if let Some(bad) = ids.iter().find(|i| !(1..=10).contains(*i)) {
        return Err(Fail::Input(format!("no criterion {bad}")));
    }
    let results: Vec<_> = ids.iter().map(|&id| selftest::run_criterion(id, &cfg)).collect();
    let passed = results.iter().filter(|r| r.passed()).count();
    let failures = results.iter().any(|r| !r.failures.is_empty());
    let mut text: Vec<String> = results.iter().map(|r| r.line()).collect();
    text.push(format!("{passed} passed, {} failed", results.len() - passed));
    let json = json!({
        "seed": cli.seed,
        "trials": cli.trials,
        "passed": passed,
        "failed": results.len() - passed,
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed(),
            "checks": r.checks,
            "failures": r.failures,
            "deviations": r.deviations,
            "notes": r.notes,
        })).collect::<Vec<_>>(),
    });
    Ok((Out { json, text: text.join("\n") }, if failures { 2 } else { 0 }))
}

fn execute(cli: &Cli) -> Result<(Out, u8), Fail> {
    if let Verb::Selftest { criteria } = &cli.verb {
        return selftest(cli, criteria);
    }
    let field = cli.field.as_deref().map(js::field_from_str).transpose()?;
    let ctx = Ctx { field, allow_undecided: cli.allow_undecided };
    let doc = parse(&read_input(cli.input.as_deref())?)?;
    match &doc {
        Value::Array(items) => {
            let results: Vec<Result<Out, Fail>> = items.par_iter().enumerate().map(|(i, v)| run_one(cli, &ctx, v, i)).collect();
            let code = results.iter().map(|r| r.as_ref().err().map_or(0, Fail::code)).max().unwrap_or(0);
            let mut text = Vec::new();
            let mut arr = Vec::new();
            for (i, r) in results.into_iter().enumerate() {
                match r {
                    Ok(o) => {
                        text.push(format!("[{i}]\n{}", o.text));
                        arr.push(o.json);
                    }
                    Err(e) => {
                        text.push(format!("[{i}] error: {}", e.message()));
                        arr.push(json!({"error": e.message(), "exit": e.code()}));
                    }
                }
            }
            Ok((Out { json: Value::Array(arr), text: text.join("\n") }, code))
        }
        single => run_one(cli, &ctx, single, 0).map(|o| (o, 0)),
    }
}

fn emit(cli: &Cli, out: &Out) -> Result<(), Fail> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).map_err(|e| Fail::Internal(e.to_string()))?,
        Format::Text => out.text.clone(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body + "\n").map_err(|e| Fail::Input(format!("{path}: {e}"))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli).and_then(|(out, code)| emit(&cli, &out).map(|_| code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bioct: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
