use asq2::cli::{exit_code, run, Outcome};
use asq2::Error;
use serde_json::Value;

fn asq2(args: &[&str]) -> Outcome {
    run(args, None)
}

fn json(args: &[&str]) -> Value {
    let out = asq2(args);
    assert_eq!(out.code, 0, "{out:?}");
    serde_json::from_str(&out.stdout).expect("valid JSON")
}

fn temp_config(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("asq2-{}-{name}.cfg", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn golden_solve_finite() {
    let out = asq2(&["solve", "x", "T + 1 + x*y", "--json"]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "{\"kind\":\"finite\",\"roots\":[\"y\",\"x + y + 1/T*x*y\"],\"central_roots\":[],\
         \"locus\":null,\"case\":\"mu-artin-schreier\",\"reductions\":[]}\n"
    );
    let text = asq2(&["solve", "x", "T + 1 + x*y"]);
    assert_eq!(
        text.stdout,
        "kind: finite\nroots:\n  y\n  x + y + 1/T*x*y\ncentral_roots:\nlocus: null\ncase: mu-artin-schreier\nreductions:\n"
    );
}

#[test]
fn golden_solve_locus() {
    let out = asq2(&["solve", "1", "T", "--json"]);
    assert_eq!(
        out.stdout,
        "{\"kind\":\"central-plus-locus\",\"roots\":[],\"central_roots\":[],\
         \"locus\":{\"trace\":\"1\",\"norm\":\"T\",\"status\":\"witness\",\"witness\":\"x\"},\
         \"case\":\"mu-one\",\"reductions\":[]}\n"
    );
    // in a division algebra z^2 = T^2 forces z = T, so the locus has no witness
    let out = asq2(&["solve", "0", "T^2"]);
    assert_eq!(
        out.stdout,
        "kind: central-plus-locus\nroots:\ncentral_roots:\n  T\nlocus.trace: 0\nlocus.norm: T^2\n\
         locus.status: none-within-bound\ncase: mu-zero\nreductions:\n"
    );
}

#[test]
fn golden_solve_with_reduction() {
    let v = json(&["solve", "T*x", "T^2 + T*x*y", "--json"]);
    assert_eq!(v["case"], "mu-artin-schreier");
    assert_eq!(v["reductions"][0], "z = (T)*w, mu -> mu/(T)");
    let v = json(&["solve", "T", "T^2", "--json"]);
    assert_eq!(v["case"], "mu-one");
    assert_eq!(v["reductions"][0], "z = (T)*w, mu -> 1");
}

#[test]
fn golden_classify_and_complement() {
    assert_eq!(asq2(&["classify", "y", "--json"]).stdout, "{\"class\":\"square-central\"}\n");
    assert_eq!(asq2(&["classify", "T*x + y", "--json"]).stdout, "{\"class\":\"general\",\"eta\":\"T\"}\n");
    assert_eq!(asq2(&["classify", "0"]).stdout, "class: zero\n");
    assert_eq!(asq2(&["classify", "T + 1"]).stdout, "class: central\n");
    assert_eq!(asq2(&["complement", "y"]).stdout, "complement: x\nas_value: T\n");
    assert_eq!(
        asq2(&["complement", "y", "--json"]).stdout,
        "{\"complement\":\"x\",\"as_value\":\"T\"}\n"
    );
}

#[test]
fn golden_oracle() {
    let v = json(&["oracle", "x", "y^2 + x*y", "--json"]);
    assert_eq!(v["bound"], 1);
    assert_eq!(v["brute_roots"], serde_json::json!(["y"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["solution"]["roots"][0], "y");
    let v = json(&["oracle", "0", "0", "--bound", "0", "--json"]);
    assert_eq!(v["brute_roots"], serde_json::json!(["0"]));
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["solve", "x + y", "T*y + x", "--json"][..],
        &["selftest", "--samples", "20", "--json"][..],
        &["oracle", "y", "T", "--json"][..],
    ] {
        assert_eq!(asq2(args), asq2(args));
    }
}

fn check_rootset_schema(v: &Value) {
    let obj = v.as_object().expect("object");
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 6, "{keys:?}");
    for k in ["kind", "roots", "central_roots", "locus", "case", "reductions"] {
        assert!(obj.contains_key(k), "missing {k}");
    }
    assert!(v["roots"].as_array().unwrap().iter().all(Value::is_string));
    assert!(v["central_roots"].as_array().unwrap().iter().all(Value::is_string));
    assert!(v["reductions"].as_array().unwrap().iter().all(Value::is_string));
    assert!(v["case"].is_string());
    match v["kind"].as_str().unwrap() {
        "finite" => {
            assert!(v["locus"].is_null());
            assert!(v["central_roots"].as_array().unwrap().is_empty());
        }
        "central-plus-locus" => {
            let locus = v["locus"].as_object().expect("locus object");
            for k in ["trace", "norm", "status"] {
                assert!(locus[k].is_string(), "locus.{k}");
            }
            match locus["status"].as_str().unwrap() {
                "witness" => assert!(locus["witness"].is_string()),
                "none-within-bound" => assert!(!locus.contains_key("witness")),
                other => panic!("status {other}"),
            }
            assert!(v["roots"].as_array().unwrap().is_empty());
        }
        other => panic!("kind {other}"),
    }
}

#[test]
fn json_schema() {
    for (mu, nu) in [
        ("x", "T + 1 + x*y"),
        ("0", "T^2"),
        ("1", "T"),
        ("0", "x + T"),
        ("y", "T*x"),
        ("T*x + y", "1"),
        ("T", "T^2"),
        ("0", "0"),
    ] {
        check_rootset_schema(&json(&["solve", mu, nu, "--json"]));
    }
    let v = json(&["oracle", "x", "T", "--json"]);
    check_rootset_schema(&v["solution"]);
}

#[test]
fn roots_are_sorted() {
    let v = json(&["solve", "x", "T + 1 + x*y", "--json"]);
    let roots: Vec<String> = v["roots"].as_array().unwrap().iter().map(|r| r.as_str().unwrap().into()).collect();
    let h = asq2::quat::QuatAlgebra::standard(asq2::gf2k::Fq::gf2(), 3).unwrap();
    let parsed: Vec<_> = roots.iter().map(|r| asq2::expr::parse_element(&h, r).unwrap()).collect();
    let mut sorted = parsed.clone();
    sorted.sort();
    assert_eq!(parsed, sorted);
}

#[test]
fn exit_code_usage_and_parse_errors() {
    for args in [
        &["solve", "x +", "1"][..],
        &["solve", "x", "z"][..],
        &["classify", "(x"][..],
        &["solve", "1/0", "1"][..],
        &["frobnicate"][..],
        &["solve", "x"][..],
        &[][..],
        &["complement", "x"][..],
        &["oracle", "x", "T", "--bound", "9"][..],
    ] {
        let out = asq2(args);
        assert_eq!(out.code, 1, "{args:?}: {out:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = asq2(&["solve", "x + * y", "1"]);
    assert_eq!(
        out.stderr,
        "error: syntax error at position 4: expected `x`, `y`, `T`, `g`, a number or `(`, found `*`\n"
    );
    assert_eq!(asq2(&["solve", "w", "1"]).stderr, "error: unknown symbol `w`\n");
}

#[test]
fn exit_code_config_errors() {
    let missing = asq2(&["--config", "/nonexistent/asq2.cfg", "classify", "x"]);
    assert_eq!(missing.code, 1);
    let bad = temp_config("bad", "colour = blue\n");
    assert_eq!(asq2(&["--config", &bad, "classify", "x"]).code, 1);
}

#[test]
fn exit_code_split_algebra() {
    let split = temp_config("split", "alpha = T\nbeta = T\n");
    let out = asq2(&["--config", &split, "classify", "x"]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stderr, "error: algebra fails the division preflight: beta = T is the norm of x from F[x]\n");
    let as_root = temp_config("as-root", "alpha = T^2 + T\n");
    assert_eq!(asq2(&["--config", &as_root, "classify", "x"]).code, 2);
}

#[test]
fn exit_code_zero_divisor_at_runtime() {
    // beta = T^2 is visibly a norm only at witness degree 1, so a bound of 0 lets it through
    let cfg = temp_config("hidden-split", "alpha = T\nbeta = T^2\nwitness_bound = 0\n");
    assert_eq!(asq2(&["--config", &cfg, "classify", "y"]).code, 0);
    let out = asq2(&["--config", &cfg, "classify", "1/(y + T)"]);
    assert_eq!(out.code, 2, "{out:?}");
    assert!(out.stderr.contains("not a division algebra"));
}

#[test]
fn exit_code_internal() {
    assert_eq!(exit_code(&Error::Internal("x".into())), 3);
    assert_eq!(exit_code(&Error::NotDivision("x".into())), 2);
    assert_eq!(exit_code(&Error::SplitAlgebra("x".into())), 2);
    assert_eq!(exit_code(&Error::Syntax { pos: 0, msg: "x".into() }), 1);
}

#[test]
fn config_file_and_environment() {
    let f4 = temp_config("f4", "k = 2\nbeta = T + g\n");
    let via_flag = asq2(&["--config", &f4, "classify", "g*x + y", "--json"]);
    assert_eq!(via_flag.stdout, "{\"class\":\"general\",\"eta\":\"g\"}\n");
    let via_env = run(&["classify", "g*x + y", "--json"], Some(&f4));
    assert_eq!(via_env, via_flag);
    // the flag wins over the environment
    let bad = temp_config("env-bad", "colour = blue\n");
    assert_eq!(run(&["--config", &f4, "classify", "x"], Some(&bad)).code, 0);
}

#[test]
fn selftest_passes() {
    let out = asq2(&["selftest", "--samples", "40"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("selftest: pass\n"));
    let v = json(&["selftest", "--samples", "20", "--json"]);
    assert_eq!(v["passed"], true);
    assert!(v["suites"].as_array().unwrap().len() >= 10);
}

#[test]
fn help_is_not_an_error() {
    let out = asq2(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("selftest"));
}
