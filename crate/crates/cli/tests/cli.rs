use std::process::{Command, Output};

use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_quadrantal"));
    cmd.args(args).env_remove("QUADRANTAL_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn poly_commands() {
    let v = json(&["poly", "divrem", "--a", "1*x^3 + -1", "--b", "-1 + 1*x"]);
    assert_eq!(v["quotient"]["text"], "1 + 1*x + 1*x^2");
    assert_eq!(v["remainder"]["text"], "0");

    let v = json(&["poly", "gcd", "--a", "[\"-1\", \"0\", \"1\"]", "--b", "-1 + 1*x"]);
    assert_eq!(v["gcd"]["coeffs"], serde_json::json!(["-1", "1"]));

    let v = json(&["poly", "eisenstein", "--p", "2 + 4*x + 1*x^3"]);
    assert_eq!(v["witness"], "2");
    let v = json(&["poly", "eisenstein", "--p", "1 + 1*x^2"]);
    assert!(v["witness"].is_null());

    let v = json(&["poly", "cyclotomic", "--p", "5"]);
    assert_eq!(v["coeffs"], serde_json::json!(["1", "1", "1", "1", "1"]));
    assert_eq!(code(&["poly", "cyclotomic", "--p", "6"]), 3);
    assert_eq!(code(&["poly", "divrem", "--a", "1*x", "--b", "0"]), 3);
    assert_eq!(code(&["poly", "divrem", "--a", "1*y", "--b", "1"]), 2);
}

#[test]
fn field_commands() {
    let v = json(&["field", "trace-norm", "--minpoly", "-2 + 1*x^2", "--element", "1 + 1*x"]);
    assert_eq!((v["trace"].as_str(), v["norm"].as_str()), (Some("2"), Some("-1")));
    assert_eq!(v["algebraic_integer"], true);

    let v = json(&[
        "field", "trace-norm", "--minpoly", "{\"minpoly\": [\"-2\", \"0\", \"1\"]}",
        "--element", "{\"coords\": [\"1/2\", \"0\"]}",
    ]);
    assert_eq!(v["norm"], "1/4");

    let v = json(&["field", "discriminant", "--minpoly", "-5 + 1*x^2"]);
    assert_eq!(v["discriminant"], "20");
    let v = json(&[
        "field", "discriminant", "--minpoly", "-5 + 1*x^2", "--element", "1", "--element",
        "1/2 + 1/2*x",
    ]);
    assert_eq!(v["discriminant"], "5");
    let v = json(&["field", "discriminant", "--minpoly", "1 + 1*x + 1*x^2 + 1*x^3 + 1*x^4"]);
    assert_eq!(v["discriminant"], "125");

    let v = json(&["field", "minpoly-of", "--minpoly", "-2 + 1*x^2", "--element", "1/2*x"]);
    assert_eq!(v["minimal_polynomial"]["text"], "-1/2 + 1*x^2");
    assert_eq!(v["denominator_clearing"]["n"], "2");

    let v = json(&["field", "compose", "--p", "-2 + 1*x^2", "--q", "-3 + 1*x^2"]);
    assert_eq!(v["text"], "1 + -10*x^2 + 1*x^4");
    let v = json(&["field", "compose", "--p", "-2 + 1*x^2", "--q", "-3 + 1*x^2", "--op", "product"]);
    assert_eq!(v["text"], "36 + -12*x^2 + 1*x^4");

    let v = json(&["field", "primitive-element", "--p", "-2 + 1*x^2", "--q", "-3 + 1*x^2"]);
    assert_eq!(v["c"], 1);

    assert_eq!(code(&["field", "trace-norm", "--minpoly", "x^^2", "--element", "1"]), 2);
    assert_eq!(code(&["field", "trace-norm", "--minpoly", "-1 + 2*x^2", "--element", "1"]), 3);
}

#[test]
fn quad_ring_and_elements() {
    let v = json(&["quad", "ring", "--m", "-23"]);
    assert_eq!(v["discriminant"], "-23");
    assert_eq!(v["omega_kind"], "half_one_plus_sqrtm");
    assert_eq!(v["signature"], serde_json::json!([0, 1]));
    let v = json(&["quad", "ring", "--m", "2"]);
    assert_eq!(v["discriminant"], "8");

    let v = json(&["quad", "element", "--m", "-5", "--x", "1+2*sqrt(-5)"]);
    assert_eq!(v["norm"], "21");
    assert_eq!(v["is_unit"], false);
    let v = json(&["quad", "element", "--m", "-3", "--x", "w"]);
    assert_eq!(v["is_unit"], true);

    assert_eq!(code(&["quad", "ring", "--m", "12"]), 3);
    assert_eq!(code(&["quad", "ring", "--m", "1"]), 3);
    assert_eq!(code(&["quad", "ring", "--m", "x"]), 2);
}

#[test]
fn quad_split_and_factor() {
    let v = json(&["quad", "split", "--m", "-5", "--q", "7"]);
    assert_eq!(v["type"], "split");
    let bs: Vec<&str> = v["factors"].as_array().unwrap().iter().map(|f| f["ideal"]["b"].as_str().unwrap()).collect();
    assert_eq!(bs, ["3", "4"]);
    let v = json(&["quad", "split", "--m", "-5", "--q", "2"]);
    assert_eq!((v["type"].as_str(), v["e"].as_u64()), (Some("ramified"), Some(2)));
    assert_eq!(code(&["quad", "split", "--m", "-5", "--q", "9"]), 3);

    let v = json(&["quad", "factor", "--m", "-5", "--ideal", "(21)"]);
    assert_eq!(v["factors"].as_array().unwrap().len(), 4);
    assert!(v.get("verification").is_none());
    let v = json(&["quad", "factor", "--m", "-5", "--ideal", "(21)", "--verify"]);
    assert_eq!(v["verification"]["product_equals_input"], true);
    assert_eq!(v["verification"]["refactorization_matches"], true);
    assert_eq!(code(&["quad", "factor", "--m", "-5", "--ideal", "(1)"]), 3);
    assert_eq!(code(&["quad", "factor", "--m", "-5", "--ideal", "21"]), 2);
}

#[test]
fn quad_ideal_operations() {
    let base = ["quad", "ideal", "--m", "-5"];
    let with = |extra: &[&str]| {
        let args: Vec<&str> = base.iter().chain(extra).copied().collect();
        json(&args)
    };
    let v = with(&["--op", "norm", "--ideal", "(2, 1+sqrt(-5))"]);
    assert_eq!(v["result"], "2");
    let v = with(&["--op", "product", "--ideal", "(2, 1+sqrt(-5))", "--other", "(2, 1+sqrt(-5))"]);
    assert_eq!(v["result"]["generators"], "(2)");
    let v = with(&["--op", "gcd", "--ideal", "(4)", "--other", "(6)"]);
    assert_eq!(v["result"]["generators"], "(2)");
    let v = with(&["--op", "quotient", "--ideal", "(2)", "--other", "(6)"]);
    assert_eq!(v["result"]["generators"], "(3)");
    let v = with(&["--op", "quotient", "--ideal", "(3)", "--other", "(2)"]);
    assert!(v["result"].is_null());
    let v = with(&["--op", "conjugate", "--ideal", "(3, 1+sqrt(-5))"]);
    assert_eq!(v["result"]["ideal"]["b"], "2");
    let v = with(&["--op", "contains", "--ideal", "(3, 1+sqrt(-5))", "--other", "1-2*sqrt(-5)"]);
    assert_eq!(v["result"], true);
    assert_eq!(code(&["quad", "ideal", "--m", "-5", "--op", "product", "--ideal", "(2)"]), 2);
}

#[test]
fn quad_principal_minkowski_classgroup() {
    let v = json(&["quad", "principal", "--m", "-5", "--ideal", "(2, 1+sqrt(-5))"]);
    assert_eq!(v["principal"], false);
    let v = json(&["quad", "principal", "--m", "-5", "--ideal", "(7)"]);
    assert_eq!(v["generator"]["text"], "7");

    let v = json(&["quad", "minkowski", "--m", "-5"]);
    assert_eq!(v["norm_limit"], 2);
    assert_eq!(v["ceiling"], 3);

    let v = json(&["quad", "classgroup", "--m", "-23", "--format", "json"]);
    assert_eq!(v["h"], 3);
    assert_eq!(v["structure"], serde_json::json!([3]));
    let v = json(&["quad", "classgroup", "--m", "-5", "--verify"]);
    for key in ["identity", "commutative", "associative", "inverses", "inverse_products_principal"] {
        assert_eq!(v["verification"][key], true, "{key}");
    }
}

#[test]
fn units_command() {
    let v = json(&["units", "--m", "2"]);
    assert_eq!(v["fundamental_unit"], serde_json::json!({"a": "1", "b": "1"}));
    assert_eq!(v["rank"], 1);
    assert_eq!(v["precision_digits"], 50);
    assert!(v["regulator"].as_str().unwrap().starts_with("0.8813735870"));

    let v = json(&["units", "--m", "-1"]);
    assert_eq!((v["w"].as_u64(), v["rank"].as_u64()), (Some(4), Some(0)));
    assert!(v["fundamental_unit"].is_null());

    let v = json(&["units", "--m", "5", "--pell", "minus-four", "--continued-fraction"]);
    assert_eq!(v["pell"]["solution"], serde_json::json!({"x": "1", "y": "1"}));
    assert_eq!(v["continued_fraction"]["period"], 1);
    let v = json(&["units", "--m", "3", "--pell", "minus-one"]);
    assert!(v["pell"]["solution"].is_null());

    let v = json(&["units", "--m", "2", "--member", "-7-5*sqrt(2)"]);
    assert_eq!((v["membership"]["k"].as_u64(), v["membership"]["a"].as_i64()), (Some(1), Some(3)));
    assert_eq!(code(&["units", "--m", "2", "--member", "2"]), 3);
    assert_eq!(code(&["units", "--m", "-5", "--continued-fraction"]), 3);

    let out = run_env(&["units", "--m", "2"], &[("QUADRANTAL_PRECISION", "40")]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_digits"], 40);
    assert_eq!(v["regulator"].as_str().unwrap().len(), 42);
    let out = run_env(&["units", "--m", "2"], &[("QUADRANTAL_PRECISION", "10")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cyclo_commands() {
    let v = json(&["cyclo", "split", "--m", "12", "--q", "2"]);
    assert_eq!((v["e"].as_u64(), v["f"].as_u64(), v["g"].as_u64()), (Some(2), Some(2), Some(1)));
    assert_eq!(v["phi_m"], 4);
    let v = json(&["cyclo", "split", "--m", "5", "--q", "11"]);
    assert_eq!(v["classification"], "split");
    let v = json(&["cyclo", "info", "--m", "7"]);
    assert_eq!(v["discriminant_prime_case"], "-16807");
    let v = json(&["cyclo", "class-number-one"]);
    assert_eq!(v["imaginary_quadratic"].as_array().unwrap().len(), 9);
    assert_eq!(code(&["cyclo", "split", "--m", "12", "--q", "4"]), 3);
    assert_eq!(code(&["cyclo", "split", "--m", "2", "--q", "3"]), 2);
}

#[test]
fn census_command() {
    let v = json(&["census", "--m", "-5", "--k", "1000"]);
    assert_eq!(v["h"], 2);
    assert!(v.get("per_class").is_none());
    let v = json(&["census", "--m", "-5", "--k", "1000", "--per-class"]);
    let counts: u64 = v["per_class"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(counts, v["z_k"].as_u64().unwrap());

    let dir = std::env::temp_dir().join(format!("quadrantal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.csv");
    json(&["census", "--m", "2", "--k", "100", "--csv", path.to_str().unwrap()]);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("k,z_k,ratio\n"));
    assert!(csv.trim_end().lines().last().unwrap().starts_with("100,"));
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&["census", "--m", "-5", "--k", "0"]), 2);
}

#[test]
fn usage_errors_and_text_output() {
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
    let out = run(&["quad", "classgroup", "--m", "2", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "h: 1"));
    assert!(text.lines().any(|l| l == "structure: []"));
}

#[test]
fn deterministic_output() {
    let args = ["quad", "classgroup", "--m", "-14", "--verify"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let args = ["census", "--m", "-23", "--k", "500", "--per-class"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
