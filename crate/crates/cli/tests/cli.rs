use std::process::{Command, Output};

use serde_json::Value;

fn matpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn coeffs(v: &Value) -> Vec<String> {
    v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn flow_of_k5() {
    for method in ["partitions", "egf", "tutte"] {
        let out = matpoly(&["flow-kn", "--n", "5", "--method", method]);
        assert!(out.status.success());
        assert_eq!(coeffs(&json(&out)), ["51", "-147", "175", "-115", "45", "-10", "1"]);
    }
}

#[test]
fn chi_of_u23_by_every_method() {
    for method in ["subset", "delcon", "bc", "tutte"] {
        let out = matpoly(&["chi", "--matroid", "uniform:2,3", "--method", method]);
        let v = json(&out);
        assert_eq!(coeffs(&v), ["2", "-3", "1"]);
        assert_eq!(v["method"], method);
    }
}

#[test]
fn verification_exit_codes() {
    let ok = matpoly(&["verify", "--identity", "finaltwo", "--matroid", "uniform:2,4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["pass"], true);

    let sampled = matpoly(&[
        "verify", "--identity", "THM1_ONE", "--matroid", "uniform:1,3", "--samples", "2,3,5",
    ]);
    assert_eq!(sampled.status.code(), Some(0));
    assert_eq!(json(&sampled)["samples"], serde_json::json!(["2", "3", "5"]));

    let not_uniform = matpoly(&["verify", "--identity", "uniform_split", "--matroid", "pg:3,2"]);
    assert_eq!(not_uniform.status.code(), Some(2));
    assert_eq!(json(&not_uniform)["error"], "BadParams");
}

#[test]
fn errors_are_json() {
    let out = matpoly(&["chi-pg-dual", "--n", "3", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "BadParams");
    let out = matpoly(&["flow-kn", "--n", "9", "--method", "tutte"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "TooLarge");
}

#[test]
fn projective_closed_forms() {
    let out = matpoly(&["chi-pg-dual", "--n", "3", "--q", "2"]);
    assert_eq!(coeffs(&json(&out)), ["13", "-28", "21", "-7", "1"]);
    let v = json(&matpoly(&["tutte-pg", "--n", "2", "--q", "2"]));
    assert_eq!(v["vars"], serde_json::json!(["u", "v"]));
    assert_eq!(
        v["coeffs"],
        serde_json::json!([
            {"dx": 0, "dy": 1, "c": "1"},
            {"dx": 1, "dy": 0, "c": "1"},
            {"dx": 2, "dy": 0, "c": "1"}
        ])
    );
}

#[test]
fn oracles_on_a_triangle() {
    let dir = std::env::temp_dir().join(format!("matpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k3.json");
    std::fs::write(&path, r#"{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#).unwrap();
    let path = path.to_str().unwrap();
    assert_eq!(json(&matpoly(&["oracle", "colorings", "--graph", path, "--q", "3"]))["count"], "6");
    assert_eq!(json(&matpoly(&["oracle", "flows", "--graph", path, "--q", "3"]))["count"], "2");
    let spec = format!("graphic:{path}");
    let bc = json(&matpoly(&["oracle", "chi-bc", "--matroid", &spec]));
    assert_eq!(coeffs(&bc), ["2", "-3", "1"]);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn bench_checksums_agree_and_output_is_stable() {
    let out = matpoly(&["bench", "flow-kn", "--n-max", "6"]);
    assert!(out.status.success());
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    for n in 1..=6 {
        let n = n.to_string();
        let sums: Vec<&Value> = rows.iter().filter(|r| r["n"] == n.as_str()).map(|r| &r["checksum"]).collect();
        assert_eq!(sums.len(), 3);
        assert!(sums.windows(2).all(|w| w[0] == w[1]));
    }
    let a = matpoly(&["chi", "--matroid", "pg:2,3:dual"]).stdout;
    let b = matpoly(&["chi", "--matroid", "pg:2,3:dual"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn thread_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_matpoly"))
        .args(["flow-kn", "--n", "6"])
        .env("MATPOLY_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = Command::new(env!("CARGO_BIN_EXE_matpoly"))
        .args(["flow-kn", "--n", "6"])
        .env("MATPOLY_THREADS", "none")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
