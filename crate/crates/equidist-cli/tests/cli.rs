use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    let cache = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_equidist"))
        .args(args)
        .env("NEWFORM_CACHE_DIR", cache.path())
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "gauss", "--p", "3", "--kmax", "3"]).status.code(), Some(0));
    let o = run(&["verify", "gauss", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported prime 2"));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["cusps", "--N", "4", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "rs", "--p", "3", "--c", "4", "--ep", "2"]).status.code(), Some(2));
    assert_eq!(run(&["newform", "999.2.a.zz", "--offline"]).status.code(), Some(2));
}

#[test]
fn report_schema_and_determinism() {
    let args = ["verify", "trichotomy", "--p", "3", "--imax", "2", "--json", "--no-meta"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["pass"], true);
    assert!(v.get("meta").is_none());
    let s = &v["summary"];
    assert_eq!(s["total"], s["passed"].as_u64().unwrap() + s["failed"].as_u64().unwrap() + s["skipped"].as_u64().unwrap());
    for sec in v["suites"].as_array().unwrap() {
        assert!(!sec["anchor"].as_str().unwrap().is_empty());
    }
    let m = json(&["verify", "iwasawa", "--json"]);
    assert!(m["meta"]["wall_clock_s"].as_f64().unwrap() >= 0.0);
}

#[test]
fn documented_examples() {
    let v = json(&["whittaker", "--ps", "--p", "3", "--k", "1", "--i", "2", "--json"]);
    let entries = v["data"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["n"], 0);
    assert_eq!(entries[0]["terms"][0]["char_level"], 0);
    assert_eq!(entries[0]["terms"][0]["coeff"], serde_json::json!([[0, "1", "1"]]));

    let v = json(&["whittaker", "--sc", "--p", "5", "--c", "4", "--i", "1", "--seed", "7", "--json"]);
    assert_eq!(v["pass"], true);
    for e in v["data"]["entries"].as_array().unwrap() {
        for t in e["terms"].as_array().unwrap() {
            assert_eq!(t["char_level"], 3);
        }
    }

    let o = run(&["cusps", "--N", "4", "--q", "4", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let widths: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(widths, ["4", "1", "1"]);

    assert_eq!(run(&["bounds", "triple", "--p", "3", "--c", "2", "--steinberg", "--seeds", "2"]).status.code(), Some(0));
    assert_eq!(run(&["bounds", "rs", "--p", "3", "--c", "4", "--ep", "1", "--i", "0"]).status.code(), Some(0));
    assert_eq!(run(&["lambda", "--nmax", "1000", "--t", "0,1,2.5"]).status.code(), Some(0));
    let v = json(&["newform", "11.2.a.a", "--deligne", "--hecke", "--offline", "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["summary"]["total"], 2);
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let o = run(&["whittaker", "--sc", "--p", "3", "--c", "3", "--i", "1", "--csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,char_exponent,char_level,modulus,coeff,re,im"));
    assert!(text.lines().count() > 1);
    let path = dir.path().join("r.json");
    let o = run(&["lambda", "--nmax", "50", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "lambda");
    assert_eq!(run(&["verify", "gauss", "--csv"]).status.code(), Some(2));
}
