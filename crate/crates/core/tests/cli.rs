use std::process::Command;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lyndon-count"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn stdout_ok(args: &[&str]) -> String {
    let (code, out, err) = bin(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn formula_values() {
    assert_eq!(
        stdout_ok(&["formula", "mts", "--sigma", "2", "--n", "15"]),
        "32400\n"
    );
    assert_eq!(
        stdout_ok(&["formula", "L", "--sigma", "2", "--n", "2"]),
        "1\n"
    );
    let eds = stdout_ok(&[
        "formula",
        "eds",
        "--sigma",
        "5",
        "--n",
        "20",
        "--decimals",
        "2",
    ]);
    assert!(eds.starts_with("15444.90 ("), "{eds}");
    assert_eq!(
        stdout_ok(&["formula", "ets", "--sigma", "2", "--n", "4"]),
        "6.69 (107/16)\n"
    );
    assert_eq!(
        stdout_ok(&["formula", "contain", "--sigma", "2", "--n", "4", "--m", "2"]),
        "11\n"
    );
}

#[test]
fn formula_mtf_carries_note() {
    let (code, out, err) = bin(&["formula", "mtf", "--sigma", "2", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "8\n");
    assert!(err.contains("C(n,2) variant would give 4"), "{err}");
}

#[test]
fn formula_json_is_exact() {
    let out = stdout_ok(&[
        "formula", "ets", "--sigma", "2", "--n", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quantity"], "ETS");
    assert_eq!(v["value"]["num"], "89");
    assert_eq!(v["value"]["den"], "8");
    assert_eq!(v["value"]["decimal"], "11.13");
    assert_eq!(v["stated_regime"], true);
    assert_eq!(v["rounding"], "half-away-from-zero");

    let out = stdout_ok(&[
        "formula", "ts", "--sigma", "5", "--n", "10", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "2204719998");
    let out = stdout_ok(&[
        "formula", "mts", "--sigma", "5", "--n", "3", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["stated_regime"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["formula", "mds", "--sigma", "2", "--n", "3"]).0, 2);
    assert_eq!(bin(&["formula", "mts", "--sigma", "0", "--n", "3"]).0, 2);
    assert_eq!(bin(&["formula", "mts", "--sigma", "2"]).0, 2);
    assert_eq!(bin(&["table", "mts", "--sigma", "2", "--n", "5..1"]).0, 2);
    assert_eq!(bin(&["table", "--paper-tables", "6"]).0, 2);
    assert_eq!(bin(&["count", "--word", "aXb", "--what", "factors"]).0, 2);
    assert_eq!(bin(&["enum", "--sigma", "0", "--len", "2"]).0, 2);
    assert_eq!(bin(&["nonsense"]).0, 2);
}

#[test]
fn tables() {
    let md = stdout_ok(&["table", "mts", "--sigma", "2,5,10", "--n", "1..15"]);
    let lines: Vec<&str> = md.lines().collect();
    assert_eq!(lines.len(), 17);
    assert_eq!(lines[0], "| n | MTS(2,n) | MTS(5,n) | MTS(10,n) |");
    assert_eq!(lines[16], "| 15 | 32400 | 32747 | 32762 |");

    let ets = stdout_ok(&[
        "table",
        "ets",
        "--sigma",
        "2,5",
        "--n",
        "1..10",
        "--decimals",
        "2",
    ]);
    assert!(ets.contains("| 5 | 11.13 | 13.60 |"), "{ets}");

    let eds = stdout_ok(&[
        "table",
        "eds",
        "--sigma",
        "2,5",
        "--n",
        "1..10,15,20",
        "--decimals",
        "2",
    ]);
    assert_eq!(eds.lines().count(), 14);
    assert!(eds.ends_with("| 20 | 559.42 | 15444.90 |\n"), "{eds}");
    assert_eq!(eds, stdout_ok(&["table", "--paper-tables", "5"]));
}

#[test]
fn table_csv_quotes_headers() {
    let csv = stdout_ok(&[
        "table", "ts", "--sigma", "2", "--n", "1,2", "--format", "csv",
    ]);
    assert_eq!(csv, "n,\"TS(2,n)\"\n1,2\n2,9\n");
}

#[test]
fn table_json_has_metadata_and_no_floats() {
    let out = stdout_ok(&["table", "--paper-tables", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quantity"], "TS,ETS");
    assert_eq!(v["sigma"], serde_json::json!([2, 5]));
    assert_eq!(v["n"].as_array().unwrap().len(), 10);
    assert_eq!(v["rounding"], "half-away-from-zero");
    assert_eq!(v["provenance"], "formula");
    let last = &v["rows"][9]["values"];
    assert_eq!(last[2], "2204719998");
    assert_eq!(last[3]["decimal"], "225.76");

    fn no_floats(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Number(n) => n.is_u64() || n.is_i64(),
            serde_json::Value::Array(a) => a.iter().all(no_floats),
            serde_json::Value::Object(o) => o.values().all(no_floats),
            _ => true,
        }
    }
    assert!(no_floats(&v));
}

#[test]
fn count_command() {
    let c = |w: &str, what: &str, mode: &str| {
        stdout_ok(&["count", "--word", w, "--what", what, "--mode", mode])
    };
    assert_eq!(c("aabb", "subsequences", "total"), "13\n");
    assert_eq!(c("ba", "subsequences", "distinct"), "2\n");
    assert_eq!(c("aabb", "factors", "total"), "8\n");
    assert_eq!(c("aabb", "factors", "distinct"), "6\n");
    assert_eq!(c("1,2,30", "factors", "total"), "6\n");
    let long = "a".repeat(26);
    assert_eq!(
        bin(&["count", "--word", &long, "--what", "subsequences"]).0,
        3
    );
}

#[test]
fn enum_command() {
    assert_eq!(stdout_ok(&["enum", "--sigma", "2", "--len", "2"]), "ab\n");
    assert_eq!(
        stdout_ok(&["enum", "--sigma", "2", "--len", "4"]),
        "aaab\naabb\nabbb\n"
    );
    assert_eq!(stdout_ok(&["enum", "--sigma", "1", "--len", "2"]), "");
    assert_eq!(
        stdout_ok(&["enum", "--sigma", "3", "--len", "3", "--limit", "2"]),
        "aab\naac\n"
    );
}

#[test]
fn witness_command() {
    assert_eq!(
        stdout_ok(&["witness", "--sigma", "2", "--n", "5"]),
        "aabbb\n"
    );
    assert_eq!(stdout_ok(&["witness", "--sigma", "3", "--n", "3"]), "abc\n");
    assert_eq!(
        stdout_ok(&["witness", "--sigma", "2", "--n", "5", "--all"]),
        "aaabb\naabbb\nmax 26, predicted 2, found 2\n"
    );
    assert_eq!(bin(&["witness", "--sigma", "2", "--n", "30", "--all"]).0, 3);
}

#[test]
fn verify_command() {
    let (code, out, _) = bin(&["verify", "ts", "--sigma", "2", "--n-max", "8"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("8/8 match\n"), "{out}");

    let (code, out, _) = bin(&[
        "verify",
        "all",
        "--sigma",
        "2",
        "--n-max",
        "7",
        "--sequential",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("mismatch"));
    assert!(out.contains("note: MTF(2,4) exhaustive max = 8"), "{out}");

    let (code, _, err) = bin(&["verify", "mts", "--sigma", "2", "--n-max", "30"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget exceeded"), "{err}");

    let (code, _, _) = bin(&[
        "verify",
        "ts",
        "--sigma",
        "2",
        "--n-max",
        "9",
        "--budget-subsets",
        "256",
    ]);
    assert_eq!(code, 3);
}
