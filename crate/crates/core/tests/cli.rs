use std::process::{Command, Output};

fn cellkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellkit"))
        .args(args)
        .env_remove("CELLKIT_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn kl_of_dihedral_pair() {
    let o = cellkit(&["kl", "I2(7)", "12", "12121"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = cellkit(&["kl", "A3", "2", "2132"]);
    assert_eq!(stdout(&o), "1 + q\n");
}

#[test]
fn b3_cell_report_has_six_sections() {
    let o = cellkit(&["cells", "B3", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let headers: Vec<&str> = out.lines().filter(|l| l.starts_with("## a = ")).collect();
    assert_eq!(headers, ["## a = 0", "## a = 1", "## a = 2", "## a = 3", "## a = 4", "## a = 9"]);
    // progress goes to the diagnostic stream only
    assert!(!out.contains("KL table"));
    assert!(stderr(&o).contains("KL table"));
}

#[test]
fn classify_hcell_finds_two_modules() {
    let o = cellkit(&["classify", "hcell", "B3", "1", "--max-rank", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["modules"]["count"], 2);
    assert_eq!(v["modules"]["partial"], false);
    assert_eq!(v["ring"]["labels"], serde_json::json!(["x1", "x121"]));
    let xs: Vec<&serde_json::Value> = v["modules"]["modules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| &m["matrices"][1])
        .collect();
    assert_eq!(xs, [&serde_json::json!([[1]]), &serde_json::json!([[0, 1], [1, 0]])]);

    let md = stdout(&cellkit(&["classify", "hcell", "B3", "1", "--max-rank", "2"]));
    assert!(md.contains("2 modules"));
    assert!(md.contains("decategorified candidates"));
}

#[test]
fn classify_dihedral_reports_graphs() {
    let o = cellkit(&["classify", "dihedral", "5", "--max-rank", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["graphs"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["A4"]);
    assert_eq!(v["graphs"][0]["certificate"]["divides"], true);
    assert_eq!(v["ring"]["labels"].as_array().unwrap().len(), 9);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["cells", "B4", "--format", "json"][..],
        &["afunction", "B3", "--format", "csv"],
        &["classify", "hcell", "B3", "1", "--max-rank", "2", "--format", "json"],
        &["ring", "B3", "1", "--format", "json"],
    ] {
        let a = cellkit(args);
        let b = cellkit(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn formats_parse() {
    let o = cellkit(&["afunction", "B3", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.records().count(), 48);
    let o = cellkit(&["hcell", "B3", "121", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h_cell"], serde_json::json!(["1", "121"]));
    let o = cellkit(&["ring", "B3", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tensor"][1][1], serde_json::json!([0, 2, 0]));
    let o = cellkit(&["report", "B4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn exit_codes() {
    assert_eq!(cellkit(&["cells", "Q3"]).status.code(), Some(1));
    assert_eq!(cellkit(&["kl", "B3", "1", "11"]).status.code(), Some(1));
    assert_eq!(cellkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cellkit(&["kl", "B3", "1"]).status.code(), Some(2));
    assert_eq!(cellkit(&["cells", "B3", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(cellkit(&["cells", "B3", "--threads", "0"]).status.code(), Some(2));
    let help = cellkit(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("classify"));
    let o = cellkit(&["cells", "Q3"]);
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn thread_budget_does_not_change_output() {
    let one = cellkit(&["cells", "B4", "--threads", "1", "--format", "json"]);
    let many = cellkit(&["cells", "B4", "--threads", "4", "--format", "json"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = cellkit(&["cache", "build", "B3", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = stdout(&o).trim().to_owned();
    assert!(std::path::Path::new(&path).exists());

    let o = cellkit(&["cache", "verify", "B3", "--cache-dir", d, "--fraction", "0.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ok:"));

    let o = cellkit(&["cells", "B3", "--cache-dir", d]);
    assert!(stderr(&o).contains("loaded KL table"));
    let fresh = cellkit(&["cells", "B3", "--no-cache", "--cache-dir", d]);
    assert!(!stderr(&fresh).contains("loaded"));
    assert_eq!(o.stdout, fresh.stdout);

    // the environment variable is the default directory
    let o = Command::new(env!("CARGO_BIN_EXE_cellkit"))
        .args(["afunction", "B3"])
        .env("CELLKIT_CACHE_DIR", d)
        .output()
        .unwrap();
    assert!(String::from_utf8(o.stderr).unwrap().contains("loaded KL table"));

    // a tampered file is refused, not rebuilt
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("\"1\"", "\"2\"", 1);
    assert_ne!(text, tampered);
    std::fs::write(&path, tampered).unwrap();
    let o = cellkit(&["cells", "B3", "--cache-dir", d]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("checksum mismatch"), "{}", stderr(&o));

    let o = cellkit(&["cache", "clear", "B3", "--cache-dir", d]);
    assert_eq!(stdout(&o), "removed\n");
    assert!(!std::path::Path::new(&path).exists());
    assert_eq!(cellkit(&["cache", "build", "B3"]).status.code(), Some(1));
}
