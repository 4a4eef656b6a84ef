use std::process::{Command, Output};

fn qkahler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkahler")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_slice(&qkahler(&all).stdout).unwrap()
}

#[test]
fn basis_dimensions() {
    for (args, dim) in [
        (vec!["basis", "-n", "2", "-k", "2"], 6),
        (vec!["basis", "-n", "3", "-k", "3"], 20),
        (vec!["basis", "-n", "2", "--bidegree", "1,1"], 4),
    ] {
        let v = json(&args);
        assert_eq!(v["results"][0]["dimension"], dim);
        assert_eq!(v["results"][0]["monomials"].as_array().unwrap().len(), dim);
    }
}

#[test]
fn cp1_hodge_table() {
    let o = qkahler(&["hodge", "-n", "1"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().skip(1).map(str::to_string).collect();
    assert_eq!(
        lines,
        [
            "*(e+[]^e-[]) = (i)*e+[1]^e-[1]",
            "*(e+[1]^e-[]) = (-i)*e+[1]^e-[]",
            "*(e+[]^e-[1]) = (i)*e+[]^e-[1]",
        ]
    );
}

#[test]
fn laplacian_line() {
    let o = qkahler(&["laplacian-cp1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Δ(z12) = q[2]_q z12: PASS"));
}

#[test]
fn lids_suite_passes_with_flags() {
    let o = qkahler(&["verify", "-n", "2", "--suite", "lids", "--mode", "h=q"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&["verify", "-n", "2", "--suite", "lids", "--mode", "hq"]);
    assert_eq!(v["schema"], "qkahler/1");
    assert!(v["failures"].as_array().unwrap().is_empty());
    let flagged: Vec<&serde_json::Value> =
        v["results"].as_array().unwrap().iter().filter(|r| r["status"] == "flagged").collect();
    assert!(!flagged.is_empty());
    assert!(flagged.iter().all(|r| r["witness"]["input"].is_string()));
}

#[test]
fn metric_report_shows_the_cp1_flag() {
    let v = json(&["verify", "--suite", "metric"]);
    let results = v["results"].as_array().unwrap();
    let flag = results.iter().find(|r| r["check"].as_str().unwrap().contains("q^4")).unwrap();
    assert_eq!(flag["status"], "flagged");
    assert_eq!(flag["details"]["computed"], "q^-4");
}

#[test]
fn json_output_is_deterministic() {
    let a = qkahler(&["verify", "-n", "2", "--json"]);
    let b = qkahler(&["verify", "-n", "2", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn gram_certificates() {
    let v = json(&["gram", "-n", "2", "--q-samples", "9/10,11/10"]);
    let blocks = v["results"].as_array().unwrap();
    assert_eq!(blocks.len(), 9);
    for b in blocks {
        for c in b["certificates"].as_array().unwrap() {
            assert_eq!(c["verdict"], true);
        }
    }
}

#[test]
fn primitive_table() {
    let v = json(&["primitive", "-n", "2"]);
    let row = v["results"].as_array().unwrap().iter().find(|r| r["bidegree"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(row["dimension"], 3);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("qkahler-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = qkahler(&["verify", "-n", "1", "--suite", "hodge", "--json", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "verify");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        vec!["verify", "--suite", "bogus"],
        vec!["verify", "--mode", "h=2q"],
        vec!["verify", "-n", "0"],
        vec!["gram", "--q-samples", "-1"],
        vec!["basis", "-n", "2", "-k", "5"],
        vec!["basis", "-n", "2", "--bidegree", "3,0"],
        vec!["basis", "-n", "2"],
        vec!["frobnicate"],
    ] {
        assert_eq!(qkahler(&args).status.code(), Some(2), "{args:?}");
    }
}
