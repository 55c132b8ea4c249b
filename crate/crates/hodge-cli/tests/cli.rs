//! End-to-end checks of the binary: exit codes, verdict lines, and the
//! document flows between subcommands.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn hodge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hodge-cli-test-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_writes_documents_and_counts() {
    let out_path = scratch("g2.json");
    let out = hodge(&[
        "enumerate",
        "--hodge",
        "2,2",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3 diamonds");
    let text = fs::read_to_string(&out_path).unwrap();
    let docs: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 3);

    let rigid = hodge(&["enumerate", "--hodge", "1,0,1"]);
    assert!(rigid.status.success());
    assert_eq!(String::from_utf8_lossy(&rigid.stderr).trim(), "1 diamond");
}

#[test]
fn enumerate_rejects_invalid_hodge_numbers() {
    let out = hodge(&["enumerate", "--hodge", "2,3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error["), "stderr: {err}");
}

#[test]
fn relate_exit_codes_and_glyphs() {
    let dir = scratch("");
    let all = hodge(&[
        "enumerate",
        "--hodge",
        "2,2",
        "--output",
        dir.join("all.json").to_str().unwrap(),
    ]);
    assert!(all.status.success());
    let docs: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.join("all.json")).unwrap()).unwrap();
    for (i, doc) in docs.iter().enumerate() {
        fs::write(dir.join(format!("d{i}.json")), doc.to_string()).unwrap();
    }
    // Canonical order puts the most diagonal diamond first and the pure
    // one last; identify them by their corner entry instead.
    let corner = |v: &serde_json::Value| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["p"] == 0 && e["q"] == 0)
            .map(|e| e["m"].as_u64().unwrap())
            .unwrap_or(0)
    };
    let pure = (0..docs.len()).find(|&i| corner(&docs[i]) == 0).unwrap();
    let deep = (0..docs.len()).find(|&i| corner(&docs[i]) == 2).unwrap();

    let forward = hodge(&[
        "relate",
        dir.join(format!("d{pure}.json")).to_str().unwrap(),
        dir.join(format!("d{deep}.json")).to_str().unwrap(),
        "--witness",
    ]);
    assert_eq!(forward.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&forward.stdout);
    assert!(stdout.contains("\u{2AAF}"), "{stdout}");
    assert!(stdout.contains("level 0"), "{stdout}");

    let backward = hodge(&[
        "relate",
        dir.join(format!("d{deep}.json")).to_str().unwrap(),
        dir.join(format!("d{pure}.json")).to_str().unwrap(),
    ]);
    assert_eq!(backward.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&backward.stdout).contains("\u{22E0}"));

    // Mismatched domains are invalid input.
    let other = hodge(&[
        "enumerate",
        "--hodge",
        "1,1",
        "--output",
        dir.join("other.json").to_str().unwrap(),
    ]);
    assert!(other.status.success());
    let docs2: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.join("other.json")).unwrap()).unwrap();
    fs::write(dir.join("o0.json"), docs2[0].to_string()).unwrap();
    let crossed = hodge(&[
        "relate",
        dir.join("d0.json").to_str().unwrap(),
        dir.join("o0.json").to_str().unwrap(),
    ]);
    assert_eq!(crossed.status.code(), Some(2));
}

#[test]
fn digraph_formats() {
    let dot = hodge(&["digraph", "--hodge", "2,4,2", "--covers-only"]);
    assert!(dot.status.success());
    let text = String::from_utf8_lossy(&dot.stdout);
    assert!(text.starts_with("digraph hodge {\n  rankdir=LR;\n"));
    assert_eq!(text.matches("->").count(), 6);

    let json = hodge(&["digraph", "--hodge", "1,2,2,1", "--format", "json"]);
    assert!(json.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&json.stdout)).unwrap();
    assert_eq!(value["transitive"], serde_json::Value::Bool(false));

    let capped = hodge(&["digraph", "--hodge", "2,4,2", "--cap", "3"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn realize_round_trip_via_files() {
    let dir = scratch("");
    let all = hodge(&[
        "enumerate",
        "--hodge",
        "1,1,1",
        "--output",
        dir.join("w111.json").to_str().unwrap(),
    ]);
    assert!(all.status.success());
    let docs: Vec<serde_json::Value> =
        serde_json::from_str(&fs::read_to_string(dir.join("w111.json")).unwrap()).unwrap();
    // The length-three string diamond sits on the diagonal.
    let diag = docs
        .iter()
        .find(|d| d["entries"].as_array().unwrap().iter().all(|e| e["p"] == e["q"]))
        .unwrap();
    fs::write(dir.join("string.json"), diag.to_string()).unwrap();
    let out = hodge(&[
        "realize",
        dir.join("string.json").to_str().unwrap(),
        "--output",
        dir.join("witness.json").to_str().unwrap(),
        "--probe",
        "i,2i,0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("ok   diamond recovered"), "{stdout}");
    assert!(stdout.contains("probe z = 0+1i: inside the period domain"));
    assert!(stdout.contains("probe z = 0+2i: inside the period domain"));
    assert!(stdout.contains("probe z = 0: outside the period domain"));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("witness.json")).unwrap()).unwrap();
    assert_eq!(doc["dimension"], 3);
    assert_eq!(doc["weight"], 2);
    assert_eq!(doc["q"].as_array().unwrap().len(), 9);
}
