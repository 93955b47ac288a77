use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dot_parser::{ast, canonical};
use octica::coxeter::{isomorphic, CoxeterDiagram};
use octica::data::{reference_data, BUNDLED, LATTICE_NAMES};
use octica::report::ReproductionReport;

fn octica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octica"))
        .args(args)
        .output()
        .expect("spawn octica")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.dot"))
}

/// Writes the bundled data with one entry of the stored L3 Gram matrix changed.
fn corrupted_l3(dir: &tempfile::TempDir) -> PathBuf {
    let mut v: serde_json::Value = serde_json::from_str(BUNDLED).unwrap();
    let entry = &mut v["L3"][0][0];
    *entry = serde_json::json!(entry.as_i64().unwrap() - 2);
    let path = dir.path().join("corrupt.json");
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    path
}

#[test]
fn dot_output_matches_golden_files() {
    for name in LATTICE_NAMES {
        let out = octica(&["diagram", "--lattice", name, "--format", "dot"]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert_eq!(
            text,
            std::fs::read_to_string(golden(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn dot_output_parses() {
    let expected_nodes = [6, 7, 7, 8, 6];
    let d = reference_data().data;
    for (i, name) in LATTICE_NAMES.iter().enumerate() {
        let text = std::fs::read_to_string(golden(name)).unwrap();
        let parsed = ast::Graph::try_from(text.as_str()).expect("valid DOT");
        let g = canonical::Graph::from(parsed);
        assert!(!g.is_digraph);
        assert_eq!(g.nodes.set.len(), expected_nodes[i]);
        let reference = d.diagram(i).unwrap();
        assert_eq!(g.edges.set.len(), reference.edges().len(), "{name}");
    }
}

#[test]
fn json_diagram_round_trips() {
    let d = reference_data().data;
    for (i, name) in LATTICE_NAMES.iter().enumerate() {
        let out = octica(&["diagram", "--lattice", name, "--format", "json"]);
        let dia = CoxeterDiagram::from_json(&stdout(&out)).unwrap();
        assert!(
            isomorphic(&dia, &d.diagram(i).unwrap(), true).is_some(),
            "{name}"
        );
    }
}

#[test]
fn reruns_are_byte_identical() {
    let runs: [&[&str]; 11] = [
        &["lattice", "show"],
        &["fix", "--chi", "3"],
        &["vinberg", "--lattice", "L2"],
        &["diagram", "--lattice", "L3", "--format", "json"],
        &["mod2", "--chi", "1"],
        &["s8-table"],
        &["type2", "--chi", "3"],
        &["cone-angle"],
        &["--json", "cone-angle"],
        &["verify-all", "--no-timings"],
        &["--json", "--threads", "4", "verify-all", "--no-timings"],
    ];
    for args in runs {
        let (a, b) = (octica(args), octica(args));
        assert!(
            a.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&a.stderr)
        );
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_the_report() {
    let one = octica(&["--json", "verify-all", "--no-timings"]);
    let four = octica(&["--json", "--threads", "4", "verify-all", "--no-timings"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn report_json_round_trips() {
    let out = octica(&["--json", "verify-all", "--only", "mod2,orthogonal"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let r = ReproductionReport::from_json(&text).unwrap();
    assert!(r.pass);
    assert_eq!(r.to_json().trim(), text.trim());
}

#[test]
fn only_restricts_the_groups() {
    let out = octica(&["--json", "verify-all", "--only", "cone"]);
    let r = ReproductionReport::from_json(&stdout(&out)).unwrap();
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.id.starts_with("8.cone.")));
    let by_number = octica(&["--json", "verify-all", "--only", "8", "--no-timings"]);
    let named = octica(&["--json", "verify-all", "--only", "cone", "--no-timings"]);
    assert_eq!(by_number.stdout, named.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        octica(&["--data", "/nonexistent/data.json", "fix", "--chi", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        octica(&["diagram", "--lattice", "L9"]).status.code(),
        Some(2)
    );
    assert_eq!(octica(&["fix", "--chi", "7"]).status.code(), Some(2));
    assert_eq!(
        octica(&["verify-all", "--only", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        octica(&["diagram", "--lattice", "L0", "--format", "svg"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn corrupted_entry_is_pinpointed() {
    let dir = tempfile::tempdir().unwrap();
    let path = corrupted_l3(&dir);
    let out = octica(&["--json", "--data", path.to_str().unwrap(), "verify-all"]);
    assert_eq!(out.status.code(), Some(1));
    let r = ReproductionReport::from_json(&stdout(&out)).unwrap();
    assert!(!r.pass);
    let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
    assert!(failed.contains(&"1.fix.L3"), "{failed:?}");
    assert!(!failed.contains(&"1.fix.L2"));
    assert!(r
        .checks
        .iter()
        .filter(|c| c.id.starts_with("8.") || c.id.starts_with("4."))
        .all(|c| c.pass));
    // the text report names the check too
    let text = octica(&[
        "--data",
        path.to_str().unwrap(),
        "verify-all",
        "--only",
        "fix",
    ]);
    assert_eq!(text.status.code(), Some(1));
    assert!(stdout(&text)
        .lines()
        .any(|l| l.starts_with("[FAIL] 1.fix.L3")));
}

#[test]
fn man_page_mentions_every_subcommand() {
    let out = octica(&["man"]);
    assert!(out.status.success());
    let page = stdout(&out).replace("\\-", "-");
    for sub in [
        "lattice",
        "fix",
        "vinberg",
        "diagram",
        "mod2",
        "s8-table",
        "type2",
        "cone-angle",
        "verify-all",
    ] {
        assert!(page.contains(sub), "{sub}");
    }
}
