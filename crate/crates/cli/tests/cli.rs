use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn filtrum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filtrum")).args(args).output().unwrap()
}

fn on_fixture(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = fixture(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    filtrum(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn diagnostic(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn filters_listing() {
    let out = on_fixture("filters", "z6.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 4);
    assert_eq!(v["ultrafilter_count"], 2);
    assert_eq!(v["filters"][0]["members"], serde_json::json!([1, 5]));

    let v = json(&on_fixture("filters", "trivial.json", &[]));
    assert_eq!(v["count"], 1);
}

#[test]
fn validation_errors_exit_one() {
    let out = on_fixture("filters", "malformed.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"], "NonAssociative");
    assert!(out.stdout.is_empty());

    let out = on_fixture("fixfilters", "not_a_hom.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"], "NotAHom");

    let out = on_fixture("characterize", "not_closed.json", &[]);
    assert_eq!(out.status.code(), Some(1));

    let out = filtrum(&["filters", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(diagnostic(&out)["error"], "IoError");

    let out = on_fixture("characterize", "z6.json", &[]);
    assert_eq!(diagnostic(&out)["error"], "WrongDocumentKind");
}

#[test]
fn caps_exit_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_filtrum"))
        .args(["filtrum", fixture("z6.json").to_str().unwrap()])
        .env("FILTRUM_MAX_ELEMENTS", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(diagnostic(&out)["error"], "CapExceeded");
}

#[test]
fn undeclared_zero_warns() {
    let out = on_fixture("filters", "no_zero.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("UndeclaredZero"), "{text}");
}

#[test]
fn filtrum_drawings() {
    let out = on_fixture("filtrum", "z4.json", &["--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph filtrum {"));
    assert_eq!(dot.matches("[label=").count(), 2);
    assert_eq!(dot.matches("->").count(), 1);
    assert_eq!(dot.matches("doublecircle").count(), 1);

    let v = json(&on_fixture("filtrum", "z6.json", &[]));
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
    let closed = v["closed_point"].as_u64().unwrap() as usize;
    assert_eq!(v["points"][closed]["members"], serde_json::json!([1, 5]));
    assert_eq!(v["hasse"].as_array().unwrap().len(), 4);

    let v = json(&on_fixture("filtrum", "z2xz2.json", &[]));
    assert_eq!(v["points"].as_array().unwrap().len(), 2 * 2);
}

#[test]
fn fixfilter_reports() {
    let v = json(&on_fixture("fixfilters", "identity_z6.json", &[]));
    assert_eq!(v["source"]["all_fix"], true);
    assert_eq!(v["target"]["all_fix"], true);

    let v = json(&on_fixture("fixfilters", "surjection_z6_z3.json", &[]));
    assert_eq!(v["target"]["all_fix"], true);
    assert_eq!(
        v["bijection"].as_array().unwrap().len(),
        v["target"]["fix"].as_array().unwrap().len()
    );

    // Fractions of Z/6 at {1,2,4,5}: the fix source filters are those containing it.
    let v = json(&on_fixture("fixfilters", "localization_z6.json", &[]));
    let filters = v["source"]["filters"].as_array().unwrap();
    let fix: Vec<&Value> = v["source"]["fix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| &filters[i.as_u64().unwrap() as usize])
        .collect();
    assert_eq!(
        fix,
        vec![&serde_json::json!([1, 2, 4, 5]), &serde_json::json!([0, 1, 2, 3, 4, 5])]
    );
    assert_eq!(v["target"]["all_fix"], true);
}

#[test]
fn characterization_verdicts() {
    let v = json(&on_fixture("characterize", "sierpinski.json", &[]));
    assert_eq!(v["verdict"], "success");
    assert_eq!(v["local_opens"], serde_json::json!([[0], [0, 1]]));

    let v = json(&on_fixture("characterize", "discrete2.json", &[]));
    assert_eq!(v["verdict"], "failure");
    assert_eq!(v["condition"], 2);

    let v = json(&on_fixture("characterize", "indiscrete2.json", &[]));
    assert_eq!(v["condition"], 1);
}

#[test]
fn emitted_documents_reload() {
    let dir = tempfile::tempdir().unwrap();

    let out = on_fixture("sobrify", "indiscrete2.json", &[]);
    let v = json(&out);
    assert_eq!(v["points"].as_array().unwrap().len(), 1);
    let path = dir.path().join("sober.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let again = filtrum(&["sobrify", path.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(json(&again)["points"].as_array().unwrap().len(), 1);

    for name in ["sierpinski.json", "discrete2.json"] {
        let out = on_fixture("sobrify", name, &[]);
        let path = dir.path().join(name);
        std::fs::write(&path, &out.stdout).unwrap();
        assert_eq!(
            filtrum(&["characterize", path.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }

    let v = json(&on_fixture("characterize", "sierpinski.json", &[]));
    let path = dir.path().join("local.json");
    std::fs::write(&path, serde_json::to_string(&v["monoid"]).unwrap()).unwrap();
    let out = filtrum(&["filters", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 2);

    let dot = String::from_utf8(on_fixture("sobrify", "sierpinski.json", &["--format", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("digraph space {"));
}

#[test]
fn suite_on_files() {
    for (name, laws) in [
        ("z6.json", "all"),
        ("z6_ring.json", "all"),
        ("sierpinski.json", "ch3"),
        ("surjection_z6_z3.json", "ch2"),
        ("localization_z6.json", "all"),
        ("collapse_discrete2.json", "ch3"),
        ("inclusion_open_point.json", "ch3"),
    ] {
        let out = on_fixture("suite", name, &["--laws", laws]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let v = json(&out);
        assert!(v["summary"]["total"].as_u64().unwrap() > 0);
        assert_eq!(v["summary"]["failed"], 0);
    }

    for name in [
        "corrupted_monoid.json",
        "not_closed.json",
        "discontinuous.json",
        "not_a_hom.json",
    ] {
        let out = on_fixture("suite", name, &[]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let v = json(&out);
        let failed = &v["records"][0];
        assert_eq!(failed["passed"], false);
        assert!(failed["counterexample"].is_string());
    }

    assert_eq!(
        on_fixture("suite", "z6.json", &["--laws", "ch9"]).status.code(),
        Some(1)
    );
}
