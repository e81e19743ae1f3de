use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

/// Runs the binary with whitespace-separated arguments.
fn run(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vr-lattice"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn build_box_complexes() {
    let o = run("build --n 2 --m 1 --r 2");
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(doc["edge_count"], 6);

    let doc = json(&run("build --n 3 --m 3 --r 2"));
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 64);
}

#[test]
fn build_link_complex() {
    // Box {0,1}^2 minus (0,0), shifted by (1,0): nonzero points within 2.
    let o = run("build --gamma --n 2 --m 1 --alpha 1 --r 2");
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["vertices"], serde_json::json!([[-1, 1], [0, 1]]));
    assert_eq!(doc["provenance"]["kind"], "gamma");
}

#[test]
fn usage_and_cap_errors_have_distinct_codes() {
    assert_eq!(code(&run("verify nonsense --n 2 --r 2")), 2);
    assert_eq!(code(&run("build --n 2 --m 1 --r 2 --alpha 1")), 2);
    assert_eq!(code(&run("build --gamma --n 2 --m 1 --alpha 4 --r 2")), 2);
    assert_eq!(code(&run("verify morse --n 3 --m 4..2 --r 2")), 2);
    assert_eq!(code(&run("verify maximal-class --n 3 --m 2 --r 3")), 2);
    let o = run("build --n 3 --m 9 --r 2 --caps vertices=100");
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("limit of 100"));
    let o = run("morse --n 3 --m 3 --r 2 --caps simplices=500");
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_morse_reports_dimension_three_only() {
    let o = run("verify morse --n 3 --m 3..5 --r 2");
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("dim 3: 27 (>=1)"), "{text}");
    assert!(text.contains("dim 3: 64 (>=8)"));
    assert!(text.contains("dim 3: 125 (>=27)"));
    assert!(!text.contains("dim 2:"));
}

#[test]
fn verify_dismantle_and_classification_pass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dismantle.json");
    let o = run(&format!(
        "verify dismantle --n 2 --m 2..4 --r 2..3 --json {}",
        path.to_str().unwrap()
    ));
    assert_eq!(code(&o), 0);
    let report = read_json(&path);
    let cases = report["body"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 6);
    for c in cases {
        assert_eq!(c["passed"], true);
        assert_eq!(c["detail"]["link_max_residual"], 1);
    }

    let o = run("verify --suite maximal-class --n 3 --m 3 --r 2");
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 unclassified"));
}

#[test]
fn reports_are_deterministic_and_tamper_evident() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&format!(
            "verify stages --n 3 --m 2 --r 3..4 --json {}",
            p.to_str().unwrap()
        ));
        assert_eq!(code(&o), 0);
    }
    let (ra, rb) = (read_json(&a), read_json(&b));
    assert_eq!(ra["body"], rb["body"]);
    assert_eq!(ra["body_digest"], rb["body_digest"]);

    let o = run(&format!("report {}", a.to_str().unwrap()));
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("WARNING"));
    assert_eq!(
        stdout(&o),
        stdout(&run(&format!("report {}", a.to_str().unwrap())))
    );

    let mut tampered = ra.clone();
    tampered["body"]["cases"][0]["summary"] = Value::from("edited");
    std::fs::write(&b, tampered.to_string()).unwrap();
    let o = run(&format!("report {}", b.to_str().unwrap()));
    assert!(stdout(&o).contains("WARNING integrity"));

    let mut wrong = ra;
    wrong["body"]["schema_version"] = Value::from(7);
    std::fs::write(&b, wrong.to_string()).unwrap();
    assert_eq!(code(&run(&format!("report {}", b.to_str().unwrap()))), 2);
}

#[test]
fn single_complex_commands_emit_documents() {
    let o = run("dismantle --gamma --n 3 --m 2 --r 3 --alpha 4");
    assert_eq!(code(&o), 0);
    let cert = json(&o);
    assert_eq!(cert["residual"].as_array().unwrap().len(), 1);
    assert_eq!(cert["strategy"], "stage-guided");

    let census = json(&run("morse --n 3 --m 1 --r 2"));
    assert_eq!(census["counts"], serde_json::json!([0, 0, 0, 1]));
    assert_eq!(census["acyclic"], true);
    assert_eq!(census["verdict"]["shape"], "wedge-of-spheres");

    let betti = json(&run("homology --n 3 --m 1 --r 2"));
    assert_eq!(betti["betti"], serde_json::json!([1, 0, 0, 1]));

    let o = run("conjecture --n 3 --m 3 --r 4 --alpha 1");
    assert_eq!(code(&o), 0);
    assert!(json(&o)["verdict"].is_string());
}

#[test]
fn distance_suite_runs_every_inequality() {
    let o = run("verify distance-lemmas --n 6 --r 10");
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for kind in ["Single", "Double", "Triple", "Quadruple"] {
        assert!(
            text.contains(&format!("{kind}: 10000 applicable")),
            "{text}"
        );
    }
}
