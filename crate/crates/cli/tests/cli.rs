use std::process::{Command, Output};

use minorbit_cli::parse_json;
use minorbit_core::FGAbelianGroup;

fn minorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn compute_json(label: &str) -> minorbit_cli::CohomologyRecord {
    let out = minorbit(&["compute", "--type", label, "--format", "json"]);
    assert!(out.status.success());
    parse_json(&stdout(&out)).unwrap()
}

#[test]
fn g2_text_table() {
    let out = minorbit(&["compute", "--type", "G2", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["i =  4   ℤ/3", "i =  6   ℤ/2", "i =  8   ℤ/3", "i = 11   ℤ"] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn a1_json() {
    let out = minorbit(&["compute", "--type", "A", "--rank", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["type"], "A");
    assert_eq!(value["rank"], 1);
    assert_eq!(value["h_dual"], 2);
    let groups = value["groups"].as_array().unwrap();
    let triples: Vec<(u64, u64, Vec<u64>)> = groups
        .iter()
        .map(|g| {
            (
                g["degree"].as_u64().unwrap(),
                g["free_rank"].as_u64().unwrap(),
                g["torsion"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|t| t.as_u64().unwrap())
                    .collect(),
            )
        })
        .collect();
    assert_eq!(
        triples,
        vec![(0, 1, vec![]), (2, 0, vec![2]), (3, 1, vec![])]
    );
}

#[test]
fn a3_degree_six() {
    assert_eq!(
        compute_json("A3").cohomology.get(6),
        FGAbelianGroup::cyclic(4)
    );
}

#[test]
fn d_middle_groups() {
    for n in 4..=7 {
        let record = compute_json(&format!("D{n}"));
        let mid = record.cohomology.get(4 * n - 6);
        let want: &[u64] = if n % 2 == 0 { &[2, 2] } else { &[4] };
        assert_eq!(mid.torsion(), want, "D{n}");
        assert_eq!(mid.free_rank(), 0);
    }
}

#[test]
fn json_round_trip_through_binary() {
    for label in ["A4", "B5", "C3", "E7", "F4"] {
        let out = minorbit(&["compute", "--type", label, "--format", "json"]);
        let text = stdout(&out);
        let record = parse_json(&text).unwrap();
        assert_eq!(
            minorbit_cli::render_json(&record).trim(),
            text.trim(),
            "{label}"
        );
    }
}

#[test]
fn f4_matrices() {
    let out = minorbit(&["matrices", "--type", "F4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("D1 = (1)"), "{text}");
    assert!(text.contains("D8 = [[2,1],[1,2]]"), "{text}");
    assert!(text.contains("D15 = (1)"), "{text}");
    assert!(!text.contains("D16 ="), "{text}");
}

#[test]
fn diagram_dot() {
    let out = minorbit(&["diagram", "--type", "B3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--type", "G2", "--format", "dot"][..],
        &["matrices", "--type", "E8", "--format", "dot"],
        &["compute", "--type", "E9"],
        &["compute", "--type", "B3", "--rank", "4"],
        &["compute"],
        &["verify"],
        &["all", "--max-rank", "0"],
    ] {
        let out = minorbit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_passes_and_cap_is_reported() {
    let out = minorbit(&["verify", "--type", "E6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = minorbit(&["verify", "--type", "E6", "--cap", "20"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("--cap"));
}

#[test]
fn verify_all_small_sweep() {
    let out = minorbit(&["verify", "--all", "--max-rank", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let checks: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = checks.as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    assert!(checks.iter().any(|c| c["type"] == "E8"));
}
