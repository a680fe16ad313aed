use std::fs;
use std::path::Path;
use std::process::Command;

use doubleslit_cli::parse_profile_csv;
use doubleslit_core::{simulate, ExperimentConfig, QubitBehavior, TransitionMask};

fn doubleslit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_doubleslit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = doubleslit(&["--frobnicate"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn odd_n_fails_before_computing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let out = doubleslit(&["--n", "3", "--csv", s(&csv)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"));
    assert!(!csv.exists());
}

#[test]
fn unwritable_output_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("missing").join("out.csv");
    let out = doubleslit(&["--n", "16", "--qubit", "none", "--csv", s(&csv)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_matches_library_profile_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("none.csv");
    let out = doubleslit(&["--n", "200", "--qubit", "none", "--csv", s(&csv)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (xs, ps) = parse_profile_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    let expected = simulate(
        &ExperimentConfig::default().with_n(200),
        QubitBehavior::None,
    )
    .unwrap();
    assert_eq!(xs, expected.positions);
    assert_eq!(ps, expected.density);
}

#[test]
fn all_behaviors_write_suffixed_artifacts_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let base = dir.path().join(tag);
        fs::create_dir(&base).unwrap();
        let out = doubleslit(&[
            "--n",
            "300",
            "--csv",
            s(&base.join("p.csv")),
            "--svg",
            s(&base.join("p.svg")),
            "--masks",
            s(&base.join("masks")),
            "--report",
            s(&base.join("report.txt")),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        base
    };
    let a = run("a");
    let b = run("b");
    for name in [
        "p_none.csv",
        "p_remembers.csv",
        "p_forgets.csv",
        "report.txt",
        "p_none.svg",
    ] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
            "{name}"
        );
    }
    assert_eq!(
        fs::read(a.join("p_none.csv")).unwrap(),
        fs::read(a.join("p_forgets.csv")).unwrap()
    );
    assert_ne!(
        fs::read(a.join("p_none.csv")).unwrap(),
        fs::read(a.join("p_remembers.csv")).unwrap()
    );

    for b in QubitBehavior::ALL {
        let svg = fs::read_to_string(a.join(format!("p_{}.svg", b.name()))).unwrap();
        let doc = roxmltree::Document::parse(&svg).expect("well-formed SVG");
        let polylines = doc
            .descendants()
            .filter(|n| n.has_tag_name("polyline"))
            .count();
        assert_eq!(polylines, 1);
        assert!(svg.contains(&format!("qubit behavior: {}", b.name())));

        let text =
            fs::read_to_string(a.join("masks").join(format!("mask_{}.txt", b.name()))).unwrap();
        assert!(text.starts_with(&format!("behavior={} n=8\n", b.name())));
        let mask = TransitionMask::from_text(&text).unwrap();
        assert_eq!(mask.behavior(), b);
        assert_eq!(text.lines().count(), 17);
    }

    let report = fs::read_to_string(a.join("report.txt")).unwrap();
    assert!(report.lines().all(|l| l.contains(" = ")));
    assert!(report.contains("remembers.interference_detected = false"));
    assert!(report.contains("none.interference_detected = true"));
}

#[test]
fn json_report_and_check_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let out = doubleslit(&[
        "--n",
        "1000",
        "--qubit",
        "none",
        "--report",
        s(&json),
        "--check",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.contains("PASS fringe_spacing_none"));
    let value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["all_passed"], true);
    assert_eq!(value["behaviors"][0]["behavior"], "none");

    // literal geometry puts the fringes at λL/(d+a), which fails the λL/d check
    let out = doubleslit(&[
        "--n",
        "1000",
        "--qubit",
        "none",
        "--geometry",
        "paper",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL fringe_spacing_none"));
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(&cfg, "N = 64\nZmin = -0.1\nZmax = 0.1\n").unwrap();
    let csv = dir.path().join("p.csv");
    let out = doubleslit(&[
        "--config",
        s(&cfg),
        "--n",
        "32",
        "--qubit",
        "none",
        "--csv",
        s(&csv),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (xs, _) = parse_profile_csv(&fs::read_to_string(&csv).unwrap()).unwrap();
    assert_eq!(xs.len(), 32);
    assert!(xs[0] > -0.1 && xs[31] < 0.1);
}
