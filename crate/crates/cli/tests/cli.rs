use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chase_cli::docs::{embedded_registry, parse_registry, parse_scene};
use chase_core::Registry;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn chase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn embedded_registry_is_the_seed() {
    assert_eq!(embedded_registry(), Registry::seed());
}

#[test]
fn check_accepts_the_multitask_script() {
    let out = chase(&["check", p(&fixture("alg1.chase")), "--scene", p(&fixture("alg1_scene.json"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
}

#[test]
fn check_reports_empty_args_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("script.chase");
    fs::write(&script, "do()\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_chase"))
        .current_dir(dir.path())
        .args(["check", "script.chase"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("script.chase:1:4: error EMPTY-ARGS: "), "{}", stderr(&out));
}

#[test]
fn missing_files_are_io_errors() {
    let out = chase(&["check", "/nonexistent/script.chase"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chase(&["build", p(&fixture("alg1.chase")), "--scene", "/nonexistent.json", "-o", "/tmp/x.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(chase(&[]).status.code(), Some(2));
    assert_eq!(chase(&["build", "x.chase"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("frames.jsonl");
    let out = chase(&[
        "run",
        p(&fixture("alg1.chase")),
        "--scene",
        p(&fixture("alg1_scene.json")),
        "-o",
        p(&out_path),
        "--fps",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out_path.exists());
}

#[test]
fn build_matches_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["alg1", "alg2", "alg3"] {
        let out_path = dir.path().join(format!("{name}.json"));
        let out = chase(&[
            "build",
            p(&fixture(&format!("{name}.chase"))),
            "--scene",
            p(&fixture(&format!("{name}_scene.json"))),
            "-o",
            p(&out_path),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let golden = fs::read(fixture(&format!("golden/{name}.timeline.json"))).unwrap();
        assert_eq!(fs::read(&out_path).unwrap(), golden, "{name}");
    }
}

#[test]
fn build_summary_and_document_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("t.json");
    let out = chase(&["build", p(&fixture("alg1.chase")), "--scene", p(&fixture("alg1_scene.json")), "-o", p(&out_path)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6 events, 9.142857 total seconds\n");
    let doc: serde_json::Value = serde_json::from_slice(&fs::read(&out_path).unwrap()).unwrap();
    let events = doc["events"].as_array().unwrap();
    assert_eq!(events.len(), 6);
    let starts: Vec<f64> = events.iter().map(|e| e["start_s"].as_f64().unwrap()).collect();
    assert!(starts.windows(2).all(|w| w[0] <= w[1]));
    for e in events {
        for key in ["character", "channel", "action", "start_s", "end_s", "params", "track"] {
            assert!(e.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn failed_build_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("t.json");
    let out = chase(&[
        "build",
        p(&fixture("diagnostics/unreachable.chase")),
        "--scene",
        p(&fixture("diagnostics/scene.json")),
        "-o",
        p(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out_path.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0, "no stray temp files");
}

#[test]
fn run_writes_expected_frame_count() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("frames.jsonl");
    let out = chase(&[
        "run",
        p(&fixture("alg1.chase")),
        "--scene",
        p(&fixture("alg1_scene.json")),
        "-o",
        p(&out_path),
        "--fps",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    // total 64/7 s at 10 fps: floor(91.43) + 1 + 1
    assert_eq!(lines.len(), 93);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["t_s"], 0.0);
    assert_eq!(first["characters"]["Rudy"]["pos"], serde_json::json!([0.75, 2.25]));
    assert_eq!(first["characters"]["Rudy"]["active"]["handR"], "wave hand");
    let last: serde_json::Value = serde_json::from_str(lines[92]).unwrap();
    assert_eq!(last["t_s"], 9.142857);
    assert_eq!(last["characters"]["Rudy"]["active"], serde_json::json!({}));
}

#[test]
fn empty_script_runs_to_one_frame() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("empty.chase");
    fs::write(&script, "# nothing yet\n").unwrap();
    let out_path = dir.path().join("frames.jsonl");
    let out = chase(&["run", p(&script), "--scene", p(&fixture("alg1_scene.json")), "-o", p(&out_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&out_path).unwrap().lines().count(), 1);
}

#[test]
fn config_overrides_speeds() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"styles": {"walk": 3.0}}"#).unwrap();
    let out_path = dir.path().join("t.json");
    let out = chase(&[
        "--config",
        p(&config),
        "build",
        p(&fixture("alg1.chase")),
        "--scene",
        p(&fixture("alg1_scene.json")),
        "-o",
        p(&out_path),
    ]);
    // 3 m at 3 m/s
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6 events, 8.000000 total seconds\n");
}

#[test]
fn registry_override_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let seed = include_str!("../src/seed_registry.json");
    let extended = seed.replace(
        r#""actions": ["#,
        r#""actions": [
    {"keyword": "clap", "kind": "solo-action", "allowed_parts": ["wholeBody"], "default_part": "wholeBody", "default_duration_s": 0.5, "repeat_policy": "once"},"#,
    );
    let registry = dir.path().join("registry.json");
    fs::write(&registry, &extended).unwrap();
    let script = dir.path().join("clap.chase");
    fs::write(&script, "do(clap)\n").unwrap();
    let scene_path = fixture("alg1_scene.json");
    let scene = p(&scene_path);
    let ok = chase(&["check", p(&script), "--scene", scene, "--registry", p(&registry)]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let without = chase(&["check", p(&script), "--scene", scene]);
    assert!(stderr(&without).contains("UNKNOWN-ACTION"));

    fs::write(&registry, seed.replace("\"jump\"", "\"hop\"")).unwrap();
    let bad = chase(&["check", p(&script), "--scene", scene, "--registry", p(&registry)]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("error MISSING-CORE-ACTION"), "{}", stderr(&bad));
}

#[test]
fn scene_documents_are_validated() {
    let file = Path::new("scene.json");
    let err = parse_scene("{\"grid\": {\"width\": 2}}", file).unwrap_err();
    assert_eq!(err.code, "MALFORMED-SCENE");
    let err = parse_scene(
        r#"{"grid": {"width": 3, "height": 3, "obstacles": [[1, 1]]}, "characters": [{"name": "a", "pos": [1, 1]}]}"#,
        file,
    )
    .unwrap_err();
    assert_eq!(err.code, "ENTITY-ON-OBSTACLE");
    assert!(err.to_string().starts_with("scene.json: error ENTITY-ON-OBSTACLE: "));
    let err = parse_registry("{\"actions\": [], \"styles\": {\"walk\": 1, \"run\": 0}}", file).unwrap_err();
    assert_eq!(err.code, "BAD-SPEED");
}

#[test]
fn diagnostic_fixtures_report_their_codes() {
    let scene = fixture("diagnostics/scene.json");
    let cases = [
        ("unknown_action", "2:14: error UNKNOWN-ACTION"),
        ("unknown_entity", "1:6: error UNKNOWN-ENTITY"),
        ("ambiguous_character", "2:1: error AMBIGUOUS-CHARACTER"),
        ("part_not_allowed", "1:10: error PART-NOT-ALLOWED"),
        ("row_gap", "2:1: error ROW-GAP"),
        ("chain_on_do", "1:10: error CHAIN-ON-DO"),
        ("overlay_channel_conflict", "1:48: error OVERLAY-CHANNEL-CONFLICT"),
        ("unreachable", "2:11: error UNREACHABLE"),
    ];
    for (name, expected) in cases {
        let script = fixture(&format!("diagnostics/{name}.chase"));
        let out = chase(&["check", p(&script), "--scene", p(&scene)]);
        assert_eq!(out.status.code(), Some(1));
        let line = format!("{}:{expected}", script.display());
        assert!(stderr(&out).starts_with(&line), "{}", stderr(&out));
    }
}

#[test]
fn warnings_do_not_fail_the_build() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("clip.chase");
    fs::write(&script, "goTo(ball).do(wave hand, handL, 60)\n").unwrap();
    let out_path = dir.path().join("t.json");
    let out = chase(&["build", p(&script), "--scene", p(&fixture("alg1_scene.json")), "-o", p(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains(":1:12: warning OVERLAY-CLIPPED: "), "{}", stderr(&out));
    assert!(out_path.exists());
}
