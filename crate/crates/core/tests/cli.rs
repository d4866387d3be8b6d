mod common;

use std::path::Path;
use std::process::{Command, Output};

use breathline::audio::{label_audio, wav, LabelingConfig};
use breathline::domain::{read_labels_csv, render_labels_csv};
use breathline::tracker::predict_respiration_rate;
use breathline::RespirationEstimate;
use common::fixture;

fn breathline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_breathline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn track_fixture_reports_twelve_bpm() {
    let out = breathline(&["track", "--labels", path(&fixture("idealized_12bpm.csv"))]);
    assert_eq!(out.status.code(), Some(0));
    let estimate: RespirationEstimate = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(estimate.rate_bpm, Some(12.0));
    assert_eq!(estimate.std_bpm, Some(0.0));
    assert_eq!(estimate.cycle_count, 1);
}

#[test]
fn no_estimate_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("flat.csv");
    std::fs::write(
        &labels,
        "index,timestamp_s,label\n0,0.000000,1\n1,0.125000,0\n2,0.250000,0\n",
    )
    .unwrap();
    let out_path = dir.path().join("estimate.json");
    let out = breathline(&["track", "--labels", path(&labels), "--out", path(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let estimate: RespirationEstimate =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!(!estimate.is_ok());
    assert_eq!(estimate.transition_times_s, vec![0.0]);
    assert!(dir.path().join("estimate.json.manifest.json").exists());
}

#[test]
fn exit_codes_distinguish_failure_kinds() {
    assert_eq!(breathline(&["track"]).status.code(), Some(1));
    assert_eq!(breathline(&["nonsense"]).status.code(), Some(1));
    assert_eq!(breathline(&["--help"]).status.code(), Some(0));
    assert_eq!(
        breathline(&["track", "--labels", "/definitely/not/here.csv"])
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "index,timestamp_s,label\n0,0.0,2\n").unwrap();
    let out = breathline(&["track", "--labels", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn simulate_label_track_matches_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    let out = breathline(&[
        "simulate",
        "--seed",
        "3",
        "--duration-s",
        "8",
        "--out-dir",
        path(&sim),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(sim.join("manifest.json").exists());
    assert_eq!(std::fs::read_dir(sim.join("frames")).unwrap().count(), 239);

    let labels = dir.path().join("labels.csv");
    let out = breathline(&[
        "label",
        "--wav",
        path(&sim.join("audio.wav")),
        "--out",
        path(&labels),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let track = wav::read_wav(&sim.join("audio.wav")).unwrap();
    let in_process = label_audio(
        &track,
        breathline::DEFAULT_FPS,
        239,
        &LabelingConfig::default(),
    )
    .unwrap();
    assert_eq!(
        std::fs::read_to_string(&labels).unwrap(),
        render_labels_csv(&in_process)
    );

    let out = breathline(&["track", "--labels", path(&labels)]);
    let from_cli: RespirationEstimate = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(from_cli, predict_respiration_rate(&in_process).unwrap());
}

#[test]
fn simulate_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a", "b"] {
        let out = breathline(&[
            "simulate",
            "--seed",
            "8",
            "--duration-s",
            "2",
            "--out-dir",
            path(&dir.path().join(name)),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    for file in [
        "audio.wav",
        "truth_labels.csv",
        "truth_transitions.json",
        "frames/frame_000010.pgm",
    ] {
        assert_eq!(
            std::fs::read(dir.path().join("a").join(file)).unwrap(),
            std::fs::read(dir.path().join("b").join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn train_detect_eval_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    assert!(breathline(&[
        "simulate",
        "--seed",
        "12",
        "--duration-s",
        "12",
        "--out-dir",
        path(&sim)
    ])
    .status
    .success());
    let frames = sim.join("frames");
    let truth = sim.join("truth_labels.csv");

    let model = dir.path().join("model.json");
    let out = breathline(&[
        "train",
        "--frames-dir",
        path(&frames),
        "--labels",
        path(&truth),
        "--seed",
        "1",
        "--out",
        path(&model),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("model.json.manifest.json").exists());

    let detected = dir.path().join("detected.csv");
    let out = breathline(&[
        "detect",
        "--frames-dir",
        path(&frames),
        "--model",
        path(&model),
        "--out",
        path(&detected),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        read_labels_csv(&detected).unwrap().len(),
        read_labels_csv(&truth).unwrap().len()
    );

    let baseline = dir.path().join("baseline.csv");
    assert!(breathline(&[
        "detect",
        "--frames-dir",
        path(&frames),
        "--baseline",
        "--out",
        path(&baseline)
    ])
    .status
    .success());

    let out = breathline(&["eval", "--pred", path(&detected), "--truth", path(&truth)]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["classification"]["accuracy"].as_f64().unwrap() >= 0.9);
}

#[test]
fn detect_converts_external_predictions() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("preds.jsonl");
    std::fs::write(
        &jsonl,
        "{\"index\":0,\"timestamp_s\":0.0,\"label\":1}\n{\"index\":1,\"timestamp_s\":0.5,\"label\":0,\"score\":-0.2}\n",
    )
    .unwrap();
    let out_path = dir.path().join("labels.csv");
    let out = breathline(&[
        "detect",
        "--predictions",
        path(&jsonl),
        "--out",
        path(&out_path),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        "index,timestamp_s,label\n0,0.000000,1\n1,0.500000,0\n"
    );
}

#[test]
fn eval_error_table_and_ratings() {
    let out = breathline(&["eval", "--table", path(&fixture("error_table.csv"))]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["error_table"][1]["display"], "34.6±3.8%");

    let dir = tempfile::tempdir().unwrap();
    let ratings = dir.path().join("ratings.csv");
    std::fs::write(&ratings, "V1,V2\n12,16\n12,17\n13,16\n").unwrap();
    let out = breathline(&["eval", "--ratings", path(&ratings)]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(
        report["reliability"]["krippendorff_alpha"]
            .as_f64()
            .unwrap()
            > 0.8
    );

    assert_eq!(breathline(&["eval"]).status.code(), Some(1));
    assert_eq!(
        breathline(&["detect", "--out", "x.csv"]).status.code(),
        Some(1)
    );
}

#[test]
fn e2e_recovers_the_configured_rate() {
    let dir = tempfile::tempdir().unwrap();
    let out = breathline(&[
        "e2e",
        "--rate-bpm",
        "20",
        "--duration-s",
        "12",
        "--seed",
        "2",
        "--out-dir",
        path(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["abs_error_bpm"].as_f64().unwrap() <= 1.0);
    assert!(dir.path().join("e2e_report.json").exists());
}

#[test]
fn label_flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let sim = dir.path().join("sim");
    assert!(breathline(&[
        "simulate",
        "--seed",
        "4",
        "--duration-s",
        "3",
        "--out-dir",
        path(&sim)
    ])
    .status
    .success());
    let cfg = dir.path().join("labeling.json");
    std::fs::write(&cfg, r#"{"threshold": {"threshold": 0.9}}"#).unwrap();
    let wav = sim.join("audio.wav");

    let high = dir.path().join("high.csv");
    breathline(&[
        "label",
        "--wav",
        path(&wav),
        "--labeling-config",
        path(&cfg),
        "--out",
        path(&high),
    ]);
    assert!(read_labels_csv(&high)
        .unwrap()
        .iter()
        .all(|f| !f.label.is_exhalation()));

    let overridden = dir.path().join("overridden.csv");
    breathline(&[
        "label",
        "--wav",
        path(&wav),
        "--labeling-config",
        path(&cfg),
        "--threshold",
        "0.01",
        "--out",
        path(&overridden),
    ]);
    assert!(read_labels_csv(&overridden)
        .unwrap()
        .iter()
        .any(|f| f.label.is_exhalation()));
}
