use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn neuroevo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neuroevo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_campaign(out: &Path, extra: &[&str]) -> Output {
    let out = out.to_str().unwrap();
    let mut args = vec!["run", "--task", "function_approx", "--trials", "200", "--runs", "2", "--seed", "3", "--out", out];
    args.extend_from_slice(extra);
    neuroevo(&args)
}

#[test]
fn run_writes_one_row_per_generation() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_campaign(dir.path(), &[]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = fs::read_to_string(dir.path().join("run_000.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("generation,trials,"));
    assert!(lines[1].starts_with("1,100,"));
    assert!(lines[2].starts_with("2,200,"));
    for name in ["run_001.csv", "average.csv", "plot.gp", "summary.txt", "run_000_best.genome"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn identical_invocations_give_identical_csvs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run_campaign(a.path(), &[]).status.success());
    assert!(run_campaign(b.path(), &[]).status.success());
    for name in ["run_000.csv", "run_001.csv", "average.csv"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
}

#[test]
fn unknown_task_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let output = neuroevo(&["run", "--task", "tic_tac_toe", "--out", dir.path().to_str().unwrap()]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("mountain_car"));
}

#[test]
fn unknown_ablation_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_campaign(dir.path(), &["--ablate", "no_bias"]);
    assert!(!output.status.success());
}

#[test]
fn normalization_conflicts_with_ablation() {
    let dir = tempfile::tempdir().unwrap();
    let output = run_campaign(dir.path(), &["--normalize", "--ablate", "no_slow"]);
    assert!(!output.status.success());
    assert!(!dir.path().join("run_000.csv").exists());
}

#[test]
fn stats_compares_two_campaigns() {
    let control = tempfile::tempdir().unwrap();
    let ablated = tempfile::tempdir().unwrap();
    assert!(run_campaign(control.path(), &[]).status.success());
    assert!(run_campaign(ablated.path(), &["--ablate", "no_identity"]).status.success());
    let output = neuroevo(&[
        "stats",
        "--control",
        control.path().to_str().unwrap(),
        "--ablated",
        ablated.path().to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("(2 runs)"), "{text}");
    assert!(text.contains('%'), "{text}");
}

#[test]
fn stats_on_missing_directory_fails() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope");
    let output = neuroevo(&[
        "stats",
        "--control",
        missing.to_str().unwrap(),
        "--ablated",
        missing.to_str().unwrap(),
    ]);
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("error:"));
}

#[test]
fn trace_replays_a_champion() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_campaign(dir.path(), &[]).status.success());
    let genome = dir.path().join("run_000_best.genome");
    let trace = dir.path().join("trace.csv");
    let output = neuroevo(&[
        "trace",
        "--task",
        "function_approx",
        "--genome",
        genome.to_str().unwrap(),
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = fs::read_to_string(trace).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,obs0,action0,reward"));
    assert_eq!(lines.count(), 201);
}
