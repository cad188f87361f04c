//! Harness-level behavior: deterministic dispatch, replay, file emission,
//! config diagnostics, and the binary's exit-code contract.

use gurlab_cli::campaign::{instance_seed, replay, run_campaign, run_oracle};
use gurlab_cli::config::{parse_config, CampaignConfig, ExperimentPlan, OutputFormat};
use gurlab_cli::emit::{parse_jsonl, write_csv, write_jsonl};
use gurlab_cli::summary::summarize;
use std::process::Command;

fn small_config(jobs: usize) -> CampaignConfig {
    CampaignConfig {
        master_seed: 20240917,
        experiments: vec![
            ExperimentPlan {
                name: "weyl".into(),
                dims: vec![2, 3, 4],
                trials: 4,
                tolerance: None,
            },
            ExperimentPlan {
                name: "two_state".into(),
                dims: vec![2, 4],
                trials: 5,
                tolerance: None,
            },
            ExperimentPlan {
                name: "spin_half".into(),
                dims: vec![2],
                trials: 6,
                tolerance: None,
            },
        ],
        out_dir: None,
        format: OutputFormat::JsonLines,
        jobs,
    }
}

#[test]
fn campaign_is_deterministic_and_ordered() {
    let a = run_campaign(&small_config(1)).unwrap();
    let b = run_campaign(&small_config(1)).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 3 * 4 + 2 * 5 + 6);
    // ordering: (plan order, dim, trial)
    assert_eq!(a[0].experiment_id, "weyl");
    assert_eq!(a[0].dim, 2);
    assert_eq!(a[0].extra["trial"], 0.0);
    assert_eq!(a[11].experiment_id, "weyl");
    assert_eq!(a[11].dim, 4);
    assert_eq!(a[12].experiment_id, "two_state");
}

#[test]
fn worker_pool_does_not_change_records() {
    let serial = run_campaign(&small_config(1)).unwrap();
    let parallel = run_campaign(&small_config(4)).unwrap();
    assert_eq!(serial, parallel);
}

#[test]
fn replay_reproduces_each_record() {
    let records = run_campaign(&small_config(1)).unwrap();
    for r in &records {
        let again = replay(&r.experiment_id, r.dim, r.seed).unwrap();
        assert!(
            (again.slack - r.slack).abs() <= 1e-12,
            "{}: {} vs {}",
            r.experiment_id,
            again.slack,
            r.slack
        );
        assert_eq!(again.passed, r.passed);
    }
}

#[test]
fn jsonl_file_round_trip() {
    let records = run_campaign(&small_config(1)).unwrap();
    let mut buf = Vec::new();
    write_jsonl(&records, &mut buf).unwrap();
    let parsed = parse_jsonl(&String::from_utf8(buf).unwrap()).unwrap();
    assert_eq!(parsed, records);
}

#[test]
fn csv_columns_are_stable() {
    let records = run_campaign(&small_config(1)).unwrap();
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("experiment_id,model,dim,seed,lhs,rhs,slack,flags,passed"));
    assert_eq!(text.lines().count(), records.len() + 1);
    // slack column of a weyl campaign is ≥ −1e-9 everywhere
    for r in records.iter().filter(|r| r.experiment_id == "weyl") {
        assert!(r.slack >= -1e-9 || !r.flags.is_empty());
    }
}

#[test]
fn unknown_experiment_is_config_error() {
    let mut config = small_config(1);
    config.experiments[0].name = "warp_drive".into();
    let err = run_campaign(&config).unwrap_err();
    assert!(err.to_string().contains("warp_drive"));
}

#[test]
fn undersized_dim_is_config_error() {
    let mut config = small_config(1);
    config.experiments[0].dims = vec![1];
    let err = run_campaign(&config).unwrap_err();
    assert!(err.to_string().contains("dim"));
}

#[test]
fn oracle_mode_agrees_for_supported_experiments() {
    for name in ["two_state", "robertson", "weyl", "unitary_transform"] {
        let records = run_oracle(name, &[2, 3], 2, 99).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert!(r.passed, "{name}: {r:?}");
            assert!(r.extra["oracle_rel_gap"] <= 1e-6);
        }
    }
    assert!(run_oracle("kraus", &[], 1, 1).is_err());
}

#[test]
fn summaries_group_every_experiment() {
    let records = run_campaign(&small_config(1)).unwrap();
    let rows = summarize(&records);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.pass_rate == 1.0));
}

#[test]
fn empty_campaign_is_empty_output() {
    let mut config = small_config(1);
    config.experiments.clear();
    let records = run_campaign(&config).unwrap();
    assert!(records.is_empty());
}

#[test]
fn seeds_differ_across_trials_and_match_replays() {
    let s0 = instance_seed(1, "two_state", 4, 0);
    let s1 = instance_seed(1, "two_state", 4, 1);
    assert_ne!(s0, s1);
    let direct = replay("two_state", 4, s0).unwrap();
    let config = CampaignConfig {
        master_seed: 1,
        experiments: vec![ExperimentPlan {
            name: "two_state".into(),
            dims: vec![4],
            trials: 1,
            tolerance: None,
        }],
        out_dir: None,
        format: OutputFormat::JsonLines,
        jobs: 1,
    };
    let campaign = run_campaign(&config).unwrap();
    assert_eq!(campaign[0].seed, s0);
    assert_eq!(campaign[0].lhs, direct.lhs);
    assert_eq!(campaign[0].rhs, direct.rhs);
}

// ---- binary-level checks ----

fn gurlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gurlab"))
}

#[test]
fn binary_run_writes_reports_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = gurlab()
        .args([
            "run",
            "--experiments",
            "weyl,spin_half",
            "--trials",
            "3",
            "--seed",
            "5",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let jsonl = std::fs::read_to_string(dir.path().join("records.jsonl")).unwrap();
    let records = parse_jsonl(&jsonl).unwrap();
    assert_eq!(records.len(), 11 * 3 + 3);
    assert!(dir.path().join("slack_histogram.csv").exists());
    assert!(dir.path().join("convergence.csv").exists());
}

#[test]
fn binary_bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "[weyl]\ntolerance = -1\n").unwrap();
    let out = gurlab().args(["run", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_replay_expect_slack_contract() {
    let seed = instance_seed(5, "weyl", 4, 0);
    let record = replay("weyl", 4, seed).unwrap();
    let out = gurlab()
        .args([
            "replay",
            &seed.to_string(),
            "--experiment",
            "weyl",
            "--dim",
            "4",
            "--expect-slack",
            &format!("{:.16e}", record.slack),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // and a wrong expectation fails with exit 1
    let out = gurlab()
        .args([
            "replay",
            &seed.to_string(),
            "--experiment",
            "weyl",
            "--dim",
            "4",
            "--expect-slack",
            "0.25",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn binary_env_seed_fallback() {
    let with_flag = gurlab()
        .args(["run", "--experiments", "spin_half", "--trials", "2", "--seed", "31"])
        .output()
        .unwrap();
    let with_env = gurlab()
        .args(["run", "--experiments", "spin_half", "--trials", "2"])
        .env("GURLAB_SEED", "31")
        .output()
        .unwrap();
    assert!(with_flag.status.success() && with_env.status.success());
    assert_eq!(with_flag.stdout, with_env.stdout);
}

#[test]
fn config_file_end_to_end() {
    let text = "seed = 11\n[weyl]\ndims = 2,3\ntrials = 2\n";
    let config = parse_config(text).unwrap();
    let records = run_campaign(&config).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.passed));
}
