use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hullforge::codefile::parse_code;
use serde_json::Value;
use tempfile::TempDir;

const SELF_ORTHOGONAL: &str = "q=5 p=5 m=1\nn=7 k=3\n1 0 0 0 0 2 0\n0 1 0 2 2 0 4\n0 0 1 1 3 0 3\n";
const PURE: &str = "q=5 p=5 m=1\nn=6 k=3\n1 0 0 0 0 4\n0 1 0 2 4 0\n0 0 1 0 0 3\n";

fn hullforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(args)
        .env_remove("HULLFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("structured output is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

struct Fixture {
    dir: TempDir,
    so: String,
    pure: String,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let so = write(dir.path(), "so.code", SELF_ORTHOGONAL)
        .display()
        .to_string();
    let pure = write(dir.path(), "pure.code", PURE).display().to_string();
    Fixture { dir, so, pure }
}

#[test]
fn hull_of_reference_codes() {
    let fx = fixture();
    let v = json(&hullforge(&["hull", &fx.so, "--format", "structured"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(
        (v["h"].as_u64(), v["h_oracle"].as_u64()),
        (Some(3), Some(3))
    );
    assert_eq!(v["self_orthogonal"], true);
    assert_eq!(v["rank_gram"], 0);
    assert_eq!(v["rank_dual_gram"], 1);

    let v = json(&hullforge(&["hull", &fx.pure, "--format", "structured"]));
    assert_eq!(v["h"], 0);
    assert_eq!(v["lcd"], true);

    let human = stdout(&hullforge(&["hull", &fx.so]));
    assert!(human.contains("h = 3"));
    assert!(human.contains("self-orthogonal: yes"));
}

#[test]
fn chain_emits_replayable_files() {
    let fx = fixture();
    let out = fx.dir.path().join("chain");
    let o = hullforge(&[
        "chain",
        &fx.so,
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]);
    let v = json(&o);
    assert_eq!(v["dims"], serde_json::json!([3, 2, 1, 0]));
    assert_eq!(v["distance_verified"], true);
    for step in v["steps"].as_array().unwrap() {
        assert_eq!(
            (step["n"].as_u64(), step["k"].as_u64(), step["d"].as_u64()),
            (Some(7), Some(3), Some(2))
        );
    }
    for h in 0..=3 {
        let code = out.join(format!("chain_h{h}.code"));
        let witness = out.join(format!("chain_h{h}.witness"));
        let text = std::fs::read_to_string(&code).unwrap();
        assert_eq!(parse_code(&text).unwrap().hull_dimension(), h);
        let o = hullforge(&["verify", &fx.so, witness.to_str().unwrap()]);
        assert!(o.status.success(), "witness for h={h}: {}", stdout(&o));
    }
}

#[test]
fn verify_checks_claims() {
    let fx = fixture();
    let good = write(
        fx.dir.path(),
        "a1.witness",
        "sigma=1 2 3 4 5 6 7\na=2 2 1 1 1 1 1\nh=1\nd=2\n",
    );
    let o = hullforge(&["verify", &fx.so, good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified"));

    let wrong = write(
        fx.dir.path(),
        "bad.witness",
        "sigma=1 2 3 4 5 6 7\na=2 2 1 1 1 1 1\nh=2\n",
    );
    let o = hullforge(&["verify", &fx.so, wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let broken = write(fx.dir.path(), "broken.witness", "sigma=1 2 3\nb=1\n");
    let o = hullforge(&["verify", &fx.so, broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("broken.witness:2:"));
}

#[test]
fn eaqecc_parameters() {
    let fx = fixture();
    for (l, want) in [
        ("1", "[[7, 2, 2; 3]]"),
        ("2", "[[7, 1, 2; 2]]"),
        ("3", "[[7, 0, 2; 1]]"),
    ] {
        let o = hullforge(&["eaqecc", &fx.so, l]);
        assert!(stdout(&o).contains(want), "l={l}: {}", stdout(&o));
    }
    assert_eq!(hullforge(&["eaqecc", &fx.so, "4"]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two_with_position() {
    let fx = fixture();
    let bad = write(
        fx.dir.path(),
        "bad.code",
        "q=5 p=5 m=1\nn=7 k=3\n1 0 0 0 0 2 0\n0 1 0 2 2 0\n0 0 1 1 3 0 3\n",
    );
    let o = hullforge(&["hull", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.code:4:"));

    let missing = fx.dir.path().join("missing.code");
    assert_eq!(
        hullforge(&["hull", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_overrun_exits_three() {
    let fx = fixture();
    let o = hullforge(&["purelcd", &fx.pure, "--budget-scan", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn purity_verdicts() {
    let fx = fixture();
    let v = json(&hullforge(&["purelcd", &fx.pure, "--format", "structured"]));
    assert_eq!(v["verdict"], "pure");
    assert_eq!(v["checked"], 64);

    let out = fx.dir.path().join("np");
    let v = json(&hullforge(&[
        "purelcd",
        &fx.so,
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(v["verdict"], "not-pure");
    let o = hullforge(&[
        "verify",
        &fx.so,
        out.join("not_pure.witness").to_str().unwrap(),
    ]);
    assert!(o.status.success());

    // a pure LCD code has no one-dimensional-hull equivalent
    assert_eq!(hullforge(&["onedim", &fx.pure]).status.code(), Some(1));
}

#[test]
fn onedim_and_reduce_witnesses_verify() {
    let fx = fixture();
    let lcd = write(
        fx.dir.path(),
        "lcd.code",
        "q=7 p=7 m=1\nn=5 k=2\n1 0 1 0 0\n0 1 1 1 0\n",
    );
    let out = fx.dir.path().join("od");
    let v = json(&hullforge(&[
        "onedim",
        lcd.to_str().unwrap(),
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(
        (v["h_in"].as_u64(), v["h_out"].as_u64()),
        (Some(0), Some(1))
    );
    let o = hullforge(&[
        "verify",
        lcd.to_str().unwrap(),
        out.join("onedim.witness").to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stdout(&o));

    let out = fx.dir.path().join("red");
    let v = json(&hullforge(&[
        "reduce",
        &fx.so,
        "--format",
        "structured",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(v["h_out"], 2);
    let o = hullforge(&[
        "verify",
        &fx.so,
        out.join("reduced.witness").to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let reduced = std::fs::read_to_string(out.join("reduced.code")).unwrap();
    assert_eq!(parse_code(&reduced).unwrap().hull_dimension(), 2);

    let gf4 = write(
        fx.dir.path(),
        "gf4.code",
        "q=4 p=2 m=2\nn=4 k=2\n1 0 1 0\n0 1 0 1\n",
    );
    let v = json(&hullforge(&[
        "onedim",
        gf4.to_str().unwrap(),
        "--format",
        "structured",
    ]));
    assert_eq!(v["h_out"], 1);
    assert_eq!(v["route"]["case"], "not_lcd");
}

#[test]
fn family_and_scan() {
    let v = json(&hullforge(&["family", "7", "2", "--format", "structured"]));
    assert_eq!(
        (v["n"].as_u64(), v["verdict"].as_str()),
        (Some(4), Some("pure"))
    );
    assert_eq!(v["checked"], 81);
    assert_eq!(hullforge(&["family", "5", "2"]).status.code(), Some(2));

    let v = json(&hullforge(&[
        "scan2t",
        "4",
        "4",
        "2",
        "--format",
        "structured",
    ]));
    assert_eq!(v["codes_scanned"], 256);
    assert_eq!(v["witnesses_verified"], v["not_pure_count"]);
    assert!(v["pure_count"].is_u64());

    assert_eq!(hullforge(&["scan2t", "5", "4", "2"]).status.code(), Some(2));
}

#[test]
fn structured_output_is_reproducible() {
    let fx = fixture();
    let args = ["chain", &fx.so, "--format", "structured", "--seed", "99"];
    let (a, b) = (hullforge(&args), hullforge(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let sampled = [
        "scan2t",
        "8",
        "4",
        "2",
        "--mode",
        "sampled",
        "--samples",
        "20",
        "--format",
        "structured",
    ];
    assert_eq!(hullforge(&sampled).stdout, hullforge(&sampled).stdout);

    let env = Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(["reduce", &fx.so, "--format", "structured"])
        .env("HULLFORGE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&env)["seed"], 7);
    assert_eq!(
        json(&hullforge(&["reduce", &fx.so, "--format", "structured"]))["seed"],
        20240521
    );
}
